//! One PASS/FAIL line per acceptance criterion. Runtime limits are part of
//! each criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use fibfock::cli;
use fibfock::exactnum::{hurwitz_compare, hurwitz_ratio_enclosure, HurwitzVerdict, Ratio};
use fibfock::fock::{classify, commutator_suite, zero_eigenspace, FockState, SectorClass};
use fibfock::recognizer::{fib_exact, fib_oracle, precision_sweep, recognize, Method};
use fibfock::superselection::{
    combine_sectors, cross_element, evolve_sector_check, purity, BasisLabel,
    ExplicitDensity, FiniteBlock, HermitianBlock, ObservableBuilder, SectorVector, Token,
};
use fibfock::{Natural, PrecisionPolicy};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn cli_json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["fibfock"];
    argv.extend_from_slice(args);
    let out = cli::run(argv, None);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.code, v)
}

fn convergent_fidelity() -> Outcome {
    let (code, report) = cli_json(&["convergents", "--count", "4"]);
    let got: Vec<&str> = report["payload"]["rows"]
        .as_array()
        .map(|rows| rows.iter().filter_map(|r| r["fraction"].as_str()).collect())
        .unwrap_or_default();
    outcome(code == 0 && got == ["1/1", "1/2", "2/3", "3/5"], format!("{got:?}"))
}

fn oracle_equivalence() -> Outcome {
    let disagreements: Vec<u64> = (1..=1_000_000u64)
        .into_par_iter()
        .filter(|&b| {
            let n = Natural::from(b);
            let truth = fib_oracle(&n).is_fibonacci;
            let exact = fib_exact(&n).map(|v| v.is_fibonacci);
            let fc = recognize(&n, Method::FloorCeiling).map(|v| v.is_fibonacci);
            exact != Ok(truth) || fc != Ok(truth)
        })
        .collect();
    outcome(
        disagreements.is_empty(),
        format!("{} disagreements over [1, 10^6]; first {:?}", disagreements.len(), disagreements.first()),
    )
}

fn hurwitz_refinement() -> Outcome {
    let parity_ok = (1..=40u64).all(|k| {
        let expected = if k % 2 == 1 { HurwitzVerdict::Holds } else { HurwitzVerdict::Fails };
        hurwitz_compare(k).verdict == expected
    });
    // Enclosure of √5 q² |{φ} − p/q| at k = 40, both ends within 1e−6 of 1.
    let e = hurwitz_ratio_enclosure(40, 128);
    let one = Ratio::from_i64s(1, 1);
    let tol = Ratio::from_i64s(1, 1_000_000);
    let close = |r: &Ratio| (r - &one).abs() <= tol;
    let tight = close(e.lo()) && close(e.hi());
    outcome(
        parity_ok && tight,
        format!(
            "parity {parity_ok}; √5 q²·err − 1 at k=40 ∈ [{:.3e}, {:.3e}]",
            (e.lo() - &one).to_f64(),
            (e.hi() - &one).to_f64()
        ),
    )
}

fn precision_separation() -> Outcome {
    let sweep = precision_sweep(
        &Natural::from(10_000u64),
        PrecisionPolicy::Literal { factor: 10 },
        PrecisionPolicy::Rigorous { margin: 4 },
    );
    let lit = sweep.literal_misclassifications();
    let rig = sweep.rigorous_misclassifications();
    let near_6765 = sweep
        .rows
        .iter()
        .any(|r| r.b == Natural::from(6765u64) && r.misclassified_at_literal);
    outcome(
        lit >= 1 && rig == 0,
        format!("literal:10 misclassified {lit} (6765 among them: {near_6765}); rigorous:4 misclassified {rig}"),
    )
}

fn eigenspace_census() -> Outcome {
    let states = zero_eigenspace(20);
    // Independent enumeration: Fibonacci values ≤ 20 and all triples (a, b, a+b).
    let fib_values: BTreeSet<u64> = [0, 1, 2, 3, 5, 8, 13].into_iter().collect();
    let mut brute = BTreeSet::new();
    for a in 0..=20u64 {
        for b in 0..=20 - a {
            if (a, b) != (0, 0) && [a, b, a + b].iter().all(|x| fib_values.contains(x)) {
                brute.insert(FockState::new(a, b, a + b));
            }
        }
    }
    let classified: BTreeSet<FockState> = states
        .iter()
        .filter(|s| classify(s).map(|c| c.class == SectorClass::Fibonacci).unwrap_or(false))
        .copied()
        .collect();
    outcome(
        states.len() == 231 && classified == brute,
        format!("{} states; {} Fibonacci, brute force {}", states.len(), classified.len(), brute.len()),
    )
}

fn commutators() -> Outcome {
    match commutator_suite(10) {
        Ok(report) => {
            let hd = report.get("[N_j, H_D] = 0").map(|e| e.passed && e.excluded == 0).unwrap_or(false);
            let failed: Vec<&str> = report.failures().map(|e| e.name.as_str()).collect();
            outcome(
                report.all_passed() && hd,
                format!("{} identities, failures {failed:?}", report.entries.len()),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn sampling_consistency() -> Outcome {
    let shots = 100_000f64;
    let p = 1.0 / 3.0;
    let sigma = (shots * p * (1.0 - p)).sqrt();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for seed in 1..=20u64 {
        let seed = seed.to_string();
        let args = ["simulate", "--cutoff", "1", "--shots", "100000", "--seed", seed.as_str()];
        let (code, report) = cli_json(&args);
        let counts = report["payload"]["counts"].as_array().cloned().unwrap_or_default();
        ok &= code == 0 && counts.len() == 3;
        for c in &counts {
            let n = c["count"].as_f64().unwrap_or(-1.0);
            let z = (n - shots * p).abs() / sigma;
            worst = worst.max(z);
            ok &= z <= 4.0;
        }
        ok &= cli_json(&args).1 == report;
    }
    outcome(ok, format!("20 seeds, max |z| = {worst:.2}, repeat runs identical"))
}

fn random_vector(rng: &mut ChaCha8Rng, finite: bool) -> SectorVector {
    let len = rng.random_range(1..=4);
    let mut amp = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let raw: Vec<Complex64> = (0..len).map(|_| amp()).collect();
    let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if finite {
        let states = zero_eigenspace(3);
        let picks = rand::seq::index::sample(rng, states.len(), len);
        SectorVector::finite(picks.iter().zip(&raw).map(|(i, c)| (states[i], c / norm)).collect()).unwrap()
    } else {
        SectorVector::infinite((0..len).zip(&raw).map(|(i, c)| (Token(i), c / norm)).collect()).unwrap()
    }
}

fn random_observable(rng: &mut ChaCha8Rng) -> fibfock::superselection::Observable {
    let states = zero_eigenspace(3);
    let mut entries = Vec::new();
    for (i, r) in states.iter().enumerate() {
        entries.push((*r, *r, Complex64::new(rng.random_range(-5.0..5.0), 0.0)));
        for c in &states[i + 1..] {
            let v = Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            entries.push((*r, *c, v));
            entries.push((*c, *r, v.conj()));
        }
    }
    let values: Vec<f64> = (0..4).map(|_| rng.random_range(-5.0..5.0)).collect();
    ObservableBuilder::new()
        .finite_block(FiniteBlock::Matrix(HermitianBlock::new(entries).unwrap()))
        .token_values(&values)
        .build()
        .unwrap()
}

fn superselection_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let zero_cross = (0..100).all(|_| {
        let q = random_observable(&mut rng);
        let v1 = random_vector(&mut rng, true);
        let v2 = random_vector(&mut rng, false);
        cross_element(&q, &v1, &v2) == Complex64::new(0.0, 0.0)
    });
    // Building a cross entry is refused outright.
    let refused = ObservableBuilder::new()
        .entry(BasisLabel::Fock(FockState::vacuum()), BasisLabel::Token(Token(0)), Complex64::new(1.0, 0.0))
        .build()
        .is_err();

    let v1 = SectorVector::basis_fock(FockState::new(1, 1, 2));
    let v2 = SectorVector::uniform_tokens(2).unwrap();
    let rho = combine_sectors(&v1, &v2, 0.5, 0.5).unwrap();
    let explicit = ExplicitDensity::new(&rho).purity();
    let purity_ok = (purity(&rho) - 0.5).abs() <= 1e-12 && (explicit - 0.5).abs() <= 1e-12;
    let evolution = evolve_sector_check(&rho, &[1.0, 2.0], 10.0, 1000).unwrap();
    let weights_ok = evolution
        .get("sector weights constant")
        .map(|e| e.passed && e.checked == 1000)
        .unwrap_or(false);
    outcome(
        zero_cross && refused && purity_ok && weights_ok && evolution.all_passed(),
        format!(
            "cross elements zero {zero_cross}, cross entry refused {refused}; purity {} vs Tr ρ² {explicit}; 1000-step evolution {}",
            purity(&rho),
            evolution.all_passed()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 convergent fidelity", Duration::from_secs(1), convergent_fidelity),
        ("2 oracle equivalence", Duration::from_secs(60), oracle_equivalence),
        ("3 hurwitz refinement", Duration::from_secs(5), hurwitz_refinement),
        ("4 precision-policy separation", Duration::from_secs(30), precision_separation),
        ("5 eigenspace census", Duration::from_secs(5), eigenspace_census),
        ("6 commutator suite", Duration::from_secs(5), commutators),
        ("7 sampling consistency", Duration::from_secs(10), sampling_consistency),
        ("8 superselection suite", Duration::from_secs(5), superselection_suite),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let passed = o.passed && elapsed < limit;
        failed += usize::from(!passed);
        println!(
            "{} {name}: {} [{:.2?} / limit {:?}]",
            if passed { "PASS" } else { "FAIL" },
            o.detail,
            elapsed,
            limit
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
