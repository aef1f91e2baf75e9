use fibfock::exactnum::{cmp_frac_phi, convergent, golden_convergents, golden_enclosure, Ratio};
use fibfock::fock::{ground_superposition, hd_eigenvalue, zero_eigenspace, FockState, Superposition, Weighting};
use fibfock::recognizer::{certified_floor_ceiling, fib_oracle, floor_ceiling_test, recognize_with, required_index, Method};
use fibfock::superselection::{
    combine_sectors, cross_element, evolve_sector_check, ExplicitDensity, FiniteBlock, HermitianBlock,
    ObservableBuilder, SectorVector, Token,
};
use fibfock::{Natural, PrecisionPolicy};
use num_complex::Complex64;
use proptest::prelude::*;
use std::cmp::Ordering;

fn policy() -> impl Strategy<Value = PrecisionPolicy> {
    prop_oneof![
        (1u64..200).prop_map(|factor| PrecisionPolicy::Literal { factor }),
        (1u64..50).prop_map(|margin| PrecisionPolicy::Rigorous { margin }),
    ]
}

#[test]
fn convergent_recurrence() {
    let cs = golden_convergents(200);
    assert_eq!((cs[0].p.to_u64(), cs[0].q.to_u64()), (Some(1), Some(1)));
    assert_eq!(cs[1].q.to_u64(), Some(2));
    for w in cs.windows(3) {
        assert_eq!(w[2].p, w[1].q);
        assert_eq!(w[2].q, &w[1].q + &w[0].q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn convergents_alternate_around_phi(k in 1u64..300) {
        let c = convergent(k);
        let expected = if k % 2 == 1 { Ordering::Less } else { Ordering::Greater };
        prop_assert_eq!(cmp_frac_phi(&c.value()), expected);
    }

    #[test]
    fn enclosures_nest_and_bracket_phi(bits in 2u32..400) {
        let coarse = golden_enclosure(bits);
        let fine = golden_enclosure(bits + 1);
        prop_assert!(fine.is_subset_of(&coarse));
        prop_assert_eq!(fine.width(), Ratio::new(1.into(), num_bigint::BigUint::from(2u32).pow(bits + 1)).unwrap());
        prop_assert_eq!(cmp_frac_phi(coarse.lo()), Ordering::Greater);
        prop_assert_eq!(cmp_frac_phi(coarse.hi()), Ordering::Less);
    }

    #[test]
    fn certificates_are_sound(b in 0u64..=10_000, p in policy()) {
        let n = Natural::from(b);
        let truth = fib_oracle(&n).is_fibonacci;
        for method in [Method::BruteForce, Method::ExactInterval, Method::FloorCeiling] {
            match recognize_with(&n, method, p) {
                Ok(v) => {
                    prop_assert_eq!(v.is_fibonacci, truth);
                    prop_assert!(v.verify());
                }
                Err(_) => prop_assert!(b == 0 && method == Method::ExactInterval),
            }
        }
    }

    #[test]
    fn escalation_is_monotone(b in 1u64..=10_000, p in policy()) {
        let n = Natural::from(b);
        let start = required_index(&n, p);
        let (reported_start, outcome) = certified_floor_ceiling(&n, p).unwrap();
        prop_assert_eq!(reported_start, start);
        prop_assert!(outcome.convergent_used.index >= start);
        prop_assert!(outcome.certified);
        // Once certified, every finer convergent gives the same answer.
        let k = outcome.convergent_used.index;
        for j in k..k + 4 {
            prop_assert_eq!(floor_ceiling_test(&n, j).unwrap().says_fibonacci(), outcome.says_fibonacci());
        }
        // A stronger policy never starts earlier.
        let stronger = match p {
            PrecisionPolicy::Literal { factor } => PrecisionPolicy::Literal { factor: factor * 2 },
            PrecisionPolicy::Rigorous { margin } => PrecisionPolicy::Rigorous { margin: margin * 2 },
        };
        prop_assert!(required_index(&n, stronger) >= start);
    }

    #[test]
    fn zero_eigenspace_obeys_energy_law(cutoff in 0u64..12) {
        let states = zero_eigenspace(cutoff);
        prop_assert_eq!(states.len() as u64, (cutoff + 1) * (cutoff + 2) / 2);
        for n1 in 0..=cutoff {
            for n2 in 0..=cutoff {
                for n3 in 0..=cutoff {
                    let s = FockState::new(n1, n2, n3);
                    prop_assert_eq!(states.contains(&s), hd_eigenvalue(&s) == 0);
                    prop_assert_eq!(hd_eigenvalue(&s) == 0, n3 == n1 + n2);
                }
            }
        }
    }

    #[test]
    fn phase_evolution_conserves_probabilities(
        amps in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..8),
        t in -50.0f64..50.0,
    ) {
        // Mix of ground and excited states so phases differ.
        let states: Vec<FockState> = (0..amps.len() as u64).map(|i| FockState::new(i, 1, i % 3)).collect();
        let terms: Vec<(Complex64, FockState)> =
            amps.iter().zip(&states).map(|(&(re, im), s)| (Complex64::new(re, im), *s)).collect();
        prop_assume!(terms.iter().any(|(c, _)| c.norm_sqr() > 1e-6));
        let sup = Superposition::normalized(terms).unwrap();
        let evolved = sup.evolve(t);
        for s in &states {
            prop_assert!((sup.amplitude(s).norm_sqr() - evolved.amplitude(s).norm_sqr()).abs() <= 1e-12);
        }
        prop_assert!((evolved.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn geometric_superpositions_are_normalized(cutoff in 0u64..8, ratio in 0.05f64..0.999) {
        let sup = ground_superposition(cutoff, Weighting::Geometric { ratio }).unwrap();
        prop_assert!((sup.norm_sqr() - 1.0).abs() <= 1e-12);
        prop_assert!(sup.terms().iter().all(|(_, s)| hd_eigenvalue(s) == 0));
    }

    #[test]
    fn cross_elements_vanish(
        finite_amps in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6),
        token_amps in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..6),
        off in (-3.0f64..3.0, -3.0f64..3.0),
        w1 in 0.01f64..0.99,
    ) {
        let ground = zero_eigenspace(2);
        let norm = |v: &[(f64, f64)]| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        let (nf, nt) = (norm(&finite_amps), norm(&token_amps));
        prop_assume!(nf > 1e-3 && nt > 1e-3);
        let v1 = SectorVector::finite(
            finite_amps.iter().zip(&ground).map(|(&(a, b), s)| (*s, Complex64::new(a / nf, b / nf))).collect(),
        ).unwrap();
        let v2 = SectorVector::infinite(
            token_amps.iter().enumerate().map(|(i, &(a, b))| (Token(i), Complex64::new(a / nt, b / nt))).collect(),
        ).unwrap();
        let c = Complex64::new(off.0, off.1);
        let block = HermitianBlock::new([
            (ground[0], ground[0], Complex64::new(1.0, 0.0)),
            (ground[0], ground[1], c),
            (ground[1], ground[0], c.conj()),
        ]).unwrap();
        let q = ObservableBuilder::new()
            .finite_block(FiniteBlock::Matrix(block))
            .infinite_identity()
            .build()
            .unwrap();
        prop_assert_eq!(cross_element(&q, &v1, &v2), Complex64::new(0.0, 0.0));

        let rho = combine_sectors(&v1, &v2, w1, 1.0 - w1).unwrap();
        let explicit = ExplicitDensity::new(&rho);
        prop_assert!((explicit.purity() - (w1 * w1 + (1.0 - w1) * (1.0 - w1))).abs() <= 1e-12);
        let energies: Vec<f64> = (0..token_amps.len()).map(|i| i as f64 * 0.7).collect();
        prop_assert!(evolve_sector_check(&rho, &energies, 3.0, 50).unwrap().all_passed());
    }
}
