//! Seeded projective measurement of a ground superposition.
//!
//!     cargo run --example measurement -- 2 100000 7

use fibfock::fock::{ground_superposition, measure, Weighting};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer"));
    let cutoff = args.next().unwrap_or(2);
    let shots = args.next().unwrap_or(100_000);
    let seed = args.next().unwrap_or(7);

    for weighting in [Weighting::Uniform, Weighting::Geometric { ratio: 0.5 }] {
        let sup = ground_superposition(cutoff, weighting).expect("valid weighting");
        let sample = measure(&sup, shots, seed).expect("normalized");
        println!("{weighting:?}, {shots} shots, seed {seed}");
        for r in &sample.rows {
            let sigma = (shots as f64 * r.theoretical * (1.0 - r.theoretical)).sqrt();
            let z = (r.count as f64 - shots as f64 * r.theoretical) / sigma.max(f64::MIN_POSITIVE);
            println!(
                "  {:<10} count {:>7}  p̂ {:.5}  p {:.5}  z {:+.2}",
                r.state.to_string(),
                r.count,
                r.empirical,
                r.theoretical,
                z
            );
        }
        assert_eq!(sample, measure(&sup, shots, seed).unwrap());
    }
}
