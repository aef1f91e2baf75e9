//! Fibonacci recognition by three routes, each with a re-checkable certificate.
//!
//!     cargo run --example recognize -- 6765 6766 354224848179261915075

use fibfock::recognizer::{certified_floor_ceiling, floor_ceiling_test, recognize, Method};
use fibfock::{Natural, PrecisionPolicy};

fn main() {
    let mut queries: Vec<Natural> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("non-negative integer"))
        .collect();
    if queries.is_empty() {
        queries = [1u64, 4, 8, 13, 100, 6765, 6766].map(Natural::from).to_vec();
    }

    for b in &queries {
        println!("b = {b}");
        for method in [Method::BruteForce, Method::ExactInterval, Method::FloorCeiling] {
            match recognize(b, method) {
                Ok(v) => println!(
                    "  {method:<14} f(b) = {}  verified = {}",
                    v.indicator(),
                    v.verify()
                ),
                Err(e) => println!("  {method:<14} {e}"),
            }
        }
        if b.is_zero() {
            continue;
        }
        // A convergent that is too coarse can give the wrong answer uncertified.
        let (start, certified) = certified_floor_ceiling(b, PrecisionPolicy::DEFAULT_RIGOROUS).unwrap();
        if start > 2 {
            let coarse = floor_ceiling_test(b, start - 2).unwrap();
            println!(
                "  at k={} (uncertified) difference = {}; certified at k={} difference = {}",
                start - 2,
                coarse.difference,
                certified.convergent_used.index,
                certified.difference
            );
        }
    }
}
