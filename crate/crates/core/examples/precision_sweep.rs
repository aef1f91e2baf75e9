//! Literal versus rigorous precision policies over Fibonacci numbers.
//!
//!     cargo run --release --example precision_sweep -- 1000000

use fibfock::recognizer::precision_sweep;
use fibfock::{Natural, PrecisionPolicy};

fn main() {
    let max: Natural = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("non-negative integer"))
        .unwrap_or_else(|| Natural::from(10_000u64));
    let report = precision_sweep(&max, PrecisionPolicy::DEFAULT_LITERAL, PrecisionPolicy::DEFAULT_RIGOROUS);

    println!("{:>10}  minimal  literal  rigorous  lit.diff  misclassified", "b");
    for r in &report.rows {
        println!(
            "{:>10}  {:>7}  {:>7}  {:>8}  {:>8}  {}",
            r.b.to_string(),
            r.minimal_decisive_index,
            r.literal_index,
            r.rigorous_index,
            r.literal_difference,
            r.misclassified_at_literal
        );
    }
    println!(
        "\n{}: {} misclassified; {}: {} misclassified",
        report.literal,
        report.literal_misclassifications(),
        report.rigorous,
        report.rigorous_misclassifications()
    );
}
