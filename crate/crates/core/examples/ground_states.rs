//! The zero-energy eigenspace of H_D, split into Fibonacci and non-Fibonacci states.
//!
//!     cargo run --example ground_states -- 8

use fibfock::fock::{classify, zero_eigenspace, zero_eigenspace_len, SectorClass};

fn main() {
    let cutoff: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let states = zero_eigenspace(cutoff);
    assert_eq!(states.len() as u64, zero_eigenspace_len(cutoff));

    let mut fib = Vec::new();
    for s in &states {
        let c = classify(s).expect("zero-energy state");
        let mark = match c.class {
            SectorClass::Fibonacci => {
                fib.push(*s);
                "F"
            }
            SectorClass::NonFibonacci => " ",
            SectorClass::Vacuum => "0",
        };
        let tag = if c.consecutive { " consecutive" } else { "" };
        println!("{mark} {s}{tag}");
    }
    println!("\n{} states, {} Fibonacci (vacuum excluded)", states.len(), fib.len());
}
