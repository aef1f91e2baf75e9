//! Convergents of {φ}, nested dyadic enclosures, and the exact Hurwitz comparison.
//!
//!     cargo run --example convergents -- 12

use fibfock::exactnum::{golden_convergents, golden_enclosure, hurwitz_compare, hurwitz_ratio_enclosure};

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);

    println!("{:>3}  {:>12}  {:>12}  verdict  φ side", "k", "p", "q");
    for c in golden_convergents(count) {
        let o = hurwitz_compare(c.index);
        let side = match o.phi_side {
            std::cmp::Ordering::Less => "below",
            std::cmp::Ordering::Equal => "equal",
            std::cmp::Ordering::Greater => "above",
        };
        println!("{:>3}  {:>12}  {:>12}  {:<7?}  {side}", c.index, c.p.to_string(), c.q.to_string(), o.verdict);
    }

    println!();
    for bits in [8, 16, 32, 64] {
        let e = golden_enclosure(bits);
        println!("{bits:>2} bits: {{φ}} ∈ [{}, {}]", e.lo().to_f64(), e.hi().to_f64());
    }

    // √5 q² |{φ} − p/q| tends to 1 from both sides.
    let k = count as u64;
    let tight = hurwitz_ratio_enclosure(k, 96);
    println!("\n√5 q²|{{φ}} − p/q| at k={k} ∈ [{}, {}]", tight.lo().to_f64(), tight.hi().to_f64());
}
