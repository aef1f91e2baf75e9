//! Ladder-operator identities on the truncated Fock space, in exact arithmetic.
//!
//!     cargo run --example commutators -- 6

use fibfock::fock::{commutator_suite, ladder_apply, FockState, Ladder, Mode};

fn main() {
    let cutoff: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let report = commutator_suite(cutoff).expect("cutoff >= 2");
    print!("{report}");

    let s = FockState::new(1, 2, 3);
    for mode in Mode::ALL {
        let up = ladder_apply(Ladder::Create, mode, &s);
        let down = ladder_apply(Ladder::Annihilate, mode, &s);
        println!(
            "a†_{0}{s} = {1:.4}·{2:?}   a_{0}{s} = {3:.4}·{4:?}",
            mode.label(),
            up.coefficient,
            up.state.map(|x| x.to_string()),
            down.coefficient,
            down.state.map(|x| x.to_string()),
        );
    }
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
