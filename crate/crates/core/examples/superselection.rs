//! Two-sector superselection: vanishing cross elements, mixed-state purity,
//! and sector-preserving evolution.
//!
//!     cargo run --example superselection

use fibfock::fock::FockState;
use fibfock::superselection::{
    combine_sectors, cross_element, evolve_sector_check, expectation, make_observable, purity,
    BasisLabel, ExplicitDensity, FiniteBlock, ObservableBuilder, SectorVector, Token,
};
use num_complex::Complex64;

fn main() {
    let v1 = SectorVector::basis_fock(FockState::new(1, 1, 2));
    let v2 = SectorVector::uniform_tokens(3).unwrap();
    let q = make_observable(FiniteBlock::TotalNumber, &[7.0, 8.0, 9.0]).unwrap();

    println!("⟨Ψ₁|Q|Ψ₂⟩ = {}", cross_element(&q, &v1, &v2));

    let rho = combine_sectors(&v1, &v2, 0.5, 0.5).unwrap();
    let explicit = ExplicitDensity::new(&rho);
    println!("purity {}  explicit Tr ρ² {}  Tr ρ {}", purity(&rho), explicit.purity(), explicit.trace().re);
    println!(
        "⟨Q⟩ {}  explicit Tr(ρQ) {}",
        expectation(&q, &rho).unwrap(),
        explicit.expectation(&q)
    );

    // No observable may couple the sectors.
    let rejected = ObservableBuilder::new()
        .finite_block(FiniteBlock::Identity)
        .infinite_identity()
        .entry(
            BasisLabel::Fock(FockState::new(1, 1, 2)),
            BasisLabel::Token(Token(0)),
            Complex64::new(1.0, 0.0),
        )
        .build();
    println!("cross-sector entry: {}", rejected.unwrap_err());

    let check = evolve_sector_check(&rho, &[1.0, 2.0, 3.0], 10.0, 1000).unwrap();
    print!("{check}");
}
