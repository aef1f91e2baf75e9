//! Certified Fibonacci recognition through golden-ratio convergents, a
//! truncated three-mode Fock-space model of the zero-energy ground states of
//! `H = (N₃ − N₂ − N₁)²`, and a two-sector superselection toolkit.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability, and the `fibfock` binary for the report-emitting front end.

pub mod check;
pub mod cli;
pub mod exactnum;
pub mod fock;
pub mod recognizer;
pub mod superselection;

pub use exactnum::{Convergent, Natural, Ratio, RatioInterval};
pub use recognizer::{Method, PrecisionPolicy, Verdict};
