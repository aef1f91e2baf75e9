//! Three-mode Fock space for `H_D = (N₃ − N₂ − N₁)²`.
//!
//! The Hamiltonian is never stored as a matrix. It is diagonal in the
//! occupation basis, so [`hd_eigenvalue`] reads it off a basis state and the
//! commutator suite rebuilds it from ladder operators to check the algebra.
//!
//! Truncation: [`zero_eigenspace`] bounds each mode by `n_j ≤ cutoff`; the
//! commutator suite works on `n_j < cutoff` and skips the top rung, where a
//! finite ladder cannot satisfy `[a, a†] = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::check::{CheckReport, Tally};
use crate::exactnum::Natural;
use crate::recognizer::{recognize, Method, Verdict};

/// Normalization tolerance for superpositions.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid superposition: {0}")]
    InvalidSuperposition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Mode {
    First,
    Second,
    Third,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::First, Mode::Second, Mode::Third];

    /// Mode from its 1-based label.
    pub fn from_label(j: u8) -> Option<Mode> {
        match j {
            1 => Some(Mode::First),
            2 => Some(Mode::Second),
            3 => Some(Mode::Third),
            _ => None,
        }
    }

    pub fn label(self) -> u8 {
        match self {
            Mode::First => 1,
            Mode::Second => 2,
            Mode::Third => 3,
        }
    }
}

/// Occupation-number state `|n1⟩|n2⟩|n3⟩`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
}

impl FockState {
    pub const fn new(n1: u64, n2: u64, n3: u64) -> Self {
        FockState { n1, n2, n3 }
    }

    pub const fn vacuum() -> Self {
        FockState::new(0, 0, 0)
    }

    pub fn is_vacuum(&self) -> bool {
        *self == FockState::vacuum()
    }

    pub fn occupation(&self, mode: Mode) -> u64 {
        match mode {
            Mode::First => self.n1,
            Mode::Second => self.n2,
            Mode::Third => self.n3,
        }
    }

    pub fn with_occupation(mut self, mode: Mode, n: u64) -> Self {
        match mode {
            Mode::First => self.n1 = n,
            Mode::Second => self.n2 = n,
            Mode::Third => self.n3 = n,
        }
        self
    }

    pub fn total(&self) -> u64 {
        self.n1 + self.n2 + self.n3
    }

    pub fn occupations(&self) -> [u64; 3] {
        [self.n1, self.n2, self.n3]
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n1, self.n2, self.n3)
    }
}

impl Serialize for FockState {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.occupations().serialize(s)
    }
}

/// Eigenvalue of `H_D` on a basis state: `(n3 − n2 − n1)²`.
pub fn hd_eigenvalue(s: &FockState) -> u128 {
    let d = s.n3 as i128 - s.n2 as i128 - s.n1 as i128;
    (d * d) as u128
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// A basis state times a real coefficient; `state` is `None` (and the
/// coefficient 0) when the vacuum of a mode is annihilated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaledState {
    pub coefficient: f64,
    pub state: Option<FockState>,
}

/// `a†_j |n⟩ = √(n+1) |n+1⟩`, `a_j |n⟩ = √n |n−1⟩`.
pub fn ladder_apply(kind: Ladder, mode: Mode, s: &FockState) -> ScaledState {
    let n = s.occupation(mode);
    match kind {
        Ladder::Create => ScaledState {
            coefficient: ((n + 1) as f64).sqrt(),
            state: Some(s.with_occupation(mode, n + 1)),
        },
        Ladder::Annihilate if n == 0 => ScaledState {
            coefficient: 0.0,
            state: None,
        },
        Ladder::Annihilate => ScaledState {
            coefficient: (n as f64).sqrt(),
            state: Some(s.with_occupation(mode, n - 1)),
        },
    }
}

// ---------------------------------------------------------------------------
// Exact ladder algebra on a truncated space.

/// Element of `Σ c_r √r` with integer `c_r` and squarefree `r`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Surd(BTreeMap<u64, i128>);

/// Splits `n = s² · r` with `r` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut square_root = 1u64;
    let mut radical = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        square_root *= p.pow(e / 2);
        if e % 2 == 1 {
            radical *= p;
        }
        p += 1;
    }
    (square_root, radical * n)
}

impl Surd {
    fn integer(v: i128) -> Surd {
        let mut m = BTreeMap::new();
        if v != 0 {
            m.insert(1, v);
        }
        Surd(m)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, radical: u64, coeff: i128) {
        let e = self.0.entry(radical).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.0.remove(&radical);
        }
    }

    fn scaled(&self, k: i128) -> Surd {
        let mut out = Surd::default();
        for (&r, &c) in &self.0 {
            out.add_term(r, c * k);
        }
        out
    }

    /// Multiplies by `√n`.
    fn times_sqrt(&self, n: u64) -> Surd {
        let (s, r) = squarefree_split(n);
        let mut out = Surd::default();
        for (&r0, &c) in &self.0 {
            // r0 · r = g² · (r0/g)(r/g), and the cofactors are coprime squarefree.
            let g = r0.gcd(&r);
            out.add_term((r0 / g) * (r / g), c * (s as i128) * (g as i128));
        }
        out
    }

    fn add(&mut self, other: &Surd) {
        for (&r, &c) in &other.0 {
            self.add_term(r, c);
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(r, c)| if *r == 1 { c.to_string() } else { format!("{c}√{r}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

type ExactVec = BTreeMap<FockState, Surd>;

fn exact_basis(s: FockState) -> ExactVec {
    let mut v = ExactVec::new();
    v.insert(s, Surd::integer(1));
    v
}

fn vec_add(acc: &mut ExactVec, s: FockState, amp: &Surd) {
    let e = acc.entry(s).or_default();
    e.add(amp);
    if e.is_zero() {
        acc.remove(&s);
    }
}

fn vec_sub(a: &ExactVec, b: &ExactVec) -> ExactVec {
    let mut out = a.clone();
    for (s, amp) in b {
        vec_add(&mut out, *s, &amp.scaled(-1));
    }
    out
}

fn vec_scale(v: &ExactVec, k: i128) -> ExactVec {
    let mut out = ExactVec::new();
    for (s, amp) in v {
        vec_add(&mut out, *s, &amp.scaled(k));
    }
    out
}

/// Operators built from ladder actions on the space with `n_j < cutoff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Create(Mode),
    Annihilate(Mode),
    /// `a†_j a_j`
    Number(Mode),
    /// `(N₃ − N₂ − N₁)²` assembled from number operators.
    Hamiltonian,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Create(m) => write!(f, "a†_{}", m.label()),
            Op::Annihilate(m) => write!(f, "a_{}", m.label()),
            Op::Number(m) => write!(f, "N_{}", m.label()),
            Op::Hamiltonian => f.write_str("H_D"),
        }
    }
}

struct Truncated {
    cutoff: u64,
}

impl Truncated {
    fn apply(&self, op: Op, v: &ExactVec) -> ExactVec {
        match op {
            Op::Create(m) => self.ladder(Ladder::Create, m, v),
            Op::Annihilate(m) => self.ladder(Ladder::Annihilate, m, v),
            Op::Number(m) => {
                let lowered = self.ladder(Ladder::Annihilate, m, v);
                self.ladder(Ladder::Create, m, &lowered)
            }
            Op::Hamiltonian => {
                let d = self.imbalance(v);
                self.imbalance(&d)
            }
        }
    }

    fn imbalance(&self, v: &ExactVec) -> ExactVec {
        let n3 = self.apply(Op::Number(Mode::Third), v);
        let n2 = self.apply(Op::Number(Mode::Second), v);
        let n1 = self.apply(Op::Number(Mode::First), v);
        vec_sub(&vec_sub(&n3, &n2), &n1)
    }

    fn ladder(&self, kind: Ladder, mode: Mode, v: &ExactVec) -> ExactVec {
        let mut out = ExactVec::new();
        for (s, amp) in v {
            let n = s.occupation(mode);
            let (target, factor) = match kind {
                Ladder::Create if n + 1 >= self.cutoff => continue,
                Ladder::Create => (n + 1, n + 1),
                Ladder::Annihilate if n == 0 => continue,
                Ladder::Annihilate => (n - 1, n),
            };
            vec_add(&mut out, s.with_occupation(mode, target), &amp.times_sqrt(factor));
        }
        out
    }

    /// `[A, B]|s⟩`
    fn commutator(&self, a: Op, b: Op, s: FockState) -> ExactVec {
        let v = exact_basis(s);
        let ab = self.apply(a, &self.apply(b, &v));
        let ba = self.apply(b, &self.apply(a, &v));
        vec_sub(&ab, &ba)
    }

    fn states(&self) -> impl Iterator<Item = FockState> + '_ {
        let c = self.cutoff;
        (0..c).flat_map(move |n1| {
            (0..c).flat_map(move |n2| (0..c).map(move |n3| FockState::new(n1, n2, n3)))
        })
    }

    /// Every occupation strictly below the top rung.
    fn is_interior(&self, s: &FockState) -> bool {
        s.occupations().iter().all(|&n| n + 1 < self.cutoff)
    }
}

fn show(v: &ExactVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(s, a)| format!("({a})|{s}⟩"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Result of evaluating `[a_j, a†_k]` on one truncated basis state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommutatorCheck {
    /// The state is interior; `holds` records whether `[a_j, a†_k]|s⟩ = δ_jk|s⟩`.
    Interior { holds: bool },
    /// Some occupation sits on the top rung `cutoff − 1`.
    BoundaryExcluded,
}

/// Evaluates `[a_j, a†_k]` on `s` in the space with occupations `< cutoff`.
pub fn ladder_commutator_at(j: Mode, k: Mode, s: &FockState, cutoff: u64) -> CommutatorCheck {
    let space = Truncated { cutoff };
    if !space.is_interior(s) {
        return CommutatorCheck::BoundaryExcluded;
    }
    let got = space.commutator(Op::Annihilate(j), Op::Create(k), *s);
    let expected = if j == k { exact_basis(*s) } else { ExactVec::new() };
    CommutatorCheck::Interior {
        holds: got == expected,
    }
}

/// Verifies the ladder and number-operator algebra on every basis state with
/// occupations below `cutoff`, in exact surd arithmetic.
pub fn commutator_suite(cutoff: u64) -> Result<CheckReport, FockError> {
    if cutoff < 2 {
        return Err(FockError::Domain("commutator suite needs cutoff >= 2".into()));
    }
    let space = Truncated { cutoff };
    let mut report = CheckReport::new();

    let ladder_identity =
        |name: &str, left: fn(Mode) -> Op, right: fn(Mode) -> Op, delta: i128| {
            let mut tally = Tally::new(name);
            for s in space.states() {
                for j in Mode::ALL {
                    for k in Mode::ALL {
                        let (a, b) = (left(j), right(k));
                        if !space.is_interior(&s) {
                            tally.exclude(|| {
                                let got = space.commutator(a, b, s);
                                format!("[{a}, {b}]|{s}⟩ = {} on the truncated ladder", show(&got))
                            });
                            continue;
                        }
                        let got = space.commutator(a, b, s);
                        let expected = if j == k {
                            vec_scale(&exact_basis(s), delta)
                        } else {
                            ExactVec::new()
                        };
                        tally.record(got == expected, || {
                            format!("[{a}, {b}]|{s}⟩ = {}", show(&got))
                        });
                    }
                }
            }
            tally.finish()
        };
    report.push(ladder_identity("[a_j, a†_k] = δ_jk", Op::Annihilate, Op::Create, 1));
    report.push(ladder_identity("[a†_j, a†_k] = 0", Op::Create, Op::Create, 0));
    report.push(ladder_identity("[a_j, a_k] = 0", Op::Annihilate, Op::Annihilate, 0));

    let mut readout = Tally::new("N_j = a†_j a_j reads n_j");
    let mut number_h = Tally::new("[N_j, H_D] = 0");
    let mut number_number = Tally::new("[N_j, N_k] = 0");
    let mut energy = Tally::new("H_D|n⟩ = (n3 − n2 − n1)²|n⟩");
    let mut create_annihilate = Tally::new("a_j a†_j|n⟩ = (n_j + 1)|n⟩");
    for s in space.states() {
        let basis = exact_basis(s);
        for j in Mode::ALL {
            let got = space.apply(Op::Number(j), &basis);
            let expected = vec_scale(&basis, s.occupation(j) as i128);
            readout.record(got == expected, || format!("N_{}|{s}⟩ = {}", j.label(), show(&got)));

            let c = space.commutator(Op::Number(j), Op::Hamiltonian, s);
            number_h.record(c.is_empty(), || format!("[N_{}, H_D]|{s}⟩ = {}", j.label(), show(&c)));

            for k in Mode::ALL {
                let c = space.commutator(Op::Number(j), Op::Number(k), s);
                number_number.record(c.is_empty(), || {
                    format!("[N_{}, N_{}]|{s}⟩ = {}", j.label(), k.label(), show(&c))
                });
            }

            if space.is_interior(&s) {
                let raised = space.apply(Op::Create(j), &basis);
                let back = space.apply(Op::Annihilate(j), &raised);
                let expected = vec_scale(&basis, s.occupation(j) as i128 + 1);
                create_annihilate.record(back == expected, || {
                    format!("a_{0} a†_{0}|{s}⟩ = {1}", j.label(), show(&back))
                });
            } else {
                create_annihilate.exclude(|| format!("|{s}⟩ has a mode on the top rung"));
            }
        }
        let h = space.apply(Op::Hamiltonian, &basis);
        let expected = vec_scale(&basis, hd_eigenvalue(&s) as i128);
        energy.record(h == expected, || format!("H_D|{s}⟩ = {}", show(&h)));
    }
    for t in [readout, number_h, number_number, energy, create_annihilate] {
        report.push(t.finish());
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Zero-energy eigenspace and classification.

/// All states with `n_j ≤ cutoff` and `H_D` eigenvalue 0, i.e. `n3 = n1 + n2`
/// with `n1 + n2 ≤ cutoff`, in lexicographic order.
pub fn zero_eigenspace(cutoff: u64) -> Vec<FockState> {
    (0..=cutoff)
        .flat_map(|n1| (0..=cutoff - n1).map(move |n2| FockState::new(n1, n2, n1 + n2)))
        .collect()
}

/// `(N+1)(N+2)/2`, the size of [`zero_eigenspace`].
pub fn zero_eigenspace_len(cutoff: u64) -> u64 {
    (cutoff + 1) * (cutoff + 2) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectorClass {
    Fibonacci,
    NonFibonacci,
    Vacuum,
}

impl SectorClass {
    /// Membership in `E_F`; the vacuum belongs to both sets.
    pub fn in_fibonacci_set(self) -> bool {
        matches!(self, SectorClass::Fibonacci | SectorClass::Vacuum)
    }

    /// Membership in `E_Z`; the vacuum belongs to both sets.
    pub fn in_non_fibonacci_set(self) -> bool {
        matches!(self, SectorClass::NonFibonacci | SectorClass::Vacuum)
    }
}

impl fmt::Display for SectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectorClass::Fibonacci => "fibonacci",
            SectorClass::NonFibonacci => "non_fibonacci",
            SectorClass::Vacuum => "vacuum",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub state: FockState,
    pub class: SectorClass,
    /// Certified verdicts for `n1`, `n2`, `n3`.
    pub verdicts: Vec<Verdict>,
    /// `{n1, n2}` are neighbours `F_m, F_{m+1}` of the sequence (in either order).
    pub consecutive: bool,
}

fn consecutive_fibonacci(a: u64, b: u64) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let (mut x, mut y) = (0u64, 1u64);
    while x <= lo {
        if x == lo && y == hi {
            return true;
        }
        let z = x + y;
        x = y;
        y = z;
    }
    false
}

/// Classifies a zero-energy state by certified recognition of each occupation.
pub fn classify(s: &FockState) -> Result<Classification, FockError> {
    if hd_eigenvalue(s) != 0 {
        return Err(FockError::Domain(format!(
            "{s} has H_D eigenvalue {}, classification needs 0",
            hd_eigenvalue(s)
        )));
    }
    let verdicts: Vec<Verdict> = s
        .occupations()
        .iter()
        .map(|&n| recognize(&Natural::from(n), Method::FloorCeiling).expect("total"))
        .collect();
    let class = if s.is_vacuum() {
        SectorClass::Vacuum
    } else if verdicts.iter().all(|v| v.is_fibonacci) {
        SectorClass::Fibonacci
    } else {
        SectorClass::NonFibonacci
    };
    Ok(Classification {
        state: *s,
        class,
        consecutive: class == SectorClass::Fibonacci && consecutive_fibonacci(s.n1, s.n2),
        verdicts,
    })
}

// ---------------------------------------------------------------------------
// Superpositions and measurement.

/// Normalized superposition of distinct Fock states.
#[derive(Clone, Debug, PartialEq)]
pub struct Superposition {
    terms: Vec<(Complex64, FockState)>,
}

impl Superposition {
    /// Validates distinct states and `Σ|c|² = 1` within [`NORM_TOLERANCE`].
    pub fn new(terms: Vec<(Complex64, FockState)>) -> Result<Self, FockError> {
        check_distinct(&terms)?;
        let norm: f64 = terms.iter().map(|(c, _)| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(FockError::InvalidSuperposition(format!(
                "squared norm {norm} is not 1"
            )));
        }
        Ok(Superposition { terms })
    }

    /// Rescales `terms` to unit norm.
    pub fn normalized(terms: Vec<(Complex64, FockState)>) -> Result<Self, FockError> {
        check_distinct(&terms)?;
        let norm: f64 = terms.iter().map(|(c, _)| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(FockError::InvalidSuperposition("zero or non-finite norm".into()));
        }
        Ok(Superposition {
            terms: terms.into_iter().map(|(c, s)| (c / norm, s)).collect(),
        })
    }

    pub fn basis(s: FockState) -> Self {
        Superposition {
            terms: vec![(Complex64::new(1.0, 0.0), s)],
        }
    }

    pub fn terms(&self) -> &[(Complex64, FockState)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.terms.iter().map(|(c, _)| c.norm_sqr()).collect()
    }

    pub fn amplitude(&self, s: &FockState) -> Complex64 {
        self.terms
            .iter()
            .find(|(_, t)| t == s)
            .map(|(c, _)| *c)
            .unwrap_or_default()
    }

    /// `exp(−i E_D t)` applied termwise.
    pub fn evolve(&self, t: f64) -> Superposition {
        Superposition {
            terms: self
                .terms
                .iter()
                .map(|(c, s)| {
                    let phase = Complex64::from_polar(1.0, -(hd_eigenvalue(s) as f64) * t);
                    (c * phase, *s)
                })
                .collect(),
        }
    }
}

fn check_distinct(terms: &[(Complex64, FockState)]) -> Result<(), FockError> {
    if terms.is_empty() {
        return Err(FockError::InvalidSuperposition("no terms".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (c, s) in terms {
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(FockError::InvalidSuperposition(format!("non-finite amplitude on {s}")));
        }
        if !seen.insert(*s) {
            return Err(FockError::InvalidSuperposition(format!("duplicate state {s}")));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weighting {
    Uniform,
    /// Amplitude of the `i`-th state (enumeration order, from 0) ∝ `r^i`.
    Geometric { ratio: f64 },
}

/// Superposition over [`zero_eigenspace`]`(cutoff)` with the given profile.
pub fn ground_superposition(cutoff: u64, weighting: Weighting) -> Result<Superposition, FockError> {
    let states = zero_eigenspace(cutoff);
    let weights: Vec<f64> = match weighting {
        Weighting::Uniform => vec![1.0; states.len()],
        Weighting::Geometric { ratio } => {
            if !(ratio > 0.0 && ratio < 1.0) {
                return Err(FockError::Domain(format!(
                    "geometric ratio must lie in (0, 1), got {ratio}"
                )));
            }
            (0..states.len()).map(|i| ratio.powi(i as i32)).collect()
        }
    };
    Superposition::normalized(
        weights
            .into_iter()
            .zip(states)
            .map(|(w, s)| (Complex64::new(w, 0.0), s))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRow {
    pub state: FockState,
    pub count: u64,
    pub empirical: f64,
    pub theoretical: f64,
}

/// Counts from repeated projective measurement in the occupation basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub shots: u64,
    pub seed: u64,
    /// One row per superposition term, in term order.
    pub rows: Vec<SampleRow>,
}

impl SampleReport {
    pub fn counts(&self) -> BTreeMap<FockState, u64> {
        self.rows.iter().map(|r| (r.state, r.count)).collect()
    }

    pub fn count(&self, s: &FockState) -> u64 {
        self.rows.iter().find(|r| &r.state == s).map_or(0, |r| r.count)
    }
}

/// Draws `shots` outcomes from the `|c_i|²` distribution with a ChaCha8
/// generator seeded by `seed`. Identical inputs give identical reports.
pub fn measure(sup: &Superposition, shots: u64, seed: u64) -> Result<SampleReport, FockError> {
    if shots == 0 {
        return Err(FockError::Domain("shots must be >= 1".into()));
    }
    let probs = sup.probabilities();
    let total: f64 = probs.iter().sum();
    let cumulative: Vec<f64> = probs
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p / total;
            Some(*acc)
        })
        .collect();
    let last = probs.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..shots {
        let u: f64 = rng.random();
        let i = cumulative.partition_point(|&c| c <= u).min(last);
        counts[i] += 1;
    }
    let rows = sup
        .terms
        .iter()
        .zip(counts)
        .zip(probs)
        .map(|(((_, s), count), p)| SampleRow {
            state: *s,
            count,
            empirical: count as f64 / shots as f64,
            theoretical: p / total,
        })
        .collect();
    Ok(SampleReport { shots, seed, rows })
}
