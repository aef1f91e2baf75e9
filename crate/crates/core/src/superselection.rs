//! Two superselection sectors: finite-particle Fock states and a sector of
//! formal tokens `ω_1 … ω_m` standing in for actual-infinity number states.
//!
//! Observables are block-diagonal by construction. There is no way to
//! represent a matrix element between the sectors, so `⟨Ψ₁|Q|Ψ₂⟩ = 0` holds
//! for every observable that can be built. Combining one vector from each
//! sector yields a mixed [`StateDescriptor`], never a coherent superposition.
//!
//! Density operators are normalized to unit trace: an equal-weight
//! combination uses weights `1/2`, not the coefficient `1/√2` (which would
//! give `Tr ρ = √2`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::check::{CheckReport, Tally};
use crate::fock::{hd_eigenvalue, FockState, Superposition};

pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuperselectionError {
    #[error("construction error: {0}")]
    Construction(String),
    #[error("weight error: {0}")]
    Weight(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("invalid sector vector: {0}")]
    InvalidVector(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectorTag {
    FiniteSector,
    InfiniteSector,
}

/// Formal basis element `ω_{i+1}` of the infinite sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Token(pub usize);

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω{}", self.0 + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisLabel {
    Fock(FockState),
    Token(Token),
}

impl BasisLabel {
    pub fn sector(&self) -> SectorTag {
        match self {
            BasisLabel::Fock(_) => SectorTag::FiniteSector,
            BasisLabel::Token(_) => SectorTag::InfiniteSector,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Fock(s) => write!(f, "{s}"),
            BasisLabel::Token(t) => write!(f, "{t}"),
        }
    }
}

/// Unit vector supported in exactly one sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorVector {
    sector: SectorTag,
    terms: Vec<(BasisLabel, Complex64)>,
}

impl SectorVector {
    fn build(
        sector: SectorTag,
        terms: Vec<(BasisLabel, Complex64)>,
    ) -> Result<Self, SuperselectionError> {
        if terms.is_empty() {
            return Err(SuperselectionError::InvalidVector("no terms".into()));
        }
        let mut seen = BTreeSet::new();
        for (label, _) in &terms {
            if !seen.insert(*label) {
                return Err(SuperselectionError::InvalidVector(format!(
                    "duplicate basis element {label}"
                )));
            }
        }
        let norm: f64 = terms.iter().map(|(_, c)| c.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > TOLERANCE {
            return Err(SuperselectionError::InvalidVector(format!(
                "squared norm {norm} is not 1"
            )));
        }
        Ok(SectorVector { sector, terms })
    }

    pub fn finite(terms: Vec<(FockState, Complex64)>) -> Result<Self, SuperselectionError> {
        Self::build(
            SectorTag::FiniteSector,
            terms.into_iter().map(|(s, c)| (BasisLabel::Fock(s), c)).collect(),
        )
    }

    pub fn infinite(terms: Vec<(Token, Complex64)>) -> Result<Self, SuperselectionError> {
        Self::build(
            SectorTag::InfiniteSector,
            terms.into_iter().map(|(t, c)| (BasisLabel::Token(t), c)).collect(),
        )
    }

    /// Equal-amplitude vector over tokens `ω_1 … ω_m`.
    pub fn uniform_tokens(m: usize) -> Result<Self, SuperselectionError> {
        let amp = Complex64::new(1.0 / (m as f64).sqrt(), 0.0);
        Self::infinite((0..m).map(|i| (Token(i), amp)).collect())
    }

    pub fn from_superposition(sup: &Superposition) -> Self {
        SectorVector {
            sector: SectorTag::FiniteSector,
            terms: sup
                .terms()
                .iter()
                .map(|(c, s)| (BasisLabel::Fock(*s), *c))
                .collect(),
        }
    }

    pub fn basis_fock(s: FockState) -> Self {
        SectorVector {
            sector: SectorTag::FiniteSector,
            terms: vec![(BasisLabel::Fock(s), Complex64::new(1.0, 0.0))],
        }
    }

    pub fn sector(&self) -> SectorTag {
        self.sector
    }

    pub fn terms(&self) -> &[(BasisLabel, Complex64)] {
        &self.terms
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    fn map_amplitudes(&self, f: impl Fn(&BasisLabel, Complex64) -> Complex64) -> SectorVector {
        SectorVector {
            sector: self.sector,
            terms: self.terms.iter().map(|(l, c)| (*l, f(l, *c))).collect(),
        }
    }
}

/// Self-adjoint matrix block stored sparsely.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianBlock<L: Ord> {
    entries: BTreeMap<(L, L), Complex64>,
    support: BTreeSet<L>,
}

impl<L: Ord + Copy + fmt::Display> HermitianBlock<L> {
    /// Rejects blocks where `Q[a][b] ≠ conj(Q[b][a])` or entries are non-finite.
    pub fn new(
        entries: impl IntoIterator<Item = (L, L, Complex64)>,
    ) -> Result<Self, SuperselectionError> {
        let mut map = BTreeMap::new();
        let mut support = BTreeSet::new();
        for (r, c, v) in entries {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(SuperselectionError::Construction(format!(
                    "non-finite entry at ({r}, {c})"
                )));
            }
            if map.insert((r, c), v).is_some() {
                return Err(SuperselectionError::Construction(format!(
                    "entry ({r}, {c}) registered twice"
                )));
            }
            support.insert(r);
            support.insert(c);
        }
        for (&(r, c), v) in &map {
            let mirror = map.get(&(c, r)).copied().unwrap_or_default();
            if *v != mirror.conj() {
                return Err(SuperselectionError::Construction(format!(
                    "block is not self-adjoint at ({r}, {c})"
                )));
            }
        }
        Ok(HermitianBlock {
            entries: map,
            support,
        })
    }

    /// Real diagonal block.
    pub fn diagonal(values: impl IntoIterator<Item = (L, f64)>) -> Result<Self, SuperselectionError> {
        Self::new(values.into_iter().map(|(l, v)| (l, l, Complex64::new(v, 0.0))))
    }

    pub fn element(&self, r: &L, c: &L) -> Complex64 {
        self.entries.get(&(*r, *c)).copied().unwrap_or_default()
    }

    pub fn supports(&self, l: &L) -> bool {
        self.support.contains(l)
    }
}

/// Finite-sector block of an observable.
#[derive(Clone, Debug, PartialEq)]
pub enum FiniteBlock {
    Identity,
    /// `N₁ + N₂ + N₃`
    TotalNumber,
    Matrix(HermitianBlock<FockState>),
}

impl FiniteBlock {
    fn element(&self, r: &FockState, c: &FockState) -> Complex64 {
        match self {
            FiniteBlock::Identity if r == c => Complex64::new(1.0, 0.0),
            FiniteBlock::TotalNumber if r == c => Complex64::new(r.total() as f64, 0.0),
            FiniteBlock::Matrix(m) => m.element(r, c),
            _ => Complex64::default(),
        }
    }

    fn accepts(&self, s: &FockState) -> bool {
        match self {
            FiniteBlock::Matrix(m) => m.supports(s),
            _ => true,
        }
    }
}

/// Infinite-sector block of an observable.
#[derive(Clone, Debug, PartialEq)]
pub enum InfiniteBlock {
    Identity,
    Matrix(HermitianBlock<Token>),
}

impl InfiniteBlock {
    /// Diagonal block assigning `values[i]` to `ω_{i+1}`.
    pub fn token_values(values: &[f64]) -> Result<Self, SuperselectionError> {
        HermitianBlock::diagonal(values.iter().enumerate().map(|(i, v)| (Token(i), *v)))
            .map(InfiniteBlock::Matrix)
    }

    fn element(&self, r: &Token, c: &Token) -> Complex64 {
        match self {
            InfiniteBlock::Identity if r == c => Complex64::new(1.0, 0.0),
            InfiniteBlock::Matrix(m) => m.element(r, c),
            _ => Complex64::default(),
        }
    }

    fn accepts(&self, t: &Token) -> bool {
        match self {
            InfiniteBlock::Matrix(m) => m.supports(t),
            InfiniteBlock::Identity => true,
        }
    }
}

/// Block-diagonal observable. There is no field for cross-sector entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    finite: FiniteBlock,
    infinite: InfiniteBlock,
}

impl Observable {
    pub fn finite_block(&self) -> &FiniteBlock {
        &self.finite
    }

    pub fn infinite_block(&self) -> &InfiniteBlock {
        &self.infinite
    }

    /// `⟨r|Q|c⟩`; zero whenever `r` and `c` lie in different sectors.
    pub fn element(&self, r: &BasisLabel, c: &BasisLabel) -> Complex64 {
        match (r, c) {
            (BasisLabel::Fock(a), BasisLabel::Fock(b)) => self.finite.element(a, b),
            (BasisLabel::Token(a), BasisLabel::Token(b)) => self.infinite.element(a, b),
            _ => Complex64::default(),
        }
    }

    fn accepts(&self, l: &BasisLabel) -> bool {
        match l {
            BasisLabel::Fock(s) => self.finite.accepts(s),
            BasisLabel::Token(t) => self.infinite.accepts(t),
        }
    }

    pub fn identity() -> Self {
        Observable {
            finite: FiniteBlock::Identity,
            infinite: InfiniteBlock::Identity,
        }
    }
}

/// Builds an observable from a finite block and diagonal token values.
pub fn make_observable(
    finite: FiniteBlock,
    infinite_token_values: &[f64],
) -> Result<Observable, SuperselectionError> {
    Ok(Observable {
        finite,
        infinite: InfiniteBlock::token_values(infinite_token_values)?,
    })
}

/// Registers matrix elements one at a time. Registering an element between
/// the two sectors makes [`ObservableBuilder::build`] fail.
#[derive(Clone, Debug, Default)]
pub struct ObservableBuilder {
    finite_preset: Option<FiniteBlock>,
    infinite_identity: bool,
    entries: Vec<(BasisLabel, BasisLabel, Complex64)>,
}

impl ObservableBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn finite_block(mut self, block: FiniteBlock) -> Self {
        self.finite_preset = Some(block);
        self
    }

    pub fn infinite_identity(mut self) -> Self {
        self.infinite_identity = true;
        self
    }

    pub fn token_values(mut self, values: &[f64]) -> Self {
        for (i, v) in values.iter().enumerate() {
            let t = BasisLabel::Token(Token(i));
            self.entries.push((t, t, Complex64::new(*v, 0.0)));
        }
        self
    }

    pub fn entry(mut self, row: BasisLabel, col: BasisLabel, value: Complex64) -> Self {
        self.entries.push((row, col, value));
        self
    }

    pub fn build(self) -> Result<Observable, SuperselectionError> {
        let mut finite_entries = Vec::new();
        let mut token_entries = Vec::new();
        for (r, c, v) in self.entries {
            match (r, c) {
                (BasisLabel::Fock(a), BasisLabel::Fock(b)) => finite_entries.push((a, b, v)),
                (BasisLabel::Token(a), BasisLabel::Token(b)) => token_entries.push((a, b, v)),
                _ => {
                    return Err(SuperselectionError::Construction(format!(
                        "cross-sector element ⟨{r}|Q|{c}⟩ = {v} is forbidden"
                    )))
                }
            }
        }
        let finite = match (self.finite_preset, finite_entries.is_empty()) {
            (Some(block), true) => block,
            (None, true) => FiniteBlock::Identity,
            (None, false) => FiniteBlock::Matrix(HermitianBlock::new(finite_entries)?),
            (Some(_), false) => {
                return Err(SuperselectionError::Construction(
                    "finite block given both as a preset and as entries".into(),
                ))
            }
        };
        let infinite = match (self.infinite_identity, token_entries.is_empty()) {
            (_, false) if self.infinite_identity => {
                return Err(SuperselectionError::Construction(
                    "infinite block given both as identity and as entries".into(),
                ))
            }
            (_, false) => InfiniteBlock::Matrix(HermitianBlock::new(token_entries)?),
            (_, true) => InfiniteBlock::Identity,
        };
        Ok(Observable { finite, infinite })
    }
}

fn sandwich(q: &Observable, bra: &SectorVector, ket: &SectorVector) -> Complex64 {
    let mut acc = Complex64::default();
    for (a, ca) in &bra.terms {
        for (b, cb) in &ket.terms {
            acc += ca.conj() * q.element(a, b) * cb;
        }
    }
    acc
}

/// `⟨Ψ₁|Q|Ψ₂⟩`. For vectors in different sectors every summand multiplies
/// a structurally absent element, so the result is exactly zero.
pub fn cross_element(q: &Observable, v1: &SectorVector, v2: &SectorVector) -> Complex64 {
    sandwich(q, v1, v2)
}

/// Pure sector vector or a two-block mixture `w₁|Ψ₁⟩⟨Ψ₁| + w₂|Ψ₂⟩⟨Ψ₂|`.
#[derive(Clone, Debug, PartialEq)]
pub enum StateDescriptor {
    Pure(SectorVector),
    Mixed {
        w1: f64,
        finite: SectorVector,
        w2: f64,
        infinite: SectorVector,
    },
}

impl StateDescriptor {
    fn components(&self) -> Vec<(f64, &SectorVector)> {
        match self {
            StateDescriptor::Pure(v) => vec![(1.0, v)],
            StateDescriptor::Mixed {
                w1,
                finite,
                w2,
                infinite,
            } => vec![(*w1, finite), (*w2, infinite)],
        }
    }

    /// `(Tr P_finite ρ, Tr P_infinite ρ)`.
    pub fn sector_weights(&self) -> (f64, f64) {
        let mut w = (0.0, 0.0);
        for (weight, v) in self.components() {
            for (label, c) in v.terms() {
                let p = weight * c.norm_sqr();
                match label.sector() {
                    SectorTag::FiniteSector => w.0 += p,
                    SectorTag::InfiniteSector => w.1 += p,
                }
            }
        }
        w
    }
}

/// Combines a finite-sector and an infinite-sector vector. The result is a
/// mixture unless one weight is 0, in which case the survivor is returned pure.
pub fn combine_sectors(
    v1: &SectorVector,
    v2: &SectorVector,
    w1: f64,
    w2: f64,
) -> Result<StateDescriptor, SuperselectionError> {
    if v1.sector() != SectorTag::FiniteSector || v2.sector() != SectorTag::InfiniteSector {
        return Err(SuperselectionError::BasisMismatch(
            "expected one finite-sector and one infinite-sector vector".into(),
        ));
    }
    if !(w1.is_finite() && w2.is_finite()) || w1 < 0.0 || w2 < 0.0 {
        return Err(SuperselectionError::Weight(format!(
            "weights must be non-negative, got ({w1}, {w2})"
        )));
    }
    if (w1 + w2 - 1.0).abs() > TOLERANCE {
        return Err(SuperselectionError::Weight(format!(
            "weights must sum to 1, got {}",
            w1 + w2
        )));
    }
    Ok(if w2 == 0.0 {
        StateDescriptor::Pure(v1.clone())
    } else if w1 == 0.0 {
        StateDescriptor::Pure(v2.clone())
    } else {
        StateDescriptor::Mixed {
            w1,
            finite: v1.clone(),
            w2,
            infinite: v2.clone(),
        }
    })
}

/// `Tr(ρQ)`.
pub fn expectation(q: &Observable, sd: &StateDescriptor) -> Result<f64, SuperselectionError> {
    let mut total = 0.0;
    for (w, v) in sd.components() {
        if let Some((label, _)) = v.terms().iter().find(|(l, _)| !q.accepts(l)) {
            return Err(SuperselectionError::BasisMismatch(format!(
                "observable has no block entry for {label}"
            )));
        }
        total += w * sandwich(q, v, v).re;
    }
    Ok(total)
}

/// `Tr(ρ²)`: 1 for pure states, `w₁² + w₂²` for a two-block mixture.
pub fn purity(sd: &StateDescriptor) -> f64 {
    match sd {
        StateDescriptor::Pure(_) => 1.0,
        StateDescriptor::Mixed { w1, w2, .. } => w1 * w1 + w2 * w2,
    }
}

/// Density matrix written out on the union of the descriptor's supports.
#[derive(Clone, Debug)]
pub struct ExplicitDensity {
    pub basis: Vec<BasisLabel>,
    pub rho: DMatrix<Complex64>,
}

impl ExplicitDensity {
    pub fn new(sd: &StateDescriptor) -> Self {
        let basis: Vec<BasisLabel> = sd
            .components()
            .iter()
            .flat_map(|(_, v)| v.terms().iter().map(|(l, _)| *l))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: BTreeMap<BasisLabel, usize> =
            basis.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let n = basis.len();
        let mut rho = DMatrix::<Complex64>::zeros(n, n);
        for (w, v) in sd.components() {
            let mut psi = DMatrix::<Complex64>::zeros(n, 1);
            for (l, c) in v.terms() {
                psi[(index[l], 0)] = *c;
            }
            rho += (&psi * psi.adjoint()) * Complex64::new(w, 0.0);
        }
        ExplicitDensity { basis, rho }
    }

    pub fn trace(&self) -> Complex64 {
        self.rho.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    /// `Tr(ρQ)` with `Q` restricted to this basis.
    pub fn expectation(&self, q: &Observable) -> f64 {
        let n = self.basis.len();
        let qm = DMatrix::from_fn(n, n, |i, j| q.element(&self.basis[i], &self.basis[j]));
        (&self.rho * qm).trace().re
    }
}

/// Evolves every component termwise by `exp(−i E t / steps)` for `steps`
/// steps and checks that nothing leaks between sectors.
///
/// Finite-sector energies come from `H_D`; token `ω_{i+1}` has energy
/// `token_energies[i]`.
pub fn evolve_sector_check(
    sd: &StateDescriptor,
    token_energies: &[f64],
    t: f64,
    steps: u64,
) -> Result<CheckReport, SuperselectionError> {
    let energy = |l: &BasisLabel| -> Result<f64, SuperselectionError> {
        match l {
            BasisLabel::Fock(s) => Ok(hd_eigenvalue(s) as f64),
            BasisLabel::Token(tok) => token_energies.get(tok.0).copied().ok_or_else(|| {
                SuperselectionError::BasisMismatch(format!("no energy assigned to {tok}"))
            }),
        }
    };
    let mut step_phases: BTreeMap<BasisLabel, Complex64> = BTreeMap::new();
    let dt = if steps == 0 { 0.0 } else { t / steps as f64 };
    for (_, v) in sd.components() {
        for (l, _) in v.terms() {
            step_phases.insert(*l, Complex64::from_polar(1.0, -energy(l)? * dt));
        }
    }

    let initial_weights = sd.sector_weights();
    let initial_norms: Vec<f64> = sd.components().iter().map(|(_, v)| v.norm_sqr()).collect();
    let initial_sectors: Vec<SectorTag> = sd.components().iter().map(|(_, v)| v.sector()).collect();
    let initial_purity = ExplicitDensity::new(sd).purity();

    let mut weights = Tally::new("sector weights constant");
    let mut norms = Tally::new("per-sector norms constant");
    let mut support = Tally::new("no support leaves its sector");
    let mut state = sd.clone();
    for step in 1..=steps {
        state = match &state {
            StateDescriptor::Pure(v) => {
                StateDescriptor::Pure(v.map_amplitudes(|l, c| c * step_phases[l]))
            }
            StateDescriptor::Mixed {
                w1,
                finite,
                w2,
                infinite,
            } => StateDescriptor::Mixed {
                w1: *w1,
                finite: finite.map_amplitudes(|l, c| c * step_phases[l]),
                w2: *w2,
                infinite: infinite.map_amplitudes(|l, c| c * step_phases[l]),
            },
        };
        let w = state.sector_weights();
        weights.record(
            (w.0 - initial_weights.0).abs() <= TOLERANCE
                && (w.1 - initial_weights.1).abs() <= TOLERANCE,
            || format!("step {step}: weights {w:?} vs {initial_weights:?}"),
        );
        for (i, (_, v)) in state.components().iter().enumerate() {
            let n = v.norm_sqr();
            norms.record((n - initial_norms[i]).abs() <= TOLERANCE, || {
                format!("step {step}: component {i} norm² {n} vs {}", initial_norms[i])
            });
            let stays = v.terms().iter().all(|(l, _)| l.sector() == initial_sectors[i]);
            support.record(stays, || format!("step {step}: component {i} left its sector"));
        }
    }
    let final_purity = ExplicitDensity::new(&state).purity();
    let mut purity_tally = Tally::new("purity unchanged");
    purity_tally.record((final_purity - initial_purity).abs() <= TOLERANCE, || {
        format!("purity {initial_purity} -> {final_purity}")
    });

    let mut report = CheckReport::new();
    for tally in [weights, norms, support, purity_tally] {
        report.push(tally.finish());
    }
    Ok(report)
}
