//! Fibonacci membership by three independent routes.
//!
//! * [`fib_oracle`] generates `0, 1, 1, 2, 3, …` until it reaches the query.
//! * [`fib_exact`] decides whether `[φb − 1/b, φb + 1/b]` holds an integer
//!   with nothing but integer squares.
//! * [`floor_ceiling_test`] evaluates `⌊b·p/q + b + 1/b⌋ − ⌈b·p/q + b − 1/b⌉`
//!   at a convergent and, through [`recognize`], escalates the convergent
//!   index until the evaluation is certified against the true `{φ}`.
//!
//! The floor–ceiling decision rule is `difference ≥ 0`: the difference plus
//! one counts the integers in the interval, so a non-negative value is
//! exactly a non-empty intersection. At `b = 1` the interval holds two
//! integers and the difference is 1, not 0.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{
    cmp_frac_phi, golden_enclosure, rational_ceil, rational_floor, Convergent, ConvergentStream,
    Natural, Ratio,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizerError {
    #[error("domain error: {0}")]
    Domain(String),
}

fn zero_query() -> RecognizerError {
    RecognizerError::Domain("b = 0 has no interval [φb − 1/b, φb + 1/b]".into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    ExactInterval,
    FloorCeiling,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BruteForce => "brute_force",
            Method::ExactInterval => "exact_interval",
            Method::FloorCeiling => "floor_ceiling",
        })
    }
}

/// How many convergents to take before evaluating the floor–ceiling test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrecisionPolicy {
    /// Smallest `k` with `q_k² ≥ factor · b / √5`.
    Literal { factor: u64 },
    /// Smallest `k` with `q_k · q_{k+1} ≥ margin · b²`, which bounds the
    /// approximation shift `b·|{φ} − p_k/q_k|` by `1/(margin · b)`.
    Rigorous { margin: u64 },
}

impl PrecisionPolicy {
    pub const DEFAULT_LITERAL: PrecisionPolicy = PrecisionPolicy::Literal { factor: 10 };
    pub const DEFAULT_RIGOROUS: PrecisionPolicy = PrecisionPolicy::Rigorous { margin: 4 };
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self::DEFAULT_RIGOROUS
    }
}

impl fmt::Display for PrecisionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrecisionPolicy::Literal { factor } => write!(f, "literal:{factor}"),
            PrecisionPolicy::Rigorous { margin } => write!(f, "rigorous:{margin}"),
        }
    }
}

/// Evidence from the generating oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OracleCertificate {
    /// `F_index = b`, smallest such index.
    Hit { index: u64 },
    /// `F_index < b < F_{index+1}`.
    Between { index: u64 },
}

/// Integer-square witness for the interval criterion.
///
/// With `A = 2mb − b²` and `B = b²`, the integer `m` lies in
/// `[φb − 1/b, φb + 1/b]` iff `A − 2 < B√5 < A + 2`. The two flags record
/// each side, decided by squaring with sign care.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactWitness {
    #[serde(serialize_with = "ser_bigint")]
    pub m: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub a: BigInt,
    pub b_squared: Natural,
    /// `B√5 > A − 2`.
    pub above_lower: bool,
    /// `B√5 < A + 2`.
    pub below_upper: bool,
}

/// The floor–ceiling evaluation that a certified verdict rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloorCeilingCertificate {
    pub convergent: Convergent,
    /// The neighbouring convergent; together they bracket `{φ}`.
    pub bracket_partner: Convergent,
    #[serde(serialize_with = "ser_bigint")]
    pub floor: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub ceil: BigInt,
    pub difference: i64,
    /// Index the escalation started from.
    pub start_index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Certificate {
    BruteForce(OracleCertificate),
    ExactInterval(ExactWitness),
    FloorCeiling(FloorCeilingCertificate),
}

/// Value of the indicator `f(b)` together with re-checkable evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub query: Natural,
    pub is_fibonacci: bool,
    pub method: Method,
    pub certificate: Certificate,
}

impl Verdict {
    /// `f(b)` as 0 or 1.
    pub fn indicator(&self) -> u8 {
        u8::from(self.is_fibonacci)
    }

    /// Re-derives the verdict from the certificate alone, using arithmetic
    /// independent of the route that produced it.
    pub fn verify(&self) -> bool {
        let b = &self.query;
        match &self.certificate {
            Certificate::BruteForce(OracleCertificate::Hit { index }) => {
                self.is_fibonacci && fib_doubling(*index) == *b.as_biguint()
            }
            Certificate::BruteForce(OracleCertificate::Between { index }) => {
                !self.is_fibonacci
                    && fib_doubling(*index) < *b.as_biguint()
                    && *b.as_biguint() < fib_doubling(index + 1)
            }
            Certificate::ExactInterval(w) => {
                let b2 = b * b;
                let a = BigInt::from(2) * &w.m * b.to_bigint() - b2.to_bigint();
                a == w.a
                    && b2 == w.b_squared
                    && interval_by_enclosure(b).map(|set| {
                        let m_inside = set.contains(&w.m);
                        (m_inside == (w.above_lower && w.below_upper))
                            && (!set.is_empty()) == self.is_fibonacci
                    }) == Some(true)
            }
            Certificate::FloorCeiling(c) => verify_floor_ceiling(b, c, self.is_fibonacci),
        }
    }
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `F_n` by fast doubling; only used to re-check oracle certificates.
fn fib_doubling(n: u64) -> BigUint {
    fn pair(n: u64) -> (BigUint, BigUint) {
        if n == 0 {
            return (BigUint::zero(), BigUint::one());
        }
        let (a, b) = pair(n / 2);
        let c = &a * (&b * 2u32 - &a);
        let d = &a * &a + &b * &b;
        if n % 2 == 0 {
            (c, d)
        } else {
            let e = &c + &d;
            (d, e)
        }
    }
    pair(n).0
}

/// Integers in `[φb − 1/b, φb + 1/b]`, decided by refining dyadic
/// enclosures of `{φ}` until every candidate is clearly in or out.
fn interval_by_enclosure(b: &Natural) -> Option<Vec<BigInt>> {
    if b.is_zero() {
        return None;
    }
    let b_r = Ratio::from_natural(b);
    let inv = b_r.recip()?;
    let one = Ratio::from_i64s(1, 1);
    let mut bits = 8u32 + 2 * b.bits() as u32;
    loop {
        let e = golden_enclosure(bits);
        // φb = b + b·{φ}
        let center_lo = &b_r * &(&one + e.lo());
        let center_hi = &b_r * &(&one + e.hi());
        let lo_lo = &center_lo - &inv;
        let lo_hi = &center_hi - &inv;
        let hi_lo = &center_lo + &inv;
        let hi_hi = &center_hi + &inv;
        let first = rational_ceil(&lo_lo);
        let last = rational_floor(&hi_hi);
        let mut inside = Vec::new();
        let mut decided = true;
        let mut m = first;
        while m <= last {
            let mr = Ratio::from_integer(m.clone());
            let surely_in = lo_hi <= mr && mr <= hi_lo;
            let surely_out = mr < lo_lo || hi_hi < mr;
            if surely_in {
                inside.push(m.clone());
            } else if !surely_out {
                decided = false;
                break;
            }
            m += 1;
        }
        if decided {
            return Some(inside);
        }
        bits *= 2;
    }
}

fn verify_floor_ceiling(b: &Natural, c: &FloorCeilingCertificate, claimed: bool) -> bool {
    let b_r = Ratio::from_natural(b);
    let Some(inv) = b_r.recip() else {
        return false;
    };
    let eval = |approx: &Ratio| {
        let center = &(&b_r * approx) + &b_r;
        (
            rational_floor(&(&center + &inv)),
            rational_ceil(&(&center - &inv)),
        )
    };
    let near = c.convergent.value();
    let far = c.bracket_partner.value();
    let (f1, c1) = eval(&near);
    let (f2, c2) = eval(&far);
    // The two convergents must sit on opposite sides of {φ}.
    let brackets = cmp_frac_phi(&near) != cmp_frac_phi(&far);
    let diff = &f1 - &c1;
    brackets
        && f1 == c.floor
        && c1 == c.ceil
        && f1 == f2
        && c1 == c2
        && diff == BigInt::from(c.difference)
        && (c.difference >= 0) == claimed
}

/// Brute-force generation of `0, 1, 1, 2, 3, 5, …` until the value reaches `b`.
pub fn fib_oracle(b: &Natural) -> Verdict {
    let target = b.as_biguint();
    let (mut index, mut cur, mut next) = (0u64, BigUint::zero(), BigUint::one());
    while &cur < target {
        let sum = &cur + &next;
        cur = std::mem::replace(&mut next, sum);
        index += 1;
    }
    let (is_fibonacci, cert) = if &cur == target {
        (true, OracleCertificate::Hit { index })
    } else {
        (false, OracleCertificate::Between { index: index - 1 })
    };
    Verdict {
        query: b.clone(),
        is_fibonacci,
        method: Method::BruteForce,
        certificate: Certificate::BruteForce(cert),
    }
}

fn exact_witness(b: &BigInt, b2: &BigInt, m: BigInt) -> ExactWitness {
    let a = BigInt::from(2) * &m * b - b2;
    let five_b4 = BigInt::from(5) * b2 * b2;
    // B√5 > A − 2: automatic when A − 2 < 0, otherwise 5B² > (A − 2)².
    let lower: BigInt = &a - 2;
    let above_lower = lower.is_negative() || five_b4 > &lower * &lower;
    // B√5 < A + 2: impossible when A + 2 ≤ 0, otherwise 5B² < (A + 2)².
    let upper: BigInt = &a + 2;
    let below_upper = upper.is_positive() && five_b4 < &upper * &upper;
    ExactWitness {
        m,
        a,
        b_squared: Natural::from(b2.to_biguint().expect("square")),
        above_lower,
        below_upper,
    }
}

/// Decides `[φb − 1/b, φb + 1/b] ∩ ℕ ≠ ∅` with integer arithmetic only.
///
/// The witness is built for the integer nearest to `φb`; if any integer is
/// in the interval, that one is.
pub fn fib_exact(b: &Natural) -> Result<Verdict, RecognizerError> {
    if b.is_zero() {
        return Err(zero_query());
    }
    let bi = b.to_bigint();
    let b2 = &bi * &bi;
    // s < b√5 < s + 1, so ⌊φb⌋ = ⌊(b + s)/2⌋.
    let s = (BigInt::from(5) * &b2).sqrt();
    let fl = (&bi + &s) / 2;
    // Round up when frac(φb) > 1/2, i.e. b√5 > 2⌊φb⌋ + 1 − b (right side > 0).
    let t = BigInt::from(2) * &fl + 1 - &bi;
    let m = if BigInt::from(5) * &b2 > &t * &t {
        fl + 1
    } else {
        fl
    };
    let witness = exact_witness(&bi, &b2, m);
    Ok(Verdict {
        query: b.clone(),
        is_fibonacci: witness.above_lower && witness.below_upper,
        method: Method::ExactInterval,
        certificate: Certificate::ExactInterval(witness),
    })
}

/// Result of one floor–ceiling evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TestOutcome {
    /// `⌊·⌋ − ⌈·⌉`; non-negative exactly when the approximated interval
    /// contains an integer.
    pub difference: i64,
    #[serde(serialize_with = "ser_bigint")]
    pub floor: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub ceil: BigInt,
    pub convergent_used: Convergent,
    /// Both endpoints of the bracket `[p_k/q_k, p_{k+1}/q_{k+1}]` around
    /// `{φ}` give the same floor and ceiling, so the true `{φ}` does too.
    pub certified: bool,
}

impl TestOutcome {
    pub fn says_fibonacci(&self) -> bool {
        self.difference >= 0
    }
}

/// `(⌊b·p/q + b + 1/b⌋, ⌈b·p/q + b − 1/b⌉)` via integer division.
fn floor_ceil_at(b: &BigUint, p: &BigUint, q: &BigUint) -> (BigUint, BigUint) {
    // b·p/q + b ± 1/b = (b²p + b²q ± q) / (bq); both numerators are ≥ 0.
    let b2 = b * b;
    let base = &b2 * p + &b2 * q;
    let den = b * q;
    let floor = (&base + q) / &den;
    let lower = base - q;
    let ceil = (lower + &den - 1u32) / &den;
    (floor, ceil)
}

fn floor_ceil_small(b: u128, p: u128, q: u128) -> Option<(u128, u128)> {
    let b2 = b.checked_mul(b)?;
    let base = b2.checked_mul(p)?.checked_add(b2.checked_mul(q)?)?;
    let den = b.checked_mul(q)?;
    let floor = base.checked_add(q)? / den;
    let ceil = (base - q).checked_add(den - 1)? / den;
    Some((floor, ceil))
}

fn evaluate(b: &BigUint, p: &BigUint, q: &BigUint) -> (BigInt, BigInt) {
    if let (Some(bs), Some(ps), Some(qs)) = (b.to_u128(), p.to_u128(), q.to_u128()) {
        if let Some((f, c)) = floor_ceil_small(bs, ps, qs) {
            return (BigInt::from(f), BigInt::from(c));
        }
    }
    let (f, c) = floor_ceil_at(b, p, q);
    (BigInt::from(f), BigInt::from(c))
}

fn outcome_from_pair(b: &Natural, c: Convergent, partner: &Convergent) -> TestOutcome {
    let bu = b.as_biguint();
    let (floor, ceil) = evaluate(bu, c.p.as_biguint(), c.q.as_biguint());
    let (f2, c2) = evaluate(bu, partner.p.as_biguint(), partner.q.as_biguint());
    let difference = (&floor - &ceil)
        .to_i64()
        .expect("difference is bounded by 2/b + 1");
    TestOutcome {
        certified: floor == f2 && ceil == c2,
        difference,
        floor,
        ceil,
        convergent_used: c,
    }
}

/// Floor–ceiling test at convergent `k`.
pub fn floor_ceiling_test(b: &Natural, k: u64) -> Result<TestOutcome, RecognizerError> {
    if b.is_zero() {
        return Err(zero_query());
    }
    if k == 0 {
        return Err(RecognizerError::Domain("convergent indices start at 1".into()));
    }
    let mut stream = ConvergentStream::new().skip((k - 1) as usize);
    let c = stream.next().expect("unbounded");
    let partner = stream.next().expect("unbounded");
    Ok(outcome_from_pair(b, c, &partner))
}

/// First convergent index satisfying `policy` for the query `b`.
pub fn required_index(b: &Natural, policy: PrecisionPolicy) -> u64 {
    let b = b.as_biguint();
    let mut stream = ConvergentStream::new().peekable();
    loop {
        let c = stream.next().expect("unbounded");
        let q = c.q.as_biguint();
        let ok = match policy {
            // q² ≥ F·b/√5  ⇔  5q⁴ ≥ F²b²
            PrecisionPolicy::Literal { factor } => {
                let q2 = q * q;
                let fb = b * factor;
                q2.clone() * q2 * 5u32 >= &fb * &fb
            }
            PrecisionPolicy::Rigorous { margin } => {
                let next_q = stream.peek().expect("unbounded").q.as_biguint();
                q * next_q >= b * b * margin
            }
        };
        if ok {
            return c.index;
        }
    }
}

/// Escalates from `required_index(b, policy)` until the floor–ceiling test
/// is certified.
pub fn certified_floor_ceiling(
    b: &Natural,
    policy: PrecisionPolicy,
) -> Result<(u64, TestOutcome), RecognizerError> {
    if b.is_zero() {
        return Err(zero_query());
    }
    let start = required_index(b, policy);
    let mut stream = ConvergentStream::new().skip((start - 1) as usize);
    let mut current = stream.next().expect("unbounded");
    // Terminates: φb ± 1/b are irrational, so once the bracket width times b
    // drops below their distance to the nearest integers the endpoints agree.
    loop {
        let partner = stream.next().expect("unbounded");
        let outcome = outcome_from_pair(b, current, &partner);
        if outcome.certified {
            return Ok((start, outcome));
        }
        current = partner;
    }
}

/// `f(b)` by the chosen method, with the default rigorous policy.
pub fn recognize(b: &Natural, method: Method) -> Result<Verdict, RecognizerError> {
    recognize_with(b, method, PrecisionPolicy::DEFAULT_RIGOROUS)
}

/// `f(b)` by the chosen method. `policy` only affects the floor–ceiling
/// route's starting index; certification makes the verdict policy-independent.
///
/// `b = 0` is Fibonacci. The brute-force and floor–ceiling routes answer it
/// through the oracle; the interval route has no interval at 0 and errors.
pub fn recognize_with(
    b: &Natural,
    method: Method,
    policy: PrecisionPolicy,
) -> Result<Verdict, RecognizerError> {
    match method {
        Method::BruteForce => Ok(fib_oracle(b)),
        Method::ExactInterval => fib_exact(b),
        Method::FloorCeiling => {
            if b.is_zero() {
                return Ok(fib_oracle(b));
            }
            let (start, outcome) = certified_floor_ceiling(b, policy)?;
            let k = outcome.convergent_used.index;
            let partner = ConvergentStream::new().nth(k as usize).expect("unbounded");
            Ok(Verdict {
                query: b.clone(),
                is_fibonacci: outcome.says_fibonacci(),
                method: Method::FloorCeiling,
                certificate: Certificate::FloorCeiling(FloorCeilingCertificate {
                    convergent: outcome.convergent_used,
                    bracket_partner: partner,
                    floor: outcome.floor,
                    ceil: outcome.ceil,
                    difference: outcome.difference,
                    start_index: start,
                }),
            })
        }
    }
}

/// `f(b)` as a plain 0/1 indicator via the certified floor–ceiling route.
pub fn indicator(b: &Natural) -> u8 {
    recognize(b, Method::FloorCeiling)
        .expect("floor-ceiling recognition is total")
        .indicator()
}

/// One Fibonacci query in a precision sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub b: Natural,
    /// Smallest `k` whose test is certified and correct.
    pub minimal_decisive_index: u64,
    pub literal_index: u64,
    pub rigorous_index: u64,
    /// Uncertified difference at `literal_index`.
    pub literal_difference: i64,
    /// The uncertified test at `literal_index` calls `b` non-Fibonacci.
    pub misclassified_at_literal: bool,
    /// The test at `rigorous_index` is already certified.
    pub rigorous_certified_at_start: bool,
    /// Convergent index the certified escalation from `rigorous_index` ended at.
    pub rigorous_final_index: u64,
    /// The certified verdict from `rigorous_index` is correct.
    pub rigorous_correct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub b_max: Natural,
    pub literal: PrecisionPolicy,
    pub rigorous: PrecisionPolicy,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn literal_misclassifications(&self) -> usize {
        self.rows.iter().filter(|r| r.misclassified_at_literal).count()
    }

    pub fn rigorous_misclassifications(&self) -> usize {
        self.rows.iter().filter(|r| !r.rigorous_correct).count()
    }
}

fn minimal_decisive_index(b: &Natural, truth: bool) -> u64 {
    let mut stream = ConvergentStream::new();
    let mut current = stream.next().expect("unbounded");
    loop {
        let partner = stream.next().expect("unbounded");
        let outcome = outcome_from_pair(b, current, &partner);
        if outcome.certified && outcome.says_fibonacci() == truth {
            return outcome.convergent_used.index;
        }
        current = partner;
    }
}

fn sweep_row(b: Natural, literal: PrecisionPolicy, rigorous: PrecisionPolicy) -> SweepRow {
    let literal_index = required_index(&b, literal);
    let rigorous_index = required_index(&b, rigorous);
    let at_literal = floor_ceiling_test(&b, literal_index).expect("b >= 1");
    let at_rigorous = floor_ceiling_test(&b, rigorous_index).expect("b >= 1");
    let (_, certified) = certified_floor_ceiling(&b, rigorous).expect("b >= 1");
    SweepRow {
        minimal_decisive_index: minimal_decisive_index(&b, true),
        literal_index,
        rigorous_index,
        literal_difference: at_literal.difference,
        misclassified_at_literal: !at_literal.says_fibonacci(),
        rigorous_certified_at_start: at_rigorous.certified,
        rigorous_final_index: certified.convergent_used.index,
        rigorous_correct: certified.says_fibonacci(),
        b,
    }
}

/// Runs both policies over every Fibonacci number in `[1, b_max]` (1 once).
/// Rows are ordered by `b`.
pub fn precision_sweep(
    b_max: &Natural,
    literal: PrecisionPolicy,
    rigorous: PrecisionPolicy,
) -> SweepReport {
    let mut fibs = Vec::new();
    let (mut cur, mut next) = (BigUint::one(), BigUint::from(2u32));
    while &cur <= b_max.as_biguint() {
        fibs.push(Natural::from(cur.clone()));
        let sum = &cur + &next;
        cur = std::mem::replace(&mut next, sum);
    }
    let rows = fibs
        .into_par_iter()
        .map(|b| sweep_row(b, literal, rigorous))
        .collect();
    SweepReport {
        b_max: b_max.clone(),
        literal,
        rigorous,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn oracle_examples() {
        assert!(fib_oracle(&n(8)).is_fibonacci);
        assert!(fib_oracle(&n(0)).is_fibonacci);
        assert!(!fib_oracle(&n(9)).is_fibonacci);
        assert_eq!(
            fib_oracle(&n(1)).certificate,
            Certificate::BruteForce(OracleCertificate::Hit { index: 1 })
        );
        assert_eq!(
            fib_oracle(&n(9)).certificate,
            Certificate::BruteForce(OracleCertificate::Between { index: 6 })
        );
    }

    #[test]
    fn exact_examples() {
        let v = fib_exact(&n(21)).unwrap();
        assert!(v.is_fibonacci);
        match &v.certificate {
            Certificate::ExactInterval(w) => assert_eq!(w.m, BigInt::from(34)),
            other => panic!("unexpected certificate {other:?}"),
        }
        assert!(!fib_exact(&n(4)).unwrap().is_fibonacci);
        assert!(fib_exact(&n(1)).unwrap().is_fibonacci);
        assert_eq!(fib_exact(&n(0)), Err(zero_query()));
    }

    #[test]
    fn floor_ceiling_examples() {
        let t = floor_ceiling_test(&n(8), 7).unwrap();
        assert_eq!((t.floor.clone(), t.ceil.clone()), (BigInt::from(13), BigInt::from(13)));
        assert_eq!(t.difference, 0);
        assert_eq!(t.convergent_used.to_string(), "13/21");

        let t = floor_ceiling_test(&n(4), 7).unwrap();
        assert_eq!((t.floor.clone(), t.ceil.clone()), (BigInt::from(6), BigInt::from(7)));
        assert_eq!(t.difference, -1);

        let t = floor_ceiling_test(&n(1), 1).unwrap();
        assert_eq!(t.difference, 2);
        assert!(!t.certified);

        assert!(floor_ceiling_test(&n(0), 3).is_err());
    }

    #[test]
    fn small_and_big_evaluation_paths_agree() {
        for b in 1..60u64 {
            for c in ConvergentStream::new().take(12) {
                let bb = BigUint::from(b);
                let big = floor_ceil_at(&bb, c.p.as_biguint(), c.q.as_biguint());
                let small = floor_ceil_small(
                    b as u128,
                    c.p.to_u64().unwrap() as u128,
                    c.q.to_u64().unwrap() as u128,
                )
                .unwrap();
                assert_eq!((BigUint::from(small.0), BigUint::from(small.1)), big);
            }
        }
    }

    #[test]
    fn required_index_examples() {
        assert_eq!(required_index(&n(8), PrecisionPolicy::Rigorous { margin: 4 }), 6);
        assert_eq!(required_index(&n(8), PrecisionPolicy::Literal { factor: 10 }), 5);
        assert_eq!(required_index(&n(1), PrecisionPolicy::Rigorous { margin: 1 }), 1);
        assert_eq!(required_index(&n(1), PrecisionPolicy::Literal { factor: 1 }), 1);
        // Default strengths need a few more terms even at b = 1.
        assert_eq!(required_index(&n(1), PrecisionPolicy::DEFAULT_RIGOROUS), 2);
        assert_eq!(required_index(&n(1), PrecisionPolicy::DEFAULT_LITERAL), 3);
    }

    #[test]
    fn recognize_examples() {
        for m in [Method::BruteForce, Method::ExactInterval, Method::FloorCeiling] {
            let v = recognize(&n(13), m).unwrap();
            assert_eq!(v.indicator(), 1, "{m}");
            assert!(v.verify(), "{m}");
        }
        assert_eq!(recognize(&n(0), Method::FloorCeiling).unwrap().indicator(), 1);
        assert_eq!(recognize(&n(0), Method::BruteForce).unwrap().indicator(), 1);
        assert!(recognize(&n(0), Method::ExactInterval).is_err());
        assert_eq!(indicator(&n(1_000_000)), 0);
        assert_eq!(recognize(&n(1_000_000), Method::BruteForce).unwrap().indicator(), 0);
    }

    #[test]
    fn b_one_is_fibonacci_despite_two_integers() {
        let v = recognize(&n(1), Method::FloorCeiling).unwrap();
        assert!(v.is_fibonacci);
        match v.certificate {
            Certificate::FloorCeiling(c) => assert_eq!(c.difference, 1),
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let mut v = recognize(&n(21), Method::FloorCeiling).unwrap();
        v.is_fibonacci = false;
        assert!(!v.verify());

        let mut v = fib_exact(&n(21)).unwrap();
        if let Certificate::ExactInterval(w) = &mut v.certificate {
            w.m += 1;
        }
        assert!(!v.verify());

        let v = Verdict {
            query: n(22),
            is_fibonacci: true,
            method: Method::BruteForce,
            certificate: Certificate::BruteForce(OracleCertificate::Hit { index: 8 }),
        };
        assert!(!v.verify());
    }

    #[test]
    fn sweep_flags_literal_policy_at_6765() {
        let report = precision_sweep(
            &n(6765),
            PrecisionPolicy::DEFAULT_LITERAL,
            PrecisionPolicy::DEFAULT_RIGOROUS,
        );
        let row = report.rows.iter().find(|r| r.b == n(6765)).unwrap();
        assert_eq!(row.literal_index, 12);
        assert!(row.misclassified_at_literal);
        assert!(row.rigorous_correct);
        assert_eq!(report.rigorous_misclassifications(), 0);
    }

    #[test]
    fn sweep_small_b() {
        let report = precision_sweep(
            &n(2),
            PrecisionPolicy::DEFAULT_LITERAL,
            PrecisionPolicy::DEFAULT_RIGOROUS,
        );
        let bs: Vec<_> = report.rows.iter().map(|r| r.b.clone()).collect();
        assert_eq!(bs, [n(1), n(2)]);
        let k = report.rows[1].minimal_decisive_index;
        assert!(k == 1 || k == 2, "k={k}");
    }

    #[test]
    fn fib_doubling_matches_table() {
        let table = [0u32, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (i, f) in table.iter().enumerate() {
            assert_eq!(fib_doubling(i as u64), BigUint::from(*f));
        }
    }
}
