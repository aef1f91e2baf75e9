//! Exact arithmetic for the golden-ratio fraction `{φ} = (√5 − 1)/2`.
//!
//! Nothing in this module touches floating point. `{φ}` is only ever seen
//! through the convergents `p_n/q_n`, dyadic [`RatioInterval`] enclosures
//! built from integer square roots, and predicates that square both sides
//! of an inequality involving `√5` so the decision is an integer comparison.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Unbounded non-negative integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.0.clone())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// `⌊√self⌋`.
    pub fn isqrt(&self) -> Natural {
        Natural(self.0.sqrt())
    }

    pub fn pow(&self, exp: u32) -> Natural {
        Natural(self.0.pow(exp))
    }

    /// Number of significant bits (0 for zero).
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl FromStr for Natural {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigUint::from_str(s).map(Natural)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for &Natural {
    type Output = Natural;
    fn add(self, rhs: &Natural) -> Natural {
        Natural(&self.0 + &rhs.0)
    }
}

impl Add for Natural {
    type Output = Natural;
    fn add(self, rhs: Natural) -> Natural {
        Natural(self.0 + rhs.0)
    }
}

impl Mul for &Natural {
    type Output = Natural;
    fn mul(self, rhs: &Natural) -> Natural {
        Natural(&self.0 * &rhs.0)
    }
}

impl Mul for Natural {
    type Output = Natural;
    fn mul(self, rhs: Natural) -> Natural {
        Natural(self.0 * rhs.0)
    }
}

// Big integers travel as decimal strings so 64-bit JSON consumers don't truncate them.
impl Serialize for Natural {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for Natural {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact fraction, always in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(BigRational);

impl Ratio {
    /// `num / den`. Returns `None` when `den` is zero.
    pub fn new(num: BigInt, den: BigUint) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Ratio(BigRational::new(
            num,
            BigInt::from_biguint(Sign::Plus, den),
        )))
    }

    /// Convenience constructor for small values; panics on a zero denominator.
    pub fn from_i64s(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(v: BigInt) -> Self {
        Ratio(BigRational::from_integer(v))
    }

    pub fn from_natural(v: &Natural) -> Self {
        Ratio::from_integer(v.to_bigint())
    }

    /// `a / b` for naturals; `None` when `b` is zero.
    pub fn from_naturals(a: &Natural, b: &Natural) -> Option<Self> {
        Ratio::new(a.to_bigint(), b.as_biguint().clone())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> BigUint {
        self.0
            .denom()
            .to_biguint()
            .expect("reduced denominators are positive")
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn abs(&self) -> Ratio {
        Ratio(self.0.abs())
    }

    pub fn recip(&self) -> Option<Ratio> {
        if self.0.is_zero() {
            None
        } else {
            Some(Ratio(self.0.recip()))
        }
    }

    /// Lossy conversion, for display and orientation only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn floor(&self) -> BigInt {
        rational_floor(self)
    }

    pub fn ceil(&self) -> BigInt {
        rational_ceil(self)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &Ratio {
    type Output = Ratio;
    fn add(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 + &rhs.0)
    }
}

impl Sub for &Ratio {
    type Output = Ratio;
    fn sub(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 - &rhs.0)
    }
}

impl Mul for &Ratio {
    type Output = Ratio;
    fn mul(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 * &rhs.0)
    }
}

/// Mathematical floor: `floor(-1/2) = -1`.
pub fn rational_floor(r: &Ratio) -> BigInt {
    r.0.numer().div_floor(r.0.denom())
}

/// Mathematical ceiling: `ceil(-1/2) = 0`.
pub fn rational_ceil(r: &Ratio) -> BigInt {
    -((-r.0.numer()).div_floor(r.0.denom()))
}

/// One golden-fraction approximation `p_n/q_n = [0; 1, 1, …, 1]` (n ones).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub index: u64,
    pub p: Natural,
    pub q: Natural,
}

impl Convergent {
    pub fn value(&self) -> Ratio {
        Ratio::from_naturals(&self.p, &self.q).expect("q_n >= 1")
    }
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Unbounded stream of convergents of `{φ}` starting at index 1.
///
/// `p_n = q_{n-1}`, `q_n = q_{n-1} + q_{n-2}`, seeded with `p_1 = q_1 = 1`
/// and the implicit `q_0 = 1`.
#[derive(Clone, Debug)]
pub struct ConvergentStream {
    index: u64,
    q_prev: BigUint,
    q_curr: BigUint,
}

impl ConvergentStream {
    pub fn new() -> Self {
        ConvergentStream {
            index: 0,
            q_prev: BigUint::zero(),
            q_curr: BigUint::one(),
        }
    }
}

impl Default for ConvergentStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for ConvergentStream {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        // (q_prev, q_curr) = (q_{n-2}, q_{n-1}); starting from (0, 1) the
        // uniform recurrence yields p_1 = q_1 = 1 and q_0 = 1.
        let next_q = &self.q_prev + &self.q_curr;
        let p = std::mem::replace(&mut self.q_curr, next_q.clone());
        self.q_prev = p.clone();
        self.index += 1;
        Some(Convergent {
            index: self.index,
            p: Natural(p),
            q: Natural(next_q),
        })
    }
}

/// Convergents `1..=count` of `{φ}`.
pub fn golden_convergents(count: usize) -> Vec<Convergent> {
    ConvergentStream::new().take(count).collect()
}

/// The `k`-th convergent (`k ≥ 1`).
pub fn convergent(k: u64) -> Convergent {
    assert!(k >= 1, "convergent indices start at 1");
    ConvergentStream::new()
        .nth((k - 1) as usize)
        .expect("stream is unbounded")
}

/// Closed interval of exact rationals with `lo ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioInterval {
    lo: Ratio,
    hi: Ratio,
}

impl RatioInterval {
    /// Returns `None` if `lo > hi`.
    pub fn new(lo: Ratio, hi: Ratio) -> Option<Self> {
        if lo <= hi {
            Some(RatioInterval { lo, hi })
        } else {
            None
        }
    }

    /// Interval spanned by two endpoints in either order.
    pub fn spanning(a: Ratio, b: Ratio) -> Self {
        if a <= b {
            RatioInterval { lo: a, hi: b }
        } else {
            RatioInterval { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &Ratio {
        &self.lo
    }

    pub fn hi(&self) -> &Ratio {
        &self.hi
    }

    pub fn width(&self) -> Ratio {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Ratio) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn is_subset_of(&self, other: &RatioInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Product of two intervals with non-negative endpoints.
    fn mul_nonneg(&self, other: &RatioInterval) -> RatioInterval {
        debug_assert!(!self.lo.0.is_negative() && !other.lo.0.is_negative());
        RatioInterval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }
}

impl fmt::Display for RatioInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `s = ⌊√5 · 2^m⌋`, so that `s / 2^m < √5 < (s + 1) / 2^m`.
fn sqrt5_scaled_floor(m: u32) -> BigUint {
    (BigUint::from(5u32) << (2 * m as usize)).sqrt()
}

fn dyadic(num: BigInt, shift: u32) -> Ratio {
    Ratio::new(num, BigUint::one() << shift as usize).expect("power of two")
}

/// Enclosure of `√5` of width `2^-m`.
pub fn sqrt5_enclosure(m: u32) -> RatioInterval {
    let s = BigInt::from(sqrt5_scaled_floor(m));
    RatioInterval {
        lo: dyadic(s.clone(), m),
        hi: dyadic(s + 1, m),
    }
}

/// Dyadic enclosure of `{φ}` with width at most `2^-precision_bits`.
///
/// Enclosures are nested: the result for `b + 1` lies inside the one for `b`.
pub fn golden_enclosure(precision_bits: u32) -> RatioInterval {
    // {φ} = (√5 − 1)/2; with √5 ∈ [s, s+1]/2^m the endpoints are
    // (s − 2^m)/2^(m+1) and (s + 1 − 2^m)/2^(m+1).
    let m = precision_bits.saturating_sub(1);
    let s = BigInt::from(sqrt5_scaled_floor(m));
    let unit = BigInt::one() << m as usize;
    RatioInterval {
        lo: dyadic(&s - &unit, m + 1),
        hi: dyadic(s + 1 - unit, m + 1),
    }
}

/// Sign of `{φ} − r`. Never `Equal`, since `{φ}` is irrational.
pub fn cmp_frac_phi(r: &Ratio) -> Ordering {
    // (√5 − 1)/2 vs a/b  ⇔  b√5 vs 2a + b.
    let a = r.numer();
    let b = BigInt::from(r.denom());
    let rhs = BigInt::from(2) * a + &b;
    if rhs.is_negative() {
        return Ordering::Greater;
    }
    (BigInt::from(5) * &b * &b).cmp(&(&rhs * &rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HurwitzVerdict {
    Holds,
    Fails,
}

/// Outcome of the strict Hurwitz comparison for one convergent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzOutcome {
    pub convergent: Convergent,
    pub verdict: HurwitzVerdict,
    /// `Greater` when the convergent lies below `{φ}`.
    #[serde(serialize_with = "ser_ordering")]
    pub phi_side: Ordering,
}

fn ser_ordering<S: Serializer>(o: &Ordering, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match o {
        Ordering::Less => "below",
        Ordering::Equal => "equal",
        Ordering::Greater => "above",
    })
}

/// Decides `|{φ} − p_k/q_k| < 1/(√5 q_k²)` exactly.
pub fn hurwitz_compare(k: u64) -> HurwitzOutcome {
    let c = convergent(k);
    let verdict = hurwitz_holds(&c);
    let phi_side = cmp_frac_phi(&c.value());
    HurwitzOutcome {
        convergent: c,
        verdict,
        phi_side,
    }
}

fn hurwitz_holds(c: &Convergent) -> HurwitzVerdict {
    // |(√5 − 1)/2 − p/q| < 1/(√5 q²)
    //   ⇔ |5q² − (q + 2p) q √5| < 2.
    // With A = 5q², B = (q + 2p) q:  |A − B√5| = |A² − 5B²| / (A + B√5),
    // so the claim is  D − 2A < 2B√5  where D = |A² − 5B²|.
    let p = c.p.to_bigint();
    let q = c.q.to_bigint();
    let a = BigInt::from(5) * &q * &q;
    let b = (&q + BigInt::from(2) * &p) * &q;
    let d = (&a * &a - BigInt::from(5) * &b * &b).abs();
    let lhs = d - BigInt::from(2) * &a;
    let holds = if lhs.is_negative() {
        true
    } else {
        &lhs * &lhs < BigInt::from(20) * &b * &b
    };
    if holds {
        HurwitzVerdict::Holds
    } else {
        HurwitzVerdict::Fails
    }
}

/// Rigorous enclosure of `√5 · q_k² · |{φ} − p_k/q_k|`, using `{φ}` and
/// `√5` enclosures of width `2^-bits`.
///
/// `bits` must be large enough that the `{φ}` enclosure excludes `p_k/q_k`;
/// otherwise the lower end is clamped at zero.
pub fn hurwitz_ratio_enclosure(k: u64, bits: u32) -> RatioInterval {
    let c = convergent(k);
    let approx = c.value();
    let phi = golden_enclosure(bits);
    let zero = Ratio::from_i64s(0, 1);
    let err = match cmp_frac_phi(&approx) {
        Ordering::Greater => RatioInterval {
            lo: std::cmp::max(&phi.lo - &approx, zero.clone()),
            hi: &phi.hi - &approx,
        },
        _ => RatioInterval {
            lo: std::cmp::max(&approx - &phi.hi, zero.clone()),
            hi: &approx - &phi.lo,
        },
    };
    let q2 = Ratio::from_natural(&(&c.q * &c.q));
    let q2 = RatioInterval {
        lo: q2.clone(),
        hi: q2,
    };
    sqrt5_enclosure(bits).mul_nonneg(&q2).mul_nonneg(&err)
}
