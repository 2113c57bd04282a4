use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::Quantale;
use crate::error::{Error, Result};
use crate::exactring::Rational;

pub fn pow2(k: i64) -> Rational {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `⌊log₂ q⌋` for `q > 0`.
pub fn floor_log2(q: &Rational) -> i64 {
    assert!(q.is_positive(), "log of a non-positive rational");
    let mut k = q.numer().bits() as i64 - q.denom().bits() as i64;
    while pow2(k) > *q {
        k -= 1;
    }
    while pow2(k + 1) <= *q {
        k += 1;
    }
    k
}

/// `⌈log₂ q⌉` for `q > 0`.
pub fn ceil_log2(q: &Rational) -> i64 {
    let k = floor_log2(q);
    if pow2(k) == *q {
        k
    } else {
        k + 1
    }
}

fn is_dyadic(q: &Rational) -> bool {
    let d = q.denom();
    (d - BigInt::one()) & d == BigInt::zero()
}

fn in_unit(q: &Rational) -> bool {
    !q.is_negative() && *q <= Rational::one()
}

fn clamp1(q: Rational) -> Rational {
    q.min(Rational::one())
}

/// `[0,1]` under multiplication; residuals `min(b/a, 1)` may leave the dyadics.
#[derive(Clone, Copy, Debug, Default)]
pub struct DyadicUnit;

impl Quantale for DyadicUnit {
    type Elem = Rational;
    fn bottom(&self) -> Rational {
        Rational::zero()
    }
    fn unit(&self) -> Rational {
        Rational::one()
    }
    fn sup(&self, a: &Rational, b: &Rational) -> Rational {
        a.max(b).clone()
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn le(&self, a: &Rational, b: &Rational) -> bool {
        a <= b
    }
    fn residual(&self, b: &Rational, a: &Rational) -> Rational {
        if a.is_zero() {
            return Rational::one();
        }
        clamp1(b / a)
    }
}

/// A value in `[0, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocValue {
    Finite(Rational),
    Infinite,
}

impl LocValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, LocValue::Finite(q) if q.is_zero())
    }

    /// `∞ · 0 = 0`.
    pub fn mul(&self, other: &LocValue) -> LocValue {
        match (self, other) {
            (LocValue::Finite(a), LocValue::Finite(b)) => LocValue::Finite(a * b),
            _ if self.is_zero() || other.is_zero() => LocValue::Finite(Rational::zero()),
            _ => LocValue::Infinite,
        }
    }

    pub fn sup(&self, other: &LocValue) -> LocValue {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }
}

impl PartialOrd for LocValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LocValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LocValue::Finite(a), LocValue::Finite(b)) => a.cmp(b),
            (LocValue::Finite(_), LocValue::Infinite) => Ordering::Less,
            (LocValue::Infinite, LocValue::Finite(_)) => Ordering::Greater,
            (LocValue::Infinite, LocValue::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for LocValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocValue::Finite(q) => write!(f, "{q}"),
            LocValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for LocValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Behaviour of a sequence outside its window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndLaw {
    /// Repeat the boundary value.
    Constant,
    /// Halve at each step away from the window.
    Geometric,
}

impl EndLaw {
    pub fn parse(s: &str) -> Result<EndLaw> {
        match s {
            "constant" => Ok(EndLaw::Constant),
            "geometric" => Ok(EndLaw::Geometric),
            _ => Err(Error::Parse(format!("unknown end law {s:?} (constant | geometric)"))),
        }
    }
}

/// A `ℤ`-indexed sequence `tₙ ∈ [0,1]` with `tₙ ≤ 2·tₙ₊₁`, given by dyadic values on `start..start+len`
/// and a law on each side.
#[derive(Clone, Debug, Serialize)]
pub struct HalfSequence {
    pub start: i64,
    #[serde(serialize_with = "ser_values")]
    pub values: Vec<Rational>,
    pub head: EndLaw,
    pub tail: EndLaw,
}

fn ser_values<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

impl HalfSequence {
    /// Default laws: geometric below the window, constant above it.
    pub fn new(start: i64, values: Vec<Rational>) -> Result<Self> {
        Self::with_laws(start, values, EndLaw::Geometric, EndLaw::Constant)
    }

    pub fn with_laws(start: i64, values: Vec<Rational>, head: EndLaw, tail: EndLaw) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("empty window".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if !in_unit(v) || !is_dyadic(v) {
                return Err(Error::Invalid(format!("t_{} = {v} is not a dyadic rational in [0,1]", start + i as i64)));
            }
        }
        for (i, w) in values.windows(2).enumerate() {
            if w[0] > Rational::from_integer(2.into()) * &w[1] {
                let n = start + i as i64;
                return Err(Error::Invalid(format!("t_{n} = {} > 2·t_{} = {}", w[0], n + 1, &w[1] * Rational::from_integer(2.into()))));
            }
        }
        Ok(HalfSequence { start, values, head, tail })
    }

    fn unchecked(start: i64, values: Vec<Rational>, head: EndLaw, tail: EndLaw) -> Self {
        HalfSequence { start, values, head, tail }
    }

    /// Parses `"3:1,4:1/2"`: consecutive degrees with their values.
    pub fn parse_window(s: &str, head: EndLaw, tail: EndLaw) -> Result<Self> {
        let mut start = None;
        let mut values = Vec::new();
        for (i, part) in s.split(',').enumerate() {
            let (n, v) = part.trim().split_once(':').ok_or_else(|| Error::Parse(format!("expected degree:value, got {part:?}")))?;
            let n: i64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad degree {n:?}")))?;
            let v: Rational = v.trim().parse().map_err(|_| Error::Parse(format!("bad value {v:?}")))?;
            let s0 = *start.get_or_insert(n);
            if n != s0 + i as i64 {
                return Err(Error::Parse("window degrees must be consecutive and increasing".into()));
            }
            values.push(v);
        }
        Self::with_laws(start.ok_or_else(|| Error::Parse("empty window".into()))?, values, head, tail)
    }

    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn at(&self, n: i64) -> Rational {
        if n < self.start {
            let t = self.values[0].clone();
            match self.head {
                EndLaw::Constant => t,
                EndLaw::Geometric => t * pow2(n - self.start),
            }
        } else if n > self.end() {
            let t = self.values.last().expect("nonempty").clone();
            match self.tail {
                EndLaw::Constant => t,
                EndLaw::Geometric => t * pow2(self.end() - n),
            }
        } else {
            self.values[(n - self.start) as usize].clone()
        }
    }

    /// Same sequence with the window widened to include `lo..=hi`.
    pub fn widened(&self, lo: i64, hi: i64) -> Self {
        let (lo, hi) = (lo.min(self.start), hi.max(self.end()));
        Self::unchecked(lo, (lo..=hi).map(|n| self.at(n)).collect(), self.head, self.tail)
    }

    /// Equality of sequences; two points past both windows on each side decide the laws.
    pub fn same_as(&self, other: &Self) -> bool {
        let lo = self.start.min(other.start) - 2;
        let hi = self.end().max(other.end()) + 2;
        (lo..=hi).all(|n| self.at(n) == other.at(n))
    }

    /// `Rₚ(M)ₙ = [M_{n+p} : E^p] = min(2^p·t_{n+p}, 1)`.
    pub fn reflect_step(&self, p: u32) -> Self {
        let scale = pow2(p as i64);
        let one = Rational::one();
        let (mut lo, mut hi) = (self.start, self.end());
        // widen until the clamp no longer bites on the geometric sides
        if self.head == EndLaw::Geometric {
            while &scale * self.at(lo) > one {
                lo -= 1;
            }
        }
        if self.tail == EndLaw::Geometric {
            while &scale * self.at(hi) > one {
                hi += 1;
            }
        }
        let values = (lo..=hi).map(|m| clamp1(&scale * self.at(m))).collect();
        Self::unchecked(lo - p as i64, values, self.head, self.tail)
    }

    /// `sup_p 2^{n+p} t_{n+p}`: the limit of the nondecreasing sequence `2^m t_m`.
    pub fn value(&self) -> LocValue {
        let last = self.values.last().expect("nonempty");
        match self.tail {
            _ if last.is_zero() => LocValue::Finite(Rational::zero()),
            EndLaw::Constant => LocValue::Infinite,
            EndLaw::Geometric => LocValue::Finite(pow2(self.end()) * last),
        }
    }

    /// The fixed sequence `tₙ = min(2^{−n} v, 1)`.
    pub fn fixed(v: &LocValue) -> Self {
        match v {
            LocValue::Infinite => Self::unchecked(0, vec![Rational::one()], EndLaw::Constant, EndLaw::Constant),
            LocValue::Finite(q) if q.is_zero() => {
                Self::unchecked(0, vec![Rational::zero()], EndLaw::Constant, EndLaw::Constant)
            }
            LocValue::Finite(q) => {
                let (lo, hi) = (floor_log2(q), ceil_log2(q));
                let values = (lo..=hi).map(|n| clamp1(pow2(-n) * q)).collect();
                Self::unchecked(lo, values, EndLaw::Constant, EndLaw::Geometric)
            }
        }
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &Self) -> Self {
        let mut lo = self.start.min(other.start);
        let mut hi = self.end().max(other.end());
        let head = join_law(self, other, true, &mut lo);
        let tail = join_law(self, other, false, &mut hi);
        let values = (lo..=hi).map(|n| self.at(n).max(other.at(n))).collect();
        Self::unchecked(lo, values, head, tail)
    }

    /// The `E`-module condition `tₙ ≤ 2tₙ₊₁` over the window and its junctions.
    pub fn is_module(&self) -> bool {
        let two = Rational::from_integer(2.into());
        (self.start - 1..=self.end()).all(|n| self.at(n) <= &two * self.at(n + 1))
    }
}

/// Law of `max(a, b)` on one side, moving `edge` outward until the law takes over.
fn join_law(a: &HalfSequence, b: &HalfSequence, head: bool, edge: &mut i64) -> EndLaw {
    let (la, lb) = if head { (a.head, b.head) } else { (a.tail, b.tail) };
    if la == lb {
        return la;
    }
    let (c, g) = if la == EndLaw::Constant { (a, b) } else { (b, a) };
    let step = if head { -1 } else { 1 };
    if c.at(*edge).is_zero() {
        return EndLaw::Geometric;
    }
    while g.at(*edge) > c.at(*edge) {
        *edge += step;
    }
    EndLaw::Constant
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizeReport {
    pub input: HalfSequence,
    pub value: LocValue,
    pub fixed: HalfSequence,
    /// `R₁` fixes the fixed sequence.
    pub fixed_point: bool,
    /// Localizing the fixed sequence returns the same value.
    pub idempotent: bool,
    /// Least `p` with `Rₚ(M)` equal to the fixed sequence on the window, two degrees beyond it on each side.
    pub converged_at: Option<u32>,
}

impl LocalizeReport {
    pub fn passed(&self) -> bool {
        self.fixed_point && self.idempotent && self.converged_at.is_some()
    }
}

pub fn localize_half(m: &HalfSequence) -> Result<LocalizeReport> {
    if !m.is_module() {
        let n = (m.start - 1..=m.end())
            .find(|&n| m.at(n) > Rational::from_integer(2.into()) * m.at(n + 1))
            .expect("violation");
        return Err(Error::Invalid(format!("t_{n} > 2·t_{}", n + 1)));
    }
    let value = m.value();
    let fixed = HalfSequence::fixed(&value);
    let fixed_point = fixed.reflect_step(1).same_as(&fixed);
    let idempotent = fixed.value() == value;
    let (lo, hi) = (m.start.min(fixed.start) - 2, m.end().max(fixed.end()) + 2);
    let bits = m.values.iter().map(|q| q.denom().bits()).max().unwrap_or(0) as i64;
    let bound = (hi - lo + bits + 2).max(0) as u32;
    let converged_at = (0..=bound).find(|&p| {
        let r = m.reflect_step(p);
        (lo..=hi).all(|n| r.at(n) == fixed.at(n))
    });
    Ok(LocalizeReport { input: m.clone(), value, fixed, fixed_point, idempotent, converged_at })
}

/// `sup_{a+b=k} M_a N_b` for sequences with constant heads and geometric (or constant) tails, scanned
/// over the range where the maximum can occur.
fn day_at(m: &HalfSequence, n: &HalfSequence, k: i64) -> Rational {
    let a_lo = m.start.min(k - n.end()) - 1;
    let a_hi = m.end().max(k - n.start) + 1;
    (a_lo..=a_hi).map(|a| m.at(a) * n.at(k - a)).max().expect("nonempty scan")
}

/// Day convolution of the fixed sequences of `v` and `w`: constant `1` up to `⌊log₂v⌋ + ⌊log₂w⌋`,
/// exactly `2^{−n}vw` from `⌈log₂v⌉ + ⌈log₂w⌉` on.
pub fn fixed_product(v: &LocValue, w: &LocValue) -> HalfSequence {
    if v.is_zero() || w.is_zero() {
        return HalfSequence::fixed(&LocValue::Finite(Rational::zero()));
    }
    if *v == LocValue::Infinite || *w == LocValue::Infinite {
        return HalfSequence::fixed(&LocValue::Infinite);
    }
    let (m, n) = (HalfSequence::fixed(v), HalfSequence::fixed(w));
    let lo = m.start + n.start;
    let hi = m.end() + n.end() + 1;
    HalfSequence::unchecked(lo, (lo..=hi).map(|k| day_at(&m, &n, k)).collect(), EndLaw::Constant, EndLaw::Geometric)
}

/// The window form of `fixed_product` agrees with the direct scan three degrees past each end.
fn product_window_ok(v: &LocValue, w: &LocValue, x: &HalfSequence) -> bool {
    let (m, n) = (HalfSequence::fixed(v), HalfSequence::fixed(w));
    (1..=3).all(|d| day_at(&m, &n, x.start - d) == x.at(x.start - d) && day_at(&m, &n, x.end() + d) == x.at(x.end() + d))
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoSample {
    pub v: LocValue,
    pub w: LocValue,
    pub product: LocValue,
    pub product_ok: bool,
    pub sup_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizeIsoReport {
    pub seed: u64,
    pub unit_ok: bool,
    pub samples: Vec<IsoSample>,
    pub passed: bool,
}

fn random_value(rng: &mut ChaCha8Rng) -> LocValue {
    if rng.gen_ratio(1, 10) {
        return LocValue::Infinite;
    }
    let k: i64 = rng.gen_range(0..=16);
    let j: i64 = rng.gen_range(0..=4);
    LocValue::Finite(Rational::from_integer(k.into()) * pow2(-j))
}

/// Product, binary sup and unit of the localized quantale against `v·w`, `max(v, w)` and `1`.
pub fn localize_iso_check(pairs: &[(LocValue, LocValue)]) -> Result<LocalizeIsoReport> {
    iso_check(0, pairs.to_vec())
}

fn iso_check(seed: u64, pairs: Vec<(LocValue, LocValue)>) -> Result<LocalizeIsoReport> {
    // the free module on a degree-0 generator: tₙ = 2^{−n} for n ≥ 0, 0 below
    let unit = HalfSequence::with_laws(-1, vec![Rational::zero(), Rational::one()], EndLaw::Geometric, EndLaw::Geometric)?;
    let unit_ok = localize_half(&unit)?.value == LocValue::Finite(Rational::one());
    let mut samples = Vec::new();
    for (v, w) in pairs {
        let x = fixed_product(&v, &w);
        let product = localize_half(&x)?.value;
        let product_ok = x.is_module() && product_window_ok(&v, &w, &x) && product == v.mul(&w);
        let s = HalfSequence::fixed(&v).max(&HalfSequence::fixed(&w));
        let vmax = v.sup(&w);
        let sup_ok = s.same_as(&HalfSequence::fixed(&vmax)) && s.value() == vmax;
        samples.push(IsoSample { v, w, product, product_ok, sup_ok });
    }
    let passed = unit_ok && samples.iter().all(|s| s.product_ok && s.sup_ok);
    Ok(LocalizeIsoReport { seed, unit_ok, samples, passed })
}

impl LocalizeIsoReport {
    /// `count` random dyadic pairs `k/2^j`, `k ≤ 16`, `j ≤ 4`, with `∞` mixed in.
    pub fn random(seed: u64, count: usize) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs = (0..count).map(|_| (random_value(&mut rng), random_value(&mut rng))).collect();
        iso_check(seed, pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::ratio;

    fn fin(n: i64, d: i64) -> LocValue {
        LocValue::Finite(ratio(n, d))
    }

    #[test]
    fn dyadic_residuals() {
        let q = DyadicUnit;
        assert_eq!(q.residual(&ratio(1, 4), &ratio(1, 2)), ratio(1, 2));
        assert_eq!(q.residual(&ratio(3, 4), &Rational::one()), ratio(3, 4));
        assert_eq!(q.residual(&ratio(3, 4), &ratio(1, 2)), Rational::one());
        let samples: Vec<Rational> = [0, 1, 2, 3, 4, 8].iter().map(|&k| ratio(k, 8)).collect();
        assert!(super::super::check_axioms(&q, &samples).passed());
    }

    #[test]
    fn logs() {
        assert_eq!((floor_log2(&ratio(3, 4)), ceil_log2(&ratio(3, 4))), (-1, 0));
        assert_eq!((floor_log2(&ratio(8, 1)), ceil_log2(&ratio(8, 1))), (3, 3));
        assert_eq!((floor_log2(&ratio(5, 1)), ceil_log2(&ratio(5, 1))), (2, 3));
    }

    #[test]
    fn halving_sequence_is_fixed() {
        let m = HalfSequence::with_laws(0, vec![Rational::one()], EndLaw::Constant, EndLaw::Geometric).unwrap();
        let r = localize_half(&m).unwrap();
        assert_eq!(r.value, fin(1, 1));
        assert!(r.fixed.same_as(&m));
        assert_eq!(r.converged_at, Some(0));
        assert!(r.passed());
    }

    #[test]
    fn constant_tails_are_infinite() {
        let one = HalfSequence::with_laws(0, vec![Rational::one()], EndLaw::Constant, EndLaw::Constant).unwrap();
        let r = localize_half(&one).unwrap();
        assert_eq!(r.value, LocValue::Infinite);
        assert!(r.fixed.same_as(&one) && r.passed());

        let late = HalfSequence::parse_window("3:1", EndLaw::Geometric, EndLaw::Constant).unwrap();
        assert_eq!(late.at(1), ratio(1, 4));
        let r = localize_half(&late).unwrap();
        assert_eq!(r.value, LocValue::Infinite);
        assert!(r.passed());
    }

    #[test]
    fn rejects_non_modules() {
        assert!(HalfSequence::parse_window("0:1,1:1/4", EndLaw::Geometric, EndLaw::Constant).is_err());
        assert!(HalfSequence::parse_window("0:1/3", EndLaw::Geometric, EndLaw::Constant).is_err());
        assert!(HalfSequence::parse_window("0:1,2:1", EndLaw::Geometric, EndLaw::Constant).is_err());
    }

    #[test]
    fn reflection_steps() {
        let m = HalfSequence::parse_window("0:1/8,1:1/8", EndLaw::Geometric, EndLaw::Geometric).unwrap();
        // 2^m t_m = 1/4 at the tail
        assert_eq!(m.value(), fin(1, 4));
        let r1 = m.reflect_step(1);
        for n in -4..6 {
            assert_eq!(r1.at(n), (m.at(n + 1) * ratio(2, 1)).min(Rational::one()));
        }
        let r = localize_half(&m).unwrap();
        assert!(r.passed());
        assert_eq!(r.fixed.at(-2), Rational::one());
        assert_eq!(r.fixed.at(-1), ratio(1, 2));
    }

    #[test]
    fn iso_examples() {
        let r = localize_iso_check(&[
            (fin(1, 1), fin(1, 1)),
            (fin(3, 4), fin(2, 1)),
            (LocValue::Infinite, fin(1, 8)),
            (LocValue::Infinite, fin(0, 1)),
            (fin(3, 2), fin(3, 2)),
        ])
        .unwrap();
        assert!(r.passed, "{:?}", r.samples);
        assert_eq!(r.samples[1].product, fin(3, 2));
        assert_eq!(r.samples[2].product, LocValue::Infinite);
        assert_eq!(r.samples[3].product, fin(0, 1));
    }

    #[test]
    fn random_pairs() {
        let r = LocalizeIsoReport::random(7, 50).unwrap();
        assert!(r.passed);
        assert_eq!(r.samples.len(), 50);
    }
}
