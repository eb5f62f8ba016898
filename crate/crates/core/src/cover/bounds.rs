use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, ln_interval, parse_rational, Rational};

/// A value of δ: either an exact rational or `e^{-x}` for rational `x > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaValue {
    Exact(Rational),
    ExpNeg(Rational),
}

impl DeltaValue {
    /// Accepts `"1/100"`, `"0.9"`, `"e^-4"` and `"e^-3/5"`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if let Some(x) = s.strip_prefix("e^-").or_else(|| s.strip_prefix("exp(-").and_then(|t| t.strip_suffix(')'))) {
            let x = parse_rational(x)?;
            if x <= rational::int(0) {
                return Err(Error::input(format!("exponent in {text:?} must be positive")));
            }
            return Ok(DeltaValue::ExpNeg(x));
        }
        Ok(DeltaValue::Exact(parse_rational(s)?))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            DeltaValue::Exact(d) => rational::to_f64(d),
            DeltaValue::ExpNeg(x) => (-rational::to_f64(x)).exp(),
        }
    }

    pub fn in_unit_interval(&self) -> bool {
        match self {
            DeltaValue::Exact(d) => *d > rational::int(0) && *d < rational::int(1),
            DeltaValue::ExpNeg(x) => *x > rational::int(0),
        }
    }

    pub fn at_least_half(&self) -> bool {
        match self {
            DeltaValue::Exact(d) => *d >= rational::ratio(1, 2),
            // e^{-x} ≥ 1/2 iff x ≤ ln 2; ln 2 is irrational so the enclosure separates them
            DeltaValue::ExpNeg(x) => {
                let x = BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
                let two = BigRational::from_integer(BigInt::from(2));
                let mut terms = 32;
                loop {
                    let (lo, hi) = ln_interval(&two, terms);
                    if x <= lo {
                        return true;
                    }
                    if x > hi {
                        return false;
                    }
                    terms *= 2;
                }
            }
        }
    }

    /// `δ²` in the same representation.
    pub fn squared(&self) -> DeltaValue {
        match self {
            DeltaValue::Exact(d) => DeltaValue::Exact(d * d),
            DeltaValue::ExpNeg(x) => DeltaValue::ExpNeg(x * rational::int(2)),
        }
    }

    /// Decides `δ ≥ q` exactly.
    pub fn at_least(&self, q: &Rational) -> bool {
        match self {
            DeltaValue::Exact(d) => d >= q,
            DeltaValue::ExpNeg(x) => {
                if *q <= rational::int(0) {
                    return true;
                }
                if *q >= rational::int(1) {
                    return false;
                }
                // e^{-x} ≥ q iff x ≤ ln(1/q)
                let x = BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
                let inv = BigRational::new(BigInt::from(*q.denom()), BigInt::from(*q.numer()));
                let mut terms = 32;
                loop {
                    let (lo, hi) = ln_interval(&inv, terms);
                    if x <= lo {
                        return true;
                    }
                    if x > hi {
                        return false;
                    }
                    if terms > 1 << 14 {
                        return x <= hi;
                    }
                    terms *= 2;
                }
            }
        }
    }

    /// `⌊c / ln(1/δ)⌋` for `δ ∈ (0, 1)` and `c ≥ 0`.
    pub fn floor_over_log(&self, c: &Rational) -> i128 {
        let c_big = BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()));
        let mut terms = 32;
        loop {
            let (lo, hi) = self.log_inverse(terms);
            if lo.is_positive() {
                let a = (&c_big / &hi).floor().to_integer();
                let b = (&c_big / &lo).floor().to_integer();
                if a == b || terms > 4096 {
                    return a.to_i128().expect("fits in i128");
                }
            }
            terms *= 2;
        }
    }

    /// Rational enclosure of `ln(1/δ)`.
    fn log_inverse(&self, terms: usize) -> (BigRational, BigRational) {
        match self {
            DeltaValue::Exact(d) => {
                let inv = BigRational::new(BigInt::from(*d.denom()), BigInt::from(*d.numer()));
                ln_interval(&inv, terms)
            }
            DeltaValue::ExpNeg(x) => {
                let x = BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
                (x.clone(), x)
            }
        }
    }
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaValue::Exact(d) => write!(f, "{}", rational::format_rational(d)),
            DeltaValue::ExpNeg(x) => write!(f, "e^-{}", rational::format_rational(x)),
        }
    }
}

impl Serialize for DeltaValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DeltaValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        DeltaValue::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A bound value, or `"n/a"` when δ lies outside the formula's range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Value(f64),
    NotApplicable,
}

impl BoundValue {
    pub fn value(self) -> Option<f64> {
        match self {
            BoundValue::Value(v) => Some(v),
            BoundValue::NotApplicable => None,
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundValue::Value(v) => s.serialize_f64(*v),
            BoundValue::NotApplicable => s.serialize_str("n/a"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(BoundValue::Value(v)),
            Raw::Text(t) if t == "n/a" => Ok(BoundValue::NotApplicable),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("unexpected bound {t:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub r: usize,
    pub delta: DeltaValue,
    #[serde(with = "rational::serde_rational")]
    pub k: Rational,
    #[serde(with = "rational::serde_rational", rename = "K")]
    pub big_k: Rational,
    pub log_inverse_delta: f64,
    /// `⌈r / ln(1/δ)⌉`.
    pub ceil_ratio: i128,
    /// `⌈(r / ln(1/δ)) · ln(1 + r / ln(1/δ))⌉`.
    pub ceil_tree_term: i128,
    pub cp_lower: BoundValue,
    pub cp_upper: BoundValue,
    pub tc_lower: BoundValue,
    pub tc_upper: BoundValue,
    /// `K r² / ln(1/δ)`, for `δ ≥ 1/2`.
    pub tc_upper_large_delta: BoundValue,
    /// `2 r² / ln(1/δ)`, the degree-threshold transversal bound for `δ ≥ 1/2`.
    pub greedy_tc_bound: BoundValue,
}

fn big_ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Increases precision until the ceiling of a monotone expression is pinned.
fn pinned_ceil(mut enclose: impl FnMut(usize) -> (BigRational, BigRational), fallback: f64) -> i128 {
    let mut terms = 32;
    while terms <= 4096 {
        let (lo, hi) = enclose(terms);
        let (a, b) = (big_ceil(&lo), big_ceil(&hi));
        if a == b {
            return a.to_i128().expect("bound fits in i128");
        }
        terms *= 2;
    }
    fallback.ceil() as i128
}

/// Enclosure of `ln(1 + y)` for `y` in `[lo, hi]`, `lo > -1`.
fn ln_one_plus(lo: &BigRational, hi: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let (a, _) = ln_interval(&(&one + lo), terms);
    let (_, b) = ln_interval(&(&one + hi), terms);
    (a, b)
}

/// Evaluates the cycle-partition and tree-cover bound formulas for given constants.
pub fn evaluate_bounds(r: usize, delta: &DeltaValue, k: &Rational, big_k: &Rational) -> Result<BoundReport> {
    if r < 2 {
        return Err(Error::input(format!("bounds need r ≥ 2, got {r}")));
    }
    if !delta.in_unit_interval() {
        return Err(Error::input(format!("δ = {delta} outside (0, 1)")));
    }
    let r_big = BigRational::from_integer(BigInt::from(r));
    let log_inv = match delta {
        DeltaValue::Exact(d) => -rational::to_f64(d).ln(),
        DeltaValue::ExpNeg(x) => rational::to_f64(x),
    };
    let ratio_at = |terms: usize| {
        let (lo, hi) = delta.log_inverse(terms);
        let lo = if lo.is_positive() { lo } else { BigRational::new(BigInt::one(), BigInt::from(1u64 << 62)) };
        (&r_big / &hi, &r_big / &lo)
    };
    let y = r as f64 / log_inv;
    let ceil_ratio = pinned_ceil(ratio_at, y);
    let ceil_tree_term = pinned_ceil(
        |terms| {
            let (ylo, yhi) = ratio_at(terms);
            let (llo, lhi) = ln_one_plus(&ylo, &yhi, terms);
            let llo = if llo.is_positive() { llo } else { BigRational::from_integer(BigInt::from(0)) };
            (&ylo * llo, &yhi * lhi)
        },
        y * y.ln_1p(),
    );
    let rf = r as f64;
    let kf = rational::to_f64(k);
    let big_kf = rational::to_f64(big_k);
    let below_half = !delta.at_least_half();
    let when = |ok: bool, v: f64| if ok { BoundValue::Value(v) } else { BoundValue::NotApplicable };
    Ok(BoundReport {
        r,
        delta: delta.clone(),
        k: *k,
        big_k: *big_k,
        log_inverse_delta: log_inv,
        ceil_ratio,
        ceil_tree_term,
        cp_lower: when(below_half, kf * rf * ceil_ratio as f64),
        cp_upper: when(below_half, big_kf * rf * rf.ln() * ceil_ratio as f64),
        tc_lower: BoundValue::Value(kf * rf * ceil_ratio as f64),
        tc_upper: BoundValue::Value(big_kf * rf * ceil_tree_term as f64),
        tc_upper_large_delta: when(!below_half, big_kf * rf * rf / log_inv),
        greedy_tc_bound: when(!below_half, 2.0 * rf * rf / log_inv),
    })
}
