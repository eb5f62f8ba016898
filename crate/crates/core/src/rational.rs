//! Exact rational thresholds and a few transcendental comparisons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Every threshold in the crate is carried as an exact rational.
pub type Rational = Ratio<i128>;

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

/// Parses `"3"`, `"-2/5"` or a finite decimal such as `"0.99"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::input(format!("cannot parse {text:?} as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::input(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 30 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_abs: i128 = whole.trim_start_matches(['-', '+']).parse().or_else(|e| {
            if whole.trim_start_matches(['-', '+']).is_empty() { Ok(0) } else { Err(e) }
        }).map_err(|_| bad())?;
        let denom = 10i128.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let frac_val: i128 = frac.parse().map_err(|_| bad())?;
        let magnitude = Rational::new(whole_abs * denom + frac_val, denom);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<i128>().map(Rational::from_integer).map_err(|_| bad())
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `count >= threshold` for an integer count.
#[inline]
pub fn at_least(count: usize, threshold: &Rational) -> bool {
    Rational::from_integer(count as i128) >= *threshold
}

/// Smallest rational with denominator `10^digits` that is at least `x`.
///
/// Used to turn values like `exp(-r/5)` into exact rationals that bound them
/// from above. One extra unit in the last place absorbs floating error.
pub fn rational_above(x: f64, digits: u32) -> Rational {
    let denom = 10i128.pow(digits);
    let numer = (x * denom as f64).ceil() as i128 + 1;
    Rational::new(numer, denom)
}

pub fn ceil(r: &Rational) -> i128 {
    r.numer().div_ceil(r.denom())
}

pub fn floor(r: &Rational) -> i128 {
    r.numer().div_floor(r.denom())
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Encloses `2 * atanh(z)` for rational `|z| < 1` using `terms` series terms.
fn two_atanh_interval(z: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    for k in 0..terms {
        sum += &power / BigRational::from_integer(BigInt::from(2 * k + 1));
        power *= &z2;
    }
    // remainder is bounded by |z|^(2K+1) / ((2K+1)(1 - z^2)) and has the sign of z
    let denom = BigRational::from_integer(BigInt::from(2 * terms + 1)) * (BigRational::one() - &z2);
    let tail = power.abs() / denom;
    let two = BigRational::from_integer(BigInt::from(2));
    if z.is_negative() {
        (two.clone() * (&sum - &tail), two * sum)
    } else {
        (two.clone() * &sum, two * (sum + tail))
    }
}

/// Rational enclosure `[lo, hi]` of `ln(q)` for rational `q > 0`.
pub fn ln_interval(q: &BigRational, terms: usize) -> (BigRational, BigRational) {
    assert!(q.is_positive(), "ln of non-positive value");
    let two = BigRational::from_integer(BigInt::from(2));
    let mut reduced = q.clone();
    let mut shift: i64 = 0;
    while reduced > two {
        reduced /= &two;
        shift += 1;
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while reduced < half {
        reduced *= &two;
        shift -= 1;
    }
    let one = BigRational::one();
    let z = (&reduced - &one) / (&reduced + &one);
    let (lo, hi) = two_atanh_interval(&z, terms);
    if shift == 0 {
        return (lo, hi);
    }
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let (l2_lo, l2_hi) = two_atanh_interval(&third, terms);
    let k = BigRational::from_integer(BigInt::from(shift));
    if shift > 0 {
        (lo + &k * l2_lo, hi + &k * l2_hi)
    } else {
        (lo + &k * l2_hi, hi + &k * l2_lo)
    }
}

/// Decides `lhs * ln(q)^2 >= rhs` for rationals with `q > 1`.
///
/// The floating path answers whenever the two sides are separated by more
/// than a relative guard band of `2^-40`; otherwise the comparison is
/// escalated to rational interval arithmetic with increasing precision.
pub fn log_squared_at_least(lhs: &Rational, q: &Rational, rhs: &Rational) -> bool {
    let ln = to_f64(q).ln();
    let left = to_f64(lhs) * ln * ln;
    let right = to_f64(rhs);
    let guard = 2f64.powi(-40) * left.abs().max(right.abs()).max(1.0);
    if left - right > guard {
        return true;
    }
    if right - left > guard {
        return false;
    }
    let (lhs, q, rhs) = (big(lhs), big(q), big(rhs));
    let mut terms = 64;
    loop {
        let (lo, hi) = ln_interval(&q, terms);
        let lo = if lo.is_negative() { BigRational::zero() } else { lo };
        if &lhs * &lo * &lo >= rhs {
            return true;
        }
        if &lhs * &hi * &hi < rhs {
            return false;
        }
        terms *= 2;
        if terms > 1 << 16 {
            // equality would force ln(q) to be algebraic with q != 1
            return lhs * lo.clone() * lo >= rhs;
        }
    }
}

/// Writes a rational as `p/q` (or `p` when integral).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub mod serde_rational {
    //! Serializes a [`Rational`] as a `"p/q"` string.
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Rational::from_integer(i as i128)),
        }
    }
}
