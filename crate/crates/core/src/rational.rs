//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"`.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational: `{text}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(num, den));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Integers print bare, everything else as `p/q` in lowest terms.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}
