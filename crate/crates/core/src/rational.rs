//! Exact rational thresholds.
//!
//! Degree conditions sit on integer boundaries, so every threshold is kept as
//! a reduced fraction of 64-bit integers and compared exactly.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational number `{0}` (expected an integer, `a/b` or a decimal such as `0.05`)")]
pub struct ParseRationalError(pub String);

/// Parses `3`, `-1`, `1/2`, `-4/3` or a plain decimal like `0.05`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| err())?;
        let den: i64 = den.trim().parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && int_digits.is_empty() {
            return Err(err());
        }
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 15 {
            return Err(err());
        }
        let whole: i64 = if int_digits.is_empty() {
            0
        } else {
            int_digits.parse().map_err(|_| err())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let part: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| err())?
        };
        let num = whole
            .checked_mul(den)
            .and_then(|w| w.checked_add(part))
            .ok_or_else(err)?;
        return Ok(Rational::new(if negative { -num } else { num }, den));
    }
    let v: i64 = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(v))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Smallest integer `k` with `k >= r * n`.
pub fn ceil_times(r: Rational, n: usize) -> i64 {
    (r * int(n as i64)).ceil().to_integer()
}

/// Largest integer `k` with `k <= r * n`.
pub fn floor_times(r: Rational, n: usize) -> i64 {
    (r * int(n as i64)).floor().to_integer()
}

/// Display wrapper printing `a/b`, or just `a` for integers.
pub struct Display<'a>(pub &'a Rational);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn to_string(r: &Rational) -> String {
    Display(r).to_string()
}

/// Serde helpers storing a rational as its `a/b` string.
pub mod serde_str {
    use super::{parse_rational, to_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
            Float(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Rational::from_integer(i)),
            // floats go through their shortest decimal rendering
            Raw::Float(x) => parse_rational(&format!("{x}")).map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational("0.05").unwrap(), Rational::new(1, 20));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::new(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("4/3").unwrap(), Rational::new(4, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(ceil_times(Rational::new(2, 3), 10), 7);
        assert_eq!(floor_times(Rational::new(1, 10), 25), 2);
        assert_eq!(ceil_times(Rational::new(2, 3), 9), 6);
        assert_eq!(to_string(&Rational::new(6, 4)), "3/2");
        assert_eq!(to_string(&int(7)), "7");
    }
}
