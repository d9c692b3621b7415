//! Exact rationals and the `p/q` text format used in every exact output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Positive part `max(0, x)`.
pub fn pos(x: &Rational) -> Rational {
    if x.is_positive() {
        x.clone()
    } else {
        Rational::zero()
    }
}

/// Parses an integer or a `p/q` literal. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational literal: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Parses a comma-separated list of rational literals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Err(Error::InvalidInput("empty coordinate list".into()));
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical `p/q` text (`p` alone when the denominator is one).
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Lossy conversion for display and for the floating-point harness.
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
        assert_eq!(fmt_rational(&rat(6, 1)), "6");
        assert_eq!(fmt_rational(&rat(-2, 4)), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn parse_list() {
        let v = parse_rational_list("3,-1,-1,-1").unwrap();
        assert_eq!(v, vec![int(3), int(-1), int(-1), int(-1)]);
        assert!(parse_rational_list("1,,2").is_err());
    }
}
