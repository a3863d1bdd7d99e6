use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// `p/q` as an exact rational. Panics if `q == 0`; use [`checked_div`] for
/// data-dependent divisors.
pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn checked_div(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// -1, 0 or 1.
pub fn sign(value: &Scalar) -> i8 {
    if value.is_positive() {
        1
    } else if value.is_negative() {
        -1
    } else {
        0
    }
}

/// Parses an integer (`-3`) or a fraction (`7/12`). Decimal notation is
/// rejected so that every value read from a file or flag is exact.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let trimmed = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    if trimmed.is_empty() {
        return Err(bad());
    }
    let valid = |part: &str| {
        let digits = part.strip_prefix('-').or_else(|| part.strip_prefix('+')).unwrap_or(part);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    match trimmed.split_once('/') {
        None => {
            if !valid(trimmed) {
                return Err(bad());
            }
            let n = BigInt::from_str(trimmed).map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
        Some((num, den)) => {
            if !valid(num) || !valid(den) {
                return Err(bad());
            }
            let n = BigInt::from_str(num).map_err(|_| bad())?;
            let d = BigInt::from_str(den).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Scalar::new(n, d))
        }
    }
}

/// `p/q`, or just `p` for integers. Inverse of [`parse_scalar`].
pub fn format_scalar(value: &Scalar) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Lossy conversion for reporting only.
pub fn to_f64(value: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn basic_arithmetic_is_exact() {
        assert_eq!(ratio(1, 3) + ratio(1, 6), ratio(1, 2));
        assert_eq!(ratio(2, 3) * ratio(3, 4), ratio(1, 2));
        let n = 4;
        assert_eq!(ratio(1, n + 1).cmp(&ratio(1, n)), Ordering::Less);
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let x = Scalar::new(BigInt::from(6), BigInt::from(-8));
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(4));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(checked_div(&int(1), &int(0)), Err(Error::DivisionByZero)));
        assert_eq!(checked_div(&int(1), &int(4)).unwrap(), ratio(1, 4));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_scalar("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_scalar("-6/4").unwrap(), ratio(-3, 2));
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("1e3").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1/").is_err());
        assert!(matches!(parse_scalar("1/0"), Err(Error::DivisionByZero)));
        assert_eq!(format_scalar(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
    }
}
