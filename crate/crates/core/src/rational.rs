//! Exact rational numbers.
//!
//! Everything numeric in the engine (payoffs, probabilities, simplex
//! tableaux) is a [`Rational`]: an arbitrary-precision fraction kept in
//! lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Parses `-?digits(/digits)?`. The denominator must be positive.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed rational `{text}`"));
    }
    let numer: BigInt = num.parse().map_err(|_| format!("malformed rational `{text}`"))?;
    let denom = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("malformed denominator in `{text}`"));
            }
            let d: BigInt = d.parse().map_err(|_| format!("malformed rational `{text}`"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{text}`"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `p/q` in lowest terms, or `p` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_canonicalizes() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("-6/3").unwrap()), "-2");
        assert_eq!(format_rational(&parse_rational("0/7").unwrap()), "0");
    }

    #[test]
    fn rejects_bad_syntax() {
        for bad in ["", "-", "1/0", "1/-2", "+1", "1.5", "a", "1/", "/2", "--1", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad} should fail");
        }
    }
}
