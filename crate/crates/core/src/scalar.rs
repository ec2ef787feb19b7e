//! Scalar abstraction shared by every geometric type.
//!
//! The geometry is written once against [`Scalar`]. Exact verification uses
//! [`Rational`] (an arbitrary-precision, always-canonical fraction); `f64` and
//! `f32` are provided for rendering and quick numeric experiments.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty scalar text")]
    Empty,
    #[error("invalid scalar text {0:?}: expected \"p\" or \"p/q\"")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Number type the geometry kernel is generic over.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + ToPrimitive + Send + Sync {
    /// Converts an exact rational into this scalar (lossy for floats).
    fn from_rational(value: &Rational) -> Self;

    /// Canonical text form: `"p"` or `"p/q"` for rationals, shortest
    /// round-trip decimal for floats.
    fn to_text(&self) -> String;

    /// Parses the text form. Rationals accept `"p"`, `"p/q"` with an optional
    /// leading `-` (ASCII or U+2212); floats additionally accept decimals.
    fn parse_text(text: &str) -> Result<Self, ParseScalarError>;

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_i64(value: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(value)))
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

/// Parses `"p"` / `"p/q"` into a canonical [`Rational`].
pub fn parse_rational(text: &str) -> Result<Rational, ParseScalarError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    let (negative, body) = if let Some(rest) = trimmed.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = trimmed.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, trimmed)
    };
    let malformed = || ParseScalarError::Malformed(text.to_string());
    let digits = |s: &str| -> Result<BigInt, ParseScalarError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse::<BigInt>().map_err(|_| malformed())
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (digits(n)?, digits(d)?),
        None => (digits(body)?, BigInt::one()),
    };
    if denom.is_zero() {
        return Err(ParseScalarError::ZeroDenominator(text.to_string()));
    }
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

impl Scalar for Rational {
    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_text(&self) -> String {
        // Ratio's Display already prints "p" when the denominator is one.
        self.to_string()
    }

    fn parse_text(text: &str) -> Result<Self, ParseScalarError> {
        parse_rational(text)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_rational(value: &Rational) -> Self {
                value.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn to_text(&self) -> String {
                self.to_string()
            }

            fn parse_text(text: &str) -> Result<Self, ParseScalarError> {
                match parse_rational(text) {
                    Ok(r) => Ok(Self::from_rational(&r)),
                    Err(ParseScalarError::Malformed(_)) => text
                        .trim()
                        .replace('\u{2212}', "-")
                        .parse::<$t>()
                        .map_err(|_| ParseScalarError::Malformed(text.to_string())),
                    Err(e) => Err(e),
                }
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// Shorthand for building an exact `numer/denom` (panics on a zero denominator).
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_and_fraction_forms() {
        assert_eq!(parse_rational("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_rational("-2/5").unwrap(), ratio(-2, 5));
        assert_eq!(parse_rational("\u{2212}1/3").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
    }

    #[test]
    fn rejects_bad_text() {
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseScalarError::ZeroDenominator("1/0".into()))
        );
        assert_eq!(parse_rational(""), Err(ParseScalarError::Empty));
        for bad in ["abc", "1/", "/2", "1/-2", "--1", "1.5", "+3"] {
            assert!(
                matches!(parse_rational(bad), Err(ParseScalarError::Malformed(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn text_form_is_canonical() {
        assert_eq!(ratio(6, -4).to_text(), "-3/2");
        assert_eq!(ratio(8, 4).to_text(), "2");
        assert_eq!(ratio(0, 7).to_text(), "0");
    }

    #[test]
    fn floats_accept_rational_and_decimal_text() {
        assert_eq!(f64::parse_text("1/4").unwrap(), 0.25);
        assert_eq!(f64::parse_text("-0.5").unwrap(), -0.5);
        assert_eq!(f32::parse_text("3").unwrap(), 3.0);
        assert!(f64::parse_text("1/0").is_err());
    }

    #[test]
    fn half_is_exact() {
        assert_eq!(Rational::half(), ratio(1, 2));
        assert_eq!(f64::half(), 0.5);
    }
}
