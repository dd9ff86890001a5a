//! Exact rational arithmetic for powers and win conditions.
//!
//! Every comparison the process makes is exact; nothing in this crate
//! converts a power or a win condition to floating point.

use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

/// Exact fraction, always in lowest terms with a positive denominator.
pub type Rational = Ratio<i64>;

/// Shorthand constructor used throughout tests and tables.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Ratio::new(numer, denom)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("decimal notation is not accepted; write an exact fraction such as 1/2")]
    Decimal,
    #[error("malformed fraction `{0}`; expected `numer/denom`")]
    Malformed(String),
}

/// Parses `"3/5"` (or a bare integer) into an exact rational.
///
/// Decimal strings are rejected: boundary behaviour of the process depends
/// on exact comparisons, and `0.6` silently rounded would change it.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.contains('.') {
        return Err(ParseRationalError::Decimal);
    }
    Rational::from_str(s).map_err(|_| ParseRationalError::Malformed(s.to_string()))
}

/// Renders a rational the way reports expect it: `"1/2"`, `"0"`, `"1"`.
pub fn rational_string(r: Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reduced_fractions() {
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" 3/5 ").unwrap(), ratio(3, 5));
        assert_eq!(parse_rational("1").unwrap(), ratio(1, 1));
    }

    #[test]
    fn rejects_decimals_and_junk() {
        assert_eq!(parse_rational("0.5"), Err(ParseRationalError::Decimal));
        assert!(matches!(
            parse_rational("one/two"),
            Err(ParseRationalError::Malformed(_))
        ));
    }

    #[test]
    fn renders_like_reports_expect() {
        assert_eq!(rational_string(ratio(1, 2)), "1/2");
        assert_eq!(rational_string(ratio(3, 3)), "1");
        assert_eq!(rational_string(ratio(0, 7)), "0");
    }
}
