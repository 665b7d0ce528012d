//! Exact rational scalars: parsing and formatting of `p/q` tokens.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Parses an integer or `p/q` token into a reduced rational with positive
/// denominator.
pub fn parse_rational(token: &str) -> Result<BigRational> {
    let token = token.trim();
    let (num_str, den_str) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid numerator in `{token}`")))?;
    let den: BigInt = den_str
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid denominator in `{token}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{token}`")));
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
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
    fn parse_and_reduce() {
        let r = parse_rational("6/4").unwrap();
        assert_eq!(format_rational(&r), "3/2");
        let r = parse_rational("-3/-6").unwrap();
        assert_eq!(format_rational(&r), "1/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
    }
}
