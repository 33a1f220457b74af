//! Exact rational scalars and their canonical string form.
//!
//! Every coefficient in this crate is a [`num::BigRational`]. The wire
//! format is the reduced fraction `"p/q"` with a positive denominator,
//! shortened to `"p"` when the denominator is 1.

use num::bigint::BigInt;
pub use num::BigRational;
use num::{One, Signed, Zero};

use crate::error::Error;

/// Rational from an integer pair, reducing and normalizing the sign.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    assert!(denom != 0, "zero denominator");
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical string form: `"p"` or `"p/q"`, always reduced, `q > 0`.
pub fn to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"`. Rejects a zero denominator instead of panicking.
pub fn parse(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad rational numerator in {s:?}")))?;
    let denom: BigInt = den_str
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("bad rational denominator in {s:?}")))?;
    if denom.is_zero() {
        return Err(Error::parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Fixed-precision decimal rendering for human-readable output only.
/// Round-half-away-from-zero at `digits` fractional digits.
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    // round(|r| * 10^digits)
    let scaled = &abs * BigRational::from_integer(scale);
    let rounded = scaled.round().to_integer();
    let whole = &rounded / BigInt::from(10).pow(digits as u32);
    let frac = &rounded % BigInt::from(10).pow(digits as u32);
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>width$}", width = digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(to_string(&ratio(3, 4)), "3/4");
        assert_eq!(to_string(&ratio(5, 1)), "5");
        assert_eq!(to_string(&ratio(-7, 2)), "-7/2");
        assert_eq!(to_string(&ratio(7, -2)), "-7/2");
        assert_eq!(to_string(&ratio(6, 4)), "3/2");
        assert_eq!(to_string(&ratio(0, 9)), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/4", "5", "-7/2", "0"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1/2/3").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 2), 4), "0.5000");
        assert_eq!(to_decimal(&ratio(-1, 3), 6), "-0.333333");
        assert_eq!(to_decimal(&ratio(22, 7), 3), "3.143");
        assert_eq!(to_decimal(&int(4), 2), "4.00");
    }
}
