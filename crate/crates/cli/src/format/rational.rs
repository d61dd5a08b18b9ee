//! Rational literals: `num/den`, or a bare integer when parsing.

use multipers_core::{ExtRational, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let parse_int = |t: &str| t.parse::<BigInt>().map_err(|_| format!("invalid rational '{}'", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (parse_int(n)?, parse_int(d)?);
            if d.is_zero() {
                return Err(format!("zero denominator in '{}'", s));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// A rational or `inf`.
pub fn parse_ext(s: &str) -> Result<ExtRational, String> {
    if s == "inf" {
        Ok(ExtRational::Infinite)
    } else {
        parse_rational(s).map(ExtRational::Finite)
    }
}

/// Always `num/den` with a positive denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_ext(r: &ExtRational) -> String {
    match r {
        ExtRational::Finite(v) => format_rational(v),
        ExtRational::Infinite => "inf".to_string(),
    }
}

/// Decimal rounded half away from zero to `places` digits.
pub fn decimal(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = r * Rational::from_integer(scale.clone());
    let (n, d) = (scaled.numer().abs(), scaled.denom().clone());
    let rounded: BigInt = (n * 2 + &d) / (d * 2);
    let negative = r.is_negative() && !rounded.is_zero();
    let digits = rounded.to_string();
    let width = places as usize + 1;
    let digits = format!("{:0>width$}", digits, width = width);
    let (int_part, frac) = digits.split_at(digits.len() - places as usize);
    format!("{}{}.{}", if negative { "-" } else { "" }, int_part, frac)
}

/// `num/den (decimal)`, or `inf`.
pub fn exact_and_decimal(r: &ExtRational) -> String {
    match r {
        ExtRational::Finite(v) => format!("{} ({})", format_rational(v), decimal(v, 6)),
        ExtRational::Infinite => "inf".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use multipers_core::rational::rat;

    #[test]
    fn round_trip() {
        for s in ["1/2", "-3/4", "0/1", "7/1"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("4").unwrap(), rat(4, 1));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_ext("inf").unwrap(), ExtRational::Infinite);
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(decimal(&rat(2, 3), 6), "0.666667");
        assert_eq!(decimal(&rat(-1, 8), 6), "-0.125000");
        assert_eq!(decimal(&rat(34, 1), 6), "34.000000");
        assert_eq!(decimal(&rat(-1, 10_000_000), 6), "0.000000");
    }
}
