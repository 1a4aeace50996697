//! Exact rational scalars.
//!
//! All arithmetic in the crate runs over `Ratio<BigInt>`, which keeps values
//! in lowest terms with a positive denominator, so structural equality is
//! value equality.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<BigInt>;

pub fn rat_int(n: i64) -> Rational {
    Ratio::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical display form: `p` when the denominator is one, `p/q` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `p/q`, or an exact decimal such as `-1.25` or `3e2`.
///
/// Decimal forms are admitted only because they are exactly representable;
/// anything else (NaN, infinities) is a parse error.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator {num:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator {den:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Ratio::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Ratio::from_integer(n));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let negative = int_part.starts_with('-');
    let digits: String = int_part
        .trim_start_matches(['-', '+'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not an exact rational: {s:?}")));
    }
    let mut n: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("not an exact rational: {s:?}")))?;
    if negative {
        n = -n;
    }
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        Ok(Ratio::from_integer(n * ten.pow(shift as u32)))
    } else {
        Ok(Ratio::new(n, ten.pow((-shift) as u32)))
    }
}

/// True when the value is an integer.
pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn to_bigint(x: &Rational) -> Result<BigInt> {
    if is_integer(x) {
        Ok(x.numer().clone())
    } else {
        Err(Error::NonIntegerWeight(format_rational(x)))
    }
}

/// Least common multiple of the denominators of `xs` (at least one).
pub fn denominator_lcm<'a>(xs: impl Iterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = num_integer::lcm(l, x.denom().abs());
    }
    l
}

pub fn pow_rational(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("1.5e-3").unwrap(), rat(3, 2000));
        assert_eq!(parse_rational("2e2").unwrap(), rat_int(200));
        assert!(parse_rational("nan").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn display_canonical() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
        assert_eq!(format_rational(&rat(1, -2)), "-1/2");
    }

    #[test]
    fn lcm_of_denominators() {
        let xs = [rat(1, 2), rat(1, 3), rat_int(5)];
        assert_eq!(denominator_lcm(xs.iter()), BigInt::from(6));
    }
}
