//! Exact rational numbers and the handful of integer helpers the rest of the
//! crate leans on.
//!
//! [`Rational`] is `num`'s arbitrary-precision `BigRational`, which is always
//! kept in lowest terms with a positive denominator. Its `Display` already
//! prints `p` for integers and `p/q` otherwise, which is the canonical text
//! form used everywhere in this crate.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num::rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q`, reduced. Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p` or `p/q` (optional sign on `p`, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let parse_int = |s: &str| -> Result<BigInt, RationalParseError> {
        let s = s.trim();
        s.parse::<BigInt>()
            .map_err(|_| RationalParseError::BadInteger(s.to_string()))
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(RationalParseError::ZeroDenominator(text.to_string()));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Decimal rendering truncated toward zero to `places` digits, computed by
/// integer long division. Display only; never fed back into a comparison.
pub fn approx_decimal(x: &Rational, places: usize) -> String {
    let negative = x.is_negative();
    let abs = x.abs();
    let (whole, mut rem) = abs.numer().div_rem(abs.denom());
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if places > 0 {
        out.push('.');
        let ten = BigInt::from(10);
        for _ in 0..places {
            rem *= &ten;
            let (digit, r) = rem.div_rem(abs.denom());
            out.push_str(&digit.to_string());
            rem = r;
        }
    }
    out
}

/// Prime factorization of a positive integer by trial division, as
/// `(prime, exponent)` pairs in ascending prime order. `1` factors as `[]`.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive(), "factorize expects a positive integer");
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// `2^4 * 3^6 * 7` style rendering of a factorization.
pub fn format_factorization(factors: &[(BigInt, u32)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|(p, e)| {
            if *e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Converts an integral rational to `i64` when it fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integral(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `lcm(a, b)`, or `None` on overflow.
pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / a.gcd(&b)).checked_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("1/252").unwrap(), frac(1, 252));
        assert_eq!(parse_rational(" -6/4 ").unwrap().to_string(), "-3/2");
        assert_eq!(parse_rational("18").unwrap().to_string(), "18");
        assert_eq!(parse_rational("4/2").unwrap().to_string(), "2");
        assert_eq!(parse_rational("0/7").unwrap().to_string(), "0");
        assert!(matches!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator(_))
        ));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/2").is_err());
    }

    #[test]
    fn denominators_stay_positive() {
        let x = parse_rational("3/-9").unwrap();
        assert_eq!(x.to_string(), "-1/3");
        assert!(x.denom().is_positive());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(approx_decimal(&frac(1, 252), 6), "0.003968");
        assert_eq!(approx_decimal(&frac(-72, 5), 2), "-14.40");
        assert_eq!(approx_decimal(&int(3), 0), "3");
    }

    #[test]
    fn factorization() {
        let f = factorize(&BigInt::from(81648));
        assert_eq!(format_factorization(&f), "2^4 * 3^6 * 7");
        assert!(factorize(&BigInt::from(1)).is_empty());
        assert_eq!(format_factorization(&factorize(&BigInt::from(97))), "97");
    }

    #[test]
    fn frac_parts() {
        assert_eq!(frac_part(&frac(7, 3)), frac(1, 3));
        assert_eq!(frac_part(&frac(-1, 3)), frac(2, 3));
        assert!(is_integral(&frac(8, 4)));
    }
}
