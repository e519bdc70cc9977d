//! Exact rational arithmetic and the canonical text form used everywhere.
//!
//! `Rational` is a `num_rational::BigRational`: always gcd-reduced with a
//! positive denominator, so `PartialEq` is structural equality of values and
//! round-tripping through text is bit-exact.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand for small constants: `rat(3, 4)` is 3/4.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, `q > 0`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the forms accepted throughout the toolkit:
///
/// * `"p"` and `"p/q"` integers and fractions (normalized on input, so
///   `"2/4"` and `"-1/-2"` both parse to 1/2);
/// * decimal and scientific notation (`"0.25"`, `"1e-9"`, `"2.5e3"`) which
///   convert to exact rationals.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::validation("empty rational literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::validation(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::validation(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::validation(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    parse_decimal(s).ok_or_else(|| Error::validation(format!("unrecognized rational {s:?}")))
}

/// Exact conversion of decimal/scientific literals; `None` if malformed.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let digits_value: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().ok()?
    };
    let scale = exp - frac_part.len() as i32;
    let base = Rational::from_integer(digits_value * BigInt::from(sign));
    let ten = BigInt::from(10u32);
    let factor = if scale >= 0 {
        Rational::from_integer(ten.pow(scale as u32))
    } else {
        Rational::new(BigInt::one(), ten.pow((-scale) as u32))
    };
    Some(base * factor)
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigUint) -> BigUint {
    num_integer::Roots::sqrt(n)
}

/// Smallest integer `>= x`.
pub fn ceil_rational(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Rounds to the nearest fraction with denominator `2^bits`, then reduces.
/// Used to keep numeric iterates small without leaving exact arithmetic.
pub fn round_dyadic(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * Rational::from_integer(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    Rational::new(rounded, scale)
}

/// String form of a signed integer ratio used in JSON payloads.
pub fn rational_from_bigints(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::validation("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}
