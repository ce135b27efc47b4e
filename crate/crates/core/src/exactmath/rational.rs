//! Helpers around [`BigRational`], which already keeps every value in
//! lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ExactError;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Canonical text form `num/den`, always with an explicit denominator.
pub fn to_fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Short human form: integers print without a denominator.
pub fn to_display_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        to_fraction_string(q)
    }
}

/// Parses `n`, `-n`, or `n/d`. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::MalformedRational(text.to_string());
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// `q mod p` for a prime `p` not dividing the denominator.
pub fn reduce_mod(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = q.numer().mod_floor(&pb);
    let num = u64::try_from(&num).ok()?;
    let den = u64::try_from(&den).ok()?;
    Some(crate::exactmath::modp::mul_mod(num, crate::exactmath::modp::inv_mod(den, p)?, p))
}

pub fn abs_bigint(n: &BigInt) -> BigInt {
    n.abs()
}
