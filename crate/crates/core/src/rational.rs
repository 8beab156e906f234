//! Arbitrary-precision rationals.
//!
//! [`Rational`] is always stored reduced with a positive denominator. Text
//! form is `p/q`, or `p` when `q = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` for small integers. Panics on `d == 0`; only used with literal constants.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rat: zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Integer power with a non-negative exponent.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

pub fn to_f64(r: &Rational) -> f64 {
    match r.to_f64() {
        Some(v) => v,
        // huge numerators and denominators: fall back to a scaled quotient
        None => {
            let n = r.numer();
            let d = r.denom();
            let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
            let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn parse(input: &str) -> Result<Rational> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::parse("rational", input, "empty literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::parse("rational", input, "bad numerator"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::parse("rational", input, "bad denominator"))?;
        if d.is_zero() {
            return Err(Error::parse("rational", input, "zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = frac.len() as u32;
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::parse("rational", input, "bad fraction digits"));
        }
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w
                .parse()
                .map_err(|_| Error::parse("rational", input, "bad integer part"))?,
        };
        let frac: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            frac.parse().unwrap()
        };
        let scale = BigInt::from(10u32).pow(digits);
        let magnitude = whole.abs() * &scale + frac;
        let numer = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(numer, scale));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::parse("rational", input, "not an integer, p/q or decimal"))?;
    Ok(BigRational::from_integer(n))
}

/// Square root of a rational when it is itself a rational square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}
