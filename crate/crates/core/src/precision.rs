//! Rational approximations of logarithms and decimal rendering.
//!
//! Transcendental catalog values are computed in fixed point with guard
//! digits, then rounded to the nearest multiple of `10^-digits`. Infinite
//! values never pass through here, so sign logic stays exact.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Rational};

pub const DEFAULT_DIGITS: u32 = 50;
const GUARD_DIGITS: u32 = 16;

fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

/// Nearest integer to `r`, ties away from zero.
pub fn round_to_integer(r: &Rational) -> BigInt {
    let (q, rem) = r.numer().div_rem(r.denom());
    let twice = BigInt::from(2) * rem.abs();
    if twice >= *r.denom() {
        if r.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Nearest multiple of `10^-digits`.
pub fn round_to_digits(r: &Rational, digits: u32) -> Rational {
    let scale = pow10(digits);
    let n = round_to_integer(&(r * Rational::from_integer(scale.clone())));
    Rational::new(n, scale)
}

/// `atanh(z)·S` for `|z| ≤ 1/3`, with `z = num/den` and fixed-point scale `S`.
fn atanh_fixed(num: &BigInt, den: &BigInt, scale: &BigInt) -> BigInt {
    let mut sum = BigInt::zero();
    // term = z^(2k+1)·S, updated exactly enough by integer division.
    let mut power = scale * num / den;
    let num2 = num * num;
    let den2 = den * den;
    let mut k = 0u32;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = power * &num2 / &den2;
        k += 1;
    }
    sum
}

/// `ln(x)` rounded to `digits` decimal places. Requires `x > 0`.
pub fn ln(x: &Rational, digits: u32) -> Result<Rational> {
    if !x.is_positive() {
        return Err(Error::PreconditionViolated(format!(
            "logarithm of non-positive value {x}"
        )));
    }
    if x.is_one() {
        return Ok(Rational::zero());
    }
    let scale = pow10(digits + GUARD_DIGITS);
    // x = m·2^k with m ∈ [1, 2).
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = Rational::from_integer(BigInt::from(2));
    let mut m = if k >= 0 {
        x / Rational::from_integer(BigInt::one() << k as usize)
    } else {
        x * Rational::from_integer(BigInt::one() << (-k) as usize)
    };
    while m >= two {
        m /= &two;
        k += 1;
    }
    while m < Rational::one() {
        m *= &two;
        k -= 1;
    }
    // ln m = 2·atanh((m−1)/(m+1)), with (m−1)/(m+1) ∈ [0, 1/3).
    let z = (&m - Rational::one()) / (&m + Rational::one());
    let ln_m = BigInt::from(2) * atanh_fixed(z.numer(), z.denom(), &scale);
    let ln2 = BigInt::from(2) * atanh_fixed(&BigInt::one(), &BigInt::from(3), &scale);
    let fixed = ln_m + BigInt::from(k) * ln2;
    Ok(round_to_digits(
        &Rational::new(fixed, scale),
        digits,
    ))
}

/// `ln(x)` with `ln 0 = −∞`.
pub fn ln_ext(x: &Rational, digits: u32) -> Result<ExtReal> {
    if x.is_zero() {
        Ok(ExtReal::NegInf)
    } else {
        ln(x, digits).map(ExtReal::Finite)
    }
}

/// Fixed-point decimal rendering with exactly `digits` places.
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let n = round_to_integer(&(r * Rational::from_integer(pow10(digits))));
    let negative = n.sign() == Sign::Minus;
    let s = n.abs().to_string();
    let digits = digits as usize;
    let (int_part, frac_part) = if s.len() > digits {
        let (a, b) = s.split_at(s.len() - digits);
        (a.to_string(), b.to_string())
    } else {
        ("0".to_string(), format!("{s:0>digits$}"))
    };
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

pub fn ext_to_decimal(v: &ExtReal, digits: u32) -> String {
    match v {
        ExtReal::Finite(r) => to_decimal(r, digits),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{int, parse_rational, rat};

    const LN2_60: &str = "0.693147180559945309417232121458176568075500134360255254120680";

    #[test]
    fn ln_two_matches_reference_digits() {
        let reference = parse_rational(LN2_60).unwrap();
        let got = ln(&int(2), 50).unwrap();
        assert!((got - reference).abs() <= rat(1, 1) / Rational::from_integer(pow10(50)));
    }

    #[test]
    fn ln_identities() {
        let a = ln(&rat(3, 7), 60).unwrap();
        let b = ln(&rat(7, 3), 60).unwrap();
        assert!((a + b).abs() <= Rational::new(BigInt::one(), pow10(59)));
        let half = ln(&rat(1, 2), 50).unwrap();
        assert_eq!(half, -ln(&int(2), 50).unwrap());
        assert_eq!(ln(&int(1), 50).unwrap(), int(0));
        assert!(ln(&int(0), 50).is_err());
        assert_eq!(ln_ext(&int(0), 50).unwrap(), ExtReal::NegInf);
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&rat(-1, 2), 3), "-0.500");
        assert_eq!(to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(to_decimal(&int(12), 0), "12");
        assert_eq!(to_decimal(&rat(1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&rat(-7, 1000), 2), "-0.01");
        assert_eq!(round_to_integer(&rat(-5, 2)), BigInt::from(-3));
    }
}
