//! Test-side oracles, independent of the library's numerics.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use linext::{ExtReal, Rational, RatVec};

const ORACLE_DIGITS: u32 = 90;

fn scale() -> BigInt {
    BigInt::from(10).pow(ORACLE_DIGITS)
}

/// `exp(y)·S` for a fixed-point `y·S`, by halving the argument eight times,
/// summing the Taylor series and squaring back.
fn exp_fixed(y: &BigInt, s: &BigInt) -> BigInt {
    let halvings = 8u32;
    let reduced = y >> halvings;
    let mut term = s.clone();
    let mut sum = s.clone();
    let mut k = 1u32;
    loop {
        term = &term * &reduced / s / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..halvings {
        sum = &sum * &sum / s;
    }
    sum
}

/// `ln(x)` to about 80 digits by Halley iteration on `exp(y) = x`,
/// started from the floating-point logarithm.
pub fn oracle_ln(x: &Rational) -> Rational {
    assert!(x.is_positive());
    let s = scale();
    let xs = (x * Rational::from_integer(s.clone())).to_integer();
    let guess = x.to_f64().unwrap().ln();
    let mut y = BigInt::from((guess * 1e15).round() as i64) * BigInt::from(10).pow(ORACLE_DIGITS - 15);
    for _ in 0..8 {
        let e = exp_fixed(&y, &s);
        // y ← y + 2(x − e)/(x + e)
        let step = BigInt::from(2) * (&xs - &e) * &s / (&xs + &e);
        if step.is_zero() {
            break;
        }
        y += step;
    }
    Rational::new(y, s)
}

pub fn tolerance() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10).pow(30))
}

pub fn close(a: &ExtReal, b: &ExtReal, tol: &Rational) -> bool {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => (x - y).abs() <= *tol,
        _ => a == b,
    }
}

/// `Σ q ln q` with `0 ln 0 = 0`, from the oracle logarithm.
pub fn oracle_neg_entropy(q: &RatVec) -> Rational {
    q.coords()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c * oracle_ln(c))
        .sum()
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn v(xs: &[i64]) -> RatVec {
    RatVec::from_ints(xs)
}

pub fn rv(xs: &[(i64, i64)]) -> RatVec {
    RatVec::new(xs.iter().map(|&(n, d)| r(n, d)).collect())
}

/// Prints one verdict line straight to stdout (bypassing test capture),
/// then fails the test on a failing verdict.
pub fn report(id: u32, name: &str, outcome: Result<String, String>) {
    use std::io::Write;
    let line = match &outcome {
        Ok(detail) => format!("acceptance {id:>2} PASS  {name}: {detail}"),
        Err(detail) => format!("acceptance {id:>2} FAIL  {name}: {detail}"),
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = writeln!(lock, "{line}");
    let _ = lock.flush();
    if let Err(detail) = outcome {
        panic!("acceptance {id} failed: {detail}");
    }
}
