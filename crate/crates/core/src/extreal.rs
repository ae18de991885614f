//! Extended reals `ℝ ∪ {±∞}` over an exact rational base field.
//!
//! Addition is partial: `+∞ + −∞` is reported as [`Error::IllegalSum`]
//! instead of producing a NaN-like value. Scaling by a rational is total,
//! with `0 · (±∞) = 0`. The derived ordering is the total order
//! `−∞ < finite < +∞`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"`, `"a"`, or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits_ok = |p: &str| p.chars().all(|c| c.is_ascii_digit());
        let int_abs = int_part.trim_start_matches(['-', '+']);
        if !digits_ok(int_abs) || !digits_ok(frac_part) || frac_part.is_empty() {
            return Err(Error::Parse(format!("invalid decimal {t:?}")));
        }
        let whole: BigInt = format!("{int_abs}{frac_part}")
            .parse()
            .map_err(|_| Error::Parse(format!("invalid decimal {t:?}")))?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let value = Rational::new(whole, scale);
        return Ok(if negative { -value } else { value });
    }
    Rational::from_str(t).map_err(|_| Error::Parse(format!("invalid rational {t:?}")))
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// A value in `ℝ ∪ {±∞}`. Variant order gives the total order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(Rational::zero())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    /// Partial addition. Fails only for `{+∞, −∞}`.
    pub fn add(&self, other: &ExtReal) -> Result<ExtReal> {
        use ExtReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::IllegalSum),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    /// Whether `self + other` is defined.
    pub fn can_add(&self, other: &ExtReal) -> bool {
        !matches!(
            (self, other),
            (ExtReal::PosInf, ExtReal::NegInf) | (ExtReal::NegInf, ExtReal::PosInf)
        )
    }

    pub fn add_finite(&self, beta: &Rational) -> ExtReal {
        match self {
            ExtReal::Finite(a) => ExtReal::Finite(a + beta),
            other => other.clone(),
        }
    }

    /// Total scalar multiplication: `0 · (±∞) = 0`, negative scalars flip
    /// the sign of infinities.
    pub fn scale(&self, alpha: &Rational) -> ExtReal {
        use ExtReal::*;
        match self {
            Finite(a) => Finite(alpha * a),
            PosInf | NegInf if alpha.is_zero() => ExtReal::zero(),
            PosInf if alpha.is_positive() => PosInf,
            NegInf if alpha.is_positive() => NegInf,
            PosInf => NegInf,
            NegInf => PosInf,
        }
    }

    pub fn neg(&self) -> ExtReal {
        self.scale(&-Rational::one())
    }

    pub fn sign(&self) -> i8 {
        match self {
            ExtReal::NegInf => -1,
            ExtReal::PosInf => 1,
            ExtReal::Finite(r) => match r.cmp(&Rational::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
        }
    }

    /// `±∞ · sign(r)` style constructor: `+∞` for positive, `−∞` for
    /// negative, zero otherwise.
    pub fn infinity_with_sign(sign: i8) -> ExtReal {
        match sign.cmp(&0) {
            Ordering::Greater => ExtReal::PosInf,
            Ordering::Less => ExtReal::NegInf,
            Ordering::Equal => ExtReal::zero(),
        }
    }
}

impl From<Rational> for ExtReal {
    fn from(r: Rational) -> Self {
        ExtReal::Finite(r)
    }
}

impl From<i64> for ExtReal {
    fn from(n: i64) -> Self {
        ExtReal::Finite(int(n))
    }
}

/// Sum of a finite list; `Err` if any partial sum is illegal. Because every
/// legal sum of extended reals containing `+∞` (resp. `−∞`) is `+∞`
/// (resp. `−∞`), the result does not depend on summation order.
pub fn sum<'a, I: IntoIterator<Item = &'a ExtReal>>(values: I) -> Result<ExtReal> {
    values
        .into_iter()
        .try_fold(ExtReal::zero(), |acc, v| acc.add(v))
}

pub fn sup<'a, I: IntoIterator<Item = &'a ExtReal>>(values: I) -> ExtReal {
    values
        .into_iter()
        .max()
        .cloned()
        .unwrap_or(ExtReal::NegInf)
}

pub fn inf<'a, I: IntoIterator<Item = &'a ExtReal>>(values: I) -> ExtReal {
    values
        .into_iter()
        .min()
        .cloned()
        .unwrap_or(ExtReal::PosInf)
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("inf"),
            ExtReal::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtReal::PosInf),
            "-inf" => Ok(ExtReal::NegInf),
            other => parse_rational(other).map(ExtReal::Finite),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a [`Rational`] as its `"a/b"` string.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(n: i64) -> ExtReal {
        ExtReal::from(n)
    }

    #[test]
    fn addition_rules() {
        assert_eq!(e(3).add(&ExtReal::PosInf), Ok(ExtReal::PosInf));
        assert_eq!(e(3).add(&ExtReal::NegInf), Ok(ExtReal::NegInf));
        assert_eq!(ExtReal::PosInf.add(&ExtReal::NegInf), Err(Error::IllegalSum));
        assert_eq!(ExtReal::NegInf.add(&ExtReal::PosInf), Err(Error::IllegalSum));
        assert_eq!(e(2).add(&e(5)), Ok(e(7)));
        assert_eq!(ExtReal::PosInf.add(&ExtReal::PosInf), Ok(ExtReal::PosInf));
    }

    #[test]
    fn scaling_rules() {
        assert_eq!(ExtReal::PosInf.scale(&int(-2)), ExtReal::NegInf);
        assert_eq!(ExtReal::PosInf.scale(&int(0)), e(0));
        assert_eq!(ExtReal::NegInf.scale(&int(0)), e(0));
        assert_eq!(e(4).scale(&int(3)), e(12));
        assert_eq!(ExtReal::NegInf.scale(&rat(1, 2)), ExtReal::NegInf);
    }

    #[test]
    fn signs() {
        assert_eq!(ExtReal::PosInf.sign(), 1);
        assert_eq!(e(0).sign(), 0);
        assert_eq!(e(-5).sign(), -1);
        assert_eq!(ExtReal::NegInf.sign(), -1);
    }

    #[test]
    fn sup_and_inf() {
        assert_eq!(sup(&[]), ExtReal::NegInf);
        assert_eq!(sup(&[e(3), ExtReal::PosInf, e(-1)]), ExtReal::PosInf);
        assert_eq!(sup(&[e(1), e(2)]), e(2));
        assert_eq!(inf(&[]), ExtReal::PosInf);
        assert_eq!(inf(&[e(3), ExtReal::NegInf]), ExtReal::NegInf);
        assert_eq!(inf(&[e(5), e(2), e(9)]), e(2));
    }

    #[test]
    fn text_forms() {
        for s in ["inf", "-inf", "3", "-7/2", "0"] {
            assert_eq!(s.parse::<ExtReal>().unwrap().to_string(), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("1.5").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    fn arb_ext() -> impl Strategy<Value = ExtReal> {
        prop_oneof![
            1 => Just(ExtReal::PosInf),
            1 => Just(ExtReal::NegInf),
            4 => (-50i64..50, 1i64..20).prop_map(|(n, d)| ExtReal::Finite(rat(n, d))),
        ]
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn add_commutes_and_associates(a in arb_ext(), b in arb_ext(), c in arb_ext()) {
            if let Ok(ab) = a.add(&b) {
                prop_assert_eq!(Ok(ab.clone()), b.add(&a));
                if let (Ok(bc), Ok(abc)) = (b.add(&c), ab.add(&c)) {
                    prop_assert_eq!(a.add(&bc), Ok(abc));
                }
            }
        }

        #[test]
        fn scale_distributes_over_legal_sums(alpha in arb_rat(), a in arb_ext(), b in arb_ext()) {
            if let Ok(ab) = a.add(&b) {
                let lhs = ab.scale(&alpha);
                let rhs = a.scale(&alpha).add(&b.scale(&alpha)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn scale_composes(alpha in arb_rat(), beta in arb_rat(), a in arb_ext()) {
            prop_assert_eq!(a.scale(&beta).scale(&alpha), a.scale(&(&alpha * &beta)));
        }

        #[test]
        fn order_is_total_with_infinite_bounds(a in arb_ext(), b in arb_ext()) {
            prop_assert!(ExtReal::NegInf <= a && a <= ExtReal::PosInf);
            let lt = a < b;
            let gt = a > b;
            let eq = a == b;
            prop_assert_eq!(u8::from(lt) + u8::from(gt) + u8::from(eq), 1);
        }
    }
}
