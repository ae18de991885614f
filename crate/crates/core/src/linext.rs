//! Linear extended functions `f: ℝ^d → ℝ ∪ {±∞}`.
//!
//! Every such function is a chain of halfspace sign tests ending in a
//! finite linear function:
//!
//! ```text
//! for j in 1..=t:
//!     if vⱼ · x > 0 { return +∞ }
//!     if vⱼ · x < 0 { return −∞ }
//! return w · x
//! ```
//!
//! The directions are stored in the ambient space, pairwise orthogonal and
//! scaled so that their largest absolute coordinate is 1, and the tail `w`
//! is orthogonal to all of them. With those constraints the parameters are
//! unique, so structural equality is pointwise equality.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Rational};
use crate::geometry::{
    canonicalize_direction, dot, dot_unchecked, face_on_hyperplane, orthogonalize, project_out,
    supporting_direction_within, Polytope, RatVec,
};
use crate::sampling;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LinExtJson", into = "LinExtJson")]
pub struct LinExt {
    dim: usize,
    dirs: Vec<RatVec>,
    tail: RatVec,
}

/// Which part of the decomposition `S⁺ ∪ S⁻ ∪ F` a point falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Plus,
    Minus,
    Finite,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::Plus => "plus",
            Class::Minus => "minus",
            Class::Finite => "finite",
        })
    }
}

impl LinExt {
    /// Validates and canonicalizes a parameterization. Directions are
    /// rescaled but never rotated: non-orthogonal input is rejected.
    pub fn new(dim: usize, dirs: Vec<RatVec>, tail: RatVec) -> Result<Self> {
        for v in dirs.iter().chain(std::iter::once(&tail)) {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        if dirs.len() > dim {
            return Err(Error::TooDeep {
                depth: dirs.len(),
                dim,
            });
        }
        let mut canon = Vec::with_capacity(dirs.len());
        for (index, v) in dirs.iter().enumerate() {
            canon.push(canonicalize_direction(v).map_err(|_| Error::ZeroDirection { index })?);
        }
        for i in 0..canon.len() {
            for j in 0..i {
                if !dot_unchecked(&canon[i], &canon[j]).is_zero() {
                    return Err(Error::NotOrthogonal { i, j });
                }
            }
        }
        for (index, v) in canon.iter().enumerate() {
            if !dot_unchecked(&tail, v).is_zero() {
                return Err(Error::TailNotOrthogonal { index });
            }
        }
        Ok(LinExt {
            dim,
            dirs: canon,
            tail,
        })
    }

    /// Builds the function computed by an arbitrary (linearly independent)
    /// chain of tests, orthogonalizing directions and projecting the tail.
    /// Each Gram–Schmidt step leaves the function unchanged because the
    /// component removed from `vⱼ` is zero on the remaining subspace.
    pub fn from_chain(dim: usize, dirs: &[RatVec], tail: &RatVec) -> Result<Self> {
        let dirs = orthogonalize(dirs)?;
        let tail = project_out(tail, &dirs);
        LinExt::new(dim, dirs, tail)
    }

    pub fn finite(tail: RatVec) -> Self {
        LinExt {
            dim: tail.dim(),
            dirs: Vec::new(),
            tail,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::finite(RatVec::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dirs(&self) -> &[RatVec] {
        &self.dirs
    }

    pub fn tail(&self) -> &RatVec {
        &self.tail
    }

    pub fn depth(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_finite_linear(&self) -> bool {
        self.dirs.is_empty()
    }

    fn check_point(&self, x: &RatVec) -> Result<()> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            })
        }
    }

    pub fn eval(&self, x: &RatVec) -> Result<ExtReal> {
        self.check_point(x)?;
        for v in &self.dirs {
            let s = dot_unchecked(v, x);
            if s.is_positive() {
                return Ok(ExtReal::PosInf);
            }
            if s.is_negative() {
                return Ok(ExtReal::NegInf);
            }
        }
        Ok(ExtReal::Finite(dot_unchecked(&self.tail, x)))
    }

    pub fn classify(&self, x: &RatVec) -> Result<Class> {
        Ok(match self.eval(x)? {
            ExtReal::PosInf => Class::Plus,
            ExtReal::NegInf => Class::Minus,
            ExtReal::Finite(_) => Class::Finite,
        })
    }

    pub fn equals(&self, other: &LinExt) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(self == other)
    }

    /// `x ↦ ∞·sign(v·x)` off the hyperplane `v·x = 0`, `rest` on it.
    pub fn push_front(v: &RatVec, rest: &LinExt) -> Result<LinExt> {
        if v.dim() != rest.dim {
            return Err(Error::DimensionMismatch {
                expected: rest.dim,
                found: v.dim(),
            });
        }
        let v = canonicalize_direction(v).map_err(|_| Error::ZeroDirection { index: 0 })?;
        for (j, w) in rest.dirs.iter().enumerate() {
            if !dot_unchecked(&v, w).is_zero() {
                return Err(Error::NotOrthogonal { i: j + 1, j: 0 });
            }
        }
        if !dot_unchecked(&v, &rest.tail).is_zero() {
            return Err(Error::NotOrthogonal {
                i: rest.dirs.len() + 1,
                j: 0,
            });
        }
        let mut dirs = Vec::with_capacity(rest.dirs.len() + 1);
        dirs.push(v);
        dirs.extend(rest.dirs.iter().cloned());
        LinExt::new(rest.dim, dirs, rest.tail.clone())
    }

    /// A linear extended function equal to `−∞` on `conv(P)`, for a
    /// polytope `P` not containing the origin.
    ///
    /// Each step picks a direction `v` in the subspace orthogonal to the
    /// directions chosen so far with `v·z ≤ 0` on the remaining vertices,
    /// then keeps only the vertices with `v·z = 0`. The tail is zero.
    pub fn indicator_neg_on(p: &Polytope) -> Result<LinExt> {
        let dim = p.dim();
        let mut dirs: Vec<RatVec> = Vec::new();
        let mut face = Some(p.clone());
        while let Some(current) = face {
            let v = supporting_direction_within(&current, &dirs).map_err(|e| match e {
                Error::NoSupport => Error::ContainsOrigin,
                other => other,
            })?;
            face = face_on_hyperplane(&current, &v)?;
            dirs.push(v);
            if dirs.len() > dim {
                return Err(Error::ContainsOrigin);
            }
        }
        LinExt::new(dim, dirs, RatVec::zeros(dim))
    }

    /// A point where `self` and `other` evaluate differently, or `None` when
    /// the parameterizations coincide.
    pub fn distinguishing_point(&self, other: &LinExt) -> Result<Option<RatVec>> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let shared = self
            .dirs
            .iter()
            .zip(&other.dirs)
            .take_while(|(a, b)| a == b)
            .count();
        match (self.dirs.get(shared), other.dirs.get(shared)) {
            (Some(a), Some(b)) => Ok(Some(separating_point(a, b))),
            // One chain stops while the other continues: the next direction
            // of the longer chain lies in the common subspace and is sent to
            // +∞ by it, but to a finite value by the shorter one.
            (Some(a), None) => Ok(Some(a.clone())),
            (None, Some(b)) => Ok(Some(b.clone())),
            (None, None) if self.tail != other.tail => {
                Ok(Some(self.tail.sub(&other.tail)?))
            }
            (None, None) => Ok(None),
        }
    }
}

/// For distinct canonical unit-like `a`, `b` in a common subspace, returns
/// `x` in that subspace with `a·x > 0 > b·x`.
fn separating_point(a: &RatVec, b: &RatVec) -> RatVec {
    let ab = dot_unchecked(a, b);
    let bb = b.norm_sq();
    // Component of a orthogonal to b, scaled by |b|².
    let u = a.scale(&bb).sub(&b.scale(&ab)).expect("same dimension");
    let au = dot_unchecked(a, &u);
    if au.is_zero() {
        // a and b are parallel; distinct canonical forms means b = −a.
        return a.clone();
    }
    let s = if ab.is_positive() {
        au / (ab * Rational::from_integer(2.into()))
    } else {
        Rational::from_integer(1.into())
    };
    u.sub(&b.scale(&s)).expect("same dimension")
}

impl fmt::Display for LinExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.dirs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "] tail {}", self.tail)
    }
}

#[derive(Serialize, Deserialize)]
struct LinExtJson {
    dim: usize,
    dirs: Vec<RatVec>,
    tail: RatVec,
}

impl TryFrom<LinExtJson> for LinExt {
    type Error = Error;

    fn try_from(raw: LinExtJson) -> Result<Self> {
        LinExt::new(raw.dim, raw.dirs, raw.tail)
    }
}

impl From<LinExt> for LinExtJson {
    fn from(f: LinExt) -> Self {
        LinExtJson {
            dim: f.dim,
            dirs: f.dirs,
            tail: f.tail,
        }
    }
}

/// Anything evaluable as a map `ℝ^d → ℝ̄`.
pub trait ExtFunction {
    fn dim(&self) -> usize;
    fn eval(&self, x: &RatVec) -> Result<ExtReal>;
}

impl ExtFunction for LinExt {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &RatVec) -> Result<ExtReal> {
        LinExt::eval(self, x)
    }
}

/// Wraps a closure as an [`ExtFunction`], e.g. to feed a candidate that is
/// not known to be linear extended into [`check_axioms`].
pub struct FnExt<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&RatVec) -> ExtReal> FnExt<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnExt { dim, f }
    }
}

impl<F: Fn(&RatVec) -> ExtReal> ExtFunction for FnExt<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &RatVec) -> Result<ExtReal> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok((self.f)(x))
    }
}

/// One sample `(x, x′, α)` for the axiom checker.
pub type AxiomSample = (RatVec, RatVec, Rational);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Scaling,
    Additivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub x: RatVec,
    /// The second point for additivity, or `α·x` for scaling.
    pub other: RatVec,
    #[serde(with = "crate::extreal::serde_rational")]
    pub alpha: Rational,
    pub expected: ExtReal,
    pub found: ExtReal,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub scaling_checks: usize,
    pub additivity_checks: usize,
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `f(αx) = α·f(x)` and, when `f(x) + f(x′)` is legal,
/// `f(x + x′) = f(x) + f(x′)`. Stops at the first counterexample.
pub fn check_axioms<F: ExtFunction + ?Sized>(f: &F, samples: &[AxiomSample]) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    for (x, x2, alpha) in samples {
        report.samples += 1;
        let fx = f.eval(x)?;
        let scaled = x.scale(alpha);
        let lhs = f.eval(&scaled)?;
        let rhs = fx.scale(alpha);
        report.scaling_checks += 1;
        if lhs != rhs {
            report.failure = Some(AxiomFailure {
                axiom: Axiom::Scaling,
                x: x.clone(),
                other: scaled,
                alpha: alpha.clone(),
                expected: rhs,
                found: lhs,
            });
            return Ok(report);
        }
        let fx2 = f.eval(x2)?;
        if let Ok(sum) = fx.add(&fx2) {
            report.additivity_checks += 1;
            let at_sum = f.eval(&x.add(x2)?)?;
            if at_sum != sum {
                report.failure = Some(AxiomFailure {
                    axiom: Axiom::Additivity,
                    x: x.clone(),
                    other: x2.clone(),
                    alpha: alpha.clone(),
                    expected: sum,
                    found: at_sum,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Reproducible axiom samples tailored to `f`: coordinate vectors, the
/// directions themselves, points inside the nested subspaces, and random
/// rationals with denominators at most 64.
pub fn default_axiom_samples(f: &LinExt, count: usize, seed: u64) -> Vec<AxiomSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = sampling::point_for(&mut rng, f);
            let x2 = if rng.gen_bool(0.3) {
                // Pair against a point of opposite or related class.
                let y = sampling::point_for(&mut rng, f);
                let scale = sampling::rational(&mut rng, 8);
                y.sub(&x.scale(&scale)).expect("same dimension")
            } else {
                sampling::point_for(&mut rng, f)
            };
            let alpha = sampling::alpha(&mut rng);
            (x, x2, alpha)
        })
        .collect()
}

/// Runs [`check_axioms`] on [`default_axiom_samples`] plus caller samples.
pub fn check_axioms_seeded(
    f: &LinExt,
    extra: &[AxiomSample],
    count: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let mut samples = extra.to_vec();
    samples.extend(default_axiom_samples(f, count, seed));
    check_axioms(f, &samples)
}

/// Checks `dot` against dimension; exposed for callers composing points.
pub fn dot_with_tail(f: &LinExt, x: &RatVec) -> Result<Rational> {
    dot(&f.tail, x)
}
