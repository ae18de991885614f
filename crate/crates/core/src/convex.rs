//! Affine extended functions, extended subgradients and support relations
//! for convex functions `g: ℝ^d → ℝ ∪ {∞}`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extreal::{self, serde_rational, ExtReal, Rational};
use crate::geometry::{Polytope, RatVec};
use crate::linext::{ExtFunction, LinExt};

/// `h(x) = f(x − x₀) + β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AffExtJson", into = "AffExtJson")]
pub struct AffExt {
    f: LinExt,
    anchor: RatVec,
    offset: Rational,
}

impl AffExt {
    pub fn new(f: LinExt, anchor: RatVec, offset: Rational) -> Result<Self> {
        if anchor.dim() != f.dim() {
            return Err(Error::DimensionMismatch {
                expected: f.dim(),
                found: anchor.dim(),
            });
        }
        Ok(AffExt { f, anchor, offset })
    }

    /// `f` itself, anchored at the origin with zero offset.
    pub fn linear(f: LinExt) -> Self {
        let anchor = RatVec::zeros(f.dim());
        AffExt {
            f,
            anchor,
            offset: Rational::zero(),
        }
    }

    pub fn f(&self) -> &LinExt {
        &self.f
    }

    pub fn anchor(&self) -> &RatVec {
        &self.anchor
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn eval(&self, x: &RatVec) -> Result<ExtReal> {
        Ok(self.f.eval(&x.sub(&self.anchor)?)?.add_finite(&self.offset))
    }

    /// The same function written with anchor `x1`, which must be a point
    /// where `h` is finite.
    pub fn rebase(&self, x1: &RatVec) -> Result<AffExt> {
        match self.eval(x1)? {
            ExtReal::Finite(beta) => Ok(AffExt {
                f: self.f.clone(),
                anchor: x1.clone(),
                offset: beta,
            }),
            _ => Err(Error::NotFiniteAtPoint),
        }
    }
}

impl ExtFunction for AffExt {
    fn dim(&self) -> usize {
        AffExt::dim(self)
    }

    fn eval(&self, x: &RatVec) -> Result<ExtReal> {
        AffExt::eval(self, x)
    }
}

impl fmt::Display for AffExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {} + {}", self.f, self.anchor, self.offset)
    }
}

#[derive(Serialize, Deserialize)]
struct AffExtJson {
    f: LinExt,
    anchor: RatVec,
    #[serde(with = "serde_rational")]
    offset: Rational,
}

impl TryFrom<AffExtJson> for AffExt {
    type Error = Error;

    fn try_from(raw: AffExtJson) -> Result<Self> {
        AffExt::new(raw.f, raw.anchor, raw.offset)
    }
}

impl From<AffExt> for AffExtJson {
    fn from(h: AffExt) -> Self {
        AffExtJson {
            f: h.f,
            anchor: h.anchor,
            offset: h.offset,
        }
    }
}

pub type EvalFn = Arc<dyn Fn(&RatVec) -> ExtReal + Send + Sync>;
pub type SelectorFn = Arc<dyn Fn(&RatVec) -> Option<LinExt> + Send + Sync>;

/// Where a convex function is finite, as far as grid generation cares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainHint {
    Everywhere,
    /// The probability simplex.
    Simplex,
    /// The nonnegative orthant.
    Orthant,
    Polytope(Polytope),
    /// Binary distributions with `p(1)` in an interval.
    BinaryInterval {
        lo: Rational,
        hi: Rational,
        lo_closed: bool,
        hi_closed: bool,
    },
    /// A finite set of points (table-backed functions).
    Points(Vec<RatVec>),
}

/// A proper convex function given by an evaluator and one or more
/// extended-subgradient selectors. The first selector is primary; the
/// others are alternates consulted when the primary one is unsuitable.
#[derive(Clone)]
pub struct ConvexSpec {
    dim: usize,
    eval: EvalFn,
    selectors: Vec<SelectorFn>,
    domain: DomainHint,
}

impl fmt::Debug for ConvexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexSpec")
            .field("dim", &self.dim)
            .field("selectors", &self.selectors.len())
            .field("domain", &self.domain)
            .finish()
    }
}

impl ConvexSpec {
    pub fn new<E, S>(dim: usize, domain: DomainHint, eval: E, selector: S) -> Self
    where
        E: Fn(&RatVec) -> ExtReal + Send + Sync + 'static,
        S: Fn(&RatVec) -> Option<LinExt> + Send + Sync + 'static,
    {
        ConvexSpec {
            dim,
            eval: Arc::new(eval),
            selectors: vec![Arc::new(selector)],
            domain,
        }
    }

    pub fn with_alternate<S>(mut self, selector: S) -> Self
    where
        S: Fn(&RatVec) -> Option<LinExt> + Send + Sync + 'static,
    {
        self.selectors.push(Arc::new(selector));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &DomainHint {
        &self.domain
    }

    fn check_dim(&self, x: &RatVec) -> Result<()> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            })
        }
    }

    /// `g(x)`; a `−∞` value means the evaluator is not a proper function.
    pub fn eval(&self, x: &RatVec) -> Result<ExtReal> {
        self.check_dim(x)?;
        match (self.eval)(x) {
            ExtReal::NegInf => Err(Error::ImproperValue {
                point: x.to_string(),
            }),
            v => Ok(v),
        }
    }

    pub fn in_domain(&self, x: &RatVec) -> Result<bool> {
        Ok(self.eval(x)?.is_finite())
    }

    /// The primary selector's extended subgradient at `x`.
    pub fn subgradient(&self, x: &RatVec) -> Result<LinExt> {
        self.check_dim(x)?;
        (self.selectors[0])(x).ok_or_else(|| Error::SelectorUnavailable {
            point: x.to_string(),
        })
    }

    /// Every registered selector's answer at `x`, primary first.
    pub fn subgradients(&self, x: &RatVec) -> Result<Vec<LinExt>> {
        self.check_dim(x)?;
        Ok(self.selectors.iter().filter_map(|s| s(x)).collect())
    }

    /// The supporting affine extended function `g(x₀) + f(· − x₀)` from the
    /// primary selector.
    pub fn support_at(&self, x0: &RatVec) -> Result<AffExt> {
        let value = self.eval(x0)?;
        let ExtReal::Finite(beta) = value else {
            return Err(Error::AnchorOutsideDomain);
        };
        AffExt::new(self.subgradient(x0)?, x0.clone(), beta)
    }
}

impl ExtFunction for ConvexSpec {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &RatVec) -> Result<ExtReal> {
        ConvexSpec::eval(self, x)
    }
}

/// `a ≥ b − tol` under the extended order, with `tol` only relaxing
/// comparisons between finite values.
fn ge_within(a: &ExtReal, b: &ExtReal, tol: &Rational) -> bool {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => x >= &(y - tol),
        _ => a >= b,
    }
}

fn eq_within(a: &ExtReal, b: &ExtReal, tol: &Rational) -> bool {
    ge_within(a, b, tol) && ge_within(b, a, tol)
}

/// Outcome of checking an inequality `lhs ≥ rhs` over test points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PointCheck {
    Pass { points: usize },
    Counterexample { x: RatVec, lhs: ExtReal, rhs: ExtReal },
}

impl PointCheck {
    pub fn passed(&self) -> bool {
        matches!(self, PointCheck::Pass { .. })
    }
}

/// Checks `g(x) ≥ g(x₀) + f(x − x₀)` at every test point.
pub fn verify_subgradient(
    g: &ConvexSpec,
    x0: &RatVec,
    f: &LinExt,
    testpoints: &[RatVec],
) -> Result<PointCheck> {
    verify_subgradient_within(g, x0, f, testpoints, &Rational::zero())
}

/// [`verify_subgradient`] allowing finite comparisons to miss by `tol`.
pub fn verify_subgradient_within(
    g: &ConvexSpec,
    x0: &RatVec,
    f: &LinExt,
    testpoints: &[RatVec],
    tol: &Rational,
) -> Result<PointCheck> {
    let ExtReal::Finite(g0) = g.eval(x0)? else {
        return Err(Error::AnchorOutsideDomain);
    };
    let h = AffExt::new(f.clone(), x0.clone(), g0)?;
    for x in testpoints {
        let lhs = g.eval(x)?;
        let rhs = h.eval(x)?;
        if !ge_within(&lhs, &rhs, tol) {
            return Ok(PointCheck::Counterexample {
                x: x.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(PointCheck::Pass {
        points: testpoints.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SupportCheck {
    Pass { points: usize },
    AnchorMismatch { h: ExtReal, g: ExtReal },
    Above { x: RatVec, h: ExtReal, g: ExtReal },
}

impl SupportCheck {
    pub fn passed(&self) -> bool {
        matches!(self, SupportCheck::Pass { .. })
    }
}

/// Checks `h(x₀) = g(x₀)` and `h ≤ g` on the test points.
pub fn supports(h: &AffExt, g: &ConvexSpec, x0: &RatVec, testpoints: &[RatVec]) -> Result<SupportCheck> {
    supports_within(h, g, x0, testpoints, &Rational::zero())
}

pub fn supports_within(
    h: &AffExt,
    g: &ConvexSpec,
    x0: &RatVec,
    testpoints: &[RatVec],
    tol: &Rational,
) -> Result<SupportCheck> {
    let h0 = h.eval(x0)?;
    let g0 = g.eval(x0)?;
    if !eq_within(&h0, &g0, tol) {
        return Ok(SupportCheck::AnchorMismatch { h: h0, g: g0 });
    }
    for x in testpoints {
        let hx = h.eval(x)?;
        let gx = g.eval(x)?;
        if !ge_within(&gx, &hx, tol) {
            return Ok(SupportCheck::Above {
                x: x.clone(),
                h: hx,
                g: gx,
            });
        }
    }
    Ok(SupportCheck::Pass {
        points: testpoints.len(),
    })
}

/// Pointwise supremum of a finite family; `−∞` for the empty family.
pub fn sup_family_eval(hs: &[AffExt], x: &RatVec) -> Result<ExtReal> {
    let values = hs.iter().map(|h| h.eval(x)).collect::<Result<Vec<_>>>()?;
    Ok(extreal::sup(&values))
}

/// For `x` outside the polytope `domain`, the family
/// `{f(· − x) + β : β ∈ ladder}` where `f` is `−∞` on `domain − x`. Each
/// member lies below any convex function whose effective domain is inside
/// `domain`, and takes the value `β` at `x`.
pub fn indicator_family(domain: &Polytope, x: &RatVec, ladder: &[Rational]) -> Result<Vec<AffExt>> {
    let f = LinExt::indicator_neg_on(&domain.shifted(x)?)?;
    ladder
        .iter()
        .map(|beta| AffExt::new(f.clone(), x.clone(), beta.clone()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum StrictnessVerdict {
    StrictOnGrid { points: usize },
    SharedSupport { a: RatVec, b: RatVec, f: LinExt },
}

/// Looks for distinct grid points `a`, `b` such that the selector's
/// subgradient at `a` also supports `g` at `b`, i.e.
/// `g(b) = g(a) + f_a(b − a)` exactly.
pub fn strict_convexity_probe(g: &ConvexSpec, grid: &[RatVec]) -> Result<StrictnessVerdict> {
    let mut values = Vec::with_capacity(grid.len());
    let mut subgrads = Vec::with_capacity(grid.len());
    for p in grid {
        let ExtReal::Finite(v) = g.eval(p)? else {
            return Err(Error::PredOutsideDomain {
                point: p.to_string(),
            });
        };
        values.push(v);
        subgrads.push(g.subgradient(p)?);
    }
    for (i, a) in grid.iter().enumerate() {
        for (j, b) in grid.iter().enumerate() {
            if i == j || a == b {
                continue;
            }
            let predicted = subgrads[i].eval(&b.sub(a)?)?.add_finite(&values[i]);
            if predicted == ExtReal::Finite(values[j].clone()) {
                return Ok(StrictnessVerdict::SharedSupport {
                    a: a.clone(),
                    b: b.clone(),
                    f: subgrads[i].clone(),
                });
            }
        }
    }
    Ok(StrictnessVerdict::StrictOnGrid { points: grid.len() })
}
