//! Named convex functions with analytic extended-subgradient selectors.
//!
//! Logarithms are rounded to `digits` decimal places by
//! [`precision::ln`]. Scores built from an entry's evaluator and selector
//! reuse the same rounded logarithms, so e.g. the subtangent rule of the
//! negative entropy equals the rounded `ln p(y)` exactly.

use num_traits::{One, Signed, Zero};

use crate::convex::{ConvexSpec, DomainHint};
use crate::error::{Error, Result};
use crate::extreal::{parse_rational, ExtReal, Rational};
use crate::geometry::RatVec;
use crate::grid::{farey_box, farey_simplex};
use crate::linext::LinExt;
use crate::precision::ln;
use crate::scoring::OutcomeSet;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: ConvexSpec,
    /// Present for functions meant to induce scoring rules.
    pub outcomes: Option<OutcomeSet>,
    pub notes: String,
    /// Points of the effective domain where the selector is defined.
    pub default_grid: Vec<RatVec>,
    /// Points at which selectors are checked, including points off the
    /// effective domain.
    pub test_points: Vec<RatVec>,
}

const GRID_DENOMINATOR: u32 = 8;

fn in_simplex(q: &RatVec) -> bool {
    q.coords().iter().all(|c| !c.is_negative()) && q.sum().is_one()
}

fn in_orthant(q: &RatVec) -> bool {
    q.coords().iter().all(|c| !c.is_negative())
}

fn ln_or_panic(x: &Rational, digits: u32) -> Rational {
    ln(x, digits).expect("argument is positive")
}

/// `x·ln x` with `0·ln 0 = 0`.
fn xlogx(x: &Rational, digits: u32) -> Rational {
    if x.is_zero() {
        Rational::zero()
    } else {
        x * ln_or_panic(x, digits)
    }
}

/// `−δ_y` for every `y` with `q(y) = 0`, in outcome order.
fn off_support_dirs(q: &RatVec) -> Vec<RatVec> {
    (0..q.dim())
        .filter(|&y| q[y].is_zero())
        .map(|y| RatVec::unit(q.dim(), y).neg())
        .collect()
}

fn simplex_test_points(n: usize) -> Vec<RatVec> {
    let mut pts = farey_simplex(n, GRID_DENOMINATOR);
    // Off-simplex points, including rays through the simplex and points
    // with zero or negative coordinates.
    let lo = Rational::from_integer((-1).into());
    let hi = Rational::from_integer(2.into());
    let den = if n <= 2 { 2 } else { 1 };
    pts.extend(farey_box(n, &lo, &hi, den).into_iter().filter(|x| !in_simplex(x)));
    pts
}

fn require_binary(outcomes: &OutcomeSet) -> Result<()> {
    if outcomes.len() == 2 {
        Ok(())
    } else {
        Err(Error::NonBinary(outcomes.len()))
    }
}

/// `g(q) = Σ q(y) ln q(y)` on the simplex, `+∞` elsewhere.
pub fn neg_entropy(outcomes: &OutcomeSet, digits: u32) -> Result<CatalogEntry> {
    let n = outcomes.len();
    let eval = move |q: &RatVec| {
        if !in_simplex(q) {
            return ExtReal::PosInf;
        }
        ExtReal::Finite(q.coords().iter().map(|c| xlogx(c, digits)).sum())
    };
    // Gradient 1 + ln q(y) on the support; vertical directions off it.
    let selector = move |q: &RatVec| {
        if !in_simplex(q) {
            return None;
        }
        let tail = RatVec::new(
            q.coords()
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        Rational::zero()
                    } else {
                        Rational::one() + ln_or_panic(c, digits)
                    }
                })
                .collect(),
        );
        Some(LinExt::new(q.dim(), off_support_dirs(q), tail).expect("orthogonal by construction"))
    };
    Ok(CatalogEntry {
        name: "neg-entropy".into(),
        spec: ConvexSpec::new(n, DomainHint::Simplex, eval, selector),
        outcomes: Some(outcomes.clone()),
        notes: "negative entropy; its subtangent rule is the log score".into(),
        default_grid: farey_simplex(n, GRID_DENOMINATOR),
        test_points: simplex_test_points(n),
    })
}

/// `g(q) = Σ q(y)² − 1` on all of `ℝ^n` with gradient `2q`.
pub fn brier(outcomes: &OutcomeSet) -> Result<CatalogEntry> {
    let n = outcomes.len();
    let eval = |q: &RatVec| ExtReal::Finite(q.norm_sq() - Rational::one());
    let selector = |q: &RatVec| Some(LinExt::finite(q.scale(&Rational::from_integer(2.into()))));
    Ok(CatalogEntry {
        name: "brier".into(),
        spec: ConvexSpec::new(n, DomainHint::Everywhere, eval, selector),
        outcomes: Some(outcomes.clone()),
        notes: "squared norm; its subtangent rule is the quadratic score".into(),
        default_grid: farey_simplex(n, GRID_DENOMINATOR),
        test_points: simplex_test_points(n),
    })
}

fn support_mask(q: &RatVec) -> usize {
    (0..q.dim()).filter(|&y| !q[y].is_zero()).fold(0, |m, y| m | (1 << y))
}

fn format_set(outcomes: &OutcomeSet, mask: usize) -> String {
    let items: Vec<&str> = outcomes
        .labels()
        .iter()
        .enumerate()
        .filter(|(y, _)| mask & (1 << y) != 0)
        .map(|(_, l)| l.as_str())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// `g(p) = G(Supp p)` on the simplex for a set function given by bitmask
/// (`values[mask]`, bit `y` for outcome `y`). Convexity needs `G` to shrink
/// as sets grow: `X ⊆ X′ ⟹ G(X) ≥ G(X′)`, checked over nonempty sets.
pub fn set_function_rule(
    outcomes: &OutcomeSet,
    values: Vec<Rational>,
    name: &str,
) -> Result<CatalogEntry> {
    let n = outcomes.len();
    if n >= usize::BITS as usize || values.len() != 1 << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n.min(usize::BITS as usize - 1),
            found: values.len(),
        });
    }
    for small in 1..values.len() {
        for large in 1..values.len() {
            if small != large && small & large == small && values[small] < values[large] {
                return Err(Error::NotMonotone {
                    smaller: format_set(outcomes, small),
                    larger: format_set(outcomes, large),
                });
            }
        }
    }
    let table = values.clone();
    let eval = move |q: &RatVec| {
        if in_simplex(q) {
            ExtReal::Finite(table[support_mask(q)].clone())
        } else {
            ExtReal::PosInf
        }
    };
    let selector = |q: &RatVec| {
        if !in_simplex(q) {
            return None;
        }
        Some(
            LinExt::new(q.dim(), off_support_dirs(q), RatVec::zeros(q.dim()))
                .expect("orthogonal by construction"),
        )
    };
    Ok(CatalogEntry {
        name: name.into(),
        spec: ConvexSpec::new(n, DomainHint::Simplex, eval, selector),
        outcomes: Some(outcomes.clone()),
        notes: "set function of the support; scores G(Supp p) on the support, -inf off it".into(),
        default_grid: farey_simplex(n, GRID_DENOMINATOR),
        test_points: simplex_test_points(n),
    })
}

/// `G(X) = n − |X|`: a prediction with support size `n − k` scores `k`.
pub fn support_size(outcomes: &OutcomeSet) -> Result<CatalogEntry> {
    let n = outcomes.len();
    let values = (0..1usize << n)
        .map(|m| Rational::from_integer(((n as u32 - m.count_ones()) as i64).into()))
        .collect();
    set_function_rule(outcomes, values, "support-size")
}

/// Closure flags of an interval endpoint pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Closure {
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Closure {
    pub const CLOSED: Closure = Closure {
        lo_closed: true,
        hi_closed: true,
    };
    pub const OPEN: Closure = Closure {
        lo_closed: false,
        hi_closed: false,
    };

    pub fn parse(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("closure flags {s:?}")))?;
        let flag = |t: &str| match t {
            "closed" => Ok(true),
            "open" => Ok(false),
            _ => Err(Error::Parse(format!("closure flag {t:?}"))),
        };
        Ok(Closure {
            lo_closed: flag(lo)?,
            hi_closed: flag(hi)?,
        })
    }

    fn as_str(self) -> &'static str {
        match (self.lo_closed, self.hi_closed) {
            (true, true) => "closed-closed",
            (true, false) => "closed-open",
            (false, true) => "open-closed",
            (false, false) => "open-open",
        }
    }
}

fn binary_entropy(s: &Rational, digits: u32) -> Rational {
    xlogx(s, digits) + xlogx(&(Rational::one() - s), digits)
}

/// Binary negative entropy with its domain squeezed into `p(1) ∈ [a, b]`:
/// `g(p) = H((p(1) − a)/(b − a))`, with the endpoints included according to
/// `closure`. At an included endpoint the slope is infinite and the
/// selector returns a vertical direction: the outward simplex vertex
/// direction when the endpoint is a vertex, otherwise the direction along
/// the simplex edge.
pub fn squeezed_neg_entropy(a: &Rational, b: &Rational, closure: Closure, digits: u32) -> Result<CatalogEntry> {
    if a.is_negative() || a >= b || b > &Rational::one() {
        return Err(Error::BadInterval);
    }
    let (a, b) = (a.clone(), b.clone());
    let width = &b - &a;
    let in_domain = {
        let (a, b) = (a.clone(), b.clone());
        move |q: &RatVec| -> bool {
            if q.dim() != 2 || !in_simplex(q) {
                return false;
            }
            let t = &q[1];
            let above = if closure.lo_closed { t >= &a } else { t > &a };
            let below = if closure.hi_closed { t <= &b } else { t < &b };
            above && below
        }
    };
    let squeeze = {
        let (a, width) = (a.clone(), width.clone());
        move |q: &RatVec| (&q[1] - &a) / &width
    };
    let eval = {
        let (in_domain, squeeze) = (in_domain.clone(), squeeze.clone());
        move |q: &RatVec| {
            if in_domain(q) {
                ExtReal::Finite(binary_entropy(&squeeze(q), digits))
            } else {
                ExtReal::PosInf
            }
        }
    };
    let selector = {
        let (a, b) = (a.clone(), b.clone());
        move |q: &RatVec| {
            if !in_domain(q) {
                return None;
            }
            let s = squeeze(q);
            let (dirs, tail) = if s.is_zero() {
                let v = if a.is_zero() {
                    RatVec::from_ints(&[0, -1])
                } else {
                    RatVec::from_ints(&[1, -1])
                };
                (vec![v], RatVec::zeros(2))
            } else if s.is_one() {
                let v = if b.is_one() {
                    RatVec::from_ints(&[-1, 0])
                } else {
                    RatVec::from_ints(&[-1, 1])
                };
                (vec![v], RatVec::zeros(2))
            } else {
                let slope = (ln_or_panic(&s, digits) - ln_or_panic(&(Rational::one() - &s), digits)) / &width;
                let half = slope / Rational::from_integer(2.into());
                (vec![], RatVec::new(vec![-half.clone(), half]))
            };
            Some(LinExt::new(2, dirs, tail).expect("orthogonal by construction"))
        }
    };
    let outcomes = OutcomeSet::numbered(2)?;
    let spec = ConvexSpec::new(
        2,
        DomainHint::BinaryInterval {
            lo: a.clone(),
            hi: b.clone(),
            lo_closed: closure.lo_closed,
            hi_closed: closure.hi_closed,
        },
        eval,
        selector,
    );
    let default_grid = farey_simplex(2, 16)
        .into_iter()
        .filter(|q| spec.in_domain(q).unwrap_or(false))
        .collect();
    Ok(CatalogEntry {
        name: format!("squeezed:{a},{b},{}", closure.as_str()),
        spec,
        outcomes: Some(outcomes),
        notes: "binary negative entropy with a squeezed domain".into(),
        default_grid,
        test_points: simplex_test_points(2),
    })
}

/// `g(p) = Σ p(y) ln(p(y) / Σ p)` on the nonnegative orthant: positively
/// homogeneous, with subgradient rule `ln p(y)`.
pub fn hendrickson(outcomes: &OutcomeSet, digits: u32) -> Result<CatalogEntry> {
    let n = outcomes.len();
    let eval = move |q: &RatVec| {
        if !in_orthant(q) {
            return ExtReal::PosInf;
        }
        let total = q.sum();
        if total.is_zero() {
            return ExtReal::zero();
        }
        ExtReal::Finite(
            q.coords()
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| c * ln_or_panic(&(c / &total), digits))
                .sum(),
        )
    };
    let selector = move |q: &RatVec| {
        if !in_orthant(q) {
            return None;
        }
        let total = q.sum();
        if total.is_zero() {
            // Every nonzero point of the orthant is sent to −∞.
            let ones = RatVec::new(vec![-Rational::one(); q.dim()]);
            return Some(LinExt::new(q.dim(), vec![ones], RatVec::zeros(q.dim())).unwrap());
        }
        let tail = RatVec::new(
            q.coords()
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        Rational::zero()
                    } else {
                        ln_or_panic(&(c / &total), digits)
                    }
                })
                .collect(),
        );
        Some(LinExt::new(q.dim(), off_support_dirs(q), tail).expect("orthogonal by construction"))
    };
    let mut default_grid = farey_simplex(n, GRID_DENOMINATOR);
    default_grid.extend(
        farey_simplex(n, 4)
            .into_iter()
            .map(|q| q.scale(&Rational::from_integer(3.into()))),
    );
    let mut test_points = simplex_test_points(n);
    test_points.extend(default_grid.iter().cloned());
    Ok(CatalogEntry {
        name: "hendrickson".into(),
        spec: ConvexSpec::new(n, DomainHint::Orthant, eval, selector),
        outcomes: Some(outcomes.clone()),
        notes: "positively homogeneous entropy on the nonnegative orthant".into(),
        default_grid,
        test_points,
    })
}

/// `g(z) = z·1 − 1` with selector `z ↦ z·1`: subtangent rule all 0,
/// subgradient rule all 1.
pub fn hyperplane(outcomes: &OutcomeSet) -> Result<CatalogEntry> {
    let n = outcomes.len();
    let eval = |q: &RatVec| ExtReal::Finite(q.sum() - Rational::one());
    let selector = |q: &RatVec| Some(LinExt::finite(RatVec::new(vec![Rational::one(); q.dim()])));
    Ok(CatalogEntry {
        name: "hyperplane".into(),
        spec: ConvexSpec::new(n, DomainHint::Everywhere, eval, selector),
        outcomes: Some(outcomes.clone()),
        notes: "affine function whose subtangent and subgradient rules differ".into(),
        default_grid: farey_simplex(n, GRID_DENOMINATOR),
        test_points: simplex_test_points(n),
    })
}

/// `g ≡ 0` with the zero selector.
pub fn zero(outcomes: &OutcomeSet) -> Result<CatalogEntry> {
    let n = outcomes.len();
    Ok(CatalogEntry {
        name: "zero".into(),
        spec: ConvexSpec::new(
            n,
            DomainHint::Everywhere,
            |_: &RatVec| ExtReal::zero(),
            |q: &RatVec| Some(LinExt::zero(q.dim())),
        ),
        outcomes: Some(outcomes.clone()),
        notes: "the zero function".into(),
        default_grid: farey_simplex(n, GRID_DENOMINATOR),
        test_points: simplex_test_points(n),
    })
}

/// Binary demo of a strictly convex function with boundary layer: the
/// bounded strictly convex `Σ p² − 1` on the open simplex, and the
/// constant 1 at both vertices; `+∞` off the simplex.
pub fn strict_boundary_layer() -> Result<CatalogEntry> {
    let eval = |q: &RatVec| {
        if !in_simplex(q) {
            ExtReal::PosInf
        } else if q[0].is_zero() || q[1].is_zero() {
            ExtReal::from(1)
        } else {
            ExtReal::Finite(q.norm_sq() - Rational::one())
        }
    };
    let selector = |q: &RatVec| {
        if !in_simplex(q) {
            return None;
        }
        if q[0].is_zero() || q[1].is_zero() {
            Some(LinExt::new(2, off_support_dirs(q), RatVec::zeros(2)).unwrap())
        } else {
            Some(LinExt::finite(q.scale(&Rational::from_integer(2.into()))))
        }
    };
    Ok(CatalogEntry {
        name: "strict-boundary-layer".into(),
        spec: ConvexSpec::new(2, DomainHint::Simplex, eval, selector),
        outcomes: Some(OutcomeSet::numbered(2)?),
        notes: "squared norm inside the simplex, value 1 at the vertices".into(),
        default_grid: farey_simplex(2, GRID_DENOMINATOR),
        test_points: simplex_test_points(2),
    })
}

/// The discontinuous 3-d function with the intro linear extended function
/// as an extended subgradient at `(1,0,0)`:
/// `+∞` for `z > 0`, `0` for `z < 0`, and on `z = 0`: `+∞` for `y > 0`,
/// `0` for `y < 0`, `x²/2` for `y = 0`.
pub fn intro_pair() -> CatalogEntry {
    let eval = |q: &RatVec| {
        let (x, y, z) = (&q[0], &q[1], &q[2]);
        if z.is_positive() {
            ExtReal::PosInf
        } else if z.is_negative() {
            ExtReal::zero()
        } else if y.is_positive() {
            ExtReal::PosInf
        } else if y.is_negative() {
            ExtReal::zero()
        } else {
            ExtReal::Finite(x * x / Rational::from_integer(2.into()))
        }
    };
    let selector = |q: &RatVec| {
        let (y, z) = (&q[1], &q[2]);
        if z.is_positive() || (z.is_zero() && y.is_positive()) {
            None
        } else if z.is_negative() || y.is_negative() {
            Some(LinExt::zero(3))
        } else {
            Some(
                LinExt::new(
                    3,
                    vec![RatVec::from_ints(&[0, 0, 1]), RatVec::from_ints(&[0, 1, 0])],
                    RatVec::new(vec![q[0].clone(), Rational::zero(), Rational::zero()]),
                )
                .unwrap(),
            )
        }
    };
    let spec = ConvexSpec::new(3, DomainHint::Everywhere, eval, selector);
    let lo = Rational::from_integer((-1).into());
    let hi = Rational::one();
    let test_points = farey_box(3, &lo, &hi, 2);
    let default_grid = test_points
        .iter()
        .filter(|q| spec.in_domain(q).unwrap_or(false))
        .cloned()
        .collect();
    CatalogEntry {
        name: "intro-3d".into(),
        spec,
        outcomes: None,
        notes: "discontinuous convex function on R^3 with a depth-2 subgradient".into(),
        default_grid,
        test_points,
    }
}

/// The intro linear extended function on `ℝ³`.
pub fn intro_linext() -> LinExt {
    LinExt::new(
        3,
        vec![RatVec::from_ints(&[0, 0, 1]), RatVec::from_ints(&[0, 1, 0])],
        RatVec::from_ints(&[1, 0, 0]),
    )
    .expect("canonical")
}

/// `g(x) = 0` for `x < 1`, `1` at `x = 1`, `+∞` for `x > 1`; at `x = 1`
/// the extended subgradient is `z ↦ ∞·z`.
pub fn step_1d() -> CatalogEntry {
    let one = Rational::one();
    let eval = {
        let one = one.clone();
        move |q: &RatVec| {
            if q[0] < one {
                ExtReal::zero()
            } else if q[0] == one {
                ExtReal::from(1)
            } else {
                ExtReal::PosInf
            }
        }
    };
    let selector = move |q: &RatVec| {
        if q[0] < one {
            Some(LinExt::zero(1))
        } else if q[0] == one {
            Some(LinExt::new(1, vec![RatVec::from_ints(&[1])], RatVec::zeros(1)).unwrap())
        } else {
            None
        }
    };
    let spec = ConvexSpec::new(1, DomainHint::Everywhere, eval, selector);
    let lo = Rational::from_integer((-2).into());
    let hi = Rational::from_integer(3.into());
    let test_points: Vec<RatVec> = crate::grid::farey_interval(&lo, &hi, 4)
        .into_iter()
        .map(|r| RatVec::new(vec![r]))
        .collect();
    let default_grid = test_points
        .iter()
        .filter(|q| spec.in_domain(q).unwrap_or(false))
        .cloned()
        .collect();
    CatalogEntry {
        name: "step-1d".into(),
        spec,
        outcomes: None,
        notes: "convex step function on R with a vertical support at 1".into(),
        default_grid,
        test_points,
    }
}

/// The worked examples that are not scoring-rule building blocks, plus the
/// hyperplane and positively homogeneous entropy entries on two outcomes.
pub fn worked_examples(digits: u32) -> Vec<CatalogEntry> {
    let binary = OutcomeSet::numbered(2).expect("distinct labels");
    vec![
        intro_pair(),
        step_1d(),
        hyperplane(&binary).expect("valid outcomes"),
        hendrickson(&binary, digits).expect("valid outcomes"),
    ]
}

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] = &[
    "neg-entropy",
    "brier",
    "support-size",
    "squeezed:a,b[,closed-closed|closed-open|open-closed|open-open]",
    "hendrickson",
    "hyperplane",
    "zero",
    "strict-boundary-layer",
    "intro-3d",
    "step-1d",
];

/// Looks up an entry by name. Scoring entries use `outcomes`; the binary
/// ones require two outcomes.
pub fn by_name(name: &str, outcomes: &OutcomeSet, digits: u32) -> Result<CatalogEntry> {
    if let Some(args) = name.strip_prefix("squeezed:") {
        require_binary(outcomes)?;
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() != 2 && parts.len() != 3 {
            return Err(Error::UnknownCatalogEntry(name.into()));
        }
        let a = parse_rational(parts[0])?;
        let b = parse_rational(parts[1])?;
        let closure = match parts.get(2) {
            Some(flags) => Closure::parse(flags)?,
            None => Closure::CLOSED,
        };
        let mut entry = squeezed_neg_entropy(&a, &b, closure, digits)?;
        entry.outcomes = Some(outcomes.clone());
        return Ok(entry);
    }
    match name {
        "neg-entropy" => neg_entropy(outcomes, digits),
        "brier" => brier(outcomes),
        "support-size" => support_size(outcomes),
        "hendrickson" => hendrickson(outcomes, digits),
        "hyperplane" => hyperplane(outcomes),
        "zero" => zero(outcomes),
        "strict-boundary-layer" => {
            require_binary(outcomes)?;
            let mut entry = strict_boundary_layer()?;
            entry.outcomes = Some(outcomes.clone());
            Ok(entry)
        }
        "intro-3d" => Ok(intro_pair()),
        "step-1d" => Ok(step_1d()),
        _ => Err(Error::UnknownCatalogEntry(name.into())),
    }
}
