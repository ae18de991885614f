//! Exact rational vectors, Gram–Schmidt without normalization, and
//! supporting-hyperplane search for V-represented polytopes.

use std::fmt;
use std::ops::Index;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extreal::{format_rational, parse_rational, Rational};
use crate::lp::{self, Constraint, LpOutcome, Relation};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVec(Vec<Rational>);

impl RatVec {
    pub fn new(coords: Vec<Rational>) -> Self {
        RatVec(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![Rational::zero(); dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| crate::extreal::int(x)).collect())
    }

    pub fn parse(items: &[&str]) -> Result<Self> {
        items
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(RatVec)
    }

    /// Parses a comma separated point such as `"1,2/3,-4"`.
    pub fn parse_csv(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(RatVec(Vec::new()));
        }
        let items: Vec<&str> = s.split(',').collect();
        Self::parse(&items)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &RatVec) -> Result<RatVec> {
        check_dims(self, other)?;
        Ok(RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &RatVec) -> Result<RatVec> {
        check_dims(self, other)?;
        Ok(RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, alpha: &Rational) -> RatVec {
        RatVec(self.0.iter().map(|a| alpha * a).collect())
    }

    pub fn neg(&self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn norm_sq(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, a| acc + a * a)
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, a| acc + a)
    }

    /// `self + alpha * other`, dimensions assumed equal.
    fn axpy(&self, alpha: &Rational, other: &RatVec) -> RatVec {
        RatVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + alpha * b)
                .collect(),
        )
    }
}

impl Index<usize> for RatVec {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for RatVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.0.iter().map(format_rational).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let refs: Vec<&str> = strings.iter().map(String::as_str).collect();
        RatVec::parse(&refs).map_err(serde::de::Error::custom)
    }
}

fn check_dims(a: &RatVec, b: &RatVec) -> Result<()> {
    if a.dim() == b.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        })
    }
}

pub fn dot(a: &RatVec, b: &RatVec) -> Result<Rational> {
    check_dims(a, b)?;
    Ok(dot_unchecked(a, b))
}

pub(crate) fn dot_unchecked(a: &RatVec, b: &RatVec) -> Rational {
    a.0.iter()
        .zip(&b.0)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Positive rescaling with largest absolute coordinate equal to 1.
pub fn canonicalize_direction(v: &RatVec) -> Result<RatVec> {
    let max = v
        .0
        .iter()
        .map(|c| c.abs())
        .max()
        .ok_or(Error::ZeroVector)?;
    if max.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.scale(&max.recip()))
}

/// Exact Gram–Schmidt. Each output is canonicalized; the span of the first
/// `k` outputs equals the span of the first `k` inputs for every `k`.
pub fn orthogonalize(vs: &[RatVec]) -> Result<Vec<RatVec>> {
    let mut out: Vec<RatVec> = Vec::with_capacity(vs.len());
    for (index, v) in vs.iter().enumerate() {
        if let Some(first) = vs.first() {
            check_dims(first, v)?;
        }
        let w = project_out(v, &out);
        if w.is_zero() {
            return Err(Error::DependentInput { index });
        }
        out.push(canonicalize_direction(&w)?);
    }
    Ok(out)
}

/// Removes from `v` its components along the pairwise-orthogonal `basis`.
pub fn project_out(v: &RatVec, basis: &[RatVec]) -> RatVec {
    basis.iter().fold(v.clone(), |acc, b| {
        let coef = dot_unchecked(&acc, b) / b.norm_sq();
        if coef.is_zero() {
            acc
        } else {
            acc.axpy(&-coef, b)
        }
    })
}

/// Basis of `{x : row · x = 0 for every row}` via reduced row echelon form.
pub(crate) fn nullspace(rows: &[RatVec], dim: usize) -> Vec<RatVec> {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][col].clone();
        for v in m[r].iter_mut() {
            *v = &*v / &lead;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * pv;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); dim];
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[i][free];
            }
            RatVec(v)
        })
        .collect()
}

/// A polytope in V-representation: the convex hull of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    vertices: Vec<RatVec>,
}

impl Polytope {
    pub fn new(vertices: Vec<RatVec>) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| Error::PreconditionViolated("polytope needs a vertex".into()))?;
        for v in &vertices {
            check_dims(first, v)?;
        }
        Ok(Polytope { vertices })
    }

    pub fn vertices(&self) -> &[RatVec] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// The polytope translated by `-x`.
    pub fn shifted(&self, x: &RatVec) -> Result<Polytope> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.sub(x))
            .collect::<Result<Vec<_>>>()?;
        Polytope::new(vertices)
    }

    /// Exact test whether `0 ∈ conv(vertices)`.
    pub fn contains_origin(&self) -> bool {
        let k = self.vertices.len();
        let mut rows: Vec<Constraint> = (0..self.dim())
            .map(|i| Constraint {
                coeffs: self.vertices.iter().map(|v| v[i].clone()).collect(),
                relation: Relation::Eq,
                rhs: Rational::zero(),
            })
            .collect();
        rows.push(Constraint {
            coeffs: vec![Rational::one(); k],
            relation: Relation::Eq,
            rhs: Rational::one(),
        });
        !matches!(
            lp::maximize(&vec![Rational::zero(); k], &rows),
            LpOutcome::Infeasible
        )
    }

    pub fn contains(&self, x: &RatVec) -> Result<bool> {
        Ok(self.shifted(x)?.contains_origin())
    }
}

/// A nonzero canonical `v` with `v · z ≤ 0` for every vertex `z`.
pub fn supporting_direction(p: &Polytope) -> Result<RatVec> {
    supporting_direction_within(p, &[])
}

/// As [`supporting_direction`], with `v` additionally orthogonal to every
/// vector in `orthogonal_to`.
///
/// Solves `max Σᵢ −v·zᵢ` subject to `v·zᵢ ≤ 0`, `−1 ≤ v_k ≤ 1`, and
/// `v·w = 0` for each `w` in `orthogonal_to`. A zero optimum falls back to
/// the first basis vector of the common nullspace.
pub fn supporting_direction_within(p: &Polytope, orthogonal_to: &[RatVec]) -> Result<RatVec> {
    let d = p.dim();
    for w in orthogonal_to {
        check_dims(&p.vertices[0], w)?;
    }
    // Substitute v = u − 1 with 0 ≤ u ≤ 2.
    let ones = RatVec(vec![Rational::one(); d]);
    let total = p
        .vertices
        .iter()
        .fold(RatVec::zeros(d), |acc, z| acc.axpy(&Rational::one(), z));
    let objective: Vec<Rational> = total.0.iter().map(|s| -s).collect();
    let mut rows: Vec<Constraint> = p
        .vertices
        .iter()
        .map(|z| Constraint {
            coeffs: z.0.clone(),
            relation: Relation::Le,
            rhs: dot_unchecked(z, &ones),
        })
        .collect();
    rows.extend((0..d).map(|k| {
        let mut coeffs = vec![Rational::zero(); d];
        coeffs[k] = Rational::one();
        Constraint {
            coeffs,
            relation: Relation::Le,
            rhs: Rational::from_integer(2.into()),
        }
    }));
    rows.extend(orthogonal_to.iter().map(|w| Constraint {
        coeffs: w.0.clone(),
        relation: Relation::Eq,
        rhs: dot_unchecked(w, &ones),
    }));

    if let LpOutcome::Optimal { x, .. } = lp::maximize(&objective, &rows) {
        // The LP value carries the constant offset from the substitution.
        let v = RatVec(x.iter().map(|u| u - Rational::one()).collect());
        let gain = p
            .vertices
            .iter()
            .fold(Rational::zero(), |acc, z| acc - dot_unchecked(&v, z));
        if gain.is_positive() {
            return canonicalize_direction(&v);
        }
    }

    let mut constraint_rows: Vec<RatVec> = p.vertices.clone();
    constraint_rows.extend(orthogonal_to.iter().cloned());
    nullspace(&constraint_rows, d)
        .into_iter()
        .next()
        .map(|v| canonicalize_direction(&v))
        .unwrap_or(Err(Error::NoSupport))
}

/// Vertices lying exactly on the hyperplane `v · z = 0`, or `None` if no
/// vertex does.
pub fn face_on_hyperplane(p: &Polytope, v: &RatVec) -> Result<Option<Polytope>> {
    let mut on = Vec::new();
    for z in &p.vertices {
        let s = dot(v, z)?;
        if s.is_positive() {
            return Err(Error::PreconditionViolated(format!(
                "vertex {z} lies strictly on the positive side of {v}"
            )));
        }
        if s.is_zero() {
            on.push(z.clone());
        }
    }
    if on.is_empty() {
        Ok(None)
    } else {
        Polytope::new(on).map(Some)
    }
}
