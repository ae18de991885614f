//! Deterministic Farey-style grids of exact rationals.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::extreal::Rational;
use crate::geometry::RatVec;

/// Integer compositions of `total` into `parts` nonnegative parts.
fn compositions(total: i64, parts: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(total - k, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Every probability vector over `n` outcomes whose coordinates share a
/// denominator `D ≤ max_den`, in ascending lexicographic order.
pub fn farey_simplex(n: usize, max_den: u32) -> Vec<RatVec> {
    assert!(n >= 1 && max_den >= 1);
    let mut set = BTreeSet::new();
    for d in 1..=max_den as i64 {
        let mut out = Vec::new();
        compositions(d, n, &mut Vec::new(), &mut out);
        for c in out {
            set.insert(RatVec::new(
                c.into_iter().map(|k| Rational::new(k.into(), d.into())).collect(),
            ));
        }
    }
    set.into_iter().collect()
}

/// Rationals in `[lo, hi]` with denominator at most `max_den`, ascending.
pub fn farey_interval(lo: &Rational, hi: &Rational, max_den: u32) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for d in 1..=max_den as i64 {
        let den = Rational::from_integer(d.into());
        let start = (lo * &den).ceil().to_integer();
        let end = (hi * &den).floor().to_integer();
        let mut k = start;
        while k <= end {
            set.insert(Rational::new(k.clone(), d.into()));
            k += 1;
        }
    }
    set.into_iter().collect()
}

/// Cartesian product of `farey_interval(lo, hi, max_den)` in `dim` axes.
pub fn farey_box(dim: usize, lo: &Rational, hi: &Rational, max_den: u32) -> Vec<RatVec> {
    let axis = farey_interval(lo, hi, max_den);
    let mut points = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(points.len() * axis.len());
        for p in &points {
            for a in &axis {
                let mut q: Vec<Rational> = p.clone();
                q.push(a.clone());
                next.push(q);
            }
        }
        points = next;
    }
    points.into_iter().map(RatVec::new).collect()
}

/// Binary distributions `(1 − s, s)` for `s` on the given list.
pub fn binary_points(ss: &[Rational]) -> Vec<RatVec> {
    ss.iter()
        .map(|s| RatVec::new(vec![Rational::one() - s, s.clone()]))
        .collect()
}

/// Points of `farey_simplex` in the relative interior.
pub fn interior(points: &[RatVec]) -> Vec<RatVec> {
    points
        .iter()
        .filter(|p| p.coords().iter().all(|c| !c.is_zero()))
        .cloned()
        .collect()
}
