//! Seeded random generators for exact rational test data.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::extreal::Rational;
use crate::geometry::{orthogonalize, project_out, Polytope, RatVec};
use crate::linext::LinExt;

/// A rational `a/b` with `1 ≤ b ≤ max_den` and `|a| ≤ 2·max_den`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(-2 * max_den..=2 * max_den);
    Rational::new(num.into(), den.into())
}

/// Small integers most of the time, so that degenerate cases (exact zeros,
/// ties) are common.
pub fn small<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::from_integer(rng.gen_range(-2i64..=2).into())
}

/// A scaling factor: zero, ±1, small integers, or a random rational.
pub fn alpha<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    match rng.gen_range(0..5) {
        0 => Rational::zero(),
        1 => Rational::from_integer((if rng.gen_bool(0.5) { 1 } else { -1 }).into()),
        2 => small(rng),
        _ => rational(rng, 64),
    }
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> RatVec {
    let sparse = rng.gen_bool(0.4);
    RatVec::new(
        (0..dim)
            .map(|_| {
                if sparse {
                    small(rng)
                } else {
                    rational(rng, 64)
                }
            })
            .collect(),
    )
}

/// A canonical linear extended function of the given depth, or of random
/// depth `0..=dim` when `depth` is `None`.
pub fn linext<R: Rng + ?Sized>(rng: &mut R, dim: usize, depth: Option<usize>) -> LinExt {
    let t = depth.unwrap_or_else(|| rng.gen_range(0..=dim));
    loop {
        let raw: Vec<RatVec> = (0..t).map(|_| vector(rng, dim)).collect();
        let Ok(dirs) = orthogonalize(&raw) else {
            continue;
        };
        let tail = project_out(&vector(rng, dim), &dirs);
        return LinExt::new(dim, dirs, tail).expect("orthogonalized input is canonical");
    }
}

/// A point chosen to exercise every branch of `f`: coordinate vectors, the
/// directions themselves, points in the nested subspaces nudged along the
/// next direction, and plain random vectors.
pub fn point_for<R: Rng + ?Sized>(rng: &mut R, f: &LinExt) -> RatVec {
    let dim = f.dim();
    let dirs = f.dirs();
    if dim == 0 {
        return RatVec::zeros(0);
    }
    match rng.gen_range(0..10) {
        0 | 1 => RatVec::unit(dim, rng.gen_range(0..dim)).scale(&alpha(rng)),
        2 | 3 if !dirs.is_empty() => dirs.choose(rng).unwrap().scale(&alpha(rng)),
        4..=6 if !dirs.is_empty() => {
            let k = rng.gen_range(0..=dirs.len());
            let mut x = project_out(&vector(rng, dim), &dirs[..k]);
            if k < dirs.len() && rng.gen_bool(0.5) {
                // Stay inside the k-th subspace but decide at level k + 1.
                x = project_out(&x, &dirs[k..]);
                x = x.add(&dirs[k].scale(&alpha(rng))).expect("same dimension");
            }
            x
        }
        _ => vector(rng, dim),
    }
}

/// A distinct pair of canonical functions, often sharing a prefix so that
/// the first difference occurs deep in the chain.
pub fn linext_pair<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> (LinExt, LinExt) {
    loop {
        let f = linext(rng, dim, None);
        let g = match rng.gen_range(0..4) {
            0 => linext(rng, dim, None),
            1 => {
                // Same directions, different tail.
                let tail = project_out(&vector(rng, dim), f.dirs());
                LinExt::new(dim, f.dirs().to_vec(), tail).unwrap()
            }
            2 => {
                // Shared prefix, then a fresh continuation.
                let k = rng.gen_range(0..=f.depth());
                let mut raw = f.dirs()[..k].to_vec();
                let extra = rng.gen_range(0..=dim - k);
                raw.extend((0..extra).map(|_| vector(rng, dim)));
                let Ok(dirs) = orthogonalize(&raw) else {
                    continue;
                };
                let tail = project_out(&vector(rng, dim), &dirs);
                LinExt::new(dim, dirs, tail).unwrap()
            }
            _ => {
                // Flip the sign of one direction.
                if f.depth() == 0 {
                    continue;
                }
                let mut dirs = f.dirs().to_vec();
                let j = rng.gen_range(0..dirs.len());
                dirs[j] = dirs[j].neg();
                LinExt::new(dim, dirs, f.tail().clone()).unwrap()
            }
        };
        if f != g {
            return (f, g);
        }
    }
}

/// A polytope with at most `max_vertices` vertices whose hull avoids the
/// origin, by rejection. Coordinates come from a small alphabet half the
/// time so that faces lie on coordinate hyperplanes.
pub fn polytope_avoiding_origin<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_vertices: usize,
) -> Polytope {
    loop {
        let count = rng.gen_range(1..=max_vertices);
        let coarse = rng.gen_bool(0.5);
        let vertices: Vec<RatVec> = (0..count)
            .map(|_| {
                if coarse {
                    RatVec::new(
                        (0..dim)
                            .map(|_| Rational::from_integer(rng.gen_range(-1i64..=2).into()))
                            .collect(),
                    )
                } else {
                    vector(rng, dim)
                }
            })
            .collect();
        let p = Polytope::new(vertices).expect("nonempty, same dimension");
        if !p.contains_origin() {
            return p;
        }
    }
}

/// Random convex weights (exact rationals summing to one).
pub fn convex_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..n)
        .map(|_| if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..=64) })
        .collect();
    let total: i64 = raw.iter().sum();
    if total == 0 {
        let mut w = vec![Rational::zero(); n];
        w[rng.gen_range(0..n)] = Rational::from_integer(1.into());
        return w;
    }
    raw.into_iter()
        .map(|k| Rational::new(k.into(), total.into()))
        .collect()
}

/// A random distribution over `n` outcomes; vertices and faces occur often.
pub fn dist<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RatVec {
    let mut raw: Vec<i64> = (0..n)
        .map(|_| if rng.gen_bool(0.35) { 0 } else { rng.gen_range(1..=8) })
        .collect();
    if raw.iter().all(|&k| k == 0) {
        raw[rng.gen_range(0..n)] = 1;
    }
    let total: i64 = raw.iter().sum();
    RatVec::new(
        raw.into_iter()
            .map(|k| Rational::new(k.into(), total.into()))
            .collect(),
    )
}
