//! Linear and affine extended functions over the extended reals, extended
//! subgradients, and a workbench for constructing and checking proper
//! scoring rules over finite outcome sets.
//!
//! All arithmetic is exact over rationals. Logarithms enter only through
//! [`precision::ln`], which rounds to a fixed number of decimal places.

pub mod catalog;
pub mod cli;
pub mod convex;
pub mod error;
pub mod extreal;
pub mod geometry;
pub mod grid;
pub mod linext;
mod lp;
pub mod precision;
pub mod sampling;
pub mod scoring;

pub use error::{Error, Result};
pub use extreal::{ExtReal, Rational};
pub use geometry::{Polytope, RatVec};
pub use convex::{AffExt, ConvexSpec};
pub use linext::{Class, LinExt};
pub use scoring::{Dist, OutcomeSet, ScoreTable};
