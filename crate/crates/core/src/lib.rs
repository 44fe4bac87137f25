//! Exact verification of a family of curvature homogeneous pseudo-Riemannian
//! manifolds of signature `(2s, s)` and of their curvature model.
//!
//! The manifolds live on `R^{3s}` with coordinates `(u, t, v)` and a metric
//! determined by univariate polynomials `f_1, .., f_s`. Every quantity the
//! crate produces (metric entries, Christoffel symbols, curvature, covariant
//! derivatives, ranks, inertia, invariants) is an exact rational or an exact
//! polynomial; nothing in a verification path uses floating point.
//!
//! Layout:
//!
//! * [`algebra`]: rationals, multivariate polynomials, exact matrices, seeded sampling.
//! * [`tensor`]: dense multi-index tensors, pullback, contraction, symmetry checks.
//! * [`model`]: the model space `V_3s`, normalized bases and the `O(s)` action.
//! * [`engine`]: a generic polynomial tensor-calculus engine (Christoffel, curvature, `∇`).
//! * [`family`]: closed forms for the manifold family and the pointwise normalization.
//! * [`jacobi`]: Jacobi operators, rank profiles, Jordan types and Osserman scans.
//! * [`invariants`]: kernel/complement subspaces, quotients and the homogeneity obstruction.
//! * [`config`], [`report`], [`suites`]: configuration, reports and suite orchestration.

pub mod algebra;
pub mod config;
pub mod engine;
pub mod error;
pub mod family;
pub mod invariants;
pub mod jacobi;
pub mod model;
pub mod report;
pub mod suites;
pub mod tensor;

#[cfg(test)]
mod proptests;

pub use algebra::{Matrix, Polynomial, Rational, SeededSampler};
pub use error::{Error, Result};
