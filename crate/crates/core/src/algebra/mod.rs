//! Exact arithmetic substrate.

mod matrix;
mod poly;
mod rational;
mod sampler;

pub use matrix::{cayley_orthogonal, Inertia, Matrix};
pub use poly::{Monomial, Polynomial};
pub(crate) use rational::DotAccumulator;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use sampler::SeededSampler;
