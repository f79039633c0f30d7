//! Bounds, sphere-ideal reduction and linear-independence certificates for
//! spherical s-distance sets.
//!
//! A finite set `F` on the unit sphere in `R^n` is an s-distance set when its
//! points realize exactly `s` distinct pairwise distances, or equivalently
//! `s` distinct pairwise inner products. This crate provides:
//!
//! - [`bounds`]: the closed-form cardinality bounds for such sets, in exact
//!   integer/rational arithmetic, including the sum-zero bound
//!   `C(n+s-1, s) + C(n+s-4, s-3)` that applies when the distinct inner
//!   products add up to zero.
//! - [`poly`]: sparse multivariate polynomials, the reduced monomial basis of
//!   the sphere's coordinate ring, and canonical reduction modulo the ideal
//!   generated by `x1^2 + ... + xn^2 - 1`.
//! - [`config`]: point configurations on the sphere (exact-rational or
//!   floating with tolerance), their inner-product profiles, and reference
//!   configurations.
//! - [`certificate`]: instance-level linear-independence certificates built
//!   from the polynomials `f_i(x) = prod_k (<x, v_i> - t_k) / prod_k (1 - t_k)`,
//!   with delta, degree-gap, rank and bound checks.
//! - [`search`]: a seeded multi-start projected-gradient search for sum-zero
//!   s-distance configurations approaching the bound.

pub mod bounds;
pub mod certificate;
pub mod config;
pub mod poly;
pub mod rank;
pub mod scalar;
pub mod search;

pub use scalar::{Rational, Scalar};
