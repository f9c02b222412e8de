//! Evaluation, inversion, and sampling of induced orthogonal-polynomial
//! distributions.
//!
//! An order-`n` induced measure is `p_n^2(x) dmu(x)`, the base measure
//! reweighted by its own n-th orthonormal polynomial squared. This crate
//! evaluates the corresponding distribution functions for Jacobi, Freud, and
//! half-line Freud weights, inverts them by Markov-Stieltjes bracketing plus
//! bisection, and builds optimal weighted least-squares sampling designs on
//! top of the inverse-transform sampler.

// `!(x > 0.0)` is used deliberately throughout to treat NaN as a failure;
// index loops in the numeric kernels walk several arrays in lockstep.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod special;
pub mod recurrence;
pub mod measures;
pub mod modification;
pub mod oracle;
pub mod idist;
pub mod inverse;
pub mod sampling;

pub use error::{Error, Result};
