//! Importance-weighted sample average approximation for shape-constrained
//! distributional optimization.

// `!(x > 0.0)` is used on purpose so that NaN is rejected; index loops mirror
// the linear algebra.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod calibrate;
pub mod complexity;
pub mod counterexample;
pub mod error;
pub mod experiments;
pub mod expr;
pub mod lp;
pub mod par;
pub mod problem;
pub mod sampling;
mod serde_ext;
pub mod shape;
pub mod special;

pub use error::{Error, Result};
