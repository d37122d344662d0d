//! Evaluated R-matrices and Drinfel'd twists of (dynamical, deformed,
//! elliptic, super) quantum groups, together with residual engines for the
//! Yang–Baxter-type identities they satisfy.

// `!(x > 0.0)` is used on purpose so NaN is rejected; tabulated constants keep their printed digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod catalog;
pub mod error;
pub mod gtensor;
pub mod linalg;
pub mod specfun;
pub mod twistlab;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
