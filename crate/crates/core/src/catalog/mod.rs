//! Named R-matrices and twists.

mod family;
pub mod osp12;
mod registry;
pub mod sl12;
pub mod sl_n;

pub use family::{Application, Evaluator, RMatrixFamily, Spectral, Twist};
pub use registry::{build, evaluate, parse_complex, schema, Entry, Request, FAMILIES};
