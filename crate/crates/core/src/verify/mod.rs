//! Residual engines for the identities satisfied by the catalog, limit
//! checks between families, and the suites that drive them.

mod limits;
mod proportional;
mod report;
mod sampler;
mod search;
mod suites;
mod ybe;

pub use limits::{
    limit_p_to_0, limit_scaling, LimitRow, LimitTable, AT_LEAST_FIRST_ORDER, DECAY_BAND,
};
pub use proportional::proportional;
pub use report::{fmt_complex, Params, Residual, ResidualReport};
pub use sampler::{admissible, bounded, Sampler, ENTRY_BOUND};
pub use search::{grid, weight_table_search, SearchPoint};
pub use suites::{run_suite, SuiteConfig, Summary, Tolerances, PLAN_ORDER, SUITES};
pub use ybe::{
    dybe_residual, dybe_residual_at, graded_ybe_explicit, ybe_matrices, ybe_residual,
    ybe_residual_at,
};
