//! Special functions: Γ and Γ₁, Barnes' double sine, q-Pochhammer products,
//! theta functions, ₂F₁, the Ω_n sums of the DYr S-matrix and q-exponentials.

mod double_sine;
mod gamma;
mod hyp2f1;
mod omega;
mod qexp;
mod qpoch;
pub mod quad;

pub use double_sine::{double_sine, rho_dyr};
pub use gamma::{gamma, gamma1, gamma_ratio, ln_gamma, rho_dy};
pub use hyp2f1::hyp2f1;
pub use omega::{omega_fn, omega_sum};
pub use qexp::{q_factorial, q_number, qexp};
pub use qpoch::{qpoch, theta_p};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub max_intervals: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            max_intervals: 2000,
            abs_tol: 1e-14,
            rel_tol: 1e-14,
        }
    }
}

impl QuadratureConfig {
    pub fn new(max_intervals: usize, abs_tol: f64, rel_tol: f64) -> crate::Result<Self> {
        if max_intervals < 16 || !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(crate::Error::InvalidParam(format!(
                "quadrature config needs max_intervals >= 16 and positive tolerances, got ({max_intervals}, {abs_tol}, {rel_tol})"
            )));
        }
        Ok(QuadratureConfig {
            max_intervals,
            abs_tol,
            rel_tol,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationConfig {
    pub max_terms: usize,
    pub term_tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig {
            max_terms: 10_000,
            term_tol: 1e-17,
        }
    }
}

impl TruncationConfig {
    pub fn new(max_terms: usize, term_tol: f64) -> crate::Result<Self> {
        if max_terms < 8 || !(term_tol > 0.0) {
            return Err(crate::Error::InvalidParam(format!(
                "truncation config needs max_terms >= 8 and term_tol > 0, got ({max_terms}, {term_tol})"
            )));
        }
        Ok(TruncationConfig {
            max_terms,
            term_tol,
        })
    }
}
