use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::linalg::C64;

/// Outcome of one identity check. `residual` is the normalised residual
/// (max-abs difference divided by max(1, max |LHS|)); `abs_residual` is the
/// raw max-abs difference. `pass` ⇔ `residual <= tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity: String,
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub residual: f64,
    pub abs_residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub runtime_ms: u64,
}

impl ResidualReport {
    pub fn new(
        identity: &str,
        family: &str,
        params: Params,
        residual: Residual,
        tol: f64,
        started: Instant,
    ) -> Self {
        ResidualReport {
            identity: identity.to_string(),
            family: family.to_string(),
            params: params.0,
            residual: residual.normalized,
            abs_residual: residual.abs,
            tol,
            pass: residual.normalized <= tol,
            runtime_ms: started.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub abs: f64,
    pub normalized: f64,
}

impl Residual {
    pub fn new(abs: f64, scale: f64) -> Self {
        let normalized = if abs.is_nan() {
            f64::INFINITY
        } else {
            abs / scale.max(1.0)
        };
        Residual { abs, normalized }
    }

    /// A residual that is already relative.
    pub fn relative(r: f64) -> Self {
        Residual::new(r, 1.0)
    }

    pub fn max(self, other: Residual) -> Residual {
        Residual {
            abs: self.abs.max(other.abs),
            normalized: self.normalized.max(other.normalized),
        }
    }
}

/// Builder for the parameter map of a report; values are written with 17
/// significant digits so a report reproduces its check.
#[derive(Clone, Debug, Default)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn c(mut self, k: &str, v: C64) -> Self {
        self.0.insert(k.to_string(), fmt_complex(v));
        self
    }

    pub fn f(mut self, k: &str, v: f64) -> Self {
        self.0.insert(k.to_string(), format!("{v:.16e}"));
        self
    }

    pub fn s(mut self, k: &str, v: impl ToString) -> Self {
        self.0.insert(k.to_string(), v.to_string());
        self
    }

    pub fn coords(mut self, prefix: &str, v: &[C64]) -> Self {
        for (i, x) in v.iter().enumerate() {
            self.0.insert(format!("{prefix}{}", i + 1), fmt_complex(*x));
        }
        self
    }

    pub fn family(mut self, params: &[(String, C64)]) -> Self {
        for (k, v) in params {
            self.0.insert(k.clone(), fmt_complex(*v));
        }
        self
    }
}

pub fn fmt_complex(v: C64) -> String {
    format!("{:.16e},{:.16e}", v.re, v.im)
}
