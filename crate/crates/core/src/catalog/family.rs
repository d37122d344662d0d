use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gtensor::{Chart, DynParams, GradedSpace, WeightTable};
use crate::linalg::{CMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spectral {
    None,
    /// z, composed as z·z′
    Multiplicative,
    /// u, composed as u+u′
    Additive,
}

impl Spectral {
    pub fn compose(self, a: C64, b: C64) -> C64 {
        match self {
            Spectral::Multiplicative => a * b,
            _ => a + b,
        }
    }
}

pub type Evaluator = Arc<dyn Fn(Option<C64>, Option<&DynParams>) -> Result<CMatrix> + Send + Sync>;

/// A named R-matrix family. Numeric parameters (N, q, r, p, …) are fixed at
/// construction; the evaluator takes the spectral argument and the dynamical
/// point. Graded families return the tilde matrix R̃.
#[derive(Clone)]
pub struct RMatrixFamily {
    pub name: String,
    pub space: GradedSpace,
    pub spectral: Spectral,
    pub dyn_chart: Option<Chart>,
    pub graded_output: bool,
    pub params: Vec<(String, C64)>,
    pub weights: Option<WeightTable>,
    eval: Evaluator,
}

impl fmt::Debug for RMatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RMatrixFamily")
            .field("name", &self.name)
            .field("dim", &self.space.dim())
            .field("spectral", &self.spectral)
            .field("dyn_chart", &self.dyn_chart)
            .field("graded_output", &self.graded_output)
            .field("params", &self.params)
            .finish()
    }
}

fn check_args(
    name: &str,
    spectral: Spectral,
    chart: Option<Chart>,
    s: Option<C64>,
    l: Option<&DynParams>,
) -> Result<()> {
    match (spectral, s) {
        (Spectral::None, Some(_)) => {
            return Err(Error::InvalidParam(format!(
                "{name} takes no spectral parameter"
            )))
        }
        (Spectral::Multiplicative | Spectral::Additive, None) => {
            return Err(Error::InvalidParam(format!(
                "{name} needs a spectral parameter"
            )))
        }
        _ => {}
    }
    if chart.is_some() && l.is_none() {
        return Err(Error::InvalidParam(format!(
            "{name} needs a dynamical parameter"
        )));
    }
    Ok(())
}

fn check_output(name: &str, dim: usize, m: CMatrix) -> Result<CMatrix> {
    if m.rows() != dim * dim || m.cols() != dim * dim {
        return Err(Error::Dimension(format!(
            "{name} produced a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::SingularSpectral(format!(
            "{name} produced non-finite entries"
        )));
    }
    Ok(m)
}

impl RMatrixFamily {
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        spectral: Spectral,
        dyn_chart: Option<Chart>,
        graded_output: bool,
        params: Vec<(String, C64)>,
        eval: Evaluator,
    ) -> Self {
        RMatrixFamily {
            name: name.into(),
            space,
            spectral,
            dyn_chart,
            graded_output,
            params,
            weights: None,
            eval,
        }
    }

    pub fn with_weights(mut self, wt: WeightTable) -> Self {
        self.weights = Some(wt);
        self
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn eval(&self, spectral: Option<C64>, lambda: Option<&DynParams>) -> Result<CMatrix> {
        check_args(&self.name, self.spectral, self.dyn_chart, spectral, lambda)?;
        check_output(&self.name, self.dim(), (self.eval)(spectral, lambda)?)
    }

    /// R divided by its (v₁⊗v₁, v₁⊗v₁) entry.
    pub fn normalized(&self, spectral: Option<C64>, lambda: Option<&DynParams>) -> Result<CMatrix> {
        let m = self.eval(spectral, lambda)?;
        let k = m[(0, 0)];
        if k.norm() < 1e-300 {
            return Err(Error::SingularSpectral(format!(
                "{}: normalising entry vanishes",
                self.name
            )));
        }
        Ok(m.scale(1.0 / k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Application {
    /// F₂₁ R F₁₂⁻¹ with all arguments equal
    Constant,
    /// F₂₁(−u) R(u) F₁₂(u)⁻¹
    AdditiveReflect,
}

#[derive(Clone)]
pub struct Twist {
    pub name: String,
    pub space: GradedSpace,
    pub spectral: Spectral,
    pub dyn_chart: Option<Chart>,
    pub application: Application,
    pub params: Vec<(String, C64)>,
    eval: Evaluator,
}

impl fmt::Debug for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Twist")
            .field("name", &self.name)
            .field("dim", &self.space.dim())
            .field("spectral", &self.spectral)
            .field("dyn_chart", &self.dyn_chart)
            .field("application", &self.application)
            .finish()
    }
}

impl Twist {
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        spectral: Spectral,
        dyn_chart: Option<Chart>,
        application: Application,
        params: Vec<(String, C64)>,
        eval: Evaluator,
    ) -> Self {
        Twist {
            name: name.into(),
            space,
            spectral,
            dyn_chart,
            application,
            params,
            eval,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn eval(&self, spectral: Option<C64>, lambda: Option<&DynParams>) -> Result<CMatrix> {
        check_args(&self.name, self.spectral, self.dyn_chart, spectral, lambda)?;
        check_output(&self.name, self.dim(), (self.eval)(spectral, lambda)?)
    }
}

const SINGULAR_EPS: f64 = 1e-12;

/// Denominators depending on the dynamical point.
pub(crate) fn dyn_denominator(d: C64, what: &str) -> Result<C64> {
    if d.norm() < SINGULAR_EPS {
        return Err(Error::SingularDynamical(format!("{what} vanishes")));
    }
    Ok(d)
}

/// Denominators depending on the spectral parameter.
pub(crate) fn spectral_denominator(d: C64, what: &str) -> Result<C64> {
    if d.norm() < SINGULAR_EPS {
        return Err(Error::SingularSpectral(format!("{what} vanishes")));
    }
    Ok(d)
}

pub(crate) fn param(name: &str, v: impl Into<C64>) -> (String, C64) {
    (name.to_string(), v.into())
}

pub(crate) fn spectral_arg(s: Option<C64>) -> C64 {
    s.expect("spectral argument checked by the family")
}

pub(crate) fn dyn_arg(l: Option<&DynParams>) -> &DynParams {
    l.expect("dynamical argument checked by the family")
}
