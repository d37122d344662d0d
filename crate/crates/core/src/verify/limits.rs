use std::time::Instant;

use super::report::{Params, Residual, ResidualReport};
use crate::catalog::sl_n::{bqpl_sl_n, dys_sl_n, uql_sl_n, uql_sl_n_matrix, EllipticGauge};
use crate::error::{Error, Result};
use crate::gtensor::DynParams;
use crate::linalg::C64;

#[derive(Clone, Debug, PartialEq)]
pub struct LimitRow {
    pub param: f64,
    pub gap: f64,
    /// gap / previous gap
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitTable {
    pub which: &'static str,
    pub rows: Vec<LimitRow>,
    /// accepted range of the successive-gap ratio
    pub band: (f64, f64),
}

/// Band for the successive-gap ratio when the parameter shrinks tenfold
/// and the gap is exactly first order.
pub const DECAY_BAND: (f64, f64) = (0.05, 0.2);

/// The scaling gap only has to be O(ħ); the trigonometric entries are
/// even in ħ to first order, so the observed ratios are ≈ 0.01.
pub const AT_LEAST_FIRST_ORDER: (f64, f64) = (0.0, 0.2);

impl LimitTable {
    fn from_gaps(which: &'static str, band: (f64, f64), params: &[f64], gaps: Vec<f64>) -> Self {
        let rows = params
            .iter()
            .zip(&gaps)
            .enumerate()
            .map(|(k, (&param, &gap))| LimitRow {
                param,
                gap,
                ratio: (k > 0).then(|| gap / gaps[k - 1]),
            })
            .collect();
        LimitTable { which, rows, band }
    }

    /// How far the worst ratio lies outside the band (0 inside).
    pub fn decay_violation(&self) -> f64 {
        let band = self.band;
        self.rows
            .iter()
            .filter_map(|r| r.ratio)
            .map(|t| {
                if t.is_nan() {
                    f64::INFINITY
                } else {
                    (band.0 - t).max(t - band.1).max(0.0)
                }
            })
            .fold(0.0, f64::max)
    }

    pub fn last_gap(&self) -> f64 {
        self.rows.last().map_or(f64::INFINITY, |r| r.gap)
    }

    /// Two reports: the decay order (ratios within the band) and the size
    /// of the final gap against `gap_tol`.
    pub fn reports(
        &self,
        family: &str,
        params: Params,
        gap_tol: f64,
        started: Instant,
    ) -> Vec<ResidualReport> {
        let mut p = params;
        for (k, r) in self.rows.iter().enumerate() {
            p = p.f(&format!("grid{}", k + 1), r.param);
        }
        let v = self.decay_violation();
        vec![
            ResidualReport::new(
                &format!("limit_{}_decay", self.which),
                family,
                p.clone(),
                Residual::relative(v),
                0.0,
                started,
            ),
            ResidualReport::new(
                &format!("limit_{}_gap", self.which),
                family,
                p,
                Residual::relative(self.last_gap()),
                gap_tol,
                started,
            ),
        ]
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParam("empty limit grid".into()));
    }
    if grid.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidParam(
            "limit grid values must be positive".into(),
        ));
    }
    Ok(())
}

/// max |gauged elliptic R(p) − trigonometric R| along the p grid.
pub fn limit_p_to_0(
    n: usize,
    q: C64,
    lambda: &DynParams,
    z: C64,
    ps: &[f64],
) -> Result<LimitTable> {
    check_grid(ps)?;
    let target = uql_sl_n(n, q)?.eval(Some(z), Some(lambda))?;
    let gaps = ps
        .iter()
        .map(|&p| {
            Ok(bqpl_sl_n(n, q, C64::new(p, 0.0), EllipticGauge::Gauged)?
                .eval(Some(z), Some(lambda))?
                .max_abs_diff(&target))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitTable::from_gaps("p0", DECAY_BAND, ps, gaps))
}

/// With q = e^ħ, z = q^{2u}, w_ab = q^{x_a − x_b}: max gap between the
/// normalised trigonometric and normalised rational dynamical R-matrices.
pub fn limit_scaling(n: usize, u: C64, x: &[C64], hbars: &[f64]) -> Result<LimitTable> {
    check_grid(hbars)?;
    let l = DynParams::x(x.to_vec());
    let target = dys_sl_n(n)?.normalized(Some(u), Some(&l))?;
    let gaps = hbars
        .iter()
        .map(|&h| {
            let q = C64::new(h.exp(), 0.0);
            let z = (2.0 * u * h).exp();
            let m = uql_sl_n_matrix(n, q, z, &l)?;
            Ok(m.max_abs_diff(&target))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitTable::from_gaps(
        "scaling",
        AT_LEAST_FIRST_ORDER,
        hbars,
        gaps,
    ))
}
