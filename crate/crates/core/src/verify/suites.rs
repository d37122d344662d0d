//! Named verification suites. A suite is a list of independent jobs, each
//! with its own seeded sampler, run concurrently and reported in plan order.

use std::f64::consts::PI;
use std::time::Instant;

use super::limits::{limit_p_to_0, limit_scaling};
use super::proportional::proportional;
use super::report::{Params, Residual, ResidualReport};
use super::sampler::{admissible, bounded, Sampler};
use super::ybe::{dybe_residual, ybe_residual};
use crate::catalog::osp12::{self, BaxterBranch};
use crate::catalog::sl12;
use crate::catalog::sl_n;
use crate::catalog::{RMatrixFamily, Spectral};
use crate::error::{Error, Result};
use crate::gtensor::{Chart, DynParams, GradedSpace};
use crate::linalg::{cpow, CMatrix, C64};
use crate::specfun::{self, QuadratureConfig, TruncationConfig};
use crate::twistlab::{
    apply_twist, check_linear_equation, conjugate, eqdiff_residual, gauge, product_twist,
    solve_dyr_twist, us_sl_n_product_inputs, CocycleData, QCocycle,
};

pub const TOL_ALGEBRAIC: f64 = 1e-12;
pub const TOL_SPECIAL: f64 = 1e-9;
pub const TOL_PRINTED: f64 = 1e-10;
pub const TOL_COCYCLE: f64 = 1e-10;
pub const TOL_GAUGE: f64 = 1e-10;
pub const TOL_SPREAD: f64 = 1e-8;
pub const TOL_LIMIT_GAP: f64 = 1e-3;

/// Every suite name, sorted; "all" runs them in [`PLAN_ORDER`].
pub const SUITES: &[&str] = &[
    "cocycle", "dybe", "limits", "printed", "specfun", "twist", "ybe",
];
pub const PLAN_ORDER: &[&str] = &[
    "ybe", "dybe", "cocycle", "twist", "printed", "limits", "specfun",
];

/// Tolerance policy. An override replaces every default, except in CI
/// mode where it may only tighten.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Tolerances {
    pub override_tol: Option<f64>,
    pub ci: bool,
}

impl Tolerances {
    pub fn get(&self, default: f64) -> f64 {
        match self.override_tol {
            Some(t) if self.ci => t.min(default),
            Some(t) => t,
            None => default,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerances: Tolerances,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(reports: &[ResidualReport]) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        Summary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
        }
    }
}

type Run =
    Box<dyn Fn(&mut Sampler, usize, &Tolerances) -> Result<Vec<ResidualReport>> + Send + Sync>;

struct Job {
    identity: &'static str,
    family: String,
    run: Run,
}

fn job(
    identity: &'static str,
    family: impl Into<String>,
    run: impl Fn(&mut Sampler, usize, &Tolerances) -> Result<Vec<ResidualReport>>
        + Send
        + Sync
        + 'static,
) -> Job {
    Job {
        identity,
        family: family.into(),
        run: Box::new(run),
    }
}

/// Runs a suite (or "all"). Jobs run on scoped threads; the reports come
/// back in plan order regardless of scheduling.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<ResidualReport>> {
    if cfg.samples == 0 {
        return Err(Error::InvalidParam("samples must be at least 1".into()));
    }
    let jobs = plan(name)?;
    let results: Vec<Vec<ResidualReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .enumerate()
            .map(|(k, j)| {
                let seed = cfg
                    .seed
                    .wrapping_add((k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                scope.spawn(move || {
                    let started = Instant::now();
                    let mut s = Sampler::new(seed);
                    (j.run)(&mut s, cfg.samples, &cfg.tolerances).unwrap_or_else(|e| {
                        let p = Params::new().s("error", e);
                        vec![ResidualReport::new(
                            j.identity,
                            &j.family,
                            p,
                            Residual::relative(f64::INFINITY),
                            0.0,
                            started,
                        )]
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification job panicked"))
            .collect()
    });
    Ok(results.into_iter().flatten().collect())
}

fn plan(name: &str) -> Result<Vec<Job>> {
    Ok(match name {
        "ybe" => ybe_jobs(),
        "dybe" => dybe_jobs(),
        "cocycle" => cocycle_jobs(),
        "twist" => twist_jobs(),
        "printed" => printed_jobs(),
        "limits" => limit_jobs(),
        "specfun" => specfun_jobs(),
        "all" => PLAN_ORDER
            .iter()
            .map(|s| plan(s))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect(),
        _ => {
            return Err(Error::InvalidParam(format!(
                "unknown suite '{name}' (expected one of {}, all)",
                SUITES.join(", ")
            )))
        }
    })
}

// ---- sampling helpers

fn draw_q(s: &mut Sampler) -> C64 {
    C64::from_polar(s.real(0.45, 0.85), s.real(-0.3, 0.3))
}

fn draw_spectral(s: &mut Sampler, kind: Spectral) -> (Option<C64>, Option<C64>) {
    match kind {
        Spectral::None => (None, None),
        Spectral::Multiplicative => (Some(s.annulus(0.2, 1.2)), Some(s.annulus(0.2, 1.2))),
        Spectral::Additive => (
            Some(s.complex((-1.5, 1.5), (-0.5, 0.5))),
            Some(s.complex((-1.5, 1.5), (-0.5, 0.5))),
        ),
    }
}

fn traceless(v: Vec<C64>) -> Vec<C64> {
    let mean = v.iter().sum::<C64>() / v.len() as f64;
    v.into_iter().map(|x| x - mean).collect()
}

fn draw_lambda(s: &mut Sampler, f: &RMatrixFamily) -> Result<DynParams> {
    let (re, im) = ((-2.5, 2.5), (-0.5, 0.5));
    match f.dyn_chart {
        Some(Chart::X) => Ok(DynParams::x(traceless(s.complexes(f.dim(), re, im)))),
        Some(Chart::S) => {
            let rank = f.weights.as_ref().map_or(f.dim() - 1, |w| w.rank());
            Ok(DynParams::s(s.complexes(rank, re, im)))
        }
        _ => Err(Error::InvalidParam(format!(
            "{} has no sampled chart",
            f.name
        ))),
    }
}

fn slots(f: &RMatrixFamily, a: Option<C64>, b: Option<C64>) -> Vec<Option<C64>> {
    match (a, b) {
        (Some(a), Some(b)) => vec![Some(a), Some(f.spectral.compose(a, b)), Some(b)],
        _ => vec![None],
    }
}

// ---- ybe

fn ybe_job(
    family: &'static str,
    graded: bool,
    tol: f64,
    make: impl Fn(&mut Sampler) -> Result<RMatrixFamily> + Send + Sync + 'static,
) -> Job {
    let id = if graded { "graded_ybe" } else { "ybe" };
    job(id, family, move |s, samples, t| {
        (0..samples)
            .map(|_| {
                let (f, a, b) = s.draw(|s| {
                    let f = make(s)?;
                    let (a, b) = draw_spectral(s, f.spectral);
                    for v in slots(&f, a, b) {
                        bounded(&f.eval(v, None)?)?;
                    }
                    Ok((f, a, b))
                })?;
                ybe_residual(&f, a, b, graded, t.get(tol))
            })
            .collect()
    })
}

fn ybe_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in [2, 3] {
        jobs.push(ybe_job("dy_slN", false, TOL_ALGEBRAIC, move |_| {
            sl_n::dy_sl_n(n)
        }));
    }
    jobs.push(ybe_job("dy_sl12", true, TOL_ALGEBRAIC, |_| sl12::dy_sl12()));
    jobs.push(ybe_job("dy_sl12", false, TOL_ALGEBRAIC, |_| {
        sl12::dy_sl12()
    }));
    for n in [2, 3, 4] {
        jobs.push(ybe_job("uq_slN", false, TOL_ALGEBRAIC, move |s| {
            sl_n::uq_sl_n(n, draw_q(s))
        }));
    }
    jobs.push(ybe_job("uq_osp12", true, TOL_ALGEBRAIC, |s| {
        osp12::uq_osp12(draw_q(s))
    }));
    for n in [2, 3] {
        for r in [2.3, 5.0, 11.0] {
            jobs.push(ybe_job("dyr_slN", false, TOL_SPECIAL, move |_| {
                sl_n::dyr_sl_n(n, r)
            }));
        }
        jobs.push(ybe_job("dyr_slN_bar", false, TOL_SPECIAL, move |_| {
            sl_n::dyr_sl_n_bar(n, 3.7)
        }));
    }
    for r in [2.3, 5.0, 11.0] {
        jobs.push(ybe_job("dyr_sl12", true, TOL_SPECIAL, move |_| {
            sl12::dyr_sl12(r)
        }));
    }
    for br in [BaxterBranch::MinusQ, BaxterBranch::QCubed] {
        jobs.push(ybe_job("baxterised_osp12", false, TOL_PRINTED, move |s| {
            osp12::baxterised_osp12(draw_q(s), br)
        }));
    }
    jobs
}

// ---- dybe

fn dybe_job(
    family: &'static str,
    make: impl Fn(&mut Sampler) -> Result<RMatrixFamily> + Send + Sync + 'static,
) -> Job {
    job("dybe", family, move |s, samples, t| {
        (0..samples)
            .map(|_| {
                let (f, l, a, b) = s.draw(|s| {
                    let f = make(s)?;
                    let l = draw_lambda(s, &f)?;
                    let (a, b) = draw_spectral(s, f.spectral);
                    admissible(&f, &slots(&f, a, b), &l, f.weights.as_ref())?;
                    Ok((f, l, a, b))
                })?;
                let wt = f.weights.clone().ok_or_else(|| {
                    Error::InvalidParam(format!("{} has no weight table", f.name))
                })?;
                dybe_residual(&f, &l, &wt, a, b, t.get(TOL_SPECIAL))
            })
            .collect()
    })
}

fn dybe_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in [2, 3] {
        jobs.push(dybe_job("us_slN", move |_| sl_n::us_sl_n(n)));
        jobs.push(dybe_job("bql_slN", move |s| sl_n::bql_sl_n(n, draw_q(s))));
    }
    jobs.push(dybe_job("bql_osp12", |s| osp12::bql_osp12(draw_q(s))));
    jobs.push(dybe_job("us_osp12", |_| osp12::us_osp12()));
    jobs.push(dybe_job("us_sl12", |_| sl12::us_sl12()));
    for n in [2, 3] {
        jobs.push(dybe_job("uql_slN", move |s| sl_n::uql_sl_n(n, draw_q(s))));
    }
    for br in [BaxterBranch::MinusQ, BaxterBranch::QCubed] {
        jobs.push(dybe_job("uql_osp12", move |s| {
            osp12::uql_osp12(draw_q(s), br)
        }));
    }
    for n in [2, 3] {
        jobs.push(dybe_job("dys_slN", move |_| sl_n::dys_sl_n(n)));
    }
    jobs.push(dybe_job("dys_sl12", |_| sl12::dys_sl12()));
    jobs
}

// ---- cocycle

fn cocycle_job(family: &'static str, data: CocycleData) -> Job {
    job("cocycle", family, move |s, samples, t| {
        (0..samples)
            .map(|_| {
                let started = Instant::now();
                let l = s.draw(|s| {
                    let l = match data.wt.chart {
                        Chart::X => DynParams::x(traceless(s.complexes(
                            data.space.dim(),
                            (-2.5, 2.5),
                            (-0.5, 0.5),
                        ))),
                        _ => DynParams::s(s.complexes(data.wt.rank(), (-2.5, 2.5), (-0.5, 0.5))),
                    };
                    bounded(&data.closed_form(&l)?)?;
                    for c in 0..data.space.dim() {
                        bounded(&data.closed_form(&l.shifted(&data.wt, c)?)?)?;
                    }
                    data.residual(&l).map(|r| (l, r))
                })?;
                let (l, abs) = l;
                let p = Params::new()
                    .s("N", data.space.dim())
                    .coords(chart_prefix(l.chart), &l.coords);
                Ok(ResidualReport::new(
                    "cocycle",
                    family,
                    p,
                    Residual::new(abs, 1.0),
                    t.get(TOL_COCYCLE),
                    started,
                ))
            })
            .collect()
    })
}

fn chart_prefix(c: Chart) -> &'static str {
    match c {
        Chart::S => "s",
        Chart::X => "x",
        Chart::W => "w",
    }
}

fn cocycle_jobs() -> Vec<Job> {
    let mut jobs = vec![
        cocycle_job("twist_us_slN", CocycleData::sl_n(2)),
        cocycle_job("twist_us_slN", CocycleData::sl_n(3)),
        cocycle_job("twist_us_osp12", CocycleData::osp12()),
        cocycle_job("twist_us_sl12", CocycleData::sl12()),
    ];
    for n in [2, 3] {
        jobs.push(job("q_cocycle", "twist_bql_slN", move |s, samples, t| {
            (0..samples)
                .map(|_| {
                    let started = Instant::now();
                    let (q, x, abs) = s.draw(|s| {
                        let q = draw_q(s);
                        let x = traceless(s.complexes(n, (-2.5, 2.5), (-0.5, 0.5)));
                        let c = QCocycle::new(n, q)?;
                        bounded(&c.closed_form(&DynParams::x(x.clone()))?)?;
                        Ok((q, x.clone(), c.residual(&DynParams::x(x))?))
                    })?;
                    let p = Params::new().s("N", n).c("q", q).coords("x", &x);
                    Ok(ResidualReport::new(
                        "q_cocycle",
                        "twist_bql_slN",
                        p,
                        Residual::new(abs, 1.0),
                        t.get(TOL_COCYCLE),
                        started,
                    ))
                })
                .collect()
        }));
    }
    jobs
}

// ---- twist

fn dyr_u(s: &mut Sampler) -> C64 {
    s.complex((-1.5, 1.5), (-0.6, 0.6))
}

fn twist_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in [2, 3] {
        for r in [2.3, 5.0, 11.0] {
            jobs.push(job("dyr_eqdiff", "twist_dyr_slN", move |s, samples, t| {
                (0..samples)
                    .map(|_| {
                        let started = Instant::now();
                        let (u, res) = s.draw(|s| {
                            let u = dyr_u(s);
                            bounded(&solve_dyr_twist(u, r, n)?.matrix())?;
                            Ok((u, eqdiff_residual(u, r, n)?))
                        })?;
                        let p = Params::new().s("N", n).f("r", r).c("u", u);
                        Ok(ResidualReport::new(
                            "dyr_eqdiff",
                            "twist_dyr_slN",
                            p,
                            Residual::relative(res),
                            t.get(TOL_SPECIAL),
                            started,
                        ))
                    })
                    .collect()
            }));
            jobs.push(job("dyr_eqlin", "twist_dyr_slN", move |s, samples, t| {
                (0..samples)
                    .map(|_| {
                        let started = Instant::now();
                        let (u, res) = s.draw(|s| {
                            let u = dyr_u(s);
                            let (f0, f1) =
                                (solve_dyr_twist(u, r, n)?, solve_dyr_twist(u + r, r, n)?);
                            bounded(&f0.matrix())?;
                            bounded(&f1.matrix())?;
                            Ok((u, check_linear_equation(&f0, &f1)?))
                        })?;
                        let p = Params::new().s("N", n).f("r", r).c("u", u);
                        Ok(ResidualReport::new(
                            "dyr_eqlin",
                            "twist_dyr_slN",
                            p,
                            Residual::relative(res),
                            t.get(TOL_SPECIAL),
                            started,
                        ))
                    })
                    .collect()
            }));
            jobs.push(job(
                "dyr_twist_proportional",
                "twist_dyr_slN",
                move |s, samples, t| {
                    let tw = sl_n::twist_dyr_sl_n(n, r)?;
                    let (dy, dyr) = (sl_n::dy_sl_n(n)?, sl_n::dyr_sl_n(n, r)?);
                    let tol = t.get(TOL_SPREAD);
                    (0..samples)
                        .map(|_| {
                            let started = Instant::now();
                            let (u, rf, target) = s.draw(|s| {
                                let u = dyr_u(s);
                                let rf = apply_twist(&tw, &dy, Some(u), None)?;
                                let target = dyr.eval(Some(u), None)?;
                                bounded(&rf)?;
                                bounded(&target)?;
                                Ok((u, rf, target))
                            })?;
                            let spread = match proportional(&rf, &target, f64::INFINITY) {
                                Err(Error::NotProportional { spread, .. }) => spread,
                                Err(Error::ZeroPattern(..)) => f64::INFINITY,
                                Err(e) => return Err(e),
                                Ok(k) => {
                                    let s = rf.max_abs_diff(&target.scale(k));
                                    s / (k.norm() * target.max_abs()).max(f64::MIN_POSITIVE)
                                }
                            };
                            let p = Params::new().s("N", n).f("r", r).c("u", u);
                            Ok(ResidualReport::new(
                                "dyr_twist_proportional",
                                "twist_dyr_slN",
                                p,
                                Residual::relative(spread),
                                tol,
                                started,
                            ))
                        })
                        .collect()
                },
            ));
        }
    }
    jobs.push(job("gauge", "dyr_slN", |s, samples, t| {
        let mut out = Vec::new();
        for n in 2..=4 {
            for r in [2.3, 5.0, 11.0] {
                for _ in 0..samples {
                    let started = Instant::now();
                    let (u, lhs, rhs) = s.draw(|s| {
                        let u = dyr_u(s);
                        let lhs = gauge(&sl_n::dyr_s_bar_matrix(n, u, r)?, &sl_n::dyr_gauge(n))?;
                        let rhs = sl_n::dyr_s_matrix(n, u, r)?;
                        bounded(&rhs)?;
                        Ok((u, lhs, rhs))
                    })?;
                    let p = Params::new().s("N", n).f("r", r).c("u", u);
                    let res = Residual::new(lhs.max_abs_diff(&rhs), 1.0);
                    out.push(ResidualReport::new(
                        "gauge",
                        "dyr_slN",
                        p,
                        res,
                        t.get(TOL_GAUGE),
                        started,
                    ));
                }
            }
        }
        Ok(out)
    }));
    jobs.push(job("product_formula", "uq_slN", |s, samples, t| {
        let mut out = Vec::new();
        for n in 2..=4 {
            for _ in 0..samples {
                let started = Instant::now();
                let q = draw_q(s);
                let lhs = sl_n::uq_sl_n_from_product(n, q)?;
                let rhs = sl_n::uq_sl_n(n, q)?.eval(None, None)?;
                let p = Params::new().s("N", n).c("q", q);
                let res = Residual::new(lhs.max_abs_diff(&rhs), lhs.max_abs());
                out.push(ResidualReport::new(
                    "product_formula",
                    "uq_slN",
                    p,
                    res,
                    t.get(TOL_ALGEBRAIC),
                    started,
                ));
            }
        }
        Ok(out)
    }));
    jobs.push(job("product_twist", "twist_us_slN", |s, samples, t| {
        let mut out = Vec::new();
        for n in 2..=4 {
            for _ in 0..samples {
                let started = Instant::now();
                let (x, pt) = s.draw(|s| {
                    // X_a = (N−1)/N + x_a decreasing in modulus keeps the product convergent
                    let mut re: Vec<f64> = (0..n).map(|_| s.real(-2.0, 4.0)).collect();
                    re.sort_by(|a, b| b.total_cmp(a));
                    let x = traceless(
                        re.into_iter()
                            .map(|v| C64::new(v, s.real(-0.3, 0.3)))
                            .collect(),
                    );
                    let (xd, y) = us_sl_n_product_inputs(&x);
                    bounded(&sl_n::twist_us_matrix(n, &x)?)?;
                    Ok((x, product_twist(&xd, &y, 10_000, 1e-16)?))
                })?;
                let closed = sl_n::twist_us_matrix(n, &x)?;
                let p = Params::new().s("N", n).coords("x", &x);
                let res = Residual::new(pt.matrix.max_abs_diff(&closed), closed.max_abs());
                out.push(ResidualReport::new(
                    "product_twist",
                    "twist_us_slN",
                    p.clone(),
                    res,
                    t.get(TOL_PRINTED),
                    started,
                ));
                // geometric truncation: mean contraction rate over the tail below 1
                let rate = tail_rate(&pt.corrections);
                out.push(ResidualReport::new(
                    "product_twist_decay",
                    "twist_us_slN",
                    p,
                    Residual::relative(rate),
                    0.999,
                    started,
                ));
            }
        }
        Ok(out)
    }));
    jobs
}

/// Geometric mean of successive ratios over the second half of `c`.
fn tail_rate(c: &[f64]) -> f64 {
    let c: Vec<f64> = c.iter().copied().filter(|v| *v > 0.0).collect();
    let (h, last) = (c.len() / 2, c.len().saturating_sub(1));
    if last <= h {
        return 0.0;
    }
    (c[last] / c[h]).powf(1.0 / (last - h) as f64)
}

// ---- printed matrices reproduced by twisting

fn compare_report(
    identity: &str,
    family: &str,
    p: Params,
    lhs: &CMatrix,
    rhs: &CMatrix,
    tol: f64,
    started: Instant,
) -> ResidualReport {
    ResidualReport::new(
        identity,
        family,
        p,
        Residual::new(lhs.max_abs_diff(rhs), lhs.max_abs()),
        tol,
        started,
    )
}

fn printed_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in [2, 3] {
        jobs.push(job("twist_reproduces", "bql_slN", move |s, samples, t| {
            (0..samples)
                .map(|_| {
                    let started = Instant::now();
                    let (q, x, lhs, rhs) = s.draw(|s| {
                        let q = draw_q(s);
                        let x = traceless(s.complexes(n, (-2.5, 2.5), (-0.5, 0.5)));
                        let l = DynParams::x(x.clone());
                        let lhs = apply_twist(
                            &sl_n::twist_bql_sl_n(n, q)?,
                            &sl_n::uq_sl_n(n, q)?,
                            None,
                            Some(&l),
                        )?;
                        let rhs = sl_n::bql_sl_n(n, q)?.eval(None, Some(&l))?;
                        bounded(&rhs)?;
                        Ok((q, x, lhs, rhs))
                    })?;
                    let p = Params::new().s("N", n).c("q", q).coords("x", &x);
                    Ok(compare_report(
                        "twist_reproduces",
                        "bql_slN",
                        p,
                        &lhs,
                        &rhs,
                        t.get(TOL_PRINTED),
                        started,
                    ))
                })
                .collect()
        }));
        jobs.push(job("twist_reproduces", "us_slN", move |s, samples, t| {
            (0..samples)
                .map(|_| {
                    let started = Instant::now();
                    let (x, lhs, rhs) = s.draw(|s| {
                        let x = traceless(s.complexes(n, (-2.5, 2.5), (-0.5, 0.5)));
                        let l = DynParams::x(x.clone());
                        let f = sl_n::twist_us_matrix(n, &x)?;
                        let lhs =
                            conjugate(&CMatrix::identity(n * n), &f, &f, &GradedSpace::even(n))?;
                        let rhs = sl_n::us_sl_n(n)?.eval(None, Some(&l))?;
                        bounded(&rhs)?;
                        Ok((x, lhs, rhs))
                    })?;
                    let p = Params::new().s("N", n).coords("x", &x);
                    Ok(compare_report(
                        "twist_reproduces",
                        "us_slN",
                        p,
                        &lhs,
                        &rhs,
                        t.get(TOL_PRINTED),
                        started,
                    ))
                })
                .collect()
        }));
    }
    jobs.push(job("printed_table", "bql_osp12", |s, samples, t| {
        (0..samples)
            .map(|_| {
                let started = Instant::now();
                let (q, sv, lhs, rhs) = s.draw(|s| {
                    let q = draw_q(s);
                    let sv = s.complex((-2.5, 2.5), (-0.5, 0.5));
                    let lhs = osp12::bql_osp12(q)?.eval(None, Some(&DynParams::s(vec![sv])))?;
                    let rhs = osp12::bql_osp12_printed(q, cpow(q, sv))?;
                    bounded(&rhs)?;
                    Ok((q, sv, lhs, rhs))
                })?;
                let p = Params::new().c("q", q).c("s1", sv).c("w", cpow(q, sv));
                Ok(compare_report(
                    "printed_table",
                    "bql_osp12",
                    p,
                    &lhs,
                    &rhs,
                    t.get(TOL_PRINTED),
                    started,
                ))
            })
            .collect()
    }));
    jobs.push(job("printed_table", "dys_sl12", |s, samples, t| {
        (0..samples)
            .map(|_| {
                let started = Instant::now();
                let (u, sv, lhs, rhs) = s.draw(|s| {
                    let u = s.complex((-1.5, 1.5), (-0.5, 0.5));
                    let sv = s.complexes(2, (-2.5, 2.5), (-0.5, 0.5));
                    let l = DynParams::s(sv.clone());
                    let lhs = apply_twist(
                        &sl12::twist_us_sl12()?,
                        &sl12::dy_sl12()?,
                        Some(u),
                        Some(&l),
                    )?;
                    let rhs = sl12::dys_sl12()?.eval(Some(u), Some(&l))?;
                    bounded(&rhs)?;
                    Ok((u, sv, lhs, rhs))
                })?;
                let p = Params::new().c("u", u).coords("s", &sv);
                Ok(compare_report(
                    "printed_table",
                    "dys_sl12",
                    p,
                    &lhs,
                    &rhs,
                    t.get(TOL_PRINTED),
                    started,
                ))
            })
            .collect()
    }));
    jobs.push(job("printed_table", "baxterised_osp12", |s, samples, t| {
        (0..samples)
            .map(|_| {
                let started = Instant::now();
                let (q, z, lhs, rhs) = s.draw(|s| {
                    let (q, z) = (draw_q(s), s.annulus(0.1, 3.0));
                    let lhs = osp12::baxterised_osp12_matrix(q, -q, z)?;
                    let rhs = osp12::baxterised_osp12_printed_matrix(q, z)?;
                    bounded(&rhs)?;
                    Ok((q, z, lhs, rhs))
                })?;
                let p = Params::new().c("q", q).c("z", z).s("a", "-q");
                Ok(compare_report(
                    "printed_table",
                    "baxterised_osp12",
                    p,
                    &lhs,
                    &rhs,
                    t.get(TOL_PRINTED),
                    started,
                ))
            })
            .collect()
    }));
    jobs.push(job(
        "baxter_boundary",
        "baxterised_osp12",
        |s, samples, t| {
            let mut out = Vec::new();
            for _ in 0..samples {
                // the z = 10⁶ remainder is O(1/(|a| z)); keep |q| moderate
                let q = C64::from_polar(s.real(0.6, 0.9), s.real(-0.3, 0.3));
                let (r12, r21i, p) = osp12::baxter_parts(q)?;
                for (label, a) in [("-q", -q), ("q3", q * q * q)] {
                    let params = || Params::new().c("q", q).s("a", label);
                    let started = Instant::now();
                    let m0 = osp12::baxterised_osp12_matrix(q, a, C64::new(0.0, 0.0))?;
                    out.push(compare_report(
                        "baxter_z0",
                        "baxterised_osp12",
                        params(),
                        &m0,
                        &r12,
                        t.get(TOL_ALGEBRAIC),
                        started,
                    ));
                    let m1 = osp12::baxterised_osp12_matrix(q, a, C64::new(1.0, 0.0))?;
                    out.push(compare_report(
                        "baxter_z1",
                        "baxterised_osp12",
                        params(),
                        &m1,
                        &p.scale(1.0 / q),
                        t.get(TOL_ALGEBRAIC),
                        started,
                    ));
                    let mi = osp12::baxterised_osp12_matrix(q, a, C64::new(1e6, 0.0))?;
                    let want = r21i.scale(1.0 / (q * q));
                    out.push(compare_report(
                        "baxter_zinf",
                        "baxterised_osp12",
                        params().f("z", 1e6),
                        &mi,
                        &want,
                        t.get(1e-5),
                        started,
                    ));
                }
            }
            Ok(out)
        },
    ));
    jobs
}

// ---- limits

fn limit_jobs() -> Vec<Job> {
    let grid = [1e-2, 1e-3, 1e-4];
    let mut jobs = Vec::new();
    for n in [2, 3] {
        jobs.push(job("limit_p0", "bqpl_slN_gauged", move |s, samples, t| {
            let mut out = Vec::new();
            for _ in 0..samples {
                let started = Instant::now();
                let (q, x, z, table) = s.draw(|s| {
                    // the O(p) constant grows like 1/|q²z|
                    let q = C64::new(s.real(0.6, 0.85), 0.0);
                    let x = separated(s, n);
                    let z = C64::from_polar(s.real(0.5, 0.8), s.real(0.3, 2.8));
                    let l = DynParams::x(x.clone());
                    admissible(&sl_n::uql_sl_n(n, q)?, &[Some(z)], &l, None)?;
                    Ok((q, x.clone(), z, limit_p_to_0(n, q, &l, z, &grid)?))
                })?;
                let p = Params::new().s("N", n).c("q", q).c("z", z).coords("x", &x);
                out.extend(table.reports("bqpl_slN_gauged", p, t.get(TOL_LIMIT_GAP), started));
                // p = 0 is the trigonometric matrix itself
                let l = DynParams::x(x.clone());
                let e = sl_n::bqpl_sl_n(n, q, C64::new(0.0, 0.0), sl_n::EllipticGauge::Gauged)?
                    .eval(Some(z), Some(&l))?;
                let u = sl_n::uql_sl_n(n, q)?.eval(Some(z), Some(&l))?;
                let p = Params::new()
                    .s("N", n)
                    .c("q", q)
                    .c("z", z)
                    .coords("x", &x)
                    .f("p", 0.0);
                out.push(compare_report(
                    "limit_p0_exact",
                    "bqpl_slN_gauged",
                    p,
                    &e,
                    &u,
                    t.get(TOL_ALGEBRAIC),
                    started,
                ));
            }
            Ok(out)
        }));
        jobs.push(job("limit_scaling", "uql_slN", move |s, samples, t| {
            let mut out = Vec::new();
            for _ in 0..samples {
                let started = Instant::now();
                let (u, x, table) = s.draw(|s| {
                    let u = s.complex((0.2, 1.2), (-0.3, 0.3));
                    let x = separated(s, n);
                    Ok((u, x.clone(), limit_scaling(n, u, &x, &grid)?))
                })?;
                let p = Params::new().s("N", n).c("u", u).coords("x", &x);
                out.extend(table.reports("uql_slN", p, t.get(TOL_LIMIT_GAP), started));
            }
            Ok(out)
        }));
    }
    jobs
}

/// Real traceless x with neighbouring gaps in [1, 2], away from the
/// resonances x_a − x_b ∈ {0, ±2}.
fn separated(s: &mut Sampler, n: usize) -> Vec<C64> {
    let mut acc = 0.0;
    let mut v = vec![C64::new(0.0, 0.0)];
    for _ in 1..n {
        acc -= s.real(1.0, 1.7);
        v.push(C64::new(acc, 0.0));
    }
    traceless(v)
}

// ---- special functions, fixed grids

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn grid_report(
    identity: &str,
    family: &str,
    p: Params,
    worst: f64,
    tol: f64,
    started: Instant,
) -> ResidualReport {
    ResidualReport::new(identity, family, p, Residual::relative(worst), tol, started)
}

fn specfun_jobs() -> Vec<Job> {
    let c = C64::new;
    vec![
        job("gamma1_shift", "gamma1", move |_, _, t| {
            let started = Instant::now();
            let mut worst: f64 = 0.0;
            for &w in &[c(1.0, 0.0), c(2.0, 0.0), c(3.3, 0.0), c(0.7, 0.2)] {
                for &x in &[c(0.3, 0.0), c(1.7, 0.4), c(-2.4, 0.9), c(4.1, -1.3)] {
                    let lhs = specfun::gamma1(x + w, w)? / specfun::gamma1(x, w)?;
                    worst = worst.max(rel(lhs, x));
                }
            }
            Ok(vec![grid_report(
                "gamma1_shift",
                "gamma1",
                Params::new().s("grid", "4x4"),
                worst,
                t.get(1e-10),
                started,
            )])
        }),
        job("double_sine_shift", "double_sine", move |_, _, t| {
            let started = Instant::now();
            let cfg = QuadratureConfig::default();
            let mut worst: f64 = 0.0;
            for &(w1, w2) in &[(1.0, 1.0), (2.3, 2.0), (5.0, 3.0), (11.0, 2.0)] {
                for k in 1..=4 {
                    for &im in &[0.0, 0.3] {
                        // x + ω_i stays inside the fundamental strip
                        let x1 = c(w2 * k as f64 / 5.0, im);
                        let lhs = specfun::double_sine(x1 + w1, w1, w2, &cfg)?
                            / specfun::double_sine(x1, w1, w2, &cfg)?;
                        worst = worst.max(rel(lhs, 1.0 / (2.0 * (PI * x1 / w2).sin())));
                        let x2 = c(w1 * k as f64 / 5.0, im);
                        let lhs = specfun::double_sine(x2 + w2, w1, w2, &cfg)?
                            / specfun::double_sine(x2, w1, w2, &cfg)?;
                        worst = worst.max(rel(lhs, 1.0 / (2.0 * (PI * x2 / w1).sin())));
                    }
                }
            }
            Ok(vec![grid_report(
                "double_sine_shift",
                "double_sine",
                Params::new().s("grid", "4x4x2"),
                worst,
                t.get(1e-8),
                started,
            )])
        }),
        job("double_sine_inversion", "double_sine", move |_, _, t| {
            let started = Instant::now();
            let cfg = QuadratureConfig::default();
            let mut worst: f64 = 0.0;
            for &(w1, w2) in &[(1.0, 1.0), (2.3, 2.0), (5.0, 3.0), (11.0, 2.0)] {
                for k in 1..=5 {
                    for &im in &[0.0, 0.4, -0.7] {
                        let x = c((w1 + w2) * k as f64 / 6.0, im);
                        let v = specfun::double_sine(x, w1, w2, &cfg)?
                            * specfun::double_sine(w1 + w2 - x, w1, w2, &cfg)?;
                        worst = worst.max((v - 1.0).norm());
                    }
                }
            }
            Ok(vec![grid_report(
                "double_sine_inversion",
                "double_sine",
                Params::new().s("grid", "4x5x3"),
                worst,
                t.get(1e-8),
                started,
            )])
        }),
        job("theta_quasi_periodicity", "theta_p", move |_, _, t| {
            let started = Instant::now();
            let cfg = TruncationConfig::default();
            let mut worst: f64 = 0.0;
            for &p in &[c(0.1, 0.0), c(0.3, 0.2), c(0.5, 0.0), c(-0.2, 0.4)] {
                for &z in &[c(0.7, 0.2), c(-1.3, 0.5), c(2.1, -0.9)] {
                    let lhs = specfun::theta_p(p * z, p, &cfg)?;
                    let rhs = -specfun::theta_p(z, p, &cfg)? / z;
                    worst = worst.max(rel(lhs, rhs));
                }
            }
            Ok(vec![grid_report(
                "theta_quasi_periodicity",
                "theta_p",
                Params::new().s("grid", "4x3"),
                worst,
                t.get(1e-10),
                started,
            )])
        }),
        job("hyp2f1_gauss", "hyp2f1", move |_, _, t| {
            let started = Instant::now();
            let mut worst: f64 = 0.0;
            for &(a, b, cc) in &[
                (c(0.3, 0.0), c(0.2, 0.0), c(1.5, 0.0)),
                (c(-0.4, 0.3), c(0.7, -0.2), c(2.1, 0.1)),
                (c(1.0, 0.0), c(0.5, 0.0), c(2.6, 0.0)),
                (c(0.17, 0.0), c(-0.17, 0.0), c(1.0 + 2.0 / 2.3, 0.0)),
            ] {
                let want = specfun::gamma(cc)? * specfun::gamma(cc - a - b)?
                    / (specfun::gamma(cc - a)? * specfun::gamma(cc - b)?);
                worst = worst.max((specfun::hyp2f1(a, b, cc, c(1.0, 0.0))? - want).norm());
            }
            Ok(vec![grid_report(
                "hyp2f1_gauss",
                "hyp2f1",
                Params::new().s("grid", "4"),
                worst,
                t.get(1e-11),
                started,
            )])
        }),
        job("hyp2f1_contiguous", "hyp2f1", move |_, _, t| {
            let started = Instant::now();
            let mut worst: f64 = 0.0;
            let zs = [
                c(0.3, 0.1),
                c(-0.8, 0.4),
                C64::from_polar(1.0, PI / 3.0),
                C64::from_polar(1.0, 2.0 * PI / 5.0),
                c(0.95, 0.5),
            ];
            for &(a, b, cc) in &[
                (c(0.3, 0.0), c(0.2, 0.0), c(1.5, 0.0)),
                (c(0.17, 0.1), c(-0.4, 0.0), c(1.9, -0.1)),
            ] {
                for &z in &zs {
                    let f = |a, cc| specfun::hyp2f1(a, b, cc, z);
                    let v = cc * (1.0 - z) * f(a, cc)? - cc * f(a - 1.0, cc)?
                        + (cc - b) * z * f(a, cc + 1.0)?;
                    worst = worst.max(v.norm());
                }
            }
            Ok(vec![grid_report(
                "hyp2f1_contiguous",
                "hyp2f1",
                Params::new().s("grid", "2x5"),
                worst,
                t.get(1e-9),
                started,
            )])
        }),
        job("omega_closed_form", "omega", move |s, samples, t| {
            let started = Instant::now();
            let mut worst: f64 = 0.0;
            for big_n in 1..=6 {
                for n in 0..big_n {
                    for _ in 0..samples {
                        let x = s.draw(|s| {
                            let x = s.complex((-3.0, 3.0), (-0.5, 0.5));
                            if (x.re - x.re.round()).abs() < 0.05 {
                                Err(Error::Domain("near integer".into()))
                            } else {
                                Ok(x)
                            }
                        })?;
                        let v = specfun::omega_fn(n, x, big_n)?;
                        worst = worst.max(rel(v, specfun::omega_sum(n, x, big_n)?));
                    }
                }
            }
            let p = Params::new().s("N", "1..6");
            Ok(vec![grid_report(
                "omega_closed_form",
                "omega",
                p,
                worst,
                t.get(TOL_ALGEBRAIC),
                started,
            )])
        }),
    ]
}
