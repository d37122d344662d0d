//! sl_N families in the fundamental representation.

use std::f64::consts::PI;
use std::sync::Arc;

use super::family::*;
use crate::error::{Error, Result};
use crate::gtensor::{Chart, DynParams, GradedSpace, WeightTable};
use crate::linalg::{cpow, swap, CMatrix, C64};
use crate::specfun::{
    gamma_ratio, hyp2f1, omega_fn, qexp, qpoch, rho_dy, rho_dyr, theta_p, QuadratureConfig,
    TruncationConfig,
};

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "N must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// x_a from a point given in the s or x chart.
pub fn x_coords(l: &DynParams, n: usize) -> Result<Vec<C64>> {
    match l.chart {
        Chart::X if l.coords.len() == n => Ok(l.coords.clone()),
        Chart::S if l.coords.len() == n - 1 => Ok(DynParams::s_to_x(&l.coords)),
        _ => Err(Error::InvalidParam(format!(
            "sl_{n} needs {n} x-coordinates or {} s-coordinates, got {} in chart {:?}",
            n - 1,
            l.coords.len(),
            l.chart
        ))),
    }
}

/// w_ab = q^{x_a − x_b}; in the W chart the coordinates are w_a with
/// w_ab = w_a / w_b.
pub fn w_matrix(l: &DynParams, n: usize, q: C64) -> Result<Vec<Vec<C64>>> {
    if l.chart == Chart::W {
        if l.coords.len() != n {
            return Err(Error::InvalidParam(format!(
                "sl_{n} needs {n} w-coordinates, got {}",
                l.coords.len()
            )));
        }
        if l.coords.iter().any(|w| w.norm() == 0.0) {
            return Err(Error::SingularDynamical("w coordinate is zero".into()));
        }
        return Ok((0..n)
            .map(|a| (0..n).map(|b| l.coords[a] / l.coords[b]).collect())
            .collect());
    }
    let x = x_coords(l, n)?;
    Ok((0..n)
        .map(|a| (0..n).map(|b| cpow(q, x[a] - x[b])).collect())
        .collect())
}

/// Fills R from per-pair coefficient rules: diag(a) on E_aa⊗E_aa,
/// same(a,b) on E_aa⊗E_bb, swap(a,b) on E_ab⊗E_ba (a ≠ b).
fn assemble(
    n: usize,
    diag: impl Fn(usize) -> Result<C64>,
    same: impl Fn(usize, usize) -> Result<C64>,
    swp: impl Fn(usize, usize) -> Result<C64>,
) -> Result<CMatrix> {
    let mut m = CMatrix::zeros(n * n, n * n);
    for a in 0..n {
        m[(a * n + a, a * n + a)] = diag(a)?;
        for b in 0..n {
            if a != b {
                m[(a * n + b, a * n + b)] = same(a, b)?;
                m[(a * n + b, b * n + a)] = swp(a, b)?;
            }
        }
    }
    Ok(m)
}

/// (uI + P)/(u+1): the DY(sl_N) R-matrix divided by ρ_DY.
pub fn yang_matrix(n: usize, u: C64) -> Result<CMatrix> {
    let d = spectral_denominator(u + 1.0, "u + 1")?;
    Ok((&CMatrix::identity(n * n).scale(u) + &swap(n)).scale(1.0 / d))
}

pub fn dy_sl_n(n: usize) -> Result<RMatrixFamily> {
    check_n(n)?;
    let eval: Evaluator = Arc::new(move |s, _| {
        let u = spectral_arg(s);
        let base = yang_matrix(n, u)?;
        Ok(base.scale(rho_dy(u, n)?))
    });
    Ok(RMatrixFamily::new(
        "dy_slN",
        GradedSpace::even(n),
        Spectral::Additive,
        None,
        false,
        vec![param("N", n as f64)],
        eval,
    ))
}

pub fn uq_sl_n(n: usize, q: C64) -> Result<RMatrixFamily> {
    check_n(n)?;
    let m = uq_sl_n_matrix(n, q);
    let eval: Evaluator = Arc::new(move |_, _| Ok(m.clone()));
    Ok(RMatrixFamily::new(
        "uq_slN",
        GradedSpace::even(n),
        Spectral::None,
        None,
        false,
        vec![param("N", n as f64), param("q", q)],
        eval,
    ))
}

fn uq_sl_n_matrix(n: usize, q: C64) -> CMatrix {
    let k = cpow(q, C64::new(1.0 / n as f64, 0.0));
    let mut m = CMatrix::identity(n * n);
    for a in 0..n {
        m[(a * n + a, a * n + a)] = 1.0 / q;
        for b in a + 1..n {
            m[(a * n + b, b * n + a)] = 1.0 / q - q;
        }
    }
    m.scale(k)
}

/// (π⊗π) of ∏_γ exp_{q²}(−(q−q⁻¹) e_γ⊗f_γ) · q^{−Σ d_ij h_i⊗h_j}, the
/// product over positive roots taken in reversed normal order.
pub fn uq_sl_n_from_product(n: usize, q: C64) -> Result<CMatrix> {
    check_n(n)?;
    let nf = n as f64;
    let mut roots = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            roots.push((a, b));
        }
    }
    let mut rhat = CMatrix::identity(n * n);
    for &(a, b) in roots.iter().rev() {
        let arg = CMatrix::unit(n, a, b)
            .kron(&CMatrix::unit(n, b, a))
            .scale(-(q - 1.0 / q));
        rhat = &rhat * &qexp(&arg, q * q, 8)?;
    }
    // h_i = E_ii − E_{i+1,i+1}, d_ij = min(i,j) − ij/N, i,j = 1..N−1
    let h = |i: usize, a: usize| -> f64 {
        (if a + 1 == i { 1.0 } else { 0.0 }) - (if a == i { 1.0 } else { 0.0 })
    };
    let mut kdiag = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut e = 0.0;
            for i in 1..n {
                for j in 1..n {
                    let d = i.min(j) as f64 - (i * j) as f64 / nf;
                    e += d * h(i, a) * h(j, b);
                }
            }
            kdiag.push(cpow(q, C64::new(-e, 0.0)));
        }
    }
    Ok(&rhat * &CMatrix::from_diag(&kdiag))
}

fn twist_bql_matrix(n: usize, q: C64, w: &[Vec<C64>]) -> Result<CMatrix> {
    let mut f = CMatrix::identity(n * n);
    for a in 0..n {
        for b in a + 1..n {
            let d = dyn_denominator(1.0 - w[a][b], "1 - w_ab")?;
            f[(a * n + b, b * n + a)] = (q - 1.0 / q) * w[a][b] / d;
        }
    }
    Ok(f)
}

pub fn twist_bql_sl_n(n: usize, q: C64) -> Result<Twist> {
    check_n(n)?;
    let eval: Evaluator =
        Arc::new(move |_, l| twist_bql_matrix(n, q, &w_matrix(dyn_arg(l), n, q)?));
    Ok(Twist::new(
        "twist_bql_slN",
        GradedSpace::even(n),
        Spectral::None,
        Some(Chart::X),
        Application::Constant,
        vec![param("N", n as f64), param("q", q)],
        eval,
    ))
}

pub fn bql_sl_n(n: usize, q: C64) -> Result<RMatrixFamily> {
    check_n(n)?;
    let k = cpow(q, C64::new(1.0 / n as f64, 0.0));
    let eval: Evaluator = Arc::new(move |_, l| {
        let w = w_matrix(dyn_arg(l), n, q)?;
        assemble(
            n,
            |_| Ok(k / q),
            |a, b| {
                if b > a {
                    return Ok(k);
                }
                let wab = w[a][b];
                let d = dyn_denominator(1.0 - wab, "1 - w_ab")?;
                Ok(k * (1.0 - q * q * wab) * (1.0 - wab / (q * q)) / (d * d))
            },
            |a, b| Ok(k * (q - 1.0 / q) / dyn_denominator(w[a][b] - 1.0, "w_ab - 1")?),
        )
    });
    Ok(RMatrixFamily::new(
        "bql_slN",
        GradedSpace::even(n),
        Spectral::None,
        Some(Chart::X),
        false,
        vec![param("N", n as f64), param("q", q)],
        eval,
    )
    .with_weights(WeightTable::sl_n_x(n)))
}

pub fn twist_us_matrix(n: usize, x: &[C64]) -> Result<CMatrix> {
    let mut f = CMatrix::identity(n * n);
    for a in 0..n {
        for b in a + 1..n {
            f[(a * n + b, b * n + a)] = -2.0 / dyn_denominator(x[a] - x[b], "x_a - x_b")?;
        }
    }
    Ok(f)
}

pub fn twist_us_sl_n(n: usize) -> Result<Twist> {
    check_n(n)?;
    let eval: Evaluator = Arc::new(move |_, l| twist_us_matrix(n, &x_coords(dyn_arg(l), n)?));
    Ok(Twist::new(
        "twist_us_slN",
        GradedSpace::even(n),
        Spectral::None,
        Some(Chart::X),
        Application::Constant,
        vec![param("N", n as f64)],
        eval,
    ))
}

pub fn us_sl_n(n: usize) -> Result<RMatrixFamily> {
    check_n(n)?;
    let eval: Evaluator = Arc::new(move |_, l| {
        let x = x_coords(dyn_arg(l), n)?;
        assemble(
            n,
            |_| Ok(one()),
            |a, b| {
                if b > a {
                    return Ok(one());
                }
                let d = dyn_denominator(x[a] - x[b], "x_a - x_b")?;
                Ok(1.0 - 4.0 / (d * d))
            },
            |a, b| Ok(2.0 / dyn_denominator(x[a] - x[b], "x_a - x_b")?),
        )
    });
    Ok(RMatrixFamily::new(
        "us_slN",
        GradedSpace::even(n),
        Spectral::None,
        Some(Chart::X),
        false,
        vec![param("N", n as f64)],
        eval,
    )
    .with_weights(WeightTable::sl_n_x(n)))
}

/// ρ of the trigonometric dynamical R-matrix:
/// q^{−(N−1)/N} (q²z;q^{2N})(q^{2N−2}z;q^{2N}) / ((z;q^{2N})(q^{2N}z;q^{2N})).
pub fn rho_uql(z: C64, q: C64, n: usize, cfg: &TruncationConfig) -> Result<C64> {
    let nf = n as f64;
    let b = [q.powu(2 * n as u32)];
    let num = qpoch(q * q * z, &b, cfg)? * qpoch(q.powu(2 * n as u32 - 2) * z, &b, cfg)?;
    let den = qpoch(z, &b, cfg)? * qpoch(q.powu(2 * n as u32) * z, &b, cfg)?;
    let pre = cpow(q, C64::new(-(nf - 1.0) / nf, 0.0));
    Ok(pre * num / spectral_denominator(den, "(z;q^2N)(q^2N z;q^2N)")?)
}

/// The trigonometric dynamical R-matrix without its ρ factor.
pub fn uql_sl_n_matrix(n: usize, q: C64, z: C64, l: &DynParams) -> Result<CMatrix> {
    check_n(n)?;
    let w = w_matrix(l, n, q)?;
    let dz = spectral_denominator(1.0 - q * q * z, "1 - q^2 z")?;
    assemble(
        n,
        |_| Ok(one()),
        |a, b| {
            let base = q * (1.0 - z) / dz;
            if b > a {
                return Ok(base);
            }
            let wab = w[a][b];
            let d = dyn_denominator(1.0 - wab, "1 - w_ab")?;
            Ok(base * (1.0 - wab * q * q) * (1.0 - wab / (q * q)) / (d * d))
        },
        |a, b| {
            let wab = w[a][b];
            Ok((1.0 - q * q) * (1.0 - wab * z) / (dz * dyn_denominator(1.0 - wab, "1 - w_ab")?))
        },
    )
}

pub fn uql_sl_n(n: usize, q: C64) -> Result<RMatrixFamily> {
    check_n(n)?;
    let cfg = TruncationConfig::default();
    let eval: Evaluator = Arc::new(move |s, l| {
        let z = spectral_arg(s);
        let m = uql_sl_n_matrix(n, q, z, dyn_arg(l))?;
        Ok(m.scale(rho_uql(z, q, n, &cfg)?))
    });
    Ok(RMatrixFamily::new(
        "uql_slN",
        GradedSpace::even(n),
        Spectral::Multiplicative,
        Some(Chart::X),
        false,
        vec![param("N", n as f64), param("q", q)],
        eval,
    )
    .with_weights(WeightTable::sl_n_x(n)))
}

pub fn dys_sl_n(n: usize) -> Result<RMatrixFamily> {
    check_n(n)?;
    let eval: Evaluator = Arc::new(move |s, l| {
        let u = spectral_arg(s);
        let x = x_coords(dyn_arg(l), n)?;
        let rho = rho_dy(u, n)?;
        let du = spectral_denominator(u + 1.0, "u + 1")?;
        assemble(
            n,
            |_| Ok(rho),
            |a, b| {
                let base = rho * u / du;
                if b > a {
                    return Ok(base);
                }
                let d = dyn_denominator(x[a] - x[b], "x_a - x_b")?;
                Ok(base * (1.0 - 4.0 / (d * d)))
            },
            |a, b| Ok(rho * (1.0 + 2.0 * u / dyn_denominator(x[a] - x[b], "x_a - x_b")?) / du),
        )
    });
    Ok(RMatrixFamily::new(
        "dys_slN",
        GradedSpace::even(n),
        Spectral::Additive,
        Some(Chart::X),
        false,
        vec![param("N", n as f64)],
        eval,
    )
    .with_weights(WeightTable::sl_n_x(n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticGauge {
    /// diagonal coefficients q²Θ_p(q⁻²w)/Θ_p(w) · Θ_p(z)/Θ_p(q²z)
    Printed,
    /// the gauge-transformed diagonal coefficients built from (·;p)_∞
    Gauged,
}

/// ρ_B(z) of the elliptic family (double products over q^{2N} and p).
pub fn rho_bqpl(z: C64, q: C64, p: C64, n: usize, cfg: &TruncationConfig) -> Result<C64> {
    let nf = n as f64;
    let q2n = q.powu(2 * n as u32);
    let q2 = q * q;
    let q2n2 = q.powu(2 * n as u32 - 2);
    let b = [q2n, p];
    let pr = |x: C64| qpoch(x, &b, cfg);
    if z.norm() == 0.0 {
        return Err(Error::SingularSpectral("z = 0".into()));
    }
    let zi = 1.0 / z;
    let first = pr(q2 * z)? * pr(q2n2 * z)?
        / spectral_denominator(pr(z)? * pr(q2n * z)?, "(z;q^2N,p)(q^2N z;q^2N,p)")?;
    let second = pr(p * zi)? * pr(p * q2n * zi)?
        / spectral_denominator(
            pr(p * q2 * zi)? * pr(p * q2n2 * zi)?,
            "(pq^2/z;q^2N,p)(pq^(2N-2)/z;q^2N,p)",
        )?;
    Ok(cpow(q, C64::new(-(nf - 1.0) / nf, 0.0)) * first * second)
}

pub fn bqpl_sl_n(n: usize, q: C64, p: C64, gauge: EllipticGauge) -> Result<RMatrixFamily> {
    check_n(n)?;
    if p.norm() >= 1.0 {
        return Err(Error::InvalidParam(format!(
            "elliptic nome must satisfy |p| < 1, got {p}"
        )));
    }
    let cfg = TruncationConfig::default();
    let name = match gauge {
        EllipticGauge::Printed => "bqpl_slN",
        EllipticGauge::Gauged => "bqpl_slN_gauged",
    };
    let eval: Evaluator = Arc::new(move |s, l| {
        let z = spectral_arg(s);
        let w = w_matrix(dyn_arg(l), n, q)?;
        let th = |x: C64| theta_p(x, p, &cfg);
        let rho = rho_bqpl(z, q, p, n, &cfg)?;
        let zfac = th(z)? / spectral_denominator(th(q * q * z)?, "Theta_p(q^2 z)")?;
        let pb = [p];
        let po = |x: C64| qpoch(x, &pb, &cfg);
        assemble(
            n,
            |_| Ok(rho),
            |a, b| {
                let wab = w[a][b];
                let c = match gauge {
                    EllipticGauge::Printed => {
                        q * q * th(wab / (q * q))? / dyn_denominator(th(wab)?, "Theta_p(w_ab)")?
                    }
                    EllipticGauge::Gauged => {
                        let v = if b > a { p / wab } else { 1.0 / wab };
                        let d = dyn_denominator(po(v)?, "(w_ab^-1;p)")?;
                        q * po(v * q * q)? * po(v / (q * q))? / (d * d)
                    }
                };
                Ok(rho * c * zfac)
            },
            |a, b| {
                let wab = w[a][b];
                let num = th(wab * z)? * th(q * q)?;
                let den = dyn_denominator(th(wab)?, "Theta_p(w_ab)")?
                    * spectral_denominator(th(q * q * z)?, "Theta_p(q^2 z)")?;
                Ok(rho * num / den)
            },
        )
    });
    Ok(RMatrixFamily::new(
        name,
        GradedSpace::even(n),
        Spectral::Multiplicative,
        Some(Chart::X),
        false,
        vec![param("N", n as f64), param("q", q), param("p", p)],
        eval,
    )
    .with_weights(WeightTable::sl_n_x(n)))
}

fn root(n: usize, k: i64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * k.rem_euclid(n as i64) as f64 / n as f64)
}

/// S(u) in the Ω-form: Ω_{i2−i1}(u/r) on (i1i2 → i2i1), Ω_{i2−i1}(1/r) on
/// (i1i2 → i1i2), with i2−i1 taken mod N.
pub fn dyr_s_matrix(n: usize, u: C64, r: f64) -> Result<CMatrix> {
    check_n(n)?;
    let mut m = CMatrix::zeros(n * n, n * n);
    for i1 in 0..n {
        for i2 in 0..n {
            let k = (i2 + n - i1) % n;
            m[(i1 * n + i2, i2 * n + i1)] += omega_fn(k, u / r, n)?;
            m[(i1 * n + i2, i1 * n + i2)] += omega_fn(k, C64::new(1.0 / r, 0.0), n)?;
        }
    }
    Ok(m)
}

/// S̄_{ab}^{c,a+b−c}(u) = s(u+1+(b−a)r) / (s(u+(b−c)r) s(1−(a−c)r)), s(t) = sin(πt/(Nr)).
pub fn dyr_s_bar_matrix(n: usize, u: C64, r: f64) -> Result<CMatrix> {
    check_n(n)?;
    let k = PI / (n as f64 * r);
    let s = |t: C64| (t * k).sin();
    let mut m = CMatrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let d = (a + b + n - cc) % n;
                let (ai, bi, ci) = (a as f64, b as f64, cc as f64);
                let den = s(u + (bi - ci) * r) * s(C64::new(1.0 - (ai - ci) * r, 0.0));
                m[(a * n + b, cc * n + d)] =
                    s(u + 1.0 + (bi - ai) * r) / spectral_denominator(den, "S-bar denominator")?;
            }
        }
    }
    Ok(m)
}

/// V_i^j = N^{−1/2} ω^{i(j+1)} (0-based), so that S = (V⊗V) S̄ (V⊗V)⁻¹.
pub fn dyr_gauge(n: usize) -> CMatrix {
    let k = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |i, j| root(n, (i * (j + 1)) as i64) * k)
}

/// −(1/N) ρ_DYr(u) sin(πu/r) sin(π/r) / sin(π(u+1)/r).
pub fn dyr_prefactor(n: usize, u: C64, r: f64, cfg: &QuadratureConfig) -> Result<C64> {
    let rho = rho_dyr(u, r, n, cfg)?;
    let den = spectral_denominator(((u + 1.0) * PI / r).sin(), "sin(pi(u+1)/r)")?;
    Ok(-rho * (u * PI / r).sin() * (PI / r).sin() / (den * n as f64))
}

fn check_r(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParam(format!("r must be positive, got {r}")));
    }
    Ok(())
}

/// The R̄ form: prefactor · S̄.
pub fn dyr_sl_n_bar(n: usize, r: f64) -> Result<RMatrixFamily> {
    check_n(n)?;
    check_r(r)?;
    let cfg = QuadratureConfig::default();
    let eval: Evaluator = Arc::new(move |s, _| {
        let u = spectral_arg(s);
        Ok(dyr_s_bar_matrix(n, u, r)?.scale(dyr_prefactor(n, u, r, &cfg)?))
    });
    Ok(RMatrixFamily::new(
        "dyr_slN_bar",
        GradedSpace::even(n),
        Spectral::Additive,
        None,
        false,
        vec![param("N", n as f64), param("r", r)],
        eval,
    ))
}

/// (V⊗V) R̄ (V⊗V)⁻¹.
pub fn dyr_sl_n(n: usize, r: f64) -> Result<RMatrixFamily> {
    check_n(n)?;
    check_r(r)?;
    let cfg = QuadratureConfig::default();
    let v = dyr_gauge(n);
    let w = v.kron(&v);
    let wi = w.inverse()?;
    let eval: Evaluator = Arc::new(move |s, _| {
        let u = spectral_arg(s);
        let sb = dyr_s_bar_matrix(n, u, r)?;
        Ok((&(&w * &sb) * &wi).scale(dyr_prefactor(n, u, r, &cfg)?))
    });
    Ok(RMatrixFamily::new(
        "dyr_slN",
        GradedSpace::even(n),
        Spectral::Additive,
        None,
        false,
        vec![param("N", n as f64), param("r", r)],
        eval,
    ))
}

/// b(u; z) = Γ((u−1)/r+1)/Γ(u/r+1) ₂F₁(−1/r, (u−1)/r+1; u/r+1; z)
pub fn dyr_b(u: C64, r: f64, z: C64) -> Result<C64> {
    let a1 = (u - 1.0) / r + 1.0;
    Ok(gamma_ratio(a1, u / r + 1.0)? * hyp2f1(C64::new(-1.0 / r, 0.0), a1, u / r + 1.0, z)?)
}

/// c(u; z) = −(z/r) Γ((u−1)/r+1)/Γ(u/r+2) ₂F₁(1−1/r, (u−1)/r+1; u/r+2; z)
pub fn dyr_c(u: C64, r: f64, z: C64) -> Result<C64> {
    let a1 = (u - 1.0) / r + 1.0;
    Ok(-z / r
        * gamma_ratio(a1, u / r + 2.0)?
        * hyp2f1(C64::new(1.0 - 1.0 / r, 0.0), a1, u / r + 2.0, z)?)
}

/// The twist F(u) taking DY(sl_N) to DYr(sl_N): unit 1×1 blocks and, for
/// a<b with z = ω^{b−a}, the 2×2 block [[b(z), c(z)], [c(1/z), b(1/z)]] on
/// (ab, ba).
pub fn dyr_twist_matrix(n: usize, u: C64, r: f64) -> Result<CMatrix> {
    check_n(n)?;
    check_r(r)?;
    let mut f = CMatrix::identity(n * n);
    for a in 0..n {
        for b in a + 1..n {
            let z = root(n, (b - a) as i64);
            let zi = root(n, a as i64 - b as i64);
            let (ab, ba) = (a * n + b, b * n + a);
            f[(ab, ab)] = dyr_b(u, r, z)?;
            f[(ab, ba)] = dyr_c(u, r, z)?;
            f[(ba, ab)] = dyr_c(u, r, zi)?;
            f[(ba, ba)] = dyr_b(u, r, zi)?;
        }
    }
    Ok(f)
}

pub fn twist_dyr_sl_n(n: usize, r: f64) -> Result<Twist> {
    check_n(n)?;
    check_r(r)?;
    let eval: Evaluator = Arc::new(move |s, _| dyr_twist_matrix(n, spectral_arg(s), r));
    Ok(Twist::new(
        "twist_dyr_slN",
        GradedSpace::even(n),
        Spectral::Additive,
        None,
        Application::AdditiveReflect,
        vec![param("N", n as f64), param("r", r)],
        eval,
    ))
}
