use std::time::Instant;

use super::report::{Params, Residual, ResidualReport};
use crate::catalog::RMatrixFamily;
use crate::error::{Error, Result};
use crate::gtensor::{embed, embed_with_shift, tilde, DynParams, GradedSpace, Pair, WeightTable};
use crate::linalg::{CMatrix, C64};

fn compare(l: &CMatrix, r: &CMatrix) -> Residual {
    Residual::new(l.max_abs_diff(r), l.max_abs())
}

/// Spectral arguments of the three factors: (12, 13, 23) = (s1, s1∘s2, s2).
fn triple(f: &RMatrixFamily, s1: Option<C64>, s2: Option<C64>) -> Result<[Option<C64>; 3]> {
    match (s1, s2) {
        (Some(a), Some(b)) => Ok([Some(a), Some(f.spectral.compose(a, b)), Some(b)]),
        (None, None) => Ok([None, None, None]),
        _ => Err(Error::InvalidParam(
            "give both spectral arguments or neither".into(),
        )),
    }
}

/// R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂ for plain (tilde or even) matrices.
pub fn ybe_matrices(r12: &CMatrix, r13: &CMatrix, r23: &CMatrix, n: usize) -> Residual {
    let (a, b, c) = (
        embed(r12, Pair::P12, n),
        embed(r13, Pair::P13, n),
        embed(r23, Pair::P23, n),
    );
    compare(&(&(&a * &b) * &c), &(&(&c * &b) * &a))
}

/// The graded equation written with explicit signs, for R (not R̃):
/// Σ_j R_{i1i2}^{j1j2} R_{j1i3}^{k1j3} R_{j2j3}^{k2k3} (−1)^{[i1][i2]+[i3][j1]+[j2][j3]}
/// = Σ_j R_{i2i3}^{j2j3} R_{i1j3}^{j1k3} R_{j1j2}^{k1k2} (−1)^{[i3][i2]+[i1][j3]+[j2][j1]}.
pub fn graded_ybe_explicit(
    r12: &CMatrix,
    r13: &CMatrix,
    r23: &CMatrix,
    v: &GradedSpace,
) -> Residual {
    let n = v.dim();
    let g = |i: usize| v.parity(i) as i32;
    let sgn = |e: i32| if e % 2 == 0 { 1.0 } else { -1.0 };
    let at =
        |m: &CMatrix, i1: usize, i2: usize, j1: usize, j2: usize| m[(i1 * n + i2, j1 * n + j2)];
    let n3 = n * n * n;
    let mut lhs = CMatrix::zeros(n3, n3);
    let mut rhs = CMatrix::zeros(n3, n3);
    for i1 in 0..n {
        for i2 in 0..n {
            for i3 in 0..n {
                let row = i1 * n * n + i2 * n + i3;
                for j1 in 0..n {
                    for j2 in 0..n {
                        for j3 in 0..n {
                            let s_l = sgn(g(i1) * g(i2) + g(i3) * g(j1) + g(j2) * g(j3));
                            let s_r = sgn(g(i3) * g(i2) + g(i1) * g(j3) + g(j2) * g(j1));
                            let a_l = at(r12, i1, i2, j1, j2);
                            let a_r = at(r23, i2, i3, j2, j3);
                            for k1 in 0..n {
                                for k2 in 0..n {
                                    for k3 in 0..n {
                                        let col = k1 * n * n + k2 * n + k3;
                                        if a_l.norm_sqr() > 0.0 {
                                            lhs[(row, col)] += a_l
                                                * at(r13, j1, i3, k1, j3)
                                                * at(r23, j2, j3, k2, k3)
                                                * s_l;
                                        }
                                        if a_r.norm_sqr() > 0.0 {
                                            rhs[(row, col)] += a_r
                                                * at(r13, i1, j3, j1, k3)
                                                * at(r12, j1, j2, k1, k2)
                                                * s_r;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    compare(&lhs, &rhs)
}

/// Ordinary YBE of the family's matrices; with `graded` the family output
/// is converted to R (tilde undone) and the explicit signed equation is
/// used instead.
pub fn ybe_residual_at(
    f: &RMatrixFamily,
    s1: Option<C64>,
    s2: Option<C64>,
    graded: bool,
) -> Result<Residual> {
    if f.dyn_chart.is_some() {
        return Err(Error::InvalidParam(format!(
            "{} is dynamical; use the dynamical equation",
            f.name
        )));
    }
    let [a, ab, b] = triple(f, s1, s2)?;
    let (m12, m13, m23) = (f.eval(a, None)?, f.eval(ab, None)?, f.eval(b, None)?);
    if !graded {
        return Ok(ybe_matrices(&m12, &m13, &m23, f.dim()));
    }
    let undo = |m: CMatrix| {
        if f.graded_output {
            tilde(&m, &f.space)
        } else {
            m
        }
    };
    Ok(graded_ybe_explicit(
        &undo(m12),
        &undo(m13),
        &undo(m23),
        &f.space,
    ))
}

pub fn ybe_residual(
    f: &RMatrixFamily,
    s1: Option<C64>,
    s2: Option<C64>,
    graded: bool,
    tol: f64,
) -> Result<ResidualReport> {
    let t = Instant::now();
    let res = ybe_residual_at(f, s1, s2, graded)?;
    let mut p = Params::new().family(&f.params);
    if let (Some(a), Some(b)) = (s1, s2) {
        p = p.c("s1", a).c("s2", b);
    }
    let id = if graded { "graded_ybe" } else { "ybe" };
    Ok(ResidualReport::new(id, &f.name, p, res, tol, t))
}

/// The dynamical equation
/// R₁₂(s1; λ+h⁽³⁾) R₁₃(s1∘s2; λ) R₂₃(s2; λ+h⁽¹⁾) = R₂₃(s2; λ) R₁₃(s1∘s2; λ+h⁽²⁾) R₁₂(s1; λ).
pub fn dybe_residual_at(
    f: &RMatrixFamily,
    lambda: &DynParams,
    wt: &WeightTable,
    s1: Option<C64>,
    s2: Option<C64>,
) -> Result<Residual> {
    let [a, ab, b] = triple(f, s1, s2)?;
    let n = f.dim();
    let ev = |s: Option<C64>| move |l: &DynParams| f.eval(s, Some(l));
    let l12 = embed_with_shift(ev(a), Pair::P12, Some(3), lambda, wt, n)?;
    let l13 = embed_with_shift(ev(ab), Pair::P13, None, lambda, wt, n)?;
    let l23 = embed_with_shift(ev(b), Pair::P23, Some(1), lambda, wt, n)?;
    let r23 = embed_with_shift(ev(b), Pair::P23, None, lambda, wt, n)?;
    let r13 = embed_with_shift(ev(ab), Pair::P13, Some(2), lambda, wt, n)?;
    let r12 = embed_with_shift(ev(a), Pair::P12, None, lambda, wt, n)?;
    Ok(compare(&(&(&l12 * &l13) * &l23), &(&(&r23 * &r13) * &r12)))
}

pub fn dybe_residual(
    f: &RMatrixFamily,
    lambda: &DynParams,
    wt: &WeightTable,
    s1: Option<C64>,
    s2: Option<C64>,
    tol: f64,
) -> Result<ResidualReport> {
    let t = Instant::now();
    let res = dybe_residual_at(f, lambda, wt, s1, s2)?;
    let prefix = match lambda.chart {
        crate::gtensor::Chart::S => "s",
        crate::gtensor::Chart::X => "x",
        crate::gtensor::Chart::W => "w",
    };
    let mut p = Params::new()
        .family(&f.params)
        .coords(prefix, &lambda.coords);
    if let (Some(a), Some(b)) = (s1, s2) {
        p = p.c("s1", a).c("s2", b);
    }
    Ok(ResidualReport::new("dybe", &f.name, p, res, tol, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{osp12, sl12, sl_n};
    use crate::linalg::c;

    #[test]
    fn rational_and_graded() {
        let f = sl_n::dy_sl_n(3).unwrap();
        assert!(
            ybe_residual_at(&f, Some(c(0.37, 0.2)), Some(c(-0.61, 0.1)), false)
                .unwrap()
                .normalized
                < 1e-12
        );
        let g = sl12::dy_sl12().unwrap();
        let (u, v) = (Some(c(0.37, 0.2)), Some(c(-0.61, 0.1)));
        assert!(ybe_residual_at(&g, u, v, true).unwrap().normalized < 1e-12);
        assert!(ybe_residual_at(&g, u, v, false).unwrap().normalized < 1e-12);
        // applying the ordinary equation to R itself fails
        let m = |s| tilde(&g.eval(s, None).unwrap(), &g.space);
        let (a, ab, b) = (m(u), m(Some(c(-0.24, 0.3))), m(v));
        assert!(ybe_matrices(&a, &ab, &b, 3).normalized > 1e-3);
        let q = osp12::uq_osp12(c(0.63, 0.0)).unwrap();
        assert!(ybe_residual_at(&q, None, None, false).unwrap().normalized < 1e-12);
        assert!(ybe_residual_at(&q, None, None, true).unwrap().normalized < 1e-12);
    }

    #[test]
    fn zero_weights_reduce_to_ybe() {
        let f = sl_n::dy_sl_n(2).unwrap();
        let (u, v) = (Some(c(0.3, 0.1)), Some(c(0.8, -0.2)));
        let plain = ybe_residual_at(&f, u, v, false).unwrap();
        // a constant dynamical family built from dy_slN
        let g = RMatrixFamily::new(
            "dy_const",
            f.space.clone(),
            f.spectral,
            Some(crate::gtensor::Chart::X),
            false,
            vec![],
            std::sync::Arc::new(move |s, _| f.eval(s, None)),
        );
        let l = DynParams::x(vec![c(0.2, 0.0), c(-0.2, 0.0)]);
        let zero = WeightTable::zero(crate::gtensor::Chart::X, 2, 2);
        assert_eq!(dybe_residual_at(&g, &l, &zero, u, v).unwrap(), plain);
    }

    #[test]
    fn dynamical_families() {
        let l = DynParams::x(vec![c(0.7, 0.1), c(-1.9, 0.0), c(1.2, -0.1)]);
        let wt = WeightTable::sl_n_x(3);
        let us = sl_n::us_sl_n(3).unwrap();
        assert!(
            dybe_residual_at(&us, &l, &wt, None, None)
                .unwrap()
                .normalized
                < 1e-12
        );
        let dys = sl_n::dys_sl_n(3).unwrap();
        assert!(
            dybe_residual_at(&dys, &l, &wt, Some(c(0.37, 0.1)), Some(c(-1.3, 0.2)))
                .unwrap()
                .normalized
                < 1e-10
        );
        // the opposite shift sign fails
        let neg = WeightTable::new(
            wt.chart,
            wt.shifts
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        );
        assert!(
            dybe_residual_at(&us, &l, &neg, None, None)
                .unwrap()
                .normalized
                > 1e-3
        );
    }
}
