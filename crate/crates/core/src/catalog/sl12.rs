//! sl(1|2) families on C^{1|2} with grading (1, 0, 1); tilde matrices.

use std::f64::consts::PI;
use std::sync::Arc;

use super::family::*;
use super::osp12::ek;
use crate::error::{Error, Result};
use crate::gtensor::{tilde_signs, Chart, DynParams, GradedSpace, WeightTable};
use crate::linalg::{CMatrix, C64};
use crate::twistlab::conjugate;

const G: [u8; 3] = [1, 0, 1];

fn sign(a: usize, b: usize) -> f64 {
    if G[a] * G[b] == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Σ u/(u+1)(−1)^{[a][b]} E_aa⊗E_bb + 1/(u+1) E_ab⊗E_ba.
pub fn dy_sl12_matrix(u: C64) -> Result<CMatrix> {
    let d = spectral_denominator(u + 1.0, "u + 1")?;
    let mut m = CMatrix::zeros(9, 9);
    for a in 0..3 {
        for b in 0..3 {
            m[(a * 3 + b, a * 3 + b)] += u / d * sign(a, b);
            m[(a * 3 + b, b * 3 + a)] += 1.0 / d;
        }
    }
    Ok(m)
}

pub fn dy_sl12() -> Result<RMatrixFamily> {
    let eval: Evaluator = Arc::new(|s, _| dy_sl12_matrix(spectral_arg(s)));
    Ok(RMatrixFamily::new(
        "dy_sl12",
        GradedSpace::sl12(),
        Spectral::Additive,
        None,
        true,
        vec![],
        eval,
    ))
}

fn check_r(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParam(format!("r must be positive, got {r}")));
    }
    Ok(())
}

/// `exp_sign` is the sign of the 2iπ(B−A)/(Nr) part of the exponent in
/// the (ba,ba) and (ba,ab) entries; +1 solves the Yang–Baxter equation.
fn dyr_sl12_entries(u: C64, r: f64, exp_sign: f64) -> Result<CMatrix> {
    let sn = |t: C64| (t * PI / r).sin();
    let den = spectral_denominator(sn(u + 1.0), "sin(pi(u+1)/r)")?;
    let nr = 3.0 * r;
    let i = C64::i();
    let mut m = CMatrix::zeros(9, 9);
    for a in [0, 2] {
        m[(a * 3 + a, a * 3 + a)] = -sn(u - 1.0) / den;
    }
    m[(4, 4)] = C64::new(1.0, 0.0);
    let sr = (PI / r).sin();
    for a in 0..3 {
        for b in a + 1..3 {
            let (ai, bi) = ((a + 1) as f64, (b + 1) as f64);
            let sg = sign(a, b);
            m[(a * 3 + b, a * 3 + b)] =
                sn(u) / den * sg * (i * PI / r + 2.0 * i * PI * (ai - bi) / nr).exp();
            m[(b * 3 + a, b * 3 + a)] =
                sn(u) / den * sg * (-i * PI / r + exp_sign * 2.0 * i * PI * (bi - ai) / nr).exp();
            m[(a * 3 + b, b * 3 + a)] =
                sr / den * (i * PI * u / r + 2.0 * i * PI * (ai - bi) * u / nr).exp();
            m[(b * 3 + a, a * 3 + b)] =
                sr / den * (-i * PI * u / r + exp_sign * 2.0 * i * PI * (bi - ai) * u / nr).exp();
        }
    }
    Ok(m)
}

pub fn dyr_sl12_matrix(u: C64, r: f64) -> Result<CMatrix> {
    check_r(r)?;
    dyr_sl12_entries(u, r, 1.0)
}

/// The table with −2iπ(B−A)/(Nr) in the (ba,ba) and (ba,ab) exponents,
/// which fails the Yang–Baxter equation; kept for comparison.
pub fn dyr_sl12_as_printed(u: C64, r: f64) -> Result<CMatrix> {
    check_r(r)?;
    dyr_sl12_entries(u, r, -1.0)
}

pub fn dyr_sl12(r: f64) -> Result<RMatrixFamily> {
    check_r(r)?;
    let eval: Evaluator = Arc::new(move |s, _| dyr_sl12_matrix(spectral_arg(s), r));
    Ok(RMatrixFamily::new(
        "dyr_sl12",
        GradedSpace::sl12(),
        Spectral::Additive,
        None,
        true,
        vec![param("r", r)],
        eval,
    ))
}

fn sl12_s(l: &DynParams) -> Result<(C64, C64)> {
    match (l.chart, l.coords.as_slice()) {
        (Chart::S, [s1, s2]) => Ok((*s1, *s2)),
        _ => Err(Error::InvalidParam(format!(
            "sl(1|2) needs two s-coordinates, got {} in chart {:?}",
            l.coords.len(),
            l.chart
        ))),
    }
}

pub fn fus12(s1: C64, s2: C64) -> Result<CMatrix> {
    let d1 = dyn_denominator(s2 - 1.0, "s2 - 1")?;
    let d2 = dyn_denominator(s1 + s2, "s1 + s2")?;
    let d3 = dyn_denominator(s1 + 1.0, "s1 + 1")?;
    let f = &(&CMatrix::identity(9) + &ek(1, 0, 0, 1).scale(1.0 / d1))
        - &ek(2, 0, 0, 2).scale(1.0 / d2);
    Ok(&f + &ek(2, 1, 1, 2).scale(1.0 / d3))
}

pub fn twist_us_sl12() -> Result<Twist> {
    let eval: Evaluator = Arc::new(|_, l| {
        let (s1, s2) = sl12_s(dyn_arg(l))?;
        fus12(s1, s2)
    });
    Ok(Twist::new(
        "twist_us_sl12",
        GradedSpace::sl12(),
        Spectral::None,
        Some(Chart::S),
        Application::Constant,
        vec![],
        eval,
    ))
}

pub fn us_sl12() -> Result<RMatrixFamily> {
    let space = GradedSpace::sl12();
    let sp = space.clone();
    let eval: Evaluator = Arc::new(move |_, l| {
        let (s1, s2) = sl12_s(dyn_arg(l))?;
        let f = fus12(s1, s2)?;
        conjugate(&tilde_signs(&sp), &f, &f, &sp)
    });
    Ok(RMatrixFamily::new(
        "us_sl12",
        space,
        Spectral::None,
        Some(Chart::S),
        true,
        vec![],
        eval,
    )
    .with_weights(WeightTable::sl12()))
}

pub fn dys_sl12_matrix(u: C64, s1: C64, s2: C64) -> Result<CMatrix> {
    let du = spectral_denominator(1.0 + u, "1 + u")?;
    let d2 = dyn_denominator(s2 - 1.0, "s2 - 1")?;
    let s = s1 + s2;
    let ds = dyn_denominator(s, "s1 + s2")?;
    let d1 = dyn_denominator(s1 + 1.0, "s1 + 1")?;
    let mut m = CMatrix::zeros(9, 9);
    let entries = [
        ((0, 0), (1.0 - u) / du),
        ((1, 1), u * s2 * (s2 - 2.0) / (du * d2 * d2)),
        ((1, 3), (s2 - 1.0 + u) / (du * d2)),
        ((2, 2), u * (1.0 - s * s) / (du * ds * ds)),
        ((2, 6), (s + u) / (du * ds)),
        ((3, 1), (s2 - 1.0 - u) / (du * d2)),
        ((3, 3), u / du),
        ((4, 4), C64::new(1.0, 0.0)),
        ((5, 5), u * s1 * (s1 + 2.0) / (du * d1 * d1)),
        ((5, 7), (s1 + 1.0 + u) / (du * d1)),
        ((6, 2), (s - u) / (du * ds)),
        ((6, 6), -u / du),
        ((7, 5), (s1 + 1.0 - u) / (du * d1)),
        ((7, 7), u / du),
        ((8, 8), (1.0 - u) / du),
    ];
    for ((i, j), v) in entries {
        m[(i, j)] = v;
    }
    Ok(m)
}

pub fn dys_sl12() -> Result<RMatrixFamily> {
    let eval: Evaluator = Arc::new(|s, l| {
        let (s1, s2) = sl12_s(dyn_arg(l))?;
        dys_sl12_matrix(spectral_arg(s), s1, s2)
    });
    Ok(RMatrixFamily::new(
        "dys_sl12",
        GradedSpace::sl12(),
        Spectral::Additive,
        Some(Chart::S),
        true,
        vec![],
        eval,
    )
    .with_weights(WeightTable::sl12()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn dys_is_twisted_dy() {
        let u = c(0.37, 0.2);
        for &(s1, s2) in &[(c(0.4, 0.1), c(-0.7, 0.3)), (c(2.5, 0.0), c(0.3, 0.0))] {
            let f = fus12(s1, s2).unwrap();
            let t = conjugate(&dy_sl12_matrix(u).unwrap(), &f, &f, &GradedSpace::sl12()).unwrap();
            assert!(t.max_abs_diff(&dys_sl12_matrix(u, s1, s2).unwrap()) < 1e-13);
        }
    }

    #[test]
    fn dyr_variants_differ_only_in_lower_entries() {
        let (u, r) = (c(0.37, 0.2), 2.3);
        let a = dyr_sl12_matrix(u, r).unwrap();
        let b = dyr_sl12_as_printed(u, r).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let (row_ab, col) = (i, j);
                let upper =
                    [(1, 1), (2, 2), (5, 5), (1, 3), (2, 6), (5, 7)].contains(&(row_ab, col));
                if upper || a[(i, j)] == C64::new(0.0, 0.0) {
                    assert_eq!(a[(i, j)], b[(i, j)]);
                }
            }
        }
        assert!(a.max_abs_diff(&b) > 1e-3);
    }

    #[test]
    fn singular_points() {
        let l = DynParams::s(vec![c(0.5, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            dys_sl12().unwrap().eval(Some(c(0.2, 0.0)), Some(&l)),
            Err(Error::SingularDynamical(_))
        ));
        assert!(matches!(
            dy_sl12().unwrap().eval(Some(c(-1.0, 0.0)), None),
            Err(Error::SingularSpectral(_))
        ));
    }
}
