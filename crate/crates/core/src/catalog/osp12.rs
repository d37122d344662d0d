//! osp(1|2) families on C^{1|2} with grading (1, 0, 0). All matrices here
//! are tilde matrices R̃ = D R.

use std::sync::Arc;

use super::family::*;
use crate::error::{Error, Result};
use crate::gtensor::{tilde_signs, Chart, DynParams, GradedSpace, WeightTable};
use crate::linalg::{cpow, swap, CMatrix, C64};
use crate::twistlab::conjugate;

/// E_ij ⊗ E_kl on C³⊗C³.
pub(crate) fn ek(i: usize, j: usize, k: usize, l: usize) -> CMatrix {
    CMatrix::unit(3, i, j).kron(&CMatrix::unit(3, k, l))
}

fn from_entries(entries: &[((usize, usize), C64)]) -> CMatrix {
    let mut m = CMatrix::zeros(9, 9);
    for &((i, j), v) in entries {
        m[(i, j)] = v;
    }
    m
}

pub fn uq_osp12_tilde(q: C64) -> CMatrix {
    let qi = 1.0 / q;
    let one = C64::new(1.0, 0.0);
    from_entries(&[
        ((0, 0), -one),
        ((0, 7), q * q - 1.0),
        ((1, 1), one),
        ((2, 2), one),
        ((2, 6), qi - q),
        ((3, 1), qi - q),
        ((3, 3), one),
        ((4, 4), qi),
        ((5, 0), qi - q),
        ((5, 5), q),
        ((5, 7), (qi - q) * (q + 1.0)),
        ((6, 6), one),
        ((7, 7), q),
        ((8, 8), qi),
    ])
}

fn check_q(q: C64) -> Result<()> {
    if q.norm() == 0.0 || !q.is_finite() {
        return Err(Error::InvalidParam(format!(
            "q must be finite and non-zero, got {q}"
        )));
    }
    Ok(())
}

pub fn uq_osp12(q: C64) -> Result<RMatrixFamily> {
    check_q(q)?;
    let m = uq_osp12_tilde(q);
    let eval: Evaluator = Arc::new(move |_, _| Ok(m.clone()));
    Ok(RMatrixFamily::new(
        "uq_osp12",
        GradedSpace::osp12(),
        Spectral::None,
        None,
        true,
        vec![param("q", q)],
        eval,
    ))
}

/// w = q^s from the s chart, or w itself from the w chart.
pub(crate) fn osp_w(l: &DynParams, q: C64) -> Result<C64> {
    match (l.chart, l.coords.as_slice()) {
        (Chart::S, [s]) => Ok(cpow(q, *s)),
        (Chart::W, [w]) => Ok(*w),
        _ => Err(Error::InvalidParam(format!(
            "osp(1|2) needs one s- or w-coordinate, got {} in chart {:?}",
            l.coords.len(),
            l.chart
        ))),
    }
}

fn osp_s(l: &DynParams) -> Result<C64> {
    match (l.chart, l.coords.as_slice()) {
        (Chart::S, [s]) => Ok(*s),
        _ => Err(Error::InvalidParam(
            "osp(1|2) needs one s-coordinate".into(),
        )),
    }
}

/// The twist from U_q(osp(1|2)) to its dynamical quantum group, Q = q − 1/q.
pub fn fosp(q: C64, w: C64) -> Result<CMatrix> {
    let qq = q - 1.0 / q;
    let d1 = dyn_denominator(w - q, "w - q")?;
    let d2 = dyn_denominator(q * w - 1.0, "q w - 1")?;
    let d3 = dyn_denominator(w + 1.0, "w + 1")?;
    let mut f = CMatrix::identity(9);
    f = &f - &(&ek(0, 2, 2, 0) - &ek(0, 2, 0, 1).scale(q)).scale(w * qq / d1);
    f = &f - &(&ek(1, 0, 0, 1) - &ek(1, 0, 2, 0).scale(1.0 / q)).scale(q * w * qq / d2);
    f = &f - &ek(1, 2, 2, 1).scale(w * w * qq * (q + 1.0) / (d2 * d3));
    Ok(f)
}

pub fn twist_bql_osp12(q: C64) -> Result<Twist> {
    check_q(q)?;
    let eval: Evaluator = Arc::new(move |_, l| fosp(q, osp_w(dyn_arg(l), q)?));
    Ok(Twist::new(
        "twist_bql_osp12",
        GradedSpace::osp12(),
        Spectral::None,
        Some(Chart::S),
        Application::Constant,
        vec![param("q", q)],
        eval,
    ))
}

/// The dynamical R̃ obtained by twisting U_q(osp(1|2)).
pub fn bql_osp12(q: C64) -> Result<RMatrixFamily> {
    check_q(q)?;
    let r = uq_osp12_tilde(q);
    let space = GradedSpace::osp12();
    let sp = space.clone();
    let eval: Evaluator = Arc::new(move |_, l| {
        let f = fosp(q, osp_w(dyn_arg(l), q)?)?;
        conjugate(&r, &f, &f, &sp)
    });
    Ok(RMatrixFamily::new(
        "bql_osp12",
        space,
        Spectral::None,
        Some(Chart::S),
        true,
        vec![param("q", q)],
        eval,
    )
    .with_weights(WeightTable::osp12()))
}

/// The explicit table of entries of the dynamical R̃ at w = q^s.
pub fn bql_osp12_printed(q: C64, w: C64) -> Result<CMatrix> {
    let d_qw = dyn_denominator(q * w - 1.0, "q w - 1")?;
    let d_w = dyn_denominator(q - w, "q - w")?;
    let d_p = dyn_denominator(w + 1.0, "w + 1")?;
    let q2 = q * q;
    let one = C64::new(1.0, 0.0);
    let r1111 = (q2 * (w - 1.0) * (w - 1.0) + w * (q - 1.0) * (q * q2 - 1.0)) / (q * d_qw * d_w);
    let r1132 = (q2 - 1.0) * (q2 + w) * (1.0 - q * w) / (d_w * d_w * d_p);
    let r3211 = (q2 - 1.0) * w * (q2 * w + 1.0) * (w - q) / (q2 * d_qw * d_qw * d_p);
    Ok(from_entries(&[
        ((0, 0), r1111),
        ((0, 5), (q2 - 1.0) * q * w / d_w),
        ((0, 7), r1132),
        ((1, 1), (q * q2 * w - 1.0) * (w - q) / (q * d_qw * d_qw)),
        ((1, 3), -(q2 - 1.0) * w / d_qw),
        ((2, 2), one),
        ((2, 6), -(q2 - 1.0) / d_w),
        ((3, 1), (q - 1.0 / q) / d_qw),
        ((3, 3), one),
        ((4, 4), 1.0 / q),
        ((5, 0), (q - 1.0 / q) / d_qw),
        ((5, 5), q),
        ((5, 7), -(q2 - 1.0) * (q + 1.0) / (d_w * d_p)),
        ((6, 2), (q - 1.0 / q) * w / d_w),
        ((6, 6), (q * q2 - w) * (1.0 - q * w) / (q * d_w * d_w)),
        ((7, 0), r3211),
        ((7, 5), -(q2 - 1.0) * (q + 1.0) * w * w / (d_qw * d_p)),
        ((7, 7), (q2 * w + 1.0) * (q2 + w) / (q * d_p * d_p)),
        ((8, 8), 1.0 / q),
    ]))
}

/// The rational twist F(s) giving the dynamical R̃ of U_s(osp(1|2)).
pub fn fusosp(s: C64) -> Result<CMatrix> {
    let dm = dyn_denominator(s - 1.0, "s - 1")?;
    let dp = dyn_denominator(s + 1.0, "s + 1")?;
    let mut f = CMatrix::identity(9);
    f = &f - &(&ek(0, 2, 2, 0) - &ek(0, 2, 0, 1)).scale(2.0 / dm);
    f = &f - &(&(&ek(1, 0, 0, 1) + &ek(1, 2, 2, 1)) - &ek(1, 0, 2, 0)).scale(2.0 / dp);
    Ok(f)
}

pub fn twist_us_osp12() -> Result<Twist> {
    let eval: Evaluator = Arc::new(move |_, l| fusosp(osp_s(dyn_arg(l))?));
    Ok(Twist::new(
        "twist_us_osp12",
        GradedSpace::osp12(),
        Spectral::None,
        Some(Chart::S),
        Application::Constant,
        vec![],
        eval,
    ))
}

/// The twist of the graded identity: P F̃₂₁ P D F̃⁻¹.
pub fn us_osp12() -> Result<RMatrixFamily> {
    let space = GradedSpace::osp12();
    let sp = space.clone();
    let eval: Evaluator = Arc::new(move |_, l| {
        let f = fusosp(osp_s(dyn_arg(l))?)?;
        conjugate(&tilde_signs(&sp), &f, &f, &sp)
    });
    Ok(RMatrixFamily::new(
        "us_osp12",
        space,
        Spectral::None,
        Some(Chart::S),
        true,
        vec![],
        eval,
    )
    .with_weights(WeightTable::osp12()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaxterBranch {
    /// a = −q
    MinusQ,
    /// a = q³
    QCubed,
}

impl BaxterBranch {
    pub fn value(self, q: C64) -> C64 {
        match self {
            BaxterBranch::MinusQ => -q,
            BaxterBranch::QCubed => q * q * q,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "-q" | "minus_q" => Ok(BaxterBranch::MinusQ),
            "q3" | "q^3" | "q_cubed" => Ok(BaxterBranch::QCubed),
            _ => Err(Error::InvalidParam(format!(
                "Baxterisation branch must be -q or q3, got {s}"
            ))),
        }
    }
}

/// (R̃₁₂, R̃₂₁⁻¹, P), the pieces combined by the Baxterisation.
pub fn baxter_parts(q: C64) -> Result<(CMatrix, CMatrix, CMatrix)> {
    let r12 = uq_osp12_tilde(q);
    let p = swap(3);
    let r21i = (&(&p * &r12) * &p).inverse()?;
    Ok((r12, r21i, p))
}

/// R̃(z) = [(1−z) R̃₁₂ − a z(1−z) R̃₂₁⁻¹ + z(1−a)(1−q²)/q · P] / ((1−za)(1−zq²)).
pub fn baxterised_osp12_matrix(q: C64, a: C64, z: C64) -> Result<CMatrix> {
    let (r12, r21i, p) = baxter_parts(q)?;
    let d = spectral_denominator((1.0 - z * a) * (1.0 - z * q * q), "(1 - z a)(1 - z q^2)")?;
    let m = &(&r12.scale((1.0 - z) / d) - &r21i.scale(a * z * (1.0 - z) / d))
        + &p.scale(z * (1.0 - a) * (1.0 - q * q) / (q * d));
    Ok(m)
}

/// The combination with coefficients (1−z)/d, −a q² z(1−z)/d, z(1−a)(1−q²)/d.
/// It does not satisfy the Yang–Baxter equation; kept for comparison.
pub fn baxterised_osp12_as_printed(q: C64, a: C64, z: C64) -> Result<CMatrix> {
    let (r12, r21i, p) = baxter_parts(q)?;
    let d = spectral_denominator((1.0 - z * a) * (1.0 - z * q * q), "(1 - z a)(1 - z q^2)")?;
    let m = &(&r12.scale((1.0 - z) / d) - &r21i.scale(a * q * q * z * (1.0 - z) / d))
        + &p.scale(z * (1.0 - a) * (1.0 - q * q) / d);
    Ok(m)
}

/// The explicit entry table of the a = −q solution.
pub fn baxterised_osp12_printed_matrix(q: C64, z: C64) -> Result<CMatrix> {
    let qq = 1.0 / q - q;
    let d = spectral_denominator(1.0 - z * q * q, "1 - z q^2")?;
    let e = spectral_denominator(1.0 + z * q, "1 + z q")?;
    let de = d * e;
    let q2 = q * q;
    Ok(from_entries(&[
        ((0, 0), (z - 1.0) / d + z * (q + 1.0) * qq / de),
        ((0, 5), z * (1.0 - z) * (q2 - 1.0) / de),
        ((0, 7), (1.0 - z) * (q2 - 1.0) / de),
        ((1, 1), (1.0 - z) / d),
        ((1, 3), qq * z / d),
        ((2, 2), (1.0 - z) / d),
        ((2, 6), qq / d),
        ((3, 1), qq / d),
        ((3, 3), (1.0 - z) / d),
        ((4, 4), 1.0 / q),
        ((5, 0), (1.0 - z) * qq / de),
        ((5, 5), (1.0 - z) * (z + q) / de),
        ((5, 7), qq * (q + 1.0) / de),
        ((6, 2), qq * z / d),
        ((6, 6), (1.0 - z) / d),
        ((7, 0), z * (1.0 - z) * qq / de),
        ((7, 5), z * z * qq * (q + 1.0) / de),
        ((7, 7), (1.0 - z) * (z + q) / de),
        ((8, 8), 1.0 / q),
    ]))
}

pub fn baxterised_osp12(q: C64, branch: BaxterBranch) -> Result<RMatrixFamily> {
    check_q(q)?;
    let a = branch.value(q);
    let eval: Evaluator = Arc::new(move |s, _| baxterised_osp12_matrix(q, a, spectral_arg(s)));
    Ok(RMatrixFamily::new(
        "baxterised_osp12",
        GradedSpace::osp12(),
        Spectral::Multiplicative,
        None,
        true,
        vec![param("q", q), param("a", a)],
        eval,
    ))
}

/// The trigonometric dynamical R̃: Baxterised U_q(osp(1|2)) twisted by F(w).
pub fn uql_osp12(q: C64, branch: BaxterBranch) -> Result<RMatrixFamily> {
    check_q(q)?;
    let a = branch.value(q);
    let space = GradedSpace::osp12();
    let sp = space.clone();
    let eval: Evaluator = Arc::new(move |s, l| {
        let f = fosp(q, osp_w(dyn_arg(l), q)?)?;
        conjugate(
            &baxterised_osp12_matrix(q, a, spectral_arg(s))?,
            &f,
            &f,
            &sp,
        )
    });
    Ok(RMatrixFamily::new(
        "uql_osp12",
        space,
        Spectral::Multiplicative,
        Some(Chart::S),
        true,
        vec![param("q", q), param("a", a)],
        eval,
    )
    .with_weights(WeightTable::osp12()))
}
