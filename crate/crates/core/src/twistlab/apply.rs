use crate::catalog::{Application, RMatrixFamily, Spectral, Twist};
use crate::error::{Error, Result};
use crate::gtensor::{permutation, tilde_signs, DynParams, GradedSpace};
use crate::linalg::{CMatrix, C64};

/// R^F = P F̃₂₁-argument P · R̃ · F̃⁻¹ with F̃ = D F D and P the plain swap.
/// On an even space D = 1 and this is F₂₁ R F₁₂⁻¹.
pub fn conjugate(
    r: &CMatrix,
    f_left: &CMatrix,
    f_right: &CMatrix,
    space: &GradedSpace,
) -> Result<CMatrix> {
    let n = space.dim();
    for m in [r, f_left, f_right] {
        if m.rows() != n * n || m.cols() != n * n {
            return Err(Error::Dimension(format!(
                "expected {0}x{0} operators on V⊗V",
                n * n
            )));
        }
    }
    let d = tilde_signs(space);
    let p = permutation(space, false);
    let fl = &(&d * f_left) * &d;
    let fr = &(&d * f_right) * &d;
    let left = &(&p * &fl) * &p;
    Ok(&(&left * r) * &fr.inverse()?)
}

/// Evaluates the twisted R-matrix at one point. For `AdditiveReflect`
/// twists the left factor is taken at −u.
pub fn apply_twist(
    twist: &Twist,
    r: &RMatrixFamily,
    spectral: Option<C64>,
    lambda: Option<&DynParams>,
) -> Result<CMatrix> {
    if twist.space != r.space {
        return Err(Error::Dimension(format!(
            "twist {} and R-matrix {} act on different spaces",
            twist.name, r.name
        )));
    }
    let rm = r.eval(spectral, lambda)?;
    let targ = match twist.spectral {
        Spectral::None => None,
        _ => spectral,
    };
    let fr = twist.eval(targ, lambda)?;
    let fl = match twist.application {
        Application::Constant => fr.clone(),
        Application::AdditiveReflect => twist.eval(targ.map(|u| -u), lambda)?,
    };
    conjugate(&rm, &fl, &fr, &r.space)
}
