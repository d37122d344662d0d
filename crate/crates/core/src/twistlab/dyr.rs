use std::f64::consts::PI;

use crate::catalog::sl_n::{dyr_b, dyr_c, dyr_twist_matrix, yang_matrix};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// The DY → DYr twist evaluated at one u: unit 1×1 blocks and a 2×2
/// block per pair a<b acting on (v_a⊗v_b, v_b⊗v_a).
#[derive(Clone, Debug)]
pub struct BlockTwist {
    pub n: usize,
    pub u: C64,
    pub r: f64,
    /// (a, b, [[b, c], [c′, b′]])
    pub blocks: Vec<(usize, usize, [[C64; 2]; 2])>,
}

impl BlockTwist {
    pub fn matrix(&self) -> CMatrix {
        let n = self.n;
        let mut f = CMatrix::identity(n * n);
        for &(a, b, blk) in &self.blocks {
            let (ab, ba) = (a * n + b, b * n + a);
            f[(ab, ab)] = blk[0][0];
            f[(ab, ba)] = blk[0][1];
            f[(ba, ab)] = blk[1][0];
            f[(ba, ba)] = blk[1][1];
        }
        f
    }
}

fn omega(n: usize, k: i64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * k.rem_euclid(n as i64) as f64 / n as f64)
}

pub fn solve_dyr_twist(u: C64, r: f64, n: usize) -> Result<BlockTwist> {
    let m = dyr_twist_matrix(n, u, r)?;
    let mut blocks = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ab, ba) = (a * n + b, b * n + a);
            blocks.push((
                a,
                b,
                [[m[(ab, ab)], m[(ab, ba)]], [m[(ba, ab)], m[(ba, ba)]]],
            ));
        }
    }
    Ok(BlockTwist { n, u, r, blocks })
}

/// φ = diag(ω^{−a}), a = 1..N.
pub fn phi(n: usize) -> CMatrix {
    let d: Vec<C64> = (0..n).map(|a| omega(n, -(a as i64 + 1))).collect();
    CMatrix::from_diag(&d)
}

/// Relative residual of F(u+r) = (φ⊗1)⁻¹ F(u) (φ⊗1) R(u+r), R the
/// DY R-matrix divided by ρ_DY.
pub fn check_linear_equation(f_u: &BlockTwist, f_ur: &BlockTwist) -> Result<f64> {
    let (n, r) = (f_u.n, f_u.r);
    if f_ur.n != n || f_ur.r != r || (f_ur.u - f_u.u - r).norm() > 1e-12 * (1.0 + f_u.u.norm()) {
        return Err(Error::InvalidParam(
            "linear equation needs F(u) and F(u + r) for the same N and r".into(),
        ));
    }
    let ph = phi(n).kron(&CMatrix::identity(n));
    let phi_inv = ph.inverse()?;
    let rhs = &(&(&phi_inv * &f_u.matrix()) * &ph) * &yang_matrix(n, f_ur.u)?;
    let lhs = f_ur.matrix();
    Ok(lhs.max_abs_diff(&rhs) / lhs.max_abs().max(1.0))
}

fn three_term(t: [C64; 3]) -> f64 {
    let scale = t.iter().map(|v| v.norm()).fold(0.0, f64::max);
    (t[0] + t[1] + t[2]).norm() / scale.max(f64::MIN_POSITIVE)
}

/// Relative residual of the b-recursion with z = ω^{±(b−a)}:
/// z(u+2r+1)b(u+2r) − (u+r+z(u+2r))b(u+r) + (u+r−1)b(u).
pub fn eqdiff_b_residual(u: C64, r: f64, z: C64) -> Result<f64> {
    let r2 = 2.0 * r;
    Ok(three_term([
        z * (u + r2 + 1.0) * dyr_b(u + r2, r, z)?,
        -(u + r + z * (u + r2)) * dyr_b(u + r, r, z)?,
        (u + r - 1.0) * dyr_b(u, r, z)?,
    ]))
}

/// Relative residual of the c-recursion, z̄ = 1/z:
/// (u+2r+1)c(u+2r) − (u+r+z̄(u+2r))c(u+r) + z̄(u+r−1)c(u).
pub fn eqdiff_c_residual(u: C64, r: f64, z: C64) -> Result<f64> {
    let r2 = 2.0 * r;
    let zb = 1.0 / z;
    Ok(three_term([
        (u + r2 + 1.0) * dyr_c(u + r2, r, z)?,
        -(u + r + zb * (u + r2)) * dyr_c(u + r, r, z)?,
        zb * (u + r - 1.0) * dyr_c(u, r, z)?,
    ]))
}

/// Largest relative residual of both recursions over all blocks (primed
/// entries included) of the N-dimensional twist.
pub fn eqdiff_residual(u: C64, r: f64, n: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            for z in [omega(n, (b - a) as i64), omega(n, a as i64 - b as i64)] {
                worst = worst
                    .max(eqdiff_b_residual(u, r, z)?)
                    .max(eqdiff_c_residual(u, r, z)?);
            }
        }
    }
    Ok(worst)
}
