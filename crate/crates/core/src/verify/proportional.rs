use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// κ with A ≈ κB. Entries count as zero below 1e−12 of the largest |B|
/// (resp. |A|); the zero patterns must agree. κ is the least-squares ratio
/// and the relative spread max |A_ij/B_ij − κ|/|κ| must not exceed `tol`.
pub fn proportional(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<C64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Dimension(
            "proportionality of matrices of different shapes".into(),
        ));
    }
    let (sa, sb) = (a.max_abs(), b.max_abs());
    if sb == 0.0 {
        return Err(Error::InvalidParam("reference matrix is zero".into()));
    }
    let mut num = C64::new(0.0, 0.0);
    let mut den = 0.0;
    let mut support = Vec::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let (x, y) = (a[(i, j)], b[(i, j)]);
            let (za, zb) = (x.norm() <= 1e-12 * sa, y.norm() <= 1e-12 * sb);
            if za != zb {
                return Err(Error::ZeroPattern(i, j));
            }
            if !zb {
                num += y.conj() * x;
                den += y.norm_sqr();
                support.push((x, y));
            }
        }
    }
    let k = num / den;
    if k.norm() == 0.0 {
        return Err(Error::NotProportional {
            spread: f64::INFINITY,
            tol,
        });
    }
    let spread = support
        .iter()
        .map(|(x, y)| (x / y - k).norm())
        .fold(0.0, f64::max)
        / k.norm();
    if !(spread <= tol) {
        return Err(Error::NotProportional { spread, tol });
    }
    Ok(k)
}
