use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// (V⊗V) R (V⊗V)⁻¹.
pub fn gauge(r: &CMatrix, v: &CMatrix) -> Result<CMatrix> {
    if !v.is_square() || r.rows() != v.rows() * v.rows() || !r.is_square() {
        return Err(Error::Dimension(format!(
            "gauge of a {}x{} matrix by a {}x{} V",
            r.rows(),
            r.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let w = v.kron(v);
    Ok(&(&w * r) * &w.inverse()?)
}
