use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

#[derive(Clone, Debug)]
pub struct ProductTwist {
    pub matrix: CMatrix,
    /// max-abs change contributed by each factor k = 1, 2, …
    pub corrections: Vec<f64>,
}

/// F = ∏_{k≥0} (X⊗1)^{−k} Y (X⊗1)^{k}, factors ordered left to right by
/// increasing k, truncated once a factor changes the partial product by
/// less than `tol`. X is diagonal, given by its entries.
pub fn product_twist(x: &[C64], y: &CMatrix, kmax: usize, tol: f64) -> Result<ProductTwist> {
    let n = x.len();
    if y.rows() != n * n || !y.is_square() {
        return Err(Error::Dimension(format!(
            "Y must be {0}x{0} for a diagonal X of size {n}",
            n * n
        )));
    }
    if x.iter().any(|v| v.norm() == 0.0) {
        return Err(Error::SingularMatrix);
    }
    let off = y - &CMatrix::identity(n * n);
    // entry (i, j) of the k-th factor carries (X_b/X_a)^k, a, b the first-leg indices
    for i in 0..n * n {
        for j in 0..n * n {
            let (a, b) = (i / n, j / n);
            if a != b && off[(i, j)].norm() > 0.0 && (x[b] / x[a]).norm() >= 1.0 {
                return Err(Error::Domain(format!(
                    "ordered product diverges: |X_{b}/X_{a}| = {} >= 1",
                    (x[b] / x[a]).norm()
                )));
            }
        }
    }
    // entry (i, j) of the k-th factor is Y_ij (X_b/X_a)^k
    let ratio = |i: usize, j: usize| x[j / n] / x[i / n];
    let mut f = y.clone();
    let mut corrections = Vec::new();
    for k in 1..=kmax as i32 {
        let factor = CMatrix::from_fn(n * n, n * n, |i, j| {
            let v = y[(i, j)];
            if v.norm() == 0.0 || i / n == j / n {
                v
            } else {
                v * ratio(i, j).powi(k)
            }
        });
        let next = &f * &factor;
        let delta = next.max_abs_diff(&f);
        f = next;
        corrections.push(delta);
        if delta < tol {
            return Ok(ProductTwist {
                matrix: f,
                corrections,
            });
        }
    }
    Err(Error::NoConvergence {
        what: "ordered product twist",
        steps: kmax,
    })
}

/// X = (N−1)/N + diag(x_a) and Y = 1 + (X⊗1)⁻¹ r̂ with r̂ = −2 Σ_{a<b} E_ab⊗E_ba.
pub fn us_sl_n_product_inputs(x: &[C64]) -> (Vec<C64>, CMatrix) {
    let n = x.len();
    let shift = (n as f64 - 1.0) / n as f64;
    let xd: Vec<C64> = x.iter().map(|v| v + shift).collect();
    let mut y = CMatrix::identity(n * n);
    for a in 0..n {
        for b in a + 1..n {
            y[(a * n + b, b * n + a)] = -2.0 / xd[a];
        }
    }
    (xd, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::sl_n::twist_us_matrix;
    use crate::linalg::c;

    #[test]
    fn reproduces_closed_form() {
        let x = [c(4.0, 0.0), c(-4.0, 0.0)];
        let (xd, y) = us_sl_n_product_inputs(&x);
        let p = product_twist(&xd, &y, 2000, 1e-16).unwrap();
        let want = twist_us_matrix(2, &x).unwrap();
        assert!(p.matrix.max_abs_diff(&want) < 1e-10);
        assert!((want[(1, 2)] + 0.25).norm() < 1e-15);
        // geometric decay at ratio |X_b/X_a|
        let ratio = (xd[1] / xd[0]).norm();
        let cs = &p.corrections;
        for w in cs.windows(2).take(10) {
            assert!((w[1] / w[0] - ratio).abs() < 1e-6);
        }
    }

    #[test]
    fn trivial_and_divergent() {
        let x = [c(3.0, 0.0), c(1.0, 0.0), c(-4.0, 0.0)];
        let p = product_twist(&x, &CMatrix::identity(9), 10, 1e-15).unwrap();
        assert_eq!(p.matrix, CMatrix::identity(9));
        let (xd, y) = us_sl_n_product_inputs(&[c(-4.0, 0.0), c(4.0, 0.0)]);
        assert!(matches!(
            product_twist(&xd, &y, 100, 1e-14),
            Err(Error::Domain(_))
        ));
    }
}
