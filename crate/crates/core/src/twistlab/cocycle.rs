//! Shifted-cocycle data in the fundamental representation.
//!
//! The twist on W₁⊗W₂ is the unique solution, strictly block-triangular in
//! the weights of the first factor, of the linear equation
//! [X⊗1, F] = F r̂ (rational case) or of its multiplicative analogue
//! (q case). Solving it on V⊗V gives F itself; solving it with W₁ = V⊗V
//! (resp. W₂ = V⊗V) and the coproduct of r̂ gives (Δ⊗1)F (resp. (1⊗Δ)F).

use crate::catalog::osp12::fusosp;
use crate::catalog::sl12::fus12;
use crate::catalog::sl_n::{twist_us_matrix, uq_sl_n, w_matrix, x_coords};
use crate::error::{Error, Result};
use crate::gtensor::{swap23, tilde_signs, Chart, DynParams, GradedSpace, WeightTable};
use crate::linalg::{cpow, CMatrix, C64};

fn same_weight(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
}

/// Iterates F_ij = coef(i, j) (F m)_ij on entries whose first-factor weights
/// differ; F_ii-blocks stay identity. Terminates because m raises weight.
fn block_solve(
    dim: usize,
    n2: usize,
    weights: &[Vec<f64>],
    m: &CMatrix,
    coef: impl Fn(usize, usize) -> Result<C64>,
) -> Result<CMatrix> {
    let mut f = CMatrix::identity(dim);
    for _ in 0..=dim {
        let g = &f * m;
        let mut next = CMatrix::identity(dim);
        for i in 0..dim {
            for j in 0..dim {
                if !same_weight(&weights[i / n2], &weights[j / n2])
                    && g[(i, j)] != C64::new(0.0, 0.0)
                {
                    next[(i, j)] = coef(i / n2, j / n2)? * g[(i, j)];
                }
            }
        }
        if next == f {
            return Ok(f);
        }
        f = next;
    }
    Err(Error::NoConvergence {
        what: "cocycle linear equation",
        steps: dim + 1,
    })
}

/// A representation with the data entering the rational linear equation:
/// weights (in the chart of λ), the linear parts ℓ_a of X and the even/odd
/// pieces of r̂.
#[derive(Clone, Debug)]
pub struct CocycleData {
    pub space: GradedSpace,
    pub wt: WeightTable,
    pub ell: Vec<Vec<f64>>,
    pub r_even: CMatrix,
    pub r_odd: CMatrix,
}

fn ek(n: usize, i: usize, j: usize, k: usize, l: usize) -> CMatrix {
    CMatrix::unit(n, i, j).kron(&CMatrix::unit(n, k, l))
}

impl CocycleData {
    /// sl_N in the x chart.
    pub fn sl_n(n: usize) -> Self {
        let mut r = CMatrix::zeros(n * n, n * n);
        for a in 0..n {
            for b in a + 1..n {
                r = &r - &ek(n, a, b, b, a).scale(C64::new(2.0, 0.0));
            }
        }
        CocycleData {
            space: GradedSpace::even(n),
            wt: WeightTable::sl_n_x(n),
            ell: (0..n)
                .map(|a| (0..n).map(|b| if a == b { 1.0 } else { 0.0 }).collect())
                .collect(),
            r_even: r,
            r_odd: CMatrix::zeros(n * n, n * n),
        }
    }

    pub fn osp12() -> Self {
        let two = C64::new(2.0, 0.0);
        let r_odd = (&(&ek(3, 0, 2, 2, 0) + &ek(3, 0, 2, 0, 1))
            + &(&ek(3, 1, 0, 0, 1) + &ek(3, 1, 0, 2, 0)))
            .scale(-two);
        CocycleData {
            space: GradedSpace::osp12(),
            wt: WeightTable::osp12(),
            ell: vec![vec![0.0], vec![1.0], vec![-1.0]],
            r_even: ek(3, 1, 2, 2, 1).scale(-two * 2.0),
            r_odd,
        }
    }

    pub fn sl12() -> Self {
        let two = C64::new(2.0, 0.0);
        CocycleData {
            space: GradedSpace::sl12(),
            wt: WeightTable::sl12(),
            ell: vec![vec![2.0, 0.0], vec![2.0, -2.0], vec![0.0, -2.0]],
            r_even: ek(3, 2, 0, 0, 2).scale(two),
            r_odd: (&ek(3, 1, 0, 0, 1) + &ek(3, 2, 1, 1, 2)).scale(-two),
        }
    }

    fn n(&self) -> usize {
        self.space.dim()
    }

    /// (μ_a|μ_b) = ½ ℓ_a·wt_b
    fn form(&self, a: usize, b: usize) -> f64 {
        0.5 * self.ell[a]
            .iter()
            .zip(&self.wt.shifts[b])
            .map(|(l, w)| l * w)
            .sum::<f64>()
    }

    fn x_values(&self, l: &DynParams) -> Vec<C64> {
        (0..self.n())
            .map(|a| {
                self.ell[a]
                    .iter()
                    .zip(&l.coords)
                    .map(|(e, c)| c * *e)
                    .sum::<C64>()
                    + self.form(a, a)
            })
            .collect()
    }

    fn pair_x_values(&self, l: &DynParams) -> Vec<C64> {
        let x = self.x_values(l);
        let n = self.n();
        (0..n * n)
            .map(|k| x[k / n] + x[k % n] + 2.0 * self.form(k / n, k % n))
            .collect()
    }

    fn pair_weights(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n * n)
            .map(|k| {
                self.wt.shifts[k / n]
                    .iter()
                    .zip(&self.wt.shifts[k % n])
                    .map(|(a, b)| a + b)
                    .collect()
            })
            .collect()
    }

    pub fn r_hat(&self) -> CMatrix {
        &self.r_even + &self.r_odd
    }

    fn rational_solve(x: &[C64], weights: &[Vec<f64>], m: &CMatrix, n2: usize) -> Result<CMatrix> {
        block_solve(x.len() * n2, n2, weights, m, |i, j| {
            let d = x[i] - x[j];
            if d.norm() < 1e-12 {
                return Err(Error::SingularDynamical(format!("X_{i} - X_{j} vanishes")));
            }
            Ok(1.0 / d)
        })
    }

    /// F(λ) on V⊗V, in tilde form for super spaces.
    pub fn solve_twist(&self, l: &DynParams) -> Result<CMatrix> {
        self.check_chart(l)?;
        Self::rational_solve(&self.x_values(l), &self.wt.shifts, &self.r_hat(), self.n())
    }

    fn check_chart(&self, l: &DynParams) -> Result<()> {
        if l.chart != self.wt.chart || l.coords.len() != self.wt.rank() {
            return Err(Error::InvalidParam(format!(
                "cocycle data expects {} coordinates in chart {:?}",
                self.wt.rank(),
                self.wt.chart
            )));
        }
        Ok(())
    }

    /// The closed-form twist of the catalog, converted to tilde form.
    pub fn closed_form(&self, l: &DynParams) -> Result<CMatrix> {
        self.check_chart(l)?;
        let f = match (self.space.is_graded(), self.space.grading()) {
            (false, _) => twist_us_matrix(self.n(), &x_coords(l, self.n())?)?,
            (true, [1, 0, 0]) => fusosp(l.coords[0])?,
            (true, _) => fus12(l.coords[0], l.coords[1])?,
        };
        let d = tilde_signs(&self.space);
        Ok(&(&d * &f) * &d)
    }

    /// max |F₁₂(λ)(Δ⊗1)F(λ) − F₂₃(λ + h⁽¹⁾)(1⊗Δ)F(λ)| with F₁₂, F₂₃ the
    /// closed-form twists. Odd parts of r̂ placed on legs 1 and 3 carry the
    /// parity operator of leg 2.
    pub fn residual(&self, l: &DynParams) -> Result<f64> {
        self.check_chart(l)?;
        let n = self.n();
        let id = CMatrix::identity(n);
        let s = swap23(n);
        let e12 = |m: &CMatrix| m.kron(&id);
        let e23 = |m: &CMatrix| id.kron(m);
        let e13 = |m: &CMatrix| &(&s * &m.kron(&id)) * &s;
        let parity: Vec<C64> = (0..n)
            .map(|a| C64::new(if self.space.parity(a) == 1 { -1.0 } else { 1.0 }, 0.0))
            .collect();
        let k2 = id.kron(&CMatrix::from_diag(&parity)).kron(&id);
        let rh = self.r_hat();
        let r13 = &e13(&self.r_even) + &(&e13(&self.r_odd) * &k2);
        let r_12_3 = &r13 + &e23(&rh);
        let r_1_23 = &e12(&rh) + &r13;
        let f_12_3 =
            Self::rational_solve(&self.pair_x_values(l), &self.pair_weights(), &r_12_3, n)?;
        let f_1_23 = Self::rational_solve(&self.x_values(l), &self.wt.shifts, &r_1_23, n * n)?;
        let f12 = e12(&self.closed_form(l)?);
        let mut f23 = CMatrix::zeros(n * n * n, n * n * n);
        for c in 0..n {
            f23 = &f23 + &CMatrix::unit(n, c, c).kron(&self.closed_form(&l.shifted(&self.wt, c)?)?);
        }
        let lhs = &f12 * &f_12_3;
        Ok(lhs.max_abs_diff(&(&f23 * &f_1_23)))
    }
}

/// The multiplicative cocycle for B_{q,λ}(sl_N): F_ij = t (F m)_ij/(1 − t),
/// t = q^{X_i − X_j}, m = R⁻¹K − 1 with K = q^{−Σ d_ij h_i⊗h_j}; the
/// coproducts are (R₁₃R₂₃)⁻¹K₁₃K₂₃ and (R₁₃R₁₂)⁻¹K₁₂K₁₃.
#[derive(Clone, Debug)]
pub struct QCocycle {
    pub n: usize,
    pub q: C64,
}

impl QCocycle {
    pub fn new(n: usize, q: C64) -> Result<Self> {
        if n < 2 || q.norm() == 0.0 {
            return Err(Error::InvalidParam(
                "q-cocycle needs N >= 2 and q != 0".into(),
            ));
        }
        Ok(QCocycle { n, q })
    }

    fn r(&self) -> Result<CMatrix> {
        uq_sl_n(self.n, self.q)?.eval(None, None)
    }

    fn k(&self) -> CMatrix {
        let n = self.n;
        let nf = n as f64;
        let d: Vec<C64> = (0..n * n)
            .map(|k| {
                let e = if k / n == k % n { 1.0 } else { 0.0 } - 1.0 / nf;
                cpow(self.q, C64::new(-e, 0.0))
            })
            .collect();
        CMatrix::from_diag(&d)
    }

    fn solve(&self, x: &[C64], weights: &[Vec<f64>], m: &CMatrix, n2: usize) -> Result<CMatrix> {
        let m1 = m - &CMatrix::identity(m.rows());
        let q = self.q;
        block_solve(x.len() * n2, n2, weights, &m1, |i, j| {
            let t = cpow(q, x[i] - x[j]);
            let d = 1.0 - t;
            if d.norm() < 1e-12 {
                return Err(Error::SingularDynamical(format!(
                    "1 - q^(X_{i} - X_{j}) vanishes"
                )));
            }
            Ok(t / d)
        })
    }

    fn x_values(&self, x: &[C64]) -> Vec<C64> {
        let nf = self.n as f64;
        x.iter().map(|v| v + (nf - 1.0) / nf).collect()
    }

    pub fn solve_twist(&self, l: &DynParams) -> Result<CMatrix> {
        let n = self.n;
        let x = x_coords(l, n)?;
        let m = &self.r()?.inverse()? * &self.k();
        self.solve(&self.x_values(&x), &WeightTable::sl_n_x(n).shifts, &m, n)
    }

    pub fn closed_form(&self, l: &DynParams) -> Result<CMatrix> {
        let n = self.n;
        let w = w_matrix(l, n, self.q)?;
        let mut f = CMatrix::identity(n * n);
        for a in 0..n {
            for b in a + 1..n {
                let d = 1.0 - w[a][b];
                if d.norm() < 1e-12 {
                    return Err(Error::SingularDynamical("1 - w_ab vanishes".into()));
                }
                f[(a * n + b, b * n + a)] = (self.q - 1.0 / self.q) * w[a][b] / d;
            }
        }
        Ok(f)
    }

    pub fn residual(&self, l: &DynParams) -> Result<f64> {
        let n = self.n;
        let x = x_coords(l, n)?;
        let lx = DynParams::x(x.clone());
        let wt = WeightTable::sl_n_x(n);
        let id = CMatrix::identity(n);
        let s = swap23(n);
        let e12 = |m: &CMatrix| m.kron(&id);
        let e23 = |m: &CMatrix| id.kron(m);
        let e13 = |m: &CMatrix| &(&s * &m.kron(&id)) * &s;
        let (r, k) = (self.r()?, self.k());
        let m_12_3 = &(&e13(&r) * &e23(&r)).inverse()? * &(&e13(&k) * &e23(&k));
        let m_1_23 = &(&e13(&r) * &e12(&r)).inverse()? * &(&e12(&k) * &e13(&k));
        let xv = self.x_values(&x);
        let xvv: Vec<C64> = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                xv[a] + xv[b] + 2.0 * (if a == b { 1.0 } else { 0.0 } - 1.0 / n as f64)
            })
            .collect();
        let wvv: Vec<Vec<f64>> = (0..n * n)
            .map(|i| {
                wt.shifts[i / n]
                    .iter()
                    .zip(&wt.shifts[i % n])
                    .map(|(a, b)| a + b)
                    .collect()
            })
            .collect();
        let f_12_3 = self.solve(&xvv, &wvv, &m_12_3, n)?;
        let f_1_23 = self.solve(&xv, &wt.shifts, &m_1_23, n * n)?;
        let f12 = e12(&self.closed_form(&lx)?);
        let mut f23 = CMatrix::zeros(n * n * n, n * n * n);
        for c in 0..n {
            f23 = &f23 + &CMatrix::unit(n, c, c).kron(&self.closed_form(&lx.shifted(&wt, c)?)?);
        }
        Ok((&f12 * &f_12_3).max_abs_diff(&(&f23 * &f_1_23)))
    }
}

/// Dynamical point in the chart the cocycle data expects.
pub fn cocycle_point(data: &CocycleData, l: &DynParams) -> Result<DynParams> {
    match (data.wt.chart, l.chart) {
        (Chart::X, Chart::S) => Ok(DynParams::x(x_coords(l, data.space.dim())?)),
        _ => Ok(l.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn solver_reproduces_closed_forms() {
        let x = DynParams::x(vec![c(0.7, 0.0), c(-1.9, 0.1), c(1.2, 0.2)]);
        let d = CocycleData::sl_n(3);
        assert!(
            d.solve_twist(&x)
                .unwrap()
                .max_abs_diff(&d.closed_form(&x).unwrap())
                < 1e-14
        );
        let s = DynParams::s(vec![c(0.77, 0.3)]);
        let o = CocycleData::osp12();
        assert!(
            o.solve_twist(&s)
                .unwrap()
                .max_abs_diff(&o.closed_form(&s).unwrap())
                < 1e-14
        );
        let s2 = DynParams::s(vec![c(0.77, 0.3), c(-1.3, 0.1)]);
        let g = CocycleData::sl12();
        assert!(
            g.solve_twist(&s2)
                .unwrap()
                .max_abs_diff(&g.closed_form(&s2).unwrap())
                < 1e-14
        );
        let q = QCocycle::new(3, c(0.63, 0.0)).unwrap();
        assert!(
            q.solve_twist(&x)
                .unwrap()
                .max_abs_diff(&q.closed_form(&x).unwrap())
                < 1e-13
        );
    }

    #[test]
    fn residuals_vanish() {
        let x2 = DynParams::x(vec![c(0.7, 0.1), c(-0.7, -0.1)]);
        assert!(CocycleData::sl_n(2).residual(&x2).unwrap() < 1e-12);
        let x3 = DynParams::x(vec![c(0.7, 0.0), c(-1.9, 0.1), c(1.2, -0.1)]);
        assert!(CocycleData::sl_n(3).residual(&x3).unwrap() < 1e-12);
        assert!(
            CocycleData::osp12()
                .residual(&DynParams::s(vec![c(0.77, 0.3)]))
                .unwrap()
                < 1e-12
        );
        assert!(
            CocycleData::sl12()
                .residual(&DynParams::s(vec![c(0.77, 0.3), c(-1.3, 0.1)]))
                .unwrap()
                < 1e-12
        );
        for n in [2, 3] {
            let q = QCocycle::new(n, c(0.63, 0.0)).unwrap();
            let l = DynParams::x(x3.coords[..n].to_vec());
            assert!(q.residual(&l).unwrap() < 1e-12);
        }
    }

    #[test]
    fn far_point_is_trivial() {
        let x = DynParams::x(vec![c(1e9, 0.0), c(-1e9, 0.0)]);
        let d = CocycleData::sl_n(2);
        assert!(
            d.closed_form(&x)
                .unwrap()
                .max_abs_diff(&CMatrix::identity(4))
                < 1e-8
        );
        assert!(d.residual(&x).unwrap() < 1e-12);
    }
}
