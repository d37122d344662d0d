//! Z₂-graded spaces, the graded Kronecker product, permutations, the tilde
//! sign redefinition, dynamical coordinates and the block embeddings used by
//! the dynamical Yang–Baxter checks.
//!
//! Matrix convention: an operator on V⊗V has entry R_{i₁i₂}^{j₁j₂} at row
//! i₁·n+i₂, column j₁·n+j₂, i.e. it is the coefficient of E_{i₁j₁}⊗E_{i₂j₂}.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{swap, CMatrix, C64};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    grading: Vec<u8>,
}

impl GradedSpace {
    pub fn new(grading: Vec<u8>) -> Result<Self> {
        if grading.is_empty() || grading.iter().any(|&g| g > 1) {
            return Err(Error::InvalidParam(format!("bad grading {grading:?}")));
        }
        Ok(GradedSpace { grading })
    }

    pub fn even(n: usize) -> Self {
        GradedSpace {
            grading: vec![0; n],
        }
    }

    /// v₁ odd, v₂, v₃ even.
    pub fn osp12() -> Self {
        GradedSpace {
            grading: vec![1, 0, 0],
        }
    }

    /// v₁, v₃ odd, v₂ even.
    pub fn sl12() -> Self {
        GradedSpace {
            grading: vec![1, 0, 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    pub fn grading(&self) -> &[u8] {
        &self.grading
    }

    #[inline]
    pub fn parity(&self, i: usize) -> u8 {
        self.grading[i]
    }

    pub fn is_graded(&self) -> bool {
        self.grading.contains(&1)
    }
}

#[inline]
fn sign(e: u8) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Graded tensor product of A on V and B on W: entry A_{i₁j₁}B_{i₂j₂} with
/// the sign (−1)^{[i₂]([i₁]+[j₁])}, which makes
/// (a⊗b)(c⊗d) = (−1)^{[b][c]} ac⊗bd an identity of matrices.
pub fn graded_kron(a: &CMatrix, b: &CMatrix, v: &GradedSpace, w: &GradedSpace) -> Result<CMatrix> {
    if a.rows() != v.dim() || a.cols() != v.dim() || b.rows() != w.dim() || b.cols() != w.dim() {
        return Err(Error::Dimension(format!(
            "graded_kron: {}x{} on dim {} and {}x{} on dim {}",
            a.rows(),
            a.cols(),
            v.dim(),
            b.rows(),
            b.cols(),
            w.dim()
        )));
    }
    let m = w.dim();
    Ok(CMatrix::from_fn(v.dim() * m, v.dim() * m, |r, c| {
        let (i1, i2, j1, j2) = (r / m, r % m, c / m, c % m);
        let s = sign(w.parity(i2) * (v.parity(i1) + v.parity(j1)));
        a[(i1, j1)] * b[(i2, j2)] * s
    }))
}

/// D = diag((−1)^{[i₁][i₂]}) on V⊗V; tilde(R) = D·R.
pub fn tilde_signs(v: &GradedSpace) -> CMatrix {
    let n = v.dim();
    let d: Vec<C64> = (0..n * n)
        .map(|k| C64::new(sign(v.parity(k / n) * v.parity(k % n)), 0.0))
        .collect();
    CMatrix::from_diag(&d)
}

/// R̃_{i₁i₂}^{j₁j₂} = R_{i₁i₂}^{j₁j₂}(−1)^{[i₁][i₂]}; an involution.
pub fn tilde(r: &CMatrix, v: &GradedSpace) -> CMatrix {
    let n = v.dim();
    CMatrix::from_fn(r.rows(), r.cols(), |i, j| {
        r[(i, j)] * sign(v.parity(i / n) * v.parity(i % n))
    })
}

/// v_i⊗v_j ↦ v_j⊗v_i, with the factor (−1)^{[i][j]} when `graded`.
pub fn permutation(v: &GradedSpace, graded: bool) -> CMatrix {
    let n = v.dim();
    let mut p = swap(n);
    if graded {
        for i in 0..n {
            for j in 0..n {
                p[(j * n + i, i * n + j)] = C64::new(sign(v.parity(i) * v.parity(j)), 0.0);
            }
        }
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    /// s_i, one per simple root
    S,
    /// x_a, one per basis vector of the fundamental representation
    X,
    /// multiplicative coordinates w = q^{…}
    W,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynParams {
    pub chart: Chart,
    pub coords: Vec<C64>,
}

impl DynParams {
    pub fn new(chart: Chart, coords: Vec<C64>) -> Self {
        DynParams { chart, coords }
    }

    pub fn s(coords: Vec<C64>) -> Self {
        Self::new(Chart::S, coords)
    }

    pub fn x(coords: Vec<C64>) -> Self {
        Self::new(Chart::X, coords)
    }

    pub fn w(coords: Vec<C64>) -> Self {
        Self::new(Chart::W, coords)
    }

    /// sl_N: x_a = 2s_a − 2s_{a−1}, s₀ = s_N = 0.
    pub fn s_to_x(s: &[C64]) -> Vec<C64> {
        let n = s.len() + 1;
        let at = |i: usize| {
            if i == 0 || i == n {
                C64::new(0.0, 0.0)
            } else {
                s[i - 1]
            }
        };
        (1..=n).map(|a| 2.0 * at(a) - 2.0 * at(a - 1)).collect()
    }

    /// Inverse of `s_to_x` on traceless x: s_a = ½ Σ_{b≤a} x_b.
    pub fn x_to_s(x: &[C64]) -> Result<Vec<C64>> {
        let total: C64 = x.iter().sum();
        if total.norm() > 1e-12 * (1.0 + x.iter().map(|v| v.norm()).sum::<f64>()) {
            return Err(Error::InvalidParam(
                "x coordinates are not traceless".into(),
            ));
        }
        let mut acc = C64::new(0.0, 0.0);
        Ok(x[..x.len() - 1]
            .iter()
            .map(|&v| {
                acc += v;
                acc / 2.0
            })
            .collect())
    }

    pub fn shifted(&self, wt: &WeightTable, c: usize) -> Result<DynParams> {
        if wt.chart != self.chart {
            return Err(Error::InvalidParam(format!(
                "weight table is for chart {:?}, parameters are in {:?}",
                wt.chart, self.chart
            )));
        }
        let row = &wt.shifts[c];
        if row.len() != self.coords.len() {
            return Err(Error::Dimension(format!(
                "weight row of length {} for {} coordinates",
                row.len(),
                self.coords.len()
            )));
        }
        Ok(DynParams {
            chart: self.chart,
            coords: self.coords.iter().zip(row).map(|(x, d)| x + d).collect(),
        })
    }
}

/// Shift of each dynamical coordinate when the spectator space carries
/// basis vector c: row c, column i.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightTable {
    pub chart: Chart,
    pub shifts: Vec<Vec<f64>>,
}

impl WeightTable {
    pub fn new(chart: Chart, shifts: Vec<Vec<f64>>) -> Self {
        WeightTable { chart, shifts }
    }

    pub fn zero(chart: Chart, dim: usize, rank: usize) -> Self {
        WeightTable {
            chart,
            shifts: vec![vec![0.0; rank]; dim],
        }
    }

    /// sl_N fundamental in x coordinates: v_c shifts x_a by 2(δ_ac − 1/N).
    pub fn sl_n_x(n: usize) -> Self {
        let nf = n as f64;
        let shifts = (0..n)
            .map(|c| {
                (0..n)
                    .map(|a| 2.0 * (if a == c { 1.0 } else { 0.0 } - 1.0 / nf))
                    .collect()
            })
            .collect();
        WeightTable {
            chart: Chart::X,
            shifts,
        }
    }

    /// The same in s coordinates: s_i shifts by [c ≤ i] − i/N (1-based i).
    pub fn sl_n_s(n: usize) -> Self {
        let nf = n as f64;
        let shifts = (0..n)
            .map(|c| {
                (1..n)
                    .map(|i| if c < i { 1.0 } else { 0.0 } - i as f64 / nf)
                    .collect()
            })
            .collect();
        WeightTable {
            chart: Chart::S,
            shifts,
        }
    }

    pub fn osp12() -> Self {
        WeightTable {
            chart: Chart::S,
            shifts: vec![vec![0.0], vec![2.0], vec![-2.0]],
        }
    }

    pub fn sl12() -> Self {
        WeightTable {
            chart: Chart::S,
            shifts: vec![vec![0.0, -1.0], vec![1.0, -1.0], vec![1.0, 0.0]],
        }
    }

    pub fn dim(&self) -> usize {
        self.shifts.len()
    }

    pub fn rank(&self) -> usize {
        self.shifts.first().map_or(0, |r| r.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pair {
    P12,
    P13,
    P23,
}

impl Pair {
    /// The space (1-based) not in the pair.
    pub fn spectator(self) -> usize {
        match self {
            Pair::P12 => 3,
            Pair::P13 => 2,
            Pair::P23 => 1,
        }
    }
}

/// V⊗V⊗V ↔ V⊗V⊗V swap of the second and third legs.
pub fn swap23(n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n * n * n, n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                m[(i * n * n + k * n + j, i * n * n + j * n + k)] = C64::new(1.0, 0.0);
            }
        }
    }
    m
}

/// Ungraded placement of a two-leg operator into V⊗V⊗V.
pub fn embed(r: &CMatrix, pair: Pair, n: usize) -> CMatrix {
    place(|_| r, pair, n)
}

/// Places blocks[c] on the sector where the spectator space carries v_c.
pub fn embed_blocks(blocks: &[CMatrix], pair: Pair, n: usize) -> CMatrix {
    assert_eq!(blocks.len(), n, "one block per spectator basis vector");
    place(|c| &blocks[c], pair, n)
}

fn place<'a>(block: impl Fn(usize) -> &'a CMatrix, pair: Pair, n: usize) -> CMatrix {
    let n3 = n * n * n;
    let mut out = CMatrix::zeros(n3, n3);
    // legs (p, q) carry the operator, leg s is the spectator
    let (p, q, s) = match pair {
        Pair::P12 => (0, 1, 2),
        Pair::P13 => (0, 2, 1),
        Pair::P23 => (1, 2, 0),
    };
    let idx = |v: [usize; 3]| v[0] * n * n + v[1] * n + v[2];
    for c in 0..n {
        let b = block(c);
        for ip in 0..n {
            for iq in 0..n {
                for jp in 0..n {
                    for jq in 0..n {
                        let v = b[(ip * n + iq, jp * n + jq)];
                        if v.re == 0.0 && v.im == 0.0 {
                            continue;
                        }
                        let mut i = [0; 3];
                        let mut j = [0; 3];
                        i[p] = ip;
                        i[q] = iq;
                        i[s] = c;
                        j[p] = jp;
                        j[q] = jq;
                        j[s] = c;
                        out[(idx(i), idx(j))] = v;
                    }
                }
            }
        }
    }
    out
}

/// R_pq(λ + h^{(k)}) on V⊗V⊗V: with `shift_space = Some(k)` (k the spectator,
/// 1-based) each spectator sector c gets R(λ + wt-row(c)); with `None` the
/// plain embedding of R(λ).
pub fn embed_with_shift<F>(
    rfun: F,
    pair: Pair,
    shift_space: Option<usize>,
    lambda: &DynParams,
    wt: &WeightTable,
    n: usize,
) -> Result<CMatrix>
where
    F: Fn(&DynParams) -> Result<CMatrix>,
{
    match shift_space {
        None => Ok(embed(&rfun(lambda)?, pair, n)),
        Some(k) => {
            if k != pair.spectator() {
                return Err(Error::InvalidParam(format!(
                    "shift space {k} is inside the pair {pair:?}"
                )));
            }
            if wt.dim() != n {
                return Err(Error::Dimension(format!(
                    "weight table for dim {} used on dim {n}",
                    wt.dim()
                )));
            }
            let blocks = (0..n)
                .map(|c| rfun(&lambda.shifted(wt, c)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(embed_blocks(&blocks, pair, n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn spaces() -> Vec<GradedSpace> {
        vec![
            GradedSpace::even(3),
            GradedSpace::osp12(),
            GradedSpace::sl12(),
            GradedSpace::new(vec![0, 1]).unwrap(),
        ]
    }

    fn parity(v: &GradedSpace, i: usize, j: usize) -> u8 {
        (v.parity(i) + v.parity(j)) % 2
    }

    #[test]
    fn product_rule_on_matrix_units() {
        for v in spaces() {
            let n = v.dim();
            let e = |i, j| CMatrix::unit(n, i, j);
            for a in 0..n {
                for b in 0..n {
                    for cc in 0..n {
                        for d in 0..n {
                            for e1 in 0..n {
                                for f in 0..n {
                                    for g in 0..n {
                                        for h in 0..n {
                                            // (E_ab ⊗ E_cd)(E_ef ⊗ E_gh) = (−1)^{[E_cd][E_ef]} E_ab E_ef ⊗ E_cd E_gh
                                            let lhs = &graded_kron(&e(a, b), &e(cc, d), &v, &v)
                                                .unwrap()
                                                * &graded_kron(&e(e1, f), &e(g, h), &v, &v)
                                                    .unwrap();
                                            let s = sign(parity(&v, cc, d) * parity(&v, e1, f));
                                            let rhs = graded_kron(
                                                &(&e(a, b) * &e(e1, f)),
                                                &(&e(cc, d) * &e(g, h)),
                                                &v,
                                                &v,
                                            )
                                            .unwrap()
                                            .scale(c(s, 0.0));
                                            assert_eq!(lhs, rhs);
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

    #[test]
    fn associativity_on_matrix_units() {
        for v in spaces() {
            let n = v.dim();
            // v_i ⊗ v_j has parity [i]+[j]
            let vv = GradedSpace::new(
                (0..n * n)
                    .map(|k| (v.parity(k / n) + v.parity(k % n)) % 2)
                    .collect(),
            )
            .unwrap();
            for k in 0..n * n * n * n * n * n {
                let (a, b, cc) = (
                    (k / (n * n * n * n)) % (n * n),
                    (k / (n * n)) % (n * n),
                    k % (n * n),
                );
                let ea = CMatrix::unit(n, a / n, a % n);
                let eb = CMatrix::unit(n, b / n, b % n);
                let ec = CMatrix::unit(n, cc / n, cc % n);
                let left =
                    graded_kron(&graded_kron(&ea, &eb, &v, &v).unwrap(), &ec, &vv, &v).unwrap();
                let right =
                    graded_kron(&ea, &graded_kron(&eb, &ec, &v, &v).unwrap(), &v, &vv).unwrap();
                assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn even_grading_is_plain_kron() {
        let v = GradedSpace::even(2);
        let a = CMatrix::from_fn(2, 2, |i, j| c(i as f64 + 0.5, j as f64));
        let b = CMatrix::from_fn(2, 2, |i, j| c(j as f64 - 1.0, i as f64 * 2.0));
        assert_eq!(graded_kron(&a, &b, &v, &v).unwrap(), a.kron(&b));
        let id = CMatrix::identity(3);
        let o = GradedSpace::osp12();
        assert_eq!(graded_kron(&id, &id, &o, &o).unwrap(), CMatrix::identity(9));
    }

    #[test]
    fn tilde_and_permutation() {
        let v = GradedSpace::osp12();
        let r = CMatrix::from_fn(9, 9, |i, j| c((i * 9 + j) as f64, 1.0));
        assert_eq!(tilde(&tilde(&r, &v), &v), r);
        assert_eq!(tilde(&r, &GradedSpace::even(3)), r);
        assert_eq!(tilde(&r, &v), &tilde_signs(&v) * &r);
        let pg = permutation(&v, true);
        assert_eq!(pg[(0, 0)], c(-1.0, 0.0));
        assert_eq!(&pg * &pg, CMatrix::identity(9));
        let p = permutation(&GradedSpace::even(2), false);
        assert_eq!(p, swap(2));
        assert_eq!(&p * &p, CMatrix::identity(4));
    }

    #[test]
    fn chart_conversion_roundtrip() {
        let s = vec![c(0.3, 0.1), c(-1.2, 0.0), c(2.0, -0.5)];
        let x = DynParams::s_to_x(&s);
        assert!(x.iter().sum::<C64>().norm() < 1e-15);
        let back = DynParams::x_to_s(&x).unwrap();
        for (a, b) in s.iter().zip(&back) {
            assert!((a - b).norm() < 1e-15);
        }
        // the two sl_N tables are the same shifts seen in different charts
        let (tx, ts) = (WeightTable::sl_n_x(4), WeightTable::sl_n_s(4));
        for cidx in 0..4 {
            let sx: Vec<C64> = ts.shifts[cidx].iter().map(|&v| c(v, 0.0)).collect();
            let xs = DynParams::s_to_x(&sx);
            for (x, t) in xs.iter().zip(&tx.shifts[cidx]) {
                assert!((x - t).norm() < 1e-15);
            }
            assert!(tx.shifts.iter().map(|r| r[cidx]).sum::<f64>().abs() < 1e-15);
        }
    }

    #[test]
    fn zero_weights_give_plain_embedding() {
        let n = 2;
        let r = CMatrix::from_fn(4, 4, |i, j| c(1.0 + i as f64, j as f64 - 0.5));
        let lam = DynParams::x(vec![c(0.1, 0.0), c(-0.1, 0.0)]);
        let wt = WeightTable::zero(Chart::X, 2, 2);
        for (pair, k) in [(Pair::P12, 3), (Pair::P13, 2), (Pair::P23, 1)] {
            let shifted = embed_with_shift(|_| Ok(r.clone()), pair, Some(k), &lam, &wt, n).unwrap();
            assert_eq!(shifted.max_abs_diff(&embed(&r, pair, n)), 0.0);
        }
        assert_eq!(embed(&r, Pair::P12, 2), r.kron(&CMatrix::identity(2)));
        assert_eq!(embed(&r, Pair::P23, 2), CMatrix::identity(2).kron(&r));
        // R₁₃ built from the swap agrees with entrywise placement
        let e13 = embed(&r, Pair::P13, 2);
        for i in 0..8usize {
            for j in 0..8usize {
                let (i1, i2, i3) = (i >> 2, (i >> 1) & 1, i & 1);
                let (j1, j2, j3) = (j >> 2, (j >> 1) & 1, j & 1);
                let want = if i2 == j2 {
                    r[(i1 * 2 + i3, j1 * 2 + j3)]
                } else {
                    c(0.0, 0.0)
                };
                assert_eq!(e13[(i, j)], want);
            }
        }
    }

    #[test]
    fn shifted_blocks_differ_per_spectator() {
        let lam = DynParams::x(vec![c(0.5, 0.0), c(-0.5, 0.0)]);
        let wt = WeightTable::sl_n_x(2);
        let rfun = |l: &DynParams| {
            Ok(CMatrix::from_diag(&[
                l.coords[0],
                c(1.0, 0.0),
                c(1.0, 0.0),
                l.coords[1],
            ]))
        };
        let m = embed_with_shift(rfun, Pair::P12, Some(3), &lam, &wt, 2).unwrap();
        // sector c = 0 (x₁ += 1), c = 1 (x₁ −= 1)
        assert_eq!(m[(0, 0)], c(1.5, 0.0));
        assert_eq!(m[(1, 1)], c(-0.5, 0.0));
        assert!(embed_with_shift(rfun, Pair::P12, Some(1), &lam, &wt, 2).is_err());
    }
}
