use crate::catalog::RMatrixFamily;
use crate::error::{Error, Result};
use crate::gtensor::{embed, embed_blocks, Chart, DynParams, Pair, WeightTable};
use crate::linalg::{CMatrix, C64};

/// One evaluation point of the search: spectral arguments (s1, s2) and λ.
#[derive(Clone, Debug)]
pub struct SearchPoint {
    pub s1: Option<C64>,
    pub s2: Option<C64>,
    pub lambda: DynParams,
}

/// R at a point with every candidate shift row precomputed, so each table
/// costs only the assembly of the two triple products.
struct Cache {
    /// [spectral slot][row] for slots (s1, s1∘s2, s2)
    shifted: Vec<Vec<CMatrix>>,
    plain: Vec<CMatrix>,
}

fn rows(candidates: &[f64], rank: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|r| {
                candidates
                    .iter()
                    .map(move |&c| [r.clone(), vec![c]].concat())
            })
            .collect();
    }
    out
}

impl Cache {
    fn new(f: &RMatrixFamily, p: &SearchPoint, rows: &[Vec<f64>]) -> Result<Self> {
        let slots = match (p.s1, p.s2) {
            (Some(a), Some(b)) => [Some(a), Some(f.spectral.compose(a, b)), Some(b)],
            _ => [None, None, None],
        };
        let mut shifted = Vec::new();
        let mut plain = Vec::new();
        for s in slots {
            plain.push(f.eval(s, Some(&p.lambda))?);
            shifted.push(
                rows.iter()
                    .map(|r| {
                        let l = DynParams::new(
                            p.lambda.chart,
                            p.lambda.coords.iter().zip(r).map(|(x, d)| x + d).collect(),
                        );
                        f.eval(s, Some(&l))
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Cache { shifted, plain })
    }

    fn residual(&self, table: &[usize], n: usize) -> f64 {
        let blocks = |slot: usize| {
            table
                .iter()
                .map(|&r| self.shifted[slot][r].clone())
                .collect::<Vec<_>>()
        };
        let l = &(&embed_blocks(&blocks(0), Pair::P12, n) * &embed(&self.plain[1], Pair::P13, n))
            * &embed_blocks(&blocks(2), Pair::P23, n);
        let r = &(&embed(&self.plain[2], Pair::P23, n) * &embed_blocks(&blocks(1), Pair::P13, n))
            * &embed(&self.plain[0], Pair::P12, n);
        l.max_abs_diff(&r) / l.max_abs().max(1.0)
    }
}

/// Exhaustive search over weight tables whose rows take values in
/// `candidates` (per coordinate). Returns the unique table whose
/// normalised DYBE residual is at most `tol` at every point; several such
/// tables, or none, is an error.
pub fn weight_table_search(
    f: &RMatrixFamily,
    chart: Chart,
    rank: usize,
    candidates: &[f64],
    points: &[SearchPoint],
    tol: f64,
) -> Result<WeightTable> {
    if f.dyn_chart.is_none() {
        return Err(Error::InvalidParam(format!("{} is not dynamical", f.name)));
    }
    if points.is_empty() || candidates.is_empty() {
        return Err(Error::InvalidParam(
            "search needs candidates and at least one point".into(),
        ));
    }
    let rows = rows(candidates, rank);
    let caches = points
        .iter()
        .map(|p| Cache::new(f, p, &rows))
        .collect::<Result<Vec<_>>>()?;
    let n = f.dim();
    let mut hits = Vec::new();
    let mut best = f64::INFINITY;
    let mut table = vec![0usize; n];
    'tables: loop {
        let mut worst: f64 = 0.0;
        for c in &caches {
            worst = worst.max(c.residual(&table, n));
            if !(worst <= tol) {
                break;
            }
        }
        best = best.min(worst);
        if worst <= tol {
            hits.push(WeightTable::new(
                chart,
                table.iter().map(|&r| rows[r].clone()).collect(),
            ));
        }
        for slot in table.iter_mut() {
            *slot += 1;
            if *slot < rows.len() {
                continue 'tables;
            }
            *slot = 0;
        }
        break;
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(Error::Search(format!(
            "no weight table below {tol:e} (best {best:e})"
        ))),
        _ => Err(Error::Search(format!(
            "{} minimising tables: {}",
            hits.len(),
            hits.iter()
                .map(|t| format!("{:?}", t.shifts))
                .collect::<Vec<_>>()
                .join("; ")
        ))),
    }
}

/// Grid lo, lo+step, …, hi.
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let k = ((hi - lo) / step).round() as usize;
    (0..=k).map(|i| lo + i as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{osp12, sl12, sl_n};
    use crate::linalg::c;

    fn pt(coords: Vec<C64>, chart: Chart) -> SearchPoint {
        SearchPoint {
            s1: None,
            s2: None,
            lambda: DynParams::new(chart, coords),
        }
    }

    #[test]
    fn recovers_sl2() {
        let f = sl_n::us_sl_n(2).unwrap();
        let p = [
            pt(vec![c(0.83, 0.21)], Chart::S),
            pt(vec![c(-1.37, 0.4)], Chart::S),
        ];
        let t = weight_table_search(&f, Chart::S, 1, &grid(-1.0, 1.0, 0.5), &p, 1e-10).unwrap();
        assert_eq!(t, WeightTable::sl_n_s(2));
    }

    #[test]
    fn recovers_osp12_and_sl12() {
        let f = osp12::us_osp12().unwrap();
        let p = [
            pt(vec![c(0.83, 0.21)], Chart::S),
            pt(vec![c(-1.37, 0.4)], Chart::S),
        ];
        let t = weight_table_search(&f, Chart::S, 1, &grid(-2.0, 2.0, 0.5), &p, 1e-10).unwrap();
        assert_eq!(t, WeightTable::osp12());
        let g = sl12::us_sl12().unwrap();
        let p = [
            pt(vec![c(0.83, 0.21), c(-0.4, 0.6)], Chart::S),
            pt(vec![c(-1.37, 0.4), c(1.1, -0.3)], Chart::S),
        ];
        let t = weight_table_search(&g, Chart::S, 2, &grid(-2.0, 2.0, 1.0), &p, 1e-10).unwrap();
        assert_eq!(t, WeightTable::sl12());
    }

    #[test]
    fn tight_tolerance_finds_nothing() {
        let f = sl_n::us_sl_n(2).unwrap();
        let p = [pt(vec![c(0.83, 0.21)], Chart::S)];
        assert!(matches!(
            weight_table_search(&f, Chart::S, 1, &[0.3, 0.7], &p, 1e-10),
            Err(Error::Search(_))
        ));
    }
}
