use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::RMatrixFamily;
use crate::error::{Error, Result};
use crate::gtensor::{DynParams, WeightTable};
use crate::linalg::{CMatrix, C64};

/// Largest entry magnitude accepted at a sample point; stands in for a
/// distance of 0.05 to the nearest pole.
pub const ENTRY_BOUND: f64 = 400.0;

const MAX_TRIES: usize = 1000;

/// Deterministic parameter sampler with pole rejection.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn real(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn complex(&mut self, re: (f64, f64), im: (f64, f64)) -> C64 {
        C64::new(self.real(re.0, re.1), self.real(im.0, im.1))
    }

    /// A point on the annulus lo ≤ |z| ≤ hi.
    pub fn annulus(&mut self, lo: f64, hi: f64) -> C64 {
        C64::from_polar(
            self.real(lo, hi),
            self.real(-std::f64::consts::PI, std::f64::consts::PI),
        )
    }

    pub fn complexes(&mut self, k: usize, re: (f64, f64), im: (f64, f64)) -> Vec<C64> {
        (0..k).map(|_| self.complex(re, im)).collect()
    }

    /// Draws candidates until `gen` succeeds; any error counts as a rejection.
    pub fn draw<T>(&mut self, mut gen: impl FnMut(&mut Sampler) -> Result<T>) -> Result<T> {
        let mut last = None;
        for _ in 0..MAX_TRIES {
            match gen(self) {
                Ok(v) => return Ok(v),
                Err(e) => last = Some(e),
            }
        }
        Err(Error::Search(format!(
            "no admissible sample in {MAX_TRIES} draws (last: {})",
            last.map_or_else(String::new, |e| e.to_string())
        )))
    }
}

pub fn bounded(m: &CMatrix) -> Result<()> {
    let a = m.max_abs();
    if a.is_finite() && a <= ENTRY_BOUND {
        Ok(())
    } else {
        Err(Error::Domain(format!("entry of size {a:e} near a pole")))
    }
}

/// Evaluates the family at every argument the dynamical equation uses
/// (each spectral value at λ and at λ shifted by every weight row) and
/// rejects the point if anything fails or is too large.
pub fn admissible(
    f: &RMatrixFamily,
    spectral: &[Option<C64>],
    lambda: &DynParams,
    wt: Option<&WeightTable>,
) -> Result<()> {
    let mut points = vec![lambda.clone()];
    if let Some(wt) = wt {
        for c in 0..wt.dim() {
            points.push(lambda.shifted(wt, c)?);
        }
    }
    for s in spectral {
        for l in &points {
            bounded(&f.eval(*s, f.dyn_chart.map(|_| l))?)?;
        }
    }
    Ok(())
}
