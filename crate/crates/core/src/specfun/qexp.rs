//! q-numbers and the q-exponential exp_q(M) = Σ Mⁿ/(n)_q!.

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// (k)_q = (1 − q^k)/(1 − q), evaluated as 1 + q + … + q^{k−1}.
pub fn q_number(k: u32, q: C64) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    let mut p = C64::new(1.0, 0.0);
    for _ in 0..k {
        s += p;
        p *= q;
    }
    s
}

pub fn q_factorial(k: u32, q: C64) -> C64 {
    (1..=k).map(|j| q_number(j, q)).product()
}

pub fn qexp(m: &CMatrix, q: C64, max_order: u32) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension("qexp of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut sum = CMatrix::identity(n);
    let mut power = CMatrix::identity(n);
    let mut fact = C64::new(1.0, 0.0);
    for k in 1..=max_order {
        power = &power * m;
        if power.max_abs() == 0.0 {
            return Ok(sum);
        }
        fact *= q_number(k, q);
        let term = power.scale(1.0 / fact);
        sum = &sum + &term;
        if term.max_abs() <= 1e-17 * sum.max_abs() {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence {
        what: "q-exponential series",
        steps: max_order as usize,
    })
}
