//! Ω_n(x) = Σ_k ω^{nk} cot(π(x+k)/N), ω = e^{2iπ/N}, and its closed form.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{c, C64, I};

fn root_of_unity(n: usize, k: i64) -> C64 {
    let k = k.rem_euclid(n as i64);
    c(0.0, 2.0 * PI * k as f64 / n as f64).exp()
}

fn check(n: usize, x: C64, big_n: usize) -> Result<()> {
    if big_n == 0 {
        return Err(Error::InvalidParam("omega_fn needs N >= 1".into()));
    }
    if n >= big_n {
        return Err(Error::InvalidParam(format!(
            "omega_fn index n = {n} outside [0, {}]",
            big_n - 1
        )));
    }
    if x.im == 0.0 && (x.re - x.re.round()).abs() < 1e-14 {
        return Err(Error::pole("omega_fn", x));
    }
    Ok(())
}

/// Closed form N(e^{iπx}/sin(πx) · e^{−2iπnx/N} − iδ_{n0}); only valid for
/// 0 ≤ n ≤ N−1, so other n are rejected.
pub fn omega_fn(n: usize, x: C64, big_n: usize) -> Result<C64> {
    check(n, x, big_n)?;
    let nn = big_n as f64;
    let mut v = (I * PI * x).exp() / (PI * x).sin() * (-2.0 * I * PI * (n as f64) * x / nn).exp();
    if n == 0 {
        v -= I;
    }
    Ok(v * nn)
}

/// The defining cotangent sum.
pub fn omega_sum(n: usize, x: C64, big_n: usize) -> Result<C64> {
    check(n, x, big_n)?;
    let nn = big_n as f64;
    Ok((0..big_n)
        .map(|k| {
            let t = (x + k as f64) * PI / nn;
            root_of_unity(big_n, (n * k) as i64) * t.cos() / t.sin()
        })
        .sum())
}
