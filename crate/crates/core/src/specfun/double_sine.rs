//! Barnes double sine S₂(x|ω₁,ω₂) and the ρ_DYr normalisation built from it.
//!
//! On the strip ω_min/2 ≤ Re x ≤ ω₁+ω₂−ω_min/2 we integrate
//!   −log S₂(x) = ∫₀^∞ [sinh(at)/(2 sinh(ω₁t) sinh(ω₂t)) − a/(2ω₁ω₂t)] dt/t,
//! a = ω₁+ω₂−2x. Elsewhere, x is moved into the strip with
//! S₂(x+ω_min) = S₂(x) / (2 sin(πx/ω_max)).

use std::f64::consts::PI;

use super::{quad, QuadratureConfig};
use crate::error::{Error, Result};
use crate::linalg::C64;

const SERIES_TERMS: usize = 7;

fn factorial_odd(k: usize) -> f64 {
    (1..=2 * k + 1).map(|j| j as f64).product()
}

struct Integrand {
    a: C64,
    w1: f64,
    w2: f64,
    // t < t_small uses a series in y = t²
    t_small: f64,
    num: [C64; SERIES_TERMS],
    den: [f64; SERIES_TERMS],
}

impl Integrand {
    fn new(a: C64, w1: f64, w2: f64) -> Self {
        let scale = a.norm().max(w1).max(w2);
        let mut num = [C64::new(0.0, 0.0); SERIES_TERMS];
        let mut d1 = [0.0; SERIES_TERMS];
        let mut d2 = [0.0; SERIES_TERMS];
        for k in 0..SERIES_TERMS {
            let f = factorial_odd(k);
            num[k] = a.powu(2 * k as u32) / f;
            d1[k] = w1.powi(2 * k as i32) / f;
            d2[k] = w2.powi(2 * k as i32) / f;
        }
        let mut den = [0.0; SERIES_TERMS];
        for i in 0..SERIES_TERMS {
            for j in 0..SERIES_TERMS - i {
                den[i + j] += d1[i] * d2[j];
            }
        }
        Integrand {
            a,
            w1,
            w2,
            t_small: 0.2 / scale,
            num,
            den,
        }
    }

    fn eval(&self, t: f64) -> C64 {
        let (a, w1, w2) = (self.a, self.w1, self.w2);
        if t < self.t_small {
            let y = t * t;
            let mut top = C64::new(0.0, 0.0);
            let mut bot = 0.0;
            let mut p = 1.0;
            for k in 0..SERIES_TERMS {
                if k >= 1 {
                    top += (self.num[k] - self.den[k]) * (p / y);
                }
                bot += self.den[k] * p;
                p *= y;
            }
            return a / (2.0 * w1 * w2) * top / bot;
        }
        let om = w1 + w2;
        let e1 = -(-2.0 * w1 * t).exp_m1();
        let e2 = -(-2.0 * w2 * t).exp_m1();
        let ratio = (((a - om) * t).exp() - ((-a - om) * t).exp()) / (e1 * e2);
        (ratio - a / (2.0 * w1 * w2 * t)) / t
    }
}

fn log_s2_strip(x: C64, w1: f64, w2: f64, cfg: &QuadratureConfig) -> Result<C64> {
    let a = C64::new(w1 + w2, 0.0) - 2.0 * x;
    let decay = w1 + w2 - a.re.abs();
    debug_assert!(decay > 0.0);
    let f = Integrand::new(a, w1, w2);
    let upper = 42.0 / decay;
    let (body, _) = quad::integrate(|t| f.eval(t), 0.0, upper, cfg)?;
    // beyond `upper` only the −a/(2ω₁ω₂t²) piece survives
    let tail = -a / (2.0 * w1 * w2 * upper);
    Ok(-(body + tail))
}

/// S₂(x|ω₁,ω₂) for real positive periods.
pub fn double_sine(x: C64, omega1: f64, omega2: f64, cfg: &QuadratureConfig) -> Result<C64> {
    if !(omega1 > 0.0 && omega2 > 0.0) {
        return Err(Error::Domain(format!(
            "double_sine periods must be positive: {omega1}, {omega2}"
        )));
    }
    let (wmin, wmax) = (omega1.min(omega2), omega1.max(omega2));
    let om = omega1 + omega2;
    let mut x = x;
    let mut factor = C64::new(1.0, 0.0);
    let sine = |y: C64| -> Result<C64> {
        let s = 2.0 * (y * PI / wmax).sin();
        if s.norm() < 1e-13 {
            return Err(Error::pole("double_sine", y));
        }
        Ok(s)
    };
    let mut steps = 0;
    while x.re < 0.5 * wmin {
        factor *= sine(x)?;
        x += wmin;
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Domain(
                "double_sine argument too far from the strip".into(),
            ));
        }
    }
    while x.re > om - 0.5 * wmin {
        x -= wmin;
        factor /= sine(x)?;
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Domain(
                "double_sine argument too far from the strip".into(),
            ));
        }
    }
    Ok(log_s2_strip(x, omega1, omega2, cfg)?.exp() * factor)
}

/// ρ_DYr(u) = S₂(−u|r,N) S₂(1+u|r,N) / (S₂(u|r,N) S₂(1−u|r,N)).
pub fn rho_dyr(u: C64, r: f64, n: usize, cfg: &QuadratureConfig) -> Result<C64> {
    if !(r > 0.0) {
        return Err(Error::InvalidParam(format!("r must be positive, got {r}")));
    }
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "rho_dyr needs N >= 2, got {n}"
        )));
    }
    let nf = n as f64;
    let s = |x: C64| double_sine(x, r, nf, cfg);
    Ok(s(-u)? * s(1.0 + u)? / (s(u)? * s(1.0 - u)?))
}
