//! Infinite q-Pochhammer products (z; p₁,…,p_m)_∞ and the theta function
//! Θ_p(z) = (z;p)(p/z;p)(p;p).

use super::TruncationConfig;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// ∏_{n_i ≥ 0} (1 − z p₁^{n₁}⋯p_m^{n_m}).
pub fn qpoch(z: C64, bases: &[C64], cfg: &TruncationConfig) -> Result<C64> {
    for p in bases {
        if p.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "q-Pochhammer base {p} has modulus >= 1"
            )));
        }
    }
    product(z, bases, cfg)
}

fn product(z: C64, bases: &[C64], cfg: &TruncationConfig) -> Result<C64> {
    let Some((&p, rest)) = bases.split_first() else {
        return Ok(1.0 - z);
    };
    // log|(x; rest)_∞ − 1| is bounded by |x| / ∏(1−|p_i|)
    let damp: f64 = bases.iter().map(|b| 1.0 - b.norm()).product();
    let mut acc = C64::new(1.0, 0.0);
    let mut x = z;
    for _ in 0..cfg.max_terms {
        if x.norm() / damp < cfg.term_tol {
            return Ok(acc);
        }
        acc *= product(x, rest, cfg)?;
        x *= p;
        if p.norm() == 0.0 {
            return Ok(acc);
        }
    }
    Err(Error::NoConvergence {
        what: "q-Pochhammer product",
        steps: cfg.max_terms,
    })
}

pub fn theta_p(z: C64, p: C64, cfg: &TruncationConfig) -> Result<C64> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("theta_p at z = 0".into()));
    }
    let b = [p];
    Ok(qpoch(z, &b, cfg)? * qpoch(p / z, &b, cfg)? * qpoch(p, &b, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn cfg() -> TruncationConfig {
        TruncationConfig::default()
    }

    #[test]
    fn trivial_cases() {
        let z = c(0.3, -0.8);
        assert_eq!(
            qpoch(c(0.0, 0.0), &[c(0.5, 0.0)], &cfg()).unwrap(),
            c(1.0, 0.0)
        );
        assert!((qpoch(z, &[c(0.0, 0.0)], &cfg()).unwrap() - (1.0 - z)).norm() < 1e-16);
        let p = c(0.4, 0.1);
        let single = qpoch(z, &[p], &cfg()).unwrap();
        let double = qpoch(z, &[p, c(0.0, 0.0)], &cfg()).unwrap();
        assert!((single - double).norm() < 1e-15);
        assert!(qpoch(z, &[c(1.0, 0.0)], &cfg()).is_err());
    }

    #[test]
    fn euler_pentagonal() {
        // (q;q)_∞ = Σ (−1)^k q^{k(3k−1)/2}
        let q: f64 = 0.37;
        let mut s = 0.0;
        for k in -20i32..=20 {
            s += (-1f64).powi(k) * q.powf((k * (3 * k - 1)) as f64 / 2.0);
        }
        let v = qpoch(c(q, 0.0), &[c(q, 0.0)], &cfg()).unwrap();
        assert!((v - s).norm() < 1e-14);
    }

    #[test]
    fn double_product_splits() {
        // (z; p, q) = ∏_n (z pⁿ; q)
        let (z, p, q) = (c(0.7, 0.2), c(0.3, 0.0), c(0.6, -0.1));
        let mut want = c(1.0, 0.0);
        for n in 0..60 {
            want *= qpoch(z * p.powu(n), &[q], &cfg()).unwrap();
        }
        let got = qpoch(z, &[p, q], &cfg()).unwrap();
        assert!((got - want).norm() < 1e-13);
    }

    #[test]
    fn theta_identities() {
        let p = c(0.3, 0.1);
        assert!(theta_p(c(1.0, 0.0), p, &cfg()).unwrap().norm() < 1e-15);
        for &z in &[c(0.4, 0.9), c(-1.3, 0.2), c(2.0, -1.0)] {
            for &p in &[c(0.5, 0.0), c(0.2, 0.3), c(-0.45, 0.1)] {
                let lhs = theta_p(p * z, p, &cfg()).unwrap();
                let rhs = -theta_p(z, p, &cfg()).unwrap() / z;
                assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
            }
            let small = theta_p(z, c(1e-6, 0.0), &cfg()).unwrap();
            assert!((small - (1.0 - z)).norm() < 1e-5);
        }
    }
}
