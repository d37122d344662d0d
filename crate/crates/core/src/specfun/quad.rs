//! Adaptive Gauss–Kronrod (7/15) for complex-valued integrands on a finite
//! interval. Intervals with the largest error estimate are bisected first.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::QuadratureConfig;
use crate::error::{Error, Result};
use crate::linalg::C64;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Piece {
    a: f64,
    b: f64,
    val: C64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn gk15(f: &impl Fn(f64) -> C64, a: f64, b: f64) -> (C64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(mid - dx) + f(mid + dx);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * half, ((k - g) * half).norm())
}

/// ∫_a^b f(t) dt. Returns the value and the summed error estimate.
pub fn integrate(
    f: impl Fn(f64) -> C64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(C64, f64)> {
    let mut heap = BinaryHeap::new();
    let (v, e) = gk15(&f, a, b);
    heap.push(Piece {
        a,
        b,
        val: v,
        err: e,
    });
    let mut total = v;
    let mut err = e;
    let mut count = 1;
    while err > cfg.abs_tol.max(cfg.rel_tol * total.norm()) {
        if count >= cfg.max_intervals {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature",
                steps: count,
            });
        }
        let p = heap.pop().expect("heap never empty");
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk15(&f, p.a, m);
        let (v2, e2) = gk15(&f, m, p.b);
        total += v1 + v2 - p.val;
        err += e1 + e2 - p.err;
        heap.push(Piece {
            a: p.a,
            b: m,
            val: v1,
            err: e1,
        });
        heap.push(Piece {
            a: m,
            b: p.b,
            val: v2,
            err: e2,
        });
        count += 1;
    }
    // resum to shed accumulated rounding from the running updates
    let total = heap.iter().map(|p| p.val).sum();
    Ok((total, err))
}
