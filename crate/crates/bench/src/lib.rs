//! Fixed inputs shared by the criterion benches.

use gnf_core::gtensor::DynParams;
use gnf_core::C64;

pub const DOUBLE_SINE_POINTS: [(f64, f64); 3] = [(0.3, 0.1), (1.2, -0.4), (2.1, 0.05)];
pub const PERIODS: (f64, f64) = (1.0, 2.3);

/// (a, b, c, z) covering the direct series, the 1−z branch and |z| > 1.
pub fn hyp2f1_points() -> [(C64, C64, C64, C64); 3] {
    let c = C64::new;
    [
        (c(0.3, 0.1), c(1.2, 0.0), c(2.5, -0.2), c(0.4, 0.1)),
        (c(0.5, 0.0), c(-0.7, 0.3), c(1.9, 0.0), c(0.93, -0.05)),
        (c(1.1, 0.2), c(0.25, 0.0), c(3.2, 0.1), c(-2.5, 0.4)),
    ]
}

pub fn sl_n_point(n: usize) -> DynParams {
    DynParams::x(
        (0..n)
            .map(|a| C64::new(0.9 - 0.6 * a as f64, 0.1 * a as f64))
            .collect(),
    )
}

pub const S1: C64 = C64::new(0.37, 0.21);
pub const S2: C64 = C64::new(-0.52, 0.13);
