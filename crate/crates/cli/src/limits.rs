use std::collections::BTreeMap;
use std::io::Write;

use gnf_core::catalog::parse_complex;
use gnf_core::verify::{limit_p_to_0, limit_scaling};
use gnf_core::{Error, C64};

use crate::{Failure, Which};

/// "1e-2,1e-3,1e-4" or "geom:1e-2:1e-4:3".
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("geom:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [a, b, k] = parts[..] else {
            return Err(Failure::usage(format!(
                "geometric grid '{spec}' must be geom:START:STOP:COUNT"
            )));
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("bad grid value '{s}'")))
        };
        let (a, b) = (num(a)?, num(b)?);
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad grid count '{k}'")))?;
        if k == 0 || !(a > 0.0 && b > 0.0) {
            return Err(Failure::usage(
                "geometric grid needs positive endpoints and count >= 1",
            ));
        }
        if k == 1 {
            return Ok(vec![a]);
        }
        let r = (b / a).powf(1.0 / (k - 1) as f64);
        return Ok((0..k).map(|i| a * r.powi(i as i32)).collect());
    }
    let v = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Failure::usage(format!("bad grid value '{s}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(Failure::usage("empty grid"));
    }
    Ok(v)
}

fn get(params: &BTreeMap<String, String>, key: &str, default: C64) -> Result<C64, Failure> {
    params
        .get(key)
        .map_or(Ok(default), |s| parse_complex(s).map_err(Failure::from))
}

fn coords(
    params: &BTreeMap<String, String>,
    n: usize,
    default: &[f64],
) -> Result<Vec<C64>, Failure> {
    (1..=n)
        .map(|i| {
            get(
                params,
                &format!("x{i}"),
                C64::new(default.get(i - 1).copied().unwrap_or(0.0), 0.0),
            )
        })
        .collect()
}

pub fn limits(
    out: &mut impl Write,
    which: Which,
    grid: &str,
    params: &BTreeMap<String, String>,
) -> Result<(), Failure> {
    let grid = parse_grid(grid)?;
    let allowed: &[&str] = match which {
        Which::P0 => &["N", "q", "z"],
        Which::Scaling => &["N", "u"],
    };
    for k in params.keys() {
        let is_x = k
            .strip_prefix('x')
            .is_some_and(|r| r.parse::<usize>().is_ok());
        if !allowed.contains(&k.as_str()) && !is_x {
            return Err(Error::InvalidParam(format!("limits does not take parameter {k}")).into());
        }
    }
    let n = get(params, "N", C64::new(2.0, 0.0))?;
    if n.im != 0.0 || n.re.fract() != 0.0 || !(2.0..=8.0).contains(&n.re) {
        return Err(Error::InvalidParam("N must be an integer in 2..=8".into()).into());
    }
    let n = n.re as usize;
    let default_x: Vec<f64> = (0..n)
        .map(|a| 1.1 * (n as f64 - 1.0 - 2.0 * a as f64) / (n as f64 - 1.0))
        .collect();
    let x = coords(params, n, &default_x)?;
    let table = match which {
        Which::P0 => {
            let q = get(params, "q", C64::new(0.6, 0.0))?;
            let z = get(params, "z", C64::new(0.3, 0.2))?;
            limit_p_to_0(n, q, &gnf_core::gtensor::DynParams::x(x), z, &grid)?
        }
        Which::Scaling => limit_scaling(n, get(params, "u", C64::new(0.37, 0.1))?, &x, &grid)?,
    };
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Failure {
        code: 1,
        kind: "io".into(),
        message: e.to_string(),
    };
    w.write_record(["parameter", "max_gap", "decay_ratio"])
        .map_err(io)?;
    for r in &table.rows {
        let ratio = r.ratio.map_or(String::new(), |t| format!("{t:.16e}"));
        w.write_record([
            format!("{:.16e}", r.param),
            format!("{:.16e}", r.gap),
            ratio,
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
