use std::collections::BTreeMap;

use super::family::{RMatrixFamily, Spectral, Twist};
use super::osp12::{self, BaxterBranch};
use super::sl12;
use super::sl_n::{self, EllipticGauge};
use crate::error::{Error, Result};
use crate::gtensor::{Chart, DynParams, GradedSpace};
use crate::linalg::{CMatrix, C64};

/// Every name accepted by [`build`], sorted.
pub const FAMILIES: &[&str] = &[
    "baxterised_osp12",
    "bql_osp12",
    "bql_slN",
    "bqpl_slN",
    "bqpl_slN_gauged",
    "dy_sl12",
    "dy_slN",
    "dyr_sl12",
    "dyr_slN",
    "dyr_slN_bar",
    "dys_sl12",
    "dys_slN",
    "twist_bql_osp12",
    "twist_bql_slN",
    "twist_dyr_slN",
    "twist_us_osp12",
    "twist_us_sl12",
    "twist_us_slN",
    "uq_osp12",
    "uq_slN",
    "uql_osp12",
    "uql_slN",
    "us_osp12",
    "us_sl12",
    "us_slN",
];

#[derive(Clone, Debug)]
pub enum Entry {
    R(RMatrixFamily),
    Twist(Twist),
}

impl Entry {
    pub fn name(&self) -> &str {
        match self {
            Entry::R(f) => &f.name,
            Entry::Twist(t) => &t.name,
        }
    }

    pub fn space(&self) -> &GradedSpace {
        match self {
            Entry::R(f) => &f.space,
            Entry::Twist(t) => &t.space,
        }
    }

    pub fn spectral(&self) -> Spectral {
        match self {
            Entry::R(f) => f.spectral,
            Entry::Twist(t) => t.spectral,
        }
    }

    pub fn dyn_chart(&self) -> Option<Chart> {
        match self {
            Entry::R(f) => f.dyn_chart,
            Entry::Twist(t) => t.dyn_chart,
        }
    }

    /// Whether emitted entries are tilde (sign-redefined) matrix elements.
    pub fn graded(&self) -> bool {
        match self {
            Entry::R(f) => f.graded_output,
            Entry::Twist(t) => t.space.is_graded(),
        }
    }

    pub fn eval(&self, spectral: Option<C64>, lambda: Option<&DynParams>) -> Result<CMatrix> {
        match self {
            Entry::R(f) => f.eval(spectral, lambda),
            Entry::Twist(t) => t.eval(spectral, lambda),
        }
    }
}

/// Parses "a+bi", "a-bi", "bi", "re,im" or a real literal.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidParam(format!("cannot parse complex number {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((re, im)) = t.split_once(',') {
        return Ok(C64::new(
            re.parse().map_err(|_| bad())?,
            im.parse().map_err(|_| bad())?,
        ));
    }
    if let Ok(x) = t.parse::<f64>() {
        return Ok(C64::new(x, 0.0));
    }
    let body = t.strip_suffix(['i', 'j']).ok_or_else(bad)?;
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |v: &str| -> Result<f64> {
        match v {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => v.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(C64::new(
            body[..k].parse().map_err(|_| bad())?,
            imag(&body[k..])?,
        )),
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

/// Parameters of a catalog request: construction constants (N, q, p, r, a),
/// the spectral argument (z or u) and dynamical coordinates (s1, s2, …,
/// x1, …, or w1, …; a bare s or w for one coordinate).
#[derive(Clone, Debug, Default)]
pub struct Request {
    values: BTreeMap<String, String>,
}

impl Request {
    pub fn new(values: BTreeMap<String, String>) -> Self {
        Request { values }
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn complex(&self, key: &str) -> Result<C64> {
        parse_complex(
            self.get(key)
                .ok_or_else(|| Error::InvalidParam(format!("missing parameter {key}")))?,
        )
    }

    fn real(&self, key: &str) -> Result<f64> {
        let v = self.complex(key)?;
        if v.im != 0.0 {
            return Err(Error::InvalidParam(format!("{key} must be real")));
        }
        Ok(v.re)
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let v = self.real(key)?;
        if v < 0.0 || v.fract() != 0.0 || v > 64.0 {
            return Err(Error::InvalidParam(format!(
                "{key} must be a small non-negative integer"
            )));
        }
        Ok(v as usize)
    }

    fn branch(&self) -> Result<BaxterBranch> {
        BaxterBranch::parse(self.get("a").unwrap_or("-q"))
    }

    /// The spectral argument the entry needs, or None.
    pub fn spectral(&self, kind: Spectral) -> Result<Option<C64>> {
        match kind {
            Spectral::None => Ok(None),
            Spectral::Multiplicative => self.complex("z").map(Some),
            Spectral::Additive => self.complex("u").map(Some),
        }
    }

    /// The dynamical point, from whichever of the s/x/w keys are present.
    pub fn dynamical(&self) -> Result<Option<DynParams>> {
        let mut found: Option<(Chart, BTreeMap<usize, C64>)> = None;
        for (k, v) in &self.values {
            let (chart, rest) = match k.split_at(1) {
                ("s", r) => (Chart::S, r),
                ("x", r) => (Chart::X, r),
                ("w", r) => (Chart::W, r),
                _ => continue,
            };
            let idx = if rest.is_empty() {
                1
            } else {
                match rest.parse::<usize>() {
                    Ok(i) if i >= 1 => i,
                    _ => continue,
                }
            };
            let entry = found.get_or_insert_with(|| (chart, BTreeMap::new()));
            if entry.0 != chart {
                return Err(Error::InvalidParam(
                    "dynamical coordinates mix several charts".into(),
                ));
            }
            if entry.1.insert(idx, parse_complex(v)?).is_some() {
                return Err(Error::InvalidParam(format!("coordinate {k} given twice")));
            }
        }
        let Some((chart, coords)) = found else {
            return Ok(None);
        };
        if coords.keys().copied().ne(1..=coords.len()) {
            return Err(Error::InvalidParam(
                "dynamical coordinates must be numbered 1, 2, … without gaps".into(),
            ));
        }
        Ok(Some(DynParams::new(chart, coords.into_values().collect())))
    }

    /// Rejects keys that neither the family nor its evaluation uses.
    fn check_keys(&self, construction: &[&str], entry: &Entry) -> Result<()> {
        for k in self.values.keys() {
            let is_dyn = entry.dyn_chart().is_some()
                && matches!(k.chars().next(), Some('s' | 'x' | 'w'))
                && (k.len() == 1 || k[1..].parse::<usize>().is_ok());
            let is_spec = match entry.spectral() {
                Spectral::Multiplicative => k == "z",
                Spectral::Additive => k == "u",
                Spectral::None => false,
            };
            if !(construction.contains(&k.as_str()) || is_dyn || is_spec) {
                return Err(Error::InvalidParam(format!(
                    "{} does not take parameter {k}",
                    entry.name()
                )));
            }
        }
        Ok(())
    }
}

/// Construction parameters of each family (evaluation keys excluded).
pub fn schema(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "baxterised_osp12" | "uql_osp12" => &["q", "a"],
        "bql_osp12" | "twist_bql_osp12" | "uq_osp12" => &["q"],
        "bql_slN" | "twist_bql_slN" | "uq_slN" | "uql_slN" => &["N", "q"],
        "bqpl_slN" | "bqpl_slN_gauged" => &["N", "q", "p"],
        "dy_sl12" | "dys_sl12" | "twist_us_osp12" | "twist_us_sl12" | "us_osp12" | "us_sl12" => &[],
        "dy_slN" | "dys_slN" | "twist_us_slN" | "us_slN" => &["N"],
        "dyr_sl12" => &["r"],
        "dyr_slN" | "dyr_slN_bar" | "twist_dyr_slN" => &["N", "r"],
        _ => return None,
    })
}

/// Builds a catalog entry from its name and construction parameters.
pub fn build(name: &str, req: &Request) -> Result<Entry> {
    let keys = schema(name).ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
    let entry = match name {
        "baxterised_osp12" => Entry::R(osp12::baxterised_osp12(req.complex("q")?, req.branch()?)?),
        "bql_osp12" => Entry::R(osp12::bql_osp12(req.complex("q")?)?),
        "bql_slN" => Entry::R(sl_n::bql_sl_n(req.usize("N")?, req.complex("q")?)?),
        "bqpl_slN" => Entry::R(sl_n::bqpl_sl_n(
            req.usize("N")?,
            req.complex("q")?,
            req.complex("p")?,
            EllipticGauge::Printed,
        )?),
        "bqpl_slN_gauged" => Entry::R(sl_n::bqpl_sl_n(
            req.usize("N")?,
            req.complex("q")?,
            req.complex("p")?,
            EllipticGauge::Gauged,
        )?),
        "dy_sl12" => Entry::R(sl12::dy_sl12()?),
        "dy_slN" => Entry::R(sl_n::dy_sl_n(req.usize("N")?)?),
        "dyr_sl12" => Entry::R(sl12::dyr_sl12(req.real("r")?)?),
        "dyr_slN" => Entry::R(sl_n::dyr_sl_n(req.usize("N")?, req.real("r")?)?),
        "dyr_slN_bar" => Entry::R(sl_n::dyr_sl_n_bar(req.usize("N")?, req.real("r")?)?),
        "dys_sl12" => Entry::R(sl12::dys_sl12()?),
        "dys_slN" => Entry::R(sl_n::dys_sl_n(req.usize("N")?)?),
        "twist_bql_osp12" => Entry::Twist(osp12::twist_bql_osp12(req.complex("q")?)?),
        "twist_bql_slN" => Entry::Twist(sl_n::twist_bql_sl_n(req.usize("N")?, req.complex("q")?)?),
        "twist_dyr_slN" => Entry::Twist(sl_n::twist_dyr_sl_n(req.usize("N")?, req.real("r")?)?),
        "twist_us_osp12" => Entry::Twist(osp12::twist_us_osp12()?),
        "twist_us_sl12" => Entry::Twist(sl12::twist_us_sl12()?),
        "twist_us_slN" => Entry::Twist(sl_n::twist_us_sl_n(req.usize("N")?)?),
        "uq_osp12" => Entry::R(osp12::uq_osp12(req.complex("q")?)?),
        "uq_slN" => Entry::R(sl_n::uq_sl_n(req.usize("N")?, req.complex("q")?)?),
        "uql_osp12" => Entry::R(osp12::uql_osp12(req.complex("q")?, req.branch()?)?),
        "uql_slN" => Entry::R(sl_n::uql_sl_n(req.usize("N")?, req.complex("q")?)?),
        "us_osp12" => Entry::R(osp12::us_osp12()?),
        "us_sl12" => Entry::R(sl12::us_sl12()?),
        "us_slN" => Entry::R(sl_n::us_sl_n(req.usize("N")?)?),
        _ => unreachable!("schema covers every family"),
    };
    req.check_keys(keys, &entry)?;
    Ok(entry)
}

/// Builds the entry and evaluates it at the point given in the request.
pub fn evaluate(name: &str, req: &Request) -> Result<(Entry, CMatrix)> {
    let entry = build(name, req)?;
    let s = req.spectral(entry.spectral())?;
    let l = if entry.dyn_chart().is_some() {
        req.dynamical()?
    } else {
        None
    };
    let m = entry.eval(s, l.as_ref())?;
    Ok((entry, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn req(pairs: &[(&str, &str)]) -> Request {
        Request::new(
            pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        )
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5").unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex("0.3,-0.2").unwrap(), c(0.3, -0.2));
        assert_eq!(parse_complex("0.3-0.2i").unwrap(), c(0.3, -0.2));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("1e-3+2.5e-1i").unwrap(), c(1e-3, 0.25));
        assert_eq!(parse_complex("-1e+2-i").unwrap(), c(-100.0, -1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn names_sorted_and_buildable() {
        let mut sorted = FAMILIES.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, FAMILIES);
        let all = [
            ("N", "2"),
            ("q", "0.6"),
            ("p", "0.01"),
            ("r", "2.3"),
            ("a", "q3"),
        ];
        for name in FAMILIES {
            let keys = schema(name).unwrap();
            let r = req(&all
                .iter()
                .copied()
                .filter(|(k, _)| keys.contains(k))
                .collect::<Vec<_>>());
            assert!(build(name, &r).is_ok(), "{name}");
        }
        assert!(matches!(
            build("nope", &req(&[])),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let (_, m) = evaluate("dy_slN", &req(&[("N", "2"), ("u", "1")])).unwrap();
        assert!((m[(1, 1)] / m[(0, 0)] - 0.5).norm() < 1e-15);
        let (_, m) = evaluate("uq_slN", &req(&[("N", "2"), ("q", "1")])).unwrap();
        assert_eq!(m, CMatrix::identity(4));
        let e = evaluate(
            "bql_slN",
            &req(&[("N", "2"), ("q", "0.5"), ("w1", "1"), ("w2", "1")]),
        )
        .unwrap_err();
        assert!(e.to_string().starts_with("singular dynamical parameter"));
        let (_, m) = evaluate("us_osp12", &req(&[("s", "0.4+0.1i")])).unwrap();
        assert_eq!(m.rows(), 9);
        assert!(evaluate("dy_slN", &req(&[("N", "2"), ("u", "1"), ("q", "0.3")])).is_err());
        assert!(evaluate("us_slN", &req(&[("N", "3"), ("x1", "1"), ("x3", "2")])).is_err());
        assert!(evaluate("us_slN", &req(&[("N", "2"), ("x1", "1"), ("s2", "2")])).is_err());
    }
}
