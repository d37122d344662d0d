use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use gnf_core::catalog::{evaluate, Request};
use gnf_core::CMatrix;
use serde_json::{json, Number, Value};

use crate::{Failure, Format};

/// 17 significant digits: enough for every f64 to parse back to itself.
fn number(v: f64) -> Result<Number, Failure> {
    if !v.is_finite() {
        return Err(Failure {
            code: 1,
            kind: "non_finite".into(),
            message: format!("entry {v} is not finite"),
        });
    }
    Ok(Number::from_str(&format!("{v:.16e}")).expect("formatted float is a JSON number"))
}

pub fn emit(
    out: &mut impl Write,
    family: &str,
    params: BTreeMap<String, String>,
    format: Format,
) -> Result<(), Failure> {
    let (entry, m) = evaluate(family, &Request::new(params.clone()))?;
    match format {
        Format::Json => {
            let entries = m
                .data()
                .iter()
                .map(|z| {
                    Ok(Value::Array(vec![
                        Value::Number(number(z.re)?),
                        Value::Number(number(z.im)?),
                    ]))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let doc = json!({
                "family": family,
                "params": params,
                "dim": m.rows(),
                "graded": entry.graded(),
                "entries": entries,
            });
            serde_json::to_writer(&mut *out, &doc).map_err(|e| Failure::usage(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => write_csv(out, family, &params, entry.graded(), &m)?,
    }
    Ok(())
}

fn write_csv(
    out: &mut impl Write,
    family: &str,
    params: &BTreeMap<String, String>,
    graded: bool,
    m: &CMatrix,
) -> Result<(), Failure> {
    let joined = params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";");
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Failure {
        code: 1,
        kind: "io".into(),
        message: e.to_string(),
    };
    w.write_record([
        "family", "params", "dim", "graded", "row", "col", "re", "im",
    ])
    .map_err(io)?;
    let dim = m.rows().to_string();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            let (re, im) = (number(z.re)?, number(z.im)?);
            w.write_record([
                family,
                &joined,
                &dim,
                if graded { "true" } else { "false" },
                &i.to_string(),
                &j.to_string(),
                &re.to_string(),
                &im.to_string(),
            ])
            .map_err(io)?;
        }
    }
    w.flush()?;
    Ok(())
}
