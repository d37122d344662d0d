use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::{Failure, Format, Which};

/// Experiment manifest; every field is optional and command-line flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub emit: EmitSection,
    #[serde(default)]
    pub check: CheckSection,
    #[serde(default)]
    pub limits: LimitsSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmitSection {
    pub family: Option<String>,
    pub format: Option<Format>,
    #[serde(default, deserialize_with = "stringly")]
    pub params: BTreeMap<String, String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSection {
    pub suite: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsSection {
    pub which: Option<Which>,
    pub grid: Option<String>,
    #[serde(default, deserialize_with = "stringly")]
    pub params: BTreeMap<String, String>,
}

/// Parameter tables accept TOML numbers as well as strings.
fn stringly<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BTreeMap<String, String>, D::Error> {
    let raw = BTreeMap::<String, toml::Value>::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| match v {
            toml::Value::String(s) => Ok((k, s)),
            toml::Value::Integer(i) => Ok((k, i.to_string())),
            toml::Value::Float(f) => Ok((k, format!("{f:e}"))),
            other => Err(serde::de::Error::custom(format!(
                "parameter {k} has unsupported value {other}"
            ))),
        })
        .collect()
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}
