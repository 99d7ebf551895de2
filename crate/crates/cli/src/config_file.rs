//! Optional `key = value` configuration files mirroring the command-line
//! flags. Flags always win on conflict; within a file, later lines override
//! earlier ones.

use std::collections::BTreeMap;

use crate::CliError;

/// Every key a config file may carry (the union of all long flag names).
const KNOWN_KEYS: &[&str] = &[
    "alpha", "alphas", "betas", "budget", "check", "codebook", "config", "db", "design",
    "format", "grid", "out", "pe", "rate", "samples", "seed", "sigma-policy", "sigma2",
    "snr1", "snrs", "strict-sum", "units",
];

/// Parsed key/value pairs, all still textual.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

/// Parse config text. Blank lines and `#` comments are ignored; every other
/// line must be `key = value` with a known key.
pub fn parse_config(text: &str) -> Result<ConfigMap, CliError> {
    let mut entries = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key = value", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key {key:?}",
                lineno + 1
            )));
        }
        if value.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty value", lineno + 1)));
        }
        entries.insert(key.to_string(), value.to_string());
    }
    Ok(ConfigMap { entries })
}

impl ConfigMap {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        parse_config(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        debug_assert!(KNOWN_KEYS.contains(&key), "unlisted config key {key}");
        self.entries.get(key).map(|s| s.as_str())
    }

    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config key {key}: bad value {raw:?}"))),
        }
    }

    pub fn get_bool(&self, key: &str) -> Result<Option<bool>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some("true") | Some("1") | Some("yes") => Ok(Some(true)),
            Some("false") | Some("0") | Some("no") => Ok(Some(false)),
            Some(other) => {
                Err(CliError::Usage(format!("config key {key}: bad boolean {other:?}")))
            }
        }
    }
}
