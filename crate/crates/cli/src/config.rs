use std::path::Path;

use serde_json::Value;

use crate::commands::CliError;

/// Defaults read from a `--config` JSON object. Scalars, strings and arrays
/// are all accepted and normalized to the same text a flag would carry.
#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    raw: Option<Value>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("reading {}: {e}", path.display())))?;
        let raw: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("parsing {}: {e}", path.display())))?;
        if !raw.is_object() {
            return Err(CliError::Invalid(format!("{} must hold a JSON object", path.display())));
        }
        Ok(FileConfig { raw: Some(raw) })
    }

    pub fn value(&self) -> Option<&Value> {
        self.raw.as_ref()
    }

    /// `key` as flag text: arrays join with `,`.
    pub fn text(&self, key: &str) -> Option<String> {
        let v = self.raw.as_ref()?.get(key)?;
        Some(match v {
            Value::String(s) => s.clone(),
            Value::Array(items) => items
                .iter()
                .map(|x| match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(","),
            other => other.to_string(),
        })
    }

    pub fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.text(key) {
            None => Ok(None),
            Some(t) => t
                .parse()
                .map(Some)
                .map_err(|_| CliError::Invalid(format!("config key {key:?}: cannot parse {t:?}"))),
        }
    }
}

/// Flag value if given, else the config file's, else `None`.
pub fn pick(flag: &Option<String>, file: &FileConfig, key: &str) -> Option<String> {
    flag.clone().or_else(|| file.text(key))
}

pub fn pick_num<T: std::str::FromStr + Copy>(flag: Option<T>, file: &FileConfig, key: &str) -> Result<Option<T>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.number(key),
    }
}
