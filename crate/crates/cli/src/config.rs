//! Optional JSON config: a flat object whose keys mirror long flag names.
//! Explicit flags always win; config fills the gaps; built-in defaults last.

use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Default)]
pub struct Config {
    values: Map<String, Value>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("config {}: {e}", path.display())))?;
        match value {
            Value::Object(values) => Ok(Config { values }),
            other => Err(CliError::validation(format!(
                "config must be a JSON object, got {other}"
            ))),
        }
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.values.get(key)
    }

    pub fn f64(&self, flag: Option<f64>, key: &str, default: f64) -> CliResult<f64> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            None => Ok(default),
            Some(Value::Number(n)) => n
                .as_f64()
                .ok_or_else(|| CliError::validation(format!("config {key}: not a finite number"))),
            Some(other) => Err(type_error(key, "number", other)),
        }
    }

    pub fn usize(&self, flag: Option<usize>, key: &str, default: usize) -> CliResult<usize> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            None => Ok(default),
            Some(Value::Number(n)) => n.as_u64().map(|v| v as usize).ok_or_else(|| {
                CliError::validation(format!("config {key}: not a non-negative integer"))
            }),
            Some(other) => Err(type_error(key, "integer", other)),
        }
    }

    pub fn u64(&self, flag: Option<u64>, key: &str, default: u64) -> CliResult<u64> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            None => Ok(default),
            Some(Value::Number(n)) => n.as_u64().ok_or_else(|| {
                CliError::validation(format!("config {key}: not a non-negative integer"))
            }),
            Some(other) => Err(type_error(key, "integer", other)),
        }
    }

    pub fn u32(&self, flag: Option<u32>, key: &str, default: u32) -> CliResult<u32> {
        Ok(self.u64(flag.map(u64::from), key, u64::from(default))? as u32)
    }

    pub fn bool(&self, flag: Option<bool>, key: &str, default: bool) -> CliResult<bool> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            None => Ok(default),
            Some(Value::Bool(b)) => Ok(*b),
            Some(other) => Err(type_error(key, "boolean", other)),
        }
    }

    pub fn string(&self, flag: Option<String>, key: &str) -> CliResult<Option<String>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(type_error(key, "string", other)),
        }
    }

    pub fn path(&self, flag: Option<PathBuf>, key: &str) -> CliResult<Option<PathBuf>> {
        Ok(self
            .string(flag.map(|p| p.to_string_lossy().into_owned()), key)?
            .map(PathBuf::from))
    }
}

fn type_error(key: &str, expected: &str, got: &Value) -> CliError {
    CliError::validation(format!("config {key}: expected {expected}, got {got}"))
}
