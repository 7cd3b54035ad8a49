//! Output and parsing helpers shared by the subcommands.

use std::path::Path;

use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Every command's final report lands on stdout as pretty JSON.
pub fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> CliResult {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::validation(format!("{what}: {e}")))
}

/// Parse "1.5,2,3.25" into floats.
pub fn parse_f64_list(text: &str, what: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::validation(format!("{what}: {s:?} is not a number")))
        })
        .collect()
}

pub fn parse_usize_list(text: &str, what: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::validation(format!("{what}: {s:?} is not an index")))
        })
        .collect()
}

/// Parse a two-column CSV of numbers, skipping a non-numeric header row.
pub fn parse_xy_csv(text: &str, what: &str) -> CliResult<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',').map(str::trim);
        let (Some(a), Some(b)) = (fields.next(), fields.next()) else {
            return Err(CliError::validation(format!(
                "{what}: line {} needs two comma-separated columns",
                i + 1
            )));
        };
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(x), Ok(y)) => rows.push((x, y)),
            _ if i == 0 => {} // header row
            _ => {
                return Err(CliError::validation(format!(
                    "{what}: line {} is not numeric",
                    i + 1
                )))
            }
        }
    }
    Ok(rows)
}

pub fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("value serializes")
}
