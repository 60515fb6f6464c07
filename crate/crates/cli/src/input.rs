use std::io::Read;
use std::path::Path;
use std::time::Duration;

use floodlab_core::io::{from_file, to_file, FormatError, InstanceFile, LoadedInstance};
use floodlab_core::solver::SearchBudget;
use floodlab_core::{ColoredInstance, Solution};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::EXIT_INPUT;

/// A failure reported as `{"error": {"code", "message"}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub exit: u8,
    pub code: String,
    pub message: String,
}

impl CliError {
    pub fn input(code: &str, message: impl Into<String>) -> Self {
        CliError {
            exit: EXIT_INPUT,
            code: code.to_string(),
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code, "message": self.message}})
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::input(e.code(), e.to_string())
    }
}

/// Reads a file, or stdin for `None` and `-`.
pub fn read_source(path: Option<&Path>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read(p).map_err(|e| CliError::input("io", format!("{}: {e}", p.display())))
        }
        _ => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| CliError::input("io", format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

pub fn parse_json(bytes: &[u8]) -> Result<Value, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::input("malformed-json", e.to_string()))
}

/// Accepts a bare instance or any document carrying one under `"instance"`,
/// so the output of `gen`, `kernelize` and friends pipes straight back in.
pub fn instance_from_value(mut value: Value) -> Result<LoadedInstance, FormatError> {
    if let Some(inner) = value.get_mut("instance") {
        value = inner.take();
    }
    let file: InstanceFile =
        serde_json::from_value(value).map_err(|e| FormatError::InvalidShape(e.to_string()))?;
    from_file(file)
}

pub fn load_instance(path: Option<&Path>) -> Result<LoadedInstance, CliError> {
    let value = parse_json(&read_source(path)?)?;
    Ok(instance_from_value(value)?)
}

/// A solution document, or any document carrying one under `"solution"`.
pub fn load_solution(path: &Path) -> Result<Solution, CliError> {
    let mut value = parse_json(&read_source(Some(path))?)?;
    if let Some(inner) = value.get_mut("solution") {
        value = inner.take();
    }
    from_value(value, "invalid-solution")
}

pub fn from_value<T: DeserializeOwned>(value: Value, code: &str) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::input(code, e.to_string()))
}

pub fn instance_doc(instance: &ColoredInstance) -> Value {
    json!({
        "instance": to_file(instance),
        "fingerprint": instance.fingerprint(),
    })
}

/// `250ms`, `2s`, or a plain state count (`100000`, `100000states`).
pub fn parse_budget(text: &str) -> Result<SearchBudget, String> {
    let t = text.trim();
    let number = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| format!("cannot read budget {text:?}; use 250ms, 2s or a state count"))
    };
    if let Some(ms) = t.strip_suffix("ms") {
        Ok(SearchBudget::time(Duration::from_millis(number(ms)?)))
    } else if let Some(n) = t.strip_suffix("states") {
        Ok(SearchBudget::states(number(n)?))
    } else if let Some(s) = t.strip_suffix('s') {
        Ok(SearchBudget::time(Duration::from_secs(number(s)?)))
    } else {
        Ok(SearchBudget::states(number(t)?))
    }
}
