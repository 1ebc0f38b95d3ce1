use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use polyflow::geometry::Surface;
use polyflow::io::read_surface;

use super::CliError;

pub fn load(path: &Path) -> Result<Surface, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    read_surface(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &PathBuf, content: &str) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// A JSON document tagged with the schema version.
pub fn json(body: impl Serialize) -> Result<String, CliError> {
    let mut obj = Map::new();
    obj.insert("schema".into(), Value::from(1));
    match serde_json::to_value(body).map_err(|e| CliError::Validation(e.to_string()))? {
        Value::Object(m) => obj.extend(m),
        other => {
            obj.insert("data".into(), other);
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).map_err(|e| CliError::Validation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// CSV with a header row.
pub fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Validation(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Validation(e.to_string()))
}

pub fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}
