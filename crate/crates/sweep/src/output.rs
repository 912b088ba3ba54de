//! CSV serialization of sweep records.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::record::{ResultRecord, COLUMNS};

#[derive(Debug)]
pub struct OutputError {
    pub path: PathBuf,
    pub source: io::Error,
}

impl std::fmt::Display for OutputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cannot write {}: {}", self.path.display(), self.source)
    }
}

impl std::error::Error for OutputError {}

/// 17 significant digits; round-trips every f64 exactly.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn header() -> String {
    COLUMNS.join(",")
}

pub fn format_row(r: &ResultRecord) -> String {
    let mut line = String::new();
    for v in r.numeric_fields() {
        if let Some(v) = v {
            line.push_str(&format_float(v));
        }
        line.push(',');
    }
    line.push_str(&quote(&r.warnings.join("; ")));
    line
}

/// Header plus one LF-terminated line per record.
pub fn to_csv_string(records: &[ResultRecord]) -> String {
    let mut out = header();
    out.push('\n');
    for r in records {
        writeln!(out, "{}", format_row(r)).unwrap();
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<(), OutputError> {
    fs::write(path, text).map_err(|source| OutputError { path: path.to_path_buf(), source })
}

pub fn write_csv(records: &[ResultRecord], path: &Path) -> Result<(), OutputError> {
    write_text(path, &to_csv_string(records))
}
