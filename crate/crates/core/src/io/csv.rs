//! Diagnostics CSV: header row of column names, one row per record, floats
//! with 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::diagnostics::{DiagnosticsRecord, COLUMNS};
use crate::error::{Error, Result};

pub fn csv_header() -> String {
    COLUMNS.join(",")
}

/// Formats a float so that parsing it back is exact.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_row(record: &DiagnosticsRecord) -> String {
    let mut line = record.step.to_string();
    for v in record.values() {
        let _ = write!(line, ",{}", format_f64(v));
    }
    line
}

pub fn parse_diagnostics_csv(text: &str, path: &Path) -> Result<Vec<DiagnosticsRecord>> {
    let fail = |msg: String| Error::Format {
        path: path.to_path_buf(),
        msg,
    };
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == csv_header() => {}
        Some(h) => return Err(fail(format!("unexpected header '{h}'"))),
        None => return Err(fail("empty file".to_string())),
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != COLUMNS.len() {
            return Err(fail(format!("row {} has {} cells", i + 1, cells.len())));
        }
        let step = cells[0]
            .parse::<u64>()
            .map_err(|e| fail(format!("row {}: step: {e}", i + 1)))?;
        let mut values = [0.0; 25];
        for (slot, (cell, name)) in values.iter_mut().zip(cells[1..].iter().zip(&COLUMNS[1..])) {
            *slot = cell
                .parse::<f64>()
                .map_err(|e| fail(format!("row {}: {name}: {e}", i + 1)))?;
        }
        out.push(DiagnosticsRecord::from_values(step, &values));
    }
    Ok(out)
}

pub fn read_diagnostics_csv(path: &Path) -> Result<Vec<DiagnosticsRecord>> {
    parse_diagnostics_csv(&fs::read_to_string(path)?, path)
}
