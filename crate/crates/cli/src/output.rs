//! Rendering and writing of task results.
//!
//! CSV cells print floats with 17 significant digits (`{:.16e}`) and lines
//! end with LF, so identical runs produce byte-identical files. JSON output
//! goes through serde_json with sorted object keys, which is equally
//! deterministic.

use std::io::Write;
use std::path::Path;

use pointscatter_core::{Error, Result};
use serde_json::{json, Value};

/// Output encoding of a task's table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// # Errors
    ///
    /// [`Error::InvalidInput`] on anything but `"csv"` or `"json"`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidInput(format!(
                "unknown output format {other:?}, expected \"csv\" or \"json\""
            ))),
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

/// A homogeneous result table plus an optional partial-failure note.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
    /// Set when a numerical step failed mid-run; the rows hold everything
    /// that succeeded and the process exits with code 3.
    pub partial: Option<String>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new(), partial: None }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn flag_partial(&mut self, note: String) {
        if self.partial.is_none() {
            self.partial = Some(note);
        }
    }
}

/// 17-significant-digit float form used by every CSV cell. Negative zero
/// prints as zero.
pub fn fmt_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Float(v) => fmt_float(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Text(s) => {
            debug_assert!(!s.contains(',') && !s.contains('\n'));
            s.clone()
        }
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        // NaN has no JSON number form; unpaired comparison slots render null.
        Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
        Cell::Int(v) => json!(v),
        Cell::Text(s) => json!(s),
    }
}

/// Final result of a task: a table or a free-form JSON document.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Table(Table),
    /// Always rendered as JSON regardless of the requested format
    /// (conversion records are structured, not tabular).
    Json(Value),
}

/// A rendered output plus the process exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: Output,
    /// 0 success, 2 validation diagnostic, 3 partial numerical results.
    pub exit: u8,
}

impl Outcome {
    pub fn from_table(table: Table) -> Self {
        let exit = if table.partial.is_some() { 3 } else { 0 };
        Self { output: Output::Table(table), exit }
    }
}

/// Renders the output in the requested format, LF endings, trailing newline.
pub fn render(output: &Output, format: Format) -> String {
    match output {
        Output::Json(value) => {
            let mut text = serde_json::to_string_pretty(value).expect("value has no non-string keys");
            text.push('\n');
            text
        }
        Output::Table(table) => match format {
            Format::Csv => {
                let mut text = String::new();
                text.push_str(&table.columns.join(","));
                text.push('\n');
                for row in &table.rows {
                    let cells: Vec<String> = row.iter().map(csv_cell).collect();
                    text.push_str(&cells.join(","));
                    text.push('\n');
                }
                if let Some(note) = &table.partial {
                    text.push_str(&format!("# partial: {note}\n"));
                }
                text
            }
            Format::Json => {
                let rows: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|row| Value::Array(row.iter().map(json_cell).collect()))
                    .collect();
                let status = match &table.partial {
                    None => json!("complete"),
                    Some(note) => json!({ "partial": note }),
                };
                let doc = json!({
                    "columns": table.columns,
                    "rows": rows,
                    "status": status,
                });
                let mut text = serde_json::to_string_pretty(&doc).expect("plain value");
                text.push('\n');
                text
            }
        },
    }
}

/// Writes to the path, or to stdout when no path is given.
///
/// # Errors
///
/// [`Error::InvalidInput`] wrapping the underlying IO failure.
pub fn write_rendered(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Error::InvalidInput(format!("cannot write stdout: {e}")))
        }
    }
}
