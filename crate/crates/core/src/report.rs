//! Tabular study output with CSV and JSON emission.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            Cell::Text(_) => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// A named pass/fail assertion recorded alongside the data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Rows of parameter values, errors and rates from a sweep or study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyReport {
    pub title: String,
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct JsonColumn<'a> {
    name: &'a str,
    values: Vec<&'a Cell>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    title: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated: Option<&'a str>,
    config: serde_json::Map<String, serde_json::Value>,
    columns: Vec<JsonColumn<'a>>,
    checks: &'a [Check],
}

impl StudyReport {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            metadata: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    /// Appends a row; every numeric cell must be finite.
    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::ShapeMismatch(format!(
                "row has {} cells but the report has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        if let Some((i, c)) = row.iter().enumerate().find(|(_, c)| matches!(c, Cell::Num(v) if !v.is_finite())) {
            return Err(Error::Evaluation(format!("non-finite value {c:?} in column {}", self.columns[i])));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Numeric values of a column; text cells are skipped.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().filter_map(|r| r[i].as_f64()).collect())
    }

    /// Comment lines (title, resolved config, checks, optional timestamp),
    /// a header row and one line per row.
    pub fn to_csv(&self, generated: Option<&str>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.title);
        let config: Vec<String> = self.metadata.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "# config: {}", config.join(" "));
        for c in &self.checks {
            let _ = writeln!(out, "# check {}: {} ({})", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail);
        }
        if let Some(ts) = generated {
            let _ = writeln!(out, "# generated: {ts}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// JSON object with the config as a map and each column as an array.
    pub fn to_json(&self, generated: Option<&str>) -> String {
        let config = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, name)| JsonColumn { name, values: self.rows.iter().map(|r| &r[i]).collect() })
            .collect();
        let report = JsonReport { title: &self.title, generated, config, columns, checks: &self.checks };
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    }
}
