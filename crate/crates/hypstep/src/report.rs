//! Tabular reports and their CSV / JSON encodings.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::cli::{Format, Settings};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl Cell {
    /// 17 significant digits in scientific notation.
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Float(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Float(x) => x.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Float(x) => Some(x),
            Cell::Int(n) => Some(n as f64),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Scalar results that do not fit the table.
    pub summary: Vec<(&'static str, Cell)>,
    /// Names of failed invariants; empty on success.
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Report { columns: columns.to_vec(), rows: Vec::new(), summary: Vec::new(), failures: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn fail(&mut self, invariant: impl Into<String>) {
        self.failures.push(invariant.into());
    }

    pub fn check(&mut self, ok: bool, invariant: impl Into<String>) {
        if !ok {
            self.fail(invariant);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn column(&self, name: &str) -> Vec<&Cell> {
        let i = self.columns.iter().position(|c| *c == name).expect("unknown column");
        self.rows.iter().map(|r| &r[i]).collect()
    }

    pub fn summary_value(&self, name: &str) -> Option<&Cell> {
        self.summary.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    pub fn render(&self, settings: &Settings, format: Format, wall_time: Option<f64>) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(settings, wall_time),
        }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))?;
        }
        w.into_inner().map_err(|e| CliError::Encode(e.to_string()))
    }

    pub fn to_json(&self, settings: &Settings, wall_time: Option<f64>) -> Result<Vec<u8>, CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.to_json())).collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
        let metadata = Metadata {
            command: settings.command.name(),
            config: settings,
            versions: Versions { hypstep: env!("CARGO_PKG_VERSION"), hypstep_core: hypstep_core::VERSION },
            wall_time_seconds: wall_time,
        };
        let doc = json!({
            "metadata": metadata,
            "columns": self.columns,
            "rows": rows,
            "summary": summary,
            "status": if self.passed() { "pass" } else { "fail" },
            "failures": self.failures,
        });
        let mut out = serde_json::to_vec_pretty(&doc)?;
        out.write_all(b"\n")?;
        Ok(out)
    }
}

#[derive(Serialize)]
struct Versions {
    hypstep: &'static str,
    #[serde(rename = "hypstep-core")]
    hypstep_core: &'static str,
}

#[derive(Serialize)]
struct Metadata<'a> {
    command: &'static str,
    config: &'a Settings,
    versions: Versions,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_seconds: Option<f64>,
}
