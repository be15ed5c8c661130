use std::fmt::Write as _;

use infoflow::io::{fmt_f64, END_MARKER};
use serde_json::{Map, Value};

use crate::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_finite() => fmt_f64(*x),
            Cell::Float(x) => non_finite(*x).to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) if x.is_finite() => Value::from(*x),
            Cell::Float(x) => Value::from(non_finite(*x)),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Parameter echo, summary values and one table.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: &'static str,
    pub params: Vec<(String, Cell)>,
    pub summary: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Self {
            command,
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Cell>) {
        self.params.push((key.to_string(), value.into()));
    }

    pub fn note(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# infoflow {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# command={}", self.command);
        for (k, v) in &self.params {
            let _ = writeln!(out, "# {k}={}", v.csv());
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "# summary.{k}={}", v.csv());
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        let _ = writeln!(out, "{END_MARKER}");
        out
    }

    fn json(&self) -> String {
        let object = |pairs: &[(String, Cell)]| {
            Value::Object(pairs.iter().map(|(k, v)| (k.clone(), v.json())).collect::<Map<_, _>>())
        };
        let mut root = Map::new();
        root.insert("infoflow_version".into(), env!("CARGO_PKG_VERSION").into());
        root.insert("command".into(), self.command.into());
        root.insert("parameters".into(), object(&self.params));
        root.insert("summary".into(), object(&self.summary));
        root.insert("columns".into(), self.columns.clone().into());
        root.insert(
            "rows".into(),
            Value::Array(
                self.rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect(),
            ),
        );
        root.insert("end_of_report".into(), true.into());
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("json values are finite");
        s.push('\n');
        s
    }
}
