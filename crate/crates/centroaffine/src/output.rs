//! Reports as JSON (canonical) or CSV (the row table only, with the summary
//! as `#` comment lines).
//!
//! JSON numbers use the shortest representation that round-trips exactly;
//! CSV numbers are printed with 17 significant digits. Non-finite numbers
//! become `null` in JSON and `nan`/`inf`/`-inf` in CSV.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Flag(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
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

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Flag(b) => Value::from(*b),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Num(v) if v.is_nan() => "nan".into(),
            Cell::Num(v) if v.is_infinite() => if *v > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub summary: Vec<(&'static str, Cell)>,
    /// Extra JSON-only members, e.g. the emitted path or curve.
    pub attachments: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Set when the command succeeded but a tolerance was exceeded.
    pub warnings: Vec<String>,
    /// Names of failed checks.
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Report { command, summary: Vec::new(), attachments: Vec::new(), columns, rows: Vec::new(), warnings: Vec::new(), failures: Vec::new() }
    }

    pub fn summary(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command));
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
        top.insert("summary".into(), Value::Object(summary));
        top.insert("warnings".into(), Value::from(self.warnings.clone()));
        for (k, v) in &self.attachments {
            top.insert(k.to_string(), v.clone());
        }
        let rows = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.to_json())).collect()))
            .collect();
        top.insert("rows".into(), Value::Array(rows));
        Value::Object(top)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# command: {}", self.command).unwrap();
        for (k, v) in &self.summary {
            writeln!(out, "# {k}: {}", v.to_csv()).unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "# warning: {w}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::to_csv).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", vec!["t", "value", "label"]);
        r.summary("count", 2usize);
        r.row(vec![0.1.into(), 1.0f64.into(), "a".into()]);
        r.row(vec![0.2.into(), f64::NAN.into(), "b".into()]);
        r
    }

    #[test]
    fn json_shape() {
        let v = sample().to_json();
        assert_eq!(v["command"], "demo");
        assert_eq!(v["summary"]["count"], 2);
        assert_eq!(v["rows"][0]["t"], 0.1);
        assert!(v["rows"][1]["value"].is_null());
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "summary", "warnings", "rows"]);
    }

    #[test]
    fn csv_digits() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# command: demo");
        assert_eq!(lines[2], "t,value,label");
        assert_eq!(lines[3], "1.0000000000000001e-1,1.0000000000000000e0,a");
        assert_eq!(lines[4].split(',').nth(1), Some("nan"));
        let back: f64 = lines[3].split(',').next().unwrap().parse().unwrap();
        assert_eq!(back, 0.1);
    }
}
