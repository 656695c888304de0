//! Tabular output as CSV or JSON.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // 12 significant digits
            Cell::Num(v) => format!("{v:.11e}"),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::Number((*v).into()),
            Cell::Num(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// A named table with a fixed column schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let record: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect();
                    Value::Object(record)
                })
                .collect(),
        )
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("valid json");
                s.push('\n');
                s
            }
        }
    }
}

/// Write `tables` to standard output, to the file `out`, or, when there is
/// more than one table, to `<out>/<name>.<ext>`.
pub fn emit(tables: &[Table], format: Format, out: Option<&Path>) -> io::Result<()> {
    match out {
        None => {
            let mut stdout = io::stdout().lock();
            match (format, tables) {
                (Format::Json, [single]) => stdout.write_all(single.render(format).as_bytes())?,
                (Format::Json, many) => {
                    let object: Map<String, Value> = many
                        .iter()
                        .map(|t| (t.name.clone(), t.to_json_value()))
                        .collect();
                    let mut s = serde_json::to_string_pretty(&Value::Object(object)).expect("valid json");
                    s.push('\n');
                    stdout.write_all(s.as_bytes())?;
                }
                (Format::Csv, many) => {
                    for (i, t) in many.iter().enumerate() {
                        if i > 0 {
                            stdout.write_all(b"\n")?;
                        }
                        stdout.write_all(t.to_csv().as_bytes())?;
                    }
                }
            }
            stdout.flush()
        }
        Some(path) if tables.len() == 1 && !path.is_dir() => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, tables[0].render(format))
        }
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for t in tables {
                let file = dir.join(format!("{}.{}", t.name, format.extension()));
                fs::write(file, t.render(format))?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("coefficients", &["k", "l", "c"]);
        t.push(vec![0.into(), 0.into(), 0.821078904.into()]);
        t.push(vec![(-1).into(), 1.into(), Cell::Empty]);
        t
    }

    #[test]
    fn csv_has_header_and_precision() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,l,c");
        assert_eq!(lines[1], "0,0,8.21078904000e-1");
        assert_eq!(lines[2], "-1,1,");
    }

    #[test]
    fn json_records_are_labeled() {
        let v = sample().to_json_value();
        assert_eq!(v[0]["c"], serde_json::json!(0.821078904));
        assert_eq!(v[1]["c"], Value::Null);
        assert_eq!(v[1]["k"], serde_json::json!(-1));
    }

    #[test]
    fn text_cells_are_quoted_when_needed() {
        assert_eq!(Cell::from("a,b").csv(), "\"a,b\"");
        assert_eq!(Cell::from("plain").csv(), "plain");
    }
}
