//! Tabular output in CSV or JSON.
//!
//! Every file starts with the schema tag and the config echo. Reals are
//! written with 17 significant digits so that they round-trip exactly.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::{CliError, Result};

/// Schema tag on the first line of every file.
pub const SCHEMA: &str = "dsw-edge schema v1";

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Real number.
    Real(f64),
    /// Integer.
    Int(i64),
    /// Text.
    Text(String),
    /// Missing value.
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Real(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Real(v) => format!("{v}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Real(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(if v { "pass" } else { "fail" }.into())
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
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

/// Column names plus rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Column names.
    pub columns: Vec<&'static str>,
    /// Rows, each as long as `columns`.
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Empty table.
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    /// Appends a row.
    ///
    /// # Panics
    /// When the row length differs from the column count.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row length");
        self.rows.push(row);
    }

    /// Serializes to CSV text.
    ///
    /// # Errors
    /// CSV encoding failures.
    pub fn to_csv(&self, echo: &str) -> Result<String> {
        let mut out = format!("# {SCHEMA}\n# config: {echo}\n").into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&self.columns)?;
            for row in &self.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            w.flush()?;
        }
        String::from_utf8(out).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Serializes to a JSON document with one record per row.
    ///
    /// # Errors
    /// JSON encoding failures.
    pub fn to_json(&self, echo: &str) -> Result<String> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(row.iter().map(Cell::json)).collect::<Map<_, _>>()))
            .collect();
        let config: Value = serde_json::from_str(echo).unwrap_or(Value::Null);
        let doc = json!({ "schema": SCHEMA, "config": config, "columns": self.columns, "records": records });
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    /// Writes `dir/stem.{csv,json}` and returns the path.
    ///
    /// # Errors
    /// IO and encoding failures.
    pub fn write(&self, dir: &Path, stem: &str, format: Format, echo: &str) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(format!("{stem}.{}", format.extension()));
        let text = match format {
            Format::Csv => self.to_csv(echo)?,
            Format::Json => self.to_json(echo)?,
        };
        let mut f = BufWriter::new(File::create(&path)?);
        f.write_all(text.as_bytes())?;
        f.flush()?;
        Ok(path)
    }
}

/// Reads the named real columns from a file written by [`Table::write`].
///
/// # Errors
/// [`CliError::Config`] for a missing file or column; decoding failures.
pub fn read_columns(path: &Path, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    if !path.is_file() {
        return Err(CliError::Config(format!("missing input file {}", path.display())));
    }
    let missing = |c: &str| CliError::Config(format!("{}: no column {c}", path.display()));
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => {
            let doc: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
            let records = doc["records"].as_array().ok_or_else(|| missing("records"))?;
            names
                .iter()
                .map(|&c| records.iter().map(|r| r[c].as_f64().ok_or_else(|| missing(c))).collect())
                .collect()
        }
        _ => {
            let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?;
            let header = rd.headers()?.clone();
            let idx: Vec<usize> = names
                .iter()
                .map(|&c| header.iter().position(|h| h == c).ok_or_else(|| missing(c)))
                .collect::<Result<_>>()?;
            let mut cols = vec![Vec::new(); names.len()];
            for rec in rd.records() {
                let rec = rec?;
                for (col, &j) in cols.iter_mut().zip(&idx) {
                    let v = rec.get(j).unwrap_or("");
                    col.push(v.parse::<f64>().map_err(|_| CliError::Config(format!("{}: bad number {v:?}", path.display())))?);
                }
            }
            Ok(cols)
        }
    }
}

/// File-name fragment for a time value.
pub fn time_tag(t: f64) -> String {
    format!("t{t}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["x", "n", "label"]);
        t.push(vec![0.1.into(), 3u32.into(), "a".into()]);
        t.push(vec![(1.0 / 3.0).into(), Cell::Empty, true.into()]);
        t
    }

    #[test]
    fn csv_layout() {
        let s = sample().to_csv("{}").unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "# dsw-edge schema v1");
        assert_eq!(lines[1], "# config: {}");
        assert_eq!(lines[2], "x,n,label");
        assert_eq!(lines[3], "1.0000000000000001e-1,3,a");
        assert_eq!(lines[4].split(',').next().unwrap().parse::<f64>().unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn json_records() {
        let v: Value = serde_json::from_str(&sample().to_json("{\"A\":1.0}").unwrap()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["config"]["A"], 1.0);
        assert_eq!(v["records"][1]["label"], "pass");
        assert!(v["records"][1]["n"].is_null());
    }

    #[test]
    fn read_back() {
        let dir = tempfile::tempdir().unwrap();
        for f in [Format::Csv, Format::Json] {
            let p = sample().write(dir.path(), "s", f, "{}").unwrap();
            let cols = read_columns(&p, &["x"]).unwrap();
            assert_eq!(cols[0], vec![0.1, 1.0 / 3.0]);
            assert!(read_columns(&p, &["nope"]).is_err());
        }
        assert!(matches!(read_columns(&dir.path().join("none.csv"), &["x"]), Err(CliError::Config(_))));
    }
}
