use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::args::Format;
use crate::CliError;

/// One emitted data file: named numeric columns.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn from_sweep(name: &str, sweep: &ird_core::analysis::SweepResult) -> Self {
        let mut t = Table {
            name: name.into(),
            columns: std::iter::once(sweep.axis_name.clone())
                .chain(sweep.columns.iter().map(|c| c.0.clone()))
                .collect(),
            rows: Vec::new(),
        };
        for (i, &x) in sweep.axis.iter().enumerate() {
            t.rows.push(std::iter::once(x).chain(sweep.columns.iter().map(|c| c.1[i])).collect());
        }
        t
    }

    fn check_finite(&self) -> Result<(), CliError> {
        for row in &self.rows {
            for (c, v) in self.columns.iter().zip(row) {
                if !v.is_finite() {
                    return Err(CliError::Validation(format!("non-finite value in {} column {c}", self.name)));
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    header: &'a str,
    columns: &'a [String],
    rows: &'a [Vec<f64>],
}

pub struct Writer {
    pub dir: PathBuf,
    pub format: Format,
    pub header: String,
}

impl Writer {
    /// Check every table first so a failing run leaves no partial output.
    pub fn write_all(&self, tables: &[Table]) -> Result<Vec<PathBuf>, CliError> {
        for t in tables {
            t.check_finite()?;
        }
        fs::create_dir_all(&self.dir).map_err(|e| io_err(&self.dir, e))?;
        tables.iter().map(|t| self.write(t)).collect()
    }

    fn write(&self, t: &Table) -> Result<PathBuf, CliError> {
        let (ext, body) = match self.format {
            Format::Csv => {
                let mut s = format!("# {}\n{}\n", self.header, t.columns.join(","));
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                ("csv", s)
            }
            Format::Json => {
                let j = JsonTable { header: &self.header, columns: &t.columns, rows: &t.rows };
                let mut s = serde_json::to_string_pretty(&j).map_err(|e| CliError::Io(e.to_string()))?;
                s.push('\n');
                ("json", s)
            }
        };
        let path = self.dir.join(format!("{}.{ext}", t.name));
        let mut f = fs::File::create(&path).map_err(|e| io_err(&path, e))?;
        f.write_all(body.as_bytes()).map_err(|e| io_err(&path, e))?;
        Ok(path)
    }
}

fn io_err(p: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", p.display()))
}

/// Flatten the parsed configuration into sorted `key=value` pairs.
pub fn config_echo<T: Serialize, U: Serialize>(common: &T, command: &U) -> String {
    let mut pairs = Vec::new();
    for v in [serde_json::to_value(common), serde_json::to_value(command)].into_iter().flatten() {
        if let serde_json::Value::Object(map) = v {
            for (k, v) in map {
                let text = match v {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Null => continue,
                    other => other.to_string(),
                };
                pairs.push(format!("{k}={text}"));
            }
        }
    }
    pairs.sort();
    pairs.join(" ")
}
