//! Figure tables and their CSV / JSON encodings.
//!
//! CSV layout: `#`-prefixed provenance lines, one column-name line, data
//! rows, then `#`-prefixed footer lines. Reals are written with 17
//! significant digits (`{:.16e}`), so parsing and re-emitting a file
//! reproduces it byte for byte.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::OutputFormat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(i64),
    Real(f64),
}

impl Cell {
    fn to_csv(self) -> String {
        match self {
            Cell::Bool(b) => b.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format!("{x:.16e}"),
        }
    }

    fn from_csv(s: &str) -> Result<Self> {
        match s {
            "true" => return Ok(Cell::Bool(true)),
            "false" => return Ok(Cell::Bool(false)),
            _ => {}
        }
        if let Ok(i) = s.parse::<i64>() {
            return Ok(Cell::Int(i));
        }
        s.parse::<f64>()
            .map(Cell::Real)
            .map_err(|_| Error::Config(format!("cannot parse table cell '{s}'")))
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Cell::Bool(b) => f64::from(u8::from(b)),
            Cell::Int(i) => i as f64,
            Cell::Real(x) => x,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureTable {
    #[serde(skip)]
    pub name: String,
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub footer: Vec<String>,
}

impl FigureTable {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            header: Vec::new(),
            columns: columns.iter().map(|c| (*c).to_string()).collect(),
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Internal(format!(
                "table {}: row has {} cells, expected {}",
                self.name,
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<Cell>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for h in &self.header {
            let _ = writeln!(s, "# {h}");
        }
        let _ = writeln!(s, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_csv()).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        for f in &self.footer {
            let _ = writeln!(s, "# {f}");
        }
        s
    }

    pub fn from_csv(name: &str, text: &str) -> Result<Self> {
        let mut table = FigureTable::new(name, &[]);
        let mut columns_seen = false;
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.strip_prefix(' ').unwrap_or(rest).to_string();
                if columns_seen {
                    table.footer.push(rest);
                } else {
                    table.header.push(rest);
                }
            } else if !columns_seen {
                table.columns = line.split(',').map(str::to_string).collect();
                columns_seen = true;
            } else {
                if !table.footer.is_empty() {
                    return Err(Error::Config(format!("table {name}: data row after footer")));
                }
                let row = line.split(',').map(Cell::from_csv).collect::<Result<Vec<_>>>()?;
                table.push(row).map_err(|e| Error::Config(e.message()))?;
            }
        }
        if !columns_seen {
            return Err(Error::Config(format!("table {name}: missing column line")));
        }
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn from_json(name: &str, text: &str) -> Result<Self> {
        let mut t: FigureTable = serde_json::from_str(text).map_err(|e| Error::Config(format!("table {name}: {e}")))?;
        t.name = name.to_string();
        if t.rows.iter().any(|r| r.len() != t.columns.len()) {
            return Err(Error::Config(format!("table {name}: ragged rows")));
        }
        Ok(t)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Writes `<dir>/<name>.<ext>` in one call and returns the path.
    pub fn write(&self, dir: &Path, format: OutputFormat) -> Result<PathBuf> {
        let path = dir.join(format!("{}.{}", self.name, format.extension()));
        write_file(&path, &self.render(format))?;
        Ok(path)
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}
