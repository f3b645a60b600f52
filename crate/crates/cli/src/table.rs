//! CSV tables with a fixed header and optional column selection.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

/// One output cell. Numbers are written with 17 significant digits.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Keeps the named columns in the given order; unknown names are a usage error.
    pub fn select(self, columns: &[String]) -> Result<Self, String> {
        if columns.is_empty() {
            return Ok(self);
        }
        let idx: Vec<usize> = columns
            .iter()
            .map(|c| {
                self.header
                    .iter()
                    .position(|h| h == c)
                    .ok_or_else(|| format!("unknown column {c:?}; available: {}", self.header.join(",")))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            header: idx.iter().map(|&i| self.header[i]).collect(),
            rows: self.rows.into_iter().map(|r| idx.iter().map(|&i| r[i].clone()).collect()).collect(),
        })
    }

    pub fn write_to(&self, out: impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()
    }

    /// Writes to `path`, or to standard output when `path` is `None` or `-`.
    pub fn emit(&self, path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(p) if p.as_os_str() != "-" => self.write_to(File::create(p)?),
            _ => self.write_to(io::stdout().lock()),
        }
    }
}
