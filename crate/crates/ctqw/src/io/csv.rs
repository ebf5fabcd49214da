use std::fmt::Write as _;
use std::path::Path;

use super::{format_real, read_text, round_real, write_text};
use crate::error::{CliError, Result};

/// A header row plus rows of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Table { header, rows: Vec::new() }
    }

    /// The same table with every value rounded as it would be written.
    pub fn rounded(&self) -> Table {
        Table {
            header: self.header.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(|&x| round_real(x)).collect()).collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (k, &x) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", format_real(x));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str, path: &Path) -> Result<Table> {
        let err = |line: usize, message: String| CliError::Parse { path: path.to_path_buf(), line, message };
        let mut lines = text.lines().enumerate();
        let header: Vec<String> = match lines.next() {
            Some((_, h)) if !h.is_empty() => h.split(',').map(str::to_string).collect(),
            _ => return Err(err(1, "missing header".into())),
        };
        let mut rows = Vec::new();
        for (k, line) in lines {
            let row = line
                .split(',')
                .map(|f| f.trim().parse::<f64>().map_err(|_| err(k + 1, format!("bad number {f:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != header.len() {
                return Err(err(k + 1, format!("{} fields, header has {}", row.len(), header.len())));
            }
            rows.push(row);
        }
        Ok(Table { header, rows })
    }
}

pub fn write_csv(path: &Path, table: &Table) -> Result<()> {
    write_text(path, &table.render())
}

pub fn read_csv(path: &Path) -> Result<Table> {
    Table::parse(&read_text(path)?, path)
}
