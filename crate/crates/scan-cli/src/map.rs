use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::ScanError;

/// A rectangular grid of event counts, row-major, indexed as (x, y) with
/// x the column and y the row. Counts are exact unsigned integers; the
/// Poisson statistics downstream depend on never rounding them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMap {
    width: usize,
    height: usize,
    cells: Vec<u64>,
}

impl CountMap {
    pub fn new(width: usize, height: usize, cells: Vec<u64>) -> Self {
        assert!(width > 0 && height > 0, "map must be non-empty");
        assert_eq!(cells.len(), width * height, "cell count must match dims");
        CountMap {
            width,
            height,
            cells,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> u64 {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        self.cells[y * self.width + x]
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().sum()
    }

    /// Serializes as the same CSV dialect `parse_map` reads: one row per
    /// line, comma-separated counts, LF line endings, no header. Load of
    /// the output reproduces the map exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() * 2);
        for row in self.cells.chunks(self.width) {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{c}");
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<(), ScanError> {
        fs::write(path, self.to_csv())?;
        Ok(())
    }
}

pub fn load_map(path: &Path) -> Result<CountMap, ScanError> {
    let text = fs::read_to_string(path)?;
    parse_map(&text)
}

/// Parses a headerless CSV of unsigned integer counts. Accepts LF or CRLF
/// line endings and spaces around values; rejects anything that is not an
/// unsigned integer (negative, fractional, non-numeric) and rows whose
/// length disagrees with the first row, reporting 1-based row/col.
pub fn parse_map(text: &str) -> Result<CountMap, ScanError> {
    let mut width = 0usize;
    let mut cells: Vec<u64> = Vec::new();
    let mut rows = 0usize;

    for (row_idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let row = row_idx + 1;
        let mut cols = 0usize;
        for (col_idx, field) in line.split(',').enumerate() {
            let col = col_idx + 1;
            cells.push(parse_count(field.trim(), row, col)?);
            cols += 1;
        }
        if rows == 0 {
            width = cols;
        } else if cols != width {
            return Err(ScanError::Parse {
                row,
                col: cols.min(width) + 1,
                reason: format!("row has {cols} values, expected {width}"),
            });
        }
        rows += 1;
    }

    if rows == 0 {
        return Err(ScanError::Parse {
            row: 1,
            col: 1,
            reason: "empty map".into(),
        });
    }
    Ok(CountMap::new(width, rows, cells))
}

fn parse_count(field: &str, row: usize, col: usize) -> Result<u64, ScanError> {
    match field.parse::<u64>() {
        Ok(v) => Ok(v),
        Err(_) => {
            // Classify the rejection so the message names the actual
            // problem, not just "bad token".
            let reason = if field.is_empty() {
                "empty value".to_string()
            } else if field.starts_with('-') && field[1..].parse::<f64>().is_ok() {
                format!("negative count '{field}'")
            } else if field.parse::<f64>().is_ok() {
                if field.contains('.') || field.contains(['e', 'E']) {
                    format!("fractional count '{field}'")
                } else {
                    format!("count '{field}' out of range")
                }
            } else {
                format!("not an unsigned integer: '{field}'")
            };
            Err(ScanError::Parse { row, col, reason })
        }
    }
}
