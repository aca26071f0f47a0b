//! CSV formats: two-column sampled functions, Green's function grids and
//! operator matrices.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use kprabhakar::green::GreenGrid;
use kprabhakar::linalg::Matrix;
use kprabhakar::GridFunction;

use crate::error::CliError;
use crate::json::fmt_f64;

fn parse_err(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_path_buf(), message: message.into() }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

/// Reads `node,value` rows. A first row that does not parse as numbers is
/// treated as a header.
pub fn read_grid_function(path: &Path) -> Result<GridFunction, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(file);
    let mut nodes = Vec::new();
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_err(path, e.to_string()))?;
        if record.len() != 2 {
            return Err(parse_err(path, format!("row {}: expected 2 columns, found {}", i + 1, record.len())));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(x), Ok(y)) => {
                nodes.push(x);
                values.push(y);
            }
            _ if i == 0 => continue,
            _ => return Err(parse_err(path, format!("row {}: not a pair of numbers", i + 1))),
        }
    }
    Ok(GridFunction::new(nodes, values)?)
}

/// Writes `t,s,G` rows, `t` outermost.
pub fn write_green_grid(path: &Path, grid: &GreenGrid) -> Result<(), CliError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    let csv_err = |e: csv::Error| parse_err(path, e.to_string());
    w.write_record(["t", "s", "G"]).map_err(csv_err)?;
    for (i, &t) in grid.points.iter().enumerate() {
        for (j, &s) in grid.points.iter().enumerate() {
            w.write_record([fmt_f64(t), fmt_f64(s), fmt_f64(grid.at(i, j))]).map_err(csv_err)?;
        }
    }
    w.flush().map_err(io_err(path))
}

/// Writes the matrix row-major, one CSV row per matrix row, no header.
pub fn write_matrix(path: &Path, m: &Matrix) -> Result<(), CliError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(|&v| fmt_f64(v)).collect();
        writeln!(out, "{}", row.join(",")).map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}
