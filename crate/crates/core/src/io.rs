//! CSV reading and writing.
//!
//! Comma-separated, `.` decimal point. A first row containing any
//! non-numeric field is taken as a header. With a header, columns that are
//! non-numeric in every data row (class labels) are dropped.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::error::{Error, Result};
use crate::matrix::{DistanceMatrix, Matrix};
use crate::tsfp::TimeSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    /// Header of the retained numeric columns, when the file had one.
    pub header: Option<Vec<String>>,
    pub matrix: Matrix,
}

struct Records {
    header: Option<StringRecord>,
    // (1-based line, record)
    rows: Vec<(usize, StringRecord)>,
}

fn is_number(field: &str) -> bool {
    field.parse::<f64>().is_ok()
}

fn read_records<R: Read>(reader: R) -> Result<Records> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let line = rec.position().map_or(rows.len() + 1, |p| p.line() as usize);
        rows.push((line, rec));
    }
    let header = match rows.first() {
        Some((_, first)) if first.iter().any(|f| !is_number(f)) => Some(rows.remove(0).1),
        _ => None,
    };
    Ok(Records { header, rows })
}

fn parse_cell(line: usize, column: usize, field: &str) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::Parse {
        row: line,
        column: column + 1,
        message: format!("'{field}' is not a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            row: line,
            column: column + 1,
            message: format!("'{field}' is not finite"),
        });
    }
    Ok(v)
}

pub fn parse_matrix_csv<R: Read>(reader: R) -> Result<CsvTable> {
    let Records { header, rows } = read_records(reader)?;
    let width = header
        .as_ref()
        .map(StringRecord::len)
        .or_else(|| rows.first().map(|(_, r)| r.len()))
        .unwrap_or(0);
    for (line, r) in &rows {
        if r.len() != width {
            return Err(Error::Parse {
                row: *line,
                column: r.len().min(width) + 1,
                message: format!("expected {width} fields, found {}", r.len()),
            });
        }
    }
    let keep: Vec<usize> = (0..width)
        .filter(|&j| {
            header.is_none() || rows.is_empty() || rows.iter().any(|(_, r)| is_number(&r[j]))
        })
        .collect();
    let mut data = Vec::with_capacity(rows.len() * keep.len());
    for (line, r) in &rows {
        for &j in &keep {
            data.push(parse_cell(*line, j, &r[j])?);
        }
    }
    Ok(CsvTable {
        header: header.map(|h| keep.iter().map(|&j| h[j].to_string()).collect()),
        matrix: Matrix::new(rows.len(), keep.len(), data)?,
    })
}

pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<CsvTable> {
    parse_matrix_csv(File::open(path)?)
}

/// Full square or lower triangle (row `i` holding `i + 1` entries), with an
/// optional leading row holding just `n`.
pub fn parse_distance_csv<R: Read>(reader: R) -> Result<DistanceMatrix> {
    let Records { rows, .. } = read_records(reader)?;
    let mut values: Vec<(usize, Vec<f64>)> = rows
        .iter()
        .map(|(line, r)| {
            r.iter()
                .enumerate()
                .map(|(j, f)| parse_cell(*line, j, f))
                .collect::<Result<Vec<_>>>()
                .map(|v| (*line, v))
        })
        .collect::<Result<_>>()?;
    if let Some((_, first)) = values.first() {
        let declared = first[0];
        if first.len() == 1
            && declared != 0.0
            && declared.fract() == 0.0
            && declared as usize == values.len() - 1
        {
            values.remove(0);
        }
    }
    let n = values.len();
    if values.iter().all(|(_, r)| r.len() == n) {
        let flat = values.into_iter().flat_map(|(_, r)| r).collect();
        return DistanceMatrix::new(n, flat);
    }
    for (i, (line, r)) in values.iter().enumerate() {
        if r.len() != i + 1 {
            return Err(Error::Parse {
                row: *line,
                column: r.len().min(i + 1) + 1,
                message: format!(
                    "distance rows must be a full {n} x {n} square or a lower triangle; row has {} fields",
                    r.len()
                ),
            });
        }
    }
    let rows: Vec<Vec<f64>> = values.into_iter().map(|(_, r)| r).collect();
    DistanceMatrix::from_lower_triangle(&rows)
}

pub fn read_distance_csv(path: impl AsRef<Path>) -> Result<DistanceMatrix> {
    parse_distance_csv(File::open(path)?)
}

/// First column of a CSV, or one value per line.
pub fn parse_series<R: Read>(reader: R) -> Result<TimeSeries> {
    let Records { rows, .. } = read_records(reader)?;
    let samples = rows
        .iter()
        .map(|(line, r)| parse_cell(*line, 0, &r[0]))
        .collect::<Result<Vec<_>>>()?;
    TimeSeries::new(samples)
}

pub fn read_series(path: impl AsRef<Path>) -> Result<TimeSeries> {
    parse_series(File::open(path)?)
}

pub fn write_matrix_csv<W: Write>(writer: W, header: Option<&[String]>, matrix: &Matrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for row in matrix.row_iter() {
        w.write_record(row.iter().map(f64::to_string))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_distance_csv<W: Write>(writer: W, dist: &DistanceMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for i in 0..dist.n() {
        w.write_record(dist.row(i).iter().map(f64::to_string))?;
    }
    w.flush()?;
    Ok(())
}
