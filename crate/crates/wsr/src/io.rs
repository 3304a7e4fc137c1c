//! Archive ingestion.
//!
//! Univariate archives are CSV with header `y,x1,...,xm` and one forecast
//! case per row (constant m). Multivariate archives are newline-delimited
//! JSON records `{"y": [..d..], "dat": [[..m..]; d]}` where row i of `dat`
//! holds dimension i across members; m may vary across records.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::forecast::{
    EnsembleForecast, MultivariateCase, MultivariateEnsemble, UnivariateCase,
};

fn parse_field(token: &str, line: usize) -> Result<f64> {
    token.trim().parse::<f64>().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse '{}' as a number", token.trim()),
    })
}

/// Reads a univariate archive from CSV. Row order is preserved.
pub fn ingest_univariate<R: BufRead>(reader: R) -> Result<Vec<UnivariateCase>> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => return Err(Error::EmptyArchive),
    };
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    if columns.first().map(|c| *c) != Some("y") {
        return Err(Error::Parse {
            line: 1,
            msg: "header must start with column 'y'".into(),
        });
    }
    let member_count = columns.len() - 1;
    if member_count == 0 {
        return Err(Error::Parse {
            line: 1,
            msg: "header must name at least one member column after 'y'".into(),
        });
    }

    let mut cases = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != member_count + 1 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!(
                    "expected {} fields, got {} (ragged row)",
                    member_count + 1,
                    fields.len()
                ),
            });
        }
        let observation = parse_field(fields[0], line_no)?;
        let members = fields[1..]
            .iter()
            .map(|f| parse_field(f, line_no))
            .collect::<Result<Vec<f64>>>()?;
        cases.push(UnivariateCase {
            observation,
            forecast: EnsembleForecast::new(members)?,
        });
    }
    if cases.is_empty() {
        return Err(Error::EmptyArchive);
    }
    Ok(cases)
}

pub fn ingest_univariate_path<P: AsRef<Path>>(path: P) -> Result<Vec<UnivariateCase>> {
    ingest_univariate(BufReader::new(File::open(path)?))
}

#[derive(Deserialize)]
struct RawMultivariateRecord {
    y: Vec<f64>,
    dat: Vec<Vec<f64>>,
}

/// Reads a multivariate archive from newline-delimited JSON records.
pub fn ingest_multivariate<R: BufRead>(reader: R) -> Result<Vec<MultivariateCase>> {
    let mut cases = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RawMultivariateRecord =
            serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
        if record.y.len() != record.dat.len() {
            return Err(Error::DimensionMismatch {
                expected: record.y.len(),
                actual: record.dat.len(),
            });
        }
        if record.y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput("observation"));
        }
        cases.push(MultivariateCase {
            observation: record.y,
            forecast: MultivariateEnsemble::from_dimension_rows(&record.dat)?,
        });
    }
    if cases.is_empty() {
        return Err(Error::EmptyArchive);
    }
    Ok(cases)
}

pub fn ingest_multivariate_path<P: AsRef<Path>>(path: P) -> Result<Vec<MultivariateCase>> {
    ingest_multivariate(BufReader::new(File::open(path)?))
}

/// Reads member weights: headerless CSV, one row of m weights per case, or
/// a single row applied to every case.
pub fn read_weight_rows<R: BufRead>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|f| parse_field(f, line_no))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyArchive);
    }
    Ok(rows)
}

pub fn read_weight_rows_path<P: AsRef<Path>>(path: P) -> Result<Vec<Vec<f64>>> {
    read_weight_rows(BufReader::new(File::open(path)?))
}

/// Reads a square scaling matrix from headerless CSV (d rows of d entries).
pub fn read_matrix<R: BufRead>(reader: R) -> Result<Vec<Vec<f64>>> {
    let rows = read_weight_rows(reader)?;
    let d = rows.len();
    for row in &rows {
        if row.len() != d {
            return Err(Error::BadVsWeights(format!(
                "matrix must be square: {} rows but a row has {} entries",
                d,
                row.len()
            )));
        }
    }
    Ok(rows)
}

pub fn read_matrix_path<P: AsRef<Path>>(path: P) -> Result<Vec<Vec<f64>>> {
    read_matrix(BufReader::new(File::open(path)?))
}
