//! CSV formats.
//!
//! Datasets are comma-separated decimal floats, one pattern per line, with
//! an optional header row (detected as a first row that is not entirely
//! numeric). Orderings are `index,slot` pairs, one row per pattern.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::data::Dataset;
use crate::error::{Result, UnnError};
use crate::latent::LatentOrdering;

pub const ORDERING_HEADER: &str = "index,slot";

fn csv_error(err: csv::Error) -> UnnError {
    let row = err.position().map_or(0, |p| p.line() as usize);
    UnnError::Parse {
        row,
        column: 0,
        message: err.to_string(),
    }
}

/// Non-empty records with their 1-based line numbers.
fn records<R: Read>(reader: R) -> Result<Vec<(usize, StringRecord)>> {
    let mut rdr = ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let line = rec.position().map_or(out.len() + 1, |p| p.line() as usize);
        out.push((line, rec));
    }
    Ok(out)
}

/// Drops a leading header row if any of its cells fails to parse as `T`.
fn strip_header<T: std::str::FromStr>(
    mut recs: Vec<(usize, StringRecord)>,
) -> (Option<StringRecord>, Vec<(usize, StringRecord)>) {
    let is_header = recs
        .first()
        .is_some_and(|(_, r)| r.iter().any(|cell| cell.parse::<T>().is_err()));
    if is_header {
        let (_, header) = recs.remove(0);
        (Some(header), recs)
    } else {
        (None, recs)
    }
}

pub fn parse_dataset<R: Read>(reader: R) -> Result<Dataset> {
    let (header, rows) = strip_header::<f64>(records(reader)?);
    let Some((_, first)) = rows.first() else {
        return Err(UnnError::Parse {
            row: 1,
            column: 1,
            message: "no data rows".into(),
        });
    };
    let dim = header.as_ref().map_or(first.len(), |h| h.len());
    let mut values = Vec::with_capacity(rows.len() * dim);
    for (line, rec) in &rows {
        if rec.len() != dim {
            return Err(UnnError::Parse {
                row: *line,
                column: rec.len().min(dim) + 1,
                message: format!("expected {dim} fields, found {}", rec.len()),
            });
        }
        for (col, cell) in rec.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| UnnError::Parse {
                row: *line,
                column: col + 1,
                message: format!("'{cell}' is not a number"),
            })?;
            if !value.is_finite() {
                return Err(UnnError::Parse {
                    row: *line,
                    column: col + 1,
                    message: format!("non-finite value '{cell}'"),
                });
            }
            values.push(value);
        }
    }
    Dataset::from_flat(rows.len(), dim, values)
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| UnnError::io(path, e))?;
    parse_dataset(file)
}

/// Writes a header `f0,f1,…` followed by one line per pattern.
///
/// Values use the shortest decimal form that parses back to the same `f64`.
pub fn write_dataset<W: Write>(data: &Dataset, mut w: W) -> std::io::Result<()> {
    let header: Vec<String> = (0..data.dim()).map(|j| format!("f{j}")).collect();
    writeln!(w, "{}", header.join(","))?;
    for row in data.rows() {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn save_csv(data: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), |w| write_dataset(data, w))
}

pub fn parse_ordering<R: Read>(reader: R) -> Result<LatentOrdering> {
    let (_, rows) = strip_header::<usize>(records(reader)?);
    let mut pairs = Vec::with_capacity(rows.len());
    for (line, rec) in &rows {
        if rec.len() != 2 {
            return Err(UnnError::Parse {
                row: *line,
                column: rec.len().min(2) + 1,
                message: format!("expected 2 fields (index,slot), found {}", rec.len()),
            });
        }
        let field = |col: usize| -> Result<usize> {
            rec[col].parse().map_err(|_| UnnError::Parse {
                row: *line,
                column: col + 1,
                message: format!("'{}' is not a non-negative integer", &rec[col]),
            })
        };
        pairs.push((field(0)?, field(1)?));
    }
    if pairs.is_empty() {
        return Err(UnnError::Parse {
            row: 1,
            column: 1,
            message: "no ordering rows".into(),
        });
    }
    LatentOrdering::from_assignments(&pairs).map_err(|e| UnnError::Format(format!("invalid ordering: {e}")))
}

pub fn load_ordering(path: impl AsRef<Path>) -> Result<LatentOrdering> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| UnnError::io(path, e))?;
    parse_ordering(file)
}

/// `index,slot` header, then one row per embedded pattern in index order.
pub fn write_ordering<W: Write>(ordering: &LatentOrdering, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{ORDERING_HEADER}")?;
    for (pattern, slot) in ordering.assignments() {
        writeln!(w, "{pattern},{slot}")?;
    }
    Ok(())
}

pub fn save_ordering(ordering: &LatentOrdering, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), |w| write_ordering(ordering, w))
}

pub(crate) fn write_file<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let file = File::create(path).map_err(|e| UnnError::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| UnnError::io(path, e))
}
