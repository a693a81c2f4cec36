use crate::error::{Result, UnnError};

/// `n` patterns in a `dim`-dimensional data space, stored row-major.
///
/// Every entry is finite and every row has the same length. A dataset is
/// immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    n: usize,
    dim: usize,
    values: Vec<f64>,
}

impl Dataset {
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(UnnError::invalid("dataset needs at least one pattern"));
        }
        let dim = rows[0].as_ref().len();
        let mut values = Vec::with_capacity(n * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(UnnError::invalid(format!(
                    "pattern {i} has {} coordinates, expected {dim}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Self::from_flat(n, dim, values)
    }

    pub fn from_flat(n: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || dim == 0 {
            return Err(UnnError::invalid(format!(
                "dataset shape {n}x{dim} is empty"
            )));
        }
        if values.len() != n * dim {
            return Err(UnnError::invalid(format!(
                "{} values do not fill a {n}x{dim} dataset",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(UnnError::invalid(format!(
                "non-finite value {} at pattern {}, coordinate {}",
                values[pos],
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self { n, dim, values })
    }

    /// Number of patterns.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Data-space dimensionality.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.values
    }

    /// Applies `f` to every pattern, producing a dataset of the same size.
    pub fn map_rows<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&[f64]) -> Vec<f64>,
    {
        let rows: Vec<Vec<f64>> = self.rows().map(&mut f).collect();
        Self::from_rows(&rows)
    }
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
