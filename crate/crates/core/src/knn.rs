//! KNN regression over latent neighborhoods and the data space
//! reconstruction error (DSRE).
//!
//! A pattern is reconstructed as the arithmetic mean of the data vectors of
//! its K nearest latent neighbors, itself excluded. The DSRE is the mean over
//! all patterns of the squared Euclidean residual between a pattern and its
//! reconstruction. Neighborhoods come from [`LatentOrdering::neighbors`]:
//! when only one of two equidistant slots fits into the K nearest, the one
//! holding the smaller pattern index is used.
//!
//! Neighbor vectors are always summed in ascending pattern-index order and
//! residuals are accumulated in ascending pattern-index order. Both sets are
//! independent of the direction of the latent line, so reversing an ordering
//! reproduces the DSRE bit for bit.

use std::fmt;

use crate::data::{squared_distance, Dataset};
use crate::error::{Result, UnnError};
use crate::latent::{collect_neighbor_slots, LatentOrdering};

/// A non-negative data space reconstruction error.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct DsreValue(f64);

impl DsreValue {
    pub fn value(self) -> f64 {
        self.0
    }

    pub(crate) fn from_raw(value: f64) -> Self {
        debug_assert!(value >= 0.0);
        Self(value)
    }
}

impl From<DsreValue> for f64 {
    fn from(v: DsreValue) -> f64 {
        v.0
    }
}

impl fmt::Display for DsreValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Mean of the given patterns' data vectors, written into `out`.
///
/// `patterns` is sorted in place so the summation order is canonical.
pub(crate) fn mean_into(data: &Dataset, patterns: &mut [usize], out: &mut [f64]) {
    debug_assert!(!patterns.is_empty());
    patterns.sort_unstable();
    out.iter_mut().for_each(|v| *v = 0.0);
    for &p in patterns.iter() {
        for (o, v) in out.iter_mut().zip(data.row(p)) {
            *o += v;
        }
    }
    let count = patterns.len() as f64;
    out.iter_mut().for_each(|v| *v /= count);
}

/// Patterns at the latent neighbor slots of `slot`.
fn neighbor_patterns(ordering: &LatentOrdering, slot: usize, k: usize) -> Vec<usize> {
    let m = ordering.len();
    let mut slots = Vec::with_capacity(k.min(m - 1));
    collect_neighbor_slots(slot, m, k.min(m - 1), |s| ordering.pattern_at(s), &mut slots);
    slots.into_iter().map(|s| ordering.pattern_at(s)).collect()
}

fn check_query(pattern: usize, ordering: &LatentOrdering, data: &Dataset, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(UnnError::invalid("neighborhood size K must be at least 1"));
    }
    if pattern >= data.len() {
        return Err(UnnError::invalid(format!(
            "pattern {pattern} out of range for {} patterns",
            data.len()
        )));
    }
    let slot = ordering
        .slot_of(pattern)
        .ok_or_else(|| UnnError::invalid(format!("pattern {pattern} is not embedded")))?;
    if ordering.len() < 2 {
        return Err(UnnError::NoNeighbors {
            embedded: ordering.len(),
        });
    }
    if let Some(&bad) = ordering.order().iter().find(|&&p| p >= data.len()) {
        return Err(UnnError::invalid(format!(
            "ordering references pattern {bad}, dataset has {}",
            data.len()
        )));
    }
    Ok(slot)
}

/// KNN regression estimate of pattern `pattern` from its latent neighbors.
pub fn knn_reconstruct(
    pattern: usize,
    ordering: &LatentOrdering,
    data: &Dataset,
    k: usize,
) -> Result<Vec<f64>> {
    let slot = check_query(pattern, ordering, data, k)?;
    let mut neighbors = neighbor_patterns(ordering, slot, k);
    let mut out = vec![0.0; data.dim()];
    mean_into(data, &mut neighbors, &mut out);
    Ok(out)
}

/// Squared residual `‖y_i − f(x_i)‖²` of a single pattern.
pub fn pointwise_error(
    pattern: usize,
    ordering: &LatentOrdering,
    data: &Dataset,
    k: usize,
) -> Result<f64> {
    let recon = knn_reconstruct(pattern, ordering, data, k)?;
    Ok(squared_distance(data.row(pattern), &recon))
}

/// DSRE of a complete ordering of `data`.
pub fn dsre(ordering: &LatentOrdering, data: &Dataset, k: usize) -> Result<DsreValue> {
    if data.len() < 2 {
        return Err(UnnError::NoNeighbors {
            embedded: data.len(),
        });
    }
    if !ordering.is_complete_for(data.len()) {
        return Err(UnnError::invalid(format!(
            "ordering embeds {} patterns, dataset has {}",
            ordering.len(),
            data.len()
        )));
    }
    if k == 0 {
        return Err(UnnError::invalid("neighborhood size K must be at least 1"));
    }
    Ok(DsreValue::from_raw(embedded_dsre(ordering, data, k)))
}

/// Mean squared residual over the embedded patterns only, in pattern-index
/// order. Requires at least two embedded patterns and `k >= 1`.
pub(crate) fn embedded_dsre(ordering: &LatentOrdering, data: &Dataset, k: usize) -> f64 {
    order_dsre(ordering.order(), data, k, &mut DsreScratch::new(data.dim()))
}

/// Reusable buffers for repeated DSRE evaluation.
pub(crate) struct DsreScratch {
    by_pattern: Vec<(usize, usize)>,
    slots: Vec<usize>,
    neighbors: Vec<usize>,
    recon: Vec<f64>,
}

impl DsreScratch {
    pub(crate) fn new(dim: usize) -> Self {
        Self {
            by_pattern: Vec::new(),
            slots: Vec::new(),
            neighbors: Vec::new(),
            recon: vec![0.0; dim],
        }
    }
}

/// DSRE over the patterns listed in `order` (slot -> pattern).
pub(crate) fn order_dsre(order: &[usize], data: &Dataset, k: usize, scratch: &mut DsreScratch) -> f64 {
    let m = order.len();
    debug_assert!(m >= 2 && k >= 1);
    let count = k.min(m - 1);
    scratch.by_pattern.clear();
    scratch
        .by_pattern
        .extend(order.iter().enumerate().map(|(slot, &p)| (p, slot)));
    scratch.by_pattern.sort_unstable();
    let mut total = 0.0;
    for &(pattern, slot) in &scratch.by_pattern {
        scratch.slots.clear();
        collect_neighbor_slots(slot, m, count, |s| order[s], &mut scratch.slots);
        scratch.neighbors.clear();
        scratch.neighbors.extend(scratch.slots.iter().map(|&s| order[s]));
        mean_into(data, &mut scratch.neighbors, &mut scratch.recon);
        total += squared_distance(data.row(pattern), &scratch.recon);
    }
    total / m as f64
}
