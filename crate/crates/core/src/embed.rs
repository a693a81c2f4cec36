//! Greedy iterative embedding onto the latent line.
//!
//! Patterns are taken one at a time and inserted into the current partial
//! ordering at the candidate slot with the lowest score. [`Strategy::Unn1`]
//! tries every gap of the `M` embedded patterns (`M + 1` slots);
//! [`Strategy::Unn2`] first finds the embedded pattern nearest in data space
//! and only tries the two gaps flanking it.
//!
//! Insertion slots use insert-before semantics: slot `s` places the new
//! pattern in front of the pattern currently at `s`, and slot `M` appends.

use std::ops::AddAssign;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::data::{squared_distance, Dataset};
use crate::error::{Result, UnnError};
use crate::knn::{dsre, embedded_dsre, mean_into, DsreValue};
use crate::latent::{collect_neighbor_slots, LatentOrdering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Test all `M + 1` insertion slots.
    Unn1,
    /// Test the two slots next to the nearest embedded pattern.
    Unn2,
}

/// What a candidate slot is scored by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Criterion {
    /// Squared reconstruction error of the inserted pattern alone (`K·d` work).
    #[default]
    Pointwise,
    /// DSRE over every embedded pattern after the insertion.
    FullDsre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InsertionOrder {
    /// Dataset row order.
    #[default]
    Dataset,
    /// A seeded permutation of the rows.
    Shuffled { seed: u64 },
}

impl InsertionOrder {
    pub fn sequence(self, n: usize) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        if let InsertionOrder::Shuffled { seed } = self {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            order.shuffle(&mut rng);
        }
        order
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EmbedConfig {
    pub k: usize,
    pub strategy: Strategy,
    pub insertion_order: InsertionOrder,
    pub criterion: Criterion,
    /// Record the DSRE of the partial ordering after every insertion.
    /// Costs a full DSRE evaluation per step.
    pub track_dsre: bool,
}

impl EmbedConfig {
    /// Dataset order, pointwise criterion, no DSRE tracking.
    pub fn new(k: usize, strategy: Strategy) -> Self {
        Self {
            k,
            strategy,
            insertion_order: InsertionOrder::Dataset,
            criterion: Criterion::Pointwise,
            track_dsre: false,
        }
    }

    pub fn with_criterion(mut self, criterion: Criterion) -> Self {
        self.criterion = criterion;
        self
    }

    pub fn with_order(mut self, order: InsertionOrder) -> Self {
        self.insertion_order = order;
        self
    }

    pub fn with_tracking(mut self, track_dsre: bool) -> Self {
        self.track_dsre = track_dsre;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(UnnError::invalid("neighborhood size K must be at least 1"));
        }
        Ok(())
    }
}

/// Counted primitive operations.
///
/// `work` is measured in scalar coordinate operations: each distance
/// evaluation costs `d`, and each reconstruction costs `d` per neighbor
/// averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounts {
    pub distance_evals: u64,
    pub reconstruction_evals: u64,
    pub work: u64,
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.distance_evals += rhs.distance_evals;
        self.reconstruction_evals += rhs.reconstruction_evals;
        self.work += rhs.work;
    }
}

/// One step of an embedding run.
#[derive(Debug, Clone, PartialEq)]
pub struct InsertionRecord {
    pub pattern: usize,
    /// Patterns embedded before this step.
    pub embedded_before: usize,
    pub candidates: usize,
    pub slot: usize,
    pub score: f64,
    pub running_dsre: Option<f64>,
    pub ops: OpCounts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedResult {
    pub ordering: LatentOrdering,
    pub final_dsre: DsreValue,
    pub trace: Vec<InsertionRecord>,
}

impl EmbedResult {
    pub fn total_ops(&self) -> OpCounts {
        let mut total = OpCounts::default();
        for rec in &self.trace {
            total += rec.ops;
        }
        total
    }
}

/// Every gap of the partial ordering: `0..=M`.
pub fn candidate_slots_unn1(partial: &LatentOrdering) -> Vec<usize> {
    (0..=partial.len()).collect()
}

/// The two gaps flanking the embedded pattern nearest to `y` in data space.
pub fn candidate_slots_unn2(
    partial: &LatentOrdering,
    y: &[f64],
    data: &Dataset,
) -> Result<Vec<usize>> {
    if partial.is_empty() {
        return Err(UnnError::invalid(
            "nearest-neighbor candidates need at least one embedded pattern",
        ));
    }
    if y.len() != data.dim() {
        return Err(UnnError::invalid(format!(
            "query has {} coordinates, dataset has {}",
            y.len(),
            data.dim()
        )));
    }
    check_partial(partial, data)?;
    let mut ops = OpCounts::default();
    Ok(unn2_slots(partial, y, data, &mut ops))
}

fn unn2_slots(partial: &LatentOrdering, y: &[f64], data: &Dataset, ops: &mut OpCounts) -> Vec<usize> {
    let nearest = nearest_embedded(partial, y, data, ops);
    let slot = partial.slot_of(nearest).expect("nearest pattern is embedded");
    vec![slot, slot + 1]
}

/// Embedded pattern minimizing Euclidean distance to `y`; ties go to the
/// smaller pattern index.
fn nearest_embedded(partial: &LatentOrdering, y: &[f64], data: &Dataset, ops: &mut OpCounts) -> usize {
    let m = partial.len() as u64;
    ops.distance_evals += m;
    ops.work += m * data.dim() as u64;
    partial
        .order()
        .iter()
        .map(|&p| (squared_distance(data.row(p), y), p))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .map(|(_, p)| p)
        .expect("partial ordering is non-empty")
}

/// Copy of `partial` with `pattern` inserted at `slot`.
pub fn insert_at(partial: &LatentOrdering, pattern: usize, slot: usize) -> Result<LatentOrdering> {
    let mut next = partial.clone();
    next.insert(pattern, slot)?;
    Ok(next)
}

/// Criterion value of inserting `pattern` at `slot`. The first insertion
/// into an empty ordering scores 0.
pub fn score_insertion(
    partial: &LatentOrdering,
    pattern: usize,
    slot: usize,
    data: &Dataset,
    config: &EmbedConfig,
) -> Result<f64> {
    config.validate()?;
    check_partial(partial, data)?;
    if pattern >= data.len() {
        return Err(UnnError::invalid(format!(
            "pattern {pattern} out of range for {} patterns",
            data.len()
        )));
    }
    if partial.contains(pattern) {
        return Err(UnnError::invalid(format!(
            "pattern {pattern} is already embedded"
        )));
    }
    if slot > partial.len() {
        return Err(UnnError::invalid(format!(
            "insertion slot {slot} out of range 0..={}",
            partial.len()
        )));
    }
    let mut ops = OpCounts::default();
    Ok(score(partial, pattern, slot, data, config.k, config.criterion, &mut ops))
}

fn check_partial(partial: &LatentOrdering, data: &Dataset) -> Result<()> {
    match partial.order().iter().find(|&&p| p >= data.len()) {
        Some(&bad) => Err(UnnError::invalid(format!(
            "ordering references pattern {bad}, dataset has {}",
            data.len()
        ))),
        None => Ok(()),
    }
}

fn score(
    partial: &LatentOrdering,
    pattern: usize,
    slot: usize,
    data: &Dataset,
    k: usize,
    criterion: Criterion,
    ops: &mut OpCounts,
) -> f64 {
    let m = partial.len();
    if m == 0 {
        return 0.0;
    }
    let neighbors = k.min(m) as u64;
    let dim = data.dim() as u64;
    match criterion {
        Criterion::Pointwise => {
            // neighbor slots in the post-insertion line, mapped back to `partial`
            let old_pattern = |s: usize| partial.pattern_at(if s < slot { s } else { s - 1 });
            let mut slots = Vec::with_capacity(k.min(m));
            collect_neighbor_slots(slot, m + 1, k.min(m), old_pattern, &mut slots);
            let mut patterns: Vec<usize> = slots.into_iter().map(old_pattern).collect();
            let mut recon = vec![0.0; data.dim()];
            mean_into(data, &mut patterns, &mut recon);
            ops.reconstruction_evals += 1;
            ops.work += neighbors * dim;
            squared_distance(data.row(pattern), &recon)
        }
        Criterion::FullDsre => {
            let mut next = partial.clone();
            next.insert(pattern, slot).expect("validated insertion");
            let embedded = m as u64 + 1;
            ops.reconstruction_evals += embedded;
            ops.work += embedded * neighbors * dim;
            embedded_dsre(&next, data, k)
        }
    }
}

/// Lowest score wins; among equal scores the smallest slot.
fn select(scored: impl IntoIterator<Item = (usize, f64)>) -> (usize, f64) {
    scored
        .into_iter()
        .reduce(|best, cand| {
            if cand.1 < best.1 || (cand.1 == best.1 && cand.0 < best.0) {
                cand
            } else {
                best
            }
        })
        .expect("at least one candidate slot")
}

/// Embeds every pattern of `data` with the configured strategy.
pub fn embed(data: &Dataset, config: &EmbedConfig) -> Result<EmbedResult> {
    config.validate()?;
    let n = data.len();
    if n < 2 {
        return Err(UnnError::invalid(format!(
            "embedding needs at least 2 patterns, got {n}"
        )));
    }

    let mut ordering = LatentOrdering::empty();
    let mut trace = Vec::with_capacity(n);
    for pattern in config.insertion_order.sequence(n) {
        let mut ops = OpCounts::default();
        let embedded_before = ordering.len();
        let candidates = match (config.strategy, embedded_before) {
            (_, 0) => vec![0],
            (Strategy::Unn1, _) => candidate_slots_unn1(&ordering),
            (Strategy::Unn2, _) => unn2_slots(&ordering, data.row(pattern), data, &mut ops),
        };

        let (slot, best) = match config.criterion {
            Criterion::Pointwise => select(candidates.iter().map(|&slot| {
                (slot, score(&ordering, pattern, slot, data, config.k, config.criterion, &mut ops))
            })),
            Criterion::FullDsre => {
                let scored: Vec<(usize, f64, OpCounts)> = candidates
                    .par_iter()
                    .map(|&slot| {
                        let mut local = OpCounts::default();
                        let s = score(&ordering, pattern, slot, data, config.k, config.criterion, &mut local);
                        (slot, s, local)
                    })
                    .collect();
                for (_, _, local) in &scored {
                    ops += *local;
                }
                select(scored.into_iter().map(|(slot, s, _)| (slot, s)))
            }
        };

        ordering.insert(pattern, slot)?;
        let running_dsre = (config.track_dsre && ordering.len() >= 2)
            .then(|| embedded_dsre(&ordering, data, config.k));
        trace.push(InsertionRecord {
            pattern,
            embedded_before,
            candidates: candidates.len(),
            slot,
            score: best,
            running_dsre,
            ops,
        });
    }

    let final_dsre = dsre(&ordering, data, config.k)?;
    Ok(EmbedResult {
        ordering,
        final_dsre,
        trace,
    })
}
