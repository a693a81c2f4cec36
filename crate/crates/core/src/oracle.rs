//! Exhaustive search over latent orderings.
//!
//! On a fixed equidistant line the ordering is the only decision variable,
//! so enumerating all `N!` permutations finds the global DSRE minimum. An
//! ordering and its reversal have identical DSRE; with deduplication only
//! the lexicographically smaller one of each pair (first slot holds a
//! smaller pattern than the last) is evaluated, giving `N!/2` candidates.

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Result, UnnError};
use crate::knn::{order_dsre, DsreScratch, DsreValue};
use crate::latent::LatentOrdering;

pub const DEFAULT_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_ordering: LatentOrdering,
    pub best_dsre: DsreValue,
    pub evaluated: u64,
}

/// Global DSRE minimizer over reversal-distinct orderings.
///
/// Ties go to the lexicographically smallest ordering.
pub fn brute_force(data: &Dataset, k: usize, max_n: usize) -> Result<OracleResult> {
    search(data, k, max_n, true)
}

/// Same as [`brute_force`] without reversal deduplication.
pub fn brute_force_all(data: &Dataset, k: usize, max_n: usize) -> Result<OracleResult> {
    search(data, k, max_n, false)
}

struct Best {
    dsre: f64,
    order: Vec<usize>,
    evaluated: u64,
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        self.dsre < other.dsre || (self.dsre == other.dsre && self.order < other.order)
    }

    fn merge(self, other: Best) -> Best {
        let evaluated = self.evaluated + other.evaluated;
        let mut winner = if other.better_than(&self) { other } else { self };
        winner.evaluated = evaluated;
        winner
    }
}

fn search(data: &Dataset, k: usize, max_n: usize, dedup: bool) -> Result<OracleResult> {
    let n = data.len();
    if n > max_n {
        return Err(UnnError::SizeCap { n, max_n });
    }
    if n < 2 {
        return Err(UnnError::NoNeighbors { embedded: n });
    }
    if k == 0 {
        return Err(UnnError::invalid("neighborhood size K must be at least 1"));
    }

    // one independent chunk per leading pattern, each enumerated in
    // lexicographic order
    let best = (0..n)
        .into_par_iter()
        .filter_map(|first| {
            let mut order: Vec<usize> = std::iter::once(first)
                .chain((0..n).filter(|&p| p != first))
                .collect();
            let mut scratch = DsreScratch::new(data.dim());
            let mut best: Option<Best> = None;
            let mut evaluated = 0u64;
            loop {
                if !dedup || order[0] < order[n - 1] {
                    evaluated += 1;
                    let value = order_dsre(&order, data, k, &mut scratch);
                    if best.as_ref().is_none_or(|b| value < b.dsre) {
                        best = Some(Best {
                            dsre: value,
                            order: order.clone(),
                            evaluated: 0,
                        });
                    }
                }
                if !next_permutation(&mut order[1..]) {
                    break;
                }
            }
            best.map(|mut b| {
                b.evaluated = evaluated;
                b
            })
        })
        .reduce_with(Best::merge)
        .expect("at least one reversal-distinct ordering for n >= 2");

    Ok(OracleResult {
        best_ordering: LatentOrdering::from_order(best.order)?,
        best_dsre: DsreValue::from_raw(best.dsre),
        evaluated: best.evaluated,
    })
}

/// Advances `xs` to the next lexicographic permutation; false once `xs`
/// is the last (descending) one.
fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(pivot) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let successor = (pivot + 1..xs.len())
        .rev()
        .find(|&j| xs[j] > xs[pivot])
        .expect("a larger element exists right of the pivot");
    xs.swap(pivot, successor);
    xs[pivot + 1..].reverse();
    true
}
