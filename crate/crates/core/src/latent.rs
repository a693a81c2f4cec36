//! Fixed one-dimensional latent topology.
//!
//! Embedded patterns occupy equidistant slots `0..M` on a line. Only the
//! relative order matters, so an ordering is fully described by which
//! pattern sits in which slot.

use crate::error::{Result, UnnError};

const VACANT: usize = usize::MAX;

/// Bijection between embedded pattern indices and latent slots `0..M`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LatentOrdering {
    /// slot -> pattern
    order: Vec<usize>,
    /// pattern -> slot, `VACANT` for patterns not embedded
    slot_of: Vec<usize>,
}

impl LatentOrdering {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Patterns `0..n` placed in row order.
    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
            slot_of: (0..n).collect(),
        }
    }

    /// Builds an ordering from the pattern found at each slot.
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let cap = order.iter().max().map_or(0, |&m| m + 1);
        let mut slot_of = vec![VACANT; cap];
        for (slot, &pattern) in order.iter().enumerate() {
            if slot_of[pattern] != VACANT {
                return Err(UnnError::invalid(format!(
                    "pattern {pattern} occupies slots {} and {slot}",
                    slot_of[pattern]
                )));
            }
            slot_of[pattern] = slot;
        }
        Ok(Self { order, slot_of })
    }

    /// Builds an ordering from `(pattern, slot)` pairs in any order.
    pub fn from_assignments(pairs: &[(usize, usize)]) -> Result<Self> {
        let m = pairs.len();
        let mut order = vec![VACANT; m];
        for &(pattern, slot) in pairs {
            if slot >= m {
                return Err(UnnError::invalid(format!(
                    "slot {slot} out of range for {m} embedded patterns"
                )));
            }
            if order[slot] != VACANT {
                return Err(UnnError::invalid(format!(
                    "slot {slot} assigned to patterns {} and {pattern}",
                    order[slot]
                )));
            }
            order[slot] = pattern;
        }
        Self::from_order(order)
    }

    /// Number of embedded patterns.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Pattern at each slot, left to right.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn pattern_at(&self, slot: usize) -> usize {
        self.order[slot]
    }

    pub fn slot_of(&self, pattern: usize) -> Option<usize> {
        self.slot_of.get(pattern).copied().filter(|&s| s != VACANT)
    }

    pub fn contains(&self, pattern: usize) -> bool {
        self.slot_of(pattern).is_some()
    }

    /// True when exactly the patterns `0..n` are embedded.
    pub fn is_complete_for(&self, n: usize) -> bool {
        self.order.len() == n && self.slot_of.len() == n
    }

    /// `(pattern, slot)` pairs sorted by pattern index.
    pub fn assignments(&self) -> Vec<(usize, usize)> {
        self.slot_of
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != VACANT)
            .map(|(p, &s)| (p, s))
            .collect()
    }

    pub fn reversed(&self) -> Self {
        let order: Vec<usize> = self.order.iter().rev().copied().collect();
        let m = order.len();
        let slot_of = self
            .slot_of
            .iter()
            .map(|&s| if s == VACANT { VACANT } else { m - 1 - s })
            .collect();
        Self { order, slot_of }
    }

    /// Inserts `pattern` before the pattern currently at `slot`; `slot == len()` appends.
    pub fn insert(&mut self, pattern: usize, slot: usize) -> Result<()> {
        if slot > self.order.len() {
            return Err(UnnError::invalid(format!(
                "insertion slot {slot} out of range 0..={}",
                self.order.len()
            )));
        }
        if self.contains(pattern) {
            return Err(UnnError::invalid(format!(
                "pattern {pattern} is already embedded"
            )));
        }
        if pattern >= self.slot_of.len() {
            self.slot_of.resize(pattern + 1, VACANT);
        }
        self.order.insert(slot, pattern);
        for (s, &p) in self.order.iter().enumerate().skip(slot) {
            self.slot_of[p] = s;
        }
        Ok(())
    }
}

/// Latent neighbors of one slot, nearest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborSet {
    slots: Vec<usize>,
    requested: usize,
}

impl NeighborSet {
    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// The neighborhood size asked for; `len()` is smaller when fewer
    /// patterns are embedded.
    pub fn requested(&self) -> usize {
        self.requested
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Pattern indices of the neighbors under `ordering`.
    pub fn patterns(&self, ordering: &LatentOrdering) -> Vec<usize> {
        self.slots.iter().map(|&s| ordering.pattern_at(s)).collect()
    }
}

/// The `min(k, m - 1)` slots closest to `slot` on a line of `m` slots,
/// excluding `slot` itself, nearest first. Equidistant pairs list the left
/// slot first, and when only one slot of a pair fits the left one is taken.
///
/// This is the purely positional neighborhood. [`LatentOrdering::neighbors`]
/// breaks split pairs by pattern index instead, which makes it independent
/// of the direction of the line.
pub fn latent_neighbors(slot: usize, m: usize, k: usize) -> Result<NeighborSet> {
    check_neighbor_query(slot, m, k)?;
    let mut slots = Vec::with_capacity(k.min(m - 1));
    collect_neighbor_slots(slot, m, k.min(m - 1), |s| s, &mut slots);
    Ok(NeighborSet { slots, requested: k })
}

fn check_neighbor_query(slot: usize, m: usize, k: usize) -> Result<()> {
    if m == 0 {
        return Err(UnnError::invalid("no embedded patterns"));
    }
    if slot >= m {
        return Err(UnnError::invalid(format!(
            "slot {slot} out of range for {m} embedded patterns"
        )));
    }
    if k == 0 {
        return Err(UnnError::invalid("neighborhood size K must be at least 1"));
    }
    Ok(())
}

impl LatentOrdering {
    /// The `min(k, M - 1)` latent neighbors of `slot`, nearest first.
    ///
    /// Equidistant pairs are listed by ascending pattern index, and when
    /// only one slot of a pair fits, the one holding the smaller pattern
    /// index is taken. The resulting pattern set is the same for an ordering
    /// and its reversal.
    pub fn neighbors(&self, slot: usize, k: usize) -> Result<NeighborSet> {
        let m = self.len();
        check_neighbor_query(slot, m, k)?;
        let mut slots = Vec::with_capacity(k.min(m - 1));
        collect_neighbor_slots(slot, m, k.min(m - 1), |s| self.order[s], &mut slots);
        Ok(NeighborSet { slots, requested: k })
    }
}

/// Appends the `count` slots nearest to `slot` on a line of `m` slots.
///
/// Both members of an equidistant pair are appended in ascending `key`
/// order; if only one still fits, the one with the smaller `key` is used.
/// Requires `count <= m - 1`.
pub(crate) fn collect_neighbor_slots<F>(slot: usize, m: usize, count: usize, key: F, out: &mut Vec<usize>)
where
    F: Fn(usize) -> usize,
{
    let mut need = count;
    let mut dist = 1;
    while need > 0 {
        let left = slot.checked_sub(dist);
        let right = Some(slot + dist).filter(|&r| r < m);
        match (left, right) {
            (Some(l), Some(r)) => {
                let (first, second) = if key(l) <= key(r) { (l, r) } else { (r, l) };
                out.push(first);
                need -= 1;
                if need > 0 {
                    out.push(second);
                    need -= 1;
                }
            }
            (Some(s), None) | (None, Some(s)) => {
                out.push(s);
                need -= 1;
            }
            (None, None) => break,
        }
        dist += 1;
    }
}
