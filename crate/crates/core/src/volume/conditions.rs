//! Unit mixed-volume criteria for tuples of simplices.
//!
//! A tuple `(J_1, …, J_m)` of subsets of `[n]` names the summands
//! `Δ_{[n]∖J_i}` (or `D_{[n]∖J_i}`). Each criterion comes in two forms: an
//! intersection bound over every index subset, and a bipartite-matching
//! test on the complements. They agree by Hall's theorem.

use crate::subset::SubsetMask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionMode {
    /// `(n-1)`-tuples, every `k` of them meet in fewer than `n - k` elements.
    DragonMarriage,
    /// `n`-tuples, every `k` of them meet in at most `n - k` elements.
    Sdr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TupleCondition {
    pub mode: ConditionMode,
    pub n: usize,
}

impl TupleCondition {
    pub fn dragon_marriage(n: usize) -> Self {
        TupleCondition { mode: ConditionMode::DragonMarriage, n }
    }

    pub fn sdr(n: usize) -> Self {
        TupleCondition { mode: ConditionMode::Sdr, n }
    }

    /// Tuple length the condition is stated for.
    pub fn tuple_len(&self) -> usize {
        match self.mode {
            ConditionMode::DragonMarriage => self.n.saturating_sub(1),
            ConditionMode::Sdr => self.n,
        }
    }

    /// Extra elements the union of any `k` complements needs beyond `k`.
    pub(crate) fn slack(&self) -> u32 {
        match self.mode {
            ConditionMode::DragonMarriage => 1,
            ConditionMode::Sdr => 0,
        }
    }

    pub fn holds(&self, j: &[SubsetMask]) -> bool {
        match self.mode {
            ConditionMode::DragonMarriage => dragon_marriage(j, self.n),
            ConditionMode::Sdr => sdr_condition(j, self.n),
        }
    }

    pub fn holds_by_intersections(&self, j: &[SubsetMask]) -> bool {
        match self.mode {
            ConditionMode::DragonMarriage => dragon_marriage_by_intersections(j, self.n),
            ConditionMode::Sdr => sdr_condition_by_intersections(j, self.n),
        }
    }
}

/// Maximum bipartite matching between `sets` and the elements they contain
/// (Kuhn's augmenting paths). Returns the matching size.
pub fn max_matching(sets: &[SubsetMask]) -> usize {
    let mut owner: [Option<usize>; 32] = [None; 32];
    let mut size = 0;
    for i in 0..sets.len() {
        let mut visited = 0u32;
        if augment(i, sets, &mut owner, &mut visited) {
            size += 1;
        }
    }
    size
}

fn augment(
    i: usize,
    sets: &[SubsetMask],
    owner: &mut [Option<usize>; 32],
    visited: &mut u32,
) -> bool {
    let mut candidates = sets[i].bits() & !*visited;
    while candidates != 0 {
        let e = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        *visited |= 1 << e;
        let free = match owner[e] {
            None => true,
            Some(other) => augment(other, sets, owner, visited),
        };
        if free {
            owner[e] = Some(i);
            return true;
        }
    }
    false
}

/// Whether `sets` has a system of distinct representatives.
pub fn has_sdr(sets: &[SubsetMask]) -> bool {
    max_matching(sets) == sets.len()
}

/// For every `k ∈ [n]`, the complements `[n]∖J_i` have an SDR avoiding `k`.
pub fn dragon_marriage(j: &[SubsetMask], n: usize) -> bool {
    let full = SubsetMask::full(n);
    let complements: Vec<SubsetMask> = j.iter().map(|s| full.difference(*s)).collect();
    (1..=n).all(|k| {
        let avoiding: Vec<SubsetMask> = complements.iter().map(|c| c.without(k)).collect();
        has_sdr(&avoiding)
    })
}

/// The complements `[n]∖J_i` have an SDR.
pub fn sdr_condition(j: &[SubsetMask], n: usize) -> bool {
    let full = SubsetMask::full(n);
    let complements: Vec<SubsetMask> = j.iter().map(|s| full.difference(*s)).collect();
    has_sdr(&complements)
}

fn intersections_bounded(j: &[SubsetMask], n: usize, strict: bool) -> bool {
    let m = j.len();
    assert!(m < usize::BITS as usize);
    (1usize..1 << m).all(|idx| {
        let k = idx.count_ones() as usize;
        let meet = (0..m)
            .filter(|i| idx >> i & 1 == 1)
            .fold(SubsetMask::full(n), |acc, i| acc.intersection(j[i]));
        if strict {
            meet.len() + k < n
        } else {
            meet.len() + k <= n
        }
    })
}

/// `|J_{i_1} ∩ … ∩ J_{i_k}| < n - k` for every nonempty index set.
pub fn dragon_marriage_by_intersections(j: &[SubsetMask], n: usize) -> bool {
    intersections_bounded(j, n, true)
}

/// `|J_{i_1} ∩ … ∩ J_{i_k}| ≤ n - k` for every nonempty index set.
pub fn sdr_condition_by_intersections(j: &[SubsetMask], n: usize) -> bool {
    intersections_bounded(j, n, false)
}
