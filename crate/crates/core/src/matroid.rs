//! Matroids on `[n]` given by their basis family.
//!
//! A [`Matroid`] is immutable once built. Its rank function is tabulated over
//! all `2^n` subsets the first time it is needed; the table sits behind a
//! `OnceLock`, so concurrent readers either wait for or reuse the same fill.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::MatroidError;
use crate::subset::{SubsetMask, MAX_GROUND_SET};

#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    rank: usize,
    /// Sorted by bits, no duplicates.
    bases: Vec<SubsetMask>,
    /// `labels[i]` is the element label (in the matroid this one was derived
    /// from) of local element `i + 1`.
    labels: Vec<usize>,
    rank_table: OnceLock<Vec<u8>>,
}

impl PartialEq for Matroid {
    /// Structural equality: same ground-set size and identical basis family.
    /// Labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Matroid {
    /// Validates a basis family and builds the matroid.
    pub fn from_bases<I>(n: usize, bases: I) -> Result<Matroid, MatroidError>
    where
        I: IntoIterator<Item = SubsetMask>,
    {
        if n == 0 {
            return Err(MatroidError::EmptyGroundSet);
        }
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge { n, max: MAX_GROUND_SET });
        }
        let full = SubsetMask::full(n);
        let mut family: Vec<SubsetMask> = Vec::new();
        for b in bases {
            if !b.is_subset_of(full) {
                return Err(MatroidError::ElementOutOfRange { set: b, n });
            }
            family.push(b);
        }
        if family.is_empty() {
            return Err(MatroidError::EmptyBasisFamily);
        }
        family.sort_by_key(|b| b.bits());
        family.dedup();
        let rank = family[0].len();
        if let Some(&bad) = family.iter().find(|b| b.len() != rank) {
            return Err(MatroidError::UnequalCardinality {
                first: family[0],
                other: bad,
            });
        }
        let m = Matroid::new_unchecked(n, family);
        if let Some((b1, b2, e)) = m.exchange_violation() {
            return Err(MatroidError::ExchangeAxiomViolation {
                first: b1,
                second: b2,
                element: e,
            });
        }
        Ok(m)
    }

    /// Builds a matroid from a family already known to satisfy the axioms.
    /// `bases` must be nonempty, deduplicated and sorted by bits.
    pub(crate) fn new_unchecked(n: usize, bases: Vec<SubsetMask>) -> Matroid {
        debug_assert!(!bases.is_empty());
        debug_assert!(bases.windows(2).all(|w| w[0].bits() < w[1].bits()));
        Matroid {
            n,
            rank: bases[0].len(),
            bases,
            labels: (1..=n).collect(),
            rank_table: OnceLock::new(),
        }
    }

    fn with_labels(mut self, labels: Vec<usize>) -> Matroid {
        debug_assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    fn from_family(n: usize, mut family: Vec<SubsetMask>) -> Matroid {
        family.sort_by_key(|b| b.bits());
        family.dedup();
        Matroid::new_unchecked(n, family)
    }

    /// Ground-set size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground_set(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    pub fn bases(&self) -> &[SubsetMask] {
        &self.bases
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_basis(&self, s: SubsetMask) -> bool {
        self.bases.binary_search_by_key(&s.bits(), |b| b.bits()).is_ok()
    }

    /// `max |S ∩ B|` over bases, read from the memoized table.
    pub fn rank_of(&self, s: SubsetMask) -> usize {
        debug_assert!(s.is_subset_of(self.ground_set()));
        self.rank_table()[s.index()] as usize
    }

    pub fn is_independent(&self, s: SubsetMask) -> bool {
        self.rank_of(s) == s.len()
    }

    /// The full rank table indexed by subset bits.
    pub fn rank_table(&self) -> &[u8] {
        self.rank_table.get_or_init(|| self.build_rank_table())
    }

    fn build_rank_table(&self) -> Vec<u8> {
        let size = 1usize << self.n;
        let mut independent = vec![false; size];
        for b in &self.bases {
            independent[b.index()] = true;
        }
        // Downward closure: S is independent iff some S + e is.
        for s in (0..size).rev() {
            if independent[s] {
                continue;
            }
            let mut free = !s & (size - 1);
            while free != 0 {
                let bit = free & free.wrapping_neg();
                if independent[s | bit] {
                    independent[s] = true;
                    break;
                }
                free &= free - 1;
            }
        }
        let mut table = vec![0u8; size];
        for s in 0..size {
            if independent[s] {
                table[s] = s.count_ones() as u8;
            } else {
                let mut best = 0;
                let mut rest = s;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    best = best.max(table[s & !bit]);
                    rest &= rest - 1;
                }
                table[s] = best;
            }
        }
        table
    }

    /// Finds bases `B1`, `B2` and `e ∈ B1 \ B2` admitting no exchange partner.
    fn exchange_violation(&self) -> Option<(SubsetMask, SubsetMask, usize)> {
        // The family is a basis family iff its induced rank function is
        // (locally) submodular; the pairwise search only runs to name a witness.
        if self.bases.len() > 64 && self.is_rank_locally_submodular() {
            return None;
        }
        let lookup: HashSet<u32> = self.bases.iter().map(|b| b.bits()).collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                if b1 == b2 {
                    continue;
                }
                for e in b1.difference(b2).elements() {
                    let base = b1.without(e);
                    let ok = b2
                        .difference(b1)
                        .elements()
                        .any(|f| lookup.contains(&base.with(f).bits()));
                    if !ok {
                        return Some((b1, b2, e));
                    }
                }
            }
        }
        None
    }

    fn is_rank_locally_submodular(&self) -> bool {
        let table = self.rank_table();
        let n = self.n;
        for s in 0..(1usize << n) {
            for a in 0..n {
                if s >> a & 1 == 1 {
                    continue;
                }
                for b in (a + 1)..n {
                    if s >> b & 1 == 1 {
                        continue;
                    }
                    let sa = table[s | 1 << a] as i32;
                    let sb = table[s | 1 << b] as i32;
                    let sab = table[s | 1 << a | 1 << b] as i32;
                    if sa + sb < sab + table[s] as i32 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `M / A`, relabeled onto `[n - |A|]`.
    pub fn contract(&self, a: SubsetMask) -> Matroid {
        let a = a.intersection(self.ground_set());
        let keep = self.ground_set().difference(a);
        let ra = self.rank_of(a);
        let family = self
            .bases
            .iter()
            .filter(|b| b.intersection(a).len() == ra)
            .map(|b| compress(b.difference(a), keep))
            .collect();
        Matroid::from_family(keep.len(), family).with_labels(self.kept_labels(keep))
    }

    /// `M \ A`, relabeled onto `[n - |A|]`.
    pub fn delete(&self, a: SubsetMask) -> Matroid {
        let a = a.intersection(self.ground_set());
        let keep = self.ground_set().difference(a);
        let rk = self.rank_of(keep);
        let family = self
            .bases
            .iter()
            .filter(|b| b.intersection(keep).len() == rk)
            .map(|b| compress(b.intersection(keep), keep))
            .collect();
        Matroid::from_family(keep.len(), family).with_labels(self.kept_labels(keep))
    }

    /// Restriction to `keep`, i.e. deletion of its complement.
    pub fn restrict(&self, keep: SubsetMask) -> Matroid {
        self.delete(self.ground_set().difference(keep))
    }

    pub fn dual(&self) -> Matroid {
        let full = self.ground_set();
        let family = self.bases.iter().map(|b| full.difference(*b)).collect();
        Matroid::from_family(self.n, family).with_labels(self.labels.clone())
    }

    /// Direct sum; the elements of `other` follow those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let n = self.n + other.n;
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge { n, max: MAX_GROUND_SET });
        }
        let mut family = Vec::with_capacity(self.bases.len() * other.bases.len());
        for b1 in &self.bases {
            for b2 in &other.bases {
                family.push(SubsetMask(b1.bits() | b2.bits() << self.n));
            }
        }
        Ok(Matroid::from_family(n, family))
    }

    /// Rank-`i` truncation: bases are the independent sets of size `i`.
    pub fn truncate(&self, i: usize) -> Result<Matroid, MatroidError> {
        if i == 0 || i > self.rank {
            return Err(MatroidError::InvalidTruncationRank { requested: i, rank: self.rank });
        }
        if i == self.rank {
            return Ok(self.clone());
        }
        let family = SubsetMask::all(self.n)
            .filter(|s| s.len() == i && self.rank_of(*s) == i)
            .collect();
        Ok(Matroid::from_family(self.n, family).with_labels(self.labels.clone()))
    }

    fn kept_labels(&self, keep: SubsetMask) -> Vec<usize> {
        keep.elements().map(|e| self.labels[e - 1]).collect()
    }

    /// Connected components, each as a mask, ordered by smallest element.
    ///
    /// Two elements share a component iff some basis exchange swaps them;
    /// loops and coloops are singleton components.
    pub fn components(&self) -> Vec<SubsetMask> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut is_basis = vec![false; 1usize << n];
        for b in &self.bases {
            is_basis[b.index()] = true;
        }
        let full = self.ground_set();
        for b in &self.bases {
            let outside = full.difference(*b);
            for e in b.elements() {
                let base = b.without(e);
                for f in outside.elements() {
                    let re = find(&mut parent, e - 1);
                    let rf = find(&mut parent, f - 1);
                    if re != rf && is_basis[base.with(f).index()] {
                        parent[re.max(rf)] = re.min(rf);
                    }
                }
            }
        }
        let mut comps: Vec<SubsetMask> = Vec::new();
        let mut root_slot = vec![usize::MAX; n];
        for e in 0..n {
            let r = find(&mut parent, e);
            if root_slot[r] == usize::MAX {
                root_slot[r] = comps.len();
                comps.push(SubsetMask::EMPTY);
            }
            let slot = root_slot[r];
            comps[slot] = comps[slot].with(e + 1);
        }
        comps
    }

    /// No proper nonempty separator exists. A lone coloop counts as
    /// connected, a lone loop (and the empty matroid) does not, so that
    /// connectivity coincides with a nonzero beta invariant.
    pub fn is_connected(&self) -> bool {
        match self.n {
            0 => false,
            1 => self.rank == 1,
            _ => self.components().len() == 1,
        }
    }

    pub fn loops(&self) -> SubsetMask {
        let union = self.bases.iter().fold(SubsetMask::EMPTY, |acc, b| acc.union(*b));
        self.ground_set().difference(union)
    }

    /// The sets `A ≠ E` for which `M / A` is connected, sorted by
    /// (cardinality, bits).
    pub fn coconnected_flats(&self) -> Vec<SubsetMask> {
        let full = self.ground_set();
        let mut flats: Vec<SubsetMask> = SubsetMask::all(self.n)
            .filter(|a| *a != full && self.contract(*a).is_connected())
            .collect();
        flats.sort_by_key(|a| a.sort_key());
        flats
    }

    /// Bases relabeled through `labels`, used when comparing minors taken in
    /// different orders.
    pub fn bases_in_parent_labels(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .bases
            .iter()
            .map(|b| b.elements().map(|e| self.labels[e - 1]).collect())
            .collect();
        out.sort();
        out
    }
}

/// Packs the bits of `set` that lie in `keep` into the low positions, in order.
pub(crate) fn compress(set: SubsetMask, keep: SubsetMask) -> SubsetMask {
    let mut out = 0u32;
    let mut pos = 0;
    for e in keep.elements() {
        if set.contains(e) {
            out |= 1 << pos;
        }
        pos += 1;
    }
    SubsetMask(out)
}

#[cfg(test)]
/// Inverse of [`compress`]: spreads the low bits of `set` over the elements of `keep`.
pub(crate) fn expand(set: SubsetMask, keep: SubsetMask) -> SubsetMask {
    let mut out = SubsetMask::EMPTY;
    for (pos, e) in keep.elements().enumerate() {
        if set.bits() >> pos & 1 == 1 {
            out = out.with(e);
        }
    }
    out
}

#[cfg(test)]
/// The empty-ground-set matroid `M / E`, whose only basis is `∅`.
pub(crate) fn empty_matroid() -> Matroid {
    Matroid::new_unchecked(0, vec![SubsetMask::EMPTY])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::uniform;

    fn set(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    pub(crate) fn pyramid() -> Matroid {
        Matroid::from_bases(
            4,
            [set(&[1, 2]), set(&[1, 3]), set(&[1, 4]), set(&[2, 3]), set(&[2, 4])],
        )
        .unwrap()
    }

    #[test]
    fn pyramid_has_rank_two() {
        let m = pyramid();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.bases().len(), 5);
        assert_eq!(m.rank_of(set(&[1, 2])), 2);
        assert_eq!(m.rank_of(set(&[3, 4])), 1);
        assert_eq!(m.rank_of(SubsetMask::EMPTY), 0);
    }

    #[test]
    fn single_coloop() {
        let m = Matroid::from_bases(1, [set(&[1])]).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.is_connected());
    }

    #[test]
    fn unequal_cardinality_rejected() {
        let err = Matroid::from_bases(3, [set(&[1, 2]), set(&[3])]).unwrap_err();
        assert!(matches!(err, MatroidError::UnequalCardinality { .. }));
    }

    #[test]
    fn exchange_violation_reports_witness() {
        // {1,2} and {3,4} alone violate exchange.
        let err = Matroid::from_bases(4, [set(&[1, 2]), set(&[3, 4])]).unwrap_err();
        match err {
            MatroidError::ExchangeAxiomViolation { first, second, element } => {
                assert!(first.contains(element) && !second.contains(element));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exchange_violation_found_on_large_family() {
        // Dropping {1,2,3} and {1,2,4} from the 3-subsets of [9] makes both
        // dependent while {2,3,4} stays a basis, so circuit elimination fails.
        let family: Vec<SubsetMask> = SubsetMask::all(9)
            .filter(|s| s.len() == 3 && *s != set(&[1, 2, 3]) && *s != set(&[1, 2, 4]))
            .collect();
        assert!(family.len() > 64);
        let err = Matroid::from_bases(9, family).unwrap_err();
        assert!(matches!(err, MatroidError::ExchangeAxiomViolation { .. }));
        // A genuine large uniform matroid still validates through the rank route.
        let family: Vec<SubsetMask> = SubsetMask::all(9).filter(|s| s.len() == 4).collect();
        assert!(Matroid::from_bases(9, family).is_ok());
    }

    #[test]
    fn empty_inputs_rejected() {
        assert!(matches!(
            Matroid::from_bases(3, []),
            Err(MatroidError::EmptyBasisFamily)
        ));
        assert!(matches!(
            Matroid::from_bases(0, [SubsetMask::EMPTY]),
            Err(MatroidError::EmptyGroundSet)
        ));
        assert!(matches!(
            Matroid::from_bases(21, [SubsetMask::EMPTY]),
            Err(MatroidError::GroundSetTooLarge { .. })
        ));
        assert!(matches!(
            Matroid::from_bases(2, [set(&[3])]),
            Err(MatroidError::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn uniform_rank_matches_brute_force() {
        let m = uniform(2, 4).unwrap();
        assert_eq!(m.rank_of(set(&[1, 2, 3])), 2);
    }

    #[test]
    fn minors_and_dual() {
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(u23.contract(set(&[1])), uniform(1, 2).unwrap());
        assert_eq!(u23.contract(set(&[1])).labels(), &[2, 3]);
        assert_eq!(u23.dual(), uniform(1, 3).unwrap());
        let c = pyramid().contract(set(&[3, 4]));
        assert_eq!(c.n(), 2);
        assert_eq!(c.bases(), &[set(&[1]), set(&[2])]);
        assert_eq!(pyramid().delete(set(&[1])).bases().len(), 2);
    }

    #[test]
    fn truncation() {
        let m = Matroid::from_bases(3, [set(&[1, 2]), set(&[1, 3])]).unwrap();
        let t = m.truncate(1).unwrap();
        assert_eq!(t.bases(), &[set(&[1]), set(&[2]), set(&[3])]);
        assert_eq!(m.truncate(2).unwrap(), m);
        assert_eq!(uniform(2, 4).unwrap().truncate(1).unwrap(), uniform(1, 4).unwrap());
        assert!(matches!(
            m.truncate(3),
            Err(MatroidError::InvalidTruncationRank { .. })
        ));
        assert!(m.truncate(0).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(uniform(2, 3).unwrap().is_connected());
        let c = uniform(1, 1).unwrap();
        assert!(!c.direct_sum(&c).unwrap().is_connected());
        assert!(pyramid().is_connected());
        assert!(!uniform(0, 1).unwrap().is_connected());
        assert!(!empty_matroid().is_connected());
        let m = Matroid::from_bases(3, [set(&[1, 2]), set(&[1, 3])]).unwrap();
        assert_eq!(m.components(), vec![set(&[1]), set(&[2, 3])]);
    }

    #[test]
    fn coconnected_flats_examples() {
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(
            u23.coconnected_flats(),
            vec![SubsetMask::EMPTY, set(&[1]), set(&[2]), set(&[3])]
        );
        assert_eq!(uniform(1, 3).unwrap().coconnected_flats(), vec![SubsetMask::EMPTY]);
        for n in 2..=5 {
            let free = uniform(n, n).unwrap();
            let flats = free.coconnected_flats();
            assert_eq!(flats.len(), n);
            assert!(flats.iter().all(|a| a.len() == n - 1));
        }
    }

    #[test]
    fn compress_expand_roundtrip() {
        let keep = set(&[2, 4, 5]);
        let s = set(&[2, 5]);
        assert_eq!(compress(s, keep), SubsetMask(0b101));
        assert_eq!(expand(compress(s, keep), keep), s);
    }
}
