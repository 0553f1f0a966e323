use std::fmt;

/// Largest supported ground-set size. Every 2^n table must fit in memory.
pub const MAX_GROUND_SET: usize = 20;

/// A subset of the ground set `[n]`, stored as a bitmask.
///
/// Element `i` (1-based) is a member iff bit `i - 1` is set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The full ground set `[n]`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n == 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    /// Builds a mask from 1-based element labels.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u32;
        for e in elements {
            debug_assert!((1..=32).contains(&e));
            bits |= 1 << (e - 1);
        }
        SubsetMask(bits)
    }

    #[inline]
    pub fn singleton(element: usize) -> Self {
        SubsetMask(1 << (element - 1))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership test for a 1-based element.
    #[inline]
    pub fn contains(self, element: usize) -> bool {
        self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Complement inside `[n]`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn with(self, element: usize) -> Self {
        SubsetMask(self.0 | 1 << (element - 1))
    }

    #[inline]
    pub fn without(self, element: usize) -> Self {
        SubsetMask(self.0 & !(1 << (element - 1)))
    }

    /// Members as ascending 1-based labels.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Ordering key used for every user-visible listing: cardinality, then bits.
    #[inline]
    pub fn sort_key(self) -> (u32, u32) {
        (self.0.count_ones(), self.0)
    }

    /// All subsets of `[n]` in increasing bit order.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetMask> {
        (0..1u32 << n).map(SubsetMask)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(low + 1)
    }
}

pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some((current.wrapping_sub(self.mask)) & self.mask)
        };
        Some(SubsetMask(current))
    }
}

impl fmt::Display for SubsetMask {
    /// Renders as `{1,2,4}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for SubsetMask {
    /// Cardinality first, then bits.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorts masks by (cardinality, bits).
pub fn sort_canonical(masks: &mut [SubsetMask]) {
    masks.sort_by_key(|m| m.sort_key());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_are_one_based() {
        let s = SubsetMask::from_elements([1, 3, 4]);
        assert_eq!(s.bits(), 0b1101);
        assert_eq!(s.elements().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.to_string(), "{1,3,4}");
        assert_eq!(SubsetMask::EMPTY.to_string(), "{}");
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = SubsetMask::from_elements([2, 5, 6]);
        let mut subs: Vec<u32> = s.subsets().map(|m| m.bits()).collect();
        assert_eq!(subs.len(), 8);
        subs.sort();
        subs.dedup();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|&b| b & !s.bits() == 0));
        assert_eq!(SubsetMask::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn complement_and_order() {
        let s = SubsetMask::from_elements([1, 2]);
        assert_eq!(s.complement(4), SubsetMask::from_elements([3, 4]));
        let mut v = vec![
            SubsetMask::from_elements([1, 2, 3]),
            SubsetMask::from_elements([3]),
            SubsetMask::from_elements([1, 2]),
        ];
        sort_canonical(&mut v);
        assert_eq!(v[0].to_string(), "{3}");
        assert_eq!(v[2].to_string(), "{1,2,3}");
    }
}
