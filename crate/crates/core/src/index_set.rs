//! Subsets of the index set `I`, stored as bitmasks.

use std::fmt;

use serde::{Serialize, Serializer};

/// Largest supported rank.
pub const MAX_RANK: usize = 64;

/// A subset of `{0, .., rank-1}` (0-based indices).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// The full set `{0, .., rank-1}`.
    pub fn full(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        if rank == MAX_RANK {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << rank) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1u64 << i)
    }

    pub fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_RANK && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | (1u64 << i))
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `{0, .., rank-1}`, ordered by bitmask.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = IndexSet> {
        assert!(rank < MAX_RANK, "cannot enumerate subsets of rank {rank}");
        (0..(1u64 << rank)).map(IndexSet)
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        // Standard submask enumeration, emitted in increasing order.
        let full = self.0;
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = full;
        loop {
            out.push(IndexSet(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
        out.reverse();
        out.into_iter()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = IndexSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// Displays with 1-based labels, e.g. `{1,3}`.
impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serializes as a sorted list of 1-based labels.
impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|i| i + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a: IndexSet = [0, 2].into_iter().collect();
        let b: IndexSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(b).iter().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(a.intersection(b), IndexSet::singleton(2));
        assert_eq!(a.difference(b), IndexSet::singleton(0));
        assert!(IndexSet::singleton(2).is_subset(a));
        assert!(!a.is_subset(b));
        assert_eq!(a.to_string(), "{1,3}");
    }

    #[test]
    fn subsets_are_complete_and_sorted() {
        let s: IndexSet = [1, 3, 4].into_iter().collect();
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(IndexSet::all_subsets(3).count(), 8);
        assert_eq!(IndexSet::full(3).len(), 3);
    }
}
