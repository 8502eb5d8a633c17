use std::fmt;

use serde::{Deserialize, Serialize};

/// A set of generators, as a bitmask over vertex indices of a defining graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenSet(pub u64);

pub const MAX_GENERATORS: usize = 64;

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn singleton(i: usize) -> Self {
        GenSet(1 << i)
    }

    pub fn full(n: usize) -> Self {
        if n == 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        it.into_iter().fold(GenSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        GenSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        GenSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> Self {
        GenSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Indices in increasing order.
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

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = GenSet> {
        let full = self.0;
        let mut cur: Option<u64> = Some(0);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some((c.wrapping_sub(full)) & full) };
            Some(GenSet(c))
        })
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_power_set() {
        let s = GenSet::from_indices([0, 2, 5]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset(s)));
        assert_eq!(all[0], GenSet::EMPTY);
        assert_eq!(*all.last().unwrap(), s);
    }

    #[test]
    fn iter_is_sorted() {
        let s = GenSet::from_indices([7, 1, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 7]);
        assert_eq!(s.without(3).len(), 2);
    }
}
