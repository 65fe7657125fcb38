//! Fixed-universe bitsets over element indices of a finite carrier.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Canonical ordering used when listing lattices: smaller sets first,
    /// ties broken by the sorted element list.
    pub fn canonical_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.iter().collect())
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Enumerates every join of the given cyclic pieces, starting from `bottom`.
///
/// `join` must return the smallest closed set containing both arguments. The
/// result is deduplicated and sorted by [`ElemSet::canonical_key`].
pub fn join_closure(
    bottom: ElemSet,
    cyclics: &[ElemSet],
    join: impl Fn(&ElemSet, &ElemSet) -> ElemSet,
    cap: usize,
) -> Result<Vec<ElemSet>> {
    let mut distinct: Vec<ElemSet> = Vec::new();
    {
        let mut seen = HashSet::new();
        for c in cyclics {
            if seen.insert(c.clone()) {
                distinct.push(c.clone());
            }
        }
    }
    let mut seen: HashSet<ElemSet> = HashSet::new();
    seen.insert(bottom.clone());
    let mut frontier = vec![bottom];
    let mut all = frontier.clone();
    while let Some(cur) = frontier.pop() {
        for c in &distinct {
            if c.is_subset(&cur) {
                continue;
            }
            let next = join(&cur, c);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "submodule lattice",
                        limit: cap,
                    });
                }
                all.push(next.clone());
                frontier.push(next);
            }
        }
    }
    all.sort_by_cached_key(|s| s.canonical_key());
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a = ElemSet::from_indices(70, [0, 3, 65]);
        let b = ElemSet::from_indices(70, [3, 65, 69]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![3, 65]);
        assert_eq!(a.union(&b).len(), 4);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(ElemSet::full(70).is_full());
    }
}
