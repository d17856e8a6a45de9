//! Sets of automaton states as bit vectors.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

/// A set of state indices.
///
/// Trailing zero words are never stored, so two sets with the same members
/// are bitwise identical regardless of how they were built. Sets are ordered
/// by the integer value of their characteristic vector (`{0} < {1} < {0,1}`).
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct StateSet {
    words: SmallVec<[u64; 1]>,
}

impl StateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(q: usize) -> Self {
        let mut s = Self::new();
        s.insert(q);
        s
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new();
        let whole = n / WORD;
        s.words.resize(whole, u64::MAX);
        if !n.is_multiple_of(WORD) {
            s.words.push((1u64 << (n % WORD)) - 1);
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.words
            .get(q / WORD)
            .is_some_and(|w| w & (1u64 << (q % WORD)) != 0)
    }

    pub fn insert(&mut self, q: usize) -> bool {
        let i = q / WORD;
        if i >= self.words.len() {
            self.words.resize(i + 1, 0);
        }
        let bit = 1u64 << (q % WORD);
        let fresh = self.words[i] & bit == 0;
        self.words[i] |= bit;
        fresh
    }

    pub fn remove(&mut self, q: usize) -> bool {
        let i = q / WORD;
        let Some(w) = self.words.get_mut(i) else {
            return false;
        };
        let bit = 1u64 << (q % WORD);
        let present = *w & bit != 0;
        *w &= !bit;
        self.trim();
        present
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        if self.words.len() > other.words.len() {
            return false;
        }
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut out = StateSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        out.trim();
        out
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        let (i, w) = self.words.iter().enumerate().next_back()?;
        Some(i * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }
}

impl Ord for StateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for StateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = StateSet::new();
        for q in iter {
            s.insert(q);
        }
        s
    }
}

impl Extend<usize> for StateSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for q in iter {
            self.insert(q);
        }
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trailing_words_are_trimmed() {
        let mut s = StateSet::singleton(130);
        s.insert(3);
        assert!(s.remove(130));
        assert_eq!(s, StateSet::singleton(3));
        assert_eq!(s.last(), Some(3));
    }

    #[test]
    fn numeric_order() {
        let a: StateSet = [0].into_iter().collect();
        let b: StateSet = [1].into_iter().collect();
        let ab: StateSet = [0, 1].into_iter().collect();
        let big: StateSet = [70].into_iter().collect();
        assert!(StateSet::new() < a);
        assert!(a < b && b < ab && ab < big);
    }

    #[test]
    fn full_set() {
        assert_eq!(StateSet::full(0), StateSet::new());
        assert_eq!(StateSet::full(3).iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(StateSet::full(64).len(), 64);
        assert_eq!(StateSet::full(65).len(), 65);
    }

    proptest! {
        #[test]
        fn agrees_with_btreeset(xs in prop::collection::btree_set(0usize..200, 0..20),
                                ys in prop::collection::btree_set(0usize..200, 0..20)) {
            let a: StateSet = xs.iter().copied().collect();
            let b: StateSet = ys.iter().copied().collect();
            prop_assert_eq!(a.iter().collect::<Vec<_>>(), xs.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(a.len(), xs.len());
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            prop_assert_eq!(a.is_disjoint(&b), xs.is_disjoint(&ys));
            prop_assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), xs.union(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), xs.intersection(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), xs.difference(&ys).copied().collect::<Vec<_>>());
            let num = |s: &std::collections::BTreeSet<usize>| -> Vec<bool> {
                (0..200).rev().map(|q| s.contains(&q)).collect()
            };
            prop_assert_eq!(a.cmp(&b), num(&xs).cmp(&num(&ys)));
        }
    }
}
