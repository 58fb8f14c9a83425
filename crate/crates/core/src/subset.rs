//! Fixed-universe bitsets used for every subset of a carrier.

use std::fmt;

const BITS: usize = 64;

/// A subset of `{0, .., universe - 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    universe: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset {
            universe,
            words: vec![0; universe.div_ceil(BITS)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Subset::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn singleton(universe: usize, i: usize) -> Self {
        let mut s = Subset::empty(universe);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Subset::empty(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Subset whose members are the set bits of `mask` (universe at most 64).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= BITS);
        let mut s = Subset::empty(universe);
        if universe > 0 {
            s.words[0] = mask;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / BITS] & (1u64 << (i % BITS)) != 0
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        self.words[i / BITS] |= 1u64 << (i % BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / BITS] &= !(1u64 << (i % BITS));
        }
    }

    pub fn union_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> Subset {
        Subset::full(self.universe).difference(self)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Low 64 bits as a mask; only meaningful for universes of at most 64 points.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> SubsetIter<'_> {
        SubsetIter {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Image of this subset under `f`, as a subset of a universe of size `universe`.
    pub fn image(&self, f: &[usize], universe: usize) -> Subset {
        Subset::from_indices(universe, self.iter().map(|i| f[i]))
    }
}

pub struct SubsetIter<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for SubsetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * BITS + bit);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = usize;
    type IntoIter = SubsetIter<'a>;

    fn into_iter(self) -> SubsetIter<'a> {
        self.iter()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Every non-empty subset of a universe of at most 30 points, in mask order.
pub fn nonempty_subsets(universe: usize) -> impl Iterator<Item = Subset> {
    assert!(universe <= 30, "subset enumeration limited to 30 points");
    (1u64..(1u64 << universe)).map(move |m| Subset::from_mask(universe, m))
}
