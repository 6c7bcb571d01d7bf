//! Fixed-universe bit sets over state ids `0..universe`.
//!
//! Every set operation in this crate flows through [`StateSet`]: membership is
//! O(1), iteration is linear in the universe, and equality is canonical
//! (order-independent) because the representation is a packed bit vector.

use std::fmt;

/// Set of state ids drawn from a fixed universe `0..universe`.
///
/// Sets from different universes never compare equal; mixing them in binary
/// operations is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for q in 0..universe {
            s.insert(q);
        }
        s
    }

    pub fn singleton(universe: usize, q: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(q);
        s
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(universe: usize, states: I) -> Self {
        let mut s = Self::empty(universe);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Inserts `q`, returning `true` if it was not already present.
    pub fn insert(&mut self, q: usize) -> bool {
        assert!(q < self.universe, "state {q} outside universe {}", self.universe);
        let (blk, bit) = (q / 64, 1u64 << (q % 64));
        let fresh = self.blocks[blk] & bit == 0;
        self.blocks[blk] |= bit;
        fresh
    }

    /// Removes `q`, returning `true` if it was present.
    pub fn remove(&mut self, q: usize) -> bool {
        assert!(q < self.universe, "state {q} outside universe {}", self.universe);
        let (blk, bit) = (q / 64, 1u64 << (q % 64));
        let present = self.blocks[blk] & bit != 0;
        self.blocks[blk] &= !bit;
        present
    }

    pub fn contains(&self, q: usize) -> bool {
        q < self.universe && self.blocks[q / 64] & (1u64 << (q % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn is_subset_of(&self, other: &StateSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> StateSet {
        let mut out = Self::full(self.universe);
        for (a, b) in out.blocks.iter_mut().zip(&self.blocks) {
            *a &= !b;
        }
        out
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            block_idx: 0,
            current: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    set: &'a StateSet,
    block_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.block_idx += 1;
            if self.block_idx >= self.set.blocks.len() {
                return None;
            }
            self.current = self.set.blocks[self.block_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.block_idx * 64 + bit)
    }
}
