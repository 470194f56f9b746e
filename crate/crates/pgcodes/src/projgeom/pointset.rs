//! Bitset of point indices in a fixed ambient space.

use std::fmt;

/// Set of points of PG(n,q), stored as a packed bitset over the canonical
/// point indices `[0, theta_n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    words: Vec<u64>,
    universe: usize,
}

impl PointSet {
    pub fn empty(universe: usize) -> PointSet {
        PointSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> PointSet {
        let mut s = PointSet::empty(universe);
        for i in 0..universe {
            s.insert(i as u32);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: &[u32]) -> PointSet {
        let mut s = PointSet::empty(universe);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, i: u32) {
        debug_assert!((i as usize) < self.universe);
        self.words[i as usize / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: u32) {
        self.words[i as usize / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        (self.words[i as usize / 64] >> (i % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some(wi as u32 * 64 + bit)
            })
        })
    }

    pub fn to_indices(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> PointSet {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    fn zip_with(&self, other: &PointSet, f: impl Fn(u64, u64) -> u64) -> PointSet {
        debug_assert_eq!(self.universe, other.universe);
        PointSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            universe: self.universe,
        }
    }

    fn mask_tail(&mut self) {
        let tail = self.universe % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet{:?}", self.to_indices())
    }
}
