//! Subsets of the n² cells of a Latin square.

use std::cmp::Ordering;
use std::fmt;

use crate::latin::Cell;

/// A set of cells of an order-`n` square, stored as a bit set over row-major
/// indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    (n * n).div_ceil(64)
}

impl CellSet {
    pub fn empty(n: usize) -> Self {
        CellSet {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut set = Self::empty(n);
        for v in 0..n * n {
            set.insert(v);
        }
        set
    }

    /// Builds a set from row-major indices. Indices must be `< n²`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut set = Self::empty(n);
        for v in indices {
            set.insert(v);
        }
        set
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(n: usize, cells: I) -> Self {
        Self::from_indices(n, cells.into_iter().map(|c| c.index(n)))
    }

    /// Builds a set from a membership predicate evaluated on every cell.
    pub fn from_fn<F: FnMut(usize, usize) -> bool>(n: usize, mut f: F) -> Self {
        let mut set = Self::empty(n);
        for r in 0..n {
            for c in 0..n {
                if f(r, c) {
                    set.insert(r * n + c);
                }
            }
        }
        set
    }

    /// Order of the underlying square.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn capacity(&self) -> usize {
        self.n * self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when the set is neither empty nor the whole cell set.
    pub fn is_proper(&self) -> bool {
        let len = self.len();
        len > 0 && len < self.capacity()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity() && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row < self.n && col < self.n && self.contains(row * self.n + col)
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.capacity(), "cell index {v} out of range");
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.capacity() {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    /// Raw words; bit `v % 64` of word `v / 64` is cell `v`.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Row-major indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let n = self.n;
        self.iter().map(move |v| Cell::from_index(v, n))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &CellSet) -> CellSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> CellSet {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    pub fn is_disjoint(&self, other: &CellSet) -> bool {
        self.check_order(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.check_order(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Number of cells shared with `other`.
    pub fn overlap(&self, other: &CellSet) -> usize {
        self.check_order(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn zip_with(&self, other: &CellSet, f: impl Fn(u64, u64) -> u64) -> CellSet {
        self.check_order(other);
        CellSet {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn check_order(&self, other: &CellSet) {
        assert_eq!(self.n, other.n, "cell sets over squares of different order");
    }

    fn mask_tail(&mut self) {
        let bits = self.capacity() % 64;
        if bits != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << bits) - 1;
            }
        }
    }
}

/// Canonical order: by order, then lexicographically on the increasing list
/// of member indices.
impl Ord for CellSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for CellSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CellSet(n={}, {{", self.n)?;
        for (i, c) in self.cells().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({},{})", c.row, c.col)?;
        }
        write!(f, "}})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_masks_tail_bits() {
        let s = CellSet::from_indices(3, [0, 4]);
        let c = s.complement();
        assert_eq!(c.len(), 7);
        assert!(!c.contains(0));
        assert!(c.contains(8));
        assert_eq!(s.union(&c), CellSet::full(3));
    }

    #[test]
    fn ordering_is_lexicographic_on_members() {
        let a = CellSet::from_indices(3, [0, 5]);
        let b = CellSet::from_indices(3, [0, 6]);
        let c = CellSet::from_indices(3, [1]);
        assert!(a < b);
        assert!(b < c);
        assert!(CellSet::from_indices(3, [0]) < a);
    }

    #[test]
    fn iter_crosses_word_boundary() {
        let s = CellSet::from_indices(9, [3, 63, 64, 80]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 63, 64, 80]);
        assert_eq!(s.len(), 4);
    }
}
