//! s-fold inflations of Latin squares.
//!
//! Each occurrence of letter `i` in an order-`t` base square is replaced by an
//! `s × s` Latin square on an alphabet `A_i`, the alphabets being pairwise
//! disjoint. Fat row `I` of the result spans rows `I·s .. (I+1)·s`, and
//! likewise for columns.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cellset::CellSet;
use crate::latin::LatinSquare;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InflationError {
    #[error("inflation factor must be at least 1")]
    ZeroFold,
    #[error("expected {expected} alphabets, got {got}")]
    AlphabetCount { expected: usize, got: usize },
    #[error("alphabet {letter} has {size} letters, expected {s}")]
    AlphabetSize { letter: usize, size: usize, s: usize },
    #[error("letter {value} appears in more than one alphabet")]
    AlphabetOverlap { value: usize },
    #[error("letter {value} in alphabet {letter} is outside [0,{order})")]
    AlphabetOutOfRange { letter: usize, value: usize, order: usize },
    #[error("expected {expected} block squares, got {got}")]
    BlockCount { expected: usize, got: usize },
    #[error("no block for occurrence {occurrence} of letter {letter}")]
    MissingBlock { letter: usize, occurrence: usize },
    #[error("block for occurrence {occurrence} of letter {letter} is not {s}×{s}")]
    BlockShape { letter: usize, occurrence: usize, s: usize },
    #[error("block for occurrence {occurrence} of letter {letter} uses letters outside its alphabet")]
    BlockAlphabetMismatch { letter: usize, occurrence: usize },
    #[error("block for occurrence {occurrence} of letter {letter} is not Latin")]
    BlockNotLatin { letter: usize, occurrence: usize },
}

/// Key of a block: base letter and the index of its occurrence. Letter `i`
/// occurs once per row of the base, so occurrence `k` lies in base row `k`.
pub type BlockKey = (usize, usize);

/// A validated description of an s-fold inflation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InflationSpec {
    base: LatinSquare,
    s: usize,
    alphabets: Vec<Vec<usize>>,
    blocks: BTreeMap<BlockKey, Vec<Vec<usize>>>,
}

impl InflationSpec {
    pub fn new(
        base: LatinSquare,
        s: usize,
        alphabets: Vec<Vec<usize>>,
        blocks: BTreeMap<BlockKey, Vec<Vec<usize>>>,
    ) -> Result<Self, InflationError> {
        if s == 0 {
            return Err(InflationError::ZeroFold);
        }
        let t = base.order();
        let order = s * t;
        if alphabets.len() != t {
            return Err(InflationError::AlphabetCount {
                expected: t,
                got: alphabets.len(),
            });
        }
        let mut owner = vec![usize::MAX; order];
        for (letter, alphabet) in alphabets.iter().enumerate() {
            if alphabet.len() != s {
                return Err(InflationError::AlphabetSize {
                    letter,
                    size: alphabet.len(),
                    s,
                });
            }
            for &value in alphabet {
                if value >= order {
                    return Err(InflationError::AlphabetOutOfRange { letter, value, order });
                }
                if owner[value] != usize::MAX {
                    return Err(InflationError::AlphabetOverlap { value });
                }
                owner[value] = letter;
            }
        }
        if blocks.len() != t * t {
            for letter in 0..t {
                for occurrence in 0..t {
                    if !blocks.contains_key(&(letter, occurrence)) {
                        return Err(InflationError::MissingBlock { letter, occurrence });
                    }
                }
            }
            return Err(InflationError::BlockCount {
                expected: t * t,
                got: blocks.len(),
            });
        }
        for (letter, alphabet) in alphabets.iter().enumerate() {
            for occurrence in 0..t {
                let grid = blocks
                    .get(&(letter, occurrence))
                    .ok_or(InflationError::MissingBlock { letter, occurrence })?;
                check_block(grid, s, alphabet, &owner, letter, occurrence)?;
            }
        }
        let alphabets = alphabets
            .into_iter()
            .map(|mut a| {
                a.sort_unstable();
                a
            })
            .collect();
        Ok(InflationSpec {
            base,
            s,
            alphabets,
            blocks,
        })
    }

    /// Uses one block per base letter for every occurrence. Alphabet `i` is
    /// `i·s .. (i+1)·s` and block letter `x` becomes `i·s + x`.
    pub fn uniform(base: LatinSquare, s: usize, per_letter: &[LatinSquare]) -> Result<Self, InflationError> {
        let t = base.order();
        if per_letter.len() != t {
            return Err(InflationError::BlockCount {
                expected: t,
                got: per_letter.len(),
            });
        }
        let mut blocks = BTreeMap::new();
        for (letter, sq) in per_letter.iter().enumerate() {
            if sq.order() != s {
                return Err(InflationError::BlockShape {
                    letter,
                    occurrence: 0,
                    s,
                });
            }
            let grid: Vec<Vec<usize>> = sq
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(|x| letter * s + x).collect())
                .collect();
            for occurrence in 0..t {
                blocks.insert((letter, occurrence), grid.clone());
            }
        }
        Self::new(base, s, contiguous_alphabets(t, s), blocks)
    }

    /// Every block is the cyclic square of order `s` on its alphabet.
    pub fn cyclic_blocks(base: LatinSquare, s: usize) -> Result<Self, InflationError> {
        let t = base.order();
        if s == 0 {
            return Err(InflationError::ZeroFold);
        }
        Self::uniform(base, s, &vec![LatinSquare::cyclic(s); t])
    }

    pub fn base(&self) -> &LatinSquare {
        &self.base
    }

    /// Inflation factor.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Order of the base square.
    pub fn t(&self) -> usize {
        self.base.order()
    }

    /// Order of the inflated square, `s·t`.
    pub fn order(&self) -> usize {
        self.s * self.t()
    }

    /// Alphabet of base letter `letter`, sorted.
    pub fn alphabet(&self, letter: usize) -> &[usize] {
        &self.alphabets[letter]
    }

    /// The block placed at fat position `(fat_row, fat_col)`.
    pub fn block_at(&self, fat_row: usize, fat_col: usize) -> &[Vec<usize>] {
        &self.blocks[&(self.base.get(fat_row, fat_col), fat_row)]
    }

    /// Fat rows, columns and letters of the inflated square.
    pub fn structure(&self) -> InflationStructure {
        let (s, t) = (self.s, self.t());
        let blocks_of = |i: usize| (i * s..(i + 1) * s).collect::<Vec<_>>();
        InflationStructure {
            s,
            t,
            fat_rows: (0..t).map(blocks_of).collect(),
            fat_cols: (0..t).map(blocks_of).collect(),
            fat_letters: self.alphabets.clone(),
            quotient: self.base.clone(),
        }
    }
}

fn contiguous_alphabets(t: usize, s: usize) -> Vec<Vec<usize>> {
    (0..t).map(|i| (i * s..(i + 1) * s).collect()).collect()
}

fn check_block(
    grid: &[Vec<usize>],
    s: usize,
    alphabet: &[usize],
    owner: &[usize],
    letter: usize,
    occurrence: usize,
) -> Result<(), InflationError> {
    if grid.len() != s || grid.iter().any(|row| row.len() != s) {
        return Err(InflationError::BlockShape { letter, occurrence, s });
    }
    if grid.iter().flatten().any(|&x| x >= owner.len() || owner[x] != letter) {
        return Err(InflationError::BlockAlphabetMismatch { letter, occurrence });
    }
    let local: BTreeMap<usize, usize> = alphabet.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let relabelled: Vec<Vec<usize>> = grid.iter().map(|row| row.iter().map(|x| local[x]).collect()).collect();
    LatinSquare::validate(&relabelled)
        .map(|_| ())
        .map_err(|_| InflationError::BlockNotLatin { letter, occurrence })
}

/// Builds the inflated square of order `s·t`.
pub fn inflate(spec: &InflationSpec) -> LatinSquare {
    let (s, t) = (spec.s(), spec.t());
    let n = s * t;
    let mut cells = vec![0; n * n];
    for fat_row in 0..t {
        for fat_col in 0..t {
            let block = spec.block_at(fat_row, fat_col);
            for (a, line) in block.iter().enumerate() {
                for (b, &x) in line.iter().enumerate() {
                    cells[(fat_row * s + a) * n + fat_col * s + b] = x;
                }
            }
        }
    }
    LatinSquare::from_flat(n, cells).expect("inflation of valid blocks is Latin")
}

/// The subsquare partition `Q`: `t²` contiguous `s × s` blocks, numbered
/// row-major by fat position.
pub fn standard_q_partition(spec: &InflationSpec) -> Partition {
    spec.structure().q_partition()
}

/// Fat rows, columns and letters witnessing that a square is an s-fold
/// inflation of `quotient`. Block `(I, J)` (rows `fat_rows[I]` × columns
/// `fat_cols[J]`) carries exactly the letters `fat_letters[quotient(I, J)]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InflationStructure {
    pub s: usize,
    pub t: usize,
    pub fat_rows: Vec<Vec<usize>>,
    pub fat_cols: Vec<Vec<usize>>,
    pub fat_letters: Vec<Vec<usize>>,
    pub quotient: LatinSquare,
}

impl InflationStructure {
    pub fn order(&self) -> usize {
        self.s * self.t
    }

    pub fn q_partition(&self) -> Partition {
        let n = self.order();
        let mut labels = vec![0; n * n];
        for (fi, rows) in self.fat_rows.iter().enumerate() {
            for (fj, cols) in self.fat_cols.iter().enumerate() {
                for &r in rows {
                    for &c in cols {
                        labels[r * n + c] = fi * self.t + fj;
                    }
                }
            }
        }
        Partition::new(n, labels).expect("blocks are non-empty")
    }

    /// Union of the blocks indexed by the cells of `base_set` (a set of the
    /// order-`t` quotient).
    pub fn lift(&self, base_set: &CellSet) -> CellSet {
        assert_eq!(base_set.order(), self.t, "set is not on the quotient square");
        let n = self.order();
        let mut out = CellSet::empty(n);
        for cell in base_set.cells() {
            for &r in &self.fat_rows[cell.row] {
                for &c in &self.fat_cols[cell.col] {
                    out.insert(r * n + c);
                }
            }
        }
        out
    }
}

/// Every way of viewing `sq` as an s-fold inflation, for a given `s` with
/// `s | n` and `s < n`. Classes are listed in order of their least member.
pub fn inflation_structures(sq: &LatinSquare, s: usize) -> Vec<InflationStructure> {
    let n = sq.order();
    if s == 0 || s >= n || !n.is_multiple_of(s) {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    let others: Vec<usize> = (1..n).collect();
    for_each_subset(&others, s - 1, &mut |chosen| {
        let mut block_cols = vec![0];
        block_cols.extend_from_slice(chosen);
        if let Some(st) = structure_from_block(sq, s, &block_cols) {
            found.insert(st);
        }
    });
    found.into_iter().collect()
}

/// Tries to extend the subsquare on columns `block_cols` through cell
/// `(0, 0)` to a full inflation structure.
fn structure_from_block(sq: &LatinSquare, s: usize, block_cols: &[usize]) -> Option<InflationStructure> {
    let n = sq.order();
    let t = n / s;
    let alphabet: BTreeSet<usize> = block_cols.iter().map(|&c| sq.get(0, c)).collect();
    let block_rows: Vec<usize> = (0..n).filter(|&r| alphabet.contains(&sq.get(r, 0))).collect();
    debug_assert_eq!(block_rows.len(), s);
    if block_rows
        .iter()
        .any(|&r| block_cols.iter().any(|&c| !alphabet.contains(&sq.get(r, c))))
    {
        return None;
    }
    let col_classes = group_by_key(n, |c| block_rows.iter().map(|&r| sq.get(r, c)).collect());
    let row_classes = group_by_key(n, |r| block_cols.iter().map(|&c| sq.get(r, c)).collect());
    let letter_classes = {
        let mut classes: Vec<Vec<usize>> = col_classes
            .iter()
            .map(|(key, _)| key.iter().copied().collect())
            .collect();
        classes.sort();
        classes
    };
    let sized = |classes: &[(BTreeSet<usize>, Vec<usize>)]| {
        classes.len() == t
            && classes
                .iter()
                .all(|(key, members)| key.len() == s && members.len() == s)
    };
    if !sized(&col_classes) || !sized(&row_classes) {
        return None;
    }
    let mut letter_index = vec![usize::MAX; n];
    for (i, class) in letter_classes.iter().enumerate() {
        for &l in class {
            if letter_index[l] != usize::MAX {
                return None;
            }
            letter_index[l] = i;
        }
    }
    let fat_rows: Vec<Vec<usize>> = row_classes.into_iter().map(|(_, m)| m).collect();
    let fat_cols: Vec<Vec<usize>> = col_classes.into_iter().map(|(_, m)| m).collect();
    let mut quotient = vec![0; t * t];
    for (fi, rows) in fat_rows.iter().enumerate() {
        for (fj, cols) in fat_cols.iter().enumerate() {
            let class = letter_index[sq.get(rows[0], cols[0])];
            for &r in rows {
                for &c in cols {
                    if letter_index[sq.get(r, c)] != class {
                        return None;
                    }
                }
            }
            quotient[fi * t + fj] = class;
        }
    }
    Some(InflationStructure {
        s,
        t,
        fat_rows,
        fat_cols,
        fat_letters: letter_classes,
        quotient: LatinSquare::from_flat(t, quotient).ok()?,
    })
}

/// Groups `0..n` by `key`, returning groups in order of least member.
fn group_by_key(n: usize, key: impl Fn(usize) -> BTreeSet<usize>) -> Vec<(BTreeSet<usize>, Vec<usize>)> {
    let mut groups: Vec<(BTreeSet<usize>, Vec<usize>)> = Vec::new();
    for x in 0..n {
        let k = key(x);
        match groups.iter_mut().find(|(g, _)| *g == k) {
            Some((_, members)) => members.push(x),
            None => groups.push((k, vec![x])),
        }
    }
    groups
}

/// Calls `f` on every `k`-subset of `items`, in lexicographic order.
pub(crate) fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        let need = k - acc.len();
        for i in start..=items.len().saturating_sub(need) {
            if i >= items.len() {
                break;
            }
            acc.push(items[i]);
            rec(items, k, i + 1, acc, f);
            acc.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::partition::{quotient_matrix, Equitability};

    #[test]
    fn smallest_inflation() {
        let spec = InflationSpec::cyclic_blocks(LatinSquare::cyclic(2), 2).unwrap();
        let sq = inflate(&spec);
        assert_eq!(
            sq.rows(),
            vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]
        );
        let q = standard_q_partition(&spec);
        assert_eq!(q.sizes(), &[4, 4, 4, 4]);
    }

    #[test]
    fn unit_fold_is_identity() {
        let base = LatinSquare::cyclic(3);
        let spec = InflationSpec::cyclic_blocks(base.clone(), 1).unwrap();
        assert_eq!(inflate(&spec), base);
        assert_eq!(standard_q_partition(&spec), Partition::discrete(3));
    }

    #[test]
    fn q_partition_of_six_is_equitable() {
        let spec = InflationSpec::cyclic_blocks(LatinSquare::cyclic(2), 3).unwrap();
        let sq = inflate(&spec);
        assert_eq!(sq.order(), 6);
        let p = standard_q_partition(&spec);
        assert_eq!(p.sizes(), &[9, 9, 9, 9]);
        let g = build_graph(&sq);
        let Equitability::Equitable(q) = quotient_matrix(&g, &p).unwrap() else {
            panic!("Q must be equitable");
        };
        // 3(s-1)I + sA(K4) with s = 3
        let expected: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 6 } else { 3 }).collect())
            .collect();
        assert_eq!(q.to_rows(), expected);
    }

    #[test]
    fn spec_validation_errors() {
        let base = LatinSquare::cyclic(2);
        let blk = vec![vec![0, 1], vec![1, 0]];
        let mut blocks = BTreeMap::new();
        for key in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            blocks.insert(key, blk.clone());
        }
        assert_eq!(
            InflationSpec::new(base.clone(), 2, vec![vec![0, 1], vec![1, 2]], blocks.clone()).unwrap_err(),
            InflationError::AlphabetOverlap { value: 1 }
        );
        assert!(matches!(
            InflationSpec::new(base.clone(), 2, vec![vec![0, 1], vec![2, 3]], blocks.clone()),
            Err(InflationError::BlockAlphabetMismatch { letter: 1, .. })
        ));
        let mut bad = blocks.clone();
        bad.insert((1, 0), vec![vec![2, 3], vec![2, 3]]);
        bad.insert((1, 1), vec![vec![2, 3], vec![3, 2]]);
        assert_eq!(
            InflationSpec::new(base, 2, vec![vec![0, 1], vec![2, 3]], bad).unwrap_err(),
            InflationError::BlockNotLatin {
                letter: 1,
                occurrence: 0
            }
        );
    }

    #[test]
    fn per_occurrence_blocks_may_differ() {
        let base = LatinSquare::cyclic(2);
        let mut blocks = BTreeMap::new();
        blocks.insert((0, 0), vec![vec![0, 1], vec![1, 0]]);
        blocks.insert((0, 1), vec![vec![1, 0], vec![0, 1]]);
        blocks.insert((1, 0), vec![vec![2, 3], vec![3, 2]]);
        blocks.insert((1, 1), vec![vec![3, 2], vec![2, 3]]);
        let spec = InflationSpec::new(base, 2, vec![vec![0, 1], vec![2, 3]], blocks).unwrap();
        let sq = inflate(&spec);
        assert_eq!(sq.get(2, 2), 1);
        assert_eq!(sq.get(0, 0), 0);
    }

    #[test]
    fn discovers_structures() {
        let spec = InflationSpec::cyclic_blocks(LatinSquare::cyclic(3), 2).unwrap();
        let sq = inflate(&spec);
        let found = inflation_structures(&sq, 2);
        assert!(found.contains(&spec.structure()));
        // Z6 has a unique subgroup of order 2 and of order 3.
        let z6 = LatinSquare::cyclic(6);
        assert_eq!(inflation_structures(&z6, 2).len(), 1);
        assert_eq!(inflation_structures(&z6, 3).len(), 1);
        // Klein four-group: three subgroups of order 2.
        let klein = inflate(&InflationSpec::cyclic_blocks(LatinSquare::cyclic(2), 2).unwrap());
        assert_eq!(inflation_structures(&klein, 2).len(), 3);
        assert_eq!(inflation_structures(&LatinSquare::cyclic(5), 2).len(), 0);
    }

    #[test]
    fn subsets_enumeration() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 2]);
        let mut empty = 0;
        for_each_subset(&[1, 2], 0, &mut |_| empty += 1);
        assert_eq!(empty, 1);
    }
}
