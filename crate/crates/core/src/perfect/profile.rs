//! Slice sizes of a cell set along rows, columns and letters.

use std::fmt;

use crate::cellset::CellSet;
use crate::latin::LatinSquare;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineKind {
    Row,
    Column,
    Letter,
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineKind::Row => "row",
            LineKind::Column => "column",
            LineKind::Letter => "letter",
        })
    }
}

/// A row, column or letter of a Latin square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line {
    pub kind: LineKind,
    pub index: usize,
}

impl Line {
    pub fn new(kind: LineKind, index: usize) -> Self {
        Line { kind, index }
    }

    pub fn cells(&self, sq: &LatinSquare) -> CellSet {
        let n = sq.order();
        match self.kind {
            LineKind::Row => CellSet::from_indices(n, sq.row_cells(self.index)),
            LineKind::Column => CellSet::from_indices(n, sq.column_cells(self.index)),
            LineKind::Letter => CellSet::from_indices(n, sq.letter_cells(self.index)),
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.index)
    }
}

/// `rho[r] = |S ∩ row r|`, `kappa[c] = |S ∩ column c|`,
/// `lambda[l] = |S ∩ letter l|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceProfile {
    pub n: usize,
    pub size: usize,
    pub rho: Vec<usize>,
    pub kappa: Vec<usize>,
    pub lambda: Vec<usize>,
    /// `2|S|/n` when that is an integer.
    pub a: Option<usize>,
}

impl SliceProfile {
    pub fn is_slender(&self) -> bool {
        let n = self.n;
        self.rho.iter().chain(&self.kappa).chain(&self.lambda).all(|&x| x < n)
    }

    /// `ρ(ω) + κ(ω) + λ(ω)` for the lines through cell `v`.
    pub fn line_sum(&self, sq: &LatinSquare, v: usize) -> usize {
        let n = self.n;
        self.rho[v / n] + self.kappa[v % n] + self.lambda[sq.letter(v)]
    }

    pub fn max_slice(&self) -> usize {
        self.rho
            .iter()
            .chain(&self.kappa)
            .chain(&self.lambda)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Lines entirely inside `S`, rows first, then columns, then letters.
    pub fn full_lines(&self) -> Vec<Line> {
        let n = self.n;
        let mut out = Vec::new();
        for (counts, kind) in [
            (&self.rho, LineKind::Row),
            (&self.kappa, LineKind::Column),
            (&self.lambda, LineKind::Letter),
        ] {
            out.extend(
                counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x == n)
                    .map(|(i, _)| Line::new(kind, i)),
            );
        }
        out
    }
}

pub fn slice_profile(sq: &LatinSquare, set: &CellSet) -> SliceProfile {
    let n = sq.order();
    assert_eq!(set.order(), n, "set and square have different orders");
    let mut rho = vec![0; n];
    let mut kappa = vec![0; n];
    let mut lambda = vec![0; n];
    for v in set.iter() {
        rho[v / n] += 1;
        kappa[v % n] += 1;
        lambda[sq.letter(v)] += 1;
    }
    let size = set.len();
    SliceProfile {
        n,
        size,
        rho,
        kappa,
        lambda,
        a: (2 * size).is_multiple_of(n).then_some(2 * size / n),
    }
}

/// No row, column or letter lies entirely inside `S`.
pub fn is_slender(sq: &LatinSquare, set: &CellSet) -> bool {
    slice_profile(sq, set).is_slender()
}

/// Decides μ-perfection from slice sizes alone: `S` is μ-perfect iff
/// `ρ(ω) + κ(ω) + λ(ω) - (μ + 3)[ω ∈ S]` is the same for every cell `ω`.
pub fn perfect_by_slices(sq: &LatinSquare, set: &CellSet, mu: i64) -> bool {
    if !set.is_proper() {
        return false;
    }
    let profile = slice_profile(sq, set);
    let n = sq.order();
    let shift = mu + 3;
    let value = |v: usize| profile.line_sum(sq, v) as i64 - if set.contains(v) { shift } else { 0 };
    let c = value(0);
    (1..n * n).all(|v| value(v) == c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_row() {
        let sq = LatinSquare::cyclic(5);
        let row = Line::new(LineKind::Row, 0).cells(&sq);
        let p = slice_profile(&sq, &row);
        assert_eq!(p.rho, vec![5, 0, 0, 0, 0]);
        assert_eq!(p.kappa, vec![1; 5]);
        assert_eq!(p.lambda, vec![1; 5]);
        assert_eq!(p.a, Some(2));
        assert!(!p.is_slender());
        assert_eq!(p.full_lines(), vec![Line::new(LineKind::Row, 0)]);
    }

    #[test]
    fn empty_is_slender() {
        let sq = LatinSquare::cyclic(3);
        assert!(is_slender(&sq, &CellSet::empty(3)));
        assert!(!perfect_by_slices(&sq, &CellSet::empty(3), 0));
    }

    #[test]
    fn single_cell_of_order_two() {
        let sq = LatinSquare::cyclic(2);
        for v in 0..4 {
            let s = CellSet::from_indices(2, [v]);
            // K4: every non-empty proper subset is perfect for -1 = n - 3.
            assert!(perfect_by_slices(&sq, &s, -1));
        }
    }
}
