//! Latin squares, cells, and isotopies (row/column/letter relabellings).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatinError {
    #[error("square must have order at least 1")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("letter {letter} at ({row},{col}) is outside [0,{n})")]
    LetterOutOfRange {
        row: usize,
        col: usize,
        letter: usize,
        n: usize,
    },
    #[error("row {row} repeats letter {letter}")]
    RowRepeat { row: usize, letter: usize },
    #[error("column {col} repeats letter {letter}")]
    ColumnRepeat { col: usize, letter: usize },
    #[error("not a permutation of [0,{len}): {reason}")]
    BadPermutation { len: usize, reason: String },
    #[error("permutation of length {got} applied to a square of order {n}")]
    PermutationLength { got: usize, n: usize },
}

/// A cell of a square, addressed by row and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Row-major vertex index.
    pub fn index(self, n: usize) -> usize {
        self.row * n + self.col
    }

    pub fn from_index(v: usize, n: usize) -> Self {
        Cell { row: v / n, col: v % n }
    }
}

/// An `n × n` array over letters `0..n` in which every row and every column
/// contains each letter once.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<usize>,
    /// `letter_cols[r * n + l]` is the column holding letter `l` in row `r`.
    letter_cols: Vec<usize>,
}

impl LatinSquare {
    /// Checks the Latin property of `grid` and returns the square.
    ///
    /// Rows are checked before columns, so the reported violation is the
    /// first bad row if any, otherwise the first bad column.
    pub fn validate(grid: &[Vec<usize>]) -> Result<Self, LatinError> {
        let n = grid.len();
        for (row, line) in grid.iter().enumerate() {
            if line.len() != n {
                return Err(LatinError::NotSquare {
                    row,
                    len: line.len(),
                    n,
                });
            }
        }
        Self::from_flat(n, grid.iter().flatten().copied().collect())
    }

    /// Same as [`LatinSquare::validate`] for a row-major flat array.
    pub fn from_flat(n: usize, cells: Vec<usize>) -> Result<Self, LatinError> {
        if n == 0 {
            return Err(LatinError::Empty);
        }
        if cells.len() != n * n {
            return Err(LatinError::NotSquare {
                row: cells.len() / n,
                len: cells.len() % n,
                n,
            });
        }
        for (v, &letter) in cells.iter().enumerate() {
            if letter >= n {
                return Err(LatinError::LetterOutOfRange {
                    row: v / n,
                    col: v % n,
                    letter,
                    n,
                });
            }
        }
        let mut seen = vec![false; n];
        for row in 0..n {
            seen.fill(false);
            for col in 0..n {
                let letter = cells[row * n + col];
                if std::mem::replace(&mut seen[letter], true) {
                    return Err(LatinError::RowRepeat { row, letter });
                }
            }
        }
        for col in 0..n {
            seen.fill(false);
            for row in 0..n {
                let letter = cells[row * n + col];
                if std::mem::replace(&mut seen[letter], true) {
                    return Err(LatinError::ColumnRepeat { col, letter });
                }
            }
        }
        let mut letter_cols = vec![0; n * n];
        for row in 0..n {
            for col in 0..n {
                letter_cols[row * n + cells[row * n + col]] = col;
            }
        }
        Ok(LatinSquare { n, cells, letter_cols })
    }

    /// The back-cyclic square of order `n`: letter `(i + j) mod n` at `(i, j)`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        let cells = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
        Self::from_flat(n, cells).expect("cyclic table is Latin")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.n + col]
    }

    /// Letter of the cell with row-major index `v`.
    pub fn letter(&self, v: usize) -> usize {
        self.cells[v]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Column where `letter` sits in `row`.
    pub fn column_of(&self, row: usize, letter: usize) -> usize {
        self.letter_cols[row * self.n + letter]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn row_cells(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).map(move |c| row * self.n + c)
    }

    pub fn column_cells(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).map(move |r| r * self.n + col)
    }

    pub fn letter_cells(&self, letter: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).map(move |r| r * self.n + self.column_of(r, letter))
    }

    /// Applies an isotopy: the letter at `(r, c)` moves to
    /// `(rows(r), cols(c))` and is renamed by `letters`.
    pub fn relabel(&self, iso: &Isotopy) -> Result<LatinSquare, LatinError> {
        iso.check_order(self.n)?;
        let n = self.n;
        let mut cells = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                cells[iso.rows.apply(r) * n + iso.cols.apply(c)] = iso.letters.apply(self.get(r, c));
            }
        }
        Ok(Self::from_flat(n, cells).expect("isotopy preserves the Latin property"))
    }

    /// True when superimposing the two squares yields every ordered letter
    /// pair exactly once.
    pub fn is_orthogonal_to(&self, other: &LatinSquare) -> bool {
        if self.n != other.n {
            return false;
        }
        let n = self.n;
        let mut seen = vec![false; n * n];
        self.cells
            .iter()
            .zip(&other.cells)
            .all(|(&a, &b)| !std::mem::replace(&mut seen[a * n + b], true))
    }
}

impl PartialOrd for LatinSquare {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatinSquare {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.cells().cmp(other.cells()))
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LatinSquare(n={})", self.n)?;
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation of `0..len`, stored in one-line image notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, LatinError> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &x in &images {
            if x >= len {
                return Err(LatinError::BadPermutation {
                    len,
                    reason: format!("image {x} out of range"),
                });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(LatinError::BadPermutation {
                    len,
                    reason: format!("image {x} repeated"),
                });
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Permutation {
        assert_eq!(self.len(), first.len(), "permutation lengths differ");
        Permutation(first.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }
}

/// A triple of permutations acting on rows, columns and letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Isotopy {
    pub rows: Permutation,
    pub cols: Permutation,
    pub letters: Permutation,
}

impl Isotopy {
    pub fn new(rows: Permutation, cols: Permutation, letters: Permutation) -> Self {
        Isotopy { rows, cols, letters }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(
            Permutation::identity(n),
            Permutation::identity(n),
            Permutation::identity(n),
        )
    }

    /// The isotopy "apply `self`, then `next`".
    pub fn then(&self, next: &Isotopy) -> Isotopy {
        Isotopy {
            rows: next.rows.after(&self.rows),
            cols: next.cols.after(&self.cols),
            letters: next.letters.after(&self.letters),
        }
    }

    pub fn inverse(&self) -> Isotopy {
        Isotopy {
            rows: self.rows.inverse(),
            cols: self.cols.inverse(),
            letters: self.letters.inverse(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.is_identity() && self.cols.is_identity() && self.letters.is_identity()
    }

    /// Image of a row-major cell index in an order-`n` square.
    pub fn map_cell(&self, v: usize, n: usize) -> usize {
        self.rows.apply(v / n) * n + self.cols.apply(v % n)
    }

    pub fn map_set(&self, set: &crate::CellSet) -> crate::CellSet {
        let n = set.order();
        crate::CellSet::from_indices(n, set.iter().map(|v| self.map_cell(v, n)))
    }

    fn check_order(&self, n: usize) -> Result<(), LatinError> {
        for p in [&self.rows, &self.cols, &self.letters] {
            if p.len() != n {
                return Err(LatinError::PermutationLength { got: p.len(), n });
            }
        }
        Ok(())
    }
}
