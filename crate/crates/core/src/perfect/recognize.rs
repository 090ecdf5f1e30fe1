//! Recognition of slender `(n-3)`-perfect sets as inflated corner sets.
//!
//! With `a = 2|S|/n`, `s = n - a` and `t = n/s`, the rows split into classes
//! `R_1..R_t` of size `s` where rows of `R_i` meet `S` in `n - is` cells.
//! Columns and letters split into classes `C_i`, `L_i` in the same way, and
//! block `R_i × C_j` carries the letters of `L_{i-j+1}` (outside `S`) when
//! `j ≤ i` and of `L_{t-j+i+1}` (inside `S`) when `j > i`. Renumbering fat
//! row `i` as `i - 1`, fat column `j` as `t - j` and fat letter `l` as
//! `(l - 2) mod t` turns this into the inflated cyclic square with `S` on
//! the fat cells `I + J < t - 1`.

use std::fmt;

use thiserror::Error;

use crate::cellset::CellSet;
use crate::latin::{Isotopy, LatinSquare, Permutation};
use crate::perfect::profile::{slice_profile, Line};

/// Why a set was not recognized. Each variant names the first failed check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("set has order {set}, square has order {square}")]
    OrderMismatch { square: usize, set: usize },
    #[error("order must be at least 2")]
    OrderTooSmall,
    #[error("set is empty")]
    Empty,
    #[error("set is the whole square")]
    Full,
    #[error("set contains {0}, so it is not slender")]
    NotSlender(Line),
    #[error("2|S| = {twice_size} is not divisible by n = {n}")]
    NonIntegralA { twice_size: usize, n: usize },
    #[error("a = {a} gives block size s = n - a outside 1..n for n = {n}")]
    FoldOutOfRange { a: usize, n: usize },
    #[error("block size s = {s} does not divide n = {n} into at least two blocks")]
    FoldDoesNotDivide { s: usize, n: usize },
    #[error("no row meets the set in a = {a} cells")]
    NoMaxSlice { a: usize },
    #[error("row {row} meets the set in {size} cells, not of the form n - is")]
    SliceGap { row: usize, size: usize },
    #[error("{count} rows meet the set in {size} cells, expected {s}")]
    RowClassSize { size: usize, count: usize, s: usize },
    #[error("column classes overlap at column {col}")]
    ColumnClassOverlap { col: usize },
    #[error("letter classes overlap at letter {letter}")]
    LetterClassOverlap { letter: usize },
    #[error("cell ({row}, {col}) has letter {letter} outside its fat letter")]
    BlockLetter { row: usize, col: usize, letter: usize },
    #[error("cell ({row}, {col}) is on the wrong side of the fat back-diagonal")]
    RegionMismatch { row: usize, col: usize },
}

/// Witness that `S` is an inflated corner set.
///
/// `fat_rows[I]`, `fat_cols[J]`, `fat_letters[L]` are listed in the
/// canonical numbering: after applying `relabelling`, fat row `I` occupies
/// rows `I·s .. (I+1)·s` (members in increasing order), block `(I, J)`
/// carries letters `((I + J) mod t)·s ..`, and `S` becomes the union of the
/// blocks with `I + J < t - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerInflationCertificate {
    pub n: usize,
    pub s: usize,
    pub t: usize,
    pub a: usize,
    pub fat_rows: Vec<Vec<usize>>,
    pub fat_cols: Vec<Vec<usize>>,
    pub fat_letters: Vec<Vec<usize>>,
    pub relabelling: Isotopy,
}

impl CornerInflationCertificate {
    /// The inflated corner region in canonical position.
    pub fn canonical_region(n: usize, s: usize) -> CellSet {
        let t = n / s;
        CellSet::from_fn(n, |r, c| r / s + c / s + 1 < t)
    }

    /// The set this certificate describes, in the original coordinates.
    pub fn cells(&self) -> CellSet {
        self.relabelling
            .inverse()
            .map_set(&Self::canonical_region(self.n, self.s))
    }

    /// Checks the certificate against a square and set from scratch.
    pub fn verify(&self, sq: &LatinSquare, set: &CellSet) -> bool {
        let (n, s, t) = (self.n, self.s, self.t);
        if sq.order() != n || set.order() != n || s * t != n || t < 2 || self.a + s != n {
            return false;
        }
        let Ok(relabelled) = sq.relabel(&self.relabelling) else {
            return false;
        };
        let blocks_ok = (0..n).all(|r| (0..n).all(|c| relabelled.get(r, c) / s == (r / s + c / s) % t));
        let classes_ok = [
            (&self.fat_rows, &self.relabelling.rows),
            (&self.fat_cols, &self.relabelling.cols),
            (&self.fat_letters, &self.relabelling.letters),
        ]
        .iter()
        .all(|(classes, perm)| {
            classes.len() == t
                && classes.iter().enumerate().all(|(i, class)| {
                    class.len() == s
                        && class
                            .iter()
                            .enumerate()
                            .all(|(pos, &x)| x < n && perm.apply(x) == i * s + pos)
                })
        });
        blocks_ok && classes_ok && self.relabelling.map_set(set) == Self::canonical_region(n, s)
    }
}

impl fmt::Display for CornerInflationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "corner-inflation")?;
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "s {}", self.s)?;
        writeln!(f, "t {}", self.t)?;
        writeln!(f, "a {}", self.a)?;
        for (name, classes) in [
            ("fat-row", &self.fat_rows),
            ("fat-col", &self.fat_cols),
            ("fat-letter", &self.fat_letters),
        ] {
            for (i, class) in classes.iter().enumerate() {
                writeln!(f, "{name} {i}: {}", join(class))?;
            }
        }
        writeln!(f, "row-map {}", join(self.relabelling.rows.images()))?;
        writeln!(f, "col-map {}", join(self.relabelling.cols.images()))?;
        writeln!(f, "letter-map {}", join(self.relabelling.letters.images()))
    }
}

/// Accepts exactly the slender `(n-3)`-perfect sets, returning a
/// certificate, and otherwise names the first check that failed.
pub fn recognize(sq: &LatinSquare, set: &CellSet) -> Result<CornerInflationCertificate, Rejection> {
    let n = sq.order();
    if set.order() != n {
        return Err(Rejection::OrderMismatch {
            square: n,
            set: set.order(),
        });
    }
    if n < 2 {
        return Err(Rejection::OrderTooSmall);
    }
    if set.is_empty() {
        return Err(Rejection::Empty);
    }
    if set.len() == n * n {
        return Err(Rejection::Full);
    }
    let profile = slice_profile(sq, set);
    if let Some(&line) = profile.full_lines().first() {
        return Err(Rejection::NotSlender(line));
    }
    let a = profile.a.ok_or(Rejection::NonIntegralA {
        twice_size: 2 * set.len(),
        n,
    })?;
    if a >= n {
        return Err(Rejection::FoldOutOfRange { a, n });
    }
    let s = n - a;
    if !n.is_multiple_of(s) || n / s < 2 {
        return Err(Rejection::FoldDoesNotDivide { s, n });
    }
    let t = n / s;
    let rho = &profile.rho;
    let first = rho.iter().position(|&x| x == a).ok_or(Rejection::NoMaxSlice { a })?;

    // Row classes: R_i holds the rows with n - is cells in S.
    let mut row_classes = vec![Vec::new(); t];
    for (row, &size) in rho.iter().enumerate() {
        if size > n - s || !(n - size).is_multiple_of(s) {
            return Err(Rejection::SliceGap { row, size });
        }
        row_classes[(n - size) / s - 1].push(row);
    }
    for (i, class) in row_classes.iter().enumerate() {
        if class.len() != s {
            return Err(Rejection::RowClassSize {
                size: n - (i + 1) * s,
                count: class.len(),
                s,
            });
        }
    }
    debug_assert_eq!(row_classes[0][0], first);

    // C_1 and L_1 from the first row of R_1; L_i from the lead row of R_i on
    // C_1; C_i from where the lead row of R_i shows the letters of L_1.
    let c1: Vec<usize> = (0..n).filter(|&c| !set.contains_cell(first, c)).collect();
    let l1: Vec<usize> = c1.iter().map(|&c| sq.get(first, c)).collect();
    let mut col_class = vec![usize::MAX; n];
    let mut letter_class = vec![usize::MAX; n];
    for (i, rows) in row_classes.iter().enumerate() {
        let lead = rows[0];
        for &c in &c1 {
            let letter = sq.get(lead, c);
            if letter_class[letter] != usize::MAX {
                return Err(Rejection::LetterClassOverlap { letter });
            }
            letter_class[letter] = i;
        }
        for &letter in &l1 {
            let col = sq.column_of(lead, letter);
            if col_class[col] != usize::MAX {
                return Err(Rejection::ColumnClassOverlap { col });
            }
            col_class[col] = i;
        }
    }

    // Every block: letters from the predicted class, and membership in S
    // exactly above the fat diagonal (0-based: j > i).
    for (i, rows) in row_classes.iter().enumerate() {
        for &row in rows {
            for (col, &j) in col_class.iter().enumerate() {
                let letter = sq.get(row, col);
                let expected = (i + t - j) % t;
                if letter_class[letter] != expected {
                    return Err(Rejection::BlockLetter { row, col, letter });
                }
                if set.contains_cell(row, col) != (j > i) {
                    return Err(Rejection::RegionMismatch { row, col });
                }
            }
        }
    }

    // Canonical numbering (0-based classes i, j, l):
    // fat row i -> i, fat column j -> t-1-j, fat letter l -> (l - 1) mod t.
    let group = |class_of: &[usize], map: &dyn Fn(usize) -> usize| {
        let mut out = vec![Vec::new(); t];
        for (x, &k) in class_of.iter().enumerate() {
            out[map(k)].push(x);
        }
        out
    };
    let row_of: Vec<usize> = {
        let mut v = vec![0; n];
        for (i, rows) in row_classes.iter().enumerate() {
            for &r in rows {
                v[r] = i;
            }
        }
        v
    };
    let fat_rows = group(&row_of, &|i| i);
    let fat_cols = group(&col_class, &|j| t - 1 - j);
    let fat_letters = group(&letter_class, &|l| (l + t - 1) % t);
    let perm = |classes: &[Vec<usize>]| {
        let mut images = vec![0; n];
        for (i, class) in classes.iter().enumerate() {
            for (pos, &x) in class.iter().enumerate() {
                images[x] = i * s + pos;
            }
        }
        Permutation::new(images).expect("classes partition 0..n")
    };
    let relabelling = Isotopy::new(perm(&fat_rows), perm(&fat_cols), perm(&fat_letters));
    Ok(CornerInflationCertificate {
        n,
        s,
        t,
        a,
        fat_rows,
        fat_cols,
        fat_letters,
        relabelling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inflation::{inflate, InflationSpec};
    use crate::perfect::corner::{corner_set, lift_set};
    use crate::perfect::profile::LineKind;

    #[test]
    fn corner_of_cyclic_five_is_identity() {
        let sq = LatinSquare::cyclic(5);
        let set = corner_set(5).unwrap();
        let cert = recognize(&sq, &set).unwrap();
        assert_eq!((cert.s, cert.t, cert.a), (1, 5, 4));
        assert!(cert.relabelling.is_identity());
        assert!(cert.verify(&sq, &set));
        assert_eq!(cert.cells(), set);
    }

    #[test]
    fn half_subsquare() {
        let spec = InflationSpec::cyclic_blocks(LatinSquare::cyclic(2), 3).unwrap();
        let sq = inflate(&spec);
        let set = lift_set(&spec, &CellSet::from_indices(2, [0]));
        assert_eq!(set.len(), 9);
        let cert = recognize(&sq, &set).unwrap();
        assert_eq!((cert.s, cert.t, cert.a), (3, 2, 3));
        assert!(cert.verify(&sq, &set));
    }

    #[test]
    fn rejections() {
        let sq = LatinSquare::cyclic(5);
        let row = Line::new(LineKind::Row, 0).cells(&sq);
        assert_eq!(
            recognize(&sq, &row),
            Err(Rejection::NotSlender(Line::new(LineKind::Row, 0)))
        );
        assert_eq!(recognize(&sq, &CellSet::empty(5)), Err(Rejection::Empty));
        assert_eq!(recognize(&sq, &CellSet::full(5)), Err(Rejection::Full));
        assert!(matches!(
            recognize(&sq, &CellSet::from_indices(5, [0])),
            Err(Rejection::NonIntegralA { .. })
        ));
        // size 10 on the diagonal band but not a corner
        let set = CellSet::from_fn(5, |i, j| (j + 5 - i) % 5 < 2);
        assert!(recognize(&sq, &set).is_err());
    }

    #[test]
    fn certificate_text() {
        let sq = LatinSquare::cyclic(3);
        let cert = recognize(&sq, &corner_set(3).unwrap()).unwrap();
        let text = cert.to_string();
        assert!(text.starts_with("corner-inflation\nn 3\ns 1\nt 3\na 2\n"));
        assert!(text.contains("row-map 0 1 2\n"));
    }
}
