//! Sets and partitions for the eigenvalue `-3`: contrasts, transversals,
//! partitions induced by an orthogonal mate, and the strength-two
//! orthogonal-array condition.

use thiserror::Error;

use crate::cellset::CellSet;
use crate::latin::LatinSquare;
use crate::partition::{Partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Neg3Error {
    #[error("orders differ: {left} and {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("the mate is not orthogonal to the square")]
    NotOrthogonal,
    #[error("transversals overlap at cell ({row}, {col})")]
    Overlap { row: usize, col: usize },
    #[error("not a transversal: {0}")]
    BadTransversal(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Line sums of the contrast vector `z`, which is `n² - m` on `S` and `-m`
/// elsewhere, `m = |S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContrastReport {
    pub n: usize,
    pub m: usize,
    pub row_sums: Vec<i64>,
    pub col_sums: Vec<i64>,
    pub letter_sums: Vec<i64>,
}

impl ContrastReport {
    pub fn new(sq: &LatinSquare, set: &CellSet) -> Self {
        let n = sq.order();
        assert_eq!(set.order(), n, "set and square have different orders");
        let m = set.len() as i64;
        let nn = (n * n) as i64;
        let mut row_sums = vec![0; n];
        let mut col_sums = vec![0; n];
        let mut letter_sums = vec![0; n];
        for v in 0..n * n {
            let z = if set.contains(v) { nn - m } else { -m };
            row_sums[v / n] += z;
            col_sums[v % n] += z;
            letter_sums[sq.letter(v)] += z;
        }
        ContrastReport {
            n,
            m: set.len(),
            row_sums,
            col_sums,
            letter_sums,
        }
    }

    pub fn all_zero(&self) -> bool {
        self.row_sums
            .iter()
            .chain(&self.col_sums)
            .chain(&self.letter_sums)
            .all(|&x| x == 0)
    }
}

/// `S` is `-3`-perfect iff it is non-empty, proper, and every line sum of
/// its contrast vanishes, i.e. every line meets `S` in `|S|/n` cells.
pub fn is_neg3_perfect(sq: &LatinSquare, set: &CellSet) -> (bool, ContrastReport) {
    let report = ContrastReport::new(sq, set);
    (set.is_proper() && report.all_zero(), report)
}

/// One cell in each row, column and letter; `cols[r]` is the column chosen
/// in row `r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transversal {
    cols: Vec<usize>,
}

impl Transversal {
    pub fn new(sq: &LatinSquare, cols: Vec<usize>) -> Result<Self, Neg3Error> {
        let n = sq.order();
        if cols.len() != n {
            return Err(Neg3Error::BadTransversal(format!(
                "{} entries for order {n}",
                cols.len()
            )));
        }
        let mut col_seen = vec![false; n];
        let mut letter_seen = vec![false; n];
        for (r, &c) in cols.iter().enumerate() {
            if c >= n {
                return Err(Neg3Error::BadTransversal(format!("column {c} out of range")));
            }
            if std::mem::replace(&mut col_seen[c], true) {
                return Err(Neg3Error::BadTransversal(format!("column {c} repeated")));
            }
            let l = sq.get(r, c);
            if std::mem::replace(&mut letter_seen[l], true) {
                return Err(Neg3Error::BadTransversal(format!("letter {l} repeated")));
            }
        }
        Ok(Transversal { cols })
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn cells(&self) -> CellSet {
        let n = self.cols.len();
        CellSet::from_indices(n, self.cols.iter().enumerate().map(|(r, &c)| r * n + c))
    }
}

/// Transversals in lexicographic order of their column vectors, at most
/// `limit` of them.
pub fn find_transversals(sq: &LatinSquare, limit: Option<usize>) -> Vec<Transversal> {
    transversals_within(sq, &CellSet::full(sq.order()), limit)
}

/// Transversals using only cells of `allowed`.
pub fn transversals_within(sq: &LatinSquare, allowed: &CellSet, limit: Option<usize>) -> Vec<Transversal> {
    let n = sq.order();
    assert!(n <= 64, "transversal search supports orders up to 64");
    let mut out = Vec::new();
    if n == 0 || limit == Some(0) {
        return out;
    }
    let mut cols = Vec::with_capacity(n);
    search_transversals(sq, allowed, 0, 0, &mut cols, limit, &mut out);
    out
}

fn search_transversals(
    sq: &LatinSquare,
    allowed: &CellSet,
    used_cols: u64,
    used_letters: u64,
    cols: &mut Vec<usize>,
    limit: Option<usize>,
    out: &mut Vec<Transversal>,
) -> bool {
    let n = sq.order();
    let r = cols.len();
    if r == n {
        out.push(Transversal { cols: cols.clone() });
        return limit.is_some_and(|l| out.len() >= l);
    }
    for c in 0..n {
        let l = sq.get(r, c);
        if used_cols >> c & 1 == 1 || used_letters >> l & 1 == 1 || !allowed.contains_cell(r, c) {
            continue;
        }
        cols.push(c);
        let stop = search_transversals(sq, allowed, used_cols | 1 << c, used_letters | 1 << l, cols, limit, out);
        cols.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Union of pairwise disjoint transversals (possibly the whole square).
pub fn union_of_disjoint_transversals(n: usize, ts: &[Transversal]) -> Result<CellSet, Neg3Error> {
    let mut acc = CellSet::empty(n);
    for t in ts {
        if t.cols.len() != n {
            return Err(Neg3Error::OrderMismatch {
                left: n,
                right: t.cols.len(),
            });
        }
        for (row, &col) in t.cols.iter().enumerate() {
            let v = row * n + col;
            if acc.contains(v) {
                return Err(Neg3Error::Overlap { row, col });
            }
            acc.insert(v);
        }
    }
    Ok(acc)
}

/// Repeatedly removes the lexicographically first transversal inside the
/// remaining part of `S`. Returns the transversals when this exhausts `S`.
/// A `None` does not prove that no disjoint cover exists.
pub fn greedy_transversal_cover(sq: &LatinSquare, set: &CellSet) -> Option<Vec<Transversal>> {
    let mut rest = set.clone();
    let mut picked = Vec::new();
    while !rest.is_empty() {
        let t = transversals_within(sq, &rest, Some(1)).pop()?;
        rest = rest.difference(&t.cells());
        picked.push(t);
    }
    Some(picked)
}

/// Cells grouped by the letter of an orthogonal mate: cell `(r, c)` goes
/// to part `grouping[mate(r, c)]`.
pub fn partition_from_mate(sq: &LatinSquare, mate: &LatinSquare, grouping: &[usize]) -> Result<Partition, Neg3Error> {
    if sq.order() != mate.order() {
        return Err(Neg3Error::OrderMismatch {
            left: sq.order(),
            right: mate.order(),
        });
    }
    if !sq.is_orthogonal_to(mate) {
        return Err(Neg3Error::NotOrthogonal);
    }
    let n = sq.order();
    if grouping.len() != n {
        return Err(PartitionError::GroupingLength {
            expected: n,
            got: grouping.len(),
        }
        .into());
    }
    let p = Partition::new(n, mate.cells().iter().map(|&g| grouping[g]).collect())?;
    if p.num_parts() < 2 {
        return Err(PartitionError::TrivialCoarsening.into());
    }
    Ok(p)
}

/// A pair of partitions among rows, columns, letters and `p` whose parts
/// do not meet in proportion to their sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityFailure {
    pub first: &'static str,
    pub second: &'static str,
    pub part_a: usize,
    pub part_b: usize,
    pub meet: usize,
}

/// Checks `|P_i ∩ Q_j| · n² = |P_i| · |Q_j|` for every pair of partitions
/// `P ≠ Q` among rows, columns, letters and `p`.
pub fn strength_two_check(sq: &LatinSquare, p: &Partition) -> Result<(), OrthogonalityFailure> {
    let n = sq.order();
    assert_eq!(p.order(), n, "partition and square have different orders");
    let labels: [(&'static str, Vec<usize>, usize); 4] = [
        ("rows", (0..n * n).map(|v| v / n).collect(), n),
        ("columns", (0..n * n).map(|v| v % n).collect(), n),
        ("letters", sq.cells().to_vec(), n),
        ("partition", p.labels().to_vec(), p.num_parts()),
    ];
    for a in 0..4 {
        for b in a + 1..4 {
            let (name_a, la, ra) = &labels[a];
            let (name_b, lb, rb) = &labels[b];
            let mut size_a = vec![0; *ra];
            let mut size_b = vec![0; *rb];
            let mut meet = vec![0; ra * rb];
            for v in 0..n * n {
                size_a[la[v]] += 1;
                size_b[lb[v]] += 1;
                meet[la[v] * rb + lb[v]] += 1;
            }
            for i in 0..*ra {
                for j in 0..*rb {
                    if meet[i * rb + j] * n * n != size_a[i] * size_b[j] {
                        return Err(OrthogonalityFailure {
                            first: name_a,
                            second: name_b,
                            part_a: i,
                            part_b: j,
                            meet: meet[i * rb + j],
                        });
                    }
                }
            }
        }
    }
    Ok(())
}
