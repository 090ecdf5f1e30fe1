//! Corner sets, the three-part partition of the cyclic square, lifting
//! through inflations, and generation of every inflated corner set of a
//! given square.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cellset::CellSet;
use crate::inflation::{inflation_structures, InflationSpec};
use crate::latin::{Isotopy, LatinSquare, Permutation};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CornerError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
}

/// Cells `(i, j)` of the cyclic square with `i + j < n - 1`.
pub fn corner_set(n: usize) -> Result<CellSet, CornerError> {
    if n < 2 {
        return Err(CornerError::OrderTooSmall(n));
    }
    Ok(CellSet::from_fn(n, |i, j| i + j < n - 1))
}

/// Parts `i + j < n - 1`, `i + j = n - 1` and `i + j > n - 1`, labelled
/// 0, 1, 2.
pub fn construction2_partition(n: usize) -> Result<Partition, CornerError> {
    if n < 2 {
        return Err(CornerError::OrderTooSmall(n));
    }
    let labels = (0..n * n)
        .map(|v| {
            let d = v / n + v % n;
            match d.cmp(&(n - 1)) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Greater => 2,
            }
        })
        .collect();
    Ok(Partition::new(n, labels).expect("all three parts are non-empty for n >= 2"))
}

/// Union of the `s × s` blocks of the inflated square indexed by the cells
/// of `base_set`.
pub fn lift_set(spec: &InflationSpec, base_set: &CellSet) -> CellSet {
    spec.structure().lift(base_set)
}

/// Every isotopy carrying `sq` onto the cyclic square of the same order:
/// `sq.relabel(iso)` is `cyclic(n)` for each returned `iso`.
pub fn cyclic_isotopies(sq: &LatinSquare) -> Vec<Isotopy> {
    let n = sq.order();
    let mut search = IsotopySearch {
        sq,
        n,
        vals: vec![None; 3 * n],
        // row 0 and column 0 first, then letters: each letter choice then
        // forces a row and a column through propagation
        order: [0, n]
            .into_iter()
            .chain(2 * n..3 * n)
            .chain(1..n)
            .chain(n + 1..2 * n)
            .collect(),
        used: vec![vec![false; n]; 3],
        found: Vec::new(),
    };
    search.run();
    search.found
}

struct IsotopySearch<'a> {
    sq: &'a LatinSquare,
    n: usize,
    // phi for rows, then psi for columns, then chi for letters
    vals: Vec<Option<usize>>,
    order: Vec<usize>,
    used: Vec<Vec<bool>>,
    found: Vec<Isotopy>,
}

impl IsotopySearch<'_> {
    fn run(&mut self) {
        let Some(var) = self.order.iter().copied().find(|&v| self.vals[v].is_none()) else {
            let n = self.n;
            let perm = |k: usize| {
                Permutation::new(self.vals[k * n..(k + 1) * n].iter().map(|x| x.unwrap()).collect())
                    .expect("assignments are injective")
            };
            self.found.push(Isotopy::new(perm(0), perm(1), perm(2)));
            return;
        };
        let kind = var / self.n;
        for value in 0..self.n {
            if self.used[kind][value] {
                continue;
            }
            let mut trail = Vec::new();
            if self.assign(var, value, &mut trail) && self.propagate(&mut trail) {
                self.run();
            }
            for v in trail.into_iter().rev() {
                let k = v / self.n;
                let x = self.vals[v].take().unwrap();
                self.used[k][x] = false;
            }
        }
    }

    fn assign(&mut self, var: usize, value: usize, trail: &mut Vec<usize>) -> bool {
        let kind = var / self.n;
        if self.used[kind][value] {
            return false;
        }
        self.used[kind][value] = true;
        self.vals[var] = Some(value);
        trail.push(var);
        true
    }

    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for r in 0..n {
                for c in 0..n {
                    let l = self.sq.get(r, c);
                    let (ri, ci, li) = (r, n + c, 2 * n + l);
                    match (self.vals[ri], self.vals[ci], self.vals[li]) {
                        (Some(p), Some(q), Some(x)) => {
                            if (p + q) % n != x {
                                return false;
                            }
                        }
                        (Some(p), Some(q), None) => {
                            if !self.assign(li, (p + q) % n, trail) {
                                return false;
                            }
                            changed = true;
                        }
                        (Some(p), None, Some(x)) => {
                            if !self.assign(ci, (x + n - p) % n, trail) {
                                return false;
                            }
                            changed = true;
                        }
                        (None, Some(q), Some(x)) => {
                            if !self.assign(ri, (x + n - q) % n, trail) {
                                return false;
                            }
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

/// Preimage of the corner set of the cyclic square under `iso`.
pub fn corner_preimage(iso: &Isotopy, n: usize) -> CellSet {
    CellSet::from_fn(n, |r, c| iso.rows.apply(r) + iso.cols.apply(c) < n - 1)
}

/// All slender `(n-3)`-perfect sets of `sq`, obtained as inflated corner
/// sets over every inflation structure with quotient order at least 2.
/// Sorted and free of duplicates.
pub fn slender_perfect_sets(sq: &LatinSquare) -> Vec<CellSet> {
    let n = sq.order();
    let mut out = BTreeSet::new();
    for s in (1..n).filter(|&s| n.is_multiple_of(s)) {
        for structure in inflation_structures(sq, s) {
            for iso in cyclic_isotopies(&structure.quotient) {
                out.insert(structure.lift(&corner_preimage(&iso, structure.t)));
            }
        }
    }
    out.into_iter().collect()
}
