//! Enumeration of all `(n-3)`-perfect sets of a square as disjoint unions
//! of lines and inflated corner sets.

use std::collections::BTreeSet;

use crate::cellset::CellSet;
use crate::latin::LatinSquare;
use crate::perfect::corner::slender_perfect_sets;
use crate::perfect::profile::{Line, LineKind};
use crate::perfect::recognize::recognize;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Only report sets with at most this many cells.
    pub size_bound: Option<usize>,
    /// Stop after this many sets; the result is then flagged as truncated.
    pub max_sets: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Sorted, without duplicates.
    pub sets: Vec<CellSet>,
    pub truncated: bool,
}

/// Every non-empty proper `(n-3)`-perfect set of `sq`, each once, in
/// increasing order.
pub fn enumerate_perfect_sets(sq: &LatinSquare, options: EnumerateOptions) -> Enumeration {
    let n = sq.order();
    if n < 2 {
        return Enumeration {
            sets: Vec::new(),
            truncated: false,
        };
    }
    let mut family: Vec<CellSet> = [LineKind::Row, LineKind::Column, LineKind::Letter]
        .into_iter()
        .flat_map(|kind| (0..n).map(move |i| Line::new(kind, i)))
        .map(|line| line.cells(sq))
        .collect();
    for corner in slender_perfect_sets(sq) {
        debug_assert!(recognize(sq, &corner).is_ok());
        family.push(corner);
    }
    let bound = options.size_bound.unwrap_or(n * n - 1).min(n * n - 1);
    let mut state = Unions {
        family: &family,
        bound,
        limit: options.max_sets,
        out: BTreeSet::new(),
        truncated: false,
    };
    state.extend(0, CellSet::empty(n));
    Enumeration {
        sets: state.out.into_iter().collect(),
        truncated: state.truncated,
    }
}

struct Unions<'a> {
    family: &'a [CellSet],
    bound: usize,
    limit: Option<usize>,
    out: BTreeSet<CellSet>,
    truncated: bool,
}

impl Unions<'_> {
    fn extend(&mut self, from: usize, current: CellSet) {
        if self.truncated {
            return;
        }
        if !current.is_empty() && !self.out.contains(&current) {
            if self.limit.is_some_and(|l| self.out.len() >= l) {
                self.truncated = true;
                return;
            }
            self.out.insert(current.clone());
        }
        for i in from..self.family.len() {
            let member = &self.family[i];
            if current.len() + member.len() > self.bound || !current.is_disjoint(member) {
                continue;
            }
            self.extend(i + 1, current.union(member));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::partition::is_mu_perfect;

    #[test]
    fn order_two_is_everything() {
        let e = enumerate_perfect_sets(&LatinSquare::cyclic(2), EnumerateOptions::default());
        assert_eq!(e.sets.len(), 14);
        assert!(!e.truncated);
    }

    #[test]
    fn all_reported_sets_are_perfect() {
        for n in 3..=4 {
            let sq = LatinSquare::cyclic(n);
            let g = build_graph(&sq);
            let e = enumerate_perfect_sets(&sq, EnumerateOptions::default());
            for s in &e.sets {
                assert!(is_mu_perfect(&g, s, n as i64 - 3).unwrap());
            }
        }
    }

    #[test]
    fn truncation_and_bound() {
        let sq = LatinSquare::cyclic(4);
        let e = enumerate_perfect_sets(
            &sq,
            EnumerateOptions {
                size_bound: None,
                max_sets: Some(5),
            },
        );
        assert_eq!(e.sets.len(), 5);
        assert!(e.truncated);
        let e = enumerate_perfect_sets(
            &sq,
            EnumerateOptions {
                size_bound: Some(4),
                max_sets: None,
            },
        );
        assert!(e.sets.iter().all(|s| s.len() <= 4));
        assert!(!e.truncated);
    }
}
