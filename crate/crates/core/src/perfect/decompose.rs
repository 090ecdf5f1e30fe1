//! Splitting an `(n-3)`-perfect set into disjoint lines and inflated corner
//! sets.

use std::collections::HashMap;
use std::fmt;

use crate::cellset::CellSet;
use crate::latin::LatinSquare;
use crate::perfect::profile::{perfect_by_slices, slice_profile, Line, LineKind};
use crate::perfect::recognize::{recognize, CornerInflationCertificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Line(Line),
    Corner(CornerInflationCertificate),
}

impl Component {
    pub fn cells(&self, sq: &LatinSquare) -> CellSet {
        match self {
            Component::Line(line) => line.cells(sq),
            Component::Corner(cert) => cert.cells(),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Line(line) => write!(f, "{line}"),
            Component::Corner(cert) => write!(f, "corner s={} t={}", cert.s, cert.t),
        }
    }
}

/// Returns pairwise disjoint components whose union is `set`, or `None`
/// when `set` is empty, the whole square, or not `(n-3)`-perfect.
///
/// Contained full lines are stripped by backtracking (letters, then rows,
/// then columns) and a slender residue must be recognized as an inflated
/// corner set. Among all decompositions reachable this way, one with the
/// fewest components is returned.
pub fn decompose(sq: &LatinSquare, set: &CellSet) -> Option<Vec<Component>> {
    let n = sq.order();
    if set.order() != n || n < 2 || !set.is_proper() {
        return None;
    }
    if !perfect_by_slices(sq, set, n as i64 - 3) {
        return None;
    }
    // failed[residue] = largest component budget known to be insufficient
    let mut failed = HashMap::new();
    for budget in 1..=3 * n + 1 {
        let mut acc = Vec::new();
        if strip(sq, set.clone(), budget, &mut acc, &mut failed) {
            return Some(acc);
        }
    }
    None
}

fn strip(
    sq: &LatinSquare,
    residue: CellSet,
    budget: usize,
    acc: &mut Vec<Component>,
    failed: &mut HashMap<CellSet, usize>,
) -> bool {
    if residue.is_empty() {
        return true;
    }
    if budget == 0 || failed.get(&residue).is_some_and(|&b| b >= budget) {
        return false;
    }
    let mut lines = slice_profile(sq, &residue).full_lines();
    lines.sort_by_key(|line| (line.kind != LineKind::Letter, line.kind, line.index));
    if lines.is_empty() {
        if let Ok(cert) = recognize(sq, &residue) {
            acc.push(Component::Corner(cert));
            return true;
        }
    } else {
        for line in lines {
            let rest = residue.difference(&line.cells(sq));
            acc.push(Component::Line(line));
            if strip(sq, rest, budget - 1, acc, failed) {
                return true;
            }
            acc.pop();
        }
    }
    let entry = failed.entry(residue).or_insert(0);
    *entry = (*entry).max(budget);
    false
}
