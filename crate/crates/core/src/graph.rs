//! Latin-square graphs and their generalisation to sets of mutually
//! orthogonal Latin squares, with exact spectral checks.
//!
//! Vertices are cells in row-major order. Two distinct cells are adjacent
//! when they share a line of any parallel class: a row, a column, or a letter
//! of one of the squares. With `m` parallel classes the graph is regular of
//! valency `m(n-1)` and, for `n > 2`, strongly regular with non-principal
//! eigenvalues `n - m` and `-m`.

use rayon::prelude::*;
use thiserror::Error;

use crate::latin::LatinSquare;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("no squares given")]
    NoSquares,
    #[error("squares {first} and {second} have different orders")]
    OrderMismatch { first: usize, second: usize },
    #[error("squares {first} and {second} are not orthogonal")]
    NotOrthogonal { first: usize, second: usize },
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    Irregular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error(
        "vertices {u} and {v} ({}) have {found} common neighbours, expected {expected}",
        if *.adjacent { "adjacent" } else { "non-adjacent" }
    )]
    NotStronglyRegular {
        u: usize,
        v: usize,
        adjacent: bool,
        found: usize,
        expected: usize,
    },
    #[error("adjacency matrix is not annihilated by its claimed minimal polynomial")]
    AnnihilatorFails,
    #[error("trace identities inconsistent: {0}")]
    TraceMismatch(String),
}

/// Graph on the cells of one or more superimposed Latin squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquareGraph {
    n: usize,
    /// `classes[k][v]` is the line of parallel class `k` through vertex `v`.
    /// Class 0 is rows, class 1 columns, the rest letters.
    classes: Vec<Vec<usize>>,
    words: usize,
    adj: Vec<u64>,
    valency: usize,
}

/// Builds the graph of a single Latin square: cells joined when they share a
/// row, column or letter.
pub fn build_graph(sq: &LatinSquare) -> LatinSquareGraph {
    let n = sq.order();
    let letters = (0..n * n).map(|v| sq.letter(v)).collect();
    LatinSquareGraph::from_classes(n, vec![row_class(n), column_class(n), letters])
}

/// Builds the graph of `m - 2` mutually orthogonal Latin squares: cells joined
/// when they share a row, a column, or a letter in one of the squares.
pub fn build_mols_graph(squares: &[LatinSquare]) -> Result<LatinSquareGraph, GraphError> {
    let first = squares.first().ok_or(GraphError::NoSquares)?;
    let n = first.order();
    for (i, sq) in squares.iter().enumerate() {
        if sq.order() != n {
            return Err(GraphError::OrderMismatch { first: 0, second: i });
        }
    }
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            if !squares[i].is_orthogonal_to(&squares[j]) {
                return Err(GraphError::NotOrthogonal { first: i, second: j });
            }
        }
    }
    let mut classes = vec![row_class(n), column_class(n)];
    for sq in squares {
        classes.push((0..n * n).map(|v| sq.letter(v)).collect());
    }
    Ok(LatinSquareGraph::from_classes(n, classes))
}

fn row_class(n: usize) -> Vec<usize> {
    (0..n * n).map(|v| v / n).collect()
}

fn column_class(n: usize) -> Vec<usize> {
    (0..n * n).map(|v| v % n).collect()
}

impl LatinSquareGraph {
    fn from_classes(n: usize, classes: Vec<Vec<usize>>) -> Self {
        let nv = n * n;
        let words = nv.div_ceil(64).max(1);
        let mut adj = vec![0u64; nv * words];
        for u in 0..nv {
            for v in 0..nv {
                if u != v && classes.iter().any(|class| class[u] == class[v]) {
                    adj[u * words + v / 64] |= 1 << (v % 64);
                }
            }
        }
        let valency = classes.len() * n.saturating_sub(1);
        LatinSquareGraph {
            n,
            classes,
            words,
            adj,
            valency,
        }
    }

    /// Order of the underlying square(s).
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.n * self.n
    }

    /// Number of parallel classes `m` (3 for a single Latin square).
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Line through `v` in parallel class `class`.
    pub fn line_of(&self, class: usize, v: usize) -> usize {
        self.classes[class][v]
    }

    /// The valency `k = m(n-1)`, which is also the principal eigenvalue.
    pub fn valency(&self) -> usize {
        self.valency
    }

    /// `(k, n - m, -m)`: principal eigenvalue, then the two non-principal
    /// eigenvalues of the strongly regular graph.
    pub fn eigenvalues(&self) -> (i64, i64, i64) {
        let m = self.classes.len() as i64;
        let n = self.n as i64;
        (self.valency as i64, n - m, -m)
    }

    /// Bit-set row of the adjacency matrix.
    pub fn adjacency_row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency_row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_vertices()).filter(move |&u| self.is_adjacent(v, u))
    }

    /// Number of neighbours of `v` inside the bit set `mask`.
    pub fn neighbors_in(&self, v: usize, mask: &[u64]) -> usize {
        self.adjacency_row(v)
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.neighbors_in(u, self.adjacency_row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nv = self.num_vertices();
        (0..nv).flat_map(move |u| {
            (u + 1..nv)
                .filter(move |&v| self.is_adjacent(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let nv = self.num_vertices();
        let mut a = IntMatrix::zeros(nv, nv);
        for u in 0..nv {
            for v in 0..nv {
                if self.is_adjacent(u, v) {
                    a[(u, v)] = 1;
                }
            }
        }
        a
    }

    /// Exact check that `(A - kI)(A - (n-m)I)(A + mI) = 0`.
    pub fn annihilator_vanishes(&self) -> bool {
        let (k, high, low) = self.eigenvalues();
        self.adjacency_matrix().product_of_shifts(&[k, high, low]).is_zero()
    }

    /// Spectrum derived exactly from the annihilating polynomial and the
    /// trace identities `tr A = 0`, `tr A² = N·k`.
    pub fn exact_spectrum(&self) -> Result<SpectrumSummary, GraphError> {
        let nv = self.num_vertices() as i64;
        let (k, high, low) = self.eigenvalues();
        if nv == 1 {
            return Ok(SpectrumSummary::from_pairs(vec![(0, 1)]));
        }
        if !self.annihilator_vanishes() {
            return Err(GraphError::AnnihilatorFails);
        }
        let a = self.adjacency_matrix();
        let tr1 = a.trace();
        let tr2 = (&a * &a).trace();
        if tr1 != 0 {
            return Err(GraphError::TraceMismatch(format!("tr A = {tr1}")));
        }
        // k is simple (the graph is connected); solve the remaining two
        // multiplicities from tr A = 0.
        let num = -k - low * (nv - 1);
        let den = high - low;
        if num % den != 0 {
            return Err(GraphError::TraceMismatch(format!(
                "multiplicity of {high} would be {num}/{den}"
            )));
        }
        let m_high = num / den;
        let m_low = nv - 1 - m_high;
        if m_high < 0 || m_low < 0 {
            return Err(GraphError::TraceMismatch(format!(
                "negative multiplicities {m_high}, {m_low}"
            )));
        }
        let expected_tr2 = k * k + m_high * high * high + m_low * low * low;
        if tr2 != expected_tr2 || tr2 != nv * k {
            return Err(GraphError::TraceMismatch(format!(
                "tr A² = {tr2}, multiplicities give {expected_tr2}, N·k = {}",
                nv * k
            )));
        }
        Ok(SpectrumSummary::from_pairs(vec![
            (k, 1),
            (high, m_high as usize),
            (low, m_low as usize),
        ]))
    }
}

/// Eigenvalues with multiplicities, sorted by decreasing eigenvalue, with
/// zero multiplicities dropped and coincident values merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSummary {
    pub entries: Vec<(i64, usize)>,
}

impl SpectrumSummary {
    pub fn from_pairs(pairs: Vec<(i64, usize)>) -> Self {
        let mut entries: Vec<(i64, usize)> = Vec::new();
        for (value, mult) in pairs {
            if mult == 0 {
                continue;
            }
            match entries.iter_mut().find(|(v, _)| *v == value) {
                Some(entry) => entry.1 += mult,
                None => entries.push((value, mult)),
            }
        }
        entries.sort_by_key(|e| std::cmp::Reverse(e.0));
        SpectrumSummary { entries }
    }

    pub fn multiplicity(&self, value: i64) -> usize {
        self.entries.iter().find(|(v, _)| *v == value).map_or(0, |(_, m)| *m)
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }
}

/// Spectrum of the graph of any Latin square of order `n`:
/// `3(n-1)` once, `n-3` with multiplicity `3(n-1)`, `-3` with
/// multiplicity `(n-1)(n-2)`.
pub fn closed_form_spectrum(n: usize) -> SpectrumSummary {
    assert!(n >= 1, "order must be positive");
    let ni = n as i64;
    SpectrumSummary::from_pairs(vec![
        (3 * (ni - 1), 1),
        (ni - 3, 3 * (n - 1)),
        (-3, (n - 1) * (n.saturating_sub(2))),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrongRegularity {
    SingleVertex,
    /// `K_N`: every pair adjacent, so `μ` is undefined.
    Complete {
        vertices: usize,
        valency: usize,
    },
    Parameters {
        vertices: usize,
        valency: usize,
        lambda: usize,
        mu: usize,
    },
}

/// Counts common neighbours over every vertex pair and confirms they depend
/// only on adjacency.
pub fn verify_strong_regularity(g: &LatinSquareGraph) -> Result<StrongRegularity, GraphError> {
    let nv = g.num_vertices();
    if nv == 1 {
        return Ok(StrongRegularity::SingleVertex);
    }
    let k = g.valency();
    for v in 0..nv {
        let degree = g.degree(v);
        if degree != k {
            return Err(GraphError::Irregular {
                vertex: v,
                degree,
                expected: k,
            });
        }
    }
    let rows: Vec<Vec<(usize, bool, usize)>> = (0..nv)
        .into_par_iter()
        .map(|u| {
            (u + 1..nv)
                .map(|v| (v, g.is_adjacent(u, v), g.common_neighbors(u, v)))
                .collect()
        })
        .collect();
    let mut lambda = None;
    let mut mu = None;
    for (u, row) in rows.iter().enumerate() {
        for &(v, adjacent, found) in row {
            let slot = if adjacent { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(found),
                Some(expected) if expected != found => {
                    return Err(GraphError::NotStronglyRegular {
                        u,
                        v,
                        adjacent,
                        found,
                        expected,
                    })
                }
                Some(_) => {}
            }
        }
    }
    Ok(match mu {
        None => StrongRegularity::Complete {
            vertices: nv,
            valency: k,
        },
        Some(mu) => StrongRegularity::Parameters {
            vertices: nv,
            valency: k,
            lambda: lambda.unwrap_or(0),
            mu,
        },
    })
}
