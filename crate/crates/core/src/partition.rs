//! Partitions of the cell set, equitability, exact quotient matrices and
//! their eigenvalue classification.
//!
//! All arithmetic is over the integers. Membership of the quotient spectrum
//! in `{k, θ, τ}` (the three eigenvalues of the graph) is decided by the
//! annihilating product `(M - k)(M - θ)(M - τ)`, and the multiplicities of
//! `θ` and `τ` are recovered from the trace.

use thiserror::Error;

use crate::cellset::CellSet;
use crate::graph::LatinSquareGraph;
use crate::latin::LatinSquare;
use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("expected {expected} part labels, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("part {part} is empty")]
    EmptyPart { part: usize },
    #[error("partition has no parts")]
    NoParts,
    #[error("partition of order {partition} used with a graph of order {graph}")]
    DimensionMismatch { partition: usize, graph: usize },
    #[error("cell {cell} lies in more than one part")]
    Overlap { cell: usize },
    #[error("cell {cell} lies in no part")]
    Uncovered { cell: usize },
    #[error("set must be non-empty and proper")]
    EmptyOrFull,
    #[error("grouping has {got} entries for {expected} parts")]
    GroupingLength { expected: usize, got: usize },
    #[error("coarsening must leave at least two parts")]
    TrivialCoarsening,
    #[error("matrix is not the quotient of an equitable partition: {0}")]
    NotAQuotient(String),
}

/// A labelled partition of the `n²` cells into parts `0..r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    part_of: Vec<usize>,
    sizes: Vec<usize>,
}

impl Partition {
    /// Labels must cover `0..r` with every part non-empty.
    pub fn new(n: usize, part_of: Vec<usize>) -> Result<Self, PartitionError> {
        if part_of.len() != n * n {
            return Err(PartitionError::WrongLength {
                expected: n * n,
                got: part_of.len(),
            });
        }
        let r = part_of.iter().max().map_or(0, |&m| m + 1);
        if r == 0 {
            return Err(PartitionError::NoParts);
        }
        let mut sizes = vec![0; r];
        for &p in &part_of {
            sizes[p] += 1;
        }
        if let Some(part) = sizes.iter().position(|&s| s == 0) {
            return Err(PartitionError::EmptyPart { part });
        }
        Ok(Partition { n, part_of, sizes })
    }

    /// Parts given as pairwise disjoint sets covering every cell, in order.
    pub fn from_sets(n: usize, sets: &[CellSet]) -> Result<Self, PartitionError> {
        let mut part_of = vec![usize::MAX; n * n];
        for (i, set) in sets.iter().enumerate() {
            if set.order() != n {
                return Err(PartitionError::DimensionMismatch {
                    partition: n,
                    graph: set.order(),
                });
            }
            if set.is_empty() {
                return Err(PartitionError::EmptyPart { part: i });
            }
            for v in set.iter() {
                if part_of[v] != usize::MAX {
                    return Err(PartitionError::Overlap { cell: v });
                }
                part_of[v] = i;
            }
        }
        if let Some(cell) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(PartitionError::Uncovered { cell });
        }
        Self::new(n, part_of)
    }

    /// `{S, Ω \ S}` with `S` as part 0.
    pub fn two_part(set: &CellSet) -> Result<Self, PartitionError> {
        if !set.is_proper() {
            return Err(PartitionError::EmptyOrFull);
        }
        let n = set.order();
        Self::new(n, (0..n * n).map(|v| usize::from(!set.contains(v))).collect())
    }

    pub fn rows(n: usize) -> Self {
        Self::new(n, (0..n * n).map(|v| v / n).collect()).expect("rows partition")
    }

    pub fn columns(n: usize) -> Self {
        Self::new(n, (0..n * n).map(|v| v % n).collect()).expect("columns partition")
    }

    pub fn letters(sq: &LatinSquare) -> Self {
        Self::new(sq.order(), sq.cells().to_vec()).expect("letters partition")
    }

    /// Every cell in its own part.
    pub fn discrete(n: usize) -> Self {
        Self::new(n, (0..n * n).collect()).expect("discrete partition")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn num_parts(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.part_of
    }

    pub fn part(&self, i: usize) -> CellSet {
        CellSet::from_indices(
            self.n,
            self.part_of
                .iter()
                .enumerate()
                .filter(|&(_, &p)| p == i)
                .map(|(v, _)| v),
        )
    }

    pub fn parts(&self) -> Vec<CellSet> {
        (0..self.num_parts()).map(|i| self.part(i)).collect()
    }

    /// Relabels parts in order of first appearance (row-major), so that two
    /// partitions equal up to part labels become identical.
    pub fn canonical(&self) -> Partition {
        let mut map = vec![usize::MAX; self.num_parts()];
        let mut next = 0;
        let labels = self
            .part_of
            .iter()
            .map(|&p| {
                if map[p] == usize::MAX {
                    map[p] = next;
                    next += 1;
                }
                map[p]
            })
            .collect();
        Partition::new(self.n, labels).expect("relabelling keeps parts non-empty")
    }
}

/// Exact quotient matrix of an equitable partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    matrix: IntMatrix,
    sizes: Vec<usize>,
    n: usize,
    /// Principal and the two non-principal eigenvalues of the graph.
    eigen: (i64, i64, i64),
}

impl QuotientMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[(i, j)]
    }

    pub fn num_parts(&self) -> usize {
        self.sizes.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Principal eigenvalue (the valency).
    pub fn k(&self) -> i64 {
        self.eigen.0
    }

    pub fn trace(&self) -> i64 {
        self.matrix.trace()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.to_rows()
    }

    /// Every row sums to `k`.
    pub fn row_sums_equal_k(&self) -> bool {
        (0..self.num_parts()).all(|i| self.matrix.row(i).iter().sum::<i64>() == self.k())
    }

    /// Edge double counting: `m_ij·|Δ_i| = m_ji·|Δ_j|`. Equivalent to
    /// `D^{1/2} M D^{-1/2}` being symmetric, so `M` is diagonalisable.
    pub fn is_detailed_balanced(&self) -> bool {
        let r = self.num_parts();
        (0..r).all(|i| {
            (0..r).all(|j| self.matrix[(i, j)] * self.sizes[i] as i64 == self.matrix[(j, i)] * self.sizes[j] as i64)
        })
    }
}

/// Two vertices of the same part that see different numbers of neighbours
/// in some part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonEquitableWitness {
    pub from_part: usize,
    pub to_part: usize,
    pub vertex_a: usize,
    pub count_a: usize,
    pub vertex_b: usize,
    pub count_b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equitability {
    Equitable(QuotientMatrix),
    NotEquitable(NonEquitableWitness),
}

impl Equitability {
    pub fn quotient(&self) -> Option<&QuotientMatrix> {
        match self {
            Equitability::Equitable(q) => Some(q),
            Equitability::NotEquitable(_) => None,
        }
    }

    pub fn into_quotient(self) -> Option<QuotientMatrix> {
        match self {
            Equitability::Equitable(q) => Some(q),
            Equitability::NotEquitable(_) => None,
        }
    }
}

/// Computes the quotient matrix of `p`, or a witness that `p` is not
/// equitable.
pub fn quotient_matrix(g: &LatinSquareGraph, p: &Partition) -> Result<Equitability, PartitionError> {
    if p.order() != g.order() {
        return Err(PartitionError::DimensionMismatch {
            partition: p.order(),
            graph: g.order(),
        });
    }
    let r = p.num_parts();
    let nv = g.num_vertices();
    let words = g.adjacency_row(0).len();
    let mut masks = vec![vec![0u64; words]; r];
    let mut reference = vec![usize::MAX; r];
    for v in 0..nv {
        let part = p.part_of(v);
        masks[part][v / 64] |= 1 << (v % 64);
        if reference[part] == usize::MAX {
            reference[part] = v;
        }
    }
    let mut matrix = IntMatrix::zeros(r, r);
    for i in 0..r {
        for (j, mask) in masks.iter().enumerate() {
            matrix[(i, j)] = g.neighbors_in(reference[i], mask) as i64;
        }
    }
    for v in 0..nv {
        let i = p.part_of(v);
        if v == reference[i] {
            continue;
        }
        for (j, mask) in masks.iter().enumerate() {
            let count = g.neighbors_in(v, mask);
            if count as i64 != matrix[(i, j)] {
                return Ok(Equitability::NotEquitable(NonEquitableWitness {
                    from_part: i,
                    to_part: j,
                    vertex_a: reference[i],
                    count_a: matrix[(i, j)] as usize,
                    vertex_b: v,
                    count_b: count,
                }));
            }
        }
    }
    Ok(Equitability::Equitable(QuotientMatrix {
        matrix,
        sizes: p.sizes().to_vec(),
        n: g.order(),
        eigen: g.eigenvalues(),
    }))
}

/// Spectrum of a quotient matrix relative to the graph's eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenClassification {
    pub principal: i64,
    /// `(θ, α)`: the eigenvalue `n - 3` (in general `n - m`) and its
    /// multiplicity in the quotient.
    pub high: (i64, usize),
    /// `(τ, β)`: the eigenvalue `-3` (in general `-m`) and its multiplicity.
    pub low: (i64, usize),
    /// Set when the annihilating product is non-zero: some eigenvalue lies
    /// outside the graph's spectrum, so the input was not a genuine quotient.
    /// The multiplicities are meaningless in that case.
    pub other: bool,
}

impl EigenClassification {
    /// Non-principal eigenvalues with multiplicity, largest first.
    pub fn non_principal(&self) -> Vec<i64> {
        let mut out = vec![self.high.0; self.high.1];
        out.extend(std::iter::repeat_n(self.low.0, self.low.1));
        out
    }

    /// True when every non-principal eigenvalue equals `mu` (vacuously true
    /// for a single-part partition).
    pub fn all_non_principal_equal(&self, mu: i64) -> bool {
        !self.other && self.non_principal().iter().all(|&e| e == mu)
    }
}

/// Classifies the spectrum of `q` exactly.
pub fn classify_eigenvalues(q: &QuotientMatrix) -> Result<EigenClassification, PartitionError> {
    if !q.is_detailed_balanced() {
        return Err(PartitionError::NotAQuotient(
            "detailed balance m_ij|Δ_i| = m_ji|Δ_j| fails".into(),
        ));
    }
    let (k, high, low) = q.eigen;
    let r = q.num_parts() as i64;
    let m = q.matrix();
    if !m.product_of_shifts(&[k, high, low]).is_zero() {
        return Ok(EigenClassification {
            principal: k,
            high: (high, 0),
            low: (low, 0),
            other: true,
        });
    }
    // k is simple; tr M = k + αθ + βτ with α + β = r - 1.
    let num = m.trace() - k - low * (r - 1);
    let den = high - low;
    if num % den != 0 {
        return Err(PartitionError::NotAQuotient(format!(
            "trace {} gives non-integral multiplicity",
            m.trace()
        )));
    }
    let alpha = num / den;
    let beta = r - 1 - alpha;
    if alpha < 0 || beta < 0 {
        return Err(PartitionError::NotAQuotient(format!(
            "trace {} gives multiplicities ({alpha}, {beta})",
            m.trace()
        )));
    }
    let tr2 = (m * m).trace();
    if tr2 != k * k + alpha * high * high + beta * low * low {
        return Err(PartitionError::NotAQuotient(format!(
            "tr M² = {tr2} disagrees with multiplicities ({alpha}, {beta})"
        )));
    }
    Ok(EigenClassification {
        principal: k,
        high: (high, alpha as usize),
        low: (low, beta as usize),
        other: false,
    })
}

/// Outcome of a μ-equitability test, keeping the evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuVerdict {
    pub holds: bool,
    pub witness: Option<NonEquitableWitness>,
    pub classification: Option<EigenClassification>,
}

pub fn mu_equitability(g: &LatinSquareGraph, p: &Partition, mu: i64) -> Result<MuVerdict, PartitionError> {
    match quotient_matrix(g, p)? {
        Equitability::NotEquitable(w) => Ok(MuVerdict {
            holds: false,
            witness: Some(w),
            classification: None,
        }),
        Equitability::Equitable(q) => {
            let class = classify_eigenvalues(&q)?;
            Ok(MuVerdict {
                holds: class.all_non_principal_equal(mu),
                witness: None,
                classification: Some(class),
            })
        }
    }
}

/// Equitable with every non-principal quotient eigenvalue equal to `mu`.
pub fn is_mu_equitable(g: &LatinSquareGraph, p: &Partition, mu: i64) -> Result<bool, PartitionError> {
    Ok(mu_equitability(g, p, mu)?.holds)
}

/// `{S, Ω \ S}` is μ-equitable, i.e. equitable with `tr M = k + μ`.
///
/// Symmetric in `S` and its complement, since both orientations share the
/// same quotient up to a relabelling of the two parts.
pub fn is_mu_perfect(g: &LatinSquareGraph, set: &CellSet, mu: i64) -> Result<bool, PartitionError> {
    let p = Partition::two_part(set)?;
    Ok(match quotient_matrix(g, &p)? {
        Equitability::Equitable(q) => q.trace() == q.k() + mu,
        Equitability::NotEquitable(_) => false,
    })
}

/// Merges parts: part `i` of `p` goes to part `grouping[i]` of the result.
pub fn coarsen(p: &Partition, grouping: &[usize]) -> Result<Partition, PartitionError> {
    if grouping.len() != p.num_parts() {
        return Err(PartitionError::GroupingLength {
            expected: p.num_parts(),
            got: grouping.len(),
        });
    }
    let merged = Partition::new(p.order(), p.labels().iter().map(|&i| grouping[i]).collect())?;
    if merged.num_parts() < 2 {
        return Err(PartitionError::TrivialCoarsening);
    }
    Ok(merged)
}

/// `{v}`, the neighbours of `v`, and the remaining vertices (omitted when
/// the graph is complete).
pub fn distance_partition(g: &LatinSquareGraph, v: usize) -> Partition {
    let labels = (0..g.num_vertices())
        .map(|u| {
            if u == v {
                0
            } else if g.is_adjacent(v, u) {
                1
            } else {
                2
            }
        })
        .collect();
    Partition::new(g.order(), labels).expect("distance classes are non-empty")
}

/// The three perfection verdicts behind "if `S` is μ-perfect and `T` is
/// disjoint from it, `T` is μ-perfect iff `S ∪ T` is".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnionCheck {
    pub s_perfect: bool,
    pub t_perfect: bool,
    pub union_perfect: bool,
}

impl UnionCheck {
    /// The biconditional holds on this instance (vacuous when `S` is not
    /// μ-perfect).
    pub fn holds(&self) -> bool {
        !self.s_perfect || self.t_perfect == self.union_perfect
    }
}

pub fn union_disjoint_perfect(
    g: &LatinSquareGraph,
    s: &CellSet,
    t: &CellSet,
    mu: i64,
) -> Result<UnionCheck, PartitionError> {
    if let Some(cell) = s.intersection(t).first() {
        return Err(PartitionError::Overlap { cell });
    }
    let union = s.union(t);
    if !union.is_proper() || s.is_empty() || t.is_empty() {
        return Err(PartitionError::EmptyOrFull);
    }
    Ok(UnionCheck {
        s_perfect: is_mu_perfect(g, s, mu)?,
        t_perfect: is_mu_perfect(g, t, mu)?,
        union_perfect: is_mu_perfect(g, &union, mu)?,
    })
}
