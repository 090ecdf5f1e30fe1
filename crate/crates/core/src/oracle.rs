//! Exhaustive search for μ-perfect sets and μ-equitable partitions on small
//! squares, independent of the structural classification.
//!
//! A set `S` is μ-perfect iff `ρ(ω) + κ(ω) + λ(ω) - (μ + 3)[ω ∈ S]` takes
//! the same value `c` at every cell, where summing over all cells forces
//! `c = (3n - μ - 3)|S| / n²`. The search fixes `|S|`, decides cells in
//! row-major order and, whenever a row is complete, adds the equations
//! `κ(c) + λ(L(r, c)) = c + (μ + 3)x - ρ(r)` for its cells and propagates
//! interval bounds on the final column and letter counts.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::cellset::CellSet;
use crate::graph::{build_graph, LatinSquareGraph};
use crate::latin::LatinSquare;
use crate::partition::{is_mu_equitable, is_mu_perfect, Partition, PartitionError};
use crate::perfect::enumerate::{enumerate_perfect_sets, EnumerateOptions};
use crate::perfect::profile::is_slender;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {n} exceeds the search budget's maximum order {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("node budget of {limit} exhausted at set size {size} after {nodes} nodes, {found} sets found so far")]
    NodesExhausted {
        limit: u64,
        nodes: u64,
        size: usize,
        found: usize,
    },
    #[error("time budget of {limit:?} exhausted after {nodes} nodes, {found} sets found so far")]
    TimeExhausted { limit: Duration, nodes: u64, found: usize },
    #[error("the oracle needs a Latin-square graph with exactly three parallel classes, got {0}")]
    UnsupportedGraph(usize),
    #[error("number of parts must be between 2 and 4, got {0}")]
    PartCount(usize),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

impl OracleError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            OracleError::OrderTooLarge { .. } | OracleError::NodesExhausted { .. } | OracleError::TimeExhausted { .. }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_order: usize,
    /// Search nodes (cell decisions) summed over all workers.
    pub max_nodes: u64,
    pub wall_clock: Option<Duration>,
    /// Worker threads; 1 runs serially, 0 uses the global pool.
    pub workers: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_order: 5,
            max_nodes: 2_000_000_000,
            wall_clock: None,
            workers: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_max_order(self, max_order: usize) -> Self {
        SearchBudget { max_order, ..self }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        SearchBudget { workers, ..self }
    }

    pub fn with_max_nodes(self, max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..self }
    }
}

/// Every μ-perfect set of the Latin-square graph `g`, sorted.
pub fn brute_force_mu_perfect(
    g: &LatinSquareGraph,
    mu: i64,
    budget: &SearchBudget,
) -> Result<Vec<CellSet>, OracleError> {
    let n = g.order();
    if g.class_count() != 3 {
        return Err(OracleError::UnsupportedGraph(g.class_count()));
    }
    if n > budget.max_order {
        return Err(OracleError::OrderTooLarge {
            n,
            max: budget.max_order,
        });
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let letters: Vec<usize> = (0..n * n).map(|v| g.line_of(2, v)).collect();
    let start = Instant::now();
    let nn = (n * n) as i64;
    let w = mu + 3;
    let sizes: Vec<usize> = (1..n * n)
        .filter(|&z| ((3 * n as i64 - w) * z as i64).rem_euclid(nn) == 0)
        .collect();

    let split = if budget.workers == 1 {
        0
    } else {
        (n * n).min(2 * n).min(14)
    };
    let mut tasks = Vec::new();
    let mut prefix_nodes = 0u64;
    let mut found = BTreeSet::new();
    for &z in &sizes {
        let c0 = (3 * n as i64 - w) * z as i64 / nn;
        let mut root = Search::new(n, z, w, c0, &letters, budget, start);
        if split == 0 {
            root.run(0, None);
            prefix_nodes += root.nodes;
            root.finish(g, mu, &mut found, z, prefix_nodes)?;
        } else {
            let mut collected = Vec::new();
            root.run(0, Some((split, &mut collected)));
            prefix_nodes += root.nodes;
            root.finish(g, mu, &mut found, z, prefix_nodes)?;
            tasks.extend(collected.into_iter().map(|s| (z, s)));
        }
    }
    if tasks.is_empty() {
        return Ok(found.into_iter().collect());
    }

    let work = move |task| resume(task, split);
    let results: Vec<(usize, Search<'_>)> = if budget.workers == 0 {
        tasks.into_par_iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(budget.workers)
            .build()
            .expect("thread pool");
        pool.install(|| tasks.into_par_iter().map(work).collect())
    };
    let mut total = prefix_nodes;
    for (z, s) in results {
        total = total.saturating_add(s.nodes);
        s.finish(g, mu, &mut found, z, total)?;
    }
    Ok(found.into_iter().collect())
}

fn resume(task: (usize, Search<'_>), from: usize) -> (usize, Search<'_>) {
    let (z, mut s) = task;
    s.nodes = 0;
    s.run(from, None);
    (z, s)
}

#[derive(Clone)]
struct Search<'a> {
    n: usize,
    z: usize,
    w: i64,
    c0: i64,
    letters: &'a [usize],
    row_cnt: Vec<i64>,
    col_cnt: Vec<i64>,
    let_cnt: Vec<i64>,
    col_und: Vec<i64>,
    let_und: Vec<i64>,
    chosen: usize,
    x: Vec<bool>,
    eqs: Vec<(usize, usize, i64)>,
    // bounds on the final column/letter counts derived from the equations
    kap_lo: Vec<i64>,
    kap_hi: Vec<i64>,
    lam_lo: Vec<i64>,
    lam_hi: Vec<i64>,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<(Instant, Duration)>,
    aborted: Option<Abort>,
    out: Vec<CellSet>,
}

#[derive(Clone, Copy, Debug)]
enum Abort {
    Nodes,
    Time,
}

impl<'a> Search<'a> {
    fn new(n: usize, z: usize, w: i64, c0: i64, letters: &'a [usize], budget: &SearchBudget, start: Instant) -> Self {
        let ni = n as i64;
        Search {
            n,
            z,
            w,
            c0,
            letters,
            row_cnt: vec![0; n],
            col_cnt: vec![0; n],
            let_cnt: vec![0; n],
            col_und: vec![ni; n],
            let_und: vec![ni; n],
            chosen: 0,
            x: vec![false; n * n],
            eqs: Vec::new(),
            kap_lo: vec![0; n],
            kap_hi: vec![ni; n],
            lam_lo: vec![0; n],
            lam_hi: vec![ni; n],
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: budget.wall_clock.map(|d| (start, d)),
            aborted: None,
            out: Vec::new(),
        }
    }

    fn finish(
        &self,
        g: &LatinSquareGraph,
        mu: i64,
        found: &mut BTreeSet<CellSet>,
        z: usize,
        total_nodes: u64,
    ) -> Result<(), OracleError> {
        match self.aborted {
            Some(Abort::Time) => {
                let (_, limit) = self.deadline.expect("time abort needs a deadline");
                return Err(OracleError::TimeExhausted {
                    limit,
                    nodes: total_nodes,
                    found: found.len() + self.out.len(),
                });
            }
            Some(Abort::Nodes) => {}
            None if total_nodes <= self.max_nodes => {
                for set in &self.out {
                    if is_mu_perfect(g, set, mu)? {
                        found.insert(set.clone());
                    }
                }
                return Ok(());
            }
            None => {}
        }
        Err(OracleError::NodesExhausted {
            limit: self.max_nodes,
            nodes: total_nodes,
            size: z,
            found: found.len() + self.out.len(),
        })
    }

    fn kap_bounds(&self, c: usize) -> (i64, i64) {
        (
            self.kap_lo[c].max(self.col_cnt[c]),
            self.kap_hi[c].min(self.col_cnt[c] + self.col_und[c]),
        )
    }

    fn lam_bounds(&self, l: usize) -> (i64, i64) {
        (
            self.lam_lo[l].max(self.let_cnt[l]),
            self.lam_hi[l].min(self.let_cnt[l] + self.let_und[l]),
        )
    }

    /// Tightens the column/letter bounds to a fixpoint of the equations.
    fn propagate(&mut self) -> bool {
        let n = self.n;
        for c in 0..n {
            let (lo, hi) = self.kap_bounds(c);
            if lo > hi {
                return false;
            }
            self.kap_lo[c] = lo;
            self.kap_hi[c] = hi;
        }
        for l in 0..n {
            let (lo, hi) = self.lam_bounds(l);
            if lo > hi {
                return false;
            }
            self.lam_lo[l] = lo;
            self.lam_hi[l] = hi;
        }
        let z = self.z as i64;
        loop {
            let mut changed = false;
            for &(c, l, rhs) in &self.eqs {
                let klo = self.kap_lo[c].max(rhs - self.lam_hi[l]);
                let khi = self.kap_hi[c].min(rhs - self.lam_lo[l]);
                let llo = self.lam_lo[l].max(rhs - self.kap_hi[c]);
                let lhi = self.lam_hi[l].min(rhs - self.kap_lo[c]);
                if klo > khi || llo > lhi {
                    return false;
                }
                if (klo, khi, llo, lhi) != (self.kap_lo[c], self.kap_hi[c], self.lam_lo[l], self.lam_hi[l]) {
                    changed = true;
                    self.kap_lo[c] = klo;
                    self.kap_hi[c] = khi;
                    self.lam_lo[l] = llo;
                    self.lam_hi[l] = lhi;
                }
            }
            let sums = [
                self.kap_lo.iter().sum::<i64>(),
                self.kap_hi.iter().sum::<i64>(),
                self.lam_lo.iter().sum::<i64>(),
                self.lam_hi.iter().sum::<i64>(),
            ];
            if sums[0] > z || sums[1] < z || sums[2] > z || sums[3] < z {
                return false;
            }
            if !changed {
                return true;
            }
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = Some(Abort::Nodes);
            return false;
        }
        if self.nodes % 4096 == 1 {
            if let Some((start, limit)) = self.deadline {
                if start.elapsed() >= limit {
                    self.aborted = Some(Abort::Time);
                    return false;
                }
            }
        }
        true
    }

    /// Depth-first search from cell `v`. With `split = Some((depth, out))`,
    /// states reaching `depth` are cloned into `out` instead of explored.
    fn run(&mut self, v: usize, mut split: Option<(usize, &mut Vec<Search<'a>>)>) {
        if self.aborted.is_some() {
            return;
        }
        let n = self.n;
        if v == n * n {
            if self.chosen == self.z {
                self.out
                    .push(CellSet::from_indices(n, (0..n * n).filter(|&u| self.x[u])));
            }
            return;
        }
        if let Some((depth, out)) = split.as_mut() {
            if v == *depth {
                out.push(self.clone());
                return;
            }
        }
        self.descend(v, (i64::MIN, i64::MAX), &mut split);
    }

    fn descend(&mut self, v: usize, rho_window: (i64, i64), split: &mut Option<(usize, &mut Vec<Search<'a>>)>) {
        let n = self.n;
        let (r, c, l) = (v / n, v % n, self.letters[v]);
        let remaining_after = n * n - v - 1;
        let neg3_line = (self.w == 0).then(|| (self.z / n) as i64);
        for choice in [true, false] {
            if choice && self.chosen == self.z {
                continue;
            }
            if !choice && self.chosen + remaining_after < self.z {
                continue;
            }
            if !self.tick() {
                return;
            }
            let x = i64::from(choice);
            self.x[v] = choice;
            self.chosen += choice as usize;
            self.row_cnt[r] += x;
            self.col_cnt[c] += x;
            self.let_cnt[l] += x;
            self.col_und[c] -= 1;
            self.let_und[l] -= 1;

            let row_left = (n - c - 1) as i64;
            let mut ok = true;
            let (klo, khi) = self.kap_bounds(c);
            let (llo, lhi) = self.lam_bounds(l);
            ok &= klo <= khi && llo <= lhi;
            if let Some(q) = neg3_line {
                ok &= self.row_cnt[r] <= q && self.row_cnt[r] + row_left >= q;
                ok &= self.col_cnt[c] <= q && self.col_cnt[c] + self.col_und[c] >= q;
                ok &= self.let_cnt[l] <= q && self.let_cnt[l] + self.let_und[l] >= q;
            }
            // ρ(r) = c0 + w·x - κ(c) - λ(l)
            let base = self.c0 + self.w * x;
            let window = (
                rho_window.0.max(base - khi - lhi).max(self.row_cnt[r]),
                rho_window.1.min(base - klo - llo).min(self.row_cnt[r] + row_left),
            );
            ok &= window.0 <= window.1;

            if ok {
                if c == n - 1 {
                    let saved = (
                        self.kap_lo.clone(),
                        self.kap_hi.clone(),
                        self.lam_lo.clone(),
                        self.lam_hi.clone(),
                        self.eqs.len(),
                    );
                    let rho = self.row_cnt[r];
                    for cc in 0..n {
                        let u = r * n + cc;
                        let rhs = self.c0 + self.w * i64::from(self.x[u]) - rho;
                        self.eqs.push((cc, self.letters[u], rhs));
                    }
                    if self.propagate() {
                        let next = split.as_mut().map(|(d, out)| (*d, &mut **out));
                        self.run(v + 1, next);
                    }
                    self.kap_lo = saved.0;
                    self.kap_hi = saved.1;
                    self.lam_lo = saved.2;
                    self.lam_hi = saved.3;
                    self.eqs.truncate(saved.4);
                } else {
                    let at_split = split.as_ref().is_some_and(|(d, _)| *d == v + 1);
                    if at_split {
                        let next = split.as_mut().map(|(d, out)| (*d, &mut **out));
                        self.run(v + 1, next);
                    } else {
                        self.descend(v + 1, window, split);
                    }
                }
            }

            self.x[v] = false;
            self.chosen -= choice as usize;
            self.row_cnt[r] -= x;
            self.col_cnt[c] -= x;
            self.let_cnt[l] -= x;
            self.col_und[c] += 1;
            self.let_und[l] += 1;
            if self.aborted.is_some() {
                return;
            }
        }
    }
}

/// All μ-equitable partitions into `r` parts (`2 ≤ r ≤ 4`), each once, in
/// canonical labelling (parts numbered by least cell).
pub fn brute_force_equitable_partitions(
    g: &LatinSquareGraph,
    r: usize,
    mu: i64,
    budget: &SearchBudget,
) -> Result<Vec<Partition>, OracleError> {
    if !(2..=4).contains(&r) {
        return Err(OracleError::PartCount(r));
    }
    let census = brute_force_mu_perfect(g, mu, budget)?;
    let n = g.order();
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    extend_partition(g, mu, r, &census, &CellSet::full(n), &mut chosen, &mut out)?;
    Ok(out
        .into_iter()
        .map(|labels| Partition::new(n, labels).expect("valid"))
        .collect())
}

fn extend_partition(
    g: &LatinSquareGraph,
    mu: i64,
    r: usize,
    census: &[CellSet],
    rest: &CellSet,
    chosen: &mut Vec<CellSet>,
    out: &mut BTreeSet<Vec<usize>>,
) -> Result<(), OracleError> {
    let n = g.order();
    if chosen.len() == r - 1 {
        if rest.is_empty() {
            return Ok(());
        }
        let mut parts = chosen.clone();
        parts.push(rest.clone());
        let p = Partition::from_sets(n, &parts)?;
        if is_mu_equitable(g, &p, mu)? {
            out.insert(p.canonical().labels().to_vec());
        }
        return Ok(());
    }
    let Some(anchor) = rest.first() else {
        return Ok(());
    };
    for set in census {
        if set.contains(anchor) && set.is_subset(rest) && set.len() < rest.len() {
            chosen.push(set.clone());
            extend_partition(g, mu, r, census, &rest.difference(set), chosen, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// Comparison of the exhaustive `(n-3)`-perfect census with the
/// constructive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub n: usize,
    pub oracle_count: usize,
    pub constructive_count: usize,
    /// Slender members of the oracle census.
    pub slender_count: usize,
    /// First set (in sorted order) found by only one side, and whether it
    /// was the oracle's.
    pub first_discrepancy: Option<(CellSet, bool)>,
}

impl TheoremReport {
    pub fn agrees(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

pub fn verify_main_theorem(sq: &LatinSquare, budget: &SearchBudget) -> Result<TheoremReport, OracleError> {
    let n = sq.order();
    let g = build_graph(sq);
    let oracle = brute_force_mu_perfect(&g, n as i64 - 3, budget)?;
    let constructive = enumerate_perfect_sets(sq, EnumerateOptions::default()).sets;
    let a: BTreeSet<&CellSet> = oracle.iter().collect();
    let b: BTreeSet<&CellSet> = constructive.iter().collect();
    let first_discrepancy = a.symmetric_difference(&b).next().map(|s| ((*s).clone(), a.contains(s)));
    Ok(TheoremReport {
        n,
        oracle_count: oracle.len(),
        constructive_count: constructive.len(),
        slender_count: oracle.iter().filter(|s| is_slender(sq, s)).count(),
        first_discrepancy,
    })
}
