//! Plain-text formats for squares, partitions, cell sets, transversals,
//! censuses and edge lists.
//!
//! Blank lines and lines starting with `#` are ignored by every parser.
//!
//! ```text
//! square      n, then n rows of n letters
//! partition   n, r, then n rows of n part labels in 0..r
//! cellset     n, |S|, then |S| lines "i j"
//! transversal one line of n column indices
//! census      "census sha256=<hex> mu=<mu> sets=<count>", then cellset records
//! ```

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cellset::CellSet;
use crate::graph::LatinSquareGraph;
use crate::latin::{LatinError, LatinSquare};
use crate::neg3::{Neg3Error, Transversal};
use crate::partition::{Partition, PartitionError};

/// Largest order accepted by the parsers.
pub const MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEof(&'static str),
    #[error("line {line}: {token:?} is not a non-negative integer")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} values, got {got}")]
    WrongTokenCount { line: usize, expected: usize, got: usize },
    #[error("line {line}: value {value} is out of range (must be below {bound})")]
    OutOfRange { line: usize, value: usize, bound: usize },
    #[error("line {line}: order must be between 1 and {max}, got {value}")]
    BadOrder { line: usize, value: usize, max: usize },
    #[error("line {line}: cell ({row}, {col}) listed twice")]
    DuplicateCell { line: usize, row: usize, col: usize },
    #[error("line {line}: unexpected trailing data")]
    TrailingData { line: usize },
    #[error("line {line}: malformed census header")]
    BadHeader { line: usize },
    #[error("census header announces {expected} sets, found {found}")]
    CensusCount { expected: usize, found: usize },
    #[error(transparent)]
    Latin(#[from] LatinError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Transversal(#[from] Neg3Error),
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it.peekable() }
    }

    fn next_line(&mut self, what: &'static str) -> Result<(usize, &'a str), FormatError> {
        self.inner.next().ok_or(FormatError::UnexpectedEof(what))
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        self.inner.peek().copied()
    }

    fn numbers(&mut self, what: &'static str, count: usize) -> Result<(usize, Vec<usize>), FormatError> {
        let (line, text) = self.next_line(what)?;
        let values = parse_numbers(line, text)?;
        if values.len() != count {
            return Err(FormatError::WrongTokenCount {
                line,
                expected: count,
                got: values.len(),
            });
        }
        Ok((line, values))
    }

    fn single(&mut self, what: &'static str) -> Result<(usize, usize), FormatError> {
        let (line, v) = self.numbers(what, 1)?;
        Ok((line, v[0]))
    }

    fn order(&mut self) -> Result<usize, FormatError> {
        let (line, n) = self.single("order")?;
        if n == 0 || n > MAX_ORDER {
            return Err(FormatError::BadOrder {
                line,
                value: n,
                max: MAX_ORDER,
            });
        }
        Ok(n)
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        match self.peek() {
            Some((line, _)) => Err(FormatError::TrailingData { line }),
            None => Ok(()),
        }
    }
}

fn parse_numbers(line: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| FormatError::BadInteger {
                line,
                token: tok.chars().take(32).collect(),
            })
        })
        .collect()
}

fn square_body(lines: &mut Lines<'_>) -> Result<LatinSquare, FormatError> {
    let n = lines.order()?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        rows.push(lines.numbers("square row", n)?.1);
    }
    Ok(LatinSquare::validate(&rows)?)
}

fn cellset_body(lines: &mut Lines<'_>) -> Result<CellSet, FormatError> {
    let n = lines.order()?;
    let (line, m) = lines.single("set size")?;
    if m > n * n {
        return Err(FormatError::OutOfRange {
            line,
            value: m,
            bound: n * n + 1,
        });
    }
    let mut set = CellSet::empty(n);
    for _ in 0..m {
        let (line, v) = lines.numbers("cell", 2)?;
        for &x in &v {
            if x >= n {
                return Err(FormatError::OutOfRange {
                    line,
                    value: x,
                    bound: n,
                });
            }
        }
        let idx = v[0] * n + v[1];
        if set.contains(idx) {
            return Err(FormatError::DuplicateCell {
                line,
                row: v[0],
                col: v[1],
            });
        }
        set.insert(idx);
    }
    Ok(set)
}

pub fn parse_square(text: &str) -> Result<LatinSquare, FormatError> {
    let mut lines = Lines::new(text);
    let sq = square_body(&mut lines)?;
    lines.finish()?;
    Ok(sq)
}

pub fn write_square(sq: &LatinSquare) -> String {
    let mut out = format!("{}\n", sq.order());
    for row in sq.rows() {
        out.push_str(&join(&row));
        out.push('\n');
    }
    out
}

pub fn parse_partition(text: &str) -> Result<Partition, FormatError> {
    let mut lines = Lines::new(text);
    let n = lines.order()?;
    let (line, r) = lines.single("number of parts")?;
    if r == 0 || r > n * n {
        return Err(FormatError::OutOfRange {
            line,
            value: r,
            bound: n * n + 1,
        });
    }
    let mut labels = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (line, row) = lines.numbers("partition row", n)?;
        if let Some(&value) = row.iter().find(|&&x| x >= r) {
            return Err(FormatError::OutOfRange { line, value, bound: r });
        }
        labels.extend(row);
    }
    lines.finish()?;
    let p = Partition::new(n, labels)?;
    if p.num_parts() != r {
        return Err(PartitionError::EmptyPart { part: p.num_parts() }.into());
    }
    Ok(p)
}

pub fn write_partition(p: &Partition) -> String {
    let n = p.order();
    let mut out = format!("{n}\n{}\n", p.num_parts());
    for row in p.labels().chunks(n) {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

pub fn parse_cellset(text: &str) -> Result<CellSet, FormatError> {
    let mut lines = Lines::new(text);
    let set = cellset_body(&mut lines)?;
    lines.finish()?;
    Ok(set)
}

/// Cells in increasing row-major order.
pub fn write_cellset(set: &CellSet) -> String {
    let mut out = format!("{}\n{}\n", set.order(), set.len());
    for cell in set.cells() {
        let _ = writeln!(out, "{} {}", cell.row, cell.col);
    }
    out
}

pub fn parse_transversal(sq: &LatinSquare, text: &str) -> Result<Transversal, FormatError> {
    let mut lines = Lines::new(text);
    let (_, cols) = lines.numbers("transversal", sq.order())?;
    lines.finish()?;
    Ok(Transversal::new(sq, cols)?)
}

pub fn write_transversal(t: &Transversal) -> String {
    format!("{}\n", join(t.cols()))
}

/// One `u v` line per edge with `u < v`.
pub fn write_edge_list(g: &LatinSquareGraph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Hex SHA-256 of the square's text form.
pub fn square_digest(sq: &LatinSquare) -> String {
    let digest = Sha256::digest(write_square(sq).as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub digest: String,
    pub mu: i64,
    pub sets: Vec<CellSet>,
}

impl Census {
    pub fn new(sq: &LatinSquare, mu: i64, sets: Vec<CellSet>) -> Self {
        Census {
            digest: square_digest(sq),
            mu,
            sets,
        }
    }

    pub fn matches(&self, sq: &LatinSquare) -> bool {
        self.digest == square_digest(sq)
    }
}

pub fn write_census(census: &Census) -> String {
    let mut out = format!(
        "census sha256={} mu={} sets={}\n",
        census.digest,
        census.mu,
        census.sets.len()
    );
    for set in &census.sets {
        out.push('\n');
        out.push_str(&write_cellset(set));
    }
    out
}

pub fn parse_census(text: &str) -> Result<Census, FormatError> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.next_line("census header")?;
    let bad = || FormatError::BadHeader { line };
    let mut fields = header.split_whitespace();
    if fields.next() != Some("census") {
        return Err(bad());
    }
    let mut field = |key: &str| -> Result<String, FormatError> {
        fields
            .next()
            .and_then(|f| f.strip_prefix(key))
            .and_then(|f| f.strip_prefix('='))
            .map(str::to_owned)
            .ok_or_else(bad)
    };
    let digest = field("sha256")?;
    let mu: i64 = field("mu")?.parse().map_err(|_| bad())?;
    let count: usize = field("sets")?.parse().map_err(|_| bad())?;
    if fields.next().is_some()
        || digest.len() != 64
        || !digest.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
    {
        return Err(bad());
    }
    let mut sets = Vec::new();
    while lines.peek().is_some() {
        if sets.len() == count {
            return Err(FormatError::CensusCount {
                expected: count,
                found: count + 1,
            });
        }
        sets.push(cellset_body(&mut lines)?);
    }
    if sets.len() != count {
        return Err(FormatError::CensusCount {
            expected: count,
            found: sets.len(),
        });
    }
    Ok(Census { digest, mu, sets })
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
