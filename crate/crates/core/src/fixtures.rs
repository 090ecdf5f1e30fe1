//! Bundled example squares, sets and partitions, with the properties each
//! one is expected to have.

use crate::cellset::CellSet;
use crate::format::{parse_cellset, parse_partition, parse_square};
use crate::graph::build_graph;
use crate::latin::LatinSquare;
use crate::neg3::{find_transversals, is_neg3_perfect, partition_from_mate, strength_two_check};
use crate::partition::{mu_equitability, quotient_matrix, Partition};
use crate::perfect::{construction2_partition, corner_set, is_slender};

pub const CORNER_CYCLIC5_SQUARE: &str = include_str!("../fixtures/corner_cyclic5.square");
pub const CORNER_CYCLIC5_PARTITION: &str = include_str!("../fixtures/corner_cyclic5.partition");
pub const CORNER_CYCLIC6_SQUARE: &str = include_str!("../fixtures/corner_cyclic6.square");
pub const CORNER_CYCLIC6_PARTITION: &str = include_str!("../fixtures/corner_cyclic6.partition");
pub const GRAECO_LATIN4_SQUARE: &str = include_str!("../fixtures/graeco_latin4.square");
pub const GRAECO_LATIN4_MATE: &str = include_str!("../fixtures/graeco_latin4.mate");
pub const GRAECO_LATIN4_PARTITION: &str = include_str!("../fixtures/graeco_latin4.partition");
pub const CYCLIC4_BALANCED_SQUARE: &str = include_str!("../fixtures/cyclic4_balanced.square");
pub const CYCLIC4_BALANCED_SET: &str = include_str!("../fixtures/cyclic4_balanced.cellset");
pub const ORDER7_SQUARE: &str = include_str!("../fixtures/order7_three_part.square");
pub const ORDER7_PARTITION: &str = include_str!("../fixtures/order7_three_part.partition");
pub const ORDER6_SQUARE: &str = include_str!("../fixtures/order6_uniform_three.square");
pub const ORDER6_PARTITION: &str = include_str!("../fixtures/order6_uniform_three.partition");

/// Every bundled file as `(file name, contents)`.
pub const FILES: &[(&str, &str)] = &[
    ("corner_cyclic5.square", CORNER_CYCLIC5_SQUARE),
    ("corner_cyclic5.partition", CORNER_CYCLIC5_PARTITION),
    ("corner_cyclic6.square", CORNER_CYCLIC6_SQUARE),
    ("corner_cyclic6.partition", CORNER_CYCLIC6_PARTITION),
    ("graeco_latin4.square", GRAECO_LATIN4_SQUARE),
    ("graeco_latin4.mate", GRAECO_LATIN4_MATE),
    ("graeco_latin4.partition", GRAECO_LATIN4_PARTITION),
    ("cyclic4_balanced.square", CYCLIC4_BALANCED_SQUARE),
    ("cyclic4_balanced.cellset", CYCLIC4_BALANCED_SET),
    ("order7_three_part.square", ORDER7_SQUARE),
    ("order7_three_part.partition", ORDER7_PARTITION),
    ("order6_uniform_three.square", ORDER6_SQUARE),
    ("order6_uniform_three.partition", ORDER6_PARTITION),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: &'static str,
    pub passed: bool,
    /// One entry per property checked, with its outcome.
    pub checks: Vec<(String, bool)>,
}

struct Checker {
    name: &'static str,
    checks: Vec<(String, bool)>,
}

impl Checker {
    fn new(name: &'static str) -> Self {
        Checker {
            name,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) -> bool {
        self.checks.push((what.into(), ok));
        ok
    }

    fn done(self) -> FixtureReport {
        FixtureReport {
            name: self.name,
            passed: !self.checks.is_empty() && self.checks.iter().all(|(_, ok)| *ok),
            checks: self.checks,
        }
    }
}

fn load_square(c: &mut Checker, text: &str) -> Option<LatinSquare> {
    let parsed = parse_square(text);
    c.check("square parses and is Latin", parsed.is_ok());
    parsed.ok()
}

fn load_partition(c: &mut Checker, text: &str) -> Option<Partition> {
    let parsed = parse_partition(text);
    c.check("partition parses", parsed.is_ok());
    parsed.ok()
}

fn corner_fixture(name: &'static str, sq_text: &str, p_text: &str, n: usize) -> FixtureReport {
    let mut c = Checker::new(name);
    let (Some(sq), Some(p)) = (load_square(&mut c, sq_text), load_partition(&mut c, p_text)) else {
        return c.done();
    };
    c.check("square is cyclic", sq == LatinSquare::cyclic(n));
    c.check(
        "partition is the corner / back-diagonal / rest split",
        construction2_partition(n).is_ok_and(|q| q == p),
    );
    c.check("part 0 is the corner set", corner_set(n).is_ok_and(|s| s == p.part(0)));
    let g = build_graph(&sq);
    let ni = n as i64;
    let expected = vec![
        vec![2 * ni - 4, 2, ni - 1],
        vec![ni - 1, ni - 1, ni - 1],
        vec![ni - 1, 2, 2 * ni - 4],
    ];
    let verdict = mu_equitability(&g, &p, ni - 3);
    c.check(
        format!("quotient is {expected:?}"),
        quotient_matrix(&g, &p)
            .ok()
            .and_then(|e| e.into_quotient())
            .is_some_and(|q| q.to_rows() == expected),
    );
    c.check(
        format!("both non-principal eigenvalues equal {}", ni - 3),
        verdict.is_ok_and(|v| v.holds),
    );
    c.check(
        "corner and remainder are slender",
        is_slender(&sq, &p.part(0)) && is_slender(&sq, &p.part(2)),
    );
    c.done()
}

fn graeco_latin() -> FixtureReport {
    let mut c = Checker::new("graeco_latin4");
    let (Some(sq), Some(p)) = (
        load_square(&mut c, GRAECO_LATIN4_SQUARE),
        load_partition(&mut c, GRAECO_LATIN4_PARTITION),
    ) else {
        return c.done();
    };
    let Ok(mate) = parse_square(GRAECO_LATIN4_MATE) else {
        c.check("mate parses", false);
        return c.done();
    };
    c.check("mate is orthogonal", sq.is_orthogonal_to(&mate));
    c.check(
        "partition groups the mate letters {0,1} | {2,3}",
        partition_from_mate(&sq, &mate, &[0, 0, 1, 1]).is_ok_and(|q| q == p),
    );
    let g = build_graph(&sq);
    c.check(
        "quotient is [[3, 6], [6, 3]]",
        quotient_matrix(&g, &p)
            .ok()
            .and_then(|e| e.into_quotient())
            .is_some_and(|q| q.to_rows() == vec![vec![3, 6], vec![6, 3]]),
    );
    c.check("-3-equitable", mu_equitability(&g, &p, -3).is_ok_and(|v| v.holds));
    let bold = p.part(0);
    let (ok, report) = is_neg3_perfect(&sq, &bold);
    c.check("part 0 has zero contrast on every line", ok && report.m == 8);
    c.check(
        "each mate letter class is a transversal",
        (0..4).all(|g| {
            let cells = CellSet::from_indices(4, (0..16).filter(|&v| mate.letter(v) == g));
            is_neg3_perfect(&sq, &cells).0 && cells.len() == 4
        }),
    );
    c.check(
        "at least four disjoint transversals exist",
        find_transversals(&sq, None).len() >= 4,
    );
    c.check(
        "rows, columns, letters, parts form an orthogonal array",
        strength_two_check(&sq, &p).is_ok(),
    );
    c.done()
}

fn cyclic4_balanced() -> FixtureReport {
    let mut c = Checker::new("cyclic4_balanced");
    let Some(sq) = load_square(&mut c, CYCLIC4_BALANCED_SQUARE) else {
        return c.done();
    };
    let Ok(set) = parse_cellset(CYCLIC4_BALANCED_SET) else {
        c.check("set parses", false);
        return c.done();
    };
    c.check("square is cyclic", sq == LatinSquare::cyclic(4));
    let (ok, _) = is_neg3_perfect(&sq, &set);
    c.check("every line meets the set twice", ok);
    let g = build_graph(&sq);
    c.check(
        "-3-perfect by its quotient",
        crate::partition::is_mu_perfect(&g, &set, -3).unwrap_or(false),
    );
    c.check(
        "square has no transversal, so the set is no union of transversals",
        find_transversals(&sq, Some(1)).is_empty(),
    );
    c.done()
}

fn uniform_neg3(name: &'static str, sq_text: &str, p_text: &str, sizes: &[usize]) -> FixtureReport {
    let mut c = Checker::new(name);
    let (Some(sq), Some(p)) = (load_square(&mut c, sq_text), load_partition(&mut c, p_text)) else {
        return c.done();
    };
    c.check(format!("part sizes {sizes:?}"), p.sizes() == sizes);
    let g = build_graph(&sq);
    c.check("-3-equitable", mu_equitability(&g, &p, -3).is_ok_and(|v| v.holds));
    c.check(
        "every part meets every line evenly",
        p.parts().iter().all(|s| is_neg3_perfect(&sq, s).0),
    );
    c.check(
        "rows, columns, letters, parts form an orthogonal array",
        strength_two_check(&sq, &p).is_ok(),
    );
    c.done()
}

/// Checks every bundled fixture.
pub fn verify_all() -> Vec<FixtureReport> {
    vec![
        corner_fixture("corner_cyclic5", CORNER_CYCLIC5_SQUARE, CORNER_CYCLIC5_PARTITION, 5),
        corner_fixture("corner_cyclic6", CORNER_CYCLIC6_SQUARE, CORNER_CYCLIC6_PARTITION, 6),
        graeco_latin(),
        cyclic4_balanced(),
        uniform_neg3("order7_three_part", ORDER7_SQUARE, ORDER7_PARTITION, &[7, 14, 28]),
        uniform_neg3("order6_uniform_three", ORDER6_SQUARE, ORDER6_PARTITION, &[12, 12, 12]),
    ]
}
