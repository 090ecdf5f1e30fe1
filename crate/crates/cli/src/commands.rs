use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use latin_equitable::fixtures;
use latin_equitable::format::{
    parse_cellset, parse_partition, parse_square, write_census, write_partition, write_square, write_transversal,
    Census,
};
use latin_equitable::inflation::{inflate, standard_q_partition, InflationSpec};
use latin_equitable::neg3::find_transversals;
use latin_equitable::oracle::{brute_force_mu_perfect, verify_main_theorem, SearchBudget};
use latin_equitable::partition::{classify_eigenvalues, mu_equitability, quotient_matrix, Equitability};
use latin_equitable::perfect::{
    decompose as split, enumerate_perfect_sets, recognize as recognize_set, EnumerateOptions,
};
use latin_equitable::{build_graph, CellSet, LatinSquare, Partition};

/// Whether the property a command checks holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_square(path: &Path) -> Result<LatinSquare> {
    parse_square(&read(path)?).with_context(|| format!("parsing square {}", path.display()))
}

fn load_set(path: &Path, n: usize) -> Result<CellSet> {
    let set = parse_cellset(&read(path)?).with_context(|| format!("parsing cell set {}", path.display()))?;
    ensure!(
        set.order() == n,
        "cell set has order {}, square has order {n}",
        set.order()
    );
    Ok(set)
}

fn load_partition(path: &Path, n: usize, as_set: bool) -> Result<Partition> {
    let p = if as_set {
        Partition::two_part(&load_set(path, n)?)?
    } else {
        parse_partition(&read(path)?).with_context(|| format!("parsing partition {}", path.display()))?
    };
    ensure!(
        p.order() == n,
        "partition has order {}, square has order {n}",
        p.order()
    );
    Ok(p)
}

/// Reads μ as an integer or as `n`, `n-K`, `n+K` relative to the order.
pub fn resolve_mu(text: &str, n: usize) -> Result<i64> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let text = text.replace('\u{2212}', "-");
    let parsed = match text.strip_prefix('n') {
        Some("") => Ok(n as i64),
        Some(rest) => rest
            .strip_prefix('+')
            .unwrap_or(rest)
            .parse::<i64>()
            .map(|k| n as i64 + k),
        None => text.parse::<i64>(),
    };
    parsed.with_context(|| format!("bad value for mu: {text:?}"))
}

pub fn gen_cyclic(out: &mut String, n: usize) -> Result<Verdict> {
    ensure!(n >= 1, "order must be at least 1");
    write!(out, "{}", write_square(&LatinSquare::cyclic(n)))?;
    Ok(Verdict::Holds)
}

pub fn gen_inflate(out: &mut String, base: &Path, s: usize, blocks: &[String], q_partition: bool) -> Result<Verdict> {
    let base = load_square(base)?;
    let t = base.order();
    let cyclic = blocks.len() == 1 && {
        let b = blocks[0].as_str();
        b == "cyc"
            || b == "cyclic"
            || b.strip_prefix("cyc")
                .is_some_and(|k| k.parse::<usize>().ok() == Some(s))
    };
    let spec = if cyclic {
        InflationSpec::cyclic_blocks(base, s)?
    } else {
        let squares = blocks
            .iter()
            .map(|b| load_square(Path::new(b)))
            .collect::<Result<Vec<_>>>()?;
        let squares = match squares.len() {
            1 => vec![squares[0].clone(); t],
            _ => squares,
        };
        InflationSpec::uniform(base, s, &squares)?
    };
    if q_partition {
        write!(out, "{}", write_partition(&standard_q_partition(&spec)))?;
    } else {
        write!(out, "{}", write_square(&inflate(&spec)))?;
    }
    Ok(Verdict::Holds)
}

pub fn quotient(out: &mut String, square: &Path, partition: &Path, as_set: bool) -> Result<Verdict> {
    let sq = load_square(square)?;
    let p = load_partition(partition, sq.order(), as_set)?;
    match quotient_matrix(&build_graph(&sq), &p)? {
        Equitability::Equitable(q) => {
            write!(out, "{}", q.matrix())?;
            Ok(Verdict::Holds)
        }
        Equitability::NotEquitable(w) => {
            writeln!(
                out,
                "not equitable: cells {} and {} of part {} have {} and {} neighbours in part {}",
                w.vertex_a, w.vertex_b, w.from_part, w.count_a, w.count_b, w.to_part
            )?;
            Ok(Verdict::Fails)
        }
    }
}

pub fn check(out: &mut String, square: &Path, partition: &Path, as_set: bool, mu: Option<&str>) -> Result<Verdict> {
    let sq = load_square(square)?;
    let n = sq.order();
    let p = load_partition(partition, n, as_set)?;
    let mu = mu.map(|m| resolve_mu(m, n)).transpose()?;
    let g = build_graph(&sq);
    let sizes: Vec<String> = p.sizes().iter().map(ToString::to_string).collect();
    writeln!(out, "parts {} sizes {}", p.num_parts(), sizes.join(" "))?;
    let q = match quotient_matrix(&g, &p)? {
        Equitability::Equitable(q) => q,
        Equitability::NotEquitable(w) => {
            writeln!(
                out,
                "not equitable: cells {} and {} of part {} have {} and {} neighbours in part {}",
                w.vertex_a, w.vertex_b, w.from_part, w.count_a, w.count_b, w.to_part
            )?;
            return Ok(Verdict::Fails);
        }
    };
    writeln!(out, "quotient")?;
    write!(out, "{}", q.matrix())?;
    let class = classify_eigenvalues(&q)?;
    writeln!(
        out,
        "eigenvalues {} (x1) {} (x{}) {} (x{})",
        class.principal, class.high.0, class.high.1, class.low.0, class.low.1
    )?;
    let Some(mu) = mu else {
        return Ok(Verdict::Holds);
    };
    let verdict = mu_equitability(&g, &p, mu)?;
    writeln!(out, "mu {mu}: {}", if verdict.holds { "holds" } else { "fails" })?;
    Ok(verdict.holds.into())
}

pub fn recognize(out: &mut String, square: &Path, cellset: &Path) -> Result<Verdict> {
    let sq = load_square(square)?;
    let set = load_set(cellset, sq.order())?;
    match recognize_set(&sq, &set) {
        Ok(cert) => {
            write!(out, "{cert}")?;
            Ok(Verdict::Holds)
        }
        Err(why) => {
            writeln!(out, "rejected: {why}")?;
            Ok(Verdict::Fails)
        }
    }
}

pub fn decompose(out: &mut String, square: &Path, cellset: &Path) -> Result<Verdict> {
    let sq = load_square(square)?;
    let set = load_set(cellset, sq.order())?;
    match split(&sq, &set) {
        Some(parts) => {
            for part in parts {
                writeln!(out, "{part}")?;
            }
            Ok(Verdict::Holds)
        }
        None => {
            writeln!(out, "no decomposition into lines and corner sets")?;
            Ok(Verdict::Fails)
        }
    }
}

pub struct EnumerateRequest<'a> {
    pub square: &'a Path,
    pub mu: Option<&'a str>,
    pub oracle: bool,
    pub size_bound: Option<usize>,
    pub max_sets: Option<usize>,
    pub count: bool,
    pub budget: SearchBudget,
}

pub fn enumerate(out: &mut String, req: EnumerateRequest<'_>) -> Result<Verdict> {
    let sq = load_square(req.square)?;
    let n = sq.order();
    let mu = match req.mu {
        Some(m) => resolve_mu(m, n)?,
        None => n as i64 - 3,
    };
    let sets = if mu == n as i64 - 3 && !req.oracle {
        let found = enumerate_perfect_sets(
            &sq,
            EnumerateOptions {
                size_bound: req.size_bound,
                max_sets: req.max_sets,
            },
        );
        if found.truncated {
            eprintln!("stopped after {} sets", found.sets.len());
        }
        found.sets
    } else {
        let mut sets = brute_force_mu_perfect(&build_graph(&sq), mu, &req.budget)?;
        if let Some(bound) = req.size_bound {
            sets.retain(|s| s.len() <= bound);
        }
        if let Some(max) = req.max_sets {
            if sets.len() > max {
                sets.truncate(max);
                eprintln!("stopped after {max} sets");
            }
        }
        sets
    };
    if req.count {
        writeln!(out, "{}", sets.len())?;
    } else {
        write!(out, "{}", write_census(&Census::new(&sq, mu, sets)))?;
    }
    Ok(Verdict::Holds)
}

pub fn transversals(out: &mut String, square: &Path, limit: Option<usize>, count: bool) -> Result<Verdict> {
    let sq = load_square(square)?;
    let found = find_transversals(&sq, limit);
    if count {
        writeln!(out, "{}", found.len())?;
    } else {
        for t in &found {
            write!(out, "{}", write_transversal(t))?;
        }
    }
    Ok(Verdict::Holds)
}

pub fn verify_theorem(out: &mut String, square: &Path, budget: SearchBudget) -> Result<Verdict> {
    let sq = load_square(square)?;
    let report = verify_main_theorem(&sq, &budget)?;
    writeln!(
        out,
        "{} n={} oracle={} constructive={} slender={}",
        if report.agrees() { "PASS" } else { "FAIL" },
        report.n,
        report.oracle_count,
        report.constructive_count,
        report.slender_count
    )?;
    if let Some((set, from_oracle)) = &report.first_discrepancy {
        let side = if *from_oracle {
            "exhaustive search"
        } else {
            "construction"
        };
        let cells: Vec<String> = set.cells().map(|c| format!("({},{})", c.row, c.col)).collect();
        writeln!(out, "only found by the {side}: {}", cells.join(" "))?;
    }
    Ok(report.agrees().into())
}

pub fn fixtures_verify(out: &mut String) -> Result<Verdict> {
    let mut all = true;
    for report in fixtures::verify_all() {
        all &= report.passed;
        writeln!(out, "{} {}", if report.passed { "PASS" } else { "FAIL" }, report.name)?;
        for (what, ok) in &report.checks {
            writeln!(out, "  {} {what}", if *ok { "ok  " } else { "FAIL" })?;
        }
    }
    Ok(all.into())
}

pub fn fixtures_list(out: &mut String) -> Result<Verdict> {
    for (name, _) in fixtures::FILES {
        writeln!(out, "{name}")?;
    }
    Ok(Verdict::Holds)
}

pub fn fixtures_show(out: &mut String, name: &str) -> Result<Verdict> {
    let Some((_, text)) = fixtures::FILES.iter().find(|(file, _)| *file == name) else {
        bail!("no bundled file named {name:?}; see `lateq fixtures list`");
    };
    write!(out, "{text}")?;
    Ok(Verdict::Holds)
}
