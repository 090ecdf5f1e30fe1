use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use latin_equitable::fixtures;
use latin_equitable::format::{
    parse_census, parse_square, write_cellset, write_census, write_partition, write_square, write_transversal, Census,
};
use latin_equitable::inflation::{inflate, standard_q_partition, InflationSpec};
use latin_equitable::neg3::{find_transversals, Transversal};
use latin_equitable::oracle::{brute_force_mu_perfect, SearchBudget};
use latin_equitable::partition::{quotient_matrix, Equitability};
use latin_equitable::perfect::{
    corner_set, decompose, enumerate_perfect_sets, recognize, EnumerateOptions, Line, LineKind,
};
use latin_equitable::{build_graph, CellSet, LatinSquare, Partition};
use tempfile::TempDir;

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn lateq<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_lateq"))
        .args(args)
        .env_remove("LATEQ_MAX_NODES")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_cyclic() {
    let out = lateq(["gen", "cyclic", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), write_square(&LatinSquare::cyclic(5)));
    assert!(stdout(&out).starts_with("5\n0 1 2 3 4\n1 2 3 4 0\n"));
    assert_eq!(stdout(&lateq(["gen", "cyclic", "1"])), "1\n0\n");
    assert_eq!(code(&lateq(["gen", "cyclic", "0"])), 2);
    assert_eq!(code(&lateq(["gen", "cyclic", "x"])), 2);
}

#[test]
fn gen_inflate() {
    let dir = Scratch::new();
    let base = dir.file("base2.ls", &write_square(&LatinSquare::cyclic(2)));
    let spec = InflationSpec::cyclic_blocks(LatinSquare::cyclic(2), 3).unwrap();

    let out = lateq(["gen", "inflate", p(&base), "--s", "3", "--blocks", "cyc3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text, write_square(&inflate(&spec)));
    let sq = parse_square(&text).unwrap();
    assert_eq!(sq.order(), 6);

    let q = lateq([
        "gen",
        "inflate",
        p(&base),
        "--s",
        "3",
        "--blocks",
        "cyc",
        "--q-partition",
    ]);
    assert_eq!(stdout(&q), write_partition(&standard_q_partition(&spec)));
    let sq_file = dir.file("inflated.ls", &text);
    let q_file = dir.file("q.partition", &stdout(&q));
    let checked = lateq(["check", p(&sq_file), p(&q_file)]);
    assert_eq!(code(&checked), 0, "{}", stdout(&checked));
    // 3(s-1)I + sA(base) with s = 3; the order-2 graph is K4
    assert!(
        stdout(&checked).contains("[6 3 3 3]\n[3 6 3 3]\n[3 3 6 3]\n[3 3 3 6]\n"),
        "{}",
        stdout(&checked)
    );

    // block files: one shared square, or one per base letter
    let block = dir.file("block.ls", &write_square(&LatinSquare::cyclic(3)));
    let shared = lateq(["gen", "inflate", p(&base), "--s", "3", "--blocks", p(&block)]);
    assert_eq!(stdout(&shared), text);
    let other = dir.file("block1.ls", "3\n0 2 1\n2 1 0\n1 0 2\n");
    let mixed = lateq(["gen", "inflate", p(&base), "--s", "3", "--blocks", p(&block), p(&other)]);
    assert_eq!(code(&mixed), 0);
    assert!(parse_square(&stdout(&mixed)).is_ok());

    let not_latin = dir.file("bad.ls", "3\n0 1 2\n0 1 2\n2 0 1\n");
    assert_eq!(
        code(&lateq([
            "gen",
            "inflate",
            p(&base),
            "--s",
            "3",
            "--blocks",
            p(&not_latin)
        ])),
        2
    );
    let wrong_size = dir.file("small.ls", &write_square(&LatinSquare::cyclic(2)));
    assert_eq!(
        code(&lateq([
            "gen",
            "inflate",
            p(&base),
            "--s",
            "3",
            "--blocks",
            p(&wrong_size)
        ])),
        2
    );
    assert_eq!(
        code(&lateq(["gen", "inflate", p(&base), "--s", "0", "--blocks", "cyc"])),
        2
    );
}

#[test]
fn check_corner_partition() {
    let dir = Scratch::new();
    let sq = dir.file("c6.ls", fixtures::CORNER_CYCLIC6_SQUARE);
    let part = dir.file("c6.partition", fixtures::CORNER_CYCLIC6_PARTITION);
    let out = lateq(["check", p(&sq), p(&part), "--mu", "n-3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("quotient\n[8 2 5]\n[5 5 5]\n[5 2 8]\n"), "{text}");
    assert!(text.contains("eigenvalues 15 (x1) 3 (x2) -3 (x0)"), "{text}");
    assert!(text.ends_with("mu 3: holds\n"));
    assert_eq!(code(&lateq(["check", p(&sq), p(&part), "--mu", "-3"])), 1);

    let q = lateq(["quotient", p(&sq), p(&part)]);
    assert_eq!(code(&q), 0);
    let square = parse_square(fixtures::CORNER_CYCLIC6_SQUARE).unwrap();
    let partition = latin_equitable::format::parse_partition(fixtures::CORNER_CYCLIC6_PARTITION).unwrap();
    let Equitability::Equitable(m) = quotient_matrix(&build_graph(&square), &partition).unwrap() else {
        panic!("fixture is equitable");
    };
    assert_eq!(stdout(&q), m.matrix().to_string());
}

#[test]
fn check_lines_and_three_part_fixture() {
    let dir = Scratch::new();
    for n in [4usize, 5, 7] {
        let sq = dir.file("sq.ls", &write_square(&LatinSquare::cyclic(n)));
        let rows = dir.file("rows.partition", &write_partition(&Partition::rows(n)));
        assert_eq!(code(&lateq(["check", p(&sq), p(&rows), "--mu", "n-3"])), 0);
        assert_eq!(
            code(&lateq(["check", p(&sq), p(&rows), "--mu", &(n as i64 - 3).to_string()])),
            0
        );
        assert_eq!(code(&lateq(["check", p(&sq), p(&rows), "--mu", "-3"])), 1);
        let row = dir.file(
            "row.cellset",
            &write_cellset(&Line::new(LineKind::Row, 0).cells(&LatinSquare::cyclic(n))),
        );
        assert_eq!(code(&lateq(["check", p(&sq), p(&row), "--set", "--mu", "n-3"])), 0);
    }
    let sq = dir.file("o7.ls", fixtures::ORDER7_SQUARE);
    let part = dir.file("o7.partition", fixtures::ORDER7_PARTITION);
    let out = lateq(["check", p(&sq), p(&part), "--mu", "-3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("parts 3 sizes 7 14 28\n"));
}

#[test]
fn check_reports_non_equitable_partitions() {
    let dir = Scratch::new();
    let sq = dir.file("sq.ls", &write_square(&LatinSquare::cyclic(4)));
    let lopsided = dir.file("s.cellset", &write_cellset(&CellSet::from_indices(4, [0, 1, 5])));
    let out = lateq(["check", p(&sq), p(&lopsided), "--set"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not equitable"));
    assert_eq!(code(&lateq(["quotient", p(&sq), p(&lopsided), "--set"])), 1);
}

#[test]
fn recognize_certificates_and_rejections() {
    let dir = Scratch::new();
    let c4 = LatinSquare::cyclic(4);
    let sq = dir.file("c4.ls", &write_square(&c4));
    let corner = corner_set(4).unwrap();
    let set = dir.file("corner.cellset", &write_cellset(&corner));
    let out = lateq(["recognize", p(&sq), p(&set)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), recognize(&c4, &corner).unwrap().to_string());
    assert!(stdout(&out).contains("\ns 1\nt 4\n"));

    let spec = InflationSpec::cyclic_blocks(LatinSquare::cyclic(2), 3).unwrap();
    let big = inflate(&spec);
    let big_file = dir.file("i6.ls", &write_square(&big));
    let block = CellSet::from_fn(6, |r, c| r < 3 && c < 3);
    let block_file = dir.file("block.cellset", &write_cellset(&block));
    let out = lateq(["recognize", p(&big_file), p(&block_file)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("\ns 3\nt 2\n"));

    let row = dir.file("row.cellset", &write_cellset(&Line::new(LineKind::Row, 0).cells(&c4)));
    let out = lateq(["recognize", p(&sq), p(&row)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("rejected: "));
    assert!(stdout(&out).contains("not slender"));

    let wrong_order = dir.file("c5.cellset", &write_cellset(&corner_set(5).unwrap()));
    assert_eq!(code(&lateq(["recognize", p(&sq), p(&wrong_order)])), 2);
}

#[test]
fn decompose_lines_and_corners() {
    let dir = Scratch::new();
    let c5 = LatinSquare::cyclic(5);
    let sq = dir.file("c5.ls", &write_square(&c5));
    // a full letter together with a corner set lying off that letter
    let corner = corner_set(5).unwrap();
    let letter = Line::new(LineKind::Letter, 4).cells(&c5);
    assert!(corner.is_disjoint(&letter));
    let union = corner.union(&letter);
    let set = dir.file("u.cellset", &write_cellset(&union));
    let out = lateq(["decompose", p(&sq), p(&set)]);
    assert_eq!(code(&out), 0);
    let expected: String = decompose(&c5, &union)
        .unwrap()
        .iter()
        .map(|c| format!("{c}\n"))
        .collect();
    assert_eq!(stdout(&out), expected);
    assert_eq!(stdout(&out).lines().count(), 2);

    let junk = dir.file("j.cellset", &write_cellset(&CellSet::from_indices(5, [0, 1, 6])));
    let out = lateq(["decompose", p(&sq), p(&junk)]);
    assert_eq!(code(&out), 1);
}

#[test]
fn transversal_listings() {
    let dir = Scratch::new();
    let c4 = dir.file("c4.ls", &write_square(&LatinSquare::cyclic(4)));
    let out = lateq(["transversals", p(&c4)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
    assert_eq!(stdout(&lateq(["transversals", p(&c4), "--count"])), "0\n");

    let graeco = parse_square(fixtures::GRAECO_LATIN4_SQUARE).unwrap();
    let g = dir.file("g.ls", fixtures::GRAECO_LATIN4_SQUARE);
    let expected: String = find_transversals(&graeco, None).iter().map(write_transversal).collect();
    assert_eq!(stdout(&lateq(["transversals", p(&g)])), expected);
    assert_eq!(
        stdout(&lateq(["transversals", p(&g), "--limit", "2"])).lines().count(),
        2
    );
}

#[test]
fn verify_theorem_on_cyclic_five() {
    let dir = Scratch::new();
    let sq = dir.file("c5.ls", &write_square(&LatinSquare::cyclic(5)));
    let out = lateq(["verify-theorem", p(&sq)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "PASS n=5 oracle=290 constructive=290 slender=100\n");
    let serial = lateq(["verify-theorem", p(&sq), "--workers", "1"]);
    assert_eq!(stdout(&serial), stdout(&out));
}

#[test]
fn enumerate_balanced_sets_of_graeco_latin_square() {
    let dir = Scratch::new();
    let sq = parse_square(fixtures::GRAECO_LATIN4_SQUARE).unwrap();
    let mate = parse_square(fixtures::GRAECO_LATIN4_MATE).unwrap();
    let file = dir.file("g.ls", fixtures::GRAECO_LATIN4_SQUARE);
    let out = lateq(["enumerate", p(&file), "--mu", "-3"]);
    assert_eq!(code(&out), 0);
    let census = parse_census(&stdout(&out)).unwrap();
    assert!(census.matches(&sq));
    let expected = brute_force_mu_perfect(&build_graph(&sq), -3, &SearchBudget::default()).unwrap();
    assert_eq!(stdout(&out), write_census(&Census::new(&sq, -3, expected.clone())));

    let by_mate: Vec<CellSet> = (0..4)
        .map(|l| {
            let cols = (0..4).map(|r| (0..4).find(|&c| mate.get(r, c) == l).unwrap()).collect();
            Transversal::new(&sq, cols).unwrap().cells()
        })
        .collect();
    for (i, a) in by_mate.iter().enumerate() {
        assert!(expected.binary_search(a).is_ok());
        for b in &by_mate[i + 1..] {
            assert!(expected.binary_search(&a.union(b)).is_ok());
        }
    }
    let three = by_mate[0].union(&by_mate[1]).union(&by_mate[2]);
    assert!(expected.binary_search(&three).is_ok());
}

#[test]
fn enumerate_perfect_sets_constructively() {
    let dir = Scratch::new();
    for sq in [LatinSquare::cyclic(4), LatinSquare::cyclic(6)] {
        let file = dir.file("sq.ls", &write_square(&sq));
        let out = lateq(["enumerate", p(&file)]);
        assert_eq!(code(&out), 0);
        let sets = enumerate_perfect_sets(&sq, EnumerateOptions::default()).sets;
        let mu = sq.order() as i64 - 3;
        assert_eq!(stdout(&out), write_census(&Census::new(&sq, mu, sets.clone())));
        assert_eq!(
            stdout(&lateq(["enumerate", p(&file), "--count"])),
            format!("{}\n", sets.len())
        );
    }
    let file = dir.file("c4.ls", &write_square(&LatinSquare::cyclic(4)));
    assert_eq!(stdout(&lateq(["enumerate", p(&file), "--count"])), "138\n");
    assert_eq!(stdout(&lateq(["enumerate", p(&file), "--count", "--oracle"])), "138\n");
    assert_eq!(
        stdout(&lateq(["enumerate", p(&file), "--count", "--max-sets", "7"])),
        "7\n"
    );
    let small = brute_force_mu_perfect(&build_graph(&LatinSquare::cyclic(4)), 1, &SearchBudget::default())
        .unwrap()
        .into_iter()
        .filter(|s| s.len() <= 4)
        .count();
    let out = lateq(["enumerate", p(&file), "--mu", "1", "--count", "--size-bound", "4"]);
    assert_eq!(stdout(&out), format!("{small}\n"));
}

#[test]
fn budgets_and_workers() {
    let dir = Scratch::new();
    let file = dir.file("c5.ls", &write_square(&LatinSquare::cyclic(5)));
    let env_limited = Command::new(env!("CARGO_BIN_EXE_lateq"))
        .args(["enumerate", p(&file), "--mu", "-3"])
        .env("LATEQ_MAX_NODES", "10")
        .output()
        .unwrap();
    assert_eq!(code(&env_limited), 3);
    assert!(String::from_utf8_lossy(&env_limited.stderr).contains("node budget"));
    let overridden = Command::new(env!("CARGO_BIN_EXE_lateq"))
        .args([
            "enumerate",
            p(&file),
            "--mu",
            "-3",
            "--count",
            "--max-nodes",
            "100000000",
        ])
        .env("LATEQ_MAX_NODES", "10")
        .output()
        .unwrap();
    assert_eq!(code(&overridden), 0);
    assert_eq!(stdout(&overridden), "290\n");

    assert_eq!(code(&lateq(["verify-theorem", p(&file), "--max-order", "4"])), 3);
    assert_eq!(code(&lateq(["verify-theorem", p(&file), "--timeout", "0"])), 3);
    let six = dir.file("c6.ls", &write_square(&LatinSquare::cyclic(6)));
    assert_eq!(code(&lateq(["enumerate", p(&six), "--mu", "-3"])), 3);

    let serial = lateq(["enumerate", p(&file), "--mu", "2", "--oracle", "--workers", "1"]);
    let parallel = lateq(["enumerate", p(&file), "--mu", "2", "--oracle", "--workers", "3"]);
    assert_eq!(code(&serial), 0);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn fixture_commands() {
    let out = lateq(["fixtures", "verify"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(
        stdout(&out).lines().filter(|l| l.starts_with("PASS ")).count(),
        fixtures::verify_all().len()
    );
    assert!(!stdout(&out).contains("FAIL"));

    let list = stdout(&lateq(["fixtures", "list"]));
    assert_eq!(list.lines().count(), fixtures::FILES.len());
    assert_eq!(
        stdout(&lateq(["fixtures", "show", "graeco_latin4.square"])),
        fixtures::GRAECO_LATIN4_SQUARE
    );
    assert_eq!(code(&lateq(["fixtures", "show", "nope"])), 2);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = Scratch::new();
    let sq = dir.file("c4.ls", &write_square(&LatinSquare::cyclic(4)));
    let rows5 = dir.file("r5.partition", &write_partition(&Partition::rows(5)));
    let garbage = dir.file("bad.ls", "3\n0 1\n");
    let missing = dir.0.path().join("missing.ls");
    assert_eq!(code(&lateq(["check", p(&sq), p(&rows5)])), 2);
    assert_eq!(code(&lateq(["check", p(&garbage), p(&rows5)])), 2);
    assert_eq!(code(&lateq(["transversals", p(&missing)])), 2);
    let rows4 = dir.file("r4.partition", &write_partition(&Partition::rows(4)));
    assert_eq!(code(&lateq(["check", p(&sq), p(&rows4), "--mu", "banana"])), 2);
    assert_eq!(code(&lateq(["frobnicate"])), 2);
    assert_eq!(code(&lateq(["--help"])), 0);
    let err = lateq(["check", p(&garbage), p(&rows5)]);
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error: parsing square"));
}
