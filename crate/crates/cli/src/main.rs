//! `lateq`: batch front end for the `latin-equitable` library.
//!
//! Exit codes: 0 success, 1 checked property is false, 2 bad input,
//! 3 search budget exhausted.

mod commands;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use latin_equitable::oracle::SearchBudget;

use commands::Verdict;

#[derive(Parser, Debug)]
#[command(name = "lateq", version, about = "Equitable partitions of Latin-square graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a Latin square to stdout.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Quotient matrix, eigenvalue classification and optional μ verdict.
    Check(CheckArgs),
    /// Print only the quotient matrix (or the non-equitability witness).
    Quotient(PartitionInput),
    /// Recognize a slender set as an inflated corner set.
    Recognize(SetInput),
    /// Split a set into full lines and inflated corner sets.
    Decompose(SetInput),
    /// List μ-perfect sets as a census.
    Enumerate(EnumerateArgs),
    /// List the transversals of a square.
    Transversals {
        square: PathBuf,
        /// Stop after this many.
        #[arg(long)]
        limit: Option<usize>,
        /// Print only the number found.
        #[arg(long)]
        count: bool,
    },
    /// Compare the exhaustive census of (n-3)-perfect sets with the constructive one.
    VerifyTheorem {
        square: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Bundled data files.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// The cyclic square L(i, j) = i + j mod n.
    Cyclic { n: usize },
    /// s-fold inflation of a base square.
    Inflate {
        base: PathBuf,
        #[arg(long)]
        s: usize,
        /// `cyc` (or `cycS`) for cyclic blocks, otherwise one square file per
        /// base letter, or a single file used for every letter.
        #[arg(long, num_args = 1.., required = true)]
        blocks: Vec<String>,
        /// Print the partition into s×s blocks instead of the square.
        #[arg(long)]
        q_partition: bool,
    },
}

#[derive(Args, Debug)]
struct PartitionInput {
    square: PathBuf,
    /// Partition file, or a cell-set file with `--set`.
    partition: PathBuf,
    /// Read the second file as a cell set and use it with its complement.
    #[arg(long)]
    set: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: PartitionInput,
    /// Required value of every non-principal eigenvalue: an integer or `n-K`.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
}

#[derive(Args, Debug)]
struct SetInput {
    square: PathBuf,
    cellset: PathBuf,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    square: PathBuf,
    /// Eigenvalue, integer or `n-K`; defaults to `n-3`.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Use the exhaustive search even when μ = n - 3.
    #[arg(long)]
    oracle: bool,
    /// Only sets with at most this many cells.
    #[arg(long)]
    size_bound: Option<usize>,
    /// Stop after this many sets.
    #[arg(long)]
    max_sets: Option<usize>,
    /// Print only the number of sets.
    #[arg(long)]
    count: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Search node limit.
    #[arg(long, env = "LATEQ_MAX_NODES")]
    max_nodes: Option<u64>,
    /// Largest order the exhaustive search accepts.
    #[arg(long)]
    max_order: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Worker threads; 1 is serial, 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl BudgetArgs {
    fn resolve(self) -> anyhow::Result<SearchBudget> {
        let mut b = SearchBudget::default().with_workers(self.workers);
        if let Some(nodes) = self.max_nodes {
            b = b.with_max_nodes(nodes);
        }
        if let Some(order) = self.max_order {
            b = b.with_max_order(order);
        }
        if let Some(secs) = self.timeout {
            b.wall_clock = Some(Duration::try_from_secs_f64(secs)?);
        }
        Ok(b)
    }
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    /// Re-check every bundled fixture.
    Verify,
    /// Names of the bundled files.
    List,
    /// Print one bundled file.
    Show { name: String },
}

fn run(cli: Cli, out: &mut String) -> anyhow::Result<Verdict> {
    match cli.command {
        Command::Gen { kind } => match kind {
            GenKind::Cyclic { n } => commands::gen_cyclic(out, n),
            GenKind::Inflate {
                base,
                s,
                blocks,
                q_partition,
            } => commands::gen_inflate(out, &base, s, &blocks, q_partition),
        },
        Command::Check(args) => commands::check(
            out,
            &args.input.square,
            &args.input.partition,
            args.input.set,
            args.mu.as_deref(),
        ),
        Command::Quotient(input) => commands::quotient(out, &input.square, &input.partition, input.set),
        Command::Recognize(input) => commands::recognize(out, &input.square, &input.cellset),
        Command::Decompose(input) => commands::decompose(out, &input.square, &input.cellset),
        Command::Enumerate(args) => commands::enumerate(
            out,
            commands::EnumerateRequest {
                square: &args.square,
                mu: args.mu.as_deref(),
                oracle: args.oracle,
                size_bound: args.size_bound,
                max_sets: args.max_sets,
                count: args.count,
                budget: args.budget.resolve()?,
            },
        ),
        Command::Transversals { square, limit, count } => commands::transversals(out, &square, limit, count),
        Command::VerifyTheorem { square, budget } => commands::verify_theorem(out, &square, budget.resolve()?),
        Command::Fixtures { action } => match action {
            FixtureAction::Verify => commands::fixtures_verify(out),
            FixtureAction::List => commands::fixtures_list(out),
            FixtureAction::Show { name } => commands::fixtures_show(out, &name),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = String::new();
    let result = run(cli, &mut out);
    // a closed pipe (e.g. `| head`) is not an error
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(Verdict::Holds) => ExitCode::SUCCESS,
        Ok(Verdict::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .downcast_ref::<latin_equitable::oracle::OracleError>()
                .is_some_and(|o| o.is_budget());
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}
