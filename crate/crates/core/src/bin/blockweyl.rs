use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use blockweyl::exec::Backend;
use blockweyl::report::{self, CliError, Format, Output};
use blockweyl::verify::{self, Status};

#[derive(Parser)]
#[command(name = "blockweyl", version, about = "Unipotent block combinatorics on the Weyl group side")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format: json, csv or pretty.
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run sweeps sequentially.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(clap::Args)]
struct Target {
    /// Affine type, e.g. `~C4`.
    descriptor: String,
    /// Element of Omega: 1, prime, doubleprime, k=<order>, nontrivial.
    #[arg(long)]
    omega: Option<String>,
    /// Block as node list `0,1,2` or `empty`.
    #[arg(long = "J")]
    j: Option<String>,
    /// Explicit weights on the affine diagram (overrides --omega/--J).
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Blocks of an affine Weyl group (every element of Omega unless --omega).
    Blocks {
        descriptor: String,
        #[arg(long)]
        omega: Option<String>,
    },
    /// The weighted affine Weyl group of a block.
    WeightedGroup(Target),
    /// The c-function with its second row and extra witnesses.
    CTable(Target),
    /// The pairing matrix factorization (P, Lambda').
    Green {
        #[command(flatten)]
        target: Target,
        /// Specialize entries at this rational q (csv/pretty friendly).
        #[arg(long)]
        q: Option<String>,
    },
    /// Sharp twisted Weyl groups up to an index bound.
    SharpList {
        #[arg(long, default_value_t = 13)]
        max_t: u64,
    },
    /// Springer indexing set of the finite quotient (rank <= 4).
    SpringerIndex { descriptor: String },
    /// Run the invariant suite and diff the golden fixtures.
    Verify {
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Rewrite the fixtures from the current implementation instead.
        #[arg(long)]
        regenerate: bool,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let backend = if cli.sequential { Backend::Sequential } else { Backend::Parallel };
    match &cli.cmd {
        Cmd::Blocks { descriptor, omega } => report::blocks_report(&report::parse_affine(descriptor)?, omega.as_deref()),
        Cmd::WeightedGroup(t) => report::weighted_report(&report::parse_affine(&t.descriptor)?, t.omega.as_deref(), t.j.as_deref()),
        Cmd::CTable(t) => report::ctable_report(&report::parse_affine(&t.descriptor)?, t.omega.as_deref(), t.j.as_deref(), t.weights.as_deref()),
        Cmd::Green { target: t, q } => report::green_report(
            &report::parse_affine(&t.descriptor)?,
            t.omega.as_deref(),
            t.j.as_deref(),
            t.weights.as_deref(),
            q.as_deref(),
            backend,
        ),
        Cmd::SharpList { max_t } => Ok(report::sharp_list_report(*max_t)),
        Cmd::SpringerIndex { descriptor } => report::springer_report(&report::parse_affine(descriptor)?),
        Cmd::Verify { fixtures, regenerate } => {
            let dir = fixtures.clone().unwrap_or_else(verify::default_fixture_dir);
            if *regenerate {
                verify::write_fixtures(&dir, backend)?;
            }
            let checks = verify::run_all(&dir, backend);
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    let (s, d) = match &c.status {
                        Status::Pass => ("pass", String::new()),
                        Status::Fail(d) => ("FAIL", d.clone()),
                        Status::Skipped(d) => ("skipped", d.clone()),
                    };
                    vec![c.group.to_string(), c.name.clone(), s.to_string(), d]
                })
                .collect();
            let failed = checks.iter().filter(|c| matches!(c.status, Status::Fail(_))).count();
            let out = Output {
                json: serde_json::to_value(&checks).unwrap(),
                header: ["group", "check", "status", "detail"].map(String::from).to_vec(),
                rows,
                title: format!("{} checks, {} failed", checks.len(), failed),
            };
            if failed > 0 {
                emit(cli, &out)?;
                return Err(CliError::Invariant(format!("{failed} check(s) failed")));
            }
            Ok(out)
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), CliError> {
    let text = out.render(cli.format);
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, &o)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("blockweyl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
