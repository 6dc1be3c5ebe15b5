use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tripletorb_cli::output::{render_report, render_table, write_text, TableKind};
use tripletorb_cli::{exit, run_suite, BudgetConfig, CliError, Emit, RunConfig, Suite};

#[derive(Parser)]
#[command(
    name = "tripletorb",
    version,
    about = "Exact checks for triplet orbifold constant terms, characters and Zhu algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Constant term identities.
    Ct(SuiteArgs),
    /// Jack polynomial and partition sums.
    Jack(SuiteArgs),
    /// Character decompositions and the lowest-weight census.
    Chars(SuiteArgs),
    /// Rank of the modular closure and character membership.
    Closure(SuiteArgs),
    /// Zhu algebra polynomial bookkeeping.
    Zhu(SuiteArgs),
    /// Every suite.
    All(SuiteArgs),
    /// Export a table with exact fractions.
    Table(TableArgs),
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    /// q-expansion order N.
    #[arg(long, short = 'N')]
    order: Option<u32>,
    /// Run the expensive cases.
    #[arg(long)]
    long: bool,
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    max_seconds: Option<u64>,
}

#[derive(Args)]
struct CommonArgs {
    /// json, csv or human.
    #[arg(long, default_value = "json")]
    emit: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// weights, m2 or zhu.
    kind: String,
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[command(flatten)]
    common: CommonArgs,
}

fn run_config(suite: Suite, a: SuiteArgs) -> Result<RunConfig, CliError> {
    let mut budget = BudgetConfig::from_env()?;
    if let Some(t) = a.max_terms {
        budget.max_terms = t;
    }
    if a.max_seconds.is_some() {
        budget.max_seconds = a.max_seconds;
    }
    let mut cfg = RunConfig::new(suite);
    cfg.p = a.p;
    cfg.m = a.m;
    cfg.r = a.r;
    cfg.order = a.order;
    cfg.long = a.long;
    cfg.workers = a.workers;
    cfg.budget = budget;
    cfg.emit = a.common.emit.parse()?;
    cfg.out = a.common.out;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (suite, args) = match cli.command {
        Command::Ct(a) => (Suite::Ct, a),
        Command::Jack(a) => (Suite::Jack, a),
        Command::Chars(a) => (Suite::Chars, a),
        Command::Closure(a) => (Suite::Closure, a),
        Command::Zhu(a) => (Suite::Zhu, a),
        Command::All(a) => (Suite::All, a),
        Command::Table(t) => {
            if t.p < 2 || t.m == 0 {
                return Err(CliError::Usage("need p >= 2 and m >= 1".into()));
            }
            let kind: TableKind = t.kind.parse()?;
            let emit: Emit = t.common.emit.parse()?;
            write_text(
                &render_table(kind, t.p, t.m, emit)?,
                t.common.out.as_deref(),
            )?;
            return Ok(exit::OK);
        }
    };
    let cfg = run_config(suite, args)?;
    let report = run_suite(&cfg)?;
    write_text(&render_report(&report, cfg.emit)?, cfg.out.as_deref())?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE as u8
            } else {
                exit::OK as u8
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("tripletorb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
