use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lk_core::lkrep::{LCase, TCase};
use lk_core::suite::{run_suite, FieldChoice, Suite, SuiteConfig, SuiteError, DESK_MAX_N};

#[derive(Parser)]
#[command(
    name = "lk",
    version,
    about = "Exact checks on the Lawrence-Krammer representation of the BMW algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// relations, kernels, classify, main-theorem, genericity, lemma4 or proof-traces
    #[arg(long)]
    suite: String,
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// l as a Laurent monomial in r (r5, -r^3, 1/r^7, ...) or an l-case tag
    #[arg(long, allow_hyphen_values = true, conflicts_with = "l_case")]
    l: Option<String>,
    /// l_eq_r, l_eq_neg_r3, l_eq_inv_r2n3, l_eq_inv_rn3, l_eq_neg_inv_rn3
    #[arg(long)]
    l_case: Option<String>,
    /// t_eq_inv_qn, t_eq_inv_sqrt_qn, t_eq_neg_inv_sqrt_qn, t_eq_inv_q, t_eq_neg_one
    #[arg(long, conflicts_with_all = ["l", "l_case"])]
    t_case: Option<String>,
    /// ratfunc, cyclotomic:<m>, cyclotomic:4n or rational:<p>/<q>
    #[arg(long, default_value = "ratfunc")]
    field: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Lift the desk-scale limit on n.
    #[arg(long)]
    allow_large: bool,
}

fn parse_l(expr: &str) -> Result<LCase, SuiteError> {
    expr.parse::<LCase>()
        .or_else(|_| expr.parse().map(LCase::Explicit))
        .map_err(|e| SuiteError::Config(e.to_string()))
}

fn config(args: &VerifyArgs) -> Result<SuiteConfig, SuiteError> {
    let suite: Suite = args.suite.parse()?;
    let (n_min, n_max) = match (args.n, args.n_min, args.n_max) {
        (Some(n), _, _) => (n, n),
        (None, Some(a), Some(b)) => (a, b),
        (None, Some(a), None) => (a, a),
        (None, None, Some(b)) => (3, b),
        (None, None, None) if suite == Suite::ProofTraces => (8, 8),
        (None, None, None) => return Err(SuiteError::Config("give --n or --n-min/--n-max".into())),
    };
    let mut cfg = SuiteConfig::new(suite, n_min, n_max);
    cfg.l_case = match (&args.l, &args.l_case) {
        (Some(expr), _) => Some(parse_l(expr)?),
        (None, Some(tag)) => Some(
            tag.parse()
                .map_err(|e: lk_core::lkrep::LkError| SuiteError::Config(e.to_string()))?,
        ),
        (None, None) => None,
    };
    cfg.t_case = args
        .t_case
        .as_deref()
        .map(|t| {
            t.parse::<TCase>()
                .map_err(|e| SuiteError::Config(e.to_string()))
        })
        .transpose()?;
    cfg.field = args.field.parse::<FieldChoice>()?;
    cfg.seed = args.seed;
    cfg.trials = args.trials;
    cfg.max_n = if args.allow_large {
        usize::MAX
    } else {
        match std::env::var("LK_MAX_N") {
            Ok(v) => v.parse().map_err(|_| {
                SuiteError::Config(format!("LK_MAX_N must be an integer, got {v:?}"))
            })?,
            Err(_) => DESK_MAX_N,
        }
    };
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> Result<i32, Box<dyn std::error::Error>> {
    let cfg = config(args)?;
    let report = run_suite(&cfg)?;
    let body = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Verify(args) = cli.command;
    match verify(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
