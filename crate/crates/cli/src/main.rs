//! `skewjames` command-line front end.
//!
//! Data goes to stdout (or `--out`); run metadata goes to stderr. Exit
//! codes: 0 ok, 1 check failure, 2 usage error, 3 IO error.

mod compute;
mod output;
mod reproduce;
mod space;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use skewjames::verify::{self, Claim, SuiteGrid, Summary, Verdict, Verifier, VerifyConfig};
use skewjames::{ExtReal, MethodChoice, SearchConfig};

use compute::{evaluate, ConstantId, Point, Record, CSV_HEADER};
use output::{csv_text, emit, g12, table_text, Format};
use reproduce::{reproduce, Example, Line};
use space::parse_space;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "skewjames",
    version,
    about = "Geometric constants of two-dimensional normed spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one constant at scalar parameters.
    Compute(ComputeArgs),
    /// Evaluate one constant over ranges of t, tau or eps.
    Sweep(SweepArgs),
    /// Certify inequalities between the constants.
    Check(CheckArgs),
    /// Regenerate the worked example values.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Coarse grid points per full turn.
    #[arg(long)]
    grid: Option<usize>,
    /// Refinement rounds.
    #[arg(long)]
    rounds: Option<usize>,
    /// Box shrink factor per round, in (0, 1).
    #[arg(long)]
    shrink: Option<f64>,
    /// Local optima refined per search.
    #[arg(long)]
    seeds: Option<usize>,
}

impl SearchArgs {
    fn config(&self, tol: Option<f64>) -> Result<SearchConfig, CliError> {
        let d = SearchConfig::default();
        let cfg = SearchConfig {
            coarse_grid: self.grid.unwrap_or(d.coarse_grid),
            refine_rounds: self.rounds.unwrap_or(d.refine_rounds),
            refine_shrink: self.shrink.unwrap_or(d.refine_shrink),
            top_cells: self.seeds.unwrap_or(d.top_cells),
            tol: tol.unwrap_or(d.tol),
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write data to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConstantArgs {
    /// builtin:<id> | pnorm:<p|inf> | file:<path> | <builtin id>
    #[arg(long)]
    space: String,
    #[arg(long, value_enum)]
    constant: ConstantId,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    /// James constant fed to g-bound; computed from the space when absent.
    #[arg(long)]
    j: Option<f64>,
    /// auto | exact | grid
    #[arg(long, default_value = "auto")]
    method: MethodChoice,
    /// Search tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    common: ConstantArgs,
    /// Mean parameter: a number, -inf or +inf.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: ConstantArgs,
    /// start:stop:step, a comma list (may contain -inf, +inf) or one value.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Space to certify; the four suite spaces when absent.
    #[arg(long)]
    space: Option<String>,
    /// Claim id, comma list of ids, or `all`.
    #[arg(long, default_value = "all")]
    claim: String,
    /// Override the t grid (comma list or start:stop:step).
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Override the tau grid (comma list or start:stop:step).
    #[arg(long)]
    tau: Option<String>,
    /// Certificate tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    #[arg(value_enum, default_value = "all")]
    example: Example,
    #[command(flatten)]
    search: SearchArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let started = Instant::now();
    let result = match &cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Check(args) => run_check(args),
        Command::Reproduce(args) => run_reproduce(args),
    };
    match result {
        Ok(code) => {
            eprintln!("# elapsed {:.2}s", started.elapsed().as_secs_f64());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn parse_t(s: &str) -> Result<ExtReal, CliError> {
    s.parse::<ExtReal>().map_err(|e| CliError::Usage(format!("--t: {e}")))
}

fn parse_f64(flag: &str, s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("--{flag}: '{s}' is not a finite number")))
}

/// Expands `start:stop:step` or a comma list. The flag tells whether the
/// argument was a range or list rather than a single value.
fn parse_values<T>(flag: &str, s: &str, item: impl Fn(&str) -> Result<T, CliError>) -> Result<(Vec<T>, bool), CliError>
where
    T: From<f64>,
{
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(CliError::Usage(format!("--{flag}: expected start:stop:step")));
        };
        let (start, stop, step) = (parse_f64(flag, start)?, parse_f64(flag, stop)?, parse_f64(flag, step)?);
        if step <= 0.0 {
            return Err(CliError::Usage(format!("--{flag}: step must be positive")));
        }
        if stop < start {
            return Err(CliError::Usage(format!("--{flag}: empty range {s}")));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        Ok(((0..=n).map(|k| T::from(start + k as f64 * step)).collect(), true))
    } else {
        let items: Vec<&str> = s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
        if items.is_empty() {
            return Err(CliError::Usage(format!("--{flag}: empty list")));
        }
        let ranged = items.len() > 1 || s.contains(',');
        Ok((items.into_iter().map(item).collect::<Result<_, _>>()?, ranged))
    }
}

fn check_unused(args: &ConstantArgs, has_t: bool, has_tau: bool, has_eps: bool) -> Result<(), CliError> {
    use ConstantId::*;
    let c = args.constant;
    let uses_t = matches!(c, SkewJames | JamesType | G | CT);
    let uses_tau = matches!(c, SkewJames | JamesType | GaoSkew);
    let flags = [
        ("t", has_t, uses_t),
        ("tau", has_tau, uses_tau),
        ("eps", has_eps, c == Modulus),
        ("lambda", args.lambda.is_some(), c == Lyj),
        ("mu", args.mu.is_some(), c == Lyj),
        ("j", args.j.is_some(), c == GBound),
    ];
    for (flag, given, used) in flags {
        if given && !used {
            return Err(CliError::Usage(format!("--{flag} does not apply to {}", c.name())));
        }
    }
    Ok(())
}

fn base_point(args: &ConstantArgs) -> Point {
    Point {
        lambda: args.lambda,
        mu: args.mu,
        j: args.j,
        ..Point::default()
    }
}

fn render_records(records: &[Record], format: Format) -> Result<String, CliError> {
    let with_eps = records.iter().any(|r| r.eps.is_some());
    let mut header = CSV_HEADER.to_vec();
    if with_eps {
        header.push("eps");
    }
    let rows: Vec<Vec<String>> = records.iter().map(|r| r.cells(with_eps)).collect();
    Ok(match format {
        Format::Json => records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect(),
        Format::Csv => csv_text(&header, &rows)?,
        Format::Table => table_text(&header, &rows),
    })
}

fn run_compute(args: &ComputeArgs) -> Result<u8, CliError> {
    let common = &args.common;
    check_unused(common, args.t.is_some(), args.tau.is_some(), args.eps.is_some())?;
    let space = parse_space(&common.space)?;
    let cfg = common.search.config(common.tol)?;
    let point = Point {
        t: args.t.as_deref().map(parse_t).transpose()?,
        tau: args.tau,
        eps: args.eps,
        ..base_point(common)
    };
    let record = evaluate(&space, common.constant, point, common.method, &cfg)?;
    eprintln!("# compute {} on {}", common.constant.name(), space.label());
    emit(
        &render_records(&[record], common.output.format.unwrap_or(Format::Json))?,
        common.output.out.as_deref(),
    )?;
    Ok(0)
}

fn sorted<T: PartialOrd>(mut v: Vec<T>) -> Vec<T> {
    v.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    v.dedup_by(|a, b| a == b);
    v
}

fn run_sweep(args: &SweepArgs) -> Result<u8, CliError> {
    let common = &args.common;
    check_unused(common, args.t.is_some(), args.tau.is_some(), args.eps.is_some())?;
    let space = parse_space(&common.space)?;
    let cfg = common.search.config(common.tol)?;
    let axis = |flag: &str, arg: &Option<String>| -> Result<(Vec<Option<f64>>, bool), CliError> {
        match arg {
            None => Ok((vec![None], false)),
            Some(s) => {
                let (v, ranged) = parse_values(flag, s, |x| parse_f64(flag, x))?;
                Ok((sorted(v).into_iter().map(Some).collect(), ranged))
            }
        }
    };
    let (ts, t_ranged) = match &args.t {
        None => (vec![None], false),
        Some(s) => {
            let (v, ranged) = parse_values("t", s, parse_t)?;
            (sorted(v).into_iter().map(Some).collect(), ranged)
        }
    };
    let (taus, tau_ranged) = axis("tau", &args.tau)?;
    let (epss, eps_ranged) = axis("eps", &args.eps)?;
    if !(t_ranged || tau_ranged || eps_ranged) {
        return Err(CliError::Usage(
            "sweep needs at least one range (start:stop:step or comma list)".to_string(),
        ));
    }
    let mut records = Vec::new();
    for &t in &ts {
        for &tau in &taus {
            for &eps in &epss {
                let point = Point {
                    t,
                    tau,
                    eps,
                    ..base_point(common)
                };
                records.push(evaluate(&space, common.constant, point, common.method, &cfg)?);
            }
        }
    }
    eprintln!(
        "# sweep {} on {}: {} rows",
        common.constant.name(),
        space.label(),
        records.len()
    );
    emit(
        &render_records(&records, common.output.format.unwrap_or(Format::Csv))?,
        common.output.out.as_deref(),
    )?;
    Ok(0)
}

fn parse_claims(s: &str) -> Result<Vec<Claim>, CliError> {
    if s == "all" {
        return Ok(Claim::ALL.to_vec());
    }
    s.split(',')
        .map(|c| c.trim().parse::<Claim>().map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn run_check(args: &CheckArgs) -> Result<u8, CliError> {
    let claims = parse_claims(&args.claim)?;
    let spaces = match &args.space {
        Some(s) => vec![parse_space(s)?],
        None => verify::suite_spaces(),
    };
    let mut grid = SuiteGrid::default();
    if let Some(s) = &args.t {
        let (ts, _) = parse_values("t", s, |x| parse_f64("t", x))?;
        grid.power_ts = ts.iter().copied().filter(|&t| t >= 1.0).collect();
        grid.ts = ts;
    }
    if let Some(s) = &args.tau {
        grid.taus = parse_values("tau", s, |x| parse_f64("tau", x))?.0;
    }
    let tol = args.tol.unwrap_or(verify::DEFAULT_TOL);
    if tol.is_nan() || tol < 0.0 {
        return Err(CliError::Usage("--tol must be non-negative".to_string()));
    }
    let cfg = VerifyConfig {
        search: args.search.config(None)?,
        tol,
        ..VerifyConfig::default()
    };
    let mut certs = Vec::new();
    for space in &spaces {
        let verifier = Verifier::new(space, cfg);
        certs.extend(
            verifier
                .run(&claims, &grid)
                .map_err(|e| CliError::Usage(e.to_string()))?,
        );
    }
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => verify::to_json_lines(&certs),
        Format::Table => verify::to_table(&certs),
        Format::Csv => {
            let header = [
                "claim", "side", "space", "params", "lhs", "rhs", "margin", "tol", "verdict",
            ];
            let rows: Vec<Vec<String>> = certs
                .iter()
                .map(|c| {
                    vec![
                        c.claim.id().to_string(),
                        c.side.clone(),
                        c.space.clone(),
                        serde_json::to_string(&c.params).expect("params serialize"),
                        g12(c.lhs),
                        g12(c.rhs),
                        g12(c.margin),
                        g12(c.tol),
                        c.verdict.as_str().to_string(),
                    ]
                })
                .collect();
            csv_text(&header, &rows)?
        }
    };
    emit(&text, args.output.out.as_deref())?;
    let summary = Summary::of(&certs);
    eprintln!(
        "# {} certificates: {} pass, {} inconclusive, {} fail, {} skipped",
        summary.total(),
        summary.pass,
        summary.inconclusive,
        summary.fail,
        summary.skipped
    );
    let mut notices: Vec<String> = certs
        .iter()
        .filter(|c| c.verdict == Verdict::Skipped)
        .map(|c| {
            format!(
                "# skipped {} on {}: {}",
                c.claim.id(),
                c.space,
                c.note.as_deref().unwrap_or("")
            )
        })
        .collect();
    notices.dedup();
    for n in notices {
        eprintln!("{n}");
    }
    Ok(if summary.fail > 0 { 1 } else { 0 })
}

fn run_reproduce(args: &ReproduceArgs) -> Result<u8, CliError> {
    let cfg = args.search.config(None)?;
    let lines = reproduce(args.example, &cfg)?;
    let rows: Vec<Vec<String>> = lines.iter().map(Line::cells).collect();
    let text = match args.output.format.unwrap_or(Format::Table) {
        Format::Json => lines
            .iter()
            .map(|l| serde_json::to_string(l).expect("lines serialize") + "\n")
            .collect(),
        Format::Csv => csv_text(&Line::HEADER, &rows)?,
        Format::Table => table_text(&Line::HEADER, &rows),
    };
    emit(&text, args.output.out.as_deref())?;
    let failed = lines.iter().filter(|l| !l.pass).count();
    eprintln!("# {} lines, {} outside tolerance", lines.len(), failed);
    Ok(if failed > 0 { 1 } else { 0 })
}
