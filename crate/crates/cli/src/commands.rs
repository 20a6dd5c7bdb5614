//! Argument parsing and subcommand execution.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mub_entropy::bounds::{intermediate_bound, refined_intermediate_bound};
use mub_entropy::format::{AnyState, BasisSetJson, PureStateJson, StateJson};
use mub_entropy::measure::{check_larsen_identity, index_purity, measure_all, shannon_entropy};
use mub_entropy::qstate::{haar_random_state, random_density_matrix};
use mub_entropy::{
    bound_report, generate_mub_set, minimize_entropy_sum, verify_mub_set, Error, LogBase,
    OptimizerConfig, Seed,
};
use serde::Serialize;

use crate::chart::{emit_svg_chart, ChartSpec};
use crate::output::write_atomic;
use crate::sweep::{
    emit_csv, format_significant, refined_windows, render_csv, run_sweep, weak_crossing,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "eur",
    version,
    about = "Entropic uncertainty relations for mutually unbiased bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate or verify basis set files.
    #[command(subcommand)]
    Mubs(MubsCommand),
    /// Measurement entropies and purities of a state.
    #[command(subcommand)]
    Entropy(EntropyCommand),
    /// Check the purity identity on random states.
    #[command(subcommand)]
    Identity(IdentityCommand),
    /// Closed-form lower bounds.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Numerically minimize the entropy sum over pure states.
    Minimize(MinimizeArgs),
    /// Bound sweep at N = 1009 as CSV plus an SVG chart.
    Figure1(Figure1Args),
}

#[derive(Debug, Subcommand)]
enum MubsCommand {
    Gen {
        #[arg(long)]
        dim: usize,
        /// Number of bases; defaults to the complete set.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum EntropyCommand {
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    count: Option<usize>,
    /// State file (pure or density matrix JSON).
    #[arg(long, conflicts_with = "random")]
    state: Option<PathBuf>,
    /// Rank of a random state: 1 draws a Haar pure state, K > 1 a rank-K mixture.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Base::Two)]
    base: Base,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum IdentityCommand {
    Check {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
enum BoundsCommand {
    Sweep {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Base::Two)]
        base: Base,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional SVG chart destination.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct MinimizeArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Base::Two)]
    base: Base,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    step: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 31)]
    max_dim: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct Figure1Args {
    #[arg(long, default_value_t = 1009)]
    dim: usize,
    #[arg(long, value_enum, default_value_t = Base::Two)]
    base: Base,
    #[arg(long, default_value = "figure1.csv")]
    csv: PathBuf,
    #[arg(long, default_value = "figure1.svg")]
    svg: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    E,
}

impl Base {
    fn log_base(self) -> LogBase {
        match self {
            Base::Two => LogBase::two(),
            Base::E => LogBase::e(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Base::Two => "2",
            Base::E => "e",
        }
    }

    fn unit(self) -> &'static str {
        match self {
            Base::Two => "bits",
            Base::E => "nats",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Errors classified by exit code.
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(inner) if is_usage(inner) => Failure::Usage(e),
            _ => Failure::Runtime(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::from(e))
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPrime(_)
            | Error::CountOutOfRange { .. }
            | Error::RankOutOfRange { .. }
            | Error::IndexOutOfRange { .. }
            | Error::EmptyDimension
            | Error::Domain(_)
            | Error::InvalidLogBase(_)
            | Error::InvalidConfig(_)
            | Error::DimTooLarge { .. }
    )
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow::anyhow!(msg.into()))
}

/// Parses `argv` (program name first) and runs the command, writing data to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn dispatch_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_FAILED
        }
    }
}

/// [`dispatch_with`] on the process's standard streams.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    dispatch_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Mubs(MubsCommand::Gen {
            dim,
            count,
            out: path,
        }) => {
            let set = generate_mub_set::<f64>(dim, count.unwrap_or(dim + 1))?;
            let json = serde_json::to_string(&BasisSetJson::from(&set)).context("serializing")?;
            write_atomic(&path, json.as_bytes())?;
            writeln!(
                err,
                "wrote {} bases of dimension {dim} to {}",
                set.len(),
                path.display()
            )
            .context("stderr")?;
            Ok(EXIT_OK)
        }
        Command::Mubs(MubsCommand::Verify { input, tol, format }) => {
            verify(&input, tol, format, out)
        }
        Command::Entropy(EntropyCommand::Eval(args)) => eval(args, out),
        Command::Identity(IdentityCommand::Check {
            dim,
            samples,
            seed,
            tol,
            format,
        }) => identity(dim, samples, Seed(seed), tol, format, out),
        Command::Bounds(BoundsCommand::Sweep {
            dim,
            base,
            out: path,
            svg,
        }) => {
            let rows = run_sweep(dim, base.log_base())?;
            match path {
                Some(p) => emit_csv(&rows, &p)?,
                None => out
                    .write_all(render_csv(&rows).as_bytes())
                    .context("stdout")?,
            }
            if let Some(svg) = svg {
                emit_svg_chart(&rows, &ChartSpec::for_sweep(&rows, dim, base.unit()), &svg)?;
            }
            Ok(EXIT_OK)
        }
        Command::Minimize(args) => minimize(args, out),
        Command::Figure1(args) => figure1(args, out),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

#[derive(Serialize)]
struct VerifyJson {
    dim: usize,
    count: usize,
    tol: f64,
    max_orthonormality_error: f64,
    max_unbiasedness_error: f64,
    worst_pair: Option<[usize; 4]>,
    passed: bool,
}

fn verify(input: &Path, tol: f64, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(tol >= 0.0) {
        return Err(usage("--tol must be nonnegative"));
    }
    let json: BasisSetJson = serde_json::from_str(&read(input)?)
        .with_context(|| format!("parsing {}", input.display()))?;
    let bases = json.to_bases::<f64>()?;
    let report = verify_mub_set(&bases, tol)?;
    match format {
        Format::Text => writeln!(
            out,
            "{} bases, dimension {}: {report}",
            bases.len(),
            json.dim
        ),
        Format::Json => {
            let v = VerifyJson {
                dim: json.dim,
                count: bases.len(),
                tol,
                max_orthonormality_error: report.max_orthonormality_error,
                max_unbiasedness_error: report.max_unbiasedness_error,
                worst_pair: report.worst_pair.map(|(k, l, i, j)| [k, l, i, j]),
                passed: report.passed,
            };
            writeln!(out, "{}", serde_json::to_string(&v).context("serializing")?)
        }
    }
    .context("stdout")?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct BasisJsonRow {
    label: usize,
    entropy: f64,
    purity: f64,
}

#[derive(Serialize)]
struct EvalJson {
    dim: usize,
    count: usize,
    base: &'static str,
    state_purity: f64,
    bases: Vec<BasisJsonRow>,
    entropy_sum: f64,
    purity_sum: f64,
    larsen_residual: Option<f64>,
    best_bound: &'static str,
    best_bound_value: f64,
}

fn eval(args: EvalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = args.dim;
    let count = args.count.unwrap_or(p + 1);
    let set = generate_mub_set::<f64>(p, count)?;
    let state: AnyState<f64> = match (&args.state, args.random) {
        (Some(path), _) => {
            let json: StateJson = serde_json::from_str(&read(path)?)
                .with_context(|| format!("parsing {}", path.display()))?;
            json.to_state()?
        }
        (None, Some(1)) => AnyState::Pure(haar_random_state(p, Seed(args.seed))?),
        (None, Some(rank)) => AnyState::Density(random_density_matrix(p, rank, Seed(args.seed))?),
        (None, None) => return Err(usage("one of --state or --random is required")),
    };
    let state = state.as_state();
    if state.dim() != p {
        return Err(Error::DimMismatch(state.dim(), p).into());
    }
    let base = args.base.log_base();
    let dists = measure_all(state, &set)?;
    let rows: Vec<BasisJsonRow> = dists
        .iter()
        .zip(set.bases())
        .map(|(d, b)| BasisJsonRow {
            label: b.label(),
            entropy: shannon_entropy(d, base),
            purity: index_purity(d),
        })
        .collect();
    let entropy_sum: f64 = rows.iter().map(|r| r.entropy).sum();
    let purity_sum: f64 = rows.iter().map(|r| r.purity).sum();
    let larsen_residual = if set.is_complete() {
        Some(check_larsen_identity(state, &set, 0.0)?.residual)
    } else {
        None
    };
    let report = bound_report(p, count, base)?;
    let summary = EvalJson {
        dim: p,
        count,
        base: args.base.name(),
        state_purity: state.purity(),
        bases: rows,
        entropy_sum,
        purity_sum,
        larsen_residual,
        best_bound: report.best.name(),
        best_bound_value: report.best_value,
    };
    let text = match args.format {
        Format::Json => serde_json::to_string(&summary).context("serializing")? + "\n",
        Format::Text => {
            let g = |v: f64| format_significant(v, 6);
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>5}  {:>12}  {:>12}",
                "basis",
                format!("H_k ({})", args.base.unit()),
                "pi_k"
            );
            for r in &summary.bases {
                let _ = writeln!(
                    s,
                    "{:>5}  {:>12}  {:>12}",
                    r.label,
                    g(r.entropy),
                    g(r.purity)
                );
            }
            let _ = writeln!(
                s,
                "{:>5}  {:>12}  {:>12}",
                "sum",
                g(entropy_sum),
                g(purity_sum)
            );
            let _ = writeln!(s, "state purity      {}", g(summary.state_purity));
            if let Some(res) = larsen_residual {
                let _ = writeln!(s, "larsen residual   {res:e}");
            }
            let _ = writeln!(
                s,
                "best lower bound  {} = {}",
                report.best,
                g(report.best_value)
            );
            s
        }
    };
    out.write_all(text.as_bytes()).context("stdout")?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct IdentityJson {
    dim: usize,
    samples: usize,
    tol: f64,
    max_residual_pure: f64,
    max_residual_mixed: f64,
    passed: bool,
}

/// Sample `i` uses `seed.child(2i)` for the pure state and `seed.child(2i+1)`
/// for a full-rank mixed state.
fn identity(
    dim: usize,
    samples: usize,
    seed: Seed,
    tol: f64,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let full = generate_mub_set::<f64>(dim, dim + 1)?;
    let mut pure_max: f64 = 0.0;
    let mut mixed_max: f64 = 0.0;
    for i in 0..samples as u64 {
        let psi = haar_random_state::<f64>(dim, seed.child(2 * i))?;
        pure_max = pure_max.max(check_larsen_identity(&psi, &full, tol)?.residual);
        let rho = random_density_matrix::<f64>(dim, dim, seed.child(2 * i + 1))?;
        mixed_max = mixed_max.max(check_larsen_identity(&rho, &full, tol)?.residual);
    }
    let passed = pure_max <= tol && mixed_max <= tol;
    match format {
        Format::Text => writeln!(
            out,
            "dimension {dim}, {samples} pure + {samples} mixed states: max residual pure {pure_max:e}, mixed {mixed_max:e}, tol {tol:e}: {}",
            if passed { "PASS" } else { "FAIL" }
        ),
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&IdentityJson {
                dim,
                samples,
                tol,
                max_residual_pure: pure_max,
                max_residual_mixed: mixed_max,
                passed,
            })
            .context("serializing")?
        ),
    }
    .context("stdout")?;
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct MinimizeJson {
    dim: usize,
    count: usize,
    base: &'static str,
    min_value: f64,
    intermediate: f64,
    refined: f64,
    bound_value: f64,
    gap: f64,
    iterations_used: usize,
    restart: usize,
    argmin: PureStateJson,
}

fn minimize(args: MinimizeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = OptimizerConfig {
        restarts: args.restarts,
        max_iters: args.iters,
        step_init: args.step,
        converge_tol: args.tol,
        seed: Seed(args.seed),
        max_dim: args.max_dim,
    };
    let set = generate_mub_set::<f64>(args.dim, args.count)?;
    let base = args.base.log_base();
    // Bound values are needed for the report even if minimization fails.
    let intermediate = intermediate_bound(args.dim, args.count, base)?;
    let refined = refined_intermediate_bound(args.dim, args.count, base)?;
    let r = minimize_entropy_sum(&set, base, &cfg)?;
    let summary = MinimizeJson {
        dim: args.dim,
        count: args.count,
        base: args.base.name(),
        min_value: r.min_value,
        intermediate,
        refined,
        bound_value: r.bound_value,
        gap: r.gap,
        iterations_used: r.iterations_used,
        restart: r.restart,
        argmin: PureStateJson::from(&r.argmin),
    };
    let text = match args.format {
        Format::Json => serde_json::to_string(&summary).context("serializing")? + "\n",
        Format::Text => {
            let g = |v: f64| format_significant(v, 6);
            let mut s = String::new();
            let _ = writeln!(
                s,
                "min entropy sum   {} {}",
                g(r.min_value),
                args.base.unit()
            );
            let _ = writeln!(s, "intermediate      {}", g(intermediate));
            let _ = writeln!(s, "refined           {}", g(refined));
            let _ = writeln!(s, "gap               {}", g(r.gap));
            let _ = writeln!(
                s,
                "best restart      {} ({} iterations)",
                r.restart, r.iterations_used
            );
            let _ = writeln!(
                s,
                "argmin            {}",
                serde_json::to_string(&summary.argmin).context("serializing")?
            );
            s
        }
    };
    out.write_all(text.as_bytes()).context("stdout")?;
    Ok(EXIT_OK)
}

fn figure1(args: Figure1Args, out: &mut dyn Write) -> Result<i32, Failure> {
    let rows = run_sweep(args.dim, args.base.log_base())?;
    emit_csv(&rows, &args.csv)?;
    emit_svg_chart(
        &rows,
        &ChartSpec::for_sweep(&rows, args.dim, args.base.unit()),
        &args.svg,
    )?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "wrote {} rows to {} and {}",
        rows.len(),
        args.csv.display(),
        args.svg.display()
    );
    if let Some(m) = weak_crossing(&rows) {
        let _ = writeln!(s, "weak bounds cross at M = {m}");
    }
    for (a, b) in refined_windows(&rows) {
        let _ = writeln!(s, "refined bound beats both weak bounds for M in {a}..={b}");
    }
    out.write_all(s.as_bytes()).context("stdout")?;
    Ok(EXIT_OK)
}
