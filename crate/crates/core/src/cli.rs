//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 an audited
//! inequality failed, 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::density::{BlockShape, DensityMatrix};
use crate::error::Error;
use crate::inequality::{check_all, minkowski_check, MinkowskiParams};
use crate::matrix_io::read_matrix_file;
use crate::sweep::{
    audit, emit_csv, format_number, run_sweep, scan_conjecture, write_csv, write_scan_csv,
    DeltaStats, Family, SweepSpec,
};
use crate::tol;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qudit-purity", version, about = "Purity inequalities for block density matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep a state family and write one CSV row per grid point
    Sweep(SweepArgs),
    /// Check the purity inequalities on random Ginibre states
    Audit(EnsembleArgs),
    /// Look for entangled states with non-positive mu_tilde - mu12
    Scan(ScanArgs),
    /// Evaluate every inequality for a state read from a matrix file
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// werner, gisin, beta or xrandom
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Defaults to the family's parameter domain
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    stop: Option<f64>,
    #[arg(long, default_value_t = tol::SWEEP_POINTS)]
    count: usize,
    /// Gisin amplitude a
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    a: f64,
    /// Gisin amplitude b
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    /// Allowed deviation of |a|^2 + |b|^2 from 1
    #[arg(long, default_value_t = tol::GISIN_NORM_SLACK)]
    slack: f64,
    /// Base seed for the xrandom family
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    #[arg(long, default_value = "2x2", value_parser = parse_shape)]
    shape: BlockShape,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = tol::AUDIT, allow_hyphen_values = true)]
    tol: f64,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, default_value = "2x2", value_parser = parse_shape)]
    shape: BlockShape,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Entangled samples with delta <= tol are counterexamples
    #[arg(long, default_value_t = tol::ENTANGLEMENT, allow_hyphen_values = true)]
    tol: f64,
    /// Per-sample CSV
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Matrix file: "n m" header, then "row col re im" lines
    file: PathBuf,
    #[arg(long, default_value_t = tol::AUDIT, allow_hyphen_values = true)]
    tol: f64,
    /// Also evaluate the Minkowski inequality with these exponents
    #[arg(long, requires = "q")]
    p: Option<f64>,
    #[arg(long, requires = "p")]
    q: Option<f64>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_shape(s: &str) -> Result<BlockShape, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Sweep(args) => sweep(args, out),
        Command::Audit(args) => run_audit(args, out),
        Command::Scan(args) => scan(args, out),
        Command::Check(args) => check(args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

type CmdResult = Result<i32, Error>;

fn sweep(args: SweepArgs, out: &mut dyn Write) -> CmdResult {
    let (lo, hi) = match args.family {
        Family::Werner => (-1.0 / 3.0, 1.0),
        Family::Gisin | Family::Beta | Family::XRandom => (0.0, 1.0),
    };
    let spec = SweepSpec {
        family: args.family,
        start: args.start.unwrap_or(lo),
        stop: args.stop.unwrap_or(hi),
        count: args.count,
        a: args.a,
        b: args.b,
        slack: args.slack,
        seed: args.seed,
    };
    let rows = run_sweep(&spec)?;
    match &args.out {
        Some(path) => {
            emit_csv(&rows, path)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        None => write_csv(&rows, out)?,
    }
    Ok(EXIT_OK)
}

fn run_audit(args: EnsembleArgs, out: &mut dyn Write) -> CmdResult {
    let report = audit(args.shape, args.samples, args.seed, args.tol)?;
    writeln!(
        out,
        "audit shape={} samples={} seed={} tol={:e}",
        report.shape, report.samples, args.seed, args.tol
    )?;
    for (kind, margin) in &report.worst_margins {
        writeln!(out, "  {:<5} worst margin {}", kind.label(), format_number(*margin))?;
    }
    for f in &report.failures {
        writeln!(
            out,
            "  VIOLATION sample {} (seed {}, rank {}): {}",
            f.index, f.seed, f.rank, f.report
        )?;
    }
    if report.passed() {
        writeln!(out, "all inequalities hold")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "{} violations", report.failures.len())?;
        Ok(EXIT_VIOLATION)
    }
}

fn write_stats(out: &mut dyn Write, label: &str, stats: &DeltaStats) -> std::io::Result<()> {
    match stats.mean() {
        Some(mean) => writeln!(
            out,
            "  {label:<10} n={:<6} min delta={} max delta={} mean delta={}",
            stats.count,
            format_number(stats.min),
            format_number(stats.max),
            format_number(mean)
        ),
        None => writeln!(out, "  {label:<10} n=0"),
    }
}

fn scan(args: ScanArgs, out: &mut dyn Write) -> CmdResult {
    let report = scan_conjecture(args.shape, args.samples, args.seed, args.tol)?;
    if let Some(path) = &args.out {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        write_scan_csv(&report, &mut w)?;
        w.flush()?;
    }
    writeln!(
        out,
        "scan shape={} samples={} seed={} tol={:e}",
        report.shape, report.samples, report.seed, report.tol
    )?;
    write_stats(out, "entangled", &report.entangled)?;
    write_stats(out, "separable", &report.separable)?;
    writeln!(out, "counterexamples: {}", report.counterexamples.len())?;
    for c in &report.counterexamples {
        writeln!(
            out,
            "  sample {} seed {} kind {} delta {}",
            c.index,
            c.seed,
            c.kind,
            format_number(c.delta)
        )?;
    }
    Ok(EXIT_OK)
}

fn check(args: CheckArgs, out: &mut dyn Write) -> CmdResult {
    let (mat, shape) = read_matrix_file(&args.file)?;
    let rho = DensityMatrix::new(mat, shape, tol::DENSITY)?;
    let ps = rho.purity_set()?;
    writeln!(out, "shape {shape}")?;
    writeln!(out, "mu12 = {}", format_number(ps.mu12))?;
    writeln!(out, "mu1 = {}", format_number(ps.mu1))?;
    writeln!(out, "mu2 = {}", format_number(ps.mu2))?;
    writeln!(out, "mu_tilde = {}", format_number(ps.mu_tilde))?;
    writeln!(out, "delta = {}", format_number(ps.delta))?;
    let reports = check_all(&rho, args.tol)?;
    for r in &reports {
        writeln!(out, "{r}")?;
    }
    if let (Some(p), Some(q)) = (args.p, args.q) {
        let r = minkowski_check(&rho, MinkowskiParams::new(p, q)?, args.tol)?;
        writeln!(out, "{r}")?;
    }
    Ok(if reports.iter().all(|r| r.satisfied) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}
