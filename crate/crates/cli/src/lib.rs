//! Command-line front end: fixture tables, sweeps, invariant checks and
//! single-state diagnostics.

pub mod check;
pub mod format;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qubit_charts::charts::{
    bell_vector, canonical_chart, canonical_vector, charts_containing, phi, report, tensor_split,
    ChartIndex, Quregister2, CHART_TOL, REPORT_SEPARABLE_TOL,
};
use qubit_charts::linalg::{c, xi, CVec2, UnitComplex};
use qubit_charts::qubit::Qubit;
use qubit_charts::sweep::sweep_xp;
use thiserror::Error;

use check::{run_suite, Suite};
use format::{complex, csv_real, ingest, real, reals};

/// Allowed deviation of `|u|` from 1 for the `--u` flag.
pub const GAUGE_INPUT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qubit_charts::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Violation = 1,
    Usage = 2,
}

#[derive(Debug, Parser)]
#[command(name = "qcharts", version, about = "Qubit group, two-qubit chart embeddings and entanglement measures")]
pub struct Cli {
    /// Seed for the sampling generator.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Tolerance override (check: every property; measure: separability threshold).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Gauge phase u as `<re> <im>`; must have unit modulus.
    #[arg(long, global = true, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub u: Option<Vec<f64>>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Canonical,
    Bell,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the chart embeddings of the canonical or Bell basis.
    Tables {
        #[arg(value_enum, default_value_t = Which::Canonical)]
        which: Which,
    },
    /// CSV of nu, spectral norm − 1 and entropy along x_p = (√p, 0, 0, √(1−p)).
    SweepXp {
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// Run a seeded invariant suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Entanglement report for a two-qubit state given as 8 reals.
    Measure {
        #[arg(num_args = 8, required = true, allow_negative_numbers = true)]
        state: Vec<f64>,
    },
    /// Factor a separable two-qubit state.
    Split {
        #[arg(num_args = 8, required = true, allow_negative_numbers = true)]
        state: Vec<f64>,
        /// Chart index 0..3; defaults to the canonical chart.
        #[arg(long)]
        chart: Option<usize>,
    },
    /// CSV of the powers x, x⋆x, … of a qubit given as 4 reals.
    Orbit {
        #[arg(num_args = 4, required = true, allow_negative_numbers = true)]
        qubit: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

fn gauge(cli: &Cli) -> Result<UnitComplex, CliError> {
    match cli.u.as_deref() {
        None => Ok(UnitComplex::ONE),
        Some(&[re, im]) => {
            let z = c(re, im);
            UnitComplex::with_tolerance(z, GAUGE_INPUT_TOL)?;
            Ok(xi(z))
        }
        Some(_) => Err(CliError::Usage("--u takes two reals".into())),
    }
}

fn tables<W: Write>(w: &mut W, which: Which, u: UnitComplex) -> Result<(), CliError> {
    let (label, states): (&str, Vec<Quregister2>) = match which {
        Which::Canonical => ("e", (0..4).map(canonical_vector).collect::<Result<_, _>>()?),
        Which::Bell => ("b", (0..4).map(bell_vector).collect::<Result<_, _>>()?),
    };
    writeln!(w, "u: {}", complex(u.value()))?;
    for (i, x) in states.iter().enumerate() {
        for k in charts_containing(x, CHART_TOL) {
            let emb = phi(x, k, u)?;
            writeln!(w)?;
            writeln!(
                w,
                "Phi_2{k}u({label}{i})  unitary: {}  spectral_norm: {:.14e}",
                emb.matrix.unitarity_defect() < 1e-10,
                emb.spectral_norm()
            )?;
            write!(w, "{}", format::matrix(&emb.matrix))?;
        }
    }
    Ok(())
}

fn sweep<W: Write>(w: &mut W, steps: usize) -> Result<(), CliError> {
    let rows = sweep_xp(steps)?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["p", "nu", "spectral_norm_minus_1", "entropy"])?;
    for r in rows {
        out.write_record([
            csv_real(r.p),
            csv_real(r.nu),
            csv_real(r.spectral_norm_minus_1),
            csv_real(r.entropy),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn measure<W: Write>(w: &mut W, x: &Quregister2, u: UnitComplex, tol: Option<f64>) -> Result<(), CliError> {
    let mut rep = report(x);
    rep.separable = rep.t_abs < tol.unwrap_or(REPORT_SEPARABLE_TOL);
    let k = canonical_chart(x);
    writeln!(w, "state: {}", reals(x.vec()))?;
    writeln!(w, "canonical_chart: {k}")?;
    write!(w, "{}", format::report(&rep))?;
    writeln!(w, "spectral_norm_minus_1: {}", real(phi(x, k, u)?.spectral_norm() - 1.0))?;
    Ok(())
}

fn split<W: Write>(w: &mut W, x: &Quregister2, chart: Option<usize>, u: UnitComplex) -> Result<(), CliError> {
    let k = match chart {
        Some(k) => ChartIndex::new(k)?,
        None => canonical_chart(x),
    };
    let s = tensor_split(x, k, u)?;
    writeln!(w, "chart: {k}")?;
    writeln!(w, "gauge: {}", complex(u.value()))?;
    writeln!(w, "c0: {}", reals(s.c0.vec()))?;
    writeln!(w, "c1: {}", reals(s.c1.vec()))?;
    writeln!(w, "t_abs: {}", real(x.t().norm()))?;
    writeln!(w, "residual: {}", real(s.product().max_abs_diff(x.vec())))?;
    Ok(())
}

fn orbit<W: Write>(w: &mut W, x: &Qubit, count: usize) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "x0_re", "x0_im", "x1_re", "x1_im"])?;
    for (n, q) in x.orbit(count).iter().enumerate() {
        out.write_record([
            (n + 1).to_string(),
            csv_real(q.x0().re),
            csv_real(q.x0().im),
            csv_real(q.x1().re),
            csv_real(q.x1().im),
        ])?;
    }
    out.flush()?;
    Ok(())
}

fn execute<W: Write, E: Write>(cli: &Cli, w: &mut W, err: &mut E) -> Result<Status, CliError> {
    let u = gauge(cli)?;
    match &cli.command {
        Command::Tables { which } => tables(w, *which, u)?,
        Command::SweepXp { steps } => sweep(w, *steps)?,
        Command::Check { suite, samples } => {
            let rep = run_suite(*suite, *samples, cli.seed, cli.tol);
            write!(w, "{}", rep.render())?;
            if !rep.passed() {
                return Ok(Status::Violation);
            }
        }
        Command::Measure { state } => {
            let s = ingest::<4>(state)?;
            if let Some(msg) = s.warning() {
                writeln!(err, "{msg}")?;
            }
            measure(w, &Quregister2::new(s.vec)?, u, cli.tol)?;
        }
        Command::Split { state, chart } => {
            let s = ingest::<4>(state)?;
            if let Some(msg) = s.warning() {
                writeln!(err, "{msg}")?;
            }
            split(w, &Quregister2::new(s.vec)?, *chart, u)?;
        }
        Command::Orbit { qubit, count } => {
            let s = ingest::<2>(qubit)?;
            if let Some(msg) = s.warning() {
                writeln!(err, "{msg}")?;
            }
            let v: CVec2 = s.vec;
            orbit(w, &Qubit::from_vec(v)?, *count)?;
        }
    }
    Ok(Status::Success)
}

/// Runs a parsed command, writing to `--out` or `stdout`.
pub fn run<W: Write, E: Write>(cli: &Cli, stdout: &mut W, stderr: &mut E) -> Status {
    let result = match &cli.out {
        Some(path) => File::create(path)
            .map_err(CliError::from)
            .and_then(|f| {
                let mut bw = BufWriter::new(f);
                let st = execute(cli, &mut bw, stderr)?;
                bw.flush()?;
                Ok(st)
            }),
        None => execute(cli, stdout, stderr),
    };
    match result {
        Ok(st) => st,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => Status::Success,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            Status::Usage
        }
    }
}

/// Rewrites negative reals with a negative exponent (`-4e-1`), which clap
/// would read as short flags, into an exact plain decimal form.
fn plain_negative(arg: std::ffi::OsString) -> std::ffi::OsString {
    let Some(s) = arg.to_str() else { return arg };
    if s.starts_with('-') && (s.contains("e-") || s.contains("E-")) {
        if let Ok(v) = s.parse::<f64>() {
            if v.is_finite() {
                return format!("{v}").into();
            }
        }
    }
    arg
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T, W, E>(args: I, stdout: &mut W, stderr: &mut E) -> Status
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    match Cli::try_parse_from(args.into_iter().map(Into::into).map(plain_negative)) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{}", e.render());
            Status::Usage
        }
        Err(e) => {
            let _ = write!(stdout, "{}", e.render());
            Status::Success
        }
    }
}
