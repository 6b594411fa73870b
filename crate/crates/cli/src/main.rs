//! Command-line front end: build states, inspect spectra and
//! partial-transpose structure, evaluate the Bell inequality, sweep noise,
//! and run the concentration protocol. Emits plot-ready CSV or JSON.
//!
//! Exit codes: 0 success, 2 usage, 3 computation, 4 I/O.
//! `GSS_DENSE_LIMIT` overrides the dense-matrix qubit ceiling used by
//! `spectrum` and `ppt`.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Matrix2;
use num_complex::Complex64;
use serde_json::{json, Value};

use gss_core::bell::{canonical_settings, chsh_value, sweep, BellSettings};
use gss_core::concentration::{expected_average_state, run_concentration, CloningParams};
use gss_core::entanglement::{cut_scan_with, spectrum_with_limit, CutScanOptions};
use gss_core::operator::PauliOperator;
use gss_core::states::{gss_closed, gss_recursive, noisy_gss, separable_third};
use gss_core::{DEFAULT_DENSE_LIMIT, PPT_TOL};

#[derive(Parser)]
#[command(
    name = "gss",
    version,
    about = "Generalised Smolin states: construction, entanglement structure, Bell values, information concentration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a state of the family as operator JSON
    Build(BuildArgs),
    /// Eigenvalue multiset of an operator (dense path)
    Spectrum(SpectrumArgs),
    /// Partial-transpose verdict per bipartition size
    Ppt(PptArgs),
    /// Value of the four-term correlation inequality
    Bell(BellArgs),
    /// Inequality value of the noisy family over a grid of mixing weights
    Sweep(SweepArgs),
    /// Run the remote information concentration protocol
    Concentrate(ConcentrateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Recursive,
    Closed,
    Noisy,
    SeparableThird,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct BuildArgs {
    /// Pair count: the state lives on 2n qubits
    #[arg(long)]
    n: usize,
    /// Mixing weight in [0, 1]; only meaningful for --form noisy
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum, default_value_t = Form::Closed)]
    form: Form,
}

#[derive(Args)]
struct StateSource {
    /// Read the operator from a JSON file
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n", "p"])]
    input: Option<PathBuf>,
    /// Build a noisy family state on 2n qubits instead
    #[arg(long)]
    n: Option<usize>,
    /// Mixing weight for --n, default 1 (the pure state)
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: StateSource,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct PptArgs {
    #[command(flatten)]
    source: StateSource,
    /// Eigenvalues above -tol count as nonnegative
    #[arg(long, default_value_t = PPT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct BellArgs {
    #[command(flatten)]
    source: StateSource,
    /// "canonical" or a path to a settings JSON file
    #[arg(long, default_value = "canonical")]
    settings: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0)]
    p_min: f64,
    #[arg(long, default_value_t = 1.0)]
    p_max: f64,
    /// Number of grid points, endpoints included
    #[arg(long, default_value_t = 21)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ConcentrateArgs {
    /// Clone count M; the channel is the closed-form state on 2M qubits
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0.0)]
    a_re: f64,
    #[arg(long, default_value_t = 0.0)]
    a_im: f64,
    #[arg(long, default_value_t = 0.0)]
    b_re: f64,
    #[arg(long, default_value_t = 0.0)]
    b_im: f64,
    /// summary: aggregates only; full: every outcome branch
    #[arg(long, default_value = "summary")]
    emit: String,
}

enum CliError {
    Usage(String),
    Computation(gss_core::Error),
    Io(std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Computation(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Computation(e) => write!(f, "computation error: {e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<gss_core::Error> for CliError {
    fn from(e: gss_core::Error) -> Self {
        CliError::Computation(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gss: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let rendered = match cli.command {
        Command::Build(args) => cmd_build(args)?,
        Command::Spectrum(args) => cmd_spectrum(args)?,
        Command::Ppt(args) => cmd_ppt(args)?,
        Command::Bell(args) => cmd_bell(args)?,
        Command::Sweep(args) => cmd_sweep(args)?,
        Command::Concentrate(args) => cmd_concentrate(args)?,
    };
    match cli.output {
        Some(path) => fs::write(path, rendered)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn dense_limit() -> Result<usize, CliError> {
    match std::env::var("GSS_DENSE_LIMIT") {
        Ok(raw) => raw.parse().map_err(|_| {
            CliError::Usage(format!(
                "GSS_DENSE_LIMIT must be a qubit count, got {raw:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_DENSE_LIMIT),
    }
}

fn check_pair_count(n: usize) -> Result<(), CliError> {
    if n < 1 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    Ok(())
}

fn check_weight(p: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!("--p must lie in [0, 1], got {p}")));
    }
    Ok(())
}

fn cmd_build(args: BuildArgs) -> Result<String, CliError> {
    check_pair_count(args.n)?;
    if args.form != Form::Noisy && args.p.is_some() {
        return Err(CliError::Usage("--p only applies to --form noisy".into()));
    }
    let op = match args.form {
        Form::Recursive => gss_recursive(args.n)?,
        Form::Closed => gss_closed(args.n)?,
        Form::SeparableThird => separable_third(args.n)?,
        Form::Noisy => {
            let p = args
                .p
                .ok_or_else(|| CliError::Usage("--form noisy needs --p".into()))?;
            check_weight(p)?;
            noisy_gss(args.n, p)?
        }
    };
    Ok(render_json(
        &serde_json::to_value(&op).expect("operator serializes"),
    ))
}

/// Operator plus the mixing weight it was built with, when known.
fn load_state(source: &StateSource) -> Result<(PauliOperator, f64), CliError> {
    match (&source.input, source.n) {
        (Some(path), None) => {
            let raw = fs::read_to_string(path)?;
            let op: PauliOperator = serde_json::from_str(&raw)
                .map_err(|e| CliError::Usage(format!("bad operator file: {e}")))?;
            Ok((op, f64::NAN))
        }
        (None, Some(n)) => {
            check_pair_count(n)?;
            let p = source.p.unwrap_or(1.0);
            check_weight(p)?;
            Ok((noisy_gss(n, p)?, p))
        }
        (None, None) => Err(CliError::Usage("provide --input or --n".into())),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<String, CliError> {
    let (op, _) = load_state(&args.source)?;
    let eigs = spectrum_with_limit(&op, dense_limit()?)?;
    Ok(match args.format {
        Format::Csv => {
            let mut out = String::from("eigenvalue\n");
            for e in &eigs {
                out.push_str(&format_sig(*e, 12));
                out.push('\n');
            }
            out
        }
        Format::Json => render_json(&json!({
            "eigenvalues": eigs,
            "n_qubits": op.n_qubits(),
        })),
    })
}

fn cmd_ppt(args: PptArgs) -> Result<String, CliError> {
    if !args.tol.is_finite() || args.tol < 0.0 {
        return Err(CliError::Usage(format!(
            "--tol must be a nonnegative number, got {}",
            args.tol
        )));
    }
    let (op, _) = load_state(&args.source)?;
    let options = CutScanOptions {
        tol: args.tol,
        dense_limit: dense_limit()?,
        ..CutScanOptions::default()
    };
    let reports = cut_scan_with(&op, &options)?;
    Ok(match args.format {
        Format::Csv => {
            let mut out = String::from("subset_size,min_pt_eig,is_ppt\n");
            for r in &reports {
                out.push_str(&format!(
                    "{},{},{}\n",
                    r.subset_size,
                    format_sig(r.min_pt_eigenvalue, 12),
                    r.is_ppt
                ));
            }
            out
        }
        Format::Json => render_json(&json!({
            "reports": reports
                .iter()
                .map(|r| {
                    json!({
                        "is_ppt": r.is_ppt,
                        "min_pt_eig": r.min_pt_eigenvalue,
                        "representative_subset": r.representative_subset,
                        "subset_size": r.subset_size,
                    })
                })
                .collect::<Vec<_>>(),
        })),
    })
}

fn load_settings(choice: &str, n_qubits: usize) -> Result<BellSettings, CliError> {
    if choice == "canonical" {
        // an odd qubit count is a caller mistake, not a computation failure
        return canonical_settings(n_qubits).map_err(|e| CliError::Usage(e.to_string()));
    }
    let raw = fs::read_to_string(choice)?;
    let settings: BellSettings = serde_json::from_str(&raw)
        .map_err(|e| CliError::Usage(format!("bad settings file: {e}")))?;
    Ok(settings)
}

fn bell_row(p: f64, value: f64) -> (String, Value) {
    let violates = value.abs() > gss_core::CLASSICAL_BOUND;
    let csv = format!(
        "p,chsh_value,violates\n{},{},{}\n",
        format_sig(p, 12),
        format_sig(value, 12),
        violates
    );
    let json = render_json(&json!({
        "chsh_value": value,
        "p": if p.is_nan() { Value::Null } else { json!(p) },
        "violates": violates,
    }));
    (csv, Value::String(json))
}

fn cmd_bell(args: BellArgs) -> Result<String, CliError> {
    let (op, p) = load_state(&args.source)?;
    let settings = load_settings(&args.settings, op.n_qubits())?;
    let value = chsh_value(&op, &settings)?;
    let (csv, json) = bell_row(p, value);
    Ok(match args.format {
        Format::Csv => csv,
        Format::Json => match json {
            Value::String(s) => s,
            _ => unreachable!(),
        },
    })
}

fn cmd_sweep(args: SweepArgs) -> Result<String, CliError> {
    check_pair_count(args.n)?;
    check_weight(args.p_min)?;
    check_weight(args.p_max)?;
    if args.p_min > args.p_max {
        return Err(CliError::Usage("--p-min exceeds --p-max".into()));
    }
    if args.steps < 1 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if args.steps == 1 && args.p_min != args.p_max {
        return Err(CliError::Usage(
            "--steps 1 needs matching --p-min and --p-max".into(),
        ));
    }
    let grid: Vec<f64> = if args.steps == 1 {
        vec![args.p_min]
    } else {
        (0..args.steps)
            .map(|i| args.p_min + (args.p_max - args.p_min) * i as f64 / (args.steps - 1) as f64)
            .collect()
    };
    let rows = sweep(args.n, &grid)?;
    Ok(match args.format {
        Format::Csv => {
            let mut out = String::from("p,chsh_value,violates\n");
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    format_sig(row.p, 12),
                    format_sig(row.chsh_value, 12),
                    row.violates
                ));
            }
            out
        }
        Format::Json => render_json(&json!({
            "rows": rows
                .iter()
                .map(|r| {
                    json!({
                        "chsh_value": r.chsh_value,
                        "p": r.p,
                        "violates": r.violates,
                    })
                })
                .collect::<Vec<_>>(),
        })),
    })
}

fn cmd_concentrate(args: ConcentrateArgs) -> Result<String, CliError> {
    let a = Complex64::new(args.a_re, args.a_im);
    let b = Complex64::new(args.b_re, args.b_im);
    let params = CloningParams::new(args.m, a, b).map_err(|e| CliError::Usage(e.to_string()))?;
    let full = match args.emit.as_str() {
        "summary" => false,
        "full" => true,
        other => {
            return Err(CliError::Usage(format!(
                "--emit must be summary or full, got {other:?}"
            )))
        }
    };
    let channel = gss_closed(args.m)?;
    let result = run_concentration(&params, &channel)?;
    let reference = expected_average_state(&params)?;
    let deviation = (result.average_state - reference).norm();
    let mut payload = json!({
        "a": complex_json(a),
        "average_state": matrix_json(&result.average_state),
        "b": complex_json(b),
        "m": args.m,
        "min_fidelity": result.min_defined_fidelity(),
        "n_outcomes": result.outcomes.len(),
        "probability_sum": result.probability_sum(),
        "reference_average": matrix_json(&reference),
        "reference_deviation": deviation,
    });
    if full {
        let outcomes: Vec<Value> = result
            .outcomes
            .iter()
            .map(|o| {
                json!({
                    "fidelity": o.fidelity,
                    "outcome": o.outcome.iter().map(|p| p.label()).collect::<String>(),
                    "probability": o.probability,
                    "state": matrix_json(&o.corrected_state),
                })
            })
            .collect();
        payload["outcomes"] = json!(outcomes);
    }
    Ok(render_json(&payload))
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &Matrix2<Complex64>) -> Value {
    json!([
        [complex_json(m[(0, 0)]), complex_json(m[(0, 1)])],
        [complex_json(m[(1, 0)]), complex_json(m[(1, 1)])],
    ])
}

fn render_json(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("json renders");
    out.push('\n');
    out
}

/// Decimal representation with `sig` significant digits, plain where the
/// exponent allows and scientific otherwise; trailing zeros dropped.
fn format_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("numeric exponent");
    if exp < -4 || exp >= sig as i32 {
        let trimmed = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{trimmed}e{exp}")
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let plain = format!("{x:.decimals$}");
        if plain.contains('.') {
            plain
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            plain
        }
    }
}
