use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use log::info;

use mixspin::csv::{format_number, write_csv};
use mixspin::run_sweep_parallel;
use mixspin::specfile::SpecLayer;
use mixspin_core::linalg::ComplexMatrix;
use mixspin_core::model::{closed_form_spectrum, numeric_spectrum};
use mixspin_core::sweep::{eval_point, find_critical_temperature};
use mixspin_core::{CorrelationReport, ModelParams, ThermalMode};

/// Thermal negativity and measurement-induced disturbance of the
/// spin-(1, 1/2) Heisenberg dimer.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Log progress and sweep metadata to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single (J, B, T) point.
    Eval(EvalArgs),
    /// Run a 2-D parameter sweep and write CSV.
    Sweep(SweepArgs),
    /// Find the temperature above which the negativity vanishes.
    Tc(TcArgs),
    /// Print analytic and numeric eigenpairs.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct Couplings {
    #[arg(long = "j", allow_hyphen_values = true)]
    j: f64,
    #[arg(long = "b", allow_hyphen_values = true)]
    b: f64,
    /// Accept B < 0.
    #[arg(long)]
    allow_negative_field: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    couplings: Couplings,
    #[arg(long = "t", required_unless_present = "t0")]
    t: Option<f64>,
    /// Use the T -> 0+ limit (ground-manifold mixture) instead of a finite T.
    #[arg(long, conflicts_with = "t")]
    t0: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Built-in grid: fig1, fig2 or fig3.
    #[arg(long, required_unless_present = "spec")]
    preset: Option<String>,
    /// Key-value spec file; overrides the preset.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Override any spec key, e.g. `--set x_steps=41`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    x_steps: Option<usize>,
    #[arg(long)]
    y_steps: Option<usize>,
    /// Comma-separated quantity list.
    #[arg(long)]
    quantities: Option<String>,
    /// Append T = 0 points evaluated in the ground-state limit.
    #[arg(long)]
    t0_row: bool,
    /// Add unclamped companion columns.
    #[arg(long)]
    raw: bool,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all available cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct TcArgs {
    #[command(flatten)]
    couplings: Couplings,
    #[arg(long, default_value_t = 0.05)]
    t_lo: f64,
    #[arg(long, default_value_t = 5.0)]
    t_hi: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    couplings: Couplings,
}

fn main() {
    let cli = Cli::parse();
    env_logger::Builder::from_env(
        env_logger::Env::default().default_filter_or(if cli.verbose { "info" } else { "warn" }),
    )
    .init();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Eval(args) => eval(args),
        Command::Sweep(args) => sweep(args),
        Command::Tc(args) => tc(args),
        Command::Spectrum(args) => spectrum(args),
    }
}

fn params(c: &Couplings, t: f64) -> ModelParams {
    ModelParams::new(c.j, c.b, t).with_negative_field(c.allow_negative_field)
}

fn eval(args: EvalArgs) -> Result<()> {
    let (t, mode) = if args.t0 {
        (0.0, ThermalMode::ZeroTemperatureLimit)
    } else {
        (
            args.t.expect("clap enforces --t or --t0"),
            ThermalMode::FiniteTemperature,
        )
    };
    let p = params(&args.couplings, t);
    let report = eval_point(&p, mode)
        .with_context(|| format!("evaluating J={}, B={}, T={}", p.j, p.b, t))?;
    let stdout = io::stdout();
    print_report(&report, &mut stdout.lock())?;
    Ok(())
}

fn print_report(r: &CorrelationReport, out: &mut impl Write) -> io::Result<()> {
    let mode = match r.mode {
        ThermalMode::FiniteTemperature => "finite_T",
        ThermalMode::ZeroTemperatureLimit => "t0_limit",
    };
    writeln!(out, "J = {}", format_number(r.params.j))?;
    writeln!(out, "B = {}", format_number(r.params.b))?;
    writeln!(out, "T = {}", format_number(r.params.t))?;
    writeln!(out, "mode = {mode}")?;
    let rows = [
        ("Z", r.z),
        ("negativity", r.negativity),
        ("negativity_raw", r.negativity_raw),
        ("negativity_trace_norm", r.negativity_trace_norm),
        ("mid", r.mid),
        ("mid_raw", r.mid_raw),
        ("mutual_information", r.mutual_information),
        ("mutual_information_raw", r.mutual_information_raw),
        ("classical_correlation", r.classical_correlation),
        ("classical_correlation_raw", r.classical_correlation_raw),
        ("entropy_joint", r.entropy_joint),
        ("entropy_qutrit", r.entropy_qutrit),
        ("entropy_qubit", r.entropy_qubit),
        ("entropy_dephased", r.entropy_dephased),
    ];
    for (k, v) in rows {
        writeln!(out, "{k} = {}", format_number(v))?;
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<()> {
    let mut layer = match &args.preset {
        Some(name) => SpecLayer::preset(name)?,
        None => SpecLayer::default(),
    };
    if let Some(path) = &args.spec {
        layer.overlay(&SpecLayer::read(path)?);
    }
    let mut cli_layer = SpecLayer::default();
    if let Some(n) = args.x_steps {
        cli_layer.set("x_steps", &n.to_string())?;
    }
    if let Some(n) = args.y_steps {
        cli_layer.set("y_steps", &n.to_string())?;
    }
    if let Some(q) = &args.quantities {
        cli_layer.set("quantities", q)?;
    }
    if args.t0_row {
        cli_layer.set("t0_row", "true")?;
    }
    if args.raw {
        cli_layer.set("raw", "true")?;
    }
    for o in &args.overrides {
        cli_layer.set_assignment(o)?;
    }
    layer.overlay(&cli_layer);
    let spec = layer.to_spec()?;
    if args.threads == Some(0) {
        bail!("--threads must be at least 1");
    }

    let started = Instant::now();
    let result = run_sweep_parallel(&spec, args.threads)?;
    info!(
        "mixspin {} swept {} points in {:.2?} (timestamp {:?}, negativity threshold {:e}, eigenvalue clamp {:e})",
        result.metadata.tool_version,
        result.rows.len(),
        started.elapsed(),
        result.metadata.timestamp,
        result.metadata.tolerances.negativity_threshold,
        result.metadata.tolerances.eigenvalue_clamp,
    );
    match &args.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&result, BufWriter::new(file))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => write_csv(&result, BufWriter::new(io::stdout().lock()))?,
    }
    Ok(())
}

fn tc(args: TcArgs) -> Result<()> {
    let c = &args.couplings;
    params(c, args.t_lo).validate_couplings()?;
    if c.b < 0.0 {
        bail!("critical-temperature search supports B >= 0 only");
    }
    match find_critical_temperature(c.j, c.b, args.t_lo, args.t_hi, args.tol)? {
        Some(t) => println!("T_c = {}", format_number(t)),
        None => println!(
            "T_c = not found (no entangled-to-separable transition in [{}, {}])",
            format_number(args.t_lo),
            format_number(args.t_hi)
        ),
    }
    Ok(())
}

fn format_vector(v: &ComplexMatrix) -> String {
    let parts: Vec<String> = v
        .as_slice()
        .iter()
        .map(|z| {
            if z.im == 0.0 {
                format_number(z.re)
            } else {
                format!("{}{:+}i", format_number(z.re), format_number(z.im))
            }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn spectrum(args: SpectrumArgs) -> Result<()> {
    let p = params(&args.couplings, 1.0);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "# basis: |1,1>, |1,0>, |0,1>, |0,0>, |-1,1>, |-1,0>")?;
    writeln!(out, "# closed form")?;
    match closed_form_spectrum(&p) {
        Ok(s) => {
            for l in &s.levels {
                writeln!(
                    out,
                    "{:<6} E = {:<16} v = {}",
                    l.label.as_str(),
                    format_number(l.energy),
                    format_vector(&l.vector)
                )?;
            }
        }
        Err(e) => writeln!(out, "unavailable: {e}")?,
    }
    writeln!(out, "# numeric")?;
    let es = numeric_spectrum(&p)?;
    for k in 0..es.dim() {
        writeln!(
            out,
            "{:<6} E = {:<16} v = {}",
            k,
            format_number(es.values[k]),
            format_vector(&es.vector(k))
        )?;
    }
    Ok(())
}
