//! `barrier` - rectangular-barrier tunneling observables from the command
//! line.
//!
//! Subcommands:
//!
//! * `sweep`  - grids over `(upsilon, wL, n^2)`, CSV or JSON rows,
//! * `limits` - boundary-limit tables at the zone edges,
//! * `packet` - Gaussian wave-packet delay experiment, JSON report,
//! * `preset` - figure-reproduction sweeps (`fig1` ... `fig4`).
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage error. Outputs are
//! deterministic: identical invocations produce byte-identical files.

mod config;
mod output;

use anyhow::anyhow;
use barrier_times::kinematics::BarrierConfig;
use barrier_times::sweep::{self, SweepSpec};
use barrier_times::times::{edge_limits, Edge};
use barrier_times::wavepacket::{measure_arrival, spectral_centroid_shift, SpectrumSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{open_out, OutputFormat};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "barrier", version, about = "Relativistic rectangular-barrier tunneling observables")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep observables over an (upsilon, wL, n^2) grid.
    Sweep(SweepArgs),
    /// Tabulate the zone-edge limits of |T|, t_phi/tau, and t_D/tau.
    Limits(LimitsArgs),
    /// Measure a transmitted wave-packet delay against the phase time.
    Packet(PacketArgs),
    /// Run a figure-reproduction preset sweep.
    Preset(PresetArgs),
}

/// Which observable a sweep is aimed at. Every row always carries the full
/// fixed column set; the choice is recorded for request provenance and to
/// validate scripted invocations.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum Observable {
    Transmission,
    PhaseTime,
    DwellTime,
}

#[derive(Args)]
struct SweepArgs {
    /// Barrier strength upsilon = V0/m (repeatable).
    #[arg(long = "upsilon")]
    upsilons: Vec<f64>,
    /// Barrier opacity wL (repeatable).
    #[arg(long = "wl")]
    wls: Vec<f64>,
    /// Lower n^2 bound (inclusive).
    #[arg(long)]
    n2_min: Option<f64>,
    /// Upper n^2 bound (inclusive).
    #[arg(long)]
    n2_max: Option<f64>,
    /// Number of n^2 grid points.
    #[arg(long)]
    steps: Option<usize>,
    /// Observable of interest (rows always carry all columns).
    #[arg(long, value_enum)]
    observable: Option<Observable>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
    /// Particle mass m (with --v0 and --length, an alternative to
    /// --upsilon/--wl; natural units).
    #[arg(long, requires = "v0", requires = "length")]
    mass: Option<f64>,
    /// Barrier height V0.
    #[arg(long, requires = "mass", requires = "length")]
    v0: Option<f64>,
    /// Barrier width L.
    #[arg(long, requires = "mass", requires = "v0")]
    length: Option<f64>,
    /// Line-based key=value configuration file; explicit flags win.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args)]
struct LimitsArgs {
    /// Barrier strength upsilon = V0/m (repeatable).
    #[arg(long = "upsilon", required = true)]
    upsilons: Vec<f64>,
    /// Barrier opacity wL.
    #[arg(long = "wl", default_value_t = std::f64::consts::TAU)]
    wl: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct PacketArgs {
    /// Barrier strength upsilon = V0/m.
    #[arg(long, conflicts_with_all = ["mass", "v0", "length"])]
    upsilon: Option<f64>,
    /// Barrier opacity wL (with --upsilon).
    #[arg(long)]
    wl: Option<f64>,
    /// Particle mass m (with --v0 and --length).
    #[arg(long, requires = "v0", requires = "length")]
    mass: Option<f64>,
    /// Barrier height V0.
    #[arg(long)]
    v0: Option<f64>,
    /// Barrier width L.
    #[arg(long)]
    length: Option<f64>,
    /// Center momentum k0 (natural units of the configuration).
    #[arg(long)]
    k0: f64,
    /// Spectral width sigma_k (defaults to 1e-3 * k0).
    #[arg(long)]
    sigma_k: Option<f64>,
    /// Number of momentum modes.
    #[arg(long, default_value_t = 4096)]
    modes: usize,
    /// Grid half-span in units of sigma_k.
    #[arg(long, default_value_t = 8.0)]
    span: f64,
    /// Output path (stdout when omitted); always JSON.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct PresetArgs {
    /// Preset name.
    #[arg(value_parser = ["fig1", "fig2", "fig3", "fig4"])]
    name: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Sweep(args) => run_sweep(args),
        Cmd::Limits(args) => run_limits(args),
        Cmd::Packet(args) => run_packet(args),
        Cmd::Preset(args) => run_preset(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Failure class, mapped onto the documented exit codes.
enum CliError {
    /// Invalid request (exit 2).
    Usage(anyhow::Error),
    /// Computation or I/O failure on a valid request (exit 1).
    Numerical(anyhow::Error),
}

fn usage<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Usage(e.into())
}

fn numerical<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Numerical(e.into())
}

fn run_sweep(mut args: SweepArgs) -> Result<(), CliError> {
    if let Some(path) = args.config.clone() {
        config::apply(&path, &mut args).map_err(usage)?;
    }
    if let (Some(m), Some(v0), Some(l)) = (args.mass, args.v0, args.length) {
        let cfg = BarrierConfig::new(m, v0, l).map_err(usage)?;
        args.upsilons.push(cfg.upsilon);
        args.wls.push(cfg.wl);
    }
    let spec = SweepSpec {
        upsilons: args.upsilons,
        wls: args.wls,
        n2_min: args.n2_min.ok_or_else(|| usage(anyhow!("--n2-min is required")))?,
        n2_max: args.n2_max.ok_or_else(|| usage(anyhow!("--n2-max is required")))?,
        steps: args.steps.unwrap_or(1000),
    };
    // Validation errors are usage errors; row failures are numerical.
    let rows = match sweep::run(&spec) {
        Ok(rows) => rows,
        Err(e @ barrier_times::BarrierError::InvalidParameter { .. }) => return Err(usage(e)),
        Err(e) => return Err(numerical(e)),
    };
    let mut out = open_out(args.out.as_deref()).map_err(numerical)?;
    match args.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => sweep::write_csv(&rows, &mut out).map_err(numerical)?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &sweep::to_json(&rows)).map_err(numerical)?;
            use std::io::Write;
            writeln!(out).map_err(numerical)?;
        }
    }
    Ok(())
}

fn run_limits(args: LimitsArgs) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &upsilon in &args.upsilons {
        let cfg = BarrierConfig::from_normalized(upsilon, args.wl).map_err(usage)?;
        for (edge, label) in [(Edge::Lower, "lower"), (Edge::Upper, "upper")] {
            if let Some(lim) = edge_limits(&cfg, edge) {
                rows.push((upsilon, args.wl, label, lim));
            }
        }
    }
    let mut out = open_out(args.out.as_deref()).map_err(numerical)?;
    output::write_limits(&rows, args.format, &mut out).map_err(numerical)
}

fn run_packet(args: PacketArgs) -> Result<(), CliError> {
    let cfg = match (args.upsilon, args.mass, args.v0, args.length) {
        (Some(u), None, None, None) => {
            let wl = args.wl.ok_or_else(|| usage(anyhow!("--wl is required with --upsilon")))?;
            BarrierConfig::from_normalized(u, wl).map_err(usage)?
        }
        (None, Some(m), Some(v0), Some(l)) => BarrierConfig::new(m, v0, l).map_err(usage)?,
        _ => {
            return Err(usage(anyhow!(
                "specify either --upsilon/--wl or --mass/--v0/--length"
            )))
        }
    };
    let spec = SpectrumSpec {
        k0: args.k0,
        sigma_k: args.sigma_k.unwrap_or(1e-3 * args.k0),
        n_modes: args.modes,
        span_sigmas: args.span,
    };
    // Spectrum validation errors are usage errors; synthesis failures are
    // numerical.
    if let Err(e) = spectral_centroid_shift(&cfg, &spec) {
        return Err(usage(e));
    }
    let report = if cfg.physical.is_some() {
        let r = measure_arrival(&cfg, &spec).map_err(numerical)?;
        serde_json::json!({
            "schema_version": sweep::SCHEMA_VERSION,
            "t_phi_predicted": r.t_phi_predicted,
            "t_peak_measured": r.t_peak,
            "tau": r.tau,
            "delay_error_over_tau": (r.t_peak - r.t_phi_predicted).abs() / r.tau,
            "centroid_shift_sigmas": r.centroid_shift_sigmas,
            "self_convergence": r.self_convergence,
            "warning": if r.straddles_zone { Some("spectrum straddles a zone edge") } else { None },
        })
    } else {
        // upsilon = 0 baseline: no time scale; report the filter effect.
        let shift = spectral_centroid_shift(&cfg, &spec).map_err(numerical)?;
        serde_json::json!({
            "schema_version": sweep::SCHEMA_VERSION,
            "centroid_shift_sigmas": shift,
            "warning": "upsilon = 0 baseline: no mass scale, timing not reported",
        })
    };
    let mut out = open_out(args.out.as_deref()).map_err(numerical)?;
    use std::io::Write;
    serde_json::to_writer_pretty(&mut out, &report).map_err(numerical)?;
    writeln!(out).map_err(numerical)?;
    Ok(())
}

fn run_preset(args: PresetArgs) -> Result<(), CliError> {
    match args.name.as_str() {
        // Figures 1-3 share the same curve geometry (wL = 2 pi, upsilon in
        // {0, 1, 2, 5, 10}); the full column set covers transmission,
        // phase-time, and dwell-time curves, so the presets differ only in
        // which column is plotted.
        "fig1" | "fig2" | "fig3" => {
            let mut rows = Vec::new();
            for &upsilon in &[0.0, 1.0, 2.0, 5.0, 10.0] {
                let spec = SweepSpec {
                    upsilons: vec![upsilon],
                    wls: vec![std::f64::consts::TAU],
                    n2_min: 0.005,
                    n2_max: upsilon / 2.0 + 3.0,
                    steps: 12000,
                };
                rows.extend(sweep::run(&spec).map_err(numerical)?);
            }
            let mut out = open_out(args.out.as_deref()).map_err(numerical)?;
            match args.format {
                OutputFormat::Csv => sweep::write_csv(&rows, &mut out).map_err(numerical)?,
                OutputFormat::Json => {
                    serde_json::to_writer_pretty(&mut out, &sweep::to_json(&rows))
                        .map_err(numerical)?;
                    use std::io::Write;
                    writeln!(out).map_err(numerical)?;
                }
            }
            Ok(())
        }
        // Figure 4: edge-limit curves against the edge position, swept
        // over upsilon; the lower branch exists only for upsilon > 2.
        "fig4" => {
            let mut rows = Vec::new();
            let steps = 360;
            for i in 0..steps {
                let upsilon = 2.05 + (20.0 - 2.05) * i as f64 / (steps - 1) as f64;
                let cfg =
                    BarrierConfig::from_normalized(upsilon, std::f64::consts::TAU).map_err(usage)?;
                for (edge, label) in [(Edge::Lower, "lower"), (Edge::Upper, "upper")] {
                    if let Some(lim) = edge_limits(&cfg, edge) {
                        rows.push((upsilon, std::f64::consts::TAU, label, lim));
                    }
                }
            }
            let mut out = open_out(args.out.as_deref()).map_err(numerical)?;
            output::write_limits(&rows, args.format, &mut out).map_err(numerical)
        }
        _ => unreachable!("clap validates the preset name"),
    }
}
