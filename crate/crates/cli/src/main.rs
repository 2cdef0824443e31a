use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

use output::Format;

/// Pair emission from a medium with harmonically oscillating optical length.
///
/// Units: ω0 = c = ħ = 1. The pump is described by the dimensionless maximal
/// velocity v of the optical-length oscillation.
#[derive(Debug, Parser)]
#[command(name = "twophoton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct OmegaArgs {
    #[arg(long, default_value_t = 0.001)]
    omega_min: f64,
    #[arg(long, default_value_t = 0.999)]
    omega_max: f64,
    #[arg(long, default_value_t = 512)]
    points: usize,
}

#[derive(Debug, Clone, Args)]
struct SinkArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emission-rate spectrum at one pump velocity.
    Spectrum {
        #[arg(long)]
        v: f64,
        /// Boson rest mass (photons when absent).
        #[arg(long)]
        mass: Option<f64>,
        #[command(flatten)]
        omega: OmegaArgs,
        #[arg(long, default_value_t = twophoton::DEFAULT_DENOMINATOR_FLOOR)]
        denominator_floor: f64,
        #[command(flatten)]
        sink: SinkArgs,
    },
    /// Spectra over a log-spaced velocity range, or integrated rates with --integrate.
    Scan {
        #[arg(long, default_value_t = 0.1)]
        v_min: f64,
        #[arg(long, default_value_t = 30.0)]
        v_max: f64,
        #[arg(long, default_value_t = 200)]
        v_points: usize,
        #[arg(long)]
        mass: Option<f64>,
        #[command(flatten)]
        omega: OmegaArgs,
        #[arg(long, default_value_t = twophoton::DEFAULT_DENOMINATOR_FLOOR)]
        denominator_floor: f64,
        /// Emit (v, integrated rate) over the whole band instead of the (v, ω) lattice.
        #[arg(long)]
        integrate: bool,
        #[command(flatten)]
        sink: SinkArgs,
    },
    /// Velocity at which the half-frequency resolvent vanishes.
    Resonance {
        #[arg(long)]
        mass: Option<f64>,
    },
    /// Time-domain mode simulation and, with --compare, its deviation from the closed form.
    Simulate {
        #[arg(long)]
        v: f64,
        #[arg(long, default_value_t = 32)]
        kappa0: usize,
        #[arg(long, default_value_t = 400.0 * PI)]
        t0: f64,
        #[arg(long, default_value_t = 40.0)]
        dt_divisor: f64,
        #[arg(long, default_value_t = 1.0)]
        mode_multiplier: f64,
        /// Drop the diagonal term of the mode coupling.
        #[arg(long)]
        exclude_self_coupling: bool,
        #[arg(long)]
        compare: bool,
        #[arg(long, default_value_t = 0.2)]
        band_min: f64,
        #[arg(long, default_value_t = 0.8)]
        band_max: f64,
        #[arg(long, default_value_t = 0.15)]
        tolerance: f64,
        /// Deviation report destination; stderr when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        sink: SinkArgs,
    },
    /// Pump intensity (W/cm²) needed for a target velocity in a Kerr medium.
    Estimate {
        /// Nonlinear index in cm²/W.
        #[arg(long)]
        n2: f64,
        #[arg(long)]
        omega_l_over_c: f64,
        /// Defaults to the photon resonance velocity.
        #[arg(long)]
        v_target: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = commands::run(cli.command);
    eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
