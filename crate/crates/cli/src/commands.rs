use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use serde_json::{json, Value};
use twophoton::spectrum::{log_space, FlagKind};
use twophoton::{
    build_sim, closed_form_resonance_velocity, compare_to_analytic, evolve, extract_rates, integrated_rate,
    required_intensity, resonance_velocity, scan_2d, spectrum_grid, DeviationReport, KernelError, PumpConfig,
    SimConfig, SimError, SpectralGrid, Species, SpectrumError,
};

use crate::output::{json_number, log10_rate, open_sink, write_json, OutputGrid, RunRecord};
use crate::{Command, OmegaArgs, SinkArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
    NoResonance(String),
    Unstable(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::NoResonance(_) => 4,
            CliError::Unstable(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::NoResonance(m) | CliError::Unstable(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::NoResonance => CliError::NoResonance(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::IntegratorUnstable { .. } => CliError::Unstable(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Spectrum { v, mass, omega, denominator_floor, sink } => {
            spectrum(v, mass, &omega, denominator_floor, &sink)
        }
        Command::Scan { v_min, v_max, v_points, mass, omega, denominator_floor, integrate, sink } => {
            let velocities = log_space(v_min, v_max, v_points)?;
            let record = RunRecord::new("scan")
                .param("v-min", v_min)
                .param("v-max", v_max)
                .param("v-points", v_points);
            let record = with_omega(with_mass(record, mass), &omega)
                .param("denominator-floor", denominator_floor)
                .flag("integrate", integrate);
            let record = with_sink(record, &sink);
            let species = species(mass)?;
            let grid = if integrate {
                integrated_scan(&velocities, species, denominator_floor, record)?
            } else {
                lattice_scan(&velocities, species, &omega, denominator_floor, record)?
            };
            emit(&grid, &sink)
        }
        Command::Resonance { mass } => resonance(mass),
        Command::Simulate {
            v,
            kappa0,
            t0,
            dt_divisor,
            mode_multiplier,
            exclude_self_coupling,
            compare,
            band_min,
            band_max,
            tolerance,
            report,
            sink,
        } => {
            let mut config = SimConfig::new(kappa0, v)
                .with_t0(t0)
                .with_mode_multiplier(mode_multiplier)
                .with_dt_divisor(dt_divisor);
            config.exclude_self_coupling = exclude_self_coupling;
            let mut record = RunRecord::new("simulate")
                .param("v", v)
                .param("kappa0", kappa0)
                .param("t0", t0)
                .param("dt-divisor", dt_divisor)
                .param("mode-multiplier", mode_multiplier)
                .flag("exclude-self-coupling", exclude_self_coupling)
                .flag("compare", compare);
            if compare {
                record = record
                    .param("band-min", band_min)
                    .param("band-max", band_max)
                    .param("tolerance", tolerance);
                if let Some(path) = &report {
                    record = record.param("report", path.display());
                }
            }
            let record = with_sink(record, &sink);
            let comparison = compare.then_some(((band_min, band_max), tolerance, report));
            simulate(&config, comparison, record, &sink)
        }
        Command::Estimate { n2, omega_l_over_c, v_target } => {
            let v = v_target.unwrap_or_else(closed_form_resonance_velocity);
            let intensity = required_intensity(n2, omega_l_over_c, v)?;
            println!("{intensity:e} W/cm^2");
            Ok(())
        }
    }
}

fn species(mass: Option<f64>) -> Result<Species, CliError> {
    Ok(match mass {
        Some(m) => Species::massive(m)?,
        None => Species::Photon,
    })
}

fn with_mass(record: RunRecord, mass: Option<f64>) -> RunRecord {
    match mass {
        Some(m) => record.param("mass", m),
        None => record,
    }
}

fn with_omega(record: RunRecord, omega: &OmegaArgs) -> RunRecord {
    record
        .param("omega-min", omega.omega_min)
        .param("omega-max", omega.omega_max)
        .param("points", omega.points)
}

fn with_sink(record: RunRecord, sink: &SinkArgs) -> RunRecord {
    let format = match sink.format {
        crate::output::Format::Csv => "csv",
        crate::output::Format::Json => "json",
    };
    let record = record.param("format", format);
    let record = match &sink.out {
        Some(p) => record.param("out", p.display()),
        None => record,
    };
    record.output(sink.out.as_deref())
}

fn emit(grid: &OutputGrid, sink: &SinkArgs) -> Result<(), CliError> {
    let mut out = open_sink(sink.out.as_ref())?;
    grid.write(sink.format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn flag_note(omega: f64, kind: &FlagKind) -> String {
    match kind {
        FlagKind::ResonantDivergence => format!("omega {omega} resonant divergence"),
        FlagKind::Kernel(e) => format!("omega {omega} {e}"),
    }
}

fn spectrum(v: f64, mass: Option<f64>, omega: &OmegaArgs, floor: f64, sink: &SinkArgs) -> Result<(), CliError> {
    let record = with_omega(with_mass(RunRecord::new("spectrum").param("v", v), mass), omega)
        .param("denominator-floor", floor);
    let record = with_sink(record, sink);
    let pump = PumpConfig::with_floor(v, species(mass)?, floor)?;
    let grid = SpectralGrid::open_uniform(omega.omega_min, omega.omega_max, omega.points)?;
    let result = spectrum_grid(&pump, &grid);

    let mut table = OutputGrid::new(record, vec!["omega", "rate", "log10_rate"]);
    for (sample, rate) in result.samples.iter().zip(result.values()) {
        table.push(vec![sample.omega, rate, log10_rate(rate)]);
    }
    table.notes = result.flags.iter().map(|f| flag_note(f.omega, &f.kind)).collect();
    emit(&table, sink)
}

fn lattice_scan(
    velocities: &[f64],
    species: Species,
    omega: &OmegaArgs,
    floor: f64,
    record: RunRecord,
) -> Result<OutputGrid, CliError> {
    let grid = SpectralGrid::open_uniform(omega.omega_min, omega.omega_max, omega.points)?;
    let scan = scan_2d(velocities, &grid, species, floor)?;
    let mut table = OutputGrid::new(record, vec!["v", "omega", "rate", "log10_rate"]);
    for (row, &v) in scan.velocities.iter().enumerate() {
        for ((&w, rate), raw) in scan.omegas.iter().zip(scan.row_values(row)).zip(&scan.rates[row]) {
            table.push(vec![v, w, rate, log10_rate(rate)]);
            match raw {
                Ok(r) if r.is_divergent() => table.notes.push(format!("v {v} {}", flag_note(w, &FlagKind::ResonantDivergence))),
                Err(e) => table.notes.push(format!("v {v} {}", flag_note(w, &FlagKind::Kernel(*e)))),
                _ => {}
            }
        }
    }
    Ok(table)
}

fn integrated_scan(velocities: &[f64], species: Species, floor: f64, record: RunRecord) -> Result<OutputGrid, CliError> {
    let quadrature = SpectralGrid::default_quadrature();
    let mut table = OutputGrid::new(record, vec!["v", "integrated_rate", "log10_integrated_rate"]);
    for &v in velocities {
        let pump = PumpConfig::with_floor(v, species, floor)?;
        let value = match integrated_rate(&pump, &quadrature) {
            Ok(total) => {
                if total.is_divergent() {
                    table.notes.push(format!("v {v} integrated rate diverges"));
                }
                total.value()
            }
            Err(e @ SpectrumError::QuadratureNotConverged { .. }) => {
                table.notes.push(format!("v {v} {e}"));
                f64::NAN
            }
            Err(e) => return Err(e.into()),
        };
        table.push(vec![v, value, log10_rate(value)]);
    }
    Ok(table)
}

fn resonance(mass: Option<f64>) -> Result<(), CliError> {
    let vr = resonance_velocity(species(mass)?)?;
    let reference = closed_form_resonance_velocity();
    println!("resonance velocity: {vr:.12}");
    println!("photon closed form: {reference:.12}");
    println!("difference: {:.3e}", vr - reference);
    Ok(())
}

fn report_json(report: &DeviationReport) -> Value {
    let per_mode: Vec<Value> = report
        .per_mode
        .iter()
        .map(|m| {
            json!({
                "omega": m.omega,
                "simulated": json_number(m.simulated),
                "analytic": json_number(m.analytic),
                "relative_deviation": json_number(m.relative_deviation),
            })
        })
        .collect();
    json!({
        "v": report.v,
        "kappa0": report.kappa0,
        "t0": report.t0,
        "band": [report.band.0, report.band.1],
        "tolerance": report.tolerance,
        "max_deviation": json_number(report.max_deviation),
        "median_deviation": json_number(report.median_deviation),
        "median_ratio": report.median_ratio.map(json_number),
        "degenerate": report.degenerate,
        "recurrence_time": report.recurrence_time,
        "beyond_recurrence": report.beyond_recurrence,
        "pass": report.pass,
        "per_mode": per_mode,
    })
}

type Comparison = ((f64, f64), f64, Option<PathBuf>);

fn simulate(config: &SimConfig, comparison: Option<Comparison>, record: RunRecord, sink: &SinkArgs) -> Result<(), CliError> {
    let ensemble = build_sim(config)?;
    let evolution = evolve(&ensemble, config)?;
    let spectrum = extract_rates(&evolution, config);

    let mut table = OutputGrid::new(record.clone(), vec!["omega", "rate", "occupation"]);
    for s in &spectrum.samples {
        table.push(vec![s.omega, s.rate, s.occupation]);
    }
    table.notes.push(format!("max symplectic residual {:.3e}", evolution.matrix.max_symplectic_residual()));
    if config.t0 > config.recurrence_time() {
        table.notes.push(format!("t0 exceeds the recurrence time {}", config.recurrence_time()));
    }
    emit(&table, sink)?;

    if let Some((band, tolerance, path)) = comparison {
        let pump = PumpConfig::photon(config.v)?;
        let report = compare_to_analytic(&spectrum, &pump, band, tolerance)?;
        eprintln!(
            "median deviation {:.4} (tolerance {tolerance}), max {:.4}, pass {}",
            report.median_deviation, report.max_deviation, report.pass
        );
        let mut meta = record.to_json();
        if let Some(p) = &path {
            meta["outputs"] = json!([meta["outputs"][0], p.display().to_string()]);
        }
        let doc = json!({ "meta": meta, "data": report_json(&report) });
        match path {
            Some(p) => {
                let mut out = open_sink(Some(&p))?;
                write_json(&doc, &mut out)?;
                out.flush()?;
            }
            None => write_json(&doc, &mut io::stderr().lock())?,
        }
    }
    Ok(())
}
