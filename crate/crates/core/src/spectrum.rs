//! Spectra, velocity scans, integrated rates and the derived relations
//! (resonance velocity, phase-conjugate partner, stimulated enhancement,
//! pump-intensity estimate).

use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{
    effective_g, emission_rate_with_floor, KernelError, RateDensity, Species,
    DEFAULT_DENOMINATOR_FLOOR,
};

/// Nodes of the default Gauss–Legendre rule for integrated rates.
pub const DEFAULT_QUADRATURE_NODES: usize = 256;

/// Integrated rates switch to adaptive bisection when |v − v_r| is below this.
pub const ADAPTIVE_WINDOW: f64 = 0.1;

const PANEL_NODES: usize = 32;
const MAX_BISECTION_DEPTH: u32 = 50;
const PANEL_TOLERANCE: f64 = 1e-10;
const CONVERGENCE_LIMIT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("no resonance: the effective Green function vanishes at omega = 1/2")]
    NoResonance,
    #[error("quadrature did not converge (successive refinements differ by {relative_change:.3e})")]
    QuadratureNotConverged { relative_change: f64 },
}

/// Physical parameters of the modulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpConfig {
    /// Maximal velocity of the optical length, in units of c.
    pub v: f64,
    pub species: Species,
    /// Resolvent modulus below which rates are flagged divergent.
    pub denominator_floor: f64,
}

impl PumpConfig {
    pub fn new(v: f64, species: Species) -> Result<Self, SpectrumError> {
        Self::with_floor(v, species, DEFAULT_DENOMINATOR_FLOOR)
    }

    pub fn photon(v: f64) -> Result<Self, SpectrumError> {
        Self::new(v, Species::Photon)
    }

    pub fn with_floor(v: f64, species: Species, floor: f64) -> Result<Self, SpectrumError> {
        if !(v.is_finite() && v >= 0.0) {
            return Err(SpectrumError::InvalidParameter { name: "velocity", value: v });
        }
        if !(floor.is_finite() && floor > 0.0) {
            return Err(SpectrumError::InvalidParameter { name: "denominator floor", value: floor });
        }
        if let Species::Massive { mass } = species {
            Species::massive(mass)?;
        }
        Ok(PumpConfig { v, species, denominator_floor: floor })
    }

    pub fn rate(&self, omega: f64) -> Result<RateDensity, KernelError> {
        emission_rate_with_floor(omega, self.v, self.species, self.denominator_floor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    /// Cell midpoints of `points` equal cells.
    OpenUniform,
    GaussLegendre,
}

/// Discretisation of a frequency interval inside [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    pub placement: Placement,
}

impl SpectralGrid {
    pub fn new(
        omega_min: f64,
        omega_max: f64,
        points: usize,
        placement: Placement,
    ) -> Result<Self, SpectrumError> {
        if !(omega_min.is_finite() && omega_max.is_finite()) {
            return Err(SpectrumError::InvalidGrid("bounds must be finite".into()));
        }
        if !(0.0 <= omega_min && omega_min < omega_max && omega_max <= 1.0) {
            return Err(SpectrumError::InvalidGrid(format!(
                "need 0 <= omega_min < omega_max <= 1, got [{omega_min}, {omega_max}]"
            )));
        }
        if points < 2 {
            return Err(SpectrumError::InvalidGrid(format!("need at least 2 points, got {points}")));
        }
        Ok(SpectralGrid { omega_min, omega_max, points, placement })
    }

    pub fn open_uniform(omega_min: f64, omega_max: f64, points: usize) -> Result<Self, SpectrumError> {
        Self::new(omega_min, omega_max, points, Placement::OpenUniform)
    }

    pub fn gauss_legendre(omega_min: f64, omega_max: f64, points: usize) -> Result<Self, SpectrumError> {
        Self::new(omega_min, omega_max, points, Placement::GaussLegendre)
    }

    /// Default rule for integrated rates: 256 Gauss–Legendre nodes on (0, 1).
    pub fn default_quadrature() -> Self {
        SpectralGrid {
            omega_min: 0.0,
            omega_max: 1.0,
            points: DEFAULT_QUADRATURE_NODES,
            placement: Placement::GaussLegendre,
        }
    }

    /// Nodes in increasing order with their quadrature weights.
    pub fn nodes_and_weights(&self) -> Vec<(f64, f64)> {
        let (a, b) = (self.omega_min, self.omega_max);
        match self.placement {
            Placement::OpenUniform => {
                let h = (b - a) / self.points as f64;
                (0..self.points).map(|i| (a + (i as f64 + 0.5) * h, h)).collect()
            }
            Placement::GaussLegendre => gauss_legendre_panel(self.points, a, b),
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        self.nodes_and_weights().into_iter().map(|(x, _)| x).collect()
    }
}

fn gauss_legendre_panel(points: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(points).expect("Gauss-Legendre rule needs at least 2 nodes");
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut pairs: Vec<(f64, f64)> = rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    pairs
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSample {
    pub omega: f64,
    pub rate: Result<RateDensity, KernelError>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlagKind {
    ResonantDivergence,
    Kernel(KernelError),
}

/// Marker for a grid node whose rate is not an ordinary finite number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeFlag {
    pub index: usize,
    pub omega: f64,
    pub kind: FlagKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub samples: Vec<SpectralSample>,
    pub pump: PumpConfig,
    pub flags: Vec<NodeFlag>,
}

impl SpectrumResult {
    /// Rates as floats: `+∞` for divergent nodes, NaN for failed ones.
    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| sample_value(&s.rate)).collect()
    }
}

pub(crate) fn sample_value(rate: &Result<RateDensity, KernelError>) -> f64 {
    match rate {
        Ok(r) => r.value(),
        Err(_) => f64::NAN,
    }
}

fn collect_flags(samples: &[SpectralSample]) -> Vec<NodeFlag> {
    samples
        .iter()
        .enumerate()
        .filter_map(|(index, s)| {
            let kind = match s.rate {
                Ok(RateDensity::Divergent) => FlagKind::ResonantDivergence,
                Err(e) => FlagKind::Kernel(e),
                Ok(RateDensity::Finite(_)) => return None,
            };
            Some(NodeFlag { index, omega: s.omega, kind })
        })
        .collect()
}

/// Emission rate at every node of `grid`. Failing nodes are flagged, not fatal.
pub fn spectrum_grid(pump: &PumpConfig, grid: &SpectralGrid) -> SpectrumResult {
    let samples: Vec<SpectralSample> = grid
        .nodes()
        .into_par_iter()
        .map(|omega| SpectralSample { omega, rate: pump.rate(omega) })
        .collect();
    let flags = collect_flags(&samples);
    SpectrumResult { samples, pump: *pump, flags }
}

/// Total pair emission rate `∫ Ṅ(ω) dω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegratedRate {
    Finite(f64),
    Divergent,
}

impl IntegratedRate {
    pub fn value(self) -> f64 {
        match self {
            IntegratedRate::Finite(x) => x,
            IntegratedRate::Divergent => f64::INFINITY,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, IntegratedRate::Divergent)
    }
}

enum Halt {
    Divergent,
    Failed(SpectrumError),
}

impl From<KernelError> for Halt {
    fn from(e: KernelError) -> Self {
        Halt::Failed(e.into())
    }
}

fn weighted_sum(pump: &PumpConfig, pairs: &[(f64, f64)]) -> Result<f64, Halt> {
    let mut total = 0.0;
    for &(omega, weight) in pairs {
        match pump.rate(omega)? {
            RateDensity::Finite(r) => total += weight * r,
            RateDensity::Divergent => return Err(Halt::Divergent),
        }
    }
    Ok(total)
}

struct Bisection<'a> {
    pump: &'a PumpConfig,
    reference: [(f64, f64); PANEL_NODES],
    tolerance_density: f64,
}

impl Bisection<'_> {
    fn panel(&self, a: f64, b: f64) -> Result<f64, Halt> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let pairs: Vec<(f64, f64)> =
            self.reference.iter().map(|&(x, w)| (mid + half * x, half * w)).collect();
        weighted_sum(self.pump, &pairs)
    }

    fn refine(&self, a: f64, b: f64, whole: f64, depth: u32) -> Result<f64, Halt> {
        let mid = 0.5 * (a + b);
        let left = self.panel(a, mid)?;
        let right = self.panel(mid, b)?;
        let sum = left + right;
        let change = (sum - whole).abs();
        if change <= self.tolerance_density * (b - a) || change <= PANEL_TOLERANCE * sum.abs() {
            return Ok(sum);
        }
        if depth >= MAX_BISECTION_DEPTH || (b - a) < 1e-14 {
            let relative_change = change / sum.abs().max(f64::MIN_POSITIVE);
            if relative_change > CONVERGENCE_LIMIT {
                return Err(Halt::Failed(SpectrumError::QuadratureNotConverged { relative_change }));
            }
            return Ok(sum);
        }
        Ok(self.refine(a, mid, left, depth + 1)? + self.refine(mid, b, right, depth + 1)?)
    }
}

fn near_resonance(pump: &PumpConfig) -> bool {
    match resonance_velocity(pump.species) {
        Ok(vr) => (pump.v - vr).abs() < ADAPTIVE_WINDOW,
        Err(_) => false,
    }
}

/// `∫ Ṅ(ω) dω` over the quadrature interval.
///
/// Uses the rule's nodes directly, except within [`ADAPTIVE_WINDOW`] of the
/// resonance velocity where the interval is split at ω = 1/2 and bisected
/// adaptively around the peak.
pub fn integrated_rate(pump: &PumpConfig, quadrature: &SpectralGrid) -> Result<IntegratedRate, SpectrumError> {
    if pump.v == 0.0 {
        return Ok(IntegratedRate::Finite(0.0));
    }
    let base = match weighted_sum(pump, &quadrature.nodes_and_weights()) {
        Ok(x) => x,
        Err(Halt::Divergent) if near_resonance(pump) => 0.0,
        Err(Halt::Divergent) => return Ok(IntegratedRate::Divergent),
        Err(Halt::Failed(e)) => return Err(e),
    };
    if !near_resonance(pump) {
        return Ok(IntegratedRate::Finite(base));
    }

    let (a, b) = (quadrature.omega_min, quadrature.omega_max);
    let mut reference = [(0.0, 0.0); PANEL_NODES];
    for (slot, pair) in reference.iter_mut().zip(gauss_legendre_panel(PANEL_NODES, -1.0, 1.0)) {
        *slot = pair;
    }
    let bisection = Bisection {
        pump,
        reference,
        tolerance_density: PANEL_TOLERANCE * base.abs() / (b - a),
    };
    let panels: Vec<(f64, f64)> = if a < 0.5 && 0.5 < b { vec![(a, 0.5), (0.5, b)] } else { vec![(a, b)] };

    let mut total = 0.0;
    for (lo, hi) in panels {
        let outcome = bisection.panel(lo, hi).and_then(|whole| bisection.refine(lo, hi, whole, 0));
        match outcome {
            Ok(x) => total += x,
            Err(Halt::Divergent) => return Ok(IntegratedRate::Divergent),
            Err(Halt::Failed(e)) => return Err(e),
        }
    }
    Ok(IntegratedRate::Finite(total))
}

/// `4π / √(π² + (4 − ln 3)²)`, the photon resonance velocity.
pub fn closed_form_resonance_velocity() -> f64 {
    4.0 * PI / (PI * PI + (4.0 - 3f64.ln()).powi(2)).sqrt()
}

/// Velocity at which the resolvent factor vanishes at ω = 1/2: `1/|Geff(1/2)|`.
pub fn resonance_velocity(species: Species) -> Result<f64, SpectrumError> {
    let g = effective_g(0.5, species)?;
    let modulus = g.norm();
    if modulus == 0.0 {
        return Err(SpectrumError::NoResonance);
    }
    Ok(1.0 / modulus)
}

/// Rates on a (velocity × frequency) lattice, one row per velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct Scan2d {
    pub velocities: Vec<f64>,
    pub omegas: Vec<f64>,
    pub rates: Vec<Vec<Result<RateDensity, KernelError>>>,
}

impl Scan2d {
    pub fn row_values(&self, row: usize) -> Vec<f64> {
        self.rates[row].iter().map(sample_value).collect()
    }
}

pub fn scan_2d(
    velocities: &[f64],
    grid: &SpectralGrid,
    species: Species,
    floor: f64,
) -> Result<Scan2d, SpectrumError> {
    let pumps = velocities
        .iter()
        .map(|&v| PumpConfig::with_floor(v, species, floor))
        .collect::<Result<Vec<_>, _>>()?;
    let omegas = grid.nodes();
    let rates = pumps
        .par_iter()
        .map(|pump| omegas.iter().map(|&w| pump.rate(w)).collect())
        .collect();
    Ok(Scan2d { velocities: velocities.to_vec(), omegas, rates })
}

/// Logarithmically spaced values from `start` to `end` inclusive.
pub fn log_space(start: f64, end: f64, points: usize) -> Result<Vec<f64>, SpectrumError> {
    if !(start > 0.0 && end > start && end.is_finite()) {
        return Err(SpectrumError::InvalidParameter { name: "log-space bounds", value: start });
    }
    if points < 2 {
        return Err(SpectrumError::InvalidParameter { name: "log-space points", value: points as f64 });
    }
    let ratio = (end / start).ln();
    let last = points - 1;
    Ok((0..points)
        .map(|i| match i {
            0 => start,
            i if i == last => end,
            i => start * (ratio * i as f64 / last as f64).exp(),
        })
        .collect())
}

/// Velocity axis of the integrated-rate figure: 200 log-spaced points on [0.1, 30].
pub fn default_velocity_scan() -> Vec<f64> {
    log_space(0.1, 30.0, 200).expect("static bounds")
}

/// Partner frequency and the wavevector ratio α of the conjugate photon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjugatePartner {
    pub omega: f64,
    /// The partner propagates with wavevector `−α q`.
    pub alpha: f64,
}

pub fn conjugate_partner(omega: f64) -> Result<ConjugatePartner, SpectrumError> {
    if !(omega > 0.0 && omega < 1.0) {
        return Err(KernelError::Domain { omega, domain: "(0, 1)" }.into());
    }
    Ok(ConjugatePartner { omega: 1.0 - omega, alpha: 1.0 / omega - 1.0 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StimulatedRates {
    /// Emission into the seeded wavevector `q`.
    pub same: RateDensity,
    /// Emission into the conjugate wavevector `−α q`.
    pub conjugate: RateDensity,
}

/// Rates in the presence of `occupation` seed photons at frequency ω.
pub fn stimulated_rate(
    omega: f64,
    pump: &PumpConfig,
    occupation: f64,
) -> Result<StimulatedRates, SpectrumError> {
    if !(occupation.is_finite() && occupation >= 0.0) {
        return Err(SpectrumError::InvalidParameter { name: "seed occupation", value: occupation });
    }
    let spontaneous = pump.rate(omega)?;
    let boosted = spontaneous.scaled(1.0 + occupation);
    Ok(StimulatedRates { same: boosted, conjugate: boosted })
}

/// Laser intensity (W/cm²) giving velocity `v_target` when `n′₀ = n2·I`
/// and `v = n′₀ ω0 L/c`.
pub fn required_intensity(n2: f64, omega_l_over_c: f64, v_target: f64) -> Result<f64, SpectrumError> {
    for (name, value) in [("n2", n2), ("omega L / c", omega_l_over_c), ("target velocity", v_target)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(SpectrumError::InvalidParameter { name, value });
        }
    }
    Ok(v_target / (n2 * omega_l_over_c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn grid_validation() {
        assert!(SpectralGrid::open_uniform(0.5, 0.5, 10).is_err());
        assert!(SpectralGrid::open_uniform(-0.1, 0.5, 10).is_err());
        assert!(SpectralGrid::open_uniform(0.0, 1.1, 10).is_err());
        assert!(SpectralGrid::open_uniform(0.0, 1.0, 1).is_err());
        assert!(SpectralGrid::gauss_legendre(0.0, f64::NAN, 8).is_err());
    }

    #[test]
    fn open_placements_avoid_interval_ends() {
        for grid in [
            SpectralGrid::open_uniform(0.0, 1.0, 7).unwrap(),
            SpectralGrid::gauss_legendre(0.0, 1.0, 7).unwrap(),
        ] {
            let nodes = grid.nodes();
            assert_eq!(nodes.len(), 7);
            assert!(nodes.iter().all(|&w| w > 0.0 && w < 1.0));
            assert!(nodes.windows(2).all(|p| p[0] < p[1]));
            let weight: f64 = grid.nodes_and_weights().iter().map(|p| p.1).sum();
            assert_relative_eq!(weight, 1.0, max_relative = 1e-13);
        }
        let w = SpectralGrid::open_uniform(0.0, 1.0, 101).unwrap().nodes();
        assert_relative_eq!(w[50], 0.5, max_relative = 1e-15);
    }

    #[test]
    fn zero_velocity_spectrum_is_zero() {
        let pump = PumpConfig::photon(0.0).unwrap();
        let s = spectrum_grid(&pump, &SpectralGrid::open_uniform(0.0, 1.0, 33).unwrap());
        assert!(s.values().iter().all(|&r| r == 0.0));
        assert!(s.flags.is_empty());
        let total = integrated_rate(&pump, &SpectralGrid::default_quadrature()).unwrap();
        assert_eq!(total, IntegratedRate::Finite(0.0));
    }

    #[test]
    fn weak_pump_profile_is_symmetric_and_peaked() {
        let pump = PumpConfig::photon(0.1).unwrap();
        let s = spectrum_grid(&pump, &SpectralGrid::open_uniform(0.0, 1.0, 101).unwrap());
        let r = s.values();
        let peak = r.iter().cloned().enumerate().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
        assert_eq!(peak, 50);
        for i in 0..101 {
            assert_relative_eq!(r[i], r[100 - i], max_relative = 1e-12);
        }
    }

    #[test]
    fn node_at_resonance_is_flagged_not_fatal() {
        let vr = closed_form_resonance_velocity();
        let pump = PumpConfig::photon(vr).unwrap();
        let s = spectrum_grid(&pump, &SpectralGrid::open_uniform(0.0, 1.0, 11).unwrap());
        assert_eq!(s.samples.len(), 11);
        assert_eq!(s.flags.len(), 1);
        assert_eq!(s.flags[0].index, 5);
        assert_eq!(s.flags[0].kind, FlagKind::ResonantDivergence);
    }

    #[test]
    fn singular_nodes_are_flagged() {
        // m = 0.25 puts the G1 singularity exactly on the ω = 1/2 node
        let pump = PumpConfig::new(1.0, Species::massive(0.25).unwrap()).unwrap();
        let s = spectrum_grid(&pump, &SpectralGrid::open_uniform(0.0, 1.0, 11).unwrap());
        assert_eq!(s.flags.len(), 1);
        assert!(matches!(s.flags[0].kind, FlagKind::Kernel(KernelError::SingularArgument { .. })));
        assert!(s.values()[5].is_nan());
    }

    #[test]
    fn near_resonant_grid_peaks_at_half() {
        let grid = SpectralGrid::open_uniform(0.0, 1.0, 101).unwrap();
        let hot = spectrum_grid(&PumpConfig::photon(2.9385).unwrap(), &grid).values();
        let cold = spectrum_grid(&PumpConfig::photon(1.0).unwrap(), &grid).values();
        let peak = hot.iter().cloned().enumerate().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
        assert_eq!(peak, 50);
        assert!(hot[50] > 1e3 * cold[50]);
    }

    #[test]
    fn weak_pump_integral_matches_perturbative_area() {
        let pump = PumpConfig::photon(0.1).unwrap();
        let total = integrated_rate(&pump, &SpectralGrid::default_quadrature()).unwrap().value();
        let area = (0.1 / (2.0 * PI)).powi(2) / 6.0;
        assert_relative_eq!(total, area, max_relative = 0.01);
        // 40-digit reference of the same integral
        assert_relative_eq!(total, 4.228_352_977_163_796e-5, max_relative = 1e-9);
    }

    #[test]
    fn integral_agrees_with_fine_riemann_sum() {
        for v in [0.3, 1.0, 2.5, 3.3, 8.0] {
            let pump = PumpConfig::photon(v).unwrap();
            let gl = integrated_rate(&pump, &SpectralGrid::default_quadrature()).unwrap().value();
            let fine = SpectralGrid::open_uniform(0.0, 1.0, 10 * DEFAULT_QUADRATURE_NODES).unwrap();
            let riemann: f64 = fine
                .nodes_and_weights()
                .iter()
                .map(|&(w, h)| h * pump.rate(w).unwrap().value())
                .sum();
            assert_relative_eq!(gl, riemann, max_relative = 0.005);
        }
    }

    #[test]
    fn exact_resonance_integral_is_divergent() {
        let pump = PumpConfig::photon(resonance_velocity(Species::Photon).unwrap()).unwrap();
        let total = integrated_rate(&pump, &SpectralGrid::default_quadrature()).unwrap();
        assert!(total.is_divergent());
    }

    #[test]
    fn adaptive_refinement_resolves_narrow_peak() {
        // Lorentzian-like peak of width ~1e-4 around ω = 1/2; the adaptive
        // result must agree with a brute-force midpoint sum on a fine mesh.
        let vr = closed_form_resonance_velocity();
        let pump = PumpConfig::photon(vr - 1e-4).unwrap();
        let adaptive = integrated_rate(&pump, &SpectralGrid::default_quadrature()).unwrap().value();
        let mesh = SpectralGrid::open_uniform(0.49, 0.51, 200_000).unwrap();
        let core: f64 = mesh.nodes_and_weights().iter().map(|&(w, h)| h * pump.rate(w).unwrap().value()).sum();
        let outer = SpectralGrid::open_uniform(0.0, 0.49, 20_000).unwrap();
        let wings: f64 = outer.nodes_and_weights().iter().map(|&(w, h)| h * pump.rate(w).unwrap().value()).sum();
        assert_relative_eq!(adaptive, core + 2.0 * wings, max_relative = 1e-3);
    }

    #[test]
    fn resonance_velocity_photon_and_massive() {
        let vr = resonance_velocity(Species::Photon).unwrap();
        assert!((vr - closed_form_resonance_velocity()).abs() < 1e-12);
        assert_relative_eq!(vr, 2.938_534_902_062_392_7, max_relative = 1e-14);
        assert_eq!(resonance_velocity(Species::massive(0.5).unwrap()), Err(SpectrumError::NoResonance));
        let m = resonance_velocity(Species::massive(0.1).unwrap()).unwrap();
        assert_relative_eq!(m, 3.948_147_883_699_223, max_relative = 1e-12);
        assert!(m > vr);
    }

    #[test]
    fn scan_rows_are_symmetric_and_zero_row_is_zero() {
        let grid = SpectralGrid::open_uniform(0.0, 1.0, 64).unwrap();
        let scan = scan_2d(&[0.0, 0.5, 2.0, 7.0], &grid, Species::Photon, DEFAULT_DENOMINATOR_FLOOR).unwrap();
        assert!(scan.row_values(0).iter().all(|&r| r == 0.0));
        for row in 1..4 {
            let r = scan.row_values(row);
            for i in 0..64 {
                assert_relative_eq!(r[i], r[63 - i], max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn log_space_endpoints() {
        let v = default_velocity_scan();
        assert_eq!(v.len(), 200);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[199], 30.0);
        assert!(v.windows(2).all(|p| p[1] > p[0]));
        assert!(log_space(0.0, 1.0, 4).is_err());
    }

    #[test]
    fn conjugate_partner_cases() {
        assert_eq!(conjugate_partner(0.5).unwrap(), ConjugatePartner { omega: 0.5, alpha: 1.0 });
        assert_eq!(conjugate_partner(0.25).unwrap(), ConjugatePartner { omega: 0.75, alpha: 3.0 });
        let edge = conjugate_partner(1.0 - 1e-9).unwrap();
        assert!(edge.omega > 0.0 && edge.omega < 2e-9);
        assert!(edge.alpha > 0.0 && edge.alpha < 2e-9);
        assert!(conjugate_partner(0.0).is_err());
        assert!(conjugate_partner(1.0).is_err());
    }

    #[test]
    fn stimulated_rates_scale_with_seed() {
        let pump = PumpConfig::photon(0.7).unwrap();
        let spont = pump.rate(0.3).unwrap().value();
        let none = stimulated_rate(0.3, &pump, 0.0).unwrap();
        assert_eq!(none.same.value(), spont);
        assert_eq!(none.conjugate.value(), spont);
        let nine = stimulated_rate(0.3, &pump, 9.0).unwrap();
        assert_eq!(nine.same.value(), 10.0 * spont);
        assert_eq!(nine.conjugate.value(), 10.0 * spont);
        assert!(stimulated_rate(0.3, &pump, -1.0).is_err());
    }

    #[test]
    fn intensity_estimate() {
        assert_eq!(required_intensity(1e-15, 1e5, 1.0).unwrap(), 1e10);
        assert_relative_eq!(required_intensity(1e-15, 1e5, 2.9386).unwrap(), 2.9386e10, max_relative = 1e-15);
        let base = required_intensity(1e-15, 1e5, 1.7).unwrap();
        assert_relative_eq!(required_intensity(1e-15, 2e5, 1.7).unwrap(), base / 2.0, max_relative = 1e-15);
        assert!(required_intensity(0.0, 1e5, 1.0).is_err());
        assert!(required_intensity(1e-15, -1.0, 1.0).is_err());
    }
}
