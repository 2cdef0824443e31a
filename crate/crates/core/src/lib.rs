//! Spontaneous two-quantum emission from a medium whose optical length
//! oscillates harmonically in time.
//!
//! * [`kernel`] evaluates the closed-form Green function, resolvent factor and
//!   emission-rate density.
//! * [`spectrum`] builds spectra, scans and integrated rates on top of it, and
//!   locates the resonance velocity.
//! * [`modesim`] is an independent time-domain check: it evolves a truncated
//!   set of resonator modes coupled through the oscillating optical length and
//!   reads the created-pair numbers off the Bogoliubov coefficients.
//!
//! All quantities use ω0 = c = ħ = 1.

pub mod kernel;
pub mod modesim;
pub mod spectrum;

pub use kernel::{
    effective_g, emission_rate, emission_rate_with_floor, green_g, green_g1, perturbative_rate,
    resolvent_factor, KernelError, RateDensity, Species, DEFAULT_DENOMINATOR_FLOOR,
};
pub use modesim::{
    build_sim, compare_to_analytic, evolve, extract_rates, BogoliubovMatrix, DeviationReport,
    Evolution, ModeEnsemble, SimConfig, SimError, SimSpectrum,
};
pub use spectrum::{
    closed_form_resonance_velocity, conjugate_partner, integrated_rate, required_intensity,
    resonance_velocity, scan_2d, spectrum_grid, stimulated_rate, IntegratedRate, Placement,
    PumpConfig, SpectralGrid, SpectrumError, SpectrumResult,
};
