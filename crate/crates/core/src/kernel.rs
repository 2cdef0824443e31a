//! Closed-form Green function, resolvent factor and emission rate.
//!
//! Units throughout: ω0 = c = ħ = 1. Frequencies are measured in units of the
//! modulation frequency, velocities in units of c.
//!
//! The spectral Green function of the truncated mode sum is
//!
//! ```text
//! G(ω) = (1/π) [1 + (ω/2) ln(|1−ω| / |1+ω|)] + i (ω/2) Θ(1−|ω|)
//! ```
//!
//! and the two-quantum emission rate per unit time and unit frequency is
//!
//! ```text
//! Ṅ(ω) = (v/2π)² ω(1−ω) / |1 − v² G*(ω) G(1−ω)|²
//! ```
//!
//! For massive bosons `G` is replaced by `G − G₁`, where `G₁` follows from `G`
//! by substituting `2m − ω` for `1 − ω`. The numerator is written as
//! `(v/π)² Im G(ω) Im G(1−ω)`, which is the same number for photons and makes
//! the massive rate vanish together with `G − G₁` at the pair threshold.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// Modulus of the resolvent factor below which a rate is reported as divergent.
pub const DEFAULT_DENOMINATOR_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum KernelError {
    #[error("logarithmic singularity of the Green function at omega = {omega}")]
    SingularArgument { omega: f64 },
    #[error("omega = {omega} is outside the domain {domain}")]
    Domain { omega: f64, domain: &'static str },
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
}

/// Which quanta are emitted in pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Species {
    #[default]
    Photon,
    /// Klein–Gordon bosons of rest mass `mass` (units ħω0/c²).
    Massive { mass: f64 },
}

impl Species {
    pub fn massive(mass: f64) -> Result<Self, KernelError> {
        check_mass(mass)?;
        Ok(Species::Massive { mass })
    }

    pub fn mass(&self) -> Option<f64> {
        match *self {
            Species::Photon => None,
            Species::Massive { mass } => Some(mass),
        }
    }
}

/// Emission rate density: photons per unit time per unit frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateDensity {
    Finite(f64),
    /// The resolvent factor fell below the configured floor.
    Divergent,
}

impl RateDensity {
    /// Numeric value, with `+∞` standing in for a flagged divergence.
    pub fn value(self) -> f64 {
        match self {
            RateDensity::Finite(x) => x,
            RateDensity::Divergent => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            RateDensity::Finite(x) => Some(x),
            RateDensity::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, RateDensity::Divergent)
    }

    pub fn scaled(self, factor: f64) -> Self {
        match self {
            RateDensity::Finite(x) => RateDensity::Finite(x * factor),
            RateDensity::Divergent => RateDensity::Divergent,
        }
    }
}

impl Serialize for RateDensity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            RateDensity::Finite(x) => serializer.serialize_f64(*x),
            RateDensity::Divergent => serializer.serialize_str("inf"),
        }
    }
}

fn check_finite(name: &'static str, value: f64) -> Result<(), KernelError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(KernelError::InvalidParameter { name, value })
    }
}

fn check_velocity(v: f64) -> Result<(), KernelError> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(KernelError::InvalidParameter { name: "velocity", value: v })
    }
}

fn check_mass(mass: f64) -> Result<(), KernelError> {
    if mass.is_finite() && (0.0..=0.5).contains(&mass) {
        Ok(())
    } else {
        Err(KernelError::InvalidParameter { name: "mass", value: mass })
    }
}

/// `(1/π)[1 + (ω/2)(ln|upper − ω| − ln|1 + ω|)]`, the real part shared by G and G₁.
fn real_part(omega: f64, upper: f64) -> f64 {
    let log_ratio = (upper - omega).abs().ln() - (1.0 + omega).abs().ln();
    (1.0 + 0.5 * omega * log_ratio) / PI
}

/// Spectral Green function `G(ω)`.
///
/// Defined for every finite ω except the logarithmic singularities at
/// `|ω| = 1`. Satisfies `G(−ω) = conj(G(ω))` exactly.
pub fn green_g(omega: f64) -> Result<Complex64, KernelError> {
    check_finite("omega", omega)?;
    if omega.abs() == 1.0 {
        return Err(KernelError::SingularArgument { omega });
    }
    let im = if omega.abs() < 1.0 { 0.5 * omega } else { 0.0 };
    Ok(Complex64::new(real_part(omega, 1.0), im))
}

/// Mass-shifted Green function `G₁(ω; m)`: `1 − ω` replaced by `2m − ω`
/// on the physical domain ω ≥ 0, with `|1 + ω|` untouched.
pub fn green_g1(omega: f64, mass: f64) -> Result<Complex64, KernelError> {
    check_finite("omega", omega)?;
    check_mass(mass)?;
    if omega < 0.0 {
        return Err(KernelError::Domain { omega, domain: "[0, inf)" });
    }
    let threshold = 2.0 * mass;
    if omega == threshold {
        return Err(KernelError::SingularArgument { omega });
    }
    let im = if omega < threshold { 0.5 * omega } else { 0.0 };
    Ok(Complex64::new(real_part(omega, threshold), im))
}

/// `G` for photons, `G − G₁` for massive quanta.
pub fn effective_g(omega: f64, species: Species) -> Result<Complex64, KernelError> {
    match species {
        Species::Photon => green_g(omega),
        Species::Massive { mass } => Ok(green_g(omega)? - green_g1(omega, mass)?),
    }
}

/// Resolvent factor `1 − v² conj(Geff(ω)) Geff(1−ω)` for ω in (0, 1).
pub fn resolvent_factor(omega: f64, v: f64, species: Species) -> Result<Complex64, KernelError> {
    check_finite("omega", omega)?;
    check_velocity(v)?;
    if !(omega > 0.0 && omega < 1.0) {
        return Err(KernelError::Domain { omega, domain: "(0, 1)" });
    }
    let lower = effective_g(omega, species)?;
    let upper = effective_g(1.0 - omega, species)?;
    Ok(Complex64::new(1.0, 0.0) - v * v * lower.conj() * upper)
}

/// Emission rate with the default divergence floor.
pub fn emission_rate(omega: f64, v: f64, species: Species) -> Result<RateDensity, KernelError> {
    emission_rate_with_floor(omega, v, species, DEFAULT_DENOMINATOR_FLOOR)
}

/// Pair emission rate per unit time and frequency at ω ∈ [0, 1].
///
/// The endpoints return zero (the limit value). When `|1 − v²G*G|` drops
/// below `floor` the result is [`RateDensity::Divergent`] instead of an
/// overflowing float.
pub fn emission_rate_with_floor(
    omega: f64,
    v: f64,
    species: Species,
    floor: f64,
) -> Result<RateDensity, KernelError> {
    check_finite("omega", omega)?;
    check_velocity(v)?;
    if !(floor > 0.0) {
        return Err(KernelError::InvalidParameter { name: "denominator floor", value: floor });
    }
    if !(0.0..=1.0).contains(&omega) {
        return Err(KernelError::Domain { omega, domain: "[0, 1]" });
    }
    if omega == 0.0 || omega == 1.0 || v == 0.0 {
        return Ok(RateDensity::Finite(0.0));
    }

    let lower = effective_g(omega, species)?;
    let upper = effective_g(1.0 - omega, species)?;
    let numerator = (v / PI).powi(2) * lower.im * upper.im;
    if numerator == 0.0 {
        return Ok(RateDensity::Finite(0.0));
    }
    let factor = Complex64::new(1.0, 0.0) - v * v * lower.conj() * upper;
    let modulus = factor.norm();
    if modulus < floor {
        return Ok(RateDensity::Divergent);
    }
    Ok(RateDensity::Finite(numerator / (modulus * modulus)))
}

/// Lowest-order rate `(v/2π)² ω(1−ω)`.
pub fn perturbative_rate(omega: f64, v: f64) -> Result<f64, KernelError> {
    check_finite("omega", omega)?;
    check_velocity(v)?;
    if !(0.0..=1.0).contains(&omega) {
        return Err(KernelError::Domain { omega, domain: "[0, 1]" });
    }
    Ok((v / (2.0 * PI)).powi(2) * omega * (1.0 - omega))
}
