//! Conversions between the informational and customary notions of mass.
//!
//! `M = ħ/(2ac)` is the mass at which information flow halts, so the
//! dimensionless coupling is `μ = m/M = 2a/λ` with Compton wavelength
//! `λ = c/ω = ħ/(mc)`, and `m = ħω/c²`.

use crate::error::{Error, Result};
use crate::lattice::{LatticeParams, MassCoupling};

fn positive(x: f64, name: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::arg(format!("{name} must be positive and finite, got {x}")))
    }
}

fn non_negative(x: f64, name: &str) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::arg(format!("{name} must be non-negative and finite, got {x}")))
    }
}

/// `M = ħ/(2ac)`.
pub fn planck_like_mass(params: &LatticeParams, hbar: f64) -> Result<f64> {
    positive(hbar, "hbar")?;
    Ok(hbar / (2.0 * params.chorus() * params.max_speed()))
}

/// Flip frequency `ω = mc²/ħ` for `m = μM`, i.e. `ω = μc/(2a)`.
pub fn omega_from_mu(mass: &MassCoupling, params: &LatticeParams) -> f64 {
    mass.mu() * params.max_speed() / (2.0 * params.chorus())
}

/// Inverse of [`omega_from_mu`].
pub fn mu_from_omega(omega: f64, params: &LatticeParams) -> Result<MassCoupling> {
    non_negative(omega, "omega")?;
    MassCoupling::new(2.0 * params.chorus() * omega / params.max_speed())
}

/// `m = (ħ/c²) ω`, kilograms for SI inputs.
pub fn mass_kg_from_omega(omega: f64, hbar: f64, c: f64) -> Result<f64> {
    non_negative(omega, "omega")?;
    positive(hbar, "hbar")?;
    positive(c, "c")?;
    Ok(hbar * omega / (c * c))
}

/// `ω = mc²/ħ`.
pub fn omega_from_mass_kg(mass_kg: f64, hbar: f64, c: f64) -> Result<f64> {
    non_negative(mass_kg, "mass")?;
    positive(hbar, "hbar")?;
    positive(c, "c")?;
    Ok(mass_kg * c * c / hbar)
}

/// `λ = ħ/(mc)`; a massless field returns `f64::INFINITY`.
pub fn compton_wavelength(mass_kg: f64, hbar: f64, c: f64) -> Result<f64> {
    non_negative(mass_kg, "mass")?;
    positive(hbar, "hbar")?;
    positive(c, "c")?;
    if mass_kg == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(hbar / (mass_kg * c))
}

/// `μ = 2a/λ`, the same coupling read off the Compton wavelength.
pub fn mu_from_wavelength(lambda: f64, params: &LatticeParams) -> Result<f64> {
    positive(lambda, "wavelength")?;
    Ok(2.0 * params.chorus() / lambda)
}
