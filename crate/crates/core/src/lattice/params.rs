use serde::Serialize;

use crate::error::{Error, Result};

/// Periodic 1-D lattice: site count, chorus `a` and chronon `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeParams {
    n_sites: usize,
    chorus: f64,
    chronon: f64,
}

impl LatticeParams {
    /// The five-point stencil spans ±2 sites, so at least 4 (even) sites are
    /// required.
    pub fn new(n_sites: usize, chorus: f64, chronon: f64) -> Result<Self> {
        if n_sites < 4 || !n_sites.is_multiple_of(2) {
            return Err(Error::arg(format!(
                "n_sites must be even and >= 4, got {n_sites}"
            )));
        }
        if !(chorus > 0.0 && chorus.is_finite()) {
            return Err(Error::arg(format!("chorus must be positive, got {chorus}")));
        }
        if !(chronon > 0.0 && chronon.is_finite()) {
            return Err(Error::arg(format!("chronon must be positive, got {chronon}")));
        }
        Ok(Self {
            n_sites,
            chorus,
            chronon,
        })
    }

    /// Lattice units: `a = τ = 1`.
    pub fn unit(n_sites: usize) -> Result<Self> {
        Self::new(n_sites, 1.0, 1.0)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn chorus(&self) -> f64 {
        self.chorus
    }

    pub fn chronon(&self) -> f64 {
        self.chronon
    }

    /// Maximal information speed `c = a/τ`, one site per step.
    pub fn max_speed(&self) -> f64 {
        self.chorus / self.chronon
    }
}

/// Dimensionless mass `μ = m/M ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassCoupling {
    mu: f64,
}

impl MassCoupling {
    pub fn new(mu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::arg(format!("mu must lie in [0, 1], got {mu}")));
        }
        Ok(Self { mu })
    }

    pub fn massless() -> Self {
        Self { mu: 0.0 }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `ν = √(1 − μ²)`, the amplitude that keeps flowing in the same
    /// direction at each step.
    pub fn nu(&self) -> f64 {
        // (1-μ)(1+μ) is exact where 1-μ² would cancel near μ = 1.
        ((1.0 - self.mu) * (1.0 + self.mu)).sqrt()
    }
}
