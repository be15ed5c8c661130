use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::params::LatticeParams;
use crate::error::{Error, Result};

/// Two-component field on a periodic lattice. `plus` flows right, `minus`
/// flows left.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldState {
    pub plus: Vec<Complex64>,
    pub minus: Vec<Complex64>,
}

/// Signed displacement `x − center` folded into `[−n/2, n/2)`.
pub(crate) fn wrap_displacement(x: f64, center: f64, n: usize) -> f64 {
    let n = n as f64;
    (x - center + 0.5 * n).rem_euclid(n) - 0.5 * n
}

impl FieldState {
    pub fn zeros(n_sites: usize) -> Self {
        Self {
            plus: vec![Complex64::new(0.0, 0.0); n_sites],
            minus: vec![Complex64::new(0.0, 0.0); n_sites],
        }
    }

    /// Unit amplitude on one site of one component.
    pub fn delta(n_sites: usize, site: usize, right_mover: bool) -> Self {
        let mut s = Self::zeros(n_sites);
        let comp = if right_mover { &mut s.plus } else { &mut s.minus };
        comp[site % n_sites] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_components(plus: Vec<Complex64>, minus: Vec<Complex64>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::Dimension {
                expected: plus.len(),
                found: minus.len(),
            });
        }
        Ok(Self { plus, minus })
    }

    pub fn n_sites(&self) -> usize {
        self.plus.len()
    }

    pub(crate) fn check(&self, params: &LatticeParams) -> Result<()> {
        let n = params.n_sites();
        for found in [self.plus.len(), self.minus.len()] {
            if found != n {
                return Err(Error::Dimension { expected: n, found });
            }
        }
        Ok(())
    }

    /// `|φ⁺(x)|² + |φ⁻(x)|²` per site.
    pub fn density(&self) -> Vec<f64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| p.norm_sqr() + m.norm_sqr())
            .collect()
    }

    /// Single-particle image of the conserved excitation number.
    pub fn total_norm(&self) -> f64 {
        self.density().iter().sum()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.total_norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::UndefinedMoment("cannot normalize a zero or non-finite state"));
        }
        let scale = 1.0 / norm.sqrt();
        for z in self.plus.iter_mut().chain(self.minus.iter_mut()) {
            *z *= scale;
        }
        Ok(self)
    }

    /// Circular mean position in `[0, n_sites)`: the angle of the mean phasor
    /// `Σ p(x) e^{2πix/N}` mapped back to site units.
    pub fn position_mean(&self) -> Result<f64> {
        let n = self.n_sites();
        let density = self.density();
        let norm: f64 = density.iter().sum();
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::UndefinedMoment("position mean of a zero-norm state"));
        }
        let k = 2.0 * PI / n as f64;
        let (mut c, mut s) = (0.0, 0.0);
        for (x, p) in density.iter().enumerate() {
            let (sin, cos) = (k * x as f64).sin_cos();
            c += p * cos;
            s += p * sin;
        }
        if c.hypot(s) <= 1e-14 * norm {
            return Err(Error::UndefinedMoment("mean phasor vanishes on the ring"));
        }
        Ok((s.atan2(c) / k).rem_euclid(n as f64))
    }

    /// Second moment about the circular mean, with displacements folded into
    /// `[−N/2, N/2)`.
    pub fn position_variance(&self) -> Result<f64> {
        let mean = self.position_mean()?;
        let n = self.n_sites();
        let density = self.density();
        let norm: f64 = density.iter().sum();
        let acc: f64 = density
            .iter()
            .enumerate()
            .map(|(x, p)| {
                let d = wrap_displacement(x as f64, mean, n);
                p * d * d
            })
            .sum();
        Ok(acc / norm)
    }

    /// L2 distance `‖self − other‖`.
    pub fn distance(&self, other: &FieldState) -> f64 {
        self.plus
            .iter()
            .zip(&other.plus)
            .chain(self.minus.iter().zip(&other.minus))
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Gaussian-modulated plane wave used as initial condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavepacketSpec {
    /// Site units.
    pub center: f64,
    /// Standard deviation of the probability density, site units.
    pub width: f64,
    /// Carrier wavenumber, inverse length units, in `(−π/a, π/a]`.
    pub k0: f64,
    /// Relative weights on `(φ⁺, φ⁻)`.
    pub spinor_weights: [Complex64; 2],
}

impl WavepacketSpec {
    pub fn new(center: f64, width: f64, k0: f64, spinor_weights: [Complex64; 2]) -> Self {
        Self {
            center,
            width,
            k0,
            spinor_weights,
        }
    }

    /// All amplitude in `φ⁺`.
    pub fn right_mover(center: f64, width: f64, k0: f64) -> Self {
        Self::new(
            center,
            width,
            k0,
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        )
    }
}

/// Builds the normalized packet
/// `φ^±(x) = w_± · exp(−d²/(4σ²)) · e^{i k0 a d}`, `d` the periodic
/// displacement from the center.
pub fn make_wavepacket(spec: &WavepacketSpec, params: &LatticeParams) -> Result<FieldState> {
    if !spec.width.is_finite() || spec.width < 1.0 {
        return Err(Error::arg(format!(
            "wavepacket width must be >= 1 lattice unit, got {}",
            spec.width
        )));
    }
    if !spec.center.is_finite() {
        return Err(Error::arg("wavepacket center must be finite"));
    }
    let ka = spec.k0 * params.chorus();
    if !(ka > -PI && ka <= PI) {
        return Err(Error::arg(format!(
            "k0·a must lie in (-pi, pi], got {ka}"
        )));
    }
    let [wp, wm] = spec.spinor_weights;
    if wp.norm_sqr() + wm.norm_sqr() == 0.0 || !(wp.is_finite() && wm.is_finite()) {
        return Err(Error::arg("spinor weights must be finite and not both zero"));
    }

    let n = params.n_sites();
    let inv = 1.0 / (4.0 * spec.width * spec.width);
    let mut state = FieldState::zeros(n);
    for x in 0..n {
        let d = wrap_displacement(x as f64, spec.center, n);
        let envelope = (-d * d * inv).exp();
        let carrier = Complex64::from_polar(envelope, ka * d);
        state.plus[x] = wp * carrier;
        state.minus[x] = wm * carrier;
    }
    state.normalized()
}
