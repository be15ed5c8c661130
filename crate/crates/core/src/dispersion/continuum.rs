//! Continuum two-component Dirac reference and lattice refinement study.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    make_wavepacket, step_unitary, FieldState, LatticeParams, MassCoupling, WavepacketSpec,
};

/// Continuum equation `∂ₜφ⁺ = −v∂ₓφ⁺ − iωφ⁻`, `∂ₜφ⁻ = v∂ₓφ⁻ − iωφ⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuumDirac {
    /// Flip frequency `ω`, inverse time units.
    pub omega: f64,
    /// Propagation speed `ζc`, length over time units.
    pub speed: f64,
}

/// Exact spectral solution at time `t` for the packet sampled on `params`.
///
/// Each Fourier mode `k` evolves with `exp(−iHt)`, `H = [[vk, ω], [ω, −vk]]`,
/// i.e. `cos(Et) − i sin(Et)/E · H` with `E = √(v²k² + ω²)`.
pub fn continuum_oracle(
    spec: &WavepacketSpec,
    params: &LatticeParams,
    dirac: &ContinuumDirac,
    t: f64,
) -> Result<FieldState> {
    let initial = make_wavepacket(spec, params)?;
    if t == 0.0 {
        return Ok(initial);
    }
    evolve_spectral(&initial, params, dirac, t)
}

pub(crate) fn evolve_spectral(
    state: &FieldState,
    params: &LatticeParams,
    dirac: &ContinuumDirac,
    t: f64,
) -> Result<FieldState> {
    state.check(params)?;
    let n = params.n_sites();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);
    let mut plus = state.plus.clone();
    let mut minus = state.minus.clone();
    forward.process(&mut plus);
    forward.process(&mut minus);

    let dk = 2.0 * PI / (n as f64 * params.chorus());
    for m in 0..n {
        let signed = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
        let vk = dirac.speed * signed * dk;
        let e = vk.hypot(dirac.omega);
        let (s, c) = (e * t).sin_cos();
        // sin(Et)/E, finite as E → 0
        let sinc = if e == 0.0 { t } else { s / e };
        let (p, q) = (plus[m], minus[m]);
        let i_sinc = Complex64::new(0.0, sinc);
        plus[m] = p * c - i_sinc * (p * vk + q * dirac.omega);
        minus[m] = q * c - i_sinc * (p * dirac.omega - q * vk);
    }

    inverse.process(&mut plus);
    inverse.process(&mut minus);
    let scale = 1.0 / n as f64;
    for z in plus.iter_mut().chain(minus.iter_mut()) {
        *z *= scale;
    }
    FieldState::from_components(plus, minus)
}

/// The same physical packet, to be re-expressed on refined lattices. Lengths
/// are physical, `c = 1`, so `τ = a` at every level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceSetup {
    pub domain_length: f64,
    pub center: f64,
    pub width: f64,
    pub k0: f64,
    pub spinor_weights: [Complex64; 2],
    /// Chorus of the coarsest lattice.
    pub coarse_chorus: f64,
    /// Mass coupling on the coarsest lattice; halves with every refinement so
    /// the physical flip frequency `ω = μ/τ` stays fixed.
    pub coarse_mass: MassCoupling,
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub a: f64,
    pub n_sites: usize,
    pub mu: f64,
    pub steps: usize,
    /// L2 distance between automaton and continuum reference.
    pub error: f64,
}

fn integral(x: f64, what: &str) -> Result<usize> {
    let r = x.round();
    if (x - r).abs() > 1e-9 * x.abs().max(1.0) || r < 0.0 {
        return Err(Error::arg(format!("{what} = {x} is not a whole number")));
    }
    Ok(r as usize)
}

/// Halves the chorus `levels − 1` times and reports the automaton's L2
/// discrepancy from the continuum solution at fixed physical time.
pub fn convergence_report(setup: &ConvergenceSetup, levels: usize) -> Result<Vec<ConvergenceRow>> {
    if levels < 3 {
        return Err(Error::arg(format!("need >= 3 refinement levels, got {levels}")));
    }
    let dirac = ContinuumDirac {
        omega: setup.coarse_mass.mu() / setup.coarse_chorus,
        speed: 1.0,
    };
    let mut rows = Vec::with_capacity(levels);
    for level in 0..levels {
        let a = setup.coarse_chorus / f64::powi(2.0, level as i32);
        let n_sites = integral(setup.domain_length / a, "domain length / a")?;
        let params = LatticeParams::new(n_sites, a, a)?;
        let mass = MassCoupling::new(dirac.omega * a)?;
        let steps = integral(setup.time / a, "time / tau")?;
        let spec = WavepacketSpec::new(
            setup.center / a,
            setup.width / a,
            setup.k0,
            setup.spinor_weights,
        );
        let mut state = make_wavepacket(&spec, &params)?;
        for _ in 0..steps {
            state = step_unitary(&state, &params, &mass)?;
        }
        let reference = continuum_oracle(&spec, &params, &dirac, setup.time)?;
        rows.push(ConvergenceRow {
            a,
            n_sites,
            mu: mass.mu(),
            steps,
            error: state.distance(&reference),
        });
    }
    Ok(rows)
}

/// `error(a) / error(a/2)` for consecutive rows.
pub fn error_ratios(rows: &[ConvergenceRow]) -> Vec<f64> {
    rows.windows(2).map(|w| w[0].error / w[1].error).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::step_massless;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn oracle_at_zero_time_is_input() {
        let p = LatticeParams::unit(64).unwrap();
        let spec = WavepacketSpec::new(30.0, 4.0, 0.3, [c(1.0, 0.0), c(0.0, 0.5)]);
        let d = ContinuumDirac { omega: 0.2, speed: 1.0 };
        assert_eq!(continuum_oracle(&spec, &p, &d, 0.0).unwrap(), make_wavepacket(&spec, &p).unwrap());
    }

    #[test]
    fn oracle_without_mass_translates_rigidly() {
        let p = LatticeParams::unit(128).unwrap();
        let spec = WavepacketSpec::new(40.0, 5.0, 0.2, [c(0.6, 0.0), c(0.0, 0.8)]);
        let d = ContinuumDirac { omega: 0.0, speed: 1.0 };
        let out = continuum_oracle(&spec, &p, &d, 9.0).unwrap();
        let mut shifted = make_wavepacket(&spec, &p).unwrap();
        for _ in 0..9 {
            shifted = step_massless(&shifted, &p).unwrap();
        }
        assert!(out.distance(&shifted) < 1e-12);

        // slower speed: translate by a non-integer amount, compare moments
        let slow = ContinuumDirac { omega: 0.0, speed: 0.5 };
        let spec_r = WavepacketSpec::right_mover(40.0, 5.0, 0.0);
        let out = continuum_oracle(&spec_r, &p, &slow, 9.0).unwrap();
        assert!((out.position_mean().unwrap() - 44.5).abs() < 1e-9);
    }

    #[test]
    fn oracle_is_unitary() {
        let p = LatticeParams::unit(96).unwrap();
        let spec = WavepacketSpec::new(50.0, 3.0, -0.7, [c(1.0, 0.3), c(0.2, -0.9)]);
        let d = ContinuumDirac { omega: 0.37, speed: 0.9 };
        for &t in &[0.5, 3.0, 17.25, 400.0] {
            let s = continuum_oracle(&spec, &p, &d, t).unwrap();
            assert!((s.total_norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn report_needs_three_levels_and_zero_time_gives_zero_error() {
        let setup = ConvergenceSetup {
            domain_length: 128.0,
            center: 64.0,
            width: 6.0,
            k0: 0.1,
            spinor_weights: [c(1.0, 0.0), c(0.0, 0.0)],
            coarse_chorus: 1.0,
            coarse_mass: MassCoupling::new(0.2).unwrap(),
            time: 0.0,
        };
        assert!(convergence_report(&setup, 2).is_err());
        let rows = convergence_report(&setup, 3).unwrap();
        assert!(rows.iter().all(|r| r.error == 0.0));
        assert_eq!(rows.iter().map(|r| r.n_sites).collect::<Vec<_>>(), vec![128, 256, 512]);
    }
}
