use serde::Serialize;

use super::field::{make_wavepacket, WavepacketSpec};
use super::params::{LatticeParams, MassCoupling};
use super::step::step_unitary;
use crate::dispersion::omega;
use crate::error::Result;
use crate::signal::{detrend, dominant_angular_frequency, fit_line, unwrap_ring};

/// `⟨x⟩(t)` of a packet under the unitary automaton, with both candidate
/// reference frequencies for the trembling motion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZitterTrace {
    /// `(t, ⟨x⟩)`, time in chronon units of `params`, position in sites,
    /// unwrapped across the periodic boundary.
    pub samples: Vec<(f64, f64)>,
    /// `2ω(0)/τ` with `cos(ω(0)τ) = ν`: interference of the two branches at rest.
    pub predicted_rest: f64,
    /// `2ω(k₀)/τ` at the packet carrier.
    pub predicted_carrier: f64,
    pub chronon: f64,
}

pub fn zitterbewegung_trace(
    spec: &WavepacketSpec,
    params: &LatticeParams,
    mass: &MassCoupling,
    n_steps: usize,
) -> Result<ZitterTrace> {
    let mut state = make_wavepacket(spec, params)?;
    let tau = params.chronon();
    let mut means = Vec::with_capacity(n_steps + 1);
    for step in 0..=n_steps {
        if step > 0 {
            state = step_unitary(&state, params, mass)?;
        }
        means.push(state.position_mean()?);
    }
    let path = unwrap_ring(&means, params.n_sites() as f64);
    let samples = path
        .into_iter()
        .enumerate()
        .map(|(s, x)| (s as f64 * tau, x))
        .collect();
    Ok(ZitterTrace {
        samples,
        predicted_rest: 2.0 * omega(mass, 0.0) / tau,
        predicted_carrier: 2.0 * omega(mass, spec.k0 * params.chorus()) / tau,
        chronon: tau,
    })
}

impl ZitterTrace {
    fn split(&self) -> (Vec<f64>, Vec<f64>) {
        self.samples.iter().copied().unzip()
    }

    /// Least-squares drift velocity, sites per unit time.
    pub fn drift(&self) -> Result<f64> {
        let (t, x) = self.split();
        Ok(fit_line(&t, &x)?.1)
    }

    /// `⟨x⟩(t)` minus its least-squares line.
    pub fn residual(&self) -> Result<Vec<f64>> {
        let (t, x) = self.split();
        detrend(&t, &x)
    }

    /// Angular frequency of the strongest line in the residual, inverse time
    /// units. Frequencies below `floor` are ignored.
    pub fn measured_frequency(&self, floor: f64) -> Result<f64> {
        dominant_angular_frequency(&self.residual()?, self.chronon, floor)
    }
}
