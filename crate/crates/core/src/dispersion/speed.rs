use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{make_wavepacket, step_unitary, LatticeParams, MassCoupling, WavepacketSpec};
use crate::signal::{fit_line, unwrap_ring};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedMeasurement {
    /// Fitted slope of `⟨x⟩(t)` in units of `c`.
    pub speed: f64,
    /// Largest position variance seen during the run, sites².
    pub max_variance: f64,
    pub burn_in: usize,
}

/// Evolves the packet with the unitary automaton and fits `⟨x⟩(t)` by least
/// squares after dropping the first `burn_in` steps.
pub fn wavepacket_speed(
    spec: &WavepacketSpec,
    params: &LatticeParams,
    mass: &MassCoupling,
    n_steps: usize,
    burn_in: usize,
) -> Result<SpeedMeasurement> {
    if spec.width < 8.0 {
        return Err(Error::arg(format!(
            "speed measurement needs width >= 8 sites, got {}",
            spec.width
        )));
    }
    if n_steps < burn_in + 2 {
        return Err(Error::arg("need at least two samples after burn-in"));
    }
    let n = params.n_sites();
    let wrap_limit = (n * n) as f64 / 16.0;
    let mut state = make_wavepacket(spec, params)?;
    let mut means = Vec::with_capacity(n_steps + 1);
    let mut max_variance = 0.0f64;
    for step in 0..=n_steps {
        if step > 0 {
            state = step_unitary(&state, params, mass)?;
        }
        let var = state.position_variance()?;
        if var >= wrap_limit {
            return Err(Error::MeasurementInvalid(format!(
                "packet variance {var:.3} reached n_sites²/16 = {wrap_limit} at step {step}"
            )));
        }
        max_variance = max_variance.max(var);
        means.push(state.position_mean()?);
    }
    let path = unwrap_ring(&means, n as f64);
    let t: Vec<f64> = (burn_in..=n_steps).map(|s| s as f64).collect();
    let (_, slope) = fit_line(&t, &path[burn_in..])?;
    Ok(SpeedMeasurement {
        speed: slope,
        max_variance,
        burn_in,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::dispersion::{branch_spinor, group_velocity, Branch};

    #[test]
    fn massless_right_mover_moves_at_c() {
        let p = LatticeParams::unit(256).unwrap();
        let spec = WavepacketSpec::right_mover(64.0, 8.0, 0.0);
        let m = wavepacket_speed(&spec, &p, &MassCoupling::massless(), 100, 0).unwrap();
        assert!((m.speed - 1.0).abs() < 1e-12, "speed {}", m.speed);
    }

    #[test]
    fn slow_carrier_is_slower_than_zeta() {
        let mass = MassCoupling::new(0.6).unwrap();
        let p = LatticeParams::unit(1024).unwrap();
        let k0 = 0.1;
        let spec = WavepacketSpec::new(200.0, 16.0, k0, branch_spinor(&mass, k0, Branch::Positive));
        let m = wavepacket_speed(&spec, &p, &mass, 300, 20).unwrap();
        assert!(m.speed < 0.8);
        let analytic = group_velocity(&mass, k0);
        assert!((m.speed - analytic).abs() < 0.05 * 0.8, "{} vs {analytic}", m.speed);
    }

    #[test]
    fn rejects_narrow_packets_and_flags_wrap() {
        let mass = MassCoupling::new(0.2).unwrap();
        let p = LatticeParams::unit(64).unwrap();
        let narrow = WavepacketSpec::right_mover(20.0, 4.0, 0.0);
        assert!(matches!(
            wavepacket_speed(&narrow, &p, &mass, 10, 0),
            Err(Error::InvalidArgument(_))
        ));
        let wide = WavepacketSpec::new(32.0, 8.0, PI / 2.0, [num_complex::Complex64::new(1.0, 0.0); 2]);
        // two branches split and fill the ring long before 400 steps
        assert!(matches!(
            wavepacket_speed(&wide, &p, &mass, 400, 0),
            Err(Error::MeasurementInvalid(_))
        ));
    }
}
