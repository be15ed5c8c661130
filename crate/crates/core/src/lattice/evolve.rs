use serde::Serialize;

use super::field::FieldState;
use super::params::{LatticeParams, MassCoupling};
use super::step::{step_finite_difference, step_unitary};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Unitary,
    FiniteDifference { substeps: usize },
}

/// Snapshots `(step, state)` in increasing step order.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub snapshots: Vec<(usize, FieldState)>,
}

impl Trajectory {
    pub fn last(&self) -> &FieldState {
        &self.snapshots.last().expect("trajectory always holds the initial state").1
    }
}

/// Runs `n_steps` steps and keeps every `cadence`-th state plus the final
/// one. `n_steps = 0` returns the input alone.
pub fn evolve(
    state: &FieldState,
    params: &LatticeParams,
    mass: &MassCoupling,
    n_steps: usize,
    mode: Mode,
    cadence: usize,
) -> Result<Trajectory> {
    if cadence == 0 {
        return Err(Error::arg("snapshot cadence must be positive"));
    }
    state.check(params)?;
    let mut snapshots = vec![(0, state.clone())];
    let mut cur = state.clone();
    for step in 1..=n_steps {
        cur = match mode {
            Mode::Unitary => step_unitary(&cur, params, mass)?,
            Mode::FiniteDifference { substeps } => {
                step_finite_difference(&cur, params, mass, substeps)?
            }
        };
        if step % cadence == 0 || step == n_steps {
            snapshots.push((step, cur.clone()));
        }
    }
    Ok(Trajectory { snapshots })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_steps_is_identity() {
        let p = LatticeParams::unit(16).unwrap();
        let s = FieldState::delta(16, 4, true);
        let t = evolve(&s, &p, &MassCoupling::new(0.3).unwrap(), 0, Mode::Unitary, 1).unwrap();
        assert_eq!(t.snapshots, vec![(0, s)]);
    }

    #[test]
    fn cadence_keeps_final_state() {
        let p = LatticeParams::unit(16).unwrap();
        let s = FieldState::delta(16, 4, true);
        let t = evolve(&s, &p, &MassCoupling::new(0.3).unwrap(), 7, Mode::Unitary, 3).unwrap();
        let steps: Vec<usize> = t.snapshots.iter().map(|(k, _)| *k).collect();
        assert_eq!(steps, vec![0, 3, 6, 7]);
        assert!(evolve(&s, &p, &MassCoupling::massless(), 3, Mode::Unitary, 0).is_err());
    }

    #[test]
    fn delta_support_stays_in_cone() {
        let n = 64;
        let p = LatticeParams::unit(n).unwrap();
        let x0 = 32usize;
        let steps = 20;
        let s = FieldState::delta(n, x0, true);
        let t = evolve(&s, &p, &MassCoupling::new(0.45).unwrap(), steps, Mode::Unitary, 1).unwrap();
        for (step, st) in &t.snapshots {
            for x in 0..n {
                let dist = (x as i64 - x0 as i64).unsigned_abs() as usize;
                if dist > *step {
                    assert_eq!(st.plus[x].norm(), 0.0);
                    assert_eq!(st.minus[x].norm(), 0.0);
                }
            }
        }
        assert!(t.last().plus[x0 + steps].norm() > 0.0);
    }

    #[test]
    fn evolution_is_deterministic() {
        let p = LatticeParams::unit(32).unwrap();
        let s = FieldState::delta(32, 10, false);
        let m = MassCoupling::new(0.2).unwrap();
        let a = evolve(&s, &p, &m, 25, Mode::FiniteDifference { substeps: 3 }, 5).unwrap();
        let b = evolve(&s, &p, &m, 25, Mode::FiniteDifference { substeps: 3 }, 5).unwrap();
        assert_eq!(a, b);
    }
}
