//! Single-step evolution laws, all in lattice units (`a = τ = 1`).

use num_complex::Complex64;

use super::field::FieldState;
use super::params::{LatticeParams, MassCoupling};
use crate::error::{Error, Result};

const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

/// `φ⁺` moves one site right, `φ⁻` one site left. Pure permutation.
pub fn step_massless(state: &FieldState, params: &LatticeParams) -> Result<FieldState> {
    state.check(params)?;
    let n = params.n_sites();
    let mut out = FieldState::zeros(n);
    for x in 0..n {
        out.plus[(x + 1) % n] = state.plus[x];
        out.minus[(x + n - 1) % n] = state.minus[x];
    }
    Ok(out)
}

/// Inverse permutation of [`step_massless`].
pub fn step_massless_inverse(state: &FieldState, params: &LatticeParams) -> Result<FieldState> {
    state.check(params)?;
    let n = params.n_sites();
    let mut out = FieldState::zeros(n);
    for x in 0..n {
        out.plus[(x + n - 1) % n] = state.plus[x];
        out.minus[(x + 1) % n] = state.minus[x];
    }
    Ok(out)
}

/// Exactly unitary automaton step
///
/// ```text
/// φ⁺'(x) = ν φ⁺(x−1) − iμ φ⁻(x)
/// φ⁻'(x) = −iμ φ⁺(x) + ν φ⁻(x+1)
/// ```
///
/// With `ψ(x) = Σ_k e^{ikx} ψ̂(k)` each mode is multiplied by
/// `[[ν e^{−ik}, −iμ], [−iμ, ν e^{ik}]]`, whose eigenphases satisfy
/// `cos ω = ν cos k`. At `μ = 0` the call is delegated to [`step_massless`],
/// so the two agree bitwise.
pub fn step_unitary(
    state: &FieldState,
    params: &LatticeParams,
    mass: &MassCoupling,
) -> Result<FieldState> {
    if mass.mu() == 0.0 {
        return step_massless(state, params);
    }
    state.check(params)?;
    let n = params.n_sites();
    let nu = mass.nu();
    let flip = MINUS_I * mass.mu();
    let mut out = FieldState::zeros(n);
    for x in 0..n {
        let left = (x + n - 1) % n;
        let right = (x + 1) % n;
        out.plus[x] = state.plus[left] * nu + flip * state.minus[x];
        out.minus[x] = flip * state.plus[x] + state.minus[right] * nu;
    }
    Ok(out)
}

/// Five-point central difference `(f(x−2) − 8f(x−1) + 8f(x+1) − f(x+2))/12`.
fn central_derivative(f: &[Complex64], out: &mut [Complex64]) {
    let n = f.len();
    for x in 0..n {
        let m2 = f[(x + n - 2) % n];
        let m1 = f[(x + n - 1) % n];
        let p1 = f[(x + 1) % n];
        let p2 = f[(x + 2) % n];
        out[x] = (m2 - m1 * 8.0 + p1 * 8.0 - p2) / 12.0;
    }
}

/// Right-hand side of the two-component flow equation
/// `∂ₜφ⁺ = −∂ₓφ⁺ − iμφ⁻`, `∂ₜφ⁻ = ∂ₓφ⁻ − iμφ⁺`.
fn flow_rhs(state: &FieldState, mu: f64, out: &mut FieldState) {
    central_derivative(&state.plus, &mut out.plus);
    central_derivative(&state.minus, &mut out.minus);
    let flip = MINUS_I * mu;
    for x in 0..state.n_sites() {
        let (dp, dm) = (out.plus[x], out.minus[x]);
        out.plus[x] = -dp + flip * state.minus[x];
        out.minus[x] = dm + flip * state.plus[x];
    }
}

fn axpy(base: &FieldState, h: f64, dir: &FieldState) -> FieldState {
    let comb = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        a.iter().zip(b).map(|(a, b)| a + b * h).collect()
    };
    FieldState {
        plus: comb(&base.plus, &dir.plus),
        minus: comb(&base.minus, &dir.minus),
    }
}

/// Literal discretization of the flow equation: five-point spatial stencil
/// and `substeps` classical RK4 stages of length `τ/substeps` per chronon.
/// Not unitary; callers read the drift off [`FieldState::total_norm`].
pub fn step_finite_difference(
    state: &FieldState,
    params: &LatticeParams,
    mass: &MassCoupling,
    substeps: usize,
) -> Result<FieldState> {
    if substeps == 0 {
        return Err(Error::arg("substeps must be positive"));
    }
    state.check(params)?;
    let n = params.n_sites();
    let mu = mass.mu();
    let dt = 1.0 / substeps as f64;
    let mut cur = state.clone();
    let mut k1 = FieldState::zeros(n);
    let mut k2 = FieldState::zeros(n);
    let mut k3 = FieldState::zeros(n);
    let mut k4 = FieldState::zeros(n);
    for _ in 0..substeps {
        flow_rhs(&cur, mu, &mut k1);
        flow_rhs(&axpy(&cur, 0.5 * dt, &k1), mu, &mut k2);
        flow_rhs(&axpy(&cur, 0.5 * dt, &k2), mu, &mut k3);
        flow_rhs(&axpy(&cur, dt, &k3), mu, &mut k4);
        let w = dt / 6.0;
        for x in 0..n {
            cur.plus[x] += (k1.plus[x] + (k2.plus[x] + k3.plus[x]) * 2.0 + k4.plus[x]) * w;
            cur.minus[x] += (k1.minus[x] + (k2.minus[x] + k3.minus[x]) * 2.0 + k4.minus[x]) * w;
        }
    }
    Ok(cur)
}

/// Sites reachable in one chronon by [`step_finite_difference`]: four
/// stencil applications of radius 2 per substep.
pub fn fd_reach(substeps: usize) -> usize {
    8 * substeps
}

/// Cyclic translation by `shift` sites (positive = rightwards).
pub fn translate(state: &FieldState, shift: i64) -> FieldState {
    let n = state.n_sites();
    let s = shift.rem_euclid(n as i64) as usize;
    let mut out = FieldState::zeros(n);
    for x in 0..n {
        out.plus[(x + s) % n] = state.plus[x];
        out.minus[(x + s) % n] = state.minus[x];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{make_wavepacket, WavepacketSpec};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(n: usize) -> LatticeParams {
        LatticeParams::unit(n).unwrap()
    }

    #[test]
    fn massless_shifts_right_mover() {
        let p = params(16);
        let s = step_massless(&FieldState::delta(16, 5, true), &p).unwrap();
        assert_eq!(s, FieldState::delta(16, 6, true));
    }

    #[test]
    fn massless_shifts_left_mover_with_wrap() {
        let p = params(16);
        let mut s = FieldState::delta(16, 5, false);
        for _ in 0..3 {
            s = step_massless(&s, &p).unwrap();
        }
        assert_eq!(s, FieldState::delta(16, 2, false));
        let mut s = FieldState::delta(16, 1, false);
        for _ in 0..3 {
            s = step_massless(&s, &p).unwrap();
        }
        assert_eq!(s, FieldState::delta(16, 14, false));
    }

    #[test]
    fn dimension_mismatch_is_structural_error() {
        let p = params(16);
        let s = FieldState::zeros(8);
        assert!(matches!(
            step_massless(&s, &p),
            Err(Error::Dimension { expected: 16, found: 8 })
        ));
        let m = MassCoupling::new(0.5).unwrap();
        assert!(step_unitary(&s, &p, &m).is_err());
        assert!(step_finite_difference(&s, &p, &m, 4).is_err());
    }

    #[test]
    fn full_mass_swaps_with_minus_i() {
        let p = params(8);
        let m = MassCoupling::new(1.0).unwrap();
        let mut s = FieldState::zeros(8);
        s.plus[3] = c(0.6, 0.0);
        s.minus[3] = c(0.0, 0.8);
        let out = step_unitary(&s, &p, &m).unwrap();
        assert_eq!(out.plus[3], c(0.8, 0.0));
        assert_eq!(out.minus[3], c(0.0, -0.6));
        assert_eq!(out.density(), s.density());
    }

    #[test]
    fn full_mass_stops_plane_waves() {
        let p = params(16);
        let m = MassCoupling::new(1.0).unwrap();
        let k = 2.0 * std::f64::consts::PI * 3.0 / 16.0;
        let wave: Vec<Complex64> = (0..16).map(|x| Complex64::from_polar(0.25, k * x as f64)).collect();
        let s = FieldState::from_components(wave.clone(), vec![c(0.0, 0.0); 16]).unwrap();
        let out = step_unitary(&s, &p, &m).unwrap();
        assert!(out.plus.iter().all(|z| z.norm() == 0.0));
        for (got, w) in out.minus.iter().zip(&wave) {
            assert_eq!(*got, w * c(0.0, -1.0));
        }
    }

    #[test]
    fn unitary_step_preserves_norm() {
        let p = params(64);
        let m = MassCoupling::new(0.37).unwrap();
        let spec = WavepacketSpec::new(20.0, 3.0, 0.7, [c(1.0, 0.2), c(-0.4, 0.9)]);
        let mut s = make_wavepacket(&spec, &p).unwrap();
        for _ in 0..100 {
            s = step_unitary(&s, &p, &m).unwrap();
            assert!((s.total_norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn finite_difference_rejects_zero_substeps() {
        let p = params(16);
        let s = FieldState::delta(16, 3, true);
        let m = MassCoupling::new(0.1).unwrap();
        assert!(matches!(
            step_finite_difference(&s, &p, &m, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn finite_difference_massless_delta_stays_decoupled_and_local() {
        let n = 256;
        let p = params(n);
        let s = FieldState::delta(n, 128, true);
        let out = step_finite_difference(&s, &p, &MassCoupling::massless(), 4).unwrap();
        assert!(out.minus.iter().all(|z| *z == c(0.0, 0.0)));
        let reach = fd_reach(4);
        for x in 0..n {
            if (x as i64 - 128).unsigned_abs() as usize > reach {
                assert_eq!(out.plus[x], c(0.0, 0.0), "site {x}");
            }
        }
        // a delta excites every wavenumber; the stencil's group velocities average
        // to zero, so the centroid stays at the start instead of shifting by one
        let mean = out.position_mean().unwrap();
        assert!((mean - 128.0).abs() < 1e-3, "mean {mean}");
    }

    #[test]
    fn finite_difference_smooth_massless_matches_shift() {
        let p = params(256);
        let s = make_wavepacket(&WavepacketSpec::right_mover(100.0, 12.0, 0.0), &p).unwrap();
        let fd = step_finite_difference(&s, &p, &MassCoupling::massless(), 16).unwrap();
        let exact = step_massless(&s, &p).unwrap();
        assert!(fd.distance(&exact) < 1e-5, "gap {}", fd.distance(&exact));
    }

    #[test]
    fn translate_roundtrip() {
        let p = params(32);
        let s = make_wavepacket(&WavepacketSpec::right_mover(7.0, 2.0, 0.4), &p).unwrap();
        assert_eq!(translate(&translate(&s, 11), -11), s);
        assert_eq!(translate(&s, 32), s);
    }
}
