//! Momentum-space analysis of the automaton.
//!
//! With `ψ(x) = Σ_k e^{ikx} ψ̂(k)` one step multiplies each mode by
//!
//! ```text
//! U(k) = [[ν e^{−ik}, −iμ], [−iμ, ν e^{ik}]]
//! ```
//!
//! (lattice units). `det U = 1` and `tr U = 2ν cos k`, so the eigenvalues are
//! `e^{∓iω(k)}` with `cos ω = ν cos k`. The positive branch `e^{−iω}` carries
//! group velocity `dω/dk = ν sin k / sin ω`, bounded by `ν = √(1−μ²)`.

mod continuum;
mod speed;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::MassCoupling;

pub use continuum::{
    continuum_oracle, convergence_report, error_ratios, ConvergenceRow, ConvergenceSetup,
    ContinuumDirac,
};
pub use speed::{wavepacket_speed, SpeedMeasurement};

/// One-step mode matrix, row-major.
pub fn step_matrix(mass: &MassCoupling, k: f64) -> [[Complex64; 2]; 2] {
    let nu = mass.nu();
    let flip = Complex64::new(0.0, -mass.mu());
    [
        [Complex64::from_polar(nu, -k), flip],
        [flip, Complex64::from_polar(nu, k)],
    ]
}

/// Eigenvalues of a 2×2 complex matrix from its characteristic polynomial.
fn eigenvalues_2x2(m: &[[Complex64; 2]; 2]) -> [Complex64; 2] {
    let half_tr = (m[0][0] + m[1][1]) * 0.5;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (half_tr * half_tr - det).sqrt();
    [half_tr + disc, half_tr - disc]
}

/// Eigenphases `(θ₁, θ₂)` of the numerically diagonalized `U(k)`, in
/// `(−π, π]`; they come in a `±ω` pair.
pub fn eigenphases(mass: &MassCoupling, k: f64) -> [f64; 2] {
    let [a, b] = eigenvalues_2x2(&step_matrix(mass, k));
    [a.arg(), b.arg()]
}

/// Positive quasi-energy `ω(k) ∈ [0, π]`, lattice units.
pub fn omega(mass: &MassCoupling, k: f64) -> f64 {
    let (mu, nu) = (mass.mu(), mass.nu());
    // sin ω = √(1 − ν²cos²k) = √(μ² + ν²sin²k), written without cancellation
    let sin_w = (mu * mu + nu * nu * k.sin().powi(2)).sqrt();
    sin_w.atan2(nu * k.cos())
}

/// Group velocity of the positive branch in units of `c`.
///
/// `sin ω` vanishes only for `μ = 0` at `k ∈ {0, π}`, where the branch
/// `ω = |k|` has a kink with one-sided limits `±1`. There the symmetric
/// limit `0` is returned so that `v(−k) = −v(k)` holds everywhere.
pub fn group_velocity(mass: &MassCoupling, k: f64) -> f64 {
    let (mu, nu) = (mass.mu(), mass.nu());
    let s = k.sin();
    let sin_w = (mu * mu + nu * nu * s * s).sqrt();
    if sin_w == 0.0 {
        return 0.0;
    }
    nu * s / sin_w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Eigenvalue `e^{−iω}`.
    Positive,
    /// Eigenvalue `e^{+iω}`.
    Negative,
}

/// Normalized eigenvector of `U(k)` on the requested branch. At `μ = 0` the
/// positive branch is `φ⁺` for `k ≥ 0` and `φ⁻` for `k < 0`.
pub fn branch_spinor(mass: &MassCoupling, k: f64, branch: Branch) -> [Complex64; 2] {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if mass.mu() == 0.0 {
        let right = (k >= 0.0) == (branch == Branch::Positive);
        return if right { [one, zero] } else { [zero, one] };
    }
    let w = omega(mass, k);
    let lambda = match branch {
        Branch::Positive => Complex64::from_polar(1.0, -w),
        Branch::Negative => Complex64::from_polar(1.0, w),
    };
    let u = step_matrix(mass, k);
    // two null-vector candidates of (U − λ); keep the better conditioned one
    let a = [-u[0][1], u[0][0] - lambda];
    let b = [u[1][1] - lambda, -u[1][0]];
    let na = a[0].norm_sqr() + a[1].norm_sqr();
    let nb = b[0].norm_sqr() + b[1].norm_sqr();
    let (v, n) = if na >= nb { (a, na) } else { (b, nb) };
    let s = 1.0 / n.sqrt();
    [v[0] * s, v[1] * s]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DispersionSample {
    pub k: f64,
    pub omega: f64,
    pub group_velocity: f64,
}

/// Sampled `ω(k)` and group velocity on `k_j = −π + 2π(j+1)/n_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionCurve {
    pub mu: f64,
    pub samples: Vec<DispersionSample>,
}

pub fn dispersion(mass: &MassCoupling, n_k: usize) -> Result<DispersionCurve> {
    if n_k < 8 {
        return Err(Error::arg(format!("n_k must be >= 8, got {n_k}")));
    }
    let samples = (0..n_k)
        .map(|j| {
            let k = -PI + 2.0 * PI * (j + 1) as f64 / n_k as f64;
            let [a, _] = eigenphases(mass, k);
            DispersionSample {
                k,
                omega: a.abs(),
                group_velocity: group_velocity(mass, k),
            }
        })
        .collect();
    Ok(DispersionCurve {
        mu: mass.mu(),
        samples,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x).max(f1).max(f2))
}

/// Renormalized speed `ζ = max_k |v(k)|` in units of `c`.
pub fn zeta(mass: &MassCoupling) -> f64 {
    golden_max(|k| group_velocity(mass, k).abs(), 0.0, PI, 1e-10).1
}

/// Carrier wavenumber at which the group velocity peaks.
pub fn zeta_carrier(mass: &MassCoupling) -> f64 {
    golden_max(|k| group_velocity(mass, k).abs(), 0.0, PI, 1e-10).0
}

/// Vacuum refraction index `n = 1/ζ`.
pub fn refraction_index(mass: &MassCoupling) -> Result<f64> {
    if mass.mu() >= 1.0 {
        return Err(Error::InfiniteIndex);
    }
    Ok(1.0 / zeta(mass))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(mu: f64) -> MassCoupling {
        MassCoupling::new(mu).unwrap()
    }

    #[test]
    fn massless_spectrum_is_linear() {
        let curve = dispersion(&m(0.0), 64).unwrap();
        for s in &curve.samples {
            assert!((s.omega - s.k.abs()).abs() < 1e-14, "k = {}", s.k);
            if s.k != 0.0 {
                assert_eq!(s.group_velocity, s.k.signum());
            } else {
                assert_eq!(s.group_velocity, 0.0);
            }
        }
    }

    #[test]
    fn full_mass_spectrum_is_flat() {
        let curve = dispersion(&m(1.0), 33).unwrap();
        for s in &curve.samples {
            assert!((s.omega - PI / 2.0).abs() < 1e-14);
            assert_eq!(s.group_velocity, 0.0);
        }
    }

    #[test]
    fn dispersion_invariants() {
        for &mu in &[0.0, 0.1, 0.6, 0.93, 1.0] {
            let mass = m(mu);
            let curve = dispersion(&mass, 200).unwrap();
            for s in &curve.samples {
                assert!(((s.omega).cos() - mass.nu() * s.k.cos()).abs() < 1e-10);
                assert!(s.group_velocity.abs() <= 1.0);
                assert!((s.omega - omega(&mass, -s.k)).abs() < 1e-14);
                let [a, b] = eigenphases(&mass, s.k);
                // ±ω up to a full turn (both phases sit at π when ν cos k = −1)
                let pair = Complex64::from_polar(1.0, a + b);
                assert!((pair - 1.0).norm() < 1e-12, "eigenphases not a ± pair at mu {mu}");
            }
        }
        assert!(dispersion(&m(0.5), 7).is_err());
    }

    #[test]
    fn velocity_at_quarter_zone() {
        assert!((group_velocity(&m(0.6), PI / 2.0) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn zeta_endpoints() {
        assert!((zeta(&m(0.0)) - 1.0).abs() < 1e-12);
        assert_eq!(zeta(&m(1.0)), 0.0);
        assert!((zeta(&m(0.6)) - 0.8).abs() < 1e-9);
        assert!((zeta_carrier(&m(0.6)) - PI / 2.0).abs() < 1e-4);
    }

    #[test]
    fn refraction_index_values() {
        assert!((refraction_index(&m(0.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!((refraction_index(&m(0.6)).unwrap() - 1.25).abs() < 1e-9);
        assert_eq!(refraction_index(&m(1.0)), Err(Error::InfiniteIndex));
    }

    #[test]
    fn spinors_are_eigenvectors() {
        for &mu in &[0.0, 0.3, 0.6, 0.99, 1.0] {
            let mass = m(mu);
            for &k in &[-2.5, -0.4, 0.0, 0.1, PI / 2.0, 3.0] {
                for (branch, sign) in [(Branch::Positive, -1.0), (Branch::Negative, 1.0)] {
                    let v = branch_spinor(&mass, k, branch);
                    let u = step_matrix(&mass, k);
                    let lam = Complex64::from_polar(1.0, sign * omega(&mass, k));
                    for r in 0..2 {
                        let uv = u[r][0] * v[0] + u[r][1] * v[1];
                        assert!((uv - lam * v[r]).norm() < 1e-12, "mu {mu} k {k}");
                    }
                    assert!((v[0].norm_sqr() + v[1].norm_sqr() - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}
