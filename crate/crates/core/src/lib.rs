//! Discrete information-flow model of the 1+1 dimensional Dirac field.
//!
//! Two counter-propagating amplitudes `φ⁺`, `φ⁻` live on a periodic lattice and
//! are advanced by a quantum cellular automaton. The crate is split into:
//!
//! - [`lattice`]: field state, steppers (massless shift, exactly unitary
//!   automaton, explicit finite-difference integrator), observables and the
//!   Zitterbewegung trace.
//! - [`units`]: closed-form conversions between the dimensionless mass `μ`,
//!   the flip frequency `ω`, mass in kilograms and Compton wavelength.
//! - [`dispersion`]: momentum-space analysis, renormalized speed `ζ(μ)`,
//!   vacuum refraction index, dynamical speed measurement and the continuum
//!   Dirac reference used for convergence studies.
//! - [`causal`]: homogeneous diamond causal networks, boosted foliations and
//!   Lorentz dilation/contraction recovered by counting events.
//! - [`io`]: columnar text serialization of field states.
//!
//! Internally everything runs in lattice units (`a = τ = c = 1`); physical
//! units only appear in [`units`].

pub mod causal;
pub mod dispersion;
pub mod error;
pub mod io;
pub mod lattice;
pub mod signal;
pub mod units;

pub use error::{Error, Result};
pub use num_complex;
pub use lattice::{FieldState, LatticeParams, MassCoupling, WavepacketSpec};
