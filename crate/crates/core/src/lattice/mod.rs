//! Lattice state, single-step evolution laws and basic observables.

mod evolve;
mod field;
mod params;
mod step;
mod zitter;

pub use evolve::{evolve, Mode, Trajectory};
pub use field::{make_wavepacket, FieldState, WavepacketSpec};
pub use params::{LatticeParams, MassCoupling};
pub use step::{
    fd_reach, step_finite_difference, step_massless, step_massless_inverse, step_unitary,
    translate,
};
pub use zitter::{zitterbewegung_trace, ZitterTrace};
