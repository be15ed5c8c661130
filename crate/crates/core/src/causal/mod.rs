//! Lorentz kinematics recovered by counting events on a homogeneous causal
//! network.
//!
//! Events sit on the diamond lattice in light-cone coordinates `(u, v)`, with
//! unstretched time `t = u + v` and position `x = u − v`. Every event has a
//! right-moving out-link to `(u+1, v)` and a left-moving out-link to
//! `(u, v+1)`. A boost `β = p/q` slices the network into leaves of constant
//! `q·t − p·x`; see [`Foliation`]. Clocks and rods are pairs of staircase
//! worldlines and all estimates come from integer counts of leaves and wires.

mod boost;
mod counting;
mod foliation;
mod network;

pub use boost::Boost;
pub use counting::{
    clock_events, clock_events_reciprocal, coarse_grain, count_events, required_extent, rod_events,
    ClockSpec, EventCountReport,
};
pub use foliation::{foliate, Foliation};
pub use network::{build_network, CausalNetwork, Event, LinkLabel, Tile};
