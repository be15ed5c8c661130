use std::collections::BTreeMap;

use serde::Serialize;

use super::boost::Boost;
use super::network::{CausalNetwork, Event};

/// Partition of a network into ordered leaves of constant `n_v·u + n_u·v`,
/// which is `q·t − p·x` up to a constant factor. Every link strictly
/// increases the leaf index, so each leaf is an antichain and leaves are
/// totally ordered. `β = 0` gives the leaves of constant `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Foliation {
    beta: Boost,
    network: CausalNetwork,
    n_u: i64,
    n_v: i64,
}

pub fn foliate(network: &CausalNetwork, beta: Boost) -> Foliation {
    let (n_u, n_v) = beta.tile_sides();
    Foliation {
        beta,
        network: *network,
        n_u,
        n_v,
    }
}

impl Foliation {
    pub fn beta(&self) -> Boost {
        self.beta
    }

    pub fn network(&self) -> &CausalNetwork {
        &self.network
    }

    pub fn tile_sides(&self) -> (i64, i64) {
        (self.n_u, self.n_v)
    }

    pub fn leaf_index(&self, e: Event) -> i64 {
        self.n_v * e.u as i64 + self.n_u * e.v as i64
    }

    /// Non-empty leaves in increasing order.
    pub fn leaves(&self) -> Vec<(i64, Vec<Event>)> {
        let mut map: BTreeMap<i64, Vec<Event>> = BTreeMap::new();
        for e in self.network.events() {
            map.entry(self.leaf_index(e)).or_default().push(e);
        }
        map.into_iter().collect()
    }

    /// Drop the leaf structure.
    pub fn forget(self) -> CausalNetwork {
        self.network
    }

    /// Drawing coordinates `(X', T')` in which leaves are horizontal lines,
    /// `T' = leaf/√(n_u n_v)`. `stretch` rescales `X'` only; no count depends
    /// on it.
    pub fn embed(&self, e: Event, stretch: f64) -> (f64, f64) {
        let k = self.beta.doppler();
        let (uu, vv) = (e.u as f64 / k, e.v as f64 * k);
        (stretch * (uu - vv), uu + vv)
    }
}
