use serde::Serialize;

use crate::error::{Error, Result};

/// Event at light-cone coordinates `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Event {
    pub u: usize,
    pub v: usize,
}

impl Event {
    pub fn new(u: usize, v: usize) -> Self {
        Self { u, v }
    }

    /// Unstretched time `u + v`.
    pub fn t(&self) -> i64 {
        (self.u + self.v) as i64
    }

    /// Unstretched position `u − v`.
    pub fn x(&self) -> i64 {
        self.u as i64 - self.v as i64
    }
}

/// Direction of a causal link (wire).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LinkLabel {
    /// `(u, v) → (u+1, v)`.
    Right,
    /// `(u, v) → (u, v+1)`.
    Left,
}

/// The repeated unit: one event (gate) with a left and a right in-link and a
/// left and a right out-link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tile {
    pub in_links: [LinkLabel; 2],
    pub out_links: [LinkLabel; 2],
}

pub const DIAMOND_TILE: Tile = Tile {
    in_links: [LinkLabel::Right, LinkLabel::Left],
    out_links: [LinkLabel::Right, LinkLabel::Left],
};

/// Finite patch `rows × cols` (`u < rows`, `v < cols`) of the periodic
/// diamond network. The link rule is the same at every event, so the patch
/// is fully described by its extent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CausalNetwork {
    rows: usize,
    cols: usize,
    tile: Tile,
}

pub fn build_network(rows: usize, cols: usize) -> Result<CausalNetwork> {
    if rows < 2 || cols < 2 {
        return Err(Error::arg(format!(
            "network extent must be at least 2x2, got {rows}x{cols}"
        )));
    }
    Ok(CausalNetwork {
        rows,
        cols,
        tile: DIAMOND_TILE,
    })
}

impl CausalNetwork {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tile(&self) -> Tile {
        self.tile
    }

    pub fn n_events(&self) -> usize {
        self.rows * self.cols
    }

    pub fn contains(&self, e: Event) -> bool {
        e.u < self.rows && e.v < self.cols
    }

    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        (0..self.rows).flat_map(move |u| (0..self.cols).map(move |v| Event::new(u, v)))
    }

    pub fn successor(&self, e: Event, label: LinkLabel) -> Option<Event> {
        let next = match label {
            LinkLabel::Right => Event::new(e.u + 1, e.v),
            LinkLabel::Left => Event::new(e.u, e.v + 1),
        };
        self.contains(next).then_some(next)
    }

    pub fn predecessor(&self, e: Event, label: LinkLabel) -> Option<Event> {
        let prev = match label {
            LinkLabel::Right => Event::new(e.u.checked_sub(1)?, e.v),
            LinkLabel::Left => Event::new(e.u, e.v.checked_sub(1)?),
        };
        self.contains(prev).then_some(prev)
    }

    pub fn successors(&self, e: Event) -> Vec<(LinkLabel, Event)> {
        self.tile
            .out_links
            .iter()
            .filter_map(|&l| self.successor(e, l).map(|n| (l, n)))
            .collect()
    }

    pub fn predecessors(&self, e: Event) -> Vec<(LinkLabel, Event)> {
        self.tile
            .in_links
            .iter()
            .filter_map(|&l| self.predecessor(e, l).map(|n| (l, n)))
            .collect()
    }

    /// All four links present.
    pub fn is_interior(&self, e: Event) -> bool {
        self.contains(e) && e.u >= 1 && e.v >= 1 && e.u + 1 < self.rows && e.v + 1 < self.cols
    }

    /// Labelled links `(from, label, to)`.
    pub fn links(&self) -> Vec<(Event, LinkLabel, Event)> {
        self.events()
            .flat_map(|e| self.successors(e).into_iter().map(move |(l, n)| (e, l, n)))
            .collect()
    }

    /// Kahn's algorithm; `None` if the link relation had a cycle.
    pub fn topological_order(&self) -> Option<Vec<Event>> {
        let idx = |e: Event| e.u * self.cols + e.v;
        let mut indegree: Vec<usize> = self.events().map(|e| self.predecessors(e).len()).collect();
        let mut ready: Vec<Event> = self.events().filter(|&e| indegree[idx(e)] == 0).collect();
        let mut order = Vec::with_capacity(self.n_events());
        while let Some(e) = ready.pop() {
            order.push(e);
            for (_, n) in self.successors(e) {
                indegree[idx(n)] -= 1;
                if indegree[idx(n)] == 0 {
                    ready.push(n);
                }
            }
        }
        (order.len() == self.n_events()).then_some(order)
    }
}
