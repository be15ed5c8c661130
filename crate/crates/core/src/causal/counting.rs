use serde::Serialize;

use super::boost::Boost;
use super::foliation::Foliation;
use super::network::CausalNetwork;
use crate::error::{Error, Result};

/// Two-mirror light clock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClockSpec {
    mirror_separation: u64,
    n_ticks: u64,
    phase: u64,
}

impl ClockSpec {
    pub fn new(mirror_separation: u64, n_ticks: u64) -> Result<Self> {
        if mirror_separation == 0 {
            return Err(Error::arg("mirror separation must be positive"));
        }
        if n_ticks == 0 {
            return Err(Error::arg("n_ticks must be positive"));
        }
        Ok(Self {
            mirror_separation,
            n_ticks,
            phase: 0,
        })
    }

    /// Start the first tic-tac `phase` events further along the first
    /// mirror's staircase.
    pub fn with_phase(mut self, phase: u64) -> Self {
        self.phase = phase;
        self
    }

    pub fn mirror_separation(&self) -> u64 {
        self.mirror_separation
    }

    pub fn n_ticks(&self) -> u64 {
        self.n_ticks
    }

    pub fn phase(&self) -> u64 {
        self.phase
    }
}

/// Result of counting a clock (and the rod formed by its mirrors).
///
/// `raw_count` is the number of observer leaves crossed over all `n_ticks`
/// tic-tacs, in units of `1/leaf_scale` of the observer's time, so
/// `dilation_estimate = raw_count / (n_ticks · 2d · leaf_scale)`.
/// `wire_count` is the number of wires crossed by the observer leaves between
/// the mirrors, summed over the tick starts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventCountReport {
    pub beta: Boost,
    pub observer: Boost,
    pub d: u64,
    pub n_ticks: u64,
    pub phase: u64,
    pub raw_count: u64,
    pub leaf_scale: f64,
    pub wire_count: u64,
    pub dilation_estimate: f64,
    pub contraction_estimate: f64,
    pub coarse_grain_factor: u64,
}

/// Staircase worldline closest to a line of velocity `β`, with tile sides
/// `(n_u, n_v)`. `err = n_v·Δu − n_u·Δv` is the signed offset from the ideal
/// line through the anchor, in units of `1/√(n_u²+n_v²)` of a link.
struct Worldline {
    n_u: i64,
    n_v: i64,
    events: Vec<(i64, i64, i64)>,
    anchor: usize,
}

impl Worldline {
    fn new(anchor: (i64, i64), beta: Boost, periods_back: i64) -> Self {
        let (n_u, n_v) = beta.tile_sides();
        let start = (anchor.0 - periods_back * n_u, anchor.1 - periods_back * n_v);
        let mut w = Self {
            n_u,
            n_v,
            events: vec![(start.0, start.1, 0)],
            anchor: (periods_back * (n_u + n_v)) as usize,
        };
        debug_assert_eq!(&w.get(w.anchor)[..2], &[anchor.0, anchor.1]);
        w
    }

    fn step(&mut self) {
        let &(u, v, e) = self.events.last().unwrap();
        let (eu, ev) = (e + self.n_v, e - self.n_u);
        // ties go to the step with the smaller comoving leaf increment
        let take_u = eu.abs() < ev.abs() || (eu.abs() == ev.abs() && self.n_v <= self.n_u);
        self.events
            .push(if take_u { (u + 1, v, eu) } else { (u, v + 1, ev) });
    }

    fn get(&mut self, i: usize) -> [i64; 3] {
        while self.events.len() <= i {
            self.step();
        }
        let (u, v, e) = self.events[i];
        [u, v, e]
    }

    /// Where a light ray at fixed coordinate `axis` (0 = u, 1 = v) meets this
    /// worldline. Among the events with that coordinate and the other one at
    /// least `min_other`, the first one on or beyond the ideal line
    /// (`side · err ≥ 0`), or the last one if the whole run falls short.
    /// Starts scanning at `from`.
    fn reflect(&mut self, from: usize, axis: usize, fixed: i64, min_other: i64, side: i64) -> Option<usize> {
        let other = 1 - axis;
        let mut i = from;
        loop {
            let ev = self.get(i);
            if ev[axis] > fixed {
                return None;
            }
            if ev[axis] == fixed && ev[other] >= min_other {
                break;
            }
            i += 1;
        }
        loop {
            if side * self.get(i)[2] >= 0 || self.get(i + 1)[axis] != fixed {
                return Some(i);
            }
            i += 1;
        }
    }

    fn bbox(&self) -> (i64, i64, i64, i64) {
        self.events.iter().fold(
            (i64::MAX, i64::MIN, i64::MAX, i64::MIN),
            |(a, b, c, d), &(u, v, _)| (a.min(u), b.max(u), c.min(v), d.max(v)),
        )
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Integer offset `(Δu, Δv)` of the second mirror. Its distance from the
/// first mirror's ideal line, `n_v·Δu − n_u·Δv`, is `d·√(n_u n_v)` rounded
/// up, which is proper length `d` whenever `n_u n_v` is a
/// square; among those offsets the one closest to the clock's simultaneity
/// (earlier on ties).
fn mirror_offset(beta: Boost, d: u64) -> (i64, i64) {
    let (n_u, n_v) = beta.tile_sides();
    let target = (d as f64 * beta.leaf_scale() - 1e-9).ceil() as i64;
    let (_, x, y) = ext_gcd(n_v, n_u);
    let (du0, dv0) = (x * target, -y * target);
    // shifting by (n_u, n_v) keeps the distance and moves the proper time by
    // 2·n_u·n_v
    let time = |s: i64| n_v * (du0 + s * n_u) + n_u * (dv0 + s * n_v);
    let step = 2 * n_u * n_v;
    let s0 = (-(time(0) as f64) / step as f64).floor() as i64;
    let s = if time(s0 + 1).abs() < time(s0).abs() { s0 + 1 } else { s0 };
    (du0 + s * n_u, dv0 + s * n_v)
}

struct Counts {
    raw: i64,
    wires: i64,
    length_sum: f64,
    samples: u64,
    extent: (usize, usize),
}

/// Tic-tac simulation on the unbounded lattice. The network is homogeneous,
/// so the counts only depend on relative positions; the extent of the patch
/// actually visited is returned for the fit check.
fn simulate(observer: Boost, clock_beta: Boost, d: u64, n_ticks: u64, phase: u64) -> Counts {
    let (o_u, o_v) = observer.tile_sides();
    let leaf = |u: i64, v: i64| o_v * u + o_u * v;
    let scale = observer.leaf_scale();
    let (c_u, c_v) = clock_beta.tile_sides();

    let offset = mirror_offset(clock_beta, d);
    let period_leaves = leaf(c_u, c_v);
    let lead = leaf(offset.0, offset.1).max(0);
    let mut a = Worldline::new((0, 0), clock_beta, 1);
    let mut b = Worldline::new(offset, clock_beta, lead / period_leaves + 2);

    let mut ia = a.anchor + phase as usize;
    let mut ib = 0;
    let mut counts = Counts {
        raw: 0,
        wires: 0,
        length_sum: 0.0,
        samples: 0,
        extent: (0, 0),
    };
    let rod_sample = |a_ev: [i64; 3], b: &mut Worldline, counts: &mut Counts| {
        let l0 = leaf(a_ev[0], a_ev[1]);
        while {
            let last = b.get(b.events.len() - 1);
            leaf(last[0], last[1]) < l0
        } {
            b.step();
        }
        let j = b.events.partition_point(|&(u, v, _)| leaf(u, v) < l0);
        let mut best = j;
        if j > 0 {
            let (u0, v0, _) = b.events[j - 1];
            let (u1, v1, _) = b.events[j];
            if (l0 - leaf(u0, v0)) <= (leaf(u1, v1) - l0) {
                best = j - 1;
            }
        }
        let (ub, vb, _) = b.events[best];
        let (du, dv) = ((ub - a_ev[0]).abs(), (vb - a_ev[1]).abs());
        counts.wires += du + dv;
        counts.length_sum += (du as f64 / o_u as f64 + dv as f64 / o_v as f64) * scale;
        counts.samples += 1;
    };

    // one rod sample per staircase event over a full period, so that the
    // parity of the zigzag averages out
    let period = (c_u + c_v) as usize;
    let sample_period = |ia: usize, a: &mut Worldline, b: &mut Worldline, counts: &mut Counts| {
        for j in 0..period {
            let ev = a.get(ia + j);
            rod_sample(ev, b, counts);
        }
    };
    if n_ticks == 0 {
        sample_period(ia, &mut a, &mut b, &mut counts);
    }
    for _ in 0..n_ticks {
        let start = a.get(ia);
        sample_period(ia, &mut a, &mut b, &mut counts);
        // right-moving leg at fixed v, then left-moving leg at fixed u
        ib = b
            .reflect(ib, 1, start[1], start[0], 1)
            .expect("second mirror lies to the right");
        let hit = b.get(ib);
        ia = a
            .reflect(ia, 0, hit[0], hit[1], -1)
            .expect("first mirror lies to the left");
        let end = a.get(ia);
        counts.raw += leaf(end[0], end[1]) - leaf(start[0], start[1]);
    }

    let (ba, bb) = (a.bbox(), b.bbox());
    counts.extent = (
        (ba.1.max(bb.1) - ba.0.min(bb.0) + 1) as usize,
        (ba.3.max(bb.3) - ba.2.min(bb.2) + 1) as usize,
    );
    counts
}

fn check_fit(net: &CausalNetwork, extent: (usize, usize)) -> Result<()> {
    if net.rows() < extent.0 || net.cols() < extent.1 {
        return Err(Error::Geometry {
            rows: net.rows(),
            cols: net.cols(),
            required_rows: extent.0,
            required_cols: extent.1,
        });
    }
    Ok(())
}

fn report(observer: Boost, clock_beta: Boost, clock: &ClockSpec, counts: &Counts) -> EventCountReport {
    let d = clock.mirror_separation;
    let scale = observer.leaf_scale();
    EventCountReport {
        beta: clock_beta,
        observer,
        d,
        n_ticks: clock.n_ticks,
        phase: clock.phase,
        raw_count: counts.raw as u64,
        leaf_scale: scale,
        wire_count: counts.wires as u64,
        dilation_estimate: counts.raw as f64 / (clock.n_ticks as f64 * 2.0 * d as f64 * scale),
        contraction_estimate: counts.length_sum / (counts.samples as f64 * d as f64),
        coarse_grain_factor: 1,
    }
}

/// Count a clock moving at `clock_beta` with the leaves of `observer`.
pub fn count_events(
    net: &CausalNetwork,
    observer: &Foliation,
    clock_beta: Boost,
    clock: &ClockSpec,
) -> Result<EventCountReport> {
    let counts = simulate(
        observer.beta(),
        clock_beta,
        clock.mirror_separation,
        clock.n_ticks,
        clock.phase,
    );
    check_fit(net, counts.extent)?;
    Ok(report(observer.beta(), clock_beta, clock, &counts))
}

/// A clock comoving with `fol` (velocity `fol.beta()` in the unstretched
/// frame), counted in the unstretched leaves: the moving clock seen from
/// the network's rest frame.
///
/// Light reflects at the first mirror event on or beyond the mirror's ideal
/// line, so once `d ≥ 2(n_u + n_v)` a moving clock never ticks faster than
/// `2d` leaves per tic-tac.
pub fn clock_events(net: &CausalNetwork, fol: &Foliation, clock: &ClockSpec) -> Result<EventCountReport> {
    let rest = super::foliate(fol.network(), Boost::rest());
    count_events(net, &rest, fol.beta(), clock)
}

/// The other direction: a clock at rest in the network counted in the leaves
/// of `fol`.
pub fn clock_events_reciprocal(
    net: &CausalNetwork,
    fol: &Foliation,
    clock: &ClockSpec,
) -> Result<EventCountReport> {
    count_events(net, fol, Boost::rest(), clock)
}

/// Length of a rod of rest length `d` comoving with `fol`, measured along one
/// unstretched leaf, divided by `d`.
pub fn rod_events(net: &CausalNetwork, fol: &Foliation, d: u64) -> Result<f64> {
    if d == 0 {
        return Err(Error::arg("rod length must be positive"));
    }
    let counts = simulate(Boost::rest(), fol.beta(), d, 0, 0);
    check_fit(net, counts.extent)?;
    Ok(counts.length_sum / (counts.samples as f64 * d as f64))
}

/// Repeat the count of `report` with `factor` micro-links per macro-link and
/// read the result in macro-units: every `factor · leaf_scale` observer
/// leaves form one macro-leaf and every `factor` units of length one
/// macro-wire, fractional boundary counts rounded half to even. The network
/// is sized to fit. `factor = 1` returns the report unchanged.
pub fn coarse_grain(report: &EventCountReport, factor: u64) -> Result<EventCountReport> {
    if factor == 0 {
        return Err(Error::arg("coarse-graining factor must be positive"));
    }
    if report.coarse_grain_factor != 1 {
        return Err(Error::arg("report is already coarse-grained"));
    }
    if factor == 1 {
        return Ok(report.clone());
    }
    let d = report.d;
    let counts = simulate(
        report.observer,
        report.beta,
        d * factor,
        report.n_ticks,
        report.phase * factor,
    );
    let f = factor as f64;
    let leaves = (counts.raw as f64 / (f * report.observer.leaf_scale())).round_ties_even();
    let wires = (counts.length_sum / f).round_ties_even();
    Ok(EventCountReport {
        raw_count: leaves as u64,
        leaf_scale: 1.0,
        wire_count: wires as u64,
        dilation_estimate: leaves / (report.n_ticks as f64 * 2.0 * d as f64),
        contraction_estimate: wires / (counts.samples as f64 * d as f64),
        coarse_grain_factor: factor,
        ..report.clone()
    })
}

/// Extent `(rows, cols)` a network needs to host the given count.
pub fn required_extent(observer: Boost, clock_beta: Boost, clock: &ClockSpec) -> (usize, usize) {
    simulate(observer, clock_beta, clock.mirror_separation, clock.n_ticks, clock.phase).extent
}
