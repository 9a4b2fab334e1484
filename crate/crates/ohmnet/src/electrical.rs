//! The unit-voltage battery problem.
//!
//! `solve_voltages` pins V(w) = 1 and V(u) = 0 and solves the reduced
//! weighted-Laplacian system for the interior vertices of their common
//! component. Everything else in this module is read off that profile:
//! total current and effective resistance, per-vertex currents into a set,
//! connected voltage level sets around the sink, and a maximum-principle
//! check.

use serde::Serialize;

use crate::ext::ExtReal;
use crate::graph::VertexSet;
use crate::linalg::ReducedSystem;
use crate::{Error, Graph, Result};

pub use crate::linalg::SolveMethod;

/// Default relative-residual tolerance for solves.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Absolute slack when grouping equal-voltage ties in level sets.
pub const TIE_SLACK: f64 = 1e-12;

/// Voltages for one `(w, u)` battery solve.
///
/// Vertices outside the component of `w` and `u` get voltage 0 by convention
/// and are excluded from level sets.
#[derive(Clone, Debug, Serialize)]
pub struct VoltageProfile {
    /// Source vertex, pinned to 1 volt.
    pub w: usize,
    /// Sink vertex, pinned to 0 volts.
    pub u: usize,
    pub voltages: Vec<f64>,
    /// Total current leaving the source.
    pub current: f64,
    /// Relative residual of the interior solve.
    pub residual: f64,
    #[serde(skip)]
    component: Vec<usize>,
}

impl VoltageProfile {
    /// Vertices of the component containing `w` and `u`, in BFS order from `w`.
    pub fn component(&self) -> &[usize] {
        &self.component
    }
}

pub fn solve_voltages(g: &Graph, w: usize, u: usize, tolerance: f64) -> Result<VoltageProfile> {
    solve_voltages_with(g, w, u, tolerance, SolveMethod::Auto)
}

/// As [`solve_voltages`] with an explicit solver choice (`Auto` picks dense
/// elimination below 200 component vertices, conjugate gradients above).
pub fn solve_voltages_with(
    g: &Graph,
    w: usize,
    u: usize,
    tolerance: f64,
    method: SolveMethod,
) -> Result<VoltageProfile> {
    check_vertex(g, w)?;
    check_vertex(g, u)?;
    if w == u {
        return Err(Error::Parameter(format!("source and sink coincide at vertex {w}")));
    }
    let component = g.component_of(w);
    if !component.contains(&u) {
        return Err(Error::Disconnected(w, u));
    }

    let interior: Vec<usize> = component.iter().copied().filter(|&v| v != w && v != u).collect();
    let system = ReducedSystem::new(g, interior, component.len());
    let b: Vec<f64> = system.vertices.iter().map(|&v| g.multiplicity(v, w) as f64).collect();
    let solution = system.solve(&b, tolerance, method)?;

    let mut voltages = vec![0.0; g.vertex_count()];
    voltages[w] = 1.0;
    for (i, &v) in system.vertices.iter().enumerate() {
        voltages[v] = solution.values[i];
    }
    let current = g
        .neighbors(w)
        .iter()
        .map(|&(x, m)| m as f64 * (1.0 - voltages[x]))
        .sum();
    Ok(VoltageProfile { w, u, voltages, current, residual: solution.residual, component })
}

/// Effective resistance between `w` and `u`; an explicit `+inf` when they lie
/// in different components.
pub fn effective_resistance(g: &Graph, w: usize, u: usize, tolerance: f64) -> Result<ExtReal> {
    effective_resistance_with(g, w, u, tolerance, SolveMethod::Auto)
}

pub fn effective_resistance_with(
    g: &Graph,
    w: usize,
    u: usize,
    tolerance: f64,
    method: SolveMethod,
) -> Result<ExtReal> {
    match solve_voltages_with(g, w, u, tolerance, method) {
        Ok(profile) => Ok(ExtReal::Finite(1.0 / profile.current)),
        Err(Error::Disconnected(_, _)) => Ok(ExtReal::Infinite),
        Err(e) => Err(e),
    }
}

/// Current through a boundary vertex `v` into the set `a`: the
/// multiplicity-weighted sum of voltage drops along edges from `v` into `a`.
pub fn vertex_current(profile: &VoltageProfile, g: &Graph, v: usize, a: &VertexSet) -> Result<f64> {
    check_vertex(g, v)?;
    if a.contains(v) {
        return Err(Error::Parameter(format!("vertex {v} is inside the set, not on its boundary")));
    }
    let mut current = 0.0;
    let mut touches = false;
    for &(x, m) in g.neighbors(v) {
        if a.contains(x) {
            touches = true;
            current += m as f64 * (profile.voltages[v] - profile.voltages[x]);
        }
    }
    if !touches {
        return Err(Error::Parameter(format!("vertex {v} has no neighbor in the set")));
    }
    Ok(current)
}

/// The `m` lowest-voltage vertices around the sink, chosen connected.
#[derive(Clone, Debug)]
pub struct LevelSet {
    pub m: usize,
    pub members: VertexSet,
    /// Maximum voltage inside the set.
    pub theta: f64,
}

/// Admission order realizing all level sets of one profile at once:
/// `level_set(m)` is the first `m` entries of `order`, so the sets are nested
/// by construction.
#[derive(Clone, Debug)]
pub struct LevelOrder {
    /// Component vertices sorted into admission order; starts at the sink.
    pub order: Vec<usize>,
    /// Running maxima of voltage along `order`.
    pub theta: Vec<f64>,
    /// Positions admitted without adjacency to the current set. Empty for
    /// exact solutions; possible at float-tie granularity.
    pub anomalies: Vec<usize>,
}

impl LevelOrder {
    /// Length of the prefix guaranteed connected by construction.
    pub fn connected_prefix(&self) -> usize {
        self.anomalies.first().copied().unwrap_or(self.order.len())
    }
}

/// Compute the admission order for level sets of `profile`.
///
/// Vertices are taken in increasing voltage; ties (within [`TIE_SLACK`]) are
/// broken by admitting, among the tied plateau, the vertex adjacent to the
/// current set with the smallest (voltage, id) key. A plateau vertex with no
/// such adjacency is admitted by smallest key and recorded as an anomaly.
pub fn level_order(profile: &VoltageProfile, g: &Graph) -> LevelOrder {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    #[derive(PartialEq)]
    struct Key(f64, usize);
    impl Eq for Key {}
    impl PartialOrd for Key {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Key {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
        }
    }

    let u = profile.u;
    let volts = &profile.voltages;
    let mut rest: Vec<usize> = profile.component.iter().copied().filter(|&v| v != u).collect();
    rest.sort_by(|&a, &b| volts[a].total_cmp(&volts[b]).then_with(|| a.cmp(&b)));

    let n = profile.component.len();
    let mut in_set = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(n);
    let mut theta = Vec::with_capacity(n);
    let mut anomalies = Vec::new();

    in_set[u] = true;
    order.push(u);
    theta.push(volts[u]);

    // Plateaus: maximal runs of the sorted order chained by the tie slack.
    let mut plateau_of = vec![usize::MAX; g.vertex_count()];
    let mut start = 0;
    let mut plateau_id = 0;
    while start < rest.len() {
        let mut end = start + 1;
        while end < rest.len() && volts[rest[end]] - volts[rest[end - 1]] <= TIE_SLACK {
            end += 1;
        }
        for &v in &rest[start..end] {
            plateau_of[v] = plateau_id;
        }

        // Grow through the plateau from the current set, cheapest key first.
        let mut heaped = vec![false; end - start];
        let index_in_plateau: std::collections::HashMap<usize, usize> =
            rest[start..end].iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut heap: BinaryHeap<Reverse<Key>> = BinaryHeap::new();
        for (i, &v) in rest[start..end].iter().enumerate() {
            if g.neighbors(v).iter().any(|&(x, _)| in_set[x]) {
                heaped[i] = true;
                heap.push(Reverse(Key(volts[v], v)));
            }
        }
        let mut admitted = 0;
        let mut cursor = start; // fallback scan position for anomalies
        while admitted < end - start {
            let v = match heap.pop() {
                Some(Reverse(Key(_, v))) => v,
                None => {
                    // No plateau vertex touches the current set: cannot occur
                    // for exact solutions, possible at float-tie granularity.
                    while in_set[rest[cursor]] {
                        cursor += 1;
                    }
                    anomalies.push(order.len());
                    rest[cursor]
                }
            };
            if in_set[v] {
                continue; // stale heap entry
            }
            in_set[v] = true;
            admitted += 1;
            let t = theta.last().copied().unwrap_or(f64::NEG_INFINITY);
            order.push(v);
            theta.push(t.max(volts[v]));
            for &(x, _) in g.neighbors(v) {
                if !in_set[x] && plateau_of[x] == plateau_id {
                    let i = index_in_plateau[&x];
                    if !heaped[i] {
                        heaped[i] = true;
                        heap.push(Reverse(Key(volts[x], x)));
                    }
                }
            }
        }
        plateau_id += 1;
        start = end;
    }
    LevelOrder { order, theta, anomalies }
}

/// The level set `A_m`: `m` vertices containing the sink, connected,
/// consisting of the `m` lowest voltages with deterministic tie-breaking.
pub fn level_set(profile: &VoltageProfile, g: &Graph, m: usize) -> Result<LevelSet> {
    if m < 1 || m > profile.component.len() {
        return Err(Error::Parameter(format!(
            "level set size {m} out of range 1..={}",
            profile.component.len()
        )));
    }
    let lo = level_order(profile, g);
    Ok(LevelSet {
        m,
        members: VertexSet::new(lo.order[..m].iter().copied()),
        theta: lo.theta[m - 1],
    })
}

/// A vertex whose voltage escapes the range of its neighbors' voltages.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PrincipleViolation {
    pub vertex: usize,
    pub voltage: f64,
    pub neighbor_min: f64,
    pub neighbor_max: f64,
}

/// Check the maximum principle: every non-battery vertex in the solved
/// component lies within [min, max] of its neighbors' voltages, relaxed by
/// `slack`. Returns the first violation as a witness, `None` if it holds.
pub fn check_maximum_principle(
    profile: &VoltageProfile,
    g: &Graph,
    slack: f64,
) -> Option<PrincipleViolation> {
    for &v in &profile.component {
        if v == profile.w || v == profile.u {
            continue;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &(x, _) in g.neighbors(v) {
            lo = lo.min(profile.voltages[x]);
            hi = hi.max(profile.voltages[x]);
        }
        let volt = profile.voltages[v];
        if volt < lo - slack || volt > hi + slack {
            return Some(PrincipleViolation { vertex: v, voltage: volt, neighbor_min: lo, neighbor_max: hi });
        }
    }
    None
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.vertex_count() {
        return Err(Error::Parameter(format!(
            "vertex {v} out of range for {} vertices",
            g.vertex_count()
        )));
    }
    Ok(())
}
