//! Continuous-time random walk with exponential edge clocks.
//!
//! Every unit resistor doubles as an alarm clock ringing after an Exp(1)
//! time; the walker moves along the first edge that rings. Equivalently (by
//! superposition of exponentials) the walker waits Exp(weighted degree) at a
//! vertex and jumps to a neighbor with probability proportional to edge
//! multiplicity; the simulation uses that jump construction. Hitting times
//! solve the first-step linear system of this chain, and commute times obey
//! `commute(v, u) = |G| * R(v, u)` on connected graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ext::ExtReal;
use crate::linalg::ReducedSystem;
use crate::{Error, Graph, Result};

/// Above this vertex count, `tau_star` switches from the exact all-pairs
/// maximum to a declared sampled lower bound.
pub const EXACT_TAU_CUTOFF: usize = 300;

/// Expected times to hit `target`, per start vertex. Vertices outside the
/// target's component are infinite.
#[derive(Clone, Debug, Serialize)]
pub struct HittingTimes {
    pub target: usize,
    pub values: Vec<f64>,
}

/// Solve the first-step system for the continuous-time chain whose jump rate
/// along each edge equals its multiplicity.
pub fn exact_hitting(g: &Graph, u: usize, tolerance: f64) -> Result<HittingTimes> {
    check_vertex(g, u)?;
    let component = g.component_of(u);
    let unknowns: Vec<usize> = component.iter().copied().filter(|&v| v != u).collect();
    let system = ReducedSystem::new(g, unknowns, component.len());
    let b = vec![1.0; system.len()];
    let solution = system.solve(&b, tolerance, crate::linalg::SolveMethod::Auto)?;
    let mut values = vec![f64::INFINITY; g.vertex_count()];
    values[u] = 0.0;
    for (i, &v) in system.vertices.iter().enumerate() {
        values[v] = solution.values[i];
    }
    Ok(HittingTimes { target: u, values })
}

/// Discrete-time analogue (unit steps instead of exponential waits); the
/// standard-theory cross-check `commute_discrete = 2 * total multiplicity * R`
/// holds for it. First-step system with the weighted degree as right side.
pub fn exact_hitting_discrete(g: &Graph, u: usize, tolerance: f64) -> Result<HittingTimes> {
    check_vertex(g, u)?;
    let component = g.component_of(u);
    let unknowns: Vec<usize> = component.iter().copied().filter(|&v| v != u).collect();
    let system = ReducedSystem::new(g, unknowns, component.len());
    let b: Vec<f64> = system.vertices.iter().map(|&v| g.weighted_degree(v) as f64).collect();
    let solution = system.solve(&b, tolerance, crate::linalg::SolveMethod::Auto)?;
    let mut values = vec![f64::INFINITY; g.vertex_count()];
    values[u] = 0.0;
    for (i, &v) in system.vertices.iter().enumerate() {
        values[v] = solution.values[i];
    }
    Ok(HittingTimes { target: u, values })
}

/// `E_v T_u + E_u T_v`; `+inf` across components.
pub fn commute_time(g: &Graph, v: usize, u: usize, tolerance: f64) -> Result<ExtReal> {
    check_vertex(g, v)?;
    check_vertex(g, u)?;
    if v == u {
        return Err(Error::Parameter(format!("commute time needs two distinct vertices, got {v}")));
    }
    let to_u = exact_hitting(g, u, tolerance)?;
    if !to_u.values[v].is_finite() {
        return Ok(ExtReal::Infinite);
    }
    let to_v = exact_hitting(g, v, tolerance)?;
    Ok(ExtReal::Finite(to_u.values[v] + to_v.values[u]))
}

/// Maximal mean commute time over vertex pairs.
#[derive(Clone, Debug, Serialize)]
pub struct TauStar {
    pub value: f64,
    pub pair: (usize, usize),
    /// False when the value is a sampled lower bound (above the cutoff).
    pub exact: bool,
    pub pairs_evaluated: usize,
}

/// Exact maximum over all pairs up to [`EXACT_TAU_CUTOFF`] vertices (one
/// hitting solve per target); above that, a deterministic sample of far
/// pairs from a double BFS sweep plus `pair_budget` seeded random pairs,
/// reported as a lower bound.
pub fn tau_star(g: &Graph, tolerance: f64, pair_budget: usize, seed: u64) -> Result<TauStar> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Parameter("tau* needs at least two vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Parameter("tau* requires a connected graph".into()));
    }
    if n <= EXACT_TAU_CUTOFF {
        let hit: Vec<HittingTimes> =
            (0..n).map(|u| exact_hitting(g, u, tolerance)).collect::<Result<_>>()?;
        let mut best = (f64::NEG_INFINITY, (0, 0));
        for v in 0..n {
            for u in v + 1..n {
                let commute = hit[u].values[v] + hit[v].values[u];
                if commute > best.0 {
                    best = (commute, (v, u));
                }
            }
        }
        return Ok(TauStar {
            value: best.0,
            pair: best.1,
            exact: true,
            pairs_evaluated: n * (n - 1) / 2,
        });
    }

    let (a, b, d) = g.double_sweep(0);
    let dist_a = g.bfs_distances(a);
    let mut far: Vec<usize> = (0..n).filter(|&v| v != a && dist_a[v] >= d.div_ceil(2)).collect();
    far.sort_unstable();
    if far.len() > pair_budget.max(1) {
        let stride = far.len().div_ceil(pair_budget.max(1));
        far = far.into_iter().step_by(stride).collect();
    }

    let mut pairs: Vec<(usize, usize)> = vec![(a.min(b), a.max(b))];
    pairs.extend(far.into_iter().map(|v| (a.min(v), a.max(v))));
    let mut rng = seeded_rng(seed, 0);
    for _ in 0..pair_budget {
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        if x != y {
            pairs.push((x.min(y), x.max(y)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let mut best = (f64::NEG_INFINITY, (0, 0));
    for &(v, u) in &pairs {
        let commute = commute_time(g, v, u, tolerance)?
            .finite()
            .expect("connected graph has finite commute times");
        if commute > best.0 {
            best = (commute, (v, u));
        }
    }
    Ok(TauStar { value: best.0, pair: best.1, exact: false, pairs_evaluated: pairs.len() })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SimulatedHitting {
    pub mean: f64,
    pub std_err: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Monte Carlo estimate of `E_v T_u` by simulating the jump chain.
///
/// Per-trial RNG substreams are derived from `(seed, trial index)`, so
/// enlarging `trials` extends the sample without reshuffling earlier trials,
/// and a fixed seed gives bit-identical output.
pub fn simulate_hitting(
    g: &Graph,
    v: usize,
    u: usize,
    seed: u64,
    trials: u64,
) -> Result<SimulatedHitting> {
    check_vertex(g, v)?;
    check_vertex(g, u)?;
    if trials == 0 {
        return Err(Error::Parameter("need at least one trial".into()));
    }
    if v == u {
        return Err(Error::Parameter("start and target coincide".into()));
    }
    if !g.component_of(u).contains(&v) {
        return Err(Error::Disconnected(v, u));
    }

    let mut samples = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = seeded_rng(seed, trial);
        let mut x = v;
        let mut time = 0.0f64;
        while x != u {
            let wdeg = g.weighted_degree(x);
            let wait = -(1.0 - rng.gen::<f64>()).ln() / wdeg as f64;
            time += wait;
            let mut pick = rng.gen_range(0..wdeg);
            for &(y, m) in g.neighbors(x) {
                if pick < m {
                    x = y;
                    break;
                }
                pick -= m;
            }
        }
        samples.push(time);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = if samples.len() > 1 {
        samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(SimulatedHitting { mean, std_err: (var / n).sqrt(), trials, seed })
}

/// ChaCha8 stream `stream` of a 64-bit seed.
pub(crate) fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(bytes);
    rng.set_stream(stream);
    rng
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
