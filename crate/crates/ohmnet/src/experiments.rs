//! Orchestrated, seeded experiments.
//!
//! Each experiment returns a typed, serializable result; all randomness flows
//! from an explicit seed through per-purpose ChaCha substreams, so re-running
//! with the same configuration reproduces every per-trial record bit for bit.
//! Asymptotic claims are operationalized as log-log regression exponents or
//! ratio boundedness across size doublings; the acceptance windows live with
//! the callers.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::electrical::effective_resistance;
use crate::ext::ExtReal;
use crate::graph::{layered_example_poles, FamilySpec, VertexSet};
use crate::iso::{
    self, l_v, l_v_modified_band_ungated, l_v_with, min_boundary_profile, BandObjective, IsoBound,
    Mode, EXACT_GATE,
};
use crate::linalg::ReducedSystem;
use crate::report::log_log_exponent;
use crate::walks::{seeded_rng, tau_star, TauStar};
use crate::{Error, Graph, Result};

/// Pairwise maxima are exact up to this many vertices, sampled above.
const EXACT_PAIR_CUTOFF: usize = 300;

/// Pairs per graph when a corpus graph is too large for all pairs.
const SWEEP_SAMPLED_PAIRS: usize = 4;

// ---------------------------------------------------------------------------
// Theorem verification and the constant sweep
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct PairRatio {
    pub pair: (usize, usize),
    pub resistance: ExtReal,
    pub l_w: ExtReal,
    pub l_u: ExtReal,
    /// `R / (L_w + L_u)`; 0 with the flag set when both sides are infinite.
    pub ratio: ExtReal,
    pub both_infinite: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub mode: Mode,
    pub pairs: Vec<PairRatio>,
    pub sup_finite_ratio: Option<f64>,
}

/// Per pair: resistance, the two bound totals, and their ratio.
pub fn verify_theorem(
    g: &Graph,
    pairs: &[(usize, usize)],
    mode: Mode,
    tolerance: f64,
) -> Result<TheoremReport> {
    let mut bounds: HashMap<usize, IsoBound> = HashMap::new();
    let mut rows = Vec::with_capacity(pairs.len());
    let mut sup: Option<f64> = None;
    for &(w, u) in pairs {
        for v in [w, u] {
            if !bounds.contains_key(&v) {
                bounds.insert(v, l_v(g, v, mode)?);
            }
        }
        let resistance = effective_resistance(g, w, u, tolerance)?;
        let l_w = bounds[&w].total;
        let l_u = bounds[&u].total;
        let bound = l_w + l_u;
        let (ratio, both_infinite) = match (resistance, bound) {
            (ExtReal::Finite(r), ExtReal::Finite(b)) => (ExtReal::Finite(r / b), false),
            (ExtReal::Finite(_), ExtReal::Infinite) => (ExtReal::ZERO, false),
            (ExtReal::Infinite, ExtReal::Infinite) => (ExtReal::ZERO, true),
            (ExtReal::Infinite, ExtReal::Finite(_)) => (ExtReal::Infinite, false),
        };
        if let (ExtReal::Finite(r), false) = (ratio, both_infinite) {
            if sup.map_or(true, |s| r > s) {
                sup = Some(r);
            }
        }
        rows.push(PairRatio { pair: (w, u), resistance, l_w, l_u, ratio, both_infinite });
    }
    Ok(TheoremReport { mode, pairs: rows, sup_finite_ratio: sup })
}

/// Deterministic pair selection for a corpus graph: all pairs up to 10
/// vertices, otherwise a double-sweep far pair plus seeded random pairs.
pub fn corpus_pairs(g: &Graph, seed: u64) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    if n <= 10 {
        let mut pairs = Vec::new();
        for w in 0..n {
            for u in w + 1..n {
                pairs.push((w, u));
            }
        }
        return pairs;
    }
    let (a, b, _) = g.double_sweep(0);
    let mut pairs = vec![(a.min(b), a.max(b))];
    let mut rng = seeded_rng(seed, 1);
    while pairs.len() < 1 + SWEEP_SAMPLED_PAIRS {
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        if x != y {
            pairs.push((x.min(y), x.max(y)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// The exact-mode corpus: every connected family of the generator list at
/// sizes 2..=18, plus seeded random connected graphs.
pub fn exact_corpus(seed: u64) -> Vec<(String, Graph)> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    let mut push = |family: &str, spec: FamilySpec| {
        let g = spec.generate().expect("corpus specs are valid");
        debug_assert!(g.vertex_count() <= EXACT_GATE);
        graphs.push((family.to_string(), g));
    };
    for n in 2..=18 {
        push("path", FamilySpec::Path(n));
    }
    for n in 3..=18 {
        push("cycle", FamilySpec::Cycle(n));
    }
    for n in 2..=18 {
        push("complete", FamilySpec::Complete(n));
    }
    for n in 2..=18 {
        push("star", FamilySpec::Star(n));
    }
    for n in 2..=4 {
        push("grid2d", FamilySpec::Grid2d(n));
    }
    for n in 3..=4 {
        push("torus2d", FamilySpec::Torus2d(n));
    }
    for d in 1..=4 {
        push("hypercube", FamilySpec::Hypercube(d));
    }
    for n in 5..=18 {
        push("circulant", FamilySpec::Circulant(n, vec![1, 2]));
    }
    for n in 1..=2 {
        push("layered_example", FamilySpec::LayeredExample(n));
    }
    let mut rng = seeded_rng(seed, 2);
    for n in [5usize, 9, 13, 17] {
        for _ in 0..2 {
            graphs.push(("random".to_string(), random_connected(n, &mut rng)));
        }
    }
    graphs
}

/// Vertex-transitive members of the corpus (cycles, complete graphs, tori,
/// hypercubes, circulants).
pub fn transitive_corpus() -> Vec<(String, Graph)> {
    exact_corpus(0)
        .into_iter()
        .filter(|(family, _)| {
            matches!(family.as_str(), "cycle" | "complete" | "torus2d" | "hypercube" | "circulant")
        })
        .collect()
}

/// Erdos-Renyi at p = 0.35, resampled until connected.
fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < 0.35 {
                    edges.push((u, v, 1));
                }
            }
        }
        let g = Graph::new(n, edges).expect("generated edges are valid");
        if g.is_connected() {
            return g;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySweep {
    pub family: String,
    pub sup_ratio: f64,
    /// Worst ratio observed per graph size.
    pub by_size: Vec<(usize, f64)>,
    /// Size doublings `(s, 2s)` where the per-size sup grew by more than 2x.
    pub doubling_violations: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub families: Vec<FamilySweep>,
    pub overall_sup_ratio: f64,
    pub all_ratios_finite: bool,
    pub graphs_checked: usize,
    pub pairs_checked: usize,
}

/// Sweep the exact corpus for the empirical constant: per family and overall
/// sup of `R / (L_w + L_u)`, with a no-growth check across size doublings.
pub fn constant_sweep(seed: u64, tolerance: f64) -> Result<SweepReport> {
    let corpus = exact_corpus(seed);
    let mut per_family: Vec<(String, Vec<(usize, f64)>)> = Vec::new();
    let mut overall: f64 = 0.0;
    let mut all_finite = true;
    let mut graphs_checked = 0;
    let mut pairs_checked = 0;

    for (family, g) in &corpus {
        let pairs = corpus_pairs(g, seed);
        let report = verify_theorem(g, &pairs, Mode::Exact, tolerance)?;
        graphs_checked += 1;
        pairs_checked += report.pairs.len();
        for row in &report.pairs {
            if !row.ratio.is_finite() || row.both_infinite {
                all_finite = false;
            }
        }
        let sup = report.sup_finite_ratio.unwrap_or(0.0);
        overall = overall.max(sup);
        match per_family.iter_mut().find(|(f, _)| f == family) {
            Some((_, sizes)) => sizes.push((g.vertex_count(), sup)),
            None => per_family.push((family.clone(), vec![(g.vertex_count(), sup)])),
        }
    }

    let families = per_family
        .into_iter()
        .map(|(family, raw)| {
            // Collapse repeated sizes (random family) to their max.
            let mut by_size: Vec<(usize, f64)> = Vec::new();
            for (s, r) in raw {
                match by_size.iter_mut().find(|(size, _)| *size == s) {
                    Some((_, best)) => *best = best.max(r),
                    None => by_size.push((s, r)),
                }
            }
            by_size.sort_unstable_by_key(|&(s, _)| s);
            let sup_ratio = by_size.iter().map(|&(_, r)| r).fold(0.0f64, f64::max);
            let mut doubling_violations = Vec::new();
            for &(s, r_small) in &by_size {
                if let Some(&(_, r_big)) = by_size.iter().find(|&&(t, _)| t == 2 * s) {
                    if r_big > 2.0 * r_small {
                        doubling_violations.push((s, 2 * s));
                    }
                }
            }
            FamilySweep { family, sup_ratio, by_size, doubling_violations }
        })
        .collect();

    Ok(SweepReport {
        seed,
        families,
        overall_sup_ratio: overall,
        all_ratios_finite: all_finite,
        graphs_checked,
        pairs_checked,
    })
}

// ---------------------------------------------------------------------------
// The modified-band falsification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct FalsifyCase {
    pub m: usize,
    pub resistance: ExtReal,
    pub unmodified_l_w: ExtReal,
    pub modified_l_w: f64,
    pub modified_l_u: f64,
    pub modified_sum: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FalsifyReport {
    pub cases: Vec<FalsifyCase>,
}

/// Two equal complete components: the resistance across them is infinite,
/// the unmodified bound is infinite too, but lowering every band endpoint by
/// one excludes the whole-component set and leaves a finite total — so no
/// constant can repair the lowered bound.
pub fn falsify_modified_band(tolerance: f64) -> Result<FalsifyReport> {
    let mut cases = Vec::new();
    for m in [4usize, 8, 16] {
        let spec = FamilySpec::DisjointUnion(
            Box::new(FamilySpec::Complete(m)),
            Box::new(FamilySpec::Complete(m)),
        );
        let g = spec.generate()?;
        let (w, u) = (0, m);
        let resistance = effective_resistance(&g, w, u, tolerance)?;
        let unmodified = l_v_with(&g, w, Mode::Exact, BandObjective::Full, true)?;
        let mod_w = l_v_modified_band_ungated(&g, w)?;
        let mod_u = l_v_modified_band_ungated(&g, u)?;
        let modified_l_w = mod_w.total.finite().ok_or_else(|| {
            Error::Parameter("modified bound unexpectedly infinite".into())
        })?;
        let modified_l_u = mod_u.total.finite().ok_or_else(|| {
            Error::Parameter("modified bound unexpectedly infinite".into())
        })?;
        cases.push(FalsifyCase {
            m,
            resistance,
            unmodified_l_w: unmodified.total,
            modified_l_w,
            modified_l_u,
            modified_sum: modified_l_w + modified_l_u,
        });
    }
    Ok(FalsifyReport { cases })
}

// ---------------------------------------------------------------------------
// Scaling experiments
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct LayeredPoint {
    pub n: usize,
    pub vertices: usize,
    pub resistance: f64,
    pub n_times_r: f64,
    /// Sum over bands of max |A|/|dA|^2 (no 1/|dA| summand), anchored at a pole.
    pub sum_area_term: f64,
    pub sum_mode: Mode,
}

#[derive(Clone, Debug, Serialize)]
pub struct LayeredReport {
    pub points: Vec<LayeredPoint>,
    pub resistance_exponent: f64,
    pub area_term_exponent: f64,
}

/// Pole-to-pole resistance of the five-layer example scales like 1/n while
/// the |A|/|dA|^2 part of the bound scales like 1/n^2: the 1/|dA| summand is
/// what keeps the bound tight on highly connected graphs.
pub fn layered_scaling(n_list: &[usize], tolerance: f64) -> Result<LayeredReport> {
    if n_list.len() < 2 {
        return Err(Error::Parameter("layered scaling needs at least two sizes".into()));
    }
    let mut points = Vec::new();
    for &n in n_list {
        if n < 1 || n > 40 {
            return Err(Error::Parameter(format!("layered size {n} outside 1..=40")));
        }
        let g = FamilySpec::LayeredExample(n).generate()?;
        let (a, b) = layered_example_poles(n);
        let resistance = effective_resistance(&g, a, b, tolerance)?
            .finite()
            .expect("layered example is connected");
        let mode = if g.vertex_count() <= EXACT_GATE { Mode::Exact } else { Mode::Heuristic };
        let sum = l_v_with(&g, a, mode, BandObjective::AreaOverBoundarySq, false)?
            .total
            .finite()
            .expect("connected graph has finite band maxima");
        points.push(LayeredPoint {
            n,
            vertices: g.vertex_count(),
            resistance,
            n_times_r: n as f64 * resistance,
            sum_area_term: sum,
            sum_mode: mode,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let rs: Vec<f64> = points.iter().map(|p| p.resistance).collect();
    let sums: Vec<f64> = points.iter().map(|p| p.sum_area_term).collect();
    Ok(LayeredReport {
        resistance_exponent: log_log_exponent(&xs, &rs),
        area_term_exponent: log_log_exponent(&xs, &sums),
        points,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TauPoint {
    pub n: usize,
    pub multiplicity: u64,
    pub tau: f64,
    pub pair: (usize, usize),
    pub exact: bool,
    pub tau_over_n: f64,
    /// |tau - n R(pair)| from an independent resistance solve.
    pub identity_gap: f64,
    /// Arc edge boundaries dominate |A|^(2/3) for every arc length <= n/2.
    pub arc_hypothesis_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauScalingReport {
    pub points: Vec<TauPoint>,
    pub exponent: f64,
    pub tau_over_n_increasing: bool,
}

/// The multi-edge cycle satisfies the edge-isoperimetric hypothesis with
/// gamma = 2/3 yet its maximal commute time grows like n^(4/3), not n.
pub fn multi_edge_tau_scaling(
    n_list: &[usize],
    tolerance: f64,
    pair_budget: usize,
    seed: u64,
) -> Result<TauScalingReport> {
    if n_list.len() < 2 {
        return Err(Error::Parameter("tau scaling needs at least two sizes".into()));
    }
    let mut points = Vec::new();
    for &n in n_list {
        if n < 8 || n > 1024 || n % 2 != 0 {
            return Err(Error::Parameter(format!("multi-edge sizes must be even in 8..=1024, got {n}")));
        }
        let g = FamilySpec::MultiEdgeCycle(n).generate()?;
        let multiplicity = g.edges()[0].multiplicity;
        let t: TauStar = tau_star(&g, tolerance, pair_budget, seed)?;
        let r = effective_resistance(&g, t.pair.0, t.pair.1, tolerance)?
            .finite()
            .expect("cycle is connected");
        let identity_gap = (t.value - g.vertex_count() as f64 * r).abs();
        // Edge boundary of an arc of length k is 2*multiplicity; the
        // hypothesis needs it to be at least k^(2/3): (2m)^3 >= k^2.
        let arc_hypothesis_ok = (1..=n / 2).all(|k| {
            let lhs = 8u128 * (multiplicity as u128).pow(3);
            lhs >= (k as u128) * (k as u128)
        });
        points.push(TauPoint {
            n,
            multiplicity,
            tau: t.value,
            pair: t.pair,
            exact: t.exact,
            tau_over_n: t.value / n as f64,
            identity_gap,
            arc_hypothesis_ok,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.tau).collect();
    let increasing = points.windows(2).all(|w| w[1].tau_over_n > w[0].tau_over_n);
    Ok(TauScalingReport {
        exponent: log_log_exponent(&xs, &ys),
        tau_over_n_increasing: increasing,
        points,
    })
}

// ---------------------------------------------------------------------------
// Percolation
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PercConfig {
    /// Box side; the lattice has n*n vertices.
    pub n: usize,
    /// Bond retention probability.
    pub p: f64,
    pub seed: u64,
    pub trials: u32,
    pub pair_budget: u32,
}

impl PercConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Parameter("percolation box side must be at least 2".into()));
        }
        // p = 1 is allowed as the deterministic full-grid control.
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::Parameter(format!("retention probability {} outside (0,1]", self.p)));
        }
        if self.trials == 0 {
            return Err(Error::Parameter("need at least one trial".into()));
        }
        Ok(())
    }

    /// The corollary concerns p > 1/2; anything else is exploratory.
    pub fn supercritical(&self) -> bool {
        self.p > 0.5
    }
}

/// Substream tagged by box side and purpose so different draws never alias.
fn perc_rng(cfg: &PercConfig, trial: u32, purpose: u8) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&cfg.seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&(cfg.n as u64).to_le_bytes());
    bytes[16..24].copy_from_slice(&cfg.p.to_bits().to_le_bytes());
    bytes[24] = purpose;
    let mut rng = ChaCha8Rng::from_seed(bytes);
    rng.set_stream(trial as u64);
    rng
}

/// One bond-percolation configuration on the n-by-n grid: every lattice edge
/// kept independently with probability p, deterministically per
/// `(n, p, seed, trial)`.
pub fn percolate(cfg: &PercConfig, trial: u32) -> Result<Graph> {
    cfg.validate()?;
    let full = FamilySpec::Grid2d(cfg.n).generate()?;
    let mut rng = perc_rng(cfg, trial, 0);
    let retained: Vec<(usize, usize, u64)> = full
        .edges()
        .iter()
        .filter(|_| rng.gen::<f64>() < cfg.p)
        .map(|e| (e.u, e.v, e.multiplicity))
        .collect();
    Graph::new(full.vertex_count(), retained)
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Largest connected component via union-find; ties go to the component with
/// the smallest minimum vertex id.
pub fn giant_component(g: &Graph) -> VertexSet {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for e in g.edges() {
        uf.union(e.u, e.v);
    }
    // Scanning ids in order makes the first maximal root the smallest-min one.
    let mut best_root = 0;
    let mut best_size = 0;
    for v in 0..n {
        let r = uf.find(v);
        if r == v && uf.size[r] > best_size {
            best_root = r;
            best_size = uf.size[r];
        }
    }
    VertexSet::new((0..n).filter(|&v| uf.find(v) == best_root))
}

#[derive(Clone, Debug, Serialize)]
pub struct PercTrial {
    pub trial: u32,
    pub retained_edges: usize,
    pub giant_size: usize,
    pub far_pair: (usize, usize),
    pub pairs_sampled: usize,
    /// Max resistance over the sampled pairs; a lower bound on the true max.
    pub r_hat: f64,
    pub skipped: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PercSizeReport {
    pub config: PercConfig,
    /// False when p <= 1/2, outside the corollary's regime.
    pub supercritical: bool,
    pub trials: Vec<PercTrial>,
    pub skipped_trials: u32,
    pub max_r_hat: f64,
    pub mean_r_hat: f64,
    /// max over trials of r_hat / log2 n.
    pub max_ratio_to_log: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PercReport {
    pub sizes: Vec<PercSizeReport>,
}

/// Sampled maximal pairwise resistance on the giant component, per trial and
/// per box side. The sampled max is a lower bound on the true max, which is
/// the conservative direction for checking an upper-bound corollary.
pub fn percolation_resistance(configs: &[PercConfig], tolerance: f64) -> Result<PercReport> {
    let mut sizes = Vec::new();
    for cfg in configs {
        cfg.validate()?;
        let trials: Vec<PercTrial> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| percolation_trial(cfg, trial, tolerance))
            .collect::<Result<_>>()?;
        let kept: Vec<&PercTrial> = trials.iter().filter(|t| !t.skipped).collect();
        let skipped_trials = (trials.len() - kept.len()) as u32;
        let max_r_hat = kept.iter().map(|t| t.r_hat).fold(0.0f64, f64::max);
        let mean_r_hat = if kept.is_empty() {
            0.0
        } else {
            kept.iter().map(|t| t.r_hat).sum::<f64>() / kept.len() as f64
        };
        let log_n = (cfg.n as f64).log2();
        sizes.push(PercSizeReport {
            config: *cfg,
            supercritical: cfg.supercritical(),
            trials,
            skipped_trials,
            max_r_hat,
            mean_r_hat,
            max_ratio_to_log: max_r_hat / log_n,
        });
    }
    Ok(PercReport { sizes })
}

fn percolation_trial(cfg: &PercConfig, trial: u32, tolerance: f64) -> Result<PercTrial> {
    let sub = percolate(cfg, trial)?;
    let giant = giant_component(&sub);
    if giant.len() < 2 {
        return Ok(PercTrial {
            trial,
            retained_edges: sub.edge_record_count(),
            giant_size: giant.len(),
            far_pair: (0, 0),
            pairs_sampled: 0,
            r_hat: 0.0,
            skipped: true,
        });
    }
    let start = giant.members()[0];
    let (a, b, _) = sub.double_sweep(start);
    let mut pairs = vec![(a.min(b), a.max(b))];
    let mut rng = perc_rng(cfg, trial, 1);
    for _ in 0..cfg.pair_budget {
        let x = giant.members()[rng.gen_range(0..giant.len())];
        let y = giant.members()[rng.gen_range(0..giant.len())];
        if x != y {
            pairs.push((x.min(y), x.max(y)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let mut r_hat = 0.0f64;
    for &(x, y) in &pairs {
        let r = effective_resistance(&sub, x, y, tolerance)?
            .finite()
            .expect("pair drawn from one component");
        r_hat = r_hat.max(r);
    }
    Ok(PercTrial {
        trial,
        retained_edges: sub.edge_record_count(),
        giant_size: giant.len(),
        far_pair: (a.min(b), a.max(b)),
        pairs_sampled: pairs.len(),
        r_hat,
        skipped: false,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryProbeTrial {
    pub trial: u32,
    pub giant_size: usize,
    pub sets_sampled: usize,
    /// min over sampled sets of |dS| / sqrt(|S|).
    pub min_ratio: Option<f64>,
    pub witness_size: Option<usize>,
    pub witness_boundary: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryProbeReport {
    pub config: PercConfig,
    pub size_floor: usize,
    pub trials: Vec<BoundaryProbeTrial>,
    /// Heuristic upper bound on the true minimum; report-only.
    pub min_ratio: Option<f64>,
}

/// Sample connected subsets of the giant component (ball and level-set
/// prefixes) with at least `size_floor` vertices and at most half the giant
/// — the sizes the resistance bound's bands actually consume — and report
/// the worst boundary-to-sqrt-size ratio seen. Heuristic and report-only:
/// it upper bounds the true minimum.
pub fn percolation_boundary_probe(
    cfg: &PercConfig,
    size_floor: usize,
    tolerance: f64,
) -> Result<BoundaryProbeReport> {
    cfg.validate()?;
    let _ = tolerance;
    let mut trials = Vec::new();
    let mut overall: Option<f64> = None;
    for trial in 0..cfg.trials {
        let sub = percolate(cfg, trial)?;
        let giant = giant_component(&sub);
        let mut best: Option<(f64, usize, usize)> = None;
        let mut sampled = 0usize;
        if giant.len() > size_floor {
            let mut rng = perc_rng(cfg, trial, 2);
            let mut centers = vec![giant.members()[0]];
            for _ in 0..3 {
                centers.push(giant.members()[rng.gen_range(0..giant.len())]);
            }
            centers.sort_unstable();
            centers.dedup();
            for center in centers {
                for family in iso::prefix_families(&sub, center) {
                    let hi = family.usable.min(giant.len() / 2);
                    for size in size_floor..=hi {
                        let boundary = family.boundary_at[size];
                        let ratio = boundary as f64 / (size as f64).sqrt();
                        sampled += 1;
                        if best.map_or(true, |(b, _, _)| ratio < b) {
                            best = Some((ratio, size, boundary));
                        }
                    }
                }
            }
        }
        if let Some((ratio, _, _)) = best {
            if overall.map_or(true, |o| ratio < o) {
                overall = Some(ratio);
            }
        }
        trials.push(BoundaryProbeTrial {
            trial,
            giant_size: giant.len(),
            sets_sampled: sampled,
            min_ratio: best.map(|(r, _, _)| r),
            witness_size: best.map(|(_, s, _)| s),
            witness_boundary: best.map(|(_, _, b)| b),
        });
    }
    Ok(BoundaryProbeReport { config: *cfg, size_floor, trials, min_ratio: overall })
}

// ---------------------------------------------------------------------------
// Conjecture probes (report-only: open conjectures are never asserted)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct Conj1Report {
    pub vertices: usize,
    pub diameter: usize,
    /// alpha = log2(diam) / log2(|G|).
    pub alpha: f64,
    pub mode: Mode,
    /// min over sampled/enumerated S of |dS| / |S|^(1 - alpha).
    pub min_ratio: f64,
    pub witness_size: usize,
    pub witness_boundary: usize,
    pub per_size: Vec<(usize, usize)>,
}

/// Probe the transitive-isoperimetry conjecture: with alpha tied to the
/// diameter, scan `|dS| / |S|^(1-alpha)` over set sizes up to half the graph.
pub fn conjecture1_probe(g: &Graph) -> Result<Conj1Report> {
    if g.vertex_count() < 2 {
        return Err(Error::Parameter("probe needs at least two vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Parameter("probe requires a connected graph".into()));
    }
    let diameter = g.diameter()?;
    let n = g.vertex_count();
    let alpha = if diameter <= 1 { 0.0 } else { (diameter as f64).log2() / (n as f64).log2() };
    let mode = if n <= EXACT_GATE { Mode::Exact } else { Mode::Heuristic };
    let profile = min_boundary_profile(g, n / 2, mode)?;
    let mut best: Option<(f64, usize, usize)> = None;
    let mut per_size = Vec::new();
    for s in 1..=n / 2 {
        if let Some(b) = profile.min_boundary[s] {
            per_size.push((s, b));
            let ratio = b as f64 / (s as f64).powf(1.0 - alpha);
            if best.map_or(true, |(r, _, _)| ratio < r) {
                best = Some((ratio, s, b));
            }
        }
    }
    let (min_ratio, witness_size, witness_boundary) =
        best.ok_or_else(|| Error::Parameter("no candidate sets".into()))?;
    Ok(Conj1Report {
        vertices: n,
        diameter,
        alpha,
        mode,
        min_ratio,
        witness_size,
        witness_boundary,
        per_size,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Conj2Report {
    pub vertices: usize,
    pub diameter: usize,
    pub max_resistance: f64,
    pub max_pair: (usize, usize),
    pub exact: bool,
    /// diam^2 log2|G| / |G| (the conjectured bound at additive constant 0).
    pub bound_term: f64,
    /// max_resistance - bound_term.
    pub gap: f64,
}

/// Probe the transitive-resistance conjecture: compare the max pairwise
/// resistance against `diam^2 log2|G| / |G|`, reporting the gap at C = 0.
pub fn conjecture2_probe(
    g: &Graph,
    tolerance: f64,
    pair_budget: usize,
    seed: u64,
) -> Result<Conj2Report> {
    if g.vertex_count() < 2 {
        return Err(Error::Parameter("probe needs at least two vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Parameter("probe requires a connected graph".into()));
    }
    let n = g.vertex_count();
    let diameter = g.diameter()?;
    let (max_resistance, max_pair, exact) = if n <= EXACT_PAIR_CUTOFF {
        max_pair_resistance_exact(g, tolerance)?
    } else {
        let (a, b, _) = g.double_sweep(0);
        let mut pairs = vec![(a.min(b), a.max(b))];
        let mut rng = seeded_rng(seed, 3);
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
        for &(x, y) in &pairs {
            let r = effective_resistance(g, x, y, tolerance)?
                .finite()
                .expect("connected graph");
            if r > best.0 {
                best = (r, (x, y));
            }
        }
        (best.0, best.1, false)
    };
    let bound_term = (diameter as f64).powi(2) * (n as f64).log2() / n as f64;
    Ok(Conj2Report {
        vertices: n,
        diameter,
        max_resistance,
        max_pair,
        exact,
        bound_term,
        gap: max_resistance - bound_term,
    })
}

/// Exact max-pair resistance with one grounded solve per vertex:
/// `R(a,b) = phi_a[a] - 2 phi_a[b] + phi_b[b]` where `phi_v` solves the
/// system grounded at vertex 0 with a unit injection at `v`.
fn max_pair_resistance_exact(g: &Graph, tolerance: f64) -> Result<(f64, (usize, usize), bool)> {
    let n = g.vertex_count();
    let unknowns: Vec<usize> = (1..n).collect();
    let system = ReducedSystem::new(g, unknowns, n);
    // phi[v] indexed by vertex, with the grounded vertex implicit zero.
    let mut phi: Vec<Vec<f64>> = Vec::with_capacity(n);
    phi.push(vec![0.0; n]);
    for v in 1..n {
        let mut b = vec![0.0; system.len()];
        b[v - 1] = 1.0;
        let sol = system.solve(&b, tolerance, crate::linalg::SolveMethod::Auto)?;
        let mut full = vec![0.0; n];
        for (i, &vertex) in system.vertices.iter().enumerate() {
            full[vertex] = sol.values[i];
        }
        phi.push(full);
    }
    let mut best = (f64::NEG_INFINITY, (0, 0));
    for a in 0..n {
        for b in a + 1..n {
            let r = phi[a][a] - 2.0 * phi[a][b] + phi[b][b];
            if r > best.0 {
                best = (r, (a, b));
            }
        }
    }
    Ok((best.0, best.1, true))
}
