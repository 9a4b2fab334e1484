//! The dyadic-band isoperimetric functional and related profiles.
//!
//! For a graph on `N` vertices the bands are indexed by `n = 1..=floor(log2 N)`;
//! band `n` holds the sizes `s` with `N/2^(n+1) < s <= N/2^n`. Within each
//! band the functional maximizes `|A|/|dA|^2 + 1/|dA|` over connected sets `A`
//! containing the anchor; `L_v` sums the band maxima. Band endpoints are
//! compared in exact integer arithmetic: an off-by-one in the upper endpoint
//! changes which sets qualify, and the modified-band variant exists precisely
//! to demonstrate that failure.
//!
//! Exact mode enumerates connected vertex sets (each exactly once, by frontier
//! extension with a canonical exclusion order) and is gated at
//! [`EXACT_GATE`] vertices. Heuristic mode scores candidate sets only —
//! breadth-first balls, voltage level sets, and a bounded swap search — so
//! heuristic maxima are lower bounds and heuristic minima are upper bounds.

use std::collections::VecDeque;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::electrical::{level_order, solve_voltages};
use crate::ext::ExtReal;
use crate::graph::{external_boundary, is_connected_subset, VertexSet};
use crate::{Error, Graph, Result};

/// Largest vertex count for which exact enumeration is allowed by default.
pub const EXACT_GATE: usize = 18;

/// Hard cap for the bitmask enumeration, gate overridden or not.
const MASK_LIMIT: usize = 64;

/// Tolerance used for the voltage solves that feed heuristic candidates.
const CANDIDATE_SOLVE_TOLERANCE: f64 = 1e-8;

/// Local search is skipped for candidate sets larger than this.
const LOCAL_SEARCH_SIZE_CAP: usize = 300;

/// Local search is skipped on graphs with more edge records than this (each
/// candidate evaluation walks the adjacency structure).
const LOCAL_SEARCH_EDGE_CAP: usize = 10_000;

/// Candidate evaluations per local-search round.
const LOCAL_SEARCH_TRIES_PER_ROUND: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Heuristic,
}

/// `floor(log2 N)`: the number of dyadic bands. Zero for a single vertex.
pub fn band_count(vertex_count: usize) -> u32 {
    if vertex_count == 0 {
        0
    } else {
        vertex_count.ilog2()
    }
}

/// Inclusive integer size range of band `n`: `(N/2^(n+1), N/2^n]`.
pub fn band_sizes(vertex_count: usize, band: u32) -> Result<(usize, usize)> {
    if band < 1 || band > band_count(vertex_count) {
        return Err(Error::Parameter(format!(
            "band {band} out of range 1..={} for {vertex_count} vertices",
            band_count(vertex_count)
        )));
    }
    let n = vertex_count as u64;
    let lo = n / (1u64 << (band + 1)) + 1;
    let hi = n / (1u64 << band);
    Ok((lo as usize, hi as usize))
}

/// Band `n` with both endpoints lowered by one: `(N/2^(n+1) - 1, N/2^n - 1]`.
/// `None` when no positive size qualifies.
pub fn modified_band_sizes(vertex_count: usize, band: u32) -> Result<Option<(usize, usize)>> {
    let (lo, hi) = band_sizes(vertex_count, band)?;
    if hi <= 1 {
        return Ok(None);
    }
    Ok(Some((1.max(lo - 1), hi - 1)))
}

/// `|A|/|dA|^2 + 1/|dA|`, `+inf` on empty boundary.
pub fn term_value(size: usize, boundary: usize) -> ExtReal {
    if boundary == 0 {
        ExtReal::Infinite
    } else {
        let b = boundary as f64;
        ExtReal::Finite(size as f64 / (b * b) + 1.0 / b)
    }
}

fn neighbor_masks(g: &Graph) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    if n > MASK_LIMIT {
        return Err(Error::Parameter(format!(
            "exact enumeration supports at most {MASK_LIMIT} vertices, got {n}"
        )));
    }
    let mut nbr = vec![0u64; n];
    for v in 0..n {
        for &(x, _) in g.neighbors(v) {
            nbr[v] |= 1 << x;
        }
    }
    Ok(nbr)
}

/// Visit every connected set containing `v` with size in `lo..=hi` exactly
/// once, as `(mask, size, boundary_size)`.
fn for_each_connected_superset(
    nbr: &[u64],
    v: usize,
    lo: usize,
    hi: usize,
    f: &mut impl FnMut(u64, usize, u32),
) {
    if hi < 1 || lo > hi {
        return;
    }
    rec(nbr, 1 << v, 1, nbr[v], 0, lo, hi, f);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        nbr: &[u64],
        set: u64,
        size: usize,
        nbr_or: u64,
        forbidden: u64,
        lo: usize,
        hi: usize,
        f: &mut impl FnMut(u64, usize, u32),
    ) {
        if size >= lo {
            f(set, size, (nbr_or & !set).count_ones());
        }
        if size == hi {
            return;
        }
        let mut cand = nbr_or & !set & !forbidden;
        let mut closed = forbidden;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            rec(nbr, set | (1 << u), size + 1, nbr_or | nbr[u], closed, lo, hi, f);
            closed |= 1 << u;
        }
    }
}

fn mask_to_set(mask: u64) -> VertexSet {
    VertexSet::new((0..64).filter(|&i| mask >> i & 1 == 1))
}

fn check_gate(g: &Graph) -> Result<()> {
    if g.vertex_count() > EXACT_GATE {
        return Err(Error::ExactGate { size: g.vertex_count(), gate: EXACT_GATE });
    }
    Ok(())
}

fn check_anchor(g: &Graph, v: usize) -> Result<()> {
    if v >= g.vertex_count() {
        return Err(Error::Parameter(format!(
            "vertex {v} out of range for {} vertices",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Every connected vertex set containing `v` with size in `sizes`, each
/// exactly once, in a deterministic order. Gated at [`EXACT_GATE`].
pub fn enumerate_connected_sets(
    g: &Graph,
    v: usize,
    sizes: RangeInclusive<usize>,
) -> Result<Vec<VertexSet>> {
    check_gate(g)?;
    enumerate_connected_sets_ungated(g, v, sizes)
}

/// As [`enumerate_connected_sets`] without the exact-mode gate; still capped
/// at 64 vertices by the bitmask representation.
pub fn enumerate_connected_sets_ungated(
    g: &Graph,
    v: usize,
    sizes: RangeInclusive<usize>,
) -> Result<Vec<VertexSet>> {
    check_anchor(g, v)?;
    let (lo, hi) = (*sizes.start(), *sizes.end());
    if lo < 1 {
        return Err(Error::Parameter("set sizes start at 1".into()));
    }
    let nbr = neighbor_masks(g)?;
    let mut out = Vec::new();
    for_each_connected_superset(&nbr, v, lo, hi.min(g.vertex_count()), &mut |mask, _, _| {
        out.push(mask_to_set(mask));
    });
    Ok(out)
}

/// What a band maximization optimizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandObjective {
    /// `|A|/|dA|^2 + 1/|dA|`
    Full,
    /// `|A|/|dA|^2` only
    AreaOverBoundarySq,
}

impl BandObjective {
    fn value(self, size: usize, boundary: usize) -> ExtReal {
        match self {
            BandObjective::Full => term_value(size, boundary),
            BandObjective::AreaOverBoundarySq => {
                if boundary == 0 {
                    ExtReal::Infinite
                } else {
                    let b = boundary as f64;
                    ExtReal::Finite(size as f64 / (b * b))
                }
            }
        }
    }
}

/// One band's maximization record.
#[derive(Clone, Debug, Serialize)]
pub struct BandTerm {
    /// Band index.
    pub n: u32,
    /// Inclusive integer size range of the band.
    pub band: (usize, usize),
    /// Maximizing set, absent when the band had no candidate set.
    pub set: Option<VertexSet>,
    /// Boundary size of the maximizing set.
    pub boundary: Option<usize>,
    pub term: ExtReal,
    /// True when no candidate existed (the band contributes 0).
    pub empty: bool,
}

fn empty_band_term(n: u32, band: (usize, usize)) -> BandTerm {
    BandTerm { n, band, set: None, boundary: None, term: ExtReal::ZERO, empty: true }
}

fn band_max_exact(
    g: &Graph,
    v: usize,
    n: u32,
    sizes: (usize, usize),
    objective: BandObjective,
) -> Result<BandTerm> {
    let nbr = neighbor_masks(g)?;
    let (lo, hi) = sizes;
    let mut best: Option<(ExtReal, u64, u32)> = None;
    for_each_connected_superset(&nbr, v, lo, hi.min(g.vertex_count()), &mut |mask, size, boundary| {
        let value = objective.value(size, boundary as usize);
        let better = match &best {
            None => true,
            Some((current, _, _)) => value > *current,
        };
        if better {
            best = Some((value, mask, boundary));
        }
    });
    Ok(match best {
        Some((term, mask, boundary)) => BandTerm {
            n,
            band: sizes,
            set: Some(mask_to_set(mask)),
            boundary: Some(boundary as usize),
            term,
            empty: false,
        },
        None => empty_band_term(n, sizes),
    })
}

/// A family of nested connected candidate sets: the prefixes of one vertex
/// ordering that starts at an anchor and stays connected. `boundary_at[s]`
/// is the external boundary size of the first `s` vertices, computed
/// incrementally in one O(edges) sweep.
#[derive(Clone, Debug)]
pub(crate) struct PrefixFamily {
    pub order: Vec<usize>,
    pub boundary_at: Vec<usize>,
    /// Prefix lengths `1..=usable` are valid connected candidates.
    pub usable: usize,
}

impl PrefixFamily {
    pub(crate) fn new(g: &Graph, order: Vec<usize>, usable: usize) -> PrefixFamily {
        let mut in_set = vec![false; g.vertex_count()];
        let mut in_boundary = vec![false; g.vertex_count()];
        let mut count = 0usize;
        let mut boundary_at = Vec::with_capacity(order.len() + 1);
        boundary_at.push(0);
        for &v in &order {
            if in_boundary[v] {
                in_boundary[v] = false;
                count -= 1;
            }
            in_set[v] = true;
            for &(x, _) in g.neighbors(v) {
                if !in_set[x] && !in_boundary[x] {
                    in_boundary[x] = true;
                    count += 1;
                }
            }
            boundary_at.push(count);
        }
        let usable = usable.min(order.len());
        PrefixFamily { order, boundary_at, usable }
    }

    pub(crate) fn members(&self, size: usize) -> Vec<usize> {
        self.order[..size].to_vec()
    }
}

/// Candidate families anchored at `anchor`: the breadth-first order from the
/// anchor and the level-set order of a battery solve from a far vertex down
/// to the anchor (exactly the sets the resistance-bound proof walks through).
pub(crate) fn prefix_families(g: &Graph, anchor: usize) -> Vec<PrefixFamily> {
    let mut out = Vec::new();
    let component = g.component_of(anchor);
    let comp_size = component.len();
    out.push(PrefixFamily::new(g, component, comp_size));

    let (far, dist) = g.farthest_from(anchor);
    if dist > 0 {
        if let Ok(profile) = solve_voltages(g, far, anchor, CANDIDATE_SOLVE_TOLERANCE) {
            let order = level_order(&profile, g);
            let usable = order.connected_prefix();
            out.push(PrefixFamily::new(g, order.order, usable));
        }
    }
    out
}

fn boundary_size_of(g: &Graph, members: &[usize]) -> usize {
    let mut in_set = vec![false; g.vertex_count()];
    for &v in members {
        in_set[v] = true;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    for &v in members {
        for &(x, _) in g.neighbors(v) {
            if !in_set[x] && !seen[x] {
                seen[x] = true;
                count += 1;
            }
        }
    }
    count
}

/// Bounded first-improvement swap search around `start`, maximizing
/// `objective` while keeping the set connected, anchored, and inside the
/// band. Deterministic.
fn local_search_max(
    g: &Graph,
    anchor: usize,
    start: Vec<usize>,
    lo: usize,
    hi: usize,
    objective: BandObjective,
) -> (Vec<usize>, ExtReal) {
    let mut current = start;
    let mut value = objective.value(current.len(), boundary_size_of(g, &current));
    if current.len() > LOCAL_SEARCH_SIZE_CAP || g.edge_record_count() > LOCAL_SEARCH_EDGE_CAP {
        return (current, value);
    }
    for _round in 0..20 {
        let set = VertexSet::new(current.iter().copied());
        let boundary = external_boundary(g, &set).expect("members validated");
        let mut improved = false;
        let mut tries = 0usize;

        let try_candidate = |members: Vec<usize>, value: &mut ExtReal, current: &mut Vec<usize>| -> bool {
            if members.len() < lo || members.len() > hi {
                return false;
            }
            let cand = VertexSet::new(members.iter().copied());
            if !cand.contains(anchor) || !is_connected_subset(g, &cand).unwrap_or(false) {
                return false;
            }
            let cand_value = objective.value(cand.len(), boundary_size_of(g, cand.members()));
            if cand_value > *value {
                *value = cand_value;
                *current = cand.members().to_vec();
                true
            } else {
                false
            }
        };

        // Grow by one boundary vertex.
        for y in boundary.iter().take(LOCAL_SEARCH_TRIES_PER_ROUND) {
            tries += 1;
            let mut grown = current.clone();
            grown.push(y);
            if try_candidate(grown, &mut value, &mut current) {
                improved = true;
                break;
            }
        }
        if improved {
            continue;
        }
        // Shrink by one member.
        for &x in set.members() {
            if x == anchor {
                continue;
            }
            tries += 1;
            if tries > LOCAL_SEARCH_TRIES_PER_ROUND {
                break;
            }
            let shrunk: Vec<usize> = current.iter().copied().filter(|&m| m != x).collect();
            if try_candidate(shrunk, &mut value, &mut current) {
                improved = true;
                break;
            }
        }
        if improved {
            continue;
        }
        // Swap a member for a boundary vertex.
        'swap: for &x in set.members() {
            if x == anchor {
                continue;
            }
            for y in boundary.iter() {
                tries += 1;
                if tries > LOCAL_SEARCH_TRIES_PER_ROUND {
                    break 'swap;
                }
                let mut swapped: Vec<usize> = current.iter().copied().filter(|&m| m != x).collect();
                swapped.push(y);
                if try_candidate(swapped, &mut value, &mut current) {
                    improved = true;
                    break 'swap;
                }
            }
        }
        if !improved {
            break;
        }
    }
    (current, value)
}

fn band_max_heuristic(
    g: &Graph,
    v: usize,
    n: u32,
    sizes: (usize, usize),
    objective: BandObjective,
    families: &[PrefixFamily],
) -> BandTerm {
    let (lo, hi) = sizes;
    let mut best: Option<(ExtReal, usize, usize)> = None; // value, family, size
    for (fi, family) in families.iter().enumerate() {
        for size in lo..=hi.min(family.usable) {
            let value = objective.value(size, family.boundary_at[size]);
            if best.map_or(true, |(b, _, _)| value > b) {
                best = Some((value, fi, size));
            }
        }
    }
    let best = best.map(|(_, fi, size)| {
        local_search_max(g, v, families[fi].members(size), lo, hi, objective)
    });
    match best {
        Some((members, term)) => {
            let boundary = boundary_size_of(g, &members);
            BandTerm {
                n,
                band: sizes,
                set: Some(VertexSet::new(members)),
                boundary: Some(boundary),
                term,
                empty: false,
            }
        }
        None => empty_band_term(n, sizes),
    }
}

/// Max of the band functional over connected sets containing `v` with size
/// in band `n`. Exact mode enumerates (gated); heuristic mode returns a
/// lower bound on the true maximum.
pub fn band_term(g: &Graph, v: usize, n: u32, mode: Mode) -> Result<BandTerm> {
    band_term_with(g, v, n, mode, BandObjective::Full, false)
}

/// As [`band_term`] with the exact-mode gate overridden.
pub fn band_term_ungated(g: &Graph, v: usize, n: u32) -> Result<BandTerm> {
    band_term_with(g, v, n, Mode::Exact, BandObjective::Full, true)
}

pub fn band_term_with(
    g: &Graph,
    v: usize,
    n: u32,
    mode: Mode,
    objective: BandObjective,
    override_gate: bool,
) -> Result<BandTerm> {
    check_anchor(g, v)?;
    let sizes = band_sizes(g.vertex_count(), n)?;
    match mode {
        Mode::Exact => {
            if !override_gate {
                check_gate(g)?;
            }
            band_max_exact(g, v, n, sizes, objective)
        }
        Mode::Heuristic => {
            let families = prefix_families(g, v);
            Ok(band_max_heuristic(g, v, n, sizes, objective, &families))
        }
    }
}

/// The isoperimetric functional: band terms and their extended-real sum.
#[derive(Clone, Debug, Serialize)]
pub struct IsoBound {
    pub v: usize,
    pub terms: Vec<BandTerm>,
    pub total: ExtReal,
    pub mode: Mode,
}

fn sum_terms(v: usize, terms: Vec<BandTerm>, mode: Mode) -> IsoBound {
    let mut total = ExtReal::ZERO;
    for t in &terms {
        total += t.term;
    }
    IsoBound { v, terms, total, mode }
}

/// `L_v`: sum of band maxima over all bands of the graph.
pub fn l_v(g: &Graph, v: usize, mode: Mode) -> Result<IsoBound> {
    l_v_with(g, v, mode, BandObjective::Full, false)
}

pub fn l_v_with(
    g: &Graph,
    v: usize,
    mode: Mode,
    objective: BandObjective,
    override_gate: bool,
) -> Result<IsoBound> {
    check_anchor(g, v)?;
    let mut terms = Vec::new();
    match mode {
        Mode::Exact => {
            for n in 1..=band_count(g.vertex_count()) {
                terms.push(band_term_with(g, v, n, mode, objective, override_gate)?);
            }
        }
        Mode::Heuristic => {
            // The candidate families (one voltage solve) are shared by all bands.
            let families = prefix_families(g, v);
            for n in 1..=band_count(g.vertex_count()) {
                let sizes = band_sizes(g.vertex_count(), n)?;
                terms.push(band_max_heuristic(g, v, n, sizes, objective, &families));
            }
        }
    }
    Ok(sum_terms(v, terms, mode))
}

/// `L_v` with every band's endpoints lowered by one. Exists to demonstrate
/// that the lowered bound fails: on a two-equal-component graph it is finite
/// while the resistance across components is infinite.
pub fn l_v_modified_band(g: &Graph, v: usize) -> Result<IsoBound> {
    check_gate(g)?;
    l_v_modified_band_ungated(g, v)
}

pub fn l_v_modified_band_ungated(g: &Graph, v: usize) -> Result<IsoBound> {
    check_anchor(g, v)?;
    let mut terms = Vec::new();
    for n in 1..=band_count(g.vertex_count()) {
        let term = match modified_band_sizes(g.vertex_count(), n)? {
            Some(sizes) => band_max_exact(g, v, n, sizes, BandObjective::Full)?,
            None => empty_band_term(n, (1, 0)),
        };
        terms.push(term);
    }
    Ok(sum_terms(v, terms, Mode::Exact))
}

/// Minimum boundary size over connected sets containing `u` with size in a
/// band, with a witness. Heuristic mode yields an upper bound on the min.
#[derive(Clone, Debug, Serialize)]
pub struct RnResult {
    pub n: u32,
    pub band: (usize, usize),
    pub value: Option<usize>,
    pub witness: Option<VertexSet>,
    pub mode: Mode,
}

pub fn r_n(g: &Graph, u: usize, n: u32, mode: Mode) -> Result<RnResult> {
    check_anchor(g, u)?;
    let sizes = band_sizes(g.vertex_count(), n)?;
    let (lo, hi) = sizes;
    match mode {
        Mode::Exact => {
            check_gate(g)?;
            let nbr = neighbor_masks(g)?;
            let mut best: Option<(u32, u64)> = None;
            for_each_connected_superset(&nbr, u, lo, hi.min(g.vertex_count()), &mut |mask, _, b| {
                if best.map_or(true, |(cur, _)| b < cur) {
                    best = Some((b, mask));
                }
            });
            Ok(RnResult {
                n,
                band: sizes,
                value: best.map(|(b, _)| b as usize),
                witness: best.map(|(_, mask)| mask_to_set(mask)),
                mode,
            })
        }
        Mode::Heuristic => {
            let families = prefix_families(g, u);
            let mut best: Option<(usize, usize, usize)> = None; // boundary, family, size
            for (fi, family) in families.iter().enumerate() {
                for size in lo..=hi.min(family.usable) {
                    let b = family.boundary_at[size];
                    if best.map_or(true, |(cur, _, _)| b < cur) {
                        best = Some((b, fi, size));
                    }
                }
            }
            Ok(RnResult {
                n,
                band: sizes,
                value: best.map(|(b, _, _)| b),
                witness: best.map(|(_, fi, size)| VertexSet::new(families[fi].members(size))),
                mode,
            })
        }
    }
}

/// Minimum boundary size per set size, over all vertex subsets (connectivity
/// not required). `min_boundary[s]` covers sizes `1..=max_size`; exact mode
/// scans all subsets of a gated graph, heuristic mode scores candidates.
#[derive(Clone, Debug)]
pub struct BoundaryProfile {
    pub max_size: usize,
    pub min_boundary: Vec<Option<usize>>,
    pub witness: Vec<Option<VertexSet>>,
    pub mode: Mode,
}

pub fn min_boundary_profile(g: &Graph, max_size: usize, mode: Mode) -> Result<BoundaryProfile> {
    let n = g.vertex_count();
    if max_size < 1 || max_size > n {
        return Err(Error::Parameter(format!("profile size bound {max_size} out of range")));
    }
    let mut min_boundary = vec![None; max_size + 1];
    let mut witness_mask: Vec<Option<u64>> = vec![None; max_size + 1];
    let mut witness: Vec<Option<VertexSet>> = vec![None; max_size + 1];
    match mode {
        Mode::Exact => {
            check_gate(g)?;
            let nbr = neighbor_masks(g)?;
            // nbr_or over all subsets by dynamic programming on the low bit.
            let mut nbr_or = vec![0u32; 1usize << n];
            for mask in 1u64..(1 << n) {
                let low = mask.trailing_zeros() as usize;
                let rest = mask & (mask - 1);
                nbr_or[mask as usize] = nbr_or[rest as usize] | nbr[low] as u32;
                let size = mask.count_ones() as usize;
                if size > max_size {
                    continue;
                }
                let boundary = (nbr_or[mask as usize] as u64 & !mask).count_ones() as usize;
                if min_boundary[size].map_or(true, |cur| boundary < cur) {
                    min_boundary[size] = Some(boundary);
                    witness_mask[size] = Some(mask);
                }
            }
            for s in 1..=max_size {
                witness[s] = witness_mask[s].map(mask_to_set);
            }
        }
        Mode::Heuristic => {
            // Anchors: a far-apart pair plus the lowest ids for coverage.
            let (a, b, _) = g.double_sweep(0);
            let mut anchors = vec![a, b, 0];
            anchors.sort_unstable();
            anchors.dedup();
            for anchor in anchors {
                for family in prefix_families(g, anchor) {
                    for size in 1..=max_size.min(family.usable) {
                        let boundary = family.boundary_at[size];
                        if min_boundary[size].map_or(true, |cur| boundary < cur) {
                            min_boundary[size] = Some(boundary);
                            witness[size] = Some(VertexSet::new(family.members(size)));
                        }
                    }
                }
            }
        }
    }
    Ok(BoundaryProfile { max_size, min_boundary, witness, mode })
}

/// Vertex Cheeger constant: `min |dS|/|S|` over `1 <= |S| <= N/2`.
/// The minimizer may be disconnected (e.g. two leaves of a star), so exact
/// mode scans all subsets.
#[derive(Clone, Debug, Serialize)]
pub struct CheegerResult {
    pub value: f64,
    pub witness: VertexSet,
    pub mode: Mode,
}

pub fn cheeger(g: &Graph, mode: Mode) -> Result<CheegerResult> {
    if g.vertex_count() < 2 {
        return Err(Error::Parameter("cheeger needs at least two vertices".into()));
    }
    if !g.is_connected() {
        return Err(Error::Parameter("cheeger requires a connected graph".into()));
    }
    let half = g.vertex_count() / 2;
    let profile = min_boundary_profile(g, half, mode)?;
    let mut best: Option<(f64, usize)> = None;
    for s in 1..=half {
        if let Some(b) = profile.min_boundary[s] {
            let ratio = b as f64 / s as f64;
            if best.map_or(true, |(cur, _)| ratio < cur) {
                best = Some((ratio, s));
            }
        }
    }
    let (value, size) = best.ok_or_else(|| Error::Parameter("no candidate set found".into()))?;
    Ok(CheegerResult {
        value,
        witness: profile.witness[size].clone().expect("witness recorded with minimum"),
        mode,
    })
}

/// Breadth-first ball sizes and boundaries around `v`, for radii
/// `0..=eccentricity(v)`. The boundary of the radius-`r` ball is exactly the
/// BFS layer at distance `r + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BallLayer {
    pub radius: usize,
    pub ball_size: usize,
    pub boundary_size: usize,
}

pub fn ball_profile(g: &Graph, v: usize) -> Result<Vec<BallLayer>> {
    check_anchor(g, v)?;
    if !g.is_connected() {
        return Err(Error::Parameter("ball profile requires a connected graph".into()));
    }
    let dist = g.bfs_distances(v);
    let ecc = dist.iter().copied().max().unwrap_or(0);
    let mut layer_sizes = vec![0usize; ecc + 2];
    for &d in &dist {
        layer_sizes[d] += 1;
    }
    let mut out = Vec::with_capacity(ecc + 1);
    let mut ball = 0;
    for r in 0..=ecc {
        ball += layer_sizes[r];
        out.push(BallLayer { radius: r, ball_size: ball, boundary_size: layer_sizes[r + 1] });
    }
    Ok(out)
}

/// BFS order from `v` (used as the deterministic ball-prefix order).
pub fn bfs_order(g: &Graph, v: usize) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen[v] = true;
    queue.push_back(v);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &(y, _) in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    order
}
