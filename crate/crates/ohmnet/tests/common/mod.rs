//! Shared test oracles, independent of the library's solver and enumeration
//! paths: exact rational Gaussian elimination for resistances and a
//! full-subset brute force for band maxima.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use ohmnet::ext::ExtReal;
use ohmnet::graph::VertexSet;
use ohmnet::Graph;

pub fn ratio(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Solve `A x = b` exactly by Gaussian elimination over the rationals.
pub fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("oracle systems are nonsingular");
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let t = &factor * &a[col][k];
                a[row][k] -= t;
            }
            let t = &factor * &b[col];
            b[row] -= t;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for col in (0..n).rev() {
        let mut acc = b[col].clone();
        for k in col + 1..n {
            let t = &a[col][k] * &x[k];
            acc -= t;
        }
        x[col] = acc / &a[col][col];
    }
    x
}

/// Exact effective resistance by rational elimination on the pinned-battery
/// system; `None` across components.
pub fn rational_resistance(g: &Graph, w: usize, u: usize) -> Option<BigRational> {
    let comp = g.component_of(w);
    if !comp.contains(&u) {
        return None;
    }
    let interior: Vec<usize> = comp.iter().copied().filter(|&v| v != w && v != u).collect();
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in interior.iter().enumerate() {
        index[v] = i;
    }
    let n = interior.len();
    let mut a = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for (i, &v) in interior.iter().enumerate() {
        a[i][i] = ratio(g.weighted_degree(v));
        for &(x, m) in g.neighbors(v) {
            if index[x] != usize::MAX {
                a[i][index[x]] -= ratio(m);
            }
            if x == w {
                b[i] += ratio(m);
            }
        }
    }
    let volts = solve_rational(a, b);
    let mut current = BigRational::zero();
    for &(x, m) in g.neighbors(w) {
        let vx = if x == u {
            BigRational::zero()
        } else {
            volts[index[x]].clone()
        };
        current += ratio(m) * (BigRational::one() - vx);
    }
    Some(BigRational::one() / current)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("oracle values fit in f64")
}

pub fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Connected corpus graphs with at most `max_vertices` vertices.
pub fn corpus_up_to(max_vertices: usize) -> Vec<(String, Graph)> {
    ohmnet::experiments::exact_corpus(9)
        .into_iter()
        .filter(|(_, g)| g.vertex_count() <= max_vertices)
        .collect()
}

/// Brute-force connectivity over an explicit membership mask.
pub fn mask_connected(g: &Graph, mask: u32) -> bool {
    let n = g.vertex_count();
    let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
    if members.is_empty() {
        return false;
    }
    let mut reached = 1u32 << members[0];
    loop {
        let mut grew = false;
        for &v in &members {
            if reached >> v & 1 == 1 {
                continue;
            }
            if g.neighbors(v).iter().any(|&(x, _)| reached >> x & 1 == 1) {
                reached |= 1 << v;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    reached.count_ones() as usize == members.len()
}

pub fn mask_boundary_size(g: &Graph, mask: u32) -> usize {
    let n = g.vertex_count();
    (0..n)
        .filter(|&x| mask >> x & 1 == 0 && g.neighbors(x).iter().any(|&(y, _)| mask >> y & 1 == 1))
        .count()
}

/// Full-subset brute force for one band maximum of `|A|/|dA|^2 + 1/|dA|`
/// over connected sets containing `v` with size in `lo..=hi`.
pub fn brute_force_band_max(g: &Graph, v: usize, lo: usize, hi: usize) -> Option<ExtReal> {
    let n = g.vertex_count();
    assert!(n <= 20, "brute force is exponential");
    let mut best: Option<ExtReal> = None;
    for mask in 1u32..(1 << n) {
        if mask >> v & 1 == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size < lo || size > hi || !mask_connected(g, mask) {
            continue;
        }
        let boundary = mask_boundary_size(g, mask);
        let term = if boundary == 0 {
            ExtReal::Infinite
        } else {
            let b = boundary as f64;
            ExtReal::Finite(size as f64 / (b * b) + 1.0 / b)
        };
        if best.map_or(true, |cur| term > cur) {
            best = Some(term);
        }
    }
    best
}

/// Brute-force minimum boundary over connected sets containing `u` with size
/// in `lo..=hi`.
pub fn brute_force_rn(g: &Graph, u: usize, lo: usize, hi: usize) -> Option<usize> {
    let n = g.vertex_count();
    assert!(n <= 20);
    let mut best: Option<usize> = None;
    for mask in 1u32..(1 << n) {
        if mask >> u & 1 == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        if size < lo || size > hi || !mask_connected(g, mask) {
            continue;
        }
        let boundary = mask_boundary_size(g, mask);
        if best.map_or(true, |cur| boundary < cur) {
            best = Some(boundary);
        }
    }
    best
}

pub fn set_of(members: &[usize]) -> VertexSet {
    VertexSet::new(members.iter().copied())
}
