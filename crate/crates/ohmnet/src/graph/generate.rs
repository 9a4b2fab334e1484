//! Generators for the graph families used throughout the crate.
//!
//! Vertex labelings are documented per family: grids and tori are row-major,
//! hypercube vertices are bitstrings, the layered example is labeled layer by
//! layer. Family specs have a textual form `name:args` with comma-separated
//! integer arguments, e.g. `circulant:16,1,3`; a disjoint union joins two
//! specs with `+`, e.g. `disjoint_union:complete:4+complete:4`.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Graph, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// n-by-n square grid, row-major labels.
    Grid2d(usize),
    /// n-by-n torus, row-major labels.
    Torus2d(usize),
    /// d-dimensional hypercube, bitstring labels.
    Hypercube(usize),
    Circulant(usize, Vec<usize>),
    /// n vertices: center 0 and n-1 leaves.
    Star(usize),
    /// Five layers of sizes 1, n, 2n^2, n, 1 with consecutive layers
    /// completely joined; 2n^2+2n+2 vertices in total.
    LayeredExample(usize),
    /// n-cycle where every edge has multiplicity ceil(n^(2/3)).
    MultiEdgeCycle(usize),
    DisjointUnion(Box<FamilySpec>, Box<FamilySpec>),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Grid2d(n) => write!(f, "grid2d:{n}"),
            FamilySpec::Torus2d(n) => write!(f, "torus2d:{n}"),
            FamilySpec::Hypercube(d) => write!(f, "hypercube:{d}"),
            FamilySpec::Circulant(n, steps) => {
                write!(f, "circulant:{n}")?;
                for s in steps {
                    write!(f, ",{s}")?;
                }
                Ok(())
            }
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::LayeredExample(n) => write!(f, "layered_example:{n}"),
            FamilySpec::MultiEdgeCycle(n) => write!(f, "multi_edge_cycle:{n}"),
            FamilySpec::DisjointUnion(a, b) => write!(f, "disjoint_union:{a}+{b}"),
        }
    }
}

impl FamilySpec {
    /// Parse the textual spec grammar.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let text = text.trim();
        let (name, rest) = match text.split_once(':') {
            Some((n, r)) => (n, r),
            None => (text, ""),
        };
        let ints = |rest: &str| -> Result<Vec<usize>> {
            if rest.is_empty() {
                return Ok(Vec::new());
            }
            rest.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parameter(format!("bad integer {p:?} in family spec {text:?}")))
                })
                .collect()
        };
        let one = |rest: &str| -> Result<usize> {
            let v = ints(rest)?;
            if v.len() != 1 {
                return Err(Error::Parameter(format!(
                    "family spec {text:?} takes exactly one integer argument"
                )));
            }
            Ok(v[0])
        };
        match name {
            "path" => Ok(FamilySpec::Path(one(rest)?)),
            "cycle" => Ok(FamilySpec::Cycle(one(rest)?)),
            "complete" => Ok(FamilySpec::Complete(one(rest)?)),
            "grid2d" => Ok(FamilySpec::Grid2d(one(rest)?)),
            "torus2d" => Ok(FamilySpec::Torus2d(one(rest)?)),
            "hypercube" => Ok(FamilySpec::Hypercube(one(rest)?)),
            "star" => Ok(FamilySpec::Star(one(rest)?)),
            "layered_example" => Ok(FamilySpec::LayeredExample(one(rest)?)),
            "multi_edge_cycle" => Ok(FamilySpec::MultiEdgeCycle(one(rest)?)),
            "circulant" => {
                let v = ints(rest)?;
                if v.len() < 2 {
                    return Err(Error::Parameter(
                        "circulant needs a size and at least one step, e.g. circulant:16,1,3".into(),
                    ));
                }
                Ok(FamilySpec::Circulant(v[0], v[1..].to_vec()))
            }
            "disjoint_union" => {
                let (a, b) = rest.split_once('+').ok_or_else(|| {
                    Error::Parameter(
                        "disjoint_union takes two specs joined by '+', e.g. disjoint_union:complete:4+complete:4"
                            .into(),
                    )
                })?;
                Ok(FamilySpec::DisjointUnion(
                    Box::new(FamilySpec::parse(a)?),
                    Box::new(FamilySpec::parse(b)?),
                ))
            }
            other => Err(Error::Parameter(format!("unknown graph family {other:?}"))),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        generate(self)
    }
}

/// `ceil(n^(2/3))` computed without floating-point boundary surprises.
pub(crate) fn ceil_two_thirds_power(n: usize) -> u64 {
    let cube = (n as u128) * (n as u128);
    // smallest k with k^3 >= n^2
    let mut k = ((n as f64).powf(2.0 / 3.0).ceil()) as u128;
    while k > 0 && (k - 1) * (k - 1) * (k - 1) >= cube {
        k -= 1;
    }
    while k * k * k < cube {
        k += 1;
    }
    k as u64
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Path(n) => {
            require(*n >= 1, "path requires n >= 1")?;
            Graph::new(*n, (1..*n).map(|i| (i - 1, i, 1)))
        }
        FamilySpec::Cycle(n) => {
            require(*n >= 3, "cycle requires n >= 3")?;
            Graph::new(*n, (0..*n).map(|i| (i, (i + 1) % n, 1)))
        }
        FamilySpec::Complete(n) => {
            require(*n >= 1, "complete requires n >= 1")?;
            let mut edges = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    edges.push((u, v, 1));
                }
            }
            Graph::new(*n, edges)
        }
        FamilySpec::Grid2d(n) => {
            require(*n >= 1, "grid2d requires n >= 1")?;
            let n = *n;
            let mut edges = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    let v = r * n + c;
                    if c + 1 < n {
                        edges.push((v, v + 1, 1));
                    }
                    if r + 1 < n {
                        edges.push((v, v + n, 1));
                    }
                }
            }
            Graph::new(n * n, edges)
        }
        FamilySpec::Torus2d(n) => {
            require(*n >= 3, "torus2d requires n >= 3 (smaller sizes create parallel pairs)")?;
            let n = *n;
            let mut edges = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    let v = r * n + c;
                    edges.push((v, r * n + (c + 1) % n, 1));
                    edges.push((v, ((r + 1) % n) * n + c, 1));
                }
            }
            Graph::new(n * n, edges)
        }
        FamilySpec::Hypercube(d) => {
            require(*d >= 1 && *d <= 24, "hypercube requires 1 <= d <= 24")?;
            let n = 1usize << d;
            let mut edges = Vec::new();
            for v in 0..n {
                for bit in 0..*d {
                    let w = v ^ (1 << bit);
                    if v < w {
                        edges.push((v, w, 1));
                    }
                }
            }
            Graph::new(n, edges)
        }
        FamilySpec::Circulant(n, steps) => {
            require(*n >= 3, "circulant requires n >= 3")?;
            require(!steps.is_empty(), "circulant requires at least one step")?;
            let mut canonical = BTreeSet::new();
            for &s in steps {
                let s = s % n;
                if s == 0 {
                    return Err(Error::Parameter(format!(
                        "circulant step 0 (mod {n}) would be a self-loop"
                    )));
                }
                canonical.insert(s.min(n - s));
            }
            let mut pairs = BTreeSet::new();
            for i in 0..*n {
                for &s in &canonical {
                    let j = (i + s) % n;
                    pairs.insert((i.min(j), i.max(j)));
                }
            }
            Graph::new(*n, pairs.into_iter().map(|(u, v)| (u, v, 1)))
        }
        FamilySpec::Star(n) => {
            require(*n >= 1, "star requires n >= 1")?;
            Graph::new(*n, (1..*n).map(|leaf| (0, leaf, 1)))
        }
        FamilySpec::LayeredExample(n) => {
            require(*n >= 1, "layered_example requires n >= 1")?;
            let n = *n;
            // Layers: [a] [n] [2n^2] [n] [b], consecutive layers completely joined.
            let l1 = vec![0];
            let l2: Vec<usize> = (1..=n).collect();
            let l3: Vec<usize> = (n + 1..n + 1 + 2 * n * n).collect();
            let l4: Vec<usize> = (n + 1 + 2 * n * n..n + 1 + 2 * n * n + n).collect();
            let l5 = vec![2 * n * n + 2 * n + 1];
            let total = 2 * n * n + 2 * n + 2;
            let mut edges = Vec::new();
            for (a, b) in [(&l1, &l2), (&l2, &l3), (&l3, &l4), (&l4, &l5)] {
                for &x in a {
                    for &y in b {
                        edges.push((x, y, 1));
                    }
                }
            }
            Graph::new(total, edges)
        }
        FamilySpec::MultiEdgeCycle(n) => {
            require(*n >= 3, "multi_edge_cycle requires n >= 3")?;
            let m = ceil_two_thirds_power(*n);
            Graph::new(*n, (0..*n).map(|i| (i, (i + 1) % n, m)))
        }
        FamilySpec::DisjointUnion(a, b) => {
            let ga = generate(a)?;
            let gb = generate(b)?;
            let offset = ga.vertex_count();
            let edges = ga
                .edges()
                .iter()
                .map(|e| (e.u, e.v, e.multiplicity))
                .chain(gb.edges().iter().map(|e| (e.u + offset, e.v + offset, e.multiplicity)));
            Graph::new(offset + gb.vertex_count(), edges)
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Parameter(msg.into()))
    }
}

/// Anchor vertices of the layered example: the two single-vertex layers.
pub fn layered_example_poles(n: usize) -> (usize, usize) {
    (0, 2 * n * n + 2 * n + 1)
}
