//! Finite weighted multigraphs.
//!
//! Parallel edges are stored as one record per unordered pair with an integer
//! multiplicity. That keeps the two readings of an edge bundle separate by
//! construction: boundary and adjacency ignore multiplicity, conductance and
//! jump rates use it. Self-loops are rejected; they carry no current.

use std::collections::VecDeque;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::{Error, Result};

mod generate;
mod io;

pub use generate::{layered_example_poles, FamilySpec};
pub use io::{read_graph, write_graph};

/// One edge record: `multiplicity` parallel unit resistors between `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub multiplicity: u64,
}

/// Immutable multigraph on vertices `0..vertex_count`.
#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, u64)>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Build a graph from edge triples `(u, v, multiplicity)`.
    ///
    /// Rejects self-loops, out-of-range ids, zero multiplicities and
    /// duplicate unordered pairs. Edge records are canonicalized to
    /// `u < v` and sorted.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Graph> {
        let mut records = Vec::new();
        for (u, v, m) in edges {
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Parameter(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
            if m == 0 {
                return Err(Error::Parameter(format!("edge ({u},{v}) has zero multiplicity")));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            records.push(Edge { u: a, v: b, multiplicity: m });
        }
        records.sort_by_key(|e| (e.u, e.v));
        for w in records.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(Error::Parameter(format!(
                    "duplicate edge pair ({},{}); encode parallel edges as multiplicity",
                    w[0].u, w[0].v
                )));
            }
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for e in &records {
            adj[e.u].push((e.v, e.multiplicity));
            adj[e.v].push((e.u, e.multiplicity));
        }
        for list in &mut adj {
            list.sort_by_key(|&(x, _)| x);
        }
        Ok(Graph { vertex_count, edges: records, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edge records in canonical `(u, v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_record_count(&self) -> usize {
        self.edges.len()
    }

    /// Sum of all multiplicities (number of unit resistors).
    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    /// Neighbors of `v` with multiplicities, ascending by neighbor id.
    pub fn neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.adj[v]
    }

    /// Number of distinct neighbors.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Multiplicity-weighted degree (total conductance at `v`).
    pub fn weighted_degree(&self, v: usize) -> u64 {
        self.adj[v].iter().map(|&(_, m)| m).sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        match self.adj[u].binary_search_by_key(&v, |&(x, _)| x) {
            Ok(i) => self.adj[u][i].1,
            Err(_) => 0,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.multiplicity(u, v) > 0
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::Parameter(format!(
                "vertex {v} out of range for {} vertices",
                self.vertex_count
            )));
        }
        Ok(())
    }

    /// BFS distances from `start`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, start: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        let mut queue = VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Vertices of the connected component containing `start`, in BFS order.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        order
    }

    /// All connected components, each sorted, ordered by minimum vertex id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in 0..self.vertex_count {
            if !seen[s] {
                let mut comp = self.component_of(s);
                for &x in &comp {
                    seen[x] = true;
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.component_of(0).len() == self.vertex_count
    }

    /// Farthest vertex from `start` within its component (ties: smallest id),
    /// together with the distance.
    pub fn farthest_from(&self, start: usize) -> (usize, usize) {
        let dist = self.bfs_distances(start);
        let mut best = (start, 0);
        for (v, &d) in dist.iter().enumerate() {
            if d != usize::MAX && d > best.1 {
                best = (v, d);
            }
        }
        best
    }

    /// Double-sweep BFS: a far-apart pair and a lower bound on the diameter
    /// of `start`'s component.
    pub fn double_sweep(&self, start: usize) -> (usize, usize, usize) {
        let (a, _) = self.farthest_from(start);
        let (b, d) = self.farthest_from(a);
        (a, b, d)
    }

    /// Exact diameter via one BFS per vertex. Errors on disconnected graphs.
    pub fn diameter(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Parameter("diameter of a disconnected graph".into()));
        }
        let mut best = 0;
        for v in 0..self.vertex_count {
            let (_, d) = self.farthest_from(v);
            best = best.max(d);
        }
        Ok(best)
    }
}

/// A set of vertices, stored sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> VertexSet {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn empty() -> VertexSet {
        VertexSet { members: Vec::new() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::new(iter)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.members.len()))?;
        for v in &self.members {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// External boundary of `a`: vertices outside `a` with at least one neighbor
/// inside. Multiplicities play no role.
pub fn external_boundary(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    for v in a.iter() {
        g.check_vertex(v)?;
    }
    let mut in_a = vec![false; g.vertex_count()];
    for v in a.iter() {
        in_a[v] = true;
    }
    let mut boundary = Vec::new();
    let mut seen = vec![false; g.vertex_count()];
    for v in a.iter() {
        for &(x, _) in g.neighbors(v) {
            if !in_a[x] && !seen[x] {
                seen[x] = true;
                boundary.push(x);
            }
        }
    }
    boundary.sort_unstable();
    Ok(VertexSet { members: boundary })
}

/// Is the subgraph induced on `a` connected? The empty set is not connected;
/// a singleton is.
pub fn is_connected_subset(g: &Graph, a: &VertexSet) -> Result<bool> {
    for v in a.iter() {
        g.check_vertex(v)?;
    }
    if a.is_empty() {
        return Ok(false);
    }
    let mut in_a = vec![false; g.vertex_count()];
    for v in a.iter() {
        in_a[v] = true;
    }
    let start = a.members()[0];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        for &(y, _) in g.neighbors(x) {
            if in_a[y] && !seen[y] {
                seen[y] = true;
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    Ok(reached == a.len())
}
