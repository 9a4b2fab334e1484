//! Text format for graphs.
//!
//! First line `V E` (vertex count, edge-record count), then `E` lines
//! `u v m` with `0 <= u < v < V` and `m >= 1`. Lines starting with `#`
//! are comments. The writer emits records sorted by `(u, v)`, so
//! `write(read(t))` is a canonical re-serialization of `t`.

use std::fmt::Write as _;

use crate::{Error, Graph, Result};

pub fn read_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, msg: "missing header line".into() })?;
    let mut parts = header.split_whitespace();
    let v: usize = parse_field(parts.next(), line_no, "vertex count")?;
    let e: usize = parse_field(parts.next(), line_no, "edge count")?;
    if parts.next().is_some() {
        return Err(Error::Parse { line: line_no, msg: "header has trailing fields".into() });
    }

    let mut edges = Vec::with_capacity(e);
    for _ in 0..e {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("expected {e} edge lines") })?;
        let mut parts = line.split_whitespace();
        let u: usize = parse_field(parts.next(), line_no, "u")?;
        let w: usize = parse_field(parts.next(), line_no, "v")?;
        let m: u64 = parse_field(parts.next(), line_no, "multiplicity")?;
        if parts.next().is_some() {
            return Err(Error::Parse { line: line_no, msg: "edge line has trailing fields".into() });
        }
        if u == w {
            return Err(Error::Parse { line: line_no, msg: format!("self-loop at vertex {u}") });
        }
        if u > w {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("edge ({u},{w}) not in canonical u < v order"),
            });
        }
        if w >= v {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("vertex {w} out of range for {v} vertices"),
            });
        }
        if m == 0 {
            return Err(Error::Parse { line: line_no, msg: "multiplicity must be >= 1".into() });
        }
        edges.push((u, w, m, line_no));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse { line: line_no, msg: "unexpected content after edge lines".into() });
    }

    let mut sorted = edges.clone();
    sorted.sort_by_key(|&(u, w, _, _)| (u, w));
    for pair in sorted.windows(2) {
        if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
            return Err(Error::Parse {
                line: pair[1].3,
                msg: format!("duplicate edge pair ({},{})", pair[1].0, pair[1].1),
            });
        }
    }

    Graph::new(v, edges.into_iter().map(|(u, w, m, _)| (u, w, m)))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_record_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.multiplicity);
    }
    out
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    let raw = field.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    raw.parse()
        .map_err(|_| Error::Parse { line, msg: format!("bad {what}: {raw:?}") })
}
