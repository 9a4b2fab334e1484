//! Property tests for the structural invariants: boundary semantics,
//! series/parallel and Rayleigh behavior of resistance, level-set order,
//! relabeling invariance of the bound, and file-format round trips.

mod common;

use proptest::prelude::*;

use ohmnet::electrical::{effective_resistance, level_order, solve_voltages};
use ohmnet::ext::ExtReal;
use ohmnet::graph::{external_boundary, is_connected_subset, read_graph, write_graph, VertexSet};
use ohmnet::iso::{self, Mode};
use ohmnet::Graph;

const TOL: f64 = 1e-10;

/// Arbitrary small multigraph: up to 8 vertices, each possible pair carrying
/// multiplicity 0 (absent) through 3.
fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=8)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(0u64..=3, pairs))
        })
        .prop_map(|(n, mults)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mults[k] > 0 {
                        edges.push((u, v, mults[k]));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).expect("generated edges are valid")
        })
}

fn connected_graph() -> impl Strategy<Value = Graph> {
    small_graph().prop_filter("connected", |g| g.is_connected())
}

fn subset_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(proptest::bool::ANY, n).prop_map(|bits| {
        bits.iter().enumerate().filter_map(|(i, &b)| b.then_some(i)).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_is_disjoint_and_adjacent((g, bits) in small_graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), subset_of(n))
    })) {
        let a = VertexSet::new(bits);
        let boundary = external_boundary(&g, &a).unwrap();
        for x in boundary.iter() {
            prop_assert!(!a.contains(x));
            prop_assert!(a.iter().any(|v| g.has_edge(v, x)));
        }
        // no boundary exactly when A is a union of whole components
        let unions_of_components = g
            .components()
            .iter()
            .all(|comp| comp.iter().all(|&v| a.contains(v)) || comp.iter().all(|&v| !a.contains(v)));
        prop_assert_eq!(boundary.is_empty(), unions_of_components || a.is_empty());
    }

    #[test]
    fn resistance_is_symmetric(g in connected_graph(), seed in 0u64..1000) {
        let n = g.vertex_count();
        let w = (seed as usize) % n;
        let u = (w + 1 + (seed as usize / n) % (n - 1)) % n;
        prop_assume!(w != u);
        let a = effective_resistance(&g, w, u, TOL).unwrap().finite().unwrap();
        let b = effective_resistance(&g, u, w, TOL).unwrap().finite().unwrap();
        prop_assert!((a - b).abs() <= 2.0 * TOL * (1.0 + a.abs()));
    }

    #[test]
    fn doubling_multiplicities_halves_resistance(g in connected_graph()) {
        let n = g.vertex_count();
        let doubled = Graph::new(
            n,
            g.edges().iter().map(|e| (e.u, e.v, e.multiplicity * 2)),
        ).unwrap();
        for (w, u) in [(0, n - 1), (0, 1)] {
            if w == u { continue; }
            let r = effective_resistance(&g, w, u, TOL).unwrap().finite().unwrap();
            let half = effective_resistance(&doubled, w, u, TOL).unwrap().finite().unwrap();
            prop_assert!((half - r / 2.0).abs() <= 2.0 * TOL * (1.0 + r));
        }
    }

    #[test]
    fn rayleigh_monotonicity_under_edge_deletion(g in connected_graph()) {
        let n = g.vertex_count();
        let (w, u) = (0, n - 1);
        let base = effective_resistance(&g, w, u, TOL).unwrap();
        for skip in 0..g.edge_record_count() {
            let edges: Vec<_> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, e)| (e.u, e.v, e.multiplicity))
                .collect();
            let cut = Graph::new(n, edges).unwrap();
            let r = effective_resistance(&cut, w, u, TOL).unwrap();
            // deleting never decreases resistance (up to solver tolerance)
            match (base, r) {
                (ExtReal::Finite(b), ExtReal::Finite(c)) => {
                    prop_assert!(c >= b - 1e-8 * (1.0 + b.abs()), "{c} < {b}")
                }
                (ExtReal::Infinite, ExtReal::Finite(_)) => prop_assert!(false, "resistance dropped from inf"),
                _ => {}
            }
        }
    }

    #[test]
    fn triangle_inequality_on_sampled_triples(g in connected_graph(), seed in 0u64..1000) {
        let n = g.vertex_count();
        prop_assume!(n >= 3);
        let a = (seed as usize) % n;
        let b = (a + 1 + (seed as usize / 7) % (n - 1)) % n;
        let c = (b + 1 + (seed as usize / 49) % (n - 1)) % n;
        prop_assume!(a != b && b != c && a != c);
        let r = |x, y| effective_resistance(&g, x, y, TOL).unwrap().finite().unwrap();
        prop_assert!(r(a, c) <= r(a, b) + r(b, c) + 4.0 * TOL);
    }

    #[test]
    fn level_sets_nest_and_theta_is_monotone(g in connected_graph()) {
        let n = g.vertex_count();
        let profile = solve_voltages(&g, 0, n - 1, TOL).unwrap();
        let order = level_order(&profile, &g);
        prop_assert!(order.anomalies.is_empty());
        prop_assert_eq!(order.order[0], n - 1);
        prop_assert_eq!(order.theta[0], 0.0);
        for m in 1..=n {
            let set = VertexSet::new(order.order[..m].iter().copied());
            prop_assert!(is_connected_subset(&g, &set).unwrap());
            if m >= 2 {
                prop_assert!(order.theta[m - 1] >= order.theta[m - 2]);
            }
        }
    }

    #[test]
    fn l_v_is_invariant_under_relabeling(g in connected_graph(), seed in 0u64..1000) {
        let n = g.vertex_count();
        // a deterministic permutation from the seed
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s as usize) % (i + 1));
        }
        let relabeled = Graph::new(
            n,
            g.edges().iter().map(|e| (perm[e.u], perm[e.v], e.multiplicity)),
        ).unwrap();
        for v in 0..n {
            let original = iso::l_v(&g, v, Mode::Exact).unwrap().total;
            let mapped = iso::l_v(&relabeled, perm[v], Mode::Exact).unwrap().total;
            match (original, mapped) {
                (ExtReal::Finite(a), ExtReal::Finite(b)) => prop_assert!((a - b).abs() < 1e-12),
                (a, b) => prop_assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn graph_files_round_trip(g in small_graph()) {
        let text = write_graph(&g);
        let back = read_graph(&text).unwrap();
        prop_assert_eq!(back, g.clone());
        // canonical: re-serialization is identical
        prop_assert_eq!(write_graph(&read_graph(&text).unwrap()), text);
    }
}

#[test]
fn triangle_inequality_exhaustive_on_small_corpus() {
    for (family, g) in common::corpus_up_to(8) {
        let n = g.vertex_count();
        let mut r = vec![vec![0.0f64; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                let v = effective_resistance(&g, a, b, TOL).unwrap().finite().unwrap();
                r[a][b] = v;
                r[b][a] = v;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    assert!(
                        r[a][c] <= r[a][b] + r[b][c] + 4.0 * TOL,
                        "{family}: R({a},{c}) > R({a},{b}) + R({b},{c})"
                    );
                }
            }
        }
    }
}

#[test]
fn adding_an_edge_never_increases_commute_time() {
    // via the identity commute = |G| R plus Rayleigh monotonicity, checked
    // directly on the walk solver
    for (family, g) in common::corpus_up_to(8) {
        let n = g.vertex_count();
        let mut added = false;
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(u, v) {
                    continue;
                }
                let mut edges: Vec<_> =
                    g.edges().iter().map(|e| (e.u, e.v, e.multiplicity)).collect();
                edges.push((u, v, 1));
                let denser = Graph::new(n, edges).unwrap();
                let before = ohmnet::walks::commute_time(&g, u, v, TOL).unwrap();
                let after = ohmnet::walks::commute_time(&denser, u, v, TOL)
                    .unwrap()
                    .finite()
                    .unwrap();
                match before {
                    ExtReal::Finite(b) => {
                        assert!(after <= b + 1e-6, "{family} ({u},{v}): {after} > {b}")
                    }
                    ExtReal::Infinite => {}
                }
                added = true;
            }
        }
        let _ = added;
    }
}

#[test]
fn rayleigh_exhaustive_on_small_corpus() {
    // Exhaustive edge deletion over every corpus graph with at most 8
    // vertices and every far pair.
    for (family, g) in common::corpus_up_to(8) {
        let n = g.vertex_count();
        for w in 0..n.min(3) {
            for u in (w + 1..n).take(3) {
                let base = effective_resistance(&g, w, u, TOL).unwrap();
                for skip in 0..g.edge_record_count() {
                    let edges: Vec<_> = g
                        .edges()
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, e)| (e.u, e.v, e.multiplicity))
                        .collect();
                    let cut = Graph::new(n, edges).unwrap();
                    let r = effective_resistance(&cut, w, u, TOL).unwrap();
                    match (base, r) {
                        (ExtReal::Finite(b), ExtReal::Finite(c)) => {
                            assert!(c >= b - 1e-8, "{family} ({w},{u}): {c} < {b}")
                        }
                        (ExtReal::Infinite, ExtReal::Finite(_)) => {
                            panic!("{family}: deletion decreased resistance from inf")
                        }
                        _ => {}
                    }
                }
            }
        }
    }
}

#[test]
fn layered_solve_matches_rational_layer_oracle() {
    // The layered example is symmetric within layers, so the battery problem
    // reduces to one unknown per interior layer. Solve that 3x3 system in
    // exact rational arithmetic and compare the full solve against it.
    use common::{rational_to_f64, ratio, solve_rational};
    use num_rational::BigRational;
    use num_traits::One;

    for n in [2usize, 4] {
        let g = ohmnet::graph::FamilySpec::LayeredExample(n).generate().unwrap();
        let (a, b) = ohmnet::graph::layered_example_poles(n);
        let profile = solve_voltages(&g, a, b, TOL).unwrap();

        let c12 = ratio(n as u64);
        let c23 = ratio(2 * (n * n * n) as u64);
        let zero = BigRational::from_integer(0.into());
        let matrix = vec![
            vec![&c12 + &c23, -&c23, zero.clone()],
            vec![-&c23, &c23 + &c23, -&c23],
            vec![zero, -&c23, &c23 + &c12],
        ];
        let rhs = vec![c12.clone(), BigRational::from_integer(0.into()), BigRational::from_integer(0.into())];
        let volts = solve_rational(matrix, rhs);
        let current = rational_to_f64(&(&c12 * (BigRational::one() - &volts[0])));
        assert!((profile.current - current).abs() <= 1e-8 * current, "n={n}: {} vs {current}", profile.current);

        // layer voltages: vertices 1..=n are A_2, then 2n^2 of A_3, then A_4
        let v2 = rational_to_f64(&volts[0]);
        let v3 = rational_to_f64(&volts[1]);
        let v4 = rational_to_f64(&volts[2]);
        for x in 1..=n {
            assert!((profile.voltages[x] - v2).abs() < 1e-8);
        }
        for x in n + 1..n + 1 + 2 * n * n {
            assert!((profile.voltages[x] - v3).abs() < 1e-8);
        }
        for x in n + 1 + 2 * n * n..n + 1 + 2 * n * n + n {
            assert!((profile.voltages[x] - v4).abs() < 1e-8);
        }

        // closed form cross-check: R = 2/n + 1/n^3
        let r_expected = 2.0 / n as f64 + 1.0 / (n * n * n) as f64;
        assert!((1.0 / profile.current - r_expected).abs() < 1e-9);
    }
}

#[test]
fn layered_boundary_currents_split_by_symmetry() {
    // A = A_4 union A_5 has boundary exactly A_3; by symmetry each of the
    // 2n^2 boundary vertices carries I / (2n^2).
    use ohmnet::electrical::vertex_current;
    let n = 2usize;
    let g = ohmnet::graph::FamilySpec::LayeredExample(n).generate().unwrap();
    let (a, b) = ohmnet::graph::layered_example_poles(n);
    let profile = solve_voltages(&g, a, b, TOL).unwrap();
    let a4_and_a5: Vec<usize> = (n + 1 + 2 * n * n..2 * n * n + 2 * n + 2).collect();
    let set = VertexSet::new(a4_and_a5);
    let boundary = external_boundary(&g, &set).unwrap();
    assert_eq!(boundary.len(), 2 * n * n);
    let share = profile.current / (2 * n * n) as f64;
    let mut total = 0.0;
    for v in boundary.iter() {
        let c = vertex_current(&profile, &g, v, &set).unwrap();
        assert!((c - share).abs() < 1e-9, "vertex {v}: {c} vs {share}");
        total += c;
    }
    assert!((total - profile.current).abs() < 1e-8);
}

#[test]
fn exact_band_terms_match_full_subset_brute_force() {
    for (family, g) in common::corpus_up_to(10) {
        for v in 0..g.vertex_count() {
            for band in 1..=iso::band_count(g.vertex_count()) {
                let t = iso::band_term(&g, v, band, Mode::Exact).unwrap();
                let brute = common::brute_force_band_max(&g, v, t.band.0, t.band.1);
                assert_eq!(Some(t.term), brute, "{family} v={v} band={band}");
            }
        }
    }
}
