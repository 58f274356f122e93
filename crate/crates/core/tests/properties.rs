mod common;

use std::collections::BTreeSet;

use common::*;
use gctk::anti_rips::{ar_complex, ar_sweep, PointSet};
use gctk::dt::{
    dt, dt_rooted, euler_dt_dag, find_nice_edge, left_right_partition, rooted_maximal_faces, shelling_order_dt,
};
use gctk::homology::{betti, connectivity_or_empty, greedy_collapse, matches};
use gctk::independence::{
    c_graph, gen_faces_c, gen_faces_l, ind, l_graph, recursive_gen_faces, standard_fact_checks,
    verify_generating_faces,
};
use gctk::{DirectedGraph, Label, SimplicialComplex, UndirectedGraph};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn random_complex(r: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = r.gen_range(1..=7);
    let faces: Vec<Vec<String>> = (0..r.gen_range(1..=5))
        .map(|_| {
            let mut f: Vec<String> = (0..n).filter(|_| r.gen_bool(0.5)).map(|i| format!("x{i}")).collect();
            if f.is_empty() {
                f.push("x0".into());
            }
            f
        })
        .collect();
    SimplicialComplex::from_label_faces(faces).unwrap()
}

/// Digraph with a root set admitting a rooted maximal forest.
fn rooted_instance(r: &mut ChaCha8Rng) -> (DirectedGraph, Vec<String>) {
    loop {
        let n = r.gen_range(2..=6);
        let g = random_digraph(r, n, 9);
        let mut names: Vec<String> = g.vertices().iter().map(|l| l.to_string()).collect();
        names.shuffle(r);
        names.truncate(r.gen_range(1..=n.min(3)));
        let roots: Vec<&str> = names.iter().map(String::as_str).collect();
        if rooted_maximal_faces(&g, &roots).is_ok() {
            return (g, names);
        }
    }
}

fn graph_without(g: &UndirectedGraph, drop: &BTreeSet<Label>) -> UndirectedGraph {
    let drop: Vec<&str> = drop.iter().map(Label::as_str).collect();
    g.without(&drop).unwrap()
}

fn closed(g: &UndirectedGraph, vs: &[&str]) -> BTreeSet<Label> {
    vs.iter().flat_map(|v| g.neighborhood(v).unwrap()).collect()
}

fn conn(g: &UndirectedGraph) -> i64 {
    connectivity_or_empty(&ind(g).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(cases(100))]

    #[test]
    fn topological_order_iff_acyclic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let g = random_digraph(&mut r, n, 10);
        let edges: Vec<(usize, usize)> = g
            .edges()
            .map(|(a, b)| (g.vertex_index(a.as_str()).unwrap(), g.vertex_index(b.as_str()).unwrap()))
            .collect();
        // Brute force: a cycle exists iff some vertex reaches itself.
        let reach = |from: usize| {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = edges.iter().filter(|e| e.0 == from).map(|e| e.1).collect();
            while let Some(v) = stack.pop() {
                if !seen[v] {
                    seen[v] = true;
                    stack.extend(edges.iter().filter(|e| e.0 == v).map(|e| e.1));
                }
            }
            seen[from]
        };
        let cyclic = (0..n).any(reach);
        prop_assert_eq!(g.topological_order().is_ok(), !cyclic);
    }

    #[test]
    fn induced_subgraphs_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=8);
        let g = random_graph(&mut r, n, 0.4);
        let pick = |r: &mut ChaCha8Rng| -> BTreeSet<Label> { g.vertices().iter().filter(|_| r.gen_bool(0.6)).cloned().collect() };
        let (a, b) = (pick(&mut r), pick(&mut r));
        let ab: Vec<&str> = a.intersection(&b).map(Label::as_str).collect();
        let a: Vec<&str> = a.iter().map(Label::as_str).collect();
        let direct = g.induced_subgraph(&ab).unwrap();
        let nested = g.induced_subgraph(&a).unwrap().induced_subgraph(&ab).unwrap();
        prop_assert_eq!(direct.vertices(), nested.vertices());
        prop_assert_eq!(direct.edges(), nested.edges());
        for v in g.vertices() {
            prop_assert!(!g.neighborhood(v.as_str()).unwrap().contains(v));
        }
    }

    #[test]
    fn euler_matches_betti(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed));
        prop_assert_eq!(betti(&c).unwrap().euler(), c.reduced_euler().unwrap());
    }

    #[test]
    fn collapse_keeps_betti(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed));
        let out = greedy_collapse(&c).unwrap();
        prop_assert_eq!(betti(&out.remaining).unwrap(), betti(&c).unwrap());
    }

    #[test]
    fn library_betti_matches_oracle(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed));
        prop_assert_eq!(dense_betti(&library_faces(&c)), Some(betti(&c).unwrap().trimmed()));
    }

    #[test]
    fn matches_ignores_relabeling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r);
        let h = gctk::HomotopyType::sphere(r.gen_range(0..3));
        let renamed = relabel(&c, |l| format!("{}'", l.to_uppercase()));
        prop_assert_eq!(matches(&c, &h).unwrap().matches, matches(&renamed, &h).unwrap().matches);
    }

    #[test]
    fn star_collapses_to_point(seed in any::<u64>()) {
        let c = random_complex(&mut rng(seed));
        let v = c.vertices()[0].clone();
        prop_assert!(greedy_collapse(&c.star(v.as_str()).unwrap()).unwrap().is_point());
    }

    #[test]
    fn dt_maximal_faces_are_spanning(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let g = random_dag(&mut r, n, 0.5);
        prop_assume!(g.edge_count() > 0);
        let c = dt(&g).unwrap();
        let size = n - g.sources().len();
        prop_assert!(c.is_pure());
        prop_assert!(c.maximal_faces().iter().all(|f| f.count_ones() as usize == size));
        prop_assert_eq!(c.reduced_euler().unwrap(), euler_dt_dag(&g).unwrap());
    }

    #[test]
    fn dt_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let g = random_digraph(&mut r, n.max(2), 8);
        prop_assert_eq!(library_faces(&dt(&g).unwrap()), brute_forest_faces(&g));
    }

    #[test]
    fn nice_edge_is_nice(seed in any::<u64>()) {
        let (g, roots) = rooted_instance(&mut rng(seed));
        let roots: Vec<&str> = roots.iter().map(String::as_str).collect();
        if let Some(e) = find_nice_edge(&g, &roots).unwrap() {
            let c = dt_rooted(&g, &roots).unwrap();
            prop_assert!(gctk::dt::is_nice_edge(&g, &c, e).unwrap());
        }
    }

    #[test]
    fn crossing_edges_go_left_to_right(seed in any::<u64>()) {
        let (g, roots) = rooted_instance(&mut rng(seed));
        let roots: Vec<&str> = roots.iter().map(String::as_str).collect();
        let faces = rooted_maximal_faces(&g, &roots).unwrap();
        let p = left_right_partition(&g, &roots, &faces).unwrap();
        for e in p.crossing_edges(&g, &faces) {
            let (x, y) = g.edge(e);
            prop_assert!(p.is_left(x) && !p.is_left(y));
        }
    }

    #[test]
    fn shelling_order_is_shelling(seed in any::<u64>()) {
        let (g, roots) = rooted_instance(&mut rng(seed));
        let roots: Vec<&str> = roots.iter().map(String::as_str).collect();
        let c = dt_rooted(&g, &roots).unwrap();
        let order: Vec<u64> = shelling_order_dt(&g, &roots)
            .unwrap()
            .into_iter()
            .map(|f| gctk::dt::forest_mask(&c, &g, f).unwrap())
            .collect();
        prop_assert!(c.is_shelling(&order).unwrap().is_shelling());
    }

    #[test]
    fn ind_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=9);
        let g = random_graph(&mut r, n, 0.4);
        prop_assert_eq!(library_faces(&ind(&g).unwrap()), brute_ind_faces(&g));
    }

    #[test]
    fn standard_facts_hold(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=8);
        let g = random_graph(&mut r, n, 0.4);
        let v = g.vertices()[r.gen_range(0..n)].clone();
        let report = standard_fact_checks(&g, v.as_str()).unwrap();
        prop_assert!(report.checked.len() >= 6);
    }

    #[test]
    fn recursive_faces_certify(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=8);
        let g = random_forest(&mut r, n, 0.8);
        let (h, gf) = recursive_gen_faces(&g).unwrap();
        let c = ind(&g).unwrap();
        prop_assert_eq!(dense_betti(&library_faces(&c)), h.betti());
        verify_generating_faces(&c, &gf.faces).unwrap();
    }

    #[test]
    fn ar_sweep_is_antitone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let mut pts = BTreeSet::new();
        while pts.len() < n {
            pts.insert((r.gen_range(-3..=3i64), r.gen_range(-3..=3i64)));
        }
        let coords: Vec<Vec<String>> = pts.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]).collect();
        let p = PointSet::new(gctk::anti_rips::Metric::Euclidean, coords).unwrap();
        let sweep = ar_sweep(&p).unwrap();
        for pair in sweep.windows(2) {
            prop_assert!(pair[0].r_squared < pair[1].r_squared);
            prop_assert!(pair[1].complex.is_subcomplex_of(&pair[0].complex));
        }
    }

    #[test]
    fn ar_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=8);
        let mut pts = BTreeSet::new();
        while pts.len() < n {
            pts.insert((r.gen_range(0..4i64), r.gen_range(0..4i64)));
        }
        let pts: Vec<(i64, i64)> = pts.into_iter().collect();
        let p = PointSet::grid(&pts).unwrap();
        let r2: i64 = r.gen_range(0..=8);
        let c = ar_complex(&p, &BigRational::from_integer(r2.into())).unwrap();
        let far = |i: usize, j: usize| {
            let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
            dx * dx + dy * dy > r2 * r2
        };
        let brute = brute_faces(p.labels(), |m| {
            (0..n).all(|i| (i + 1..n).all(|j| m >> i & 1 == 0 || m >> j & 1 == 0 || far(i, j)))
        });
        prop_assert_eq!(library_faces(&c), brute);
    }
}

proptest! {
    #![proptest_config(cases(50))]

    // Adding an edge {v,w}: connectivity of Ind(G') and of Ind(G' minus N(v) ∪ N(w)) bound Ind(G).
    #[test]
    fn add_edge_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=8);
        let g = random_graph(&mut r, n, 0.35);
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !g.are_adjacent(i, j)).collect();
        prop_assume!(!pairs.is_empty());
        let (i, j) = *pairs.choose(&mut r).unwrap();
        let (v, w) = (g.label(i).clone(), g.label(j).clone());
        let mut edges = g.edges();
        edges.push((v.clone(), w.clone()));
        let g2 = UndirectedGraph::new(g.vertices().iter().cloned(), edges).unwrap();
        let k = conn(&g2).min(conn(&graph_without(&g2, &closed(&g, &[v.as_str(), w.as_str()]))) + 1);
        prop_assert!(conn(&g) >= k, "{}: k={k}", g.to_edge_list());
    }

    // N(u) = {v, w} with v, w non-adjacent.
    #[test]
    fn degree_two_vertex_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=9);
        let base = random_graph(&mut r, n, 0.35);
        let (u, v, w) = (base.label(0).clone(), base.label(1).clone(), base.label(2).clone());
        let mut edges: Vec<(Label, Label)> = base
            .edges()
            .into_iter()
            .filter(|(a, b)| *a != u && *b != u && !(*a == v && *b == w) && !(*a == w && *b == v))
            .collect();
        edges.push((u.clone(), v.clone()));
        edges.push((u.clone(), w.clone()));
        let g = UndirectedGraph::new(base.vertices().iter().cloned(), edges).unwrap();
        let (u, v, w) = (u.as_str(), v.as_str(), w.as_str());
        let a = conn(&graph_without(&g, &closed(&g, &[u, v])));
        let b = conn(&graph_without(&g, &closed(&g, &[u, w])));
        let c = conn(&graph_without(&g, &closed(&g, &[u, v, w])));
        let k = (a + 1).min(b + 1).min(c + 2);
        prop_assert!(conn(&g) >= k, "{}: k={k}", g.to_edge_list());
    }
}

#[test]
fn family_faces_certify() {
    for k in 2..=4 {
        for n in 1..=12 {
            let (h, gf) = gen_faces_l(n, k).unwrap();
            let c = ind(&l_graph(n, k).unwrap()).unwrap();
            assert_eq!(dense_betti(&library_faces(&c)), h.betti(), "L n={n} k={k}");
            verify_generating_faces(&c, &gf.faces).unwrap();
        }
    }
    for n in 5..=13 {
        // The adjacency hypothesis for K = {1,2} fails for some n.
        let Ok((h, gf)) = gen_faces_c(n, 3) else {
            assert!(![8, 9, 13].contains(&n), "C n={n}");
            continue;
        };
        let c = ind(&c_graph(n, 3).unwrap()).unwrap();
        assert_eq!(dense_betti(&library_faces(&c)), h.betti(), "C n={n}");
        verify_generating_faces(&c, &gf.faces).unwrap();
    }
}
