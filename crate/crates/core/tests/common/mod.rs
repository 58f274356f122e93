//! Seeded instance generators and brute-force oracles shared by the
//! integration tests. Nothing here calls into the library's enumeration or
//! homology code, so agreement is a real cross-check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use gctk::{DirectedGraph, Label, SimplicialComplex, UndirectedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// DAG on `n` vertices: each pair i < j of a random permutation gets an
/// edge with probability `p`, oriented along the permutation.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DirectedGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let v = names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((v[order[i]].clone(), v[order[j]].clone()));
            }
        }
    }
    DirectedGraph::new(v, edges).unwrap()
}

/// Every labeled DAG on `n` vertices: each unordered pair is absent or
/// oriented either way, keeping the acyclic ones.
pub fn all_dags(n: usize) -> Vec<DirectedGraph> {
    let v = names(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut edges = Vec::new();
        for &(i, j) in &pairs {
            match code % 3 {
                1 => edges.push((v[i].clone(), v[j].clone())),
                2 => edges.push((v[j].clone(), v[i].clone())),
                _ => {}
            }
            code /= 3;
        }
        let g = DirectedGraph::new(v.clone(), edges).unwrap();
        if g.is_acyclic() {
            out.push(g);
        }
    }
    out
}

/// Arbitrary digraph (cycles and 2-cycles allowed) with at most `max_edges` edges.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> DirectedGraph {
    let v = names(n);
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    all.shuffle(rng);
    let m = rng.gen_range(1..=max_edges.min(all.len()));
    let edges = all[..m].iter().map(|&(i, j)| (v[i].clone(), v[j].clone()));
    DirectedGraph::new(v.clone(), edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> UndirectedGraph {
    let v = names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((v[i].clone(), v[j].clone()));
            }
        }
    }
    UndirectedGraph::new(v, edges).unwrap()
}

/// Random forest: each vertex after the first joins an earlier one with probability `p`.
pub fn random_forest(rng: &mut ChaCha8Rng, n: usize, p: f64) -> UndirectedGraph {
    let v = names(n);
    let mut edges = Vec::new();
    for i in 1..n {
        if rng.gen_bool(p) {
            let j = rng.gen_range(0..i);
            edges.push((v[j].clone(), v[i].clone()));
        }
    }
    UndirectedGraph::new(v, edges).unwrap()
}

/// Edge list `(i, j)` by vertex position, in the graph's own vertex order.
pub fn undirected_edges(g: &UndirectedGraph) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .map(|(a, b)| (g.vertex_index(a.as_str()).unwrap(), g.vertex_index(b.as_str()).unwrap()))
        .collect()
}

/// All nonempty subsets of `0..n` accepted by `is_face`, as sorted label lists.
pub fn brute_faces(labels: &[Label], is_face: impl Fn(u64) -> bool) -> BTreeSet<Vec<Label>> {
    let n = labels.len();
    assert!(n <= 20, "brute force limited to 20 vertices");
    (1u64..1 << n)
        .filter(|&m| is_face(m))
        .map(|m| {
            let mut f: Vec<Label> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| labels[i].clone()).collect();
            f.sort();
            f
        })
        .collect()
}

/// Every nonempty face of a complex, as sorted label lists.
pub fn library_faces(c: &SimplicialComplex) -> BTreeSet<Vec<Label>> {
    let mut out = BTreeSet::new();
    for group in c.all_faces().unwrap() {
        for m in group {
            let mut f = c.labels_of(m);
            f.sort();
            out.insert(f);
        }
    }
    out
}

/// Independent sets of `g` by subset enumeration.
pub fn brute_ind_faces(g: &UndirectedGraph) -> BTreeSet<Vec<Label>> {
    let edges = undirected_edges(g);
    brute_faces(g.vertices(), |m| edges.iter().all(|&(i, j)| m >> i & 1 == 0 || m >> j & 1 == 0))
}

/// Directed forests of `g` by subset enumeration over its edges; labels `x->y`.
pub fn brute_forest_faces(g: &DirectedGraph) -> BTreeSet<Vec<Label>> {
    let edges: Vec<(String, String)> = g.edges().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let labels: Vec<Label> = edges.iter().map(|(a, b)| Label::from(format!("{a}->{b}"))).collect();
    brute_faces(&labels, |m| {
        let chosen: Vec<&(String, String)> = (0..edges.len()).filter(|i| m >> i & 1 == 1).map(|i| &edges[i]).collect();
        let heads: BTreeSet<&String> = chosen.iter().map(|(_, y)| y).collect();
        if heads.len() != chosen.len() {
            return false;
        }
        // Walk parents; in-degree ≤ 1 makes any cycle a non-terminating walk.
        chosen.iter().all(|(_, start)| {
            let mut cur = start;
            for _ in 0..=chosen.len() {
                match chosen.iter().find(|(_, y)| y == cur) {
                    Some((x, _)) => cur = x,
                    None => return true,
                }
            }
            false
        })
    })
}

/// Reduced ℤ₂ Betti numbers by column reduction of explicit boundary
/// matrices; `None` when there are no nonempty faces.
pub fn dense_betti(faces: &BTreeSet<Vec<Label>>) -> Option<Vec<u64>> {
    if faces.is_empty() {
        return None;
    }
    let top = faces.iter().map(Vec::len).max().unwrap();
    let by_dim: Vec<Vec<&Vec<Label>>> = (1..=top).map(|k| faces.iter().filter(|f| f.len() == k).collect()).collect();
    // Rank of the boundary from faces of size d+1 to faces of size d.
    let rank = |d: usize| -> usize {
        if d == 0 || d >= by_dim.len() {
            return 0;
        }
        let index: HashMap<&Vec<Label>, usize> = by_dim[d - 1].iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
        for f in &by_dim[d] {
            let mut col: Vec<usize> = (0..f.len())
                .map(|skip| {
                    let facet: Vec<Label> =
                        f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, l)| l.clone()).collect();
                    index[&facet]
                })
                .collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match pivots.get(&low) {
                    Some(other) => col = xor_sorted(&col, other),
                    None => {
                        pivots.insert(low, col);
                        break;
                    }
                }
            }
        }
        pivots.len()
    };
    let ranks: Vec<usize> = (0..=top).map(rank).collect();
    let mut out: Vec<u64> = (0..top)
        .map(|d| {
            let incoming = if d == 0 { 1 } else { ranks[d] };
            let outgoing = if d + 1 < top { ranks[d + 1] } else { 0 };
            (by_dim[d].len() - incoming - outgoing) as u64
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Relabels every vertex of a complex through `f`.
pub fn relabel(c: &SimplicialComplex, f: impl Fn(&str) -> String) -> SimplicialComplex {
    let faces: Vec<Vec<String>> =
        c.maximal_face_labels().iter().map(|face| face.iter().map(|l| f(l.as_str())).collect()).collect();
    SimplicialComplex::from_label_faces(faces).unwrap()
}
