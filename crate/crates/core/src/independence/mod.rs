//! Independence complexes Ind(G): faces are the independent vertex sets.

mod fold;
mod generating;

use std::collections::BTreeSet;

use serde::Serialize;

pub use fold::{find_fold, fold_reduce, forest_homotopy, FoldStep};
pub use generating::{
    c_graph, gen_faces_c, gen_faces_clique, gen_faces_complete_nbhd, gen_faces_l, l_graph, l_homotopy,
    certified, recursive_gen_faces, verify_generating_faces, Certificate, CertificateStrength, GeneratingFaces,
};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::homology::betti;
use crate::limits;

/// Ind(g), with maximal faces the maximal independent sets. The graph with no
/// vertices gives the complex whose only face is empty.
pub fn ind(g: &UndirectedGraph) -> Result<SimplicialComplex> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(SimplicialComplex::void());
    }
    let adj = g.adjacency_masks()?;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // Maximal cliques of the complement.
    let comp: Vec<u64> = (0..n).map(|i| all & !adj[i] & !(1 << i)).collect();
    let mut out = Vec::new();
    bron_kerbosch(&comp, 0, all, 0, &mut out)?;
    SimplicialComplex::from_faces(g.vertices().to_vec(), out)
}

fn bron_kerbosch(comp: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) -> Result<()> {
    if p == 0 {
        if x == 0 {
            out.push(r);
            limits::check(out.len(), "maximal independent sets")?;
        }
        return Ok(());
    }
    let pivot = crate::complex::bits(p | x).max_by_key(|&u| (p & comp[u]).count_ones()).expect("p nonempty");
    let mut candidates = p & !comp[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(comp, r | (1 << v), p & comp[v], x & comp[v], out)?;
        p &= !(1 << v);
        x |= 1 << v;
    }
    Ok(())
}

/// Which of the standard identities were checked at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactReport {
    pub vertex: String,
    pub checked: Vec<&'static str>,
    /// Set when the link was acyclic, so deleting the vertex was compared homologically.
    pub deletion_compared: bool,
    pub containment_pairs: usize,
}

fn labels(g: &UndirectedGraph, idx: &BTreeSet<usize>) -> Vec<String> {
    idx.iter().map(|&i| g.label(i).to_string()).collect()
}

/// Checks the standard identities for Ind(g) at `v` by comparing complexes,
/// with A = V∖N(v) and B = V∖{v} for the subset identities.
pub fn standard_fact_checks(g: &UndirectedGraph, v: &str) -> Result<FactReport> {
    let vi = g.vertex_index(v)?;
    let full = ind(g)?;
    let nv: BTreeSet<usize> = g.neighbor_indices(vi).clone();
    let all: BTreeSet<usize> = (0..g.vertex_count()).collect();
    let a: BTreeSet<usize> = all.difference(&nv).copied().collect();
    let b: BTreeSet<usize> = all.iter().copied().filter(|&i| i != vi).collect();
    let mut checked = Vec::new();
    let mut require = |name: &'static str, ok: bool| -> Result<()> {
        if ok {
            checked.push(name);
            Ok(())
        } else {
            Err(Error::FactViolation(format!("{name} at `{v}`")))
        }
    };

    let ind_a = ind(&g.induced_by_indices(&a))?;
    let ind_b = ind(&g.induced_by_indices(&b))?;
    require("induced subgraph", ind_a == full.induced(&labels(g, &a)))?;
    require("induced subgraph", ind_b == full.induced(&labels(g, &b)))?;
    let ab: BTreeSet<usize> = a.intersection(&b).copied().collect();
    require("intersection", ind_a.intersection(&ind_b)? == ind(&g.induced_by_indices(&ab))?)?;

    let mut closed = nv.clone();
    closed.insert(vi);
    let lk = full.link(v)?;
    let lk_graph = ind(&g.without_indices(&closed))?;
    require("link", lk == lk_graph)?;
    let st = full.star(v)?;
    require("star", st == ind(&g.without_indices(&nv))?)?;
    let cone = if lk.is_void() { SimplicialComplex::simplex([v])? } else { lk.cone(v)? };
    require("star is cone over link", st == cone)?;

    let deletion_compared = betti(&lk_graph)?.is_acyclic();
    if deletion_compared {
        let mut single = BTreeSet::new();
        single.insert(vi);
        let rest = ind(&g.without_indices(&single))?;
        require("deletion", betti(&full)? == betti(&rest)?)?;
    }

    let mut cover = st.clone();
    for &w in &nv {
        cover = cover.union(&full.star(g.label(w).as_str())?)?;
    }
    require("star cover", cover == full)?;

    let mut containment_pairs = 0;
    for &w in &nv {
        let nw = g.neighbor_indices(w);
        if nv.iter().all(|&x| x == w || (x != vi && nw.contains(&x))) {
            let lk_w = full.link(g.label(w).as_str())?;
            require("star contains link", lk_w.is_void() || lk_w.is_subcomplex_of(&st))?;
            containment_pairs += 1;
        }
    }
    checked.dedup();
    Ok(FactReport { vertex: v.to_string(), checked, deletion_compared, containment_pairs })
}

/// ⌊(n−1)/2d − 1⌋ for n vertices and maximal degree d.
pub fn connectivity_bound_maxdeg(g: &UndirectedGraph) -> Result<i64> {
    let n = g.vertex_count() as i64;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let d = g.max_degree() as i64;
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok((n - 1 - 2 * d).div_euclid(2 * d))
}
