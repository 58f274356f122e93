//! Complexes of directed trees.
//!
//! DT(G) has the edges of a digraph G as vertices and directed forests (acyclic,
//! at most one edge into each vertex) as faces. DT_R(G) is generated by the
//! forests whose roots are exactly R. This module enumerates both, finds nice
//! edges through the left/right partition, builds the recursive shelling
//! order, and evaluates the closed formulas for acyclic G.

use std::collections::HashMap;

use log::warn;
use serde::Serialize;

use crate::complex::{FaceMask, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, EdgeId};
use crate::homology::greedy_collapse;
use crate::homotopy::HomotopyType;
use crate::label::Label;
use crate::limits;

/// A set of edges of the host digraph, stored as a mask over [`EdgeId`]s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForestFace(pub u64);

impl ForestFace {
    pub fn from_edges(edges: &[EdgeId]) -> Self {
        ForestFace(edges.iter().fold(0, |m, &e| m | (1 << e)))
    }

    pub fn edges(self) -> impl Iterator<Item = EdgeId> {
        crate::complex::bits(self.0)
    }

    pub fn contains(self, e: EdgeId) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Edge names `x->y`, matching the vertex labels of [`dt`].
    pub fn names(self, g: &DirectedGraph) -> Vec<String> {
        self.edges().map(|e| g.edge_name(e)).collect()
    }

    /// Vertex roots: every vertex of `g` without an edge of the forest into it.
    pub fn roots(self, g: &DirectedGraph) -> Vec<Label> {
        let mut has_parent = vec![false; g.vertex_count()];
        for e in self.edges() {
            has_parent[g.edge(e).1] = true;
        }
        (0..g.vertex_count()).filter(|&v| !has_parent[v]).map(|v| g.vertices()[v].clone()).collect()
    }
}

fn check_edge_capacity(g: &DirectedGraph) -> Result<()> {
    if g.edge_count() > 64 {
        return Err(Error::TooManyVertices { count: g.edge_count(), max: 64 });
    }
    Ok(())
}

/// Resolves `x->y` pairs to edge ids.
pub fn edge_ids(g: &DirectedGraph, pairs: &[(&str, &str)]) -> Result<Vec<EdgeId>> {
    pairs.iter().map(|(x, y)| g.edge_id(x, y)).collect()
}

fn parents_of(g: &DirectedGraph, face: ForestFace) -> Option<Vec<Option<usize>>> {
    let mut parent = vec![None; g.vertex_count()];
    for e in face.edges() {
        let (x, y) = g.edge(e);
        if parent[y].is_some() {
            return None;
        }
        parent[y] = Some(x);
    }
    Some(parent)
}

/// True when `ancestor` is reached walking parent pointers up from `v` (v included).
fn reaches(parent: &[Option<usize>], mut v: usize, ancestor: usize) -> bool {
    let mut steps = 0;
    loop {
        if v == ancestor {
            return true;
        }
        match parent[v] {
            Some(p) if steps <= parent.len() => {
                v = p;
                steps += 1;
            }
            _ => return false,
        }
    }
}

fn is_forest_mask(g: &DirectedGraph, face: ForestFace) -> bool {
    let Some(parent) = parents_of(g, face) else {
        return false;
    };
    // With in-degree ≤ 1 a cycle is a parent chain that never terminates.
    (0..g.vertex_count()).all(|v| {
        let mut cur = v;
        for _ in 0..=g.vertex_count() {
            match parent[cur] {
                Some(p) => cur = p,
                None => return true,
            }
        }
        false
    })
}

/// In-degree ≤ 1 everywhere and no directed cycle.
pub fn is_directed_forest(g: &DirectedGraph, edges: &[EdgeId]) -> Result<bool> {
    check_edge_capacity(g)?;
    if let Some(&bad) = edges.iter().find(|&&e| e >= g.edge_count()) {
        return Err(Error::UnknownEdge(format!("#{bad}")));
    }
    Ok(is_forest_mask(g, ForestFace::from_edges(edges)))
}

fn processing_order(g: &DirectedGraph) -> Vec<usize> {
    g.topological_indices().unwrap_or_else(|_| (0..g.vertex_count()).collect())
}

/// All maximal directed forests of `g`, by backtracking over target vertices.
pub fn maximal_forests(g: &DirectedGraph) -> Result<Vec<ForestFace>> {
    check_edge_capacity(g)?;
    struct Search<'a> {
        g: &'a DirectedGraph,
        order: Vec<usize>,
        parent: Vec<Option<usize>>,
        chosen: u64,
        out: Vec<ForestFace>,
    }
    impl Search<'_> {
        fn is_maximal(&self) -> bool {
            (0..self.g.vertex_count()).filter(|&v| self.parent[v].is_none()).all(|v| {
                self.g.in_edges_of(v).iter().all(|&e| reaches(&self.parent, self.g.edge(e).0, v))
            })
        }

        fn run(&mut self, pos: usize) -> Result<()> {
            if pos == self.order.len() {
                if self.is_maximal() {
                    self.out.push(ForestFace(self.chosen));
                    limits::check(self.out.len(), "maximal forests")?;
                }
                return Ok(());
            }
            let v = self.order[pos];
            for i in 0..self.g.in_edges_of(v).len() {
                let e = self.g.in_edges_of(v)[i];
                let x = self.g.edge(e).0;
                if reaches(&self.parent, x, v) {
                    continue;
                }
                self.parent[v] = Some(x);
                self.chosen |= 1 << e;
                self.run(pos + 1)?;
                self.chosen &= !(1 << e);
                self.parent[v] = None;
            }
            self.run(pos + 1)
        }
    }
    let mut s = Search { g, order: processing_order(g), parent: vec![None; g.vertex_count()], chosen: 0, out: Vec::new() };
    s.run(0)?;
    s.out.sort();
    Ok(s.out)
}

fn root_flags(g: &DirectedGraph, roots: &[&str]) -> Result<Vec<bool>> {
    if roots.is_empty() {
        return Err(Error::EmptyRootSet);
    }
    let mut flags = vec![false; g.vertex_count()];
    for r in roots {
        flags[g.vertex_index(r)?] = true;
    }
    Ok(flags)
}

/// Forests using only `allowed` edges whose roots are exactly the flagged vertices.
fn rooted_forests(g: &DirectedGraph, is_root: &[bool], allowed: u64) -> Result<Vec<ForestFace>> {
    let order: Vec<usize> = processing_order(g).into_iter().filter(|&v| !is_root[v]).collect();
    fn run(
        g: &DirectedGraph,
        order: &[usize],
        allowed: u64,
        parent: &mut Vec<Option<usize>>,
        chosen: u64,
        out: &mut Vec<ForestFace>,
    ) -> Result<()> {
        let Some((&v, rest)) = order.split_first() else {
            out.push(ForestFace(chosen));
            return limits::check(out.len(), "rooted forests");
        };
        for &e in g.in_edges_of(v) {
            if allowed >> e & 1 == 0 {
                continue;
            }
            let x = g.edge(e).0;
            if reaches(parent, x, v) {
                continue;
            }
            parent[v] = Some(x);
            run(g, rest, allowed, parent, chosen | (1 << e), out)?;
            parent[v] = None;
        }
        Ok(())
    }
    let mut out = Vec::new();
    run(g, &order, allowed, &mut vec![None; g.vertex_count()], 0, &mut out)?;
    out.sort();
    Ok(out)
}

fn all_edges(g: &DirectedGraph) -> u64 {
    if g.edge_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.edge_count()) - 1
    }
}

/// Maximal faces of DT_R(g): the directed forests whose roots are exactly `roots`.
pub fn rooted_maximal_faces(g: &DirectedGraph, roots: &[&str]) -> Result<Vec<ForestFace>> {
    check_edge_capacity(g)?;
    let flags = root_flags(g, roots)?;
    let faces = rooted_forests(g, &flags, all_edges(g))?;
    if faces.is_empty() {
        return Err(Error::NoSuchForest);
    }
    Ok(faces)
}

/// The complex generated by `faces`, with vertex labels `x->y`.
pub fn complex_from_forests(g: &DirectedGraph, faces: &[ForestFace]) -> Result<SimplicialComplex> {
    check_edge_capacity(g)?;
    let names: Vec<Label> = (0..g.edge_count()).map(|e| Label::from(g.edge_name(e))).collect();
    SimplicialComplex::from_faces(names, faces.iter().map(|f| f.0))
}

/// Face mask of a forest inside a complex built by [`complex_from_forests`].
pub fn forest_mask(complex: &SimplicialComplex, g: &DirectedGraph, face: ForestFace) -> Result<FaceMask> {
    complex.mask_of(&face.names(g))
}

/// DT(g). For an edgeless graph this is the complex with only the empty face.
pub fn dt(g: &DirectedGraph) -> Result<SimplicialComplex> {
    complex_from_forests(g, &maximal_forests(g)?)
}

/// DT_R(g).
pub fn dt_rooted(g: &DirectedGraph, roots: &[&str]) -> Result<SimplicialComplex> {
    complex_from_forests(g, &rooted_maximal_faces(g, roots)?)
}

/// Left side: vertices whose root-to-vertex path is identical in every maximal face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub left: Vec<Label>,
    pub right: Vec<Label>,
    #[serde(skip)]
    is_left: Vec<bool>,
}

impl Partition {
    pub fn is_left(&self, v: usize) -> bool {
        self.is_left[v]
    }

    /// Edges of some face whose endpoints lie on different sides.
    pub fn crossing_edges(&self, g: &DirectedGraph, faces: &[ForestFace]) -> Vec<EdgeId> {
        let union = faces.iter().fold(0u64, |m, f| m | f.0);
        ForestFace(union)
            .edges()
            .filter(|&e| {
                let (x, y) = g.edge(e);
                self.is_left[x] != self.is_left[y]
            })
            .collect()
    }
}

fn path_to(parent: &[Option<usize>], v: usize) -> Vec<usize> {
    let mut path = vec![v];
    let mut cur = v;
    while let Some(p) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

fn partition_of(g: &DirectedGraph, is_root: &[bool], faces: &[ForestFace]) -> Result<Partition> {
    if faces.is_empty() {
        return Err(Error::NoSuchForest);
    }
    let mut parents = Vec::with_capacity(faces.len());
    for &f in faces {
        if !is_forest_mask(g, f) {
            return Err(Error::RootMismatch);
        }
        let parent = parents_of(g, f).expect("forest");
        if (0..g.vertex_count()).any(|v| parent[v].is_none() != is_root[v]) {
            return Err(Error::RootMismatch);
        }
        parents.push(parent);
    }
    let is_left: Vec<bool> = (0..g.vertex_count())
        .map(|v| {
            let first = path_to(&parents[0], v);
            parents[1..].iter().all(|p| path_to(p, v) == first)
        })
        .collect();
    let pick = |side: bool| {
        (0..g.vertex_count()).filter(|&v| is_left[v] == side).map(|v| g.vertices()[v].clone()).collect()
    };
    Ok(Partition { left: pick(true), right: pick(false), is_left })
}

/// Left/right partition of the vertices over the given maximal faces of DT_R(g).
pub fn left_right_partition(g: &DirectedGraph, roots: &[&str], faces: &[ForestFace]) -> Result<Partition> {
    check_edge_capacity(g)?;
    partition_of(g, &root_flags(g, roots)?, faces)
}

/// Least crossing edge of the partition, or `None` with a single maximal face.
fn nice_edge_of(g: &DirectedGraph, is_root: &[bool], faces: &[ForestFace]) -> Result<Option<EdgeId>> {
    if faces.len() <= 1 {
        return Ok(None);
    }
    let partition = partition_of(g, is_root, faces)?;
    Ok(partition.crossing_edges(g, faces).into_iter().min())
}

/// A nice edge of DT_R(g), taken as the least edge crossing the partition.
pub fn find_nice_edge(g: &DirectedGraph, roots: &[&str]) -> Result<Option<EdgeId>> {
    let faces = rooted_maximal_faces(g, roots)?;
    nice_edge_of(g, &root_flags(g, roots)?, &faces)
}

/// Checks both conditions of a nice edge (x→y) in a subcomplex of DT(g) by
/// enumerating faces: (i) some (z→y), z ≠ x, is a vertex; (ii) every face
/// without an edge into y, the empty face included, stays a face after adding (x→y).
pub fn is_nice_edge(g: &DirectedGraph, subcomplex: &SimplicialComplex, e: EdgeId) -> Result<bool> {
    if e >= g.edge_count() {
        return Err(Error::UnknownEdge(format!("#{e}")));
    }
    let by_name: HashMap<String, EdgeId> = (0..g.edge_count()).map(|id| (g.edge_name(id), id)).collect();
    let ids: Vec<EdgeId> = subcomplex
        .vertices()
        .iter()
        .map(|l| by_name.get(l.as_str()).copied().ok_or_else(|| Error::UnknownEdge(l.to_string())))
        .collect::<Result<_>>()?;
    let (x, y) = g.edge(e);
    let into_y: u64 = ids.iter().enumerate().filter(|(_, &id)| g.edge(id).1 == y).fold(0, |m, (i, _)| m | (1 << i));
    let cond_i = ids.iter().any(|&id| {
        let (z, w) = g.edge(id);
        w == y && z != x
    });
    if !cond_i {
        return Ok(false);
    }
    let Some(e_bit) = ids.iter().position(|&id| id == e).map(|i| 1u64 << i) else {
        return Ok(false);
    };
    let faces = subcomplex.all_faces()?;
    let ok = std::iter::once(0u64)
        .chain(faces.into_iter().flatten())
        .filter(|f| f & into_y == 0)
        .all(|f| subcomplex.contains_face(f | e_bit));
    Ok(ok)
}

/// Shelling order of DT_R(g): split on a nice edge (x→y) into G′ (other edges
/// into y dropped) and G″ ((x→y) dropped), recurse, and concatenate.
pub fn shelling_order_dt(g: &DirectedGraph, roots: &[&str]) -> Result<Vec<ForestFace>> {
    check_edge_capacity(g)?;
    let flags = root_flags(g, roots)?;
    fn rec(g: &DirectedGraph, is_root: &[bool], allowed: u64) -> Result<Vec<ForestFace>> {
        let faces = rooted_forests(g, is_root, allowed)?;
        if faces.len() <= 1 {
            return Ok(faces);
        }
        let e = nice_edge_of(g, is_root, &faces)?.expect("several maximal faces have a crossing edge");
        let (x, y) = g.edge(e);
        let others_into_y = g.in_edges_of(y).iter().filter(|&&id| g.edge(id).0 != x).fold(0u64, |m, &id| m | (1 << id));
        let mut order = rec(g, is_root, allowed & !others_into_y)?;
        order.extend(rec(g, is_root, allowed & !(1 << e))?);
        Ok(order)
    }
    let order = rec(g, &flags, all_edges(g))?;
    if order.is_empty() {
        return Err(Error::NoSuchForest);
    }
    Ok(order)
}

fn require_dag_with_edges(g: &DirectedGraph) -> Result<()> {
    g.topological_indices()?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(())
}

/// χ̃(DT(g)) = −∏_{v∉R} (1 − d⁻(v)) for acyclic g with at least one edge.
pub fn euler_dt_dag(g: &DirectedGraph) -> Result<i64> {
    require_dag_with_edges(g)?;
    let mut product: i64 = 1;
    for v in 0..g.vertex_count() {
        let d = g.in_edges_of(v).len() as i64;
        if d > 0 {
            product = product
                .checked_mul(1 - d)
                .ok_or_else(|| Error::SizeLimit { what: "Euler product".into(), cap: i64::MAX as usize })?;
        }
    }
    Ok(-product)
}

fn sphere_product(g: &DirectedGraph) -> Result<u64> {
    let mut product: u64 = 1;
    for v in 0..g.vertex_count() {
        let d = g.in_edges_of(v).len() as u64;
        if d > 0 {
            product = product
                .checked_mul(d - 1)
                .ok_or_else(|| Error::SizeLimit { what: "sphere count".into(), cap: u64::MAX as usize })?;
        }
    }
    Ok(product)
}

/// DT(g) ≃ wedge of ∏_{v∉R}(d⁻(v) − 1) spheres of dimension |V| − |R| − 1.
/// An edgeless g gives S⁻¹, the empty space.
pub fn homotopy_dt_dag(g: &DirectedGraph) -> Result<HomotopyType> {
    g.topological_indices()?;
    if g.edge_count() == 0 {
        // One sphere of dimension −1: DT(g) has only the empty face.
        warn!("edgeless digraph: DT(g) is the empty space");
        return Ok(HomotopyType::Empty);
    }
    let count = sphere_product(g)?;
    let dim = g.vertex_count() - g.source_indices().len() - 1;
    Ok(HomotopyType::spheres(dim, count))
}

/// The five equivalent contractibility statements for DT(g), g acyclic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ContractibilityReport {
    pub cone_with_edge_apex: bool,
    pub edge_in_all_maximal_forests: bool,
    pub vertex_of_in_degree_one: bool,
    pub zero_product: bool,
    pub collapses_to_point: bool,
}

impl ContractibilityReport {
    pub fn all_agree(&self) -> bool {
        let v = [
            self.cone_with_edge_apex,
            self.edge_in_all_maximal_forests,
            self.vertex_of_in_degree_one,
            self.zero_product,
            self.collapses_to_point,
        ];
        v.iter().all(|&b| b == v[0])
    }
}

/// Evaluates each statement independently; any disagreement is an error.
pub fn dag_contractibility_report(g: &DirectedGraph) -> Result<ContractibilityReport> {
    require_dag_with_edges(g)?;
    let forests = maximal_forests(g)?;
    let complex = complex_from_forests(g, &forests)?;
    let mut cone = false;
    for v in complex.vertices() {
        if complex.star(v.as_str())? == complex {
            cone = true;
            break;
        }
    }
    let common = forests.iter().fold(u64::MAX, |m, f| m & f.0);
    let report = ContractibilityReport {
        cone_with_edge_apex: cone,
        edge_in_all_maximal_forests: common != 0,
        vertex_of_in_degree_one: (0..g.vertex_count()).any(|v| g.in_edges_of(v).len() == 1),
        zero_product: sphere_product(g)? == 0,
        collapses_to_point: greedy_collapse(&complex)?.is_point(),
    };
    if !report.all_agree() {
        return Err(Error::EquivalenceViolation(format!("{report:?}")));
    }
    Ok(report)
}
