//! Directed and undirected simple graphs over [`Label`]ed vertices.
//!
//! Both graph types are immutable after construction. Vertices are kept in the
//! natural label order, which fixes every iteration order in the crate.
//!
//! The text edge-list format is one edge per line (`x y`), `#` comments, and
//! `vertex v` lines for isolated vertices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::label::Label;

/// Index of an edge in [`DirectedGraph::edges`].
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<Label>,
    index: BTreeMap<Label, usize>,
    /// Sorted by (tail, head) vertex index.
    edges: Vec<(usize, usize)>,
    in_edges: Vec<Vec<EdgeId>>,
    out_edges: Vec<Vec<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: Vec<Label>,
    index: BTreeMap<Label, usize>,
    adj: Vec<BTreeSet<usize>>,
}

fn build_index<I, L>(vertices: I) -> Result<(Vec<Label>, BTreeMap<Label, usize>)>
where
    I: IntoIterator<Item = L>,
    L: Into<Label>,
{
    let mut set = BTreeSet::new();
    for v in vertices {
        let v = v.into();
        if !set.insert(v.clone()) {
            return Err(Error::DuplicateVertex(v.to_string()));
        }
    }
    let vertices: Vec<Label> = set.into_iter().collect();
    let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    Ok((vertices, index))
}

fn lookup(index: &BTreeMap<Label, usize>, v: &str) -> Result<usize> {
    index.get(&Label::from(v)).copied().ok_or_else(|| Error::UnknownVertex(v.to_string()))
}

/// An edge with the line it came from.
type SourcedEdge = (Label, Label, usize);

/// Collects vertices and edges from edge-list text.
fn parse_edge_list(text: &str) -> Result<(Vec<Label>, Vec<SourcedEdge>)> {
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["vertex", v] => {
                vertices.insert(Label::from(*v));
            }
            [x, y] => {
                vertices.insert(Label::from(*x));
                vertices.insert(Label::from(*y));
                edges.push((Label::from(*x), Label::from(*y), line_no));
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `x y` or `vertex v`, got `{line}`"),
                })
            }
        }
    }
    Ok((vertices.into_iter().collect(), edges))
}

fn with_line(err: Error, line: usize) -> Error {
    match err {
        Error::Parse { .. } => err,
        other => Error::Parse { line, message: other.to_string() },
    }
}

impl DirectedGraph {
    /// Builds a graph from declared vertices and edges. Self-loops, parallel
    /// edges and undeclared endpoints are rejected.
    pub fn new<V, L, E, A, B>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = L>,
        L: Into<Label>,
        E: IntoIterator<Item = (A, B)>,
        A: Into<Label>,
        B: Into<Label>,
    {
        let (vertices, index) = build_index(vertices)?;
        let mut pairs = BTreeSet::new();
        for (x, y) in edges {
            let (x, y) = (x.into(), y.into());
            let xi = lookup(&index, x.as_str())?;
            let yi = lookup(&index, y.as_str())?;
            if xi == yi {
                return Err(Error::SelfLoop(x.to_string()));
            }
            if !pairs.insert((xi, yi)) {
                return Err(Error::ParallelEdge(format!("{x}->{y}")));
            }
        }
        Ok(Self::from_index_edges(vertices, index, pairs.into_iter().collect()))
    }

    /// Builds a graph whose vertex set is exactly the edge endpoints.
    pub fn from_edges<E, A, B>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (A, B)>,
        A: Into<Label>,
        B: Into<Label>,
    {
        let edges: Vec<(Label, Label)> = edges.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        let vertices: BTreeSet<Label> = edges.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        Self::new(vertices, edges)
    }

    /// Parses the edge-list format; each line `x y` is the edge x→y.
    pub fn parse(text: &str) -> Result<Self> {
        let (vertices, edges) = parse_edge_list(text)?;
        let (vertices, index) = build_index(vertices)?;
        let mut pairs = BTreeSet::new();
        for (x, y, line) in edges {
            let xi = index[&x];
            let yi = index[&y];
            if xi == yi {
                return Err(with_line(Error::SelfLoop(x.to_string()), line));
            }
            if !pairs.insert((xi, yi)) {
                return Err(with_line(Error::ParallelEdge(format!("{x}->{y}")), line));
            }
        }
        Ok(Self::from_index_edges(vertices, index, pairs.into_iter().collect()))
    }

    fn from_index_edges(vertices: Vec<Label>, index: BTreeMap<Label, usize>, edges: Vec<(usize, usize)>) -> Self {
        let n = vertices.len();
        let mut in_edges = vec![Vec::new(); n];
        let mut out_edges = vec![Vec::new(); n];
        for (id, &(x, y)) in edges.iter().enumerate() {
            out_edges[x].push(id);
            in_edges[y].push(id);
        }
        DirectedGraph { vertices, index, edges, in_edges, out_edges }
    }

    /// The subgraph on the same vertices keeping only edges whose id is in `keep`.
    pub fn edge_subgraph(&self, keep: impl Fn(EdgeId) -> bool) -> DirectedGraph {
        let edges = self.edges.iter().enumerate().filter(|(id, _)| keep(*id)).map(|(_, &e)| e).collect();
        Self::from_index_edges(self.vertices.clone(), self.index.clone(), edges)
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        lookup(&self.index, v)
    }

    /// Edge endpoints as vertex indices.
    pub fn edge(&self, id: EdgeId) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edge_labels(&self, id: EdgeId) -> (&Label, &Label) {
        let (x, y) = self.edges[id];
        (&self.vertices[x], &self.vertices[y])
    }

    /// Display name `x->y` used as the DT vertex label.
    pub fn edge_name(&self, id: EdgeId) -> String {
        let (x, y) = self.edge_labels(id);
        format!("{x}->{y}")
    }

    pub fn edge_id(&self, x: &str, y: &str) -> Result<EdgeId> {
        let xi = self.vertex_index(x)?;
        let yi = self.vertex_index(y)?;
        self.edges.binary_search(&(xi, yi)).map_err(|_| Error::UnknownEdge(format!("{x}->{y}")))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Label, &Label)> + '_ {
        (0..self.edges.len()).map(move |id| self.edge_labels(id))
    }

    pub fn in_edges_of(&self, v: usize) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn out_edges_of(&self, v: usize) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn in_degree(&self, v: &str) -> Result<usize> {
        Ok(self.in_edges[self.vertex_index(v)?].len())
    }

    /// Vertices without incoming edges.
    pub fn sources(&self) -> Vec<Label> {
        self.source_indices().into_iter().map(|i| self.vertices[i].clone()).collect()
    }

    pub(crate) fn source_indices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.in_edges[v].is_empty()).collect()
    }

    /// Kahn's algorithm seeded with every source, so all sources come first.
    pub fn topological_order(&self) -> Result<Vec<Label>> {
        Ok(self.topological_indices()?.into_iter().map(|i| self.vertices[i].clone()).collect())
    }

    pub(crate) fn topological_indices(&self) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_edges[v].len()).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in &self.out_edges[v] {
                let y = self.edges[e].1;
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        Err(Error::CyclicGraph(self.cycle_witness(&indeg)))
    }

    /// Walks back along in-edges among vertices Kahn could not remove until a
    /// vertex repeats. Every such vertex has a remaining predecessor.
    fn cycle_witness(&self, indeg: &[usize]) -> Vec<String> {
        let start = indeg.iter().position(|&d| d > 0).expect("leftover vertex");
        let mut seen = vec![usize::MAX; self.vertex_count()];
        let mut walk = Vec::new();
        let mut v = start;
        while seen[v] == usize::MAX {
            seen[v] = walk.len();
            walk.push(v);
            v = self.in_edges[v]
                .iter()
                .map(|&e| self.edges[e].0)
                .find(|&x| indeg[x] > 0)
                .expect("leftover vertex has a leftover predecessor");
        }
        let mut cycle: Vec<usize> = walk[seen[v]..].to_vec();
        cycle.reverse();
        cycle.push(cycle[0]);
        cycle.into_iter().map(|i| self.vertices[i].to_string()).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_indices().is_ok()
    }

    /// Canonical edge-list text: declared vertices then sorted edges.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for (x, y) in self.edges() {
            out.push_str(&format!("{x} {y}\n"));
        }
        out
    }
}

impl UndirectedGraph {
    pub fn new<V, L, E, A, B>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = L>,
        L: Into<Label>,
        E: IntoIterator<Item = (A, B)>,
        A: Into<Label>,
        B: Into<Label>,
    {
        let (vertices, index) = build_index(vertices)?;
        let mut adj = vec![BTreeSet::new(); vertices.len()];
        for (x, y) in edges {
            let (x, y) = (x.into(), y.into());
            let xi = lookup(&index, x.as_str())?;
            let yi = lookup(&index, y.as_str())?;
            if xi == yi {
                return Err(Error::SelfLoop(x.to_string()));
            }
            if !adj[xi].insert(yi) {
                return Err(Error::ParallelEdge(format!("{x}-{y}")));
            }
            adj[yi].insert(xi);
        }
        Ok(UndirectedGraph { vertices, index, adj })
    }

    pub fn from_edges<E, A, B>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (A, B)>,
        A: Into<Label>,
        B: Into<Label>,
    {
        let edges: Vec<(Label, Label)> = edges.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        let vertices: BTreeSet<Label> = edges.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        Self::new(vertices, edges)
    }

    /// Parses the edge-list format; `x y` and `y x` on separate lines is a parallel edge.
    pub fn parse(text: &str) -> Result<Self> {
        let (vertices, edges) = parse_edge_list(text)?;
        let (vertices, index) = build_index(vertices)?;
        let mut adj = vec![BTreeSet::new(); vertices.len()];
        for (x, y, line) in edges {
            let xi = index[&x];
            let yi = index[&y];
            if xi == yi {
                return Err(with_line(Error::SelfLoop(x.to_string()), line));
            }
            if !adj[xi].insert(yi) {
                return Err(with_line(Error::ParallelEdge(format!("{x}-{y}")), line));
            }
            adj[yi].insert(xi);
        }
        Ok(UndirectedGraph { vertices, index, adj })
    }

    pub(crate) fn from_adjacency(vertices: Vec<Label>, adj: Vec<BTreeSet<usize>>) -> Self {
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        UndirectedGraph { vertices, index, adj }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        lookup(&self.index, v)
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.vertices[i]
    }

    /// Edges as label pairs with the smaller label first, sorted.
    pub fn edges(&self) -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs.range(i + 1..) {
                out.push((self.vertices[i].clone(), self.vertices[j].clone()));
            }
        }
        out
    }

    pub fn neighbor_indices(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    /// N(v); never contains v.
    pub fn neighborhood(&self, v: &str) -> Result<Vec<Label>> {
        let i = self.vertex_index(v)?;
        Ok(self.adj[i].iter().map(|&j| self.vertices[j].clone()).collect())
    }

    pub fn degree(&self, v: &str) -> Result<usize> {
        Ok(self.adj[self.vertex_index(v)?].len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(BTreeSet::is_empty)
    }

    /// G[W].
    pub fn induced_subgraph<S: AsRef<str>>(&self, w: &[S]) -> Result<UndirectedGraph> {
        let mut keep = BTreeSet::new();
        for v in w {
            keep.insert(self.vertex_index(v.as_ref())?);
        }
        Ok(self.induced_by_indices(&keep))
    }

    /// G∖W = G[V(G)∖W].
    pub fn without<S: AsRef<str>>(&self, w: &[S]) -> Result<UndirectedGraph> {
        let mut drop = BTreeSet::new();
        for v in w {
            drop.insert(self.vertex_index(v.as_ref())?);
        }
        Ok(self.without_indices(&drop))
    }

    pub(crate) fn induced_by_indices(&self, keep: &BTreeSet<usize>) -> UndirectedGraph {
        let order: Vec<usize> = keep.iter().copied().collect();
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        let adj = order
            .iter()
            .map(|&i| self.adj[i].iter().filter(|j| keep.contains(j)).map(|&j| remap[j]).collect())
            .collect();
        Self::from_adjacency(vertices, adj)
    }

    pub(crate) fn without_indices(&self, drop: &BTreeSet<usize>) -> UndirectedGraph {
        let keep = (0..self.vertex_count()).filter(|i| !drop.contains(i)).collect();
        self.induced_by_indices(&keep)
    }

    pub fn is_clique<S: AsRef<str>>(&self, set: &[S]) -> Result<bool> {
        let idx: Vec<usize> = set.iter().map(|v| self.vertex_index(v.as_ref())).collect::<Result<_>>()?;
        Ok(self.is_clique_indices(&idx))
    }

    pub(crate) fn is_clique_indices(&self, idx: &[usize]) -> bool {
        idx.iter().enumerate().all(|(a, &i)| idx[a + 1..].iter().all(|&j| i == j || self.adj[i].contains(&j)))
    }

    /// True when the graph has no cycle (union-find over the edges).
    pub fn is_forest(&self) -> bool {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for &j in self.adj[i].range(i + 1..) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
        }
        true
    }

    /// Adjacency rows as bitmasks; limited to 64 vertices.
    pub(crate) fn adjacency_masks(&self) -> Result<Vec<u64>> {
        let n = self.vertex_count();
        if n > 64 {
            return Err(Error::TooManyVertices { count: n, max: 64 });
        }
        Ok(self.adj.iter().map(|nbrs| nbrs.iter().fold(0u64, |m, &j| m | (1 << j))).collect())
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for (x, y) in self.edges() {
            out.push_str(&format!("{x} {y}\n"));
        }
        out
    }
}

/// m disjoint copies of K_{d,d}; copy c has sides `c.a.i` and `c.b.i`.
pub fn disjoint_complete_bipartite(m: usize, d: usize) -> Result<UndirectedGraph> {
    if m == 0 || d == 0 {
        return Err(Error::InvalidParameter("m and d must be positive".into()));
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for c in 0..m {
        for i in 0..d {
            vertices.push(format!("{c}.a.{i}"));
            vertices.push(format!("{c}.b.{i}"));
            for j in 0..d {
                edges.push((format!("{c}.a.{i}"), format!("{c}.b.{j}")));
            }
        }
    }
    UndirectedGraph::new(vertices, edges)
}

/// The a×b grid with unit-distance adjacency; vertices are `(x,y)`.
pub fn grid_graph(a: usize, b: usize) -> Result<UndirectedGraph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter("grid sides must be positive".into()));
    }
    let name = |x: usize, y: usize| format!("({x},{y})");
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for x in 0..a {
        for y in 0..b {
            vertices.push(name(x, y));
            if x + 1 < a {
                edges.push((name(x, y), name(x + 1, y)));
            }
            if y + 1 < b {
                edges.push((name(x, y), name(x, y + 1)));
            }
        }
    }
    UndirectedGraph::new(vertices, edges)
}
