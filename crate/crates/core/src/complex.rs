//! Simplicial complexes stored by their maximal faces.
//!
//! A face is a [`FaceMask`]: bit `i` set means the `i`-th vertex label is in
//! the face. The vertex set of a complex is always exactly the union of its
//! maximal faces, in the order the complex was built with.
//!
//! Two degenerate complexes need care, since the same symbol gets used for
//! both in the literature:
//! * [`SimplicialComplex::empty`] has no faces at all, not even the empty face.
//! * [`SimplicialComplex::void`] has only the empty face. It arises from
//!   links of isolated vertices, deletions of every vertex, and the
//!   independence complex of the graph with no vertices.
//!
//! Both have empty geometric realization, so the homology oracle reports both
//! as the empty space and their reduced Euler characteristic is −1.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::limits;

pub type FaceMask = u64;

pub const MAX_VERTICES: usize = 64;

pub(crate) fn bits(mask: FaceMask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

pub(crate) fn face_key(mask: FaceMask) -> Vec<usize> {
    bits(mask).collect()
}

pub(crate) fn sort_faces(faces: &mut [FaceMask]) {
    faces.sort_by_cached_key(|&f| face_key(f));
}

/// Keeps the inclusion-maximal masks, deduplicated and sorted.
pub(crate) fn reduce_antichain(mut faces: Vec<FaceMask>) -> Vec<FaceMask> {
    faces.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<FaceMask> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|&k| f & k == f) {
            kept.push(f);
        }
    }
    sort_faces(&mut kept);
    kept
}

/// Outcome of [`SimplicialComplex::is_shelling`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShellingVerdict {
    Shelling,
    /// 1-based positions `(i, k)` in the order with no admissible `(j, e)`.
    Violation { i: usize, k: usize },
}

impl ShellingVerdict {
    pub fn is_shelling(&self) -> bool {
        matches!(self, ShellingVerdict::Shelling)
    }
}

/// JSON form: `{"vertices":[...], "maximal_faces":[[...],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub maximal_faces: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: Vec<Label>,
    maximal: Vec<FaceMask>,
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), maximal: Vec::new() }
    }

    /// The complex whose only face is the empty face.
    pub fn void() -> Self {
        SimplicialComplex { vertices: Vec::new(), maximal: vec![0] }
    }

    /// The full simplex on the given vertices.
    pub fn simplex<I, L>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let vertices: Vec<Label> = vertices.into_iter().map(Into::into).collect();
        let full = if vertices.len() == 64 { u64::MAX } else { (1u64 << vertices.len()) - 1 };
        Self::from_faces(vertices, [full])
    }

    /// Builds a complex from generating faces over `vertices`. Non-maximal
    /// faces are dropped and vertices in no face are removed.
    pub fn from_faces(vertices: Vec<Label>, faces: impl IntoIterator<Item = FaceMask>) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices { count: vertices.len(), max: MAX_VERTICES });
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        let range = if vertices.len() == 64 { u64::MAX } else { (1u64 << vertices.len()) - 1 };
        let faces: Vec<FaceMask> = faces.into_iter().collect();
        if let Some(bad) = faces.iter().find(|&&f| f & !range != 0) {
            return Err(Error::InvalidParameter(format!("face mask {bad:#x} uses undeclared vertices")));
        }
        if faces.is_empty() {
            return Ok(Self::empty());
        }
        let maximal = reduce_antichain(faces);
        Ok(Self::compact(vertices, maximal))
    }

    /// Builds a complex from faces given as label lists; vertices are ordered naturally.
    pub fn from_label_faces<I, F, L>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let faces: Vec<Vec<Label>> = faces.into_iter().map(|f| f.into_iter().map(Into::into).collect()).collect();
        let vertices: Vec<Label> = faces.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices { count: vertices.len(), max: MAX_VERTICES });
        }
        let masks = faces
            .iter()
            .map(|f| f.iter().map(|l| 1u64 << vertices.binary_search(l).expect("collected")).fold(0, |a, b| a | b))
            .collect::<Vec<_>>();
        Self::from_faces(vertices, masks)
    }

    fn compact(vertices: Vec<Label>, maximal: Vec<FaceMask>) -> Self {
        let used = maximal.iter().fold(0u64, |a, &f| a | f);
        let full = if vertices.len() == 64 { u64::MAX } else { (1u64 << vertices.len()) - 1 };
        if used == full {
            return SimplicialComplex { vertices, maximal };
        }
        let mut remap = vec![usize::MAX; vertices.len()];
        let mut kept = Vec::new();
        for (i, v) in vertices.into_iter().enumerate() {
            if used >> i & 1 == 1 {
                remap[i] = kept.len();
                kept.push(v);
            }
        }
        let mut maximal: Vec<FaceMask> =
            maximal.into_iter().map(|f| bits(f).fold(0u64, |a, b| a | (1 << remap[b]))).collect();
        sort_faces(&mut maximal);
        SimplicialComplex { vertices: kept, maximal }
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn maximal_faces(&self) -> &[FaceMask] {
        &self.maximal
    }

    /// True for the complex with no faces at all.
    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    /// True for the complex whose only face is the empty face.
    pub fn is_void(&self) -> bool {
        self.maximal == [0]
    }

    /// True when the geometric realization is empty ([`Self::empty`] or [`Self::void`]).
    pub fn has_no_vertices(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension; −1 for the void complex, undefined for the empty complex.
    pub fn dim(&self) -> Result<i64> {
        if self.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(self.maximal.iter().map(|f| f.count_ones() as i64).max().unwrap_or(0) - 1)
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.maximal.iter().map(|f| f.count_ones());
        match sizes.next() {
            Some(first) => sizes.all(|s| s == first),
            None => true,
        }
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices.iter().position(|l| l == v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn mask_of<S: AsRef<str>>(&self, face: &[S]) -> Result<FaceMask> {
        face.iter().try_fold(0u64, |m, v| Ok(m | (1 << self.vertex_index(v.as_ref())?)))
    }

    pub fn labels_of(&self, mask: FaceMask) -> Vec<Label> {
        bits(mask).map(|i| self.vertices[i].clone()).collect()
    }

    pub fn maximal_face_labels(&self) -> Vec<Vec<Label>> {
        self.maximal.iter().map(|&f| self.labels_of(f)).collect()
    }

    pub fn contains_face(&self, face: FaceMask) -> bool {
        self.maximal.iter().any(|&m| face & m == face)
    }

    pub fn is_maximal_face(&self, face: FaceMask) -> bool {
        self.maximal.binary_search_by_key(&face_key(face), |&m| face_key(m)).is_ok()
    }

    /// Every nonempty face, grouped by dimension, each group sorted.
    pub fn all_faces(&self) -> Result<Vec<Vec<FaceMask>>> {
        let cap = limits::face_cap();
        let mut seen: HashSet<FaceMask> = HashSet::new();
        for &m in &self.maximal {
            let size = m.count_ones();
            if size >= 63 || (1u64 << size) - 1 > cap as u64 {
                return Err(Error::SizeLimit { what: "face count".into(), cap });
            }
            let mut s = m;
            while s != 0 {
                seen.insert(s);
                s = (s - 1) & m;
            }
            limits::check(seen.len(), "face count")?;
        }
        let top = self.maximal.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
        let mut groups = vec![Vec::new(); top];
        for f in seen {
            groups[f.count_ones() as usize - 1].push(f);
        }
        for g in &mut groups {
            sort_faces(g);
        }
        Ok(groups)
    }

    pub fn face_count(&self) -> Result<usize> {
        Ok(self.all_faces()?.iter().map(Vec::len).sum())
    }

    /// −1 + Σ_d (−1)^d f_d, the empty face counted as the −1 term.
    pub fn reduced_euler(&self) -> Result<i64> {
        let groups = self.all_faces()?;
        Ok(groups.iter().enumerate().fold(-1i64, |acc, (d, g)| {
            if d % 2 == 0 {
                acc + g.len() as i64
            } else {
                acc - g.len() as i64
            }
        }))
    }

    /// lk(v): faces τ with v ∉ τ and τ ∪ {v} a face.
    pub fn link(&self, v: &str) -> Result<Self> {
        let i = self.vertex_index(v)?;
        let bit = 1u64 << i;
        let faces: Vec<FaceMask> = self.maximal.iter().filter(|&&f| f & bit != 0).map(|&f| f & !bit).collect();
        Self::from_faces(self.vertices.clone(), faces)
    }

    /// st(v): faces τ with τ ∪ {v} a face; a cone with apex v.
    pub fn star(&self, v: &str) -> Result<Self> {
        let bit = 1u64 << self.vertex_index(v)?;
        let faces: Vec<FaceMask> = self.maximal.iter().copied().filter(|&f| f & bit != 0).collect();
        Self::from_faces(self.vertices.clone(), faces)
    }

    /// Δ∖W, the subcomplex induced on the remaining vertices.
    pub fn delete<S: AsRef<str>>(&self, w: &[S]) -> Result<Self> {
        if self.is_empty() {
            return Ok(Self::empty());
        }
        let drop = self.mask_of(w)?;
        Self::from_faces(self.vertices.clone(), self.maximal.iter().map(|&f| f & !drop))
    }

    /// Δ[W]; labels of W outside the complex are ignored.
    pub fn induced<S: AsRef<str>>(&self, w: &[S]) -> Self {
        if self.is_empty() {
            return Self::empty();
        }
        let keep = w
            .iter()
            .filter_map(|v| self.vertex_index(v.as_ref()).ok())
            .fold(0u64, |m, i| m | (1 << i));
        Self::from_faces(self.vertices.clone(), self.maximal.iter().map(|&f| f & keep))
            .expect("same vertices")
    }

    /// apex ∗ Δ.
    pub fn cone(&self, apex: impl Into<Label>) -> Result<Self> {
        let apex = apex.into();
        if self.vertices.contains(&apex) {
            return Err(Error::DuplicateVertex(apex.to_string()));
        }
        if self.is_empty() {
            return Ok(Self::empty());
        }
        let mut vertices = self.vertices.clone();
        vertices.push(apex);
        let bit = 1u64 << (vertices.len() - 1);
        Self::from_faces(vertices, self.maximal.iter().map(|&f| f | bit))
    }

    /// True when every maximal face contains `v`.
    pub fn is_cone_with_apex(&self, v: &str) -> bool {
        match self.vertex_index(v) {
            Ok(i) => !self.maximal.is_empty() && self.maximal.iter().all(|&f| f >> i & 1 == 1),
            Err(_) => false,
        }
    }

    fn aligned(&self, other: &Self) -> Result<(Vec<Label>, Vec<FaceMask>, Vec<FaceMask>)> {
        let labels: BTreeSet<Label> = self.vertices.iter().chain(&other.vertices).cloned().collect();
        let labels: Vec<Label> = labels.into_iter().collect();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices { count: labels.len(), max: MAX_VERTICES });
        }
        let remap = |c: &Self| -> Vec<FaceMask> {
            let pos: Vec<usize> = c.vertices.iter().map(|v| labels.binary_search(v).expect("present")).collect();
            c.maximal.iter().map(|&f| bits(f).fold(0u64, |a, b| a | (1 << pos[b]))).collect()
        };
        let a = remap(self);
        let b = remap(other);
        Ok((labels, a, b))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        let (labels, a, b) = self.aligned(other)?;
        Self::from_faces(labels, a.into_iter().chain(b))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        let (labels, a, b) = self.aligned(other)?;
        let faces: Vec<FaceMask> = a.iter().flat_map(|&x| b.iter().map(move |&y| x & y)).collect();
        Self::from_faces(labels, faces)
    }

    /// True when every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.maximal_face_labels().iter().all(|f| match other.mask_of(f) {
            Ok(m) => other.contains_face(m),
            Err(_) => false,
        })
    }

    /// Removes the interiors of the given maximal faces, keeping their boundaries.
    pub fn remove_faces(&self, faces: &[FaceMask]) -> Result<Self> {
        for &f in faces {
            if !self.is_maximal_face(f) {
                return Err(Error::NotMaximal(format_face(&self.labels_of(f))));
            }
        }
        let removed: HashSet<FaceMask> = faces.iter().copied().collect();
        let mut kept: Vec<FaceMask> = self.maximal.iter().copied().filter(|f| !removed.contains(f)).collect();
        for &f in &removed {
            kept.extend(bits(f).map(|b| f & !(1 << b)));
        }
        Self::from_faces(self.vertices.clone(), kept)
    }

    /// Checks the pairwise shelling condition: for all i < k there are j < k
    /// and e ∈ F_k with F_i ∩ F_k ⊆ F_j ∩ F_k = F_k ∖ {e}.
    pub fn is_shelling(&self, order: &[FaceMask]) -> Result<ShellingVerdict> {
        let mut given = order.to_vec();
        given.sort_unstable();
        let mut own = self.maximal.clone();
        own.sort_unstable();
        if given != own {
            return Err(Error::NotAPermutation);
        }
        for k in 1..order.len() {
            let fk = order[k];
            let facets: Vec<FaceMask> = bits(fk)
                .map(|e| fk & !(1 << e))
                .filter(|&facet| order[..k].iter().any(|&fj| fj & fk == facet))
                .collect();
            for (i, &fi) in order[..k].iter().enumerate() {
                let meet = fi & fk;
                if !facets.iter().any(|&f| meet & f == meet) {
                    return Ok(ShellingVerdict::Violation { i: i + 1, k: k + 1 });
                }
            }
        }
        Ok(ShellingVerdict::Shelling)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
            maximal_faces: self
                .maximal
                .iter()
                .map(|&f| self.labels_of(f).into_iter().map(|l| l.to_string()).collect())
                .collect(),
        }
    }

    /// Reads the JSON form; the vertex order in `vertices` is kept.
    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let vertices: Vec<Label> = json.vertices.iter().map(Label::from).collect();
        if json.maximal_faces.is_empty() {
            return Ok(Self::empty());
        }
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices { count: vertices.len(), max: MAX_VERTICES });
        }
        let pos = |v: &String| {
            vertices.iter().position(|l| l == v.as_str()).ok_or_else(|| Error::UnknownVertex(v.clone()))
        };
        let faces = json
            .maximal_faces
            .iter()
            .map(|f| f.iter().try_fold(0u64, |m, v| Ok(m | (1 << pos(v)?))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_faces(vertices, faces)
    }

    /// Canonical label-level form used for equality.
    pub fn label_faces(&self) -> BTreeSet<Vec<Label>> {
        self.maximal
            .iter()
            .map(|&f| {
                let mut l = self.labels_of(f);
                l.sort();
                l
            })
            .collect()
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.label_faces() == other.label_faces()
    }
}

impl Eq for SimplicialComplex {}

/// `{a,b}` rendering of a face.
pub fn format_face(face: &[Label]) -> String {
    let inner: Vec<&str> = face.iter().map(Label::as_str).collect();
    format!("{{{}}}", inner.join(","))
}
