use std::collections::BTreeSet;

use serde::Serialize;

use super::ind;
use crate::complex::{format_face, FaceMask, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::homology::{betti, greedy_collapse};
use crate::homotopy::HomotopyType;
use crate::label::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStrength {
    /// The residual complex collapsed to a single vertex.
    Collapse,
    /// Greedy collapse got stuck but the residual has trivial reduced ℤ₂ homology.
    Z2Acyclic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub strength: CertificateStrength,
    pub collapse_steps: usize,
    /// Reduced Betti numbers of the host complex.
    pub host_betti: Vec<u64>,
}

/// Maximal faces whose removal leaves a contractible complex, plus the
/// certificate once checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GeneratingFaces {
    pub faces: Vec<Vec<Label>>,
    pub certificate: Option<Certificate>,
}

impl GeneratingFaces {
    fn new(faces: Vec<Vec<Label>>) -> Self {
        let mut faces: Vec<Vec<Label>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect();
        faces.sort();
        faces.dedup();
        GeneratingFaces { faces, certificate: None }
    }

    /// Wedge of one sphere per face, of the face's dimension.
    pub fn homotopy(&self) -> HomotopyType {
        HomotopyType::from_dims(self.faces.iter().map(|f| f.len().saturating_sub(1)))
    }

    /// Faces as `{a,b},{c}` in sorted order.
    pub fn table(&self) -> String {
        if self.faces.is_empty() {
            return "∅".to_string();
        }
        self.faces.iter().map(|f| format_face(f)).collect::<Vec<_>>().join(",")
    }

    /// Runs [`verify_generating_faces`] on `host` and stores the result.
    pub fn certify(mut self, host: &SimplicialComplex) -> Result<Self> {
        self.certificate = Some(verify_generating_faces(host, &self.faces)?);
        Ok(self)
    }
}

fn least_clique_vertex(g: &UndirectedGraph) -> Option<usize> {
    (0..g.vertex_count()).find(|&u| g.is_clique_indices(&g.neighbor_indices(u).iter().copied().collect::<Vec<_>>()))
}

/// Type and generating faces of Ind(g), recursing through the least vertex
/// whose neighborhood is a clique.
pub fn recursive_gen_faces(g: &UndirectedGraph) -> Result<(HomotopyType, GeneratingFaces)> {
    if g.vertex_count() == 0 {
        return Ok((HomotopyType::Empty, GeneratingFaces::default()));
    }
    let u = least_clique_vertex(g).ok_or_else(|| Error::RecursionStuck(g.vertices().iter().map(|l| l.to_string()).collect()))?;
    complete_nbhd_at(g, u)
}

fn complete_nbhd_at(g: &UndirectedGraph, u: usize) -> Result<(HomotopyType, GeneratingFaces)> {
    let nu = g.neighbor_indices(u);
    let mut terms = Vec::new();
    let mut faces = Vec::new();
    for &v in nu {
        let drop: BTreeSet<usize> = nu.union(g.neighbor_indices(v)).copied().collect();
        let residual = g.without_indices(&drop);
        let v_label = g.label(v).clone();
        if residual.vertex_count() == 0 {
            terms.push(HomotopyType::Empty.susp());
            faces.push(vec![v_label]);
        } else {
            let (h, gv) = recursive_gen_faces(&residual)?;
            terms.push(h.susp());
            faces.extend(gv.faces.into_iter().map(|mut f| {
                f.push(v_label.clone());
                f
            }));
        }
    }
    Ok((HomotopyType::wedge(&terms)?, GeneratingFaces::new(faces)))
}

/// Ind(g) ≃ ⋁_{v∈N(u)} susp Ind(g∖(N(u)∪N(v))) when N(u) is a clique. An empty
/// neighborhood makes Ind(g) a cone with apex u: a point with no generating faces.
pub fn gen_faces_complete_nbhd(g: &UndirectedGraph, u: &str) -> Result<(HomotopyType, GeneratingFaces)> {
    let ui = g.vertex_index(u)?;
    let nu: Vec<usize> = g.neighbor_indices(ui).iter().copied().collect();
    if !g.is_clique_indices(&nu) {
        return Err(Error::NeighborhoodNotClique(u.to_string()));
    }
    complete_nbhd_at(g, ui)
}

/// Extends generating faces `gf` of Ind(g∖K) over a clique K, provided every
/// face of `gf` has a neighbor of each k ∈ K.
pub fn gen_faces_clique<S: AsRef<str>>(
    g: &UndirectedGraph,
    k: &[S],
    gf: &GeneratingFaces,
) -> Result<(HomotopyType, GeneratingFaces)> {
    let ks: BTreeSet<usize> = k.iter().map(|v| g.vertex_index(v.as_ref())).collect::<Result<_>>()?;
    if ks.is_empty() {
        return Err(Error::InvalidParameter("clique must be nonempty".into()));
    }
    if !g.is_clique_indices(&ks.iter().copied().collect::<Vec<_>>()) {
        return Err(Error::CliqueRequired);
    }
    if ks.len() == g.vertex_count() {
        return Err(Error::InvalidParameter("graph minus the clique has no vertices".into()));
    }
    for face in &gf.faces {
        let idx: Vec<usize> = face.iter().map(|l| g.vertex_index(l.as_str())).collect::<Result<_>>()?;
        if let Some(&bad) = idx.iter().find(|i| ks.contains(i)) {
            return Err(Error::ConditionViolated(format!("face {} contains clique vertex {}", format_face(face), g.label(bad))));
        }
        for &kv in &ks {
            if !idx.iter().any(|&i| g.are_adjacent(i, kv)) {
                return Err(Error::ConditionViolated(format!(
                    "face {} has no vertex adjacent to {}",
                    format_face(face),
                    g.label(kv)
                )));
            }
        }
    }
    let mut terms = vec![gf.homotopy()];
    let mut faces = gf.faces.clone();
    for &kv in &ks {
        let drop: BTreeSet<usize> = ks.union(g.neighbor_indices(kv)).copied().collect();
        let residual = g.without_indices(&drop);
        let k_label = g.label(kv).clone();
        if residual.vertex_count() == 0 {
            terms.push(HomotopyType::Empty.susp());
            faces.push(vec![k_label]);
        } else {
            let (h, gk) = recursive_gen_faces(&residual)?;
            terms.push(h.susp());
            faces.extend(gk.faces.into_iter().map(|mut f| {
                f.push(k_label.clone());
                f
            }));
        }
    }
    Ok((HomotopyType::wedge(&terms)?, GeneratingFaces::new(faces)))
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("n must be at least 1, got {n}")));
    }
    if k < 1 {
        return Err(Error::InvalidParameter(format!("k must be at least 1, got {k}")));
    }
    Ok(())
}

/// Vertices 1..=n, i < j adjacent when j − i < k.
pub fn l_graph(n: usize, k: usize) -> Result<UndirectedGraph> {
    check_nk(n, k)?;
    let edges = (1..=n).flat_map(|i| (i + 1..=n).filter(move |j| j - i < k).map(move |j| (i, j)));
    UndirectedGraph::new(1..=n, edges)
}

/// As [`l_graph`], also adjacent when (n + i) − j < k.
pub fn c_graph(n: usize, k: usize) -> Result<UndirectedGraph> {
    check_nk(n, k)?;
    if n < 2 * k - 1 {
        return Err(Error::DegenerateCycle { n, k });
    }
    let edges = (1..=n).flat_map(|i| (i + 1..=n).filter(move |j| j - i < k || n + i - j < k).map(move |j| (i, j)));
    UndirectedGraph::new(1..=n, edges)
}

/// Homotopy type of Ind(l_graph(n, k)) from the closed recursion alone;
/// n ≤ 0 is the empty space.
pub fn l_homotopy(n: i64, k: usize) -> Result<HomotopyType> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if n <= 0 {
        return Ok(HomotopyType::Empty);
    }
    let k = k as i64;
    let terms = (1..k.min(n)).map(|i| l_homotopy(n - k - i, k as usize).map(|h| h.susp())).collect::<Result<Vec<_>>>()?;
    HomotopyType::wedge(&terms)
}

/// Generating faces of Ind(l_graph(n, k)) by recursion at u = 1.
pub fn gen_faces_l(n: usize, k: usize) -> Result<(HomotopyType, GeneratingFaces)> {
    gen_faces_complete_nbhd(&l_graph(n, k)?, "1")
}

/// Generating faces of Ind(c_graph(n, k)) through the clique {1, 2}.
pub fn gen_faces_c(n: usize, k: usize) -> Result<(HomotopyType, GeneratingFaces)> {
    let g = c_graph(n, k)?;
    let (_, gf) = recursive_gen_faces(&g.without(&["1", "2"])?)?;
    gen_faces_clique(&g, &["1", "2"], &gf)
}

/// Checks that `faces` are maximal in `c` and that removing their interiors
/// leaves a contractible complex, by collapse or, failing that, homology.
pub fn verify_generating_faces(c: &SimplicialComplex, faces: &[Vec<Label>]) -> Result<Certificate> {
    let mut masks: Vec<FaceMask> = Vec::with_capacity(faces.len());
    for f in faces {
        let mask = c.mask_of(f).map_err(|_| Error::NotMaximal(format_face(f)))?;
        if f.is_empty() || !c.is_maximal_face(mask) {
            return Err(Error::NotMaximal(format_face(f)));
        }
        masks.push(mask);
    }
    let host = betti(c)?;
    let predicted = HomotopyType::from_dims(faces.iter().map(|f| f.len() - 1));
    if host.empty || Some(host.trimmed()) != predicted.betti() {
        return Err(Error::NotAcyclic(format!(
            "host Betti numbers {:?} differ from face dimensions ({predicted})",
            host.trimmed()
        )));
    }
    let residual = c.remove_faces(&masks)?;
    let outcome = greedy_collapse(&residual)?;
    let strength = if outcome.is_point() {
        CertificateStrength::Collapse
    } else if betti(&residual)?.is_acyclic() {
        CertificateStrength::Z2Acyclic
    } else {
        return Err(Error::NotAcyclic(format!("{} faces remain after collapsing", outcome.remaining.maximal_faces().len())));
    };
    Ok(Certificate { strength, collapse_steps: outcome.steps.len(), host_betti: host.trimmed() })
}

/// Ind(g) together with its generating faces, certified.
pub fn certified(g: &UndirectedGraph, gf: GeneratingFaces) -> Result<GeneratingFaces> {
    gf.certify(&ind(g)?)
}
