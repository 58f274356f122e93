//! Brute-force ground truth: reduced ℤ₂ homology from boundary-matrix ranks,
//! greedy elementary collapses, and comparison against predicted homotopy types.
//!
//! Every homotopy type asserted elsewhere in the crate is a wedge of spheres,
//! which is torsion-free, so ℤ₂ Betti numbers are enough to tell predictions apart.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::{bits, FaceMask, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homotopy::HomotopyType;

/// Reduced ℤ₂ Betti numbers b̃₀..b̃_D, or the empty-space flag. Equality
/// ignores trailing zeros.
#[derive(Clone, Debug, Serialize)]
pub struct BettiVector {
    pub reduced: Vec<u64>,
    /// Set when the complex has no vertices; b̃₋₁ = 1 is implied and never stored.
    pub empty: bool,
}

impl BettiVector {
    /// The vector with trailing zeros removed.
    pub fn trimmed(&self) -> Vec<u64> {
        let mut v = self.reduced.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn is_acyclic(&self) -> bool {
        !self.empty && self.reduced.iter().all(|&b| b == 0)
    }

    pub fn euler(&self) -> i64 {
        if self.empty {
            return -1;
        }
        self.reduced.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

impl PartialEq for BettiVector {
    fn eq(&self, other: &Self) -> bool {
        self.empty == other.empty && self.trimmed() == other.trimmed()
    }
}

impl Eq for BettiVector {}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
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

/// Rank over ℤ₂ of a matrix given by sparse sorted columns (standard column reduction).
fn column_rank(columns: Vec<Vec<usize>>) -> usize {
    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut reduced: Vec<Vec<usize>> = Vec::new();
    for mut col in columns {
        while let Some(&low) = col.last() {
            match owner.get(&low) {
                Some(&j) => col = symmetric_difference(&col, &reduced[j]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            owner.insert(low, reduced.len());
            reduced.push(col);
        }
    }
    reduced.len()
}

fn boundary_columns(faces: &[FaceMask], facets: &[FaceMask]) -> Vec<Vec<usize>> {
    let index: HashMap<FaceMask, usize> = facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    faces
        .iter()
        .map(|&f| {
            let mut col: Vec<usize> = bits(f).map(|b| index[&(f & !(1 << b))]).collect();
            col.sort_unstable();
            col
        })
        .collect()
}

fn ranks(groups: &[Vec<FaceMask>]) -> Vec<usize> {
    // ranks[d] = rank of ∂_d : C_d → C_{d-1}; ∂_0 is zero here.
    let mut out = vec![0; groups.len() + 1];
    for d in 1..groups.len() {
        out[d] = column_rank(boundary_columns(&groups[d], &groups[d - 1]));
    }
    out
}

/// Rank of the d-th boundary matrix over ℤ₂. The augmentation ε: C₀ → ℤ₂ is
/// not part of ∂₀, so `d = 0` gives 0.
pub fn boundary_rank(c: &SimplicialComplex, d: usize) -> Result<usize> {
    let groups = c.all_faces()?;
    if d == 0 || d >= groups.len() {
        return Ok(0);
    }
    Ok(column_rank(boundary_columns(&groups[d], &groups[d - 1])))
}

fn betti_of_groups(groups: &[Vec<FaceMask>]) -> BettiVector {
    if groups.is_empty() {
        return BettiVector { reduced: Vec::new(), empty: true };
    }
    let r = ranks(groups);
    let reduced = (0..groups.len())
        .map(|d| {
            let incoming = if d == 0 { 1 } else { r[d] };
            (groups[d].len() - incoming - r[d + 1]) as u64
        })
        .collect();
    BettiVector { reduced, empty: false }
}

pub fn betti(c: &SimplicialComplex) -> Result<BettiVector> {
    Ok(betti_of_groups(&c.all_faces()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub matches: bool,
    pub expected: Option<Vec<u64>>,
    pub observed: BettiVector,
    pub detail: String,
}

/// Compares the complex with a predicted homotopy type at the level of ℤ₂ homology.
pub fn matches(c: &SimplicialComplex, h: &HomotopyType) -> Result<MatchReport> {
    let observed = betti(c)?;
    let expected = h.betti();
    let ok = match &expected {
        None => observed.empty,
        Some(e) => !observed.empty && observed.trimmed() == *e,
    };
    let detail = if ok {
        format!("betti {:?} matches {h}", observed.trimmed())
    } else if observed.empty {
        format!("complex is empty but {h} was predicted")
    } else {
        format!("betti {:?} does not match {h} (expected {:?})", observed.trimmed(), expected.unwrap_or_default())
    };
    Ok(MatchReport { matches: ok, expected: h.betti(), observed, detail })
}

/// One elementary collapse: `free` lies in exactly one other face, `coface`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseStep {
    pub free: FaceMask,
    pub coface: FaceMask,
}

#[derive(Clone, Debug)]
pub struct CollapseOutcome {
    pub remaining: SimplicialComplex,
    pub steps: Vec<CollapseStep>,
}

impl CollapseOutcome {
    /// The strong contractibility certificate: collapsed to a single vertex.
    pub fn is_point(&self) -> bool {
        self.remaining.vertex_count() == 1
    }
}

/// Repeatedly removes a free pair until none is left.
///
/// A nonempty face is free when exactly one face of one dimension higher
/// contains it; that face is then necessarily maximal. Candidates are taken
/// highest dimension first, then by mask, so the log is deterministic.
pub fn greedy_collapse(c: &SimplicialComplex) -> Result<CollapseOutcome> {
    let groups = c.all_faces()?;
    let n = c.vertex_count();
    let mut present: std::collections::HashSet<FaceMask> = groups.iter().flatten().copied().collect();
    let coface_count = |present: &std::collections::HashSet<FaceMask>, f: FaceMask| -> usize {
        (0..n).filter(|&v| f >> v & 1 == 0 && present.contains(&(f | (1 << v)))).count()
    };
    let mut counts: HashMap<FaceMask, usize> = present.iter().map(|&f| (f, coface_count(&present, f))).collect();
    let key = |f: FaceMask| (std::cmp::Reverse(f.count_ones()), f);
    let mut candidates: BTreeSet<(std::cmp::Reverse<u32>, FaceMask)> =
        counts.iter().filter(|(_, &k)| k == 1).map(|(&f, _)| key(f)).collect();
    let mut steps = Vec::new();

    while let Some(entry) = candidates.pop_first() {
        let free = entry.1;
        if !present.contains(&free) || counts[&free] != 1 {
            continue;
        }
        let coface = (0..n)
            .filter(|&v| free >> v & 1 == 0)
            .map(|v| free | (1 << v))
            .find(|f| present.contains(f))
            .expect("free face has a coface");
        for removed in [coface, free] {
            present.remove(&removed);
            counts.remove(&removed);
            for b in bits(removed) {
                let facet = removed & !(1 << b);
                if facet == 0 {
                    continue;
                }
                if let Some(k) = counts.get_mut(&facet) {
                    *k -= 1;
                    if *k == 1 {
                        candidates.insert(key(facet));
                    }
                }
            }
        }
        steps.push(CollapseStep { free, coface });
    }

    let remaining = if present.is_empty() {
        SimplicialComplex::void()
    } else {
        SimplicialComplex::from_faces(c.vertices().to_vec(), present)?
    };
    Ok(CollapseOutcome { remaining, steps })
}

/// Largest k with b̃_i = 0 for 0 ≤ i ≤ k; −1 when b̃₀ > 0. An acyclic complex
/// reports its dimension.
pub fn homological_connectivity(c: &SimplicialComplex) -> Result<i64> {
    let b = betti(c)?;
    if b.empty {
        return Err(Error::EmptyComplex);
    }
    match b.reduced.iter().position(|&x| x > 0) {
        Some(i) => Ok(i as i64 - 1),
        None => c.dim(),
    }
}

/// Homological connectivity with the empty space read as (−2)-connected,
/// which keeps Mayer–Vietoris style hypotheses uniform.
pub fn connectivity_or_empty(c: &SimplicialComplex) -> Result<i64> {
    match homological_connectivity(c) {
        Err(Error::EmptyComplex) => Ok(-2),
        other => other,
    }
}
