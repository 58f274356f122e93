use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::homotopy::HomotopyType;
use crate::label::Label;

/// Removal of `removed` because N(kept) ⊆ N(removed) at that moment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldStep {
    pub kept: Label,
    pub removed: Label,
}

fn find_fold_indices(g: &UndirectedGraph) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    (0..n).find_map(|v| {
        let nv = g.neighbor_indices(v);
        (0..n).find(|&w| w != v && nv.is_subset(g.neighbor_indices(w))).map(|w| (v, w))
    })
}

/// Least ordered pair (v, w), v ≠ w, with N(v) ⊆ N(w).
pub fn find_fold(g: &UndirectedGraph) -> Option<FoldStep> {
    find_fold_indices(g).map(|(v, w)| FoldStep { kept: g.label(v).clone(), removed: g.label(w).clone() })
}

/// Folds until no containment is left.
pub fn fold_reduce(g: &UndirectedGraph) -> Result<(UndirectedGraph, Vec<FoldStep>)> {
    let mut current = g.clone();
    let mut steps = Vec::new();
    while let Some((v, w)) = find_fold_indices(&current) {
        steps.push(FoldStep { kept: current.label(v).clone(), removed: current.label(w).clone() });
        current = current.without_indices(&BTreeSet::from([w]));
    }
    Ok((current, steps))
}

/// Ind of a forest: a point, or one sphere of dimension m − 1 after folding
/// down to m disjoint edges.
pub fn forest_homotopy(g: &UndirectedGraph) -> Result<HomotopyType> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    if g.vertex_count() == 0 {
        return Ok(HomotopyType::Empty);
    }
    let (reduced, _) = fold_reduce(g)?;
    debug_assert!(reduced.max_degree() <= 1);
    if (0..reduced.vertex_count()).any(|i| reduced.neighbor_indices(i).is_empty()) {
        return Ok(HomotopyType::point());
    }
    Ok(HomotopyType::sphere(reduced.edge_count() - 1))
}
