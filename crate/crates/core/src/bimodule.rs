//! Bimodules: vertex sets every outsider relates to uniformly.
//!
//! A set m is a bimodule when each vertex outside m is either nonadjacent to
//! m or adjacent to every opposite-color vertex of m. Sets with at most one
//! vertex per color are bimodules for free (a one-vertex side leaves nothing
//! to distinguish), so only sets with two vertices of some color carry
//! structure; those are the nontrivial ones.

use std::collections::HashSet;

use crate::decompose::ks_partition;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, VertexRef, VertexSet};

/// True iff every vertex outside `m` is nonadjacent to `m` or adjacent to
/// every opposite-color vertex of `m`. An outside vertex facing an empty
/// opposite side inside `m` counts as fully adjacent.
pub fn is_bimodule(g: &BipartiteGraph, m: &VertexSet) -> bool {
    first_violator(g, m).is_none()
}

/// An outside vertex that is neither nonadjacent nor fully adjacent to `m`,
/// if one exists. Blacks in index order are scanned before whites.
fn first_violator(g: &BipartiteGraph, m: &VertexSet) -> Option<VertexRef> {
    for b in 0..g.n_black() {
        if !m.blacks.contains(b) {
            let seen = g.black_row(b).and(&m.whites);
            if !seen.is_empty() && seen != m.whites {
                return Some(VertexRef::black(b));
            }
        }
    }
    for w in 0..g.n_white() {
        if !m.whites.contains(w) {
            let seen = g.white_row(w).and(&m.blacks);
            if !seen.is_empty() && seen != m.blacks {
                return Some(VertexRef::white(w));
            }
        }
    }
    None
}

/// Inclusion-minimal bimodule containing `seed`, by iterated closure: any
/// outside vertex that sees part but not all of the current set's opposite
/// color must itself be inside every bimodule containing the set, so it is
/// absorbed until no violator remains.
pub fn minimal_bimodule_containing(g: &BipartiteGraph, seed: &VertexSet) -> VertexSet {
    debug_assert!(!seed.is_empty());
    let mut m = seed.clone();
    while let Some(v) = first_violator(g, &m) {
        m.insert(v);
    }
    m
}

/// Inclusion-maximal proper bimodules with at least two vertices of one
/// color.
///
/// Exact search over shrinking regions: every maximal proper bimodule avoids
/// some vertex, so the search starts from each V minus one vertex. While a
/// region is not itself a bimodule it has an outside violator v, and any
/// bimodule inside the region must make v uniform, either by avoiding all of
/// v's neighbors or by avoiding every opposite-color vertex v misses. Both
/// branches remove at least one vertex, and a region that is a bimodule is
/// the unique maximal one inside itself, so recursion stops there.
pub fn maximal_nontrivial_bimodules(g: &BipartiteGraph) -> Vec<VertexSet> {
    let mut found: Vec<VertexSet> = Vec::new();
    let mut visited: HashSet<VertexSet> = HashSet::new();
    for v in 0..g.n_vertices() {
        let mut region = VertexSet::full(g);
        region.remove(vertex_by_id(g, v));
        shrink_to_bimodules(g, region, &mut found, &mut visited);
    }
    found.retain(|m| m.count_black() >= 2 || m.count_white() >= 2);
    found.sort_by_key(|m| m.to_refs());
    found
}

fn vertex_by_id(g: &BipartiteGraph, v: usize) -> VertexRef {
    if v < g.n_black() {
        VertexRef::black(v)
    } else {
        VertexRef::white(v - g.n_black())
    }
}

fn shrink_to_bimodules(
    g: &BipartiteGraph,
    region: VertexSet,
    found: &mut Vec<VertexSet>,
    visited: &mut HashSet<VertexSet>,
) {
    if region.count() < 2 {
        return;
    }
    // anything inside a known bimodule is dominated by it
    if found.iter().any(|m| region.is_subset(m)) {
        return;
    }
    if !visited.insert(region.clone()) {
        return;
    }
    match first_violator(g, &region) {
        None => {
            found.retain(|m| !m.is_subset(&region));
            found.push(region);
        }
        Some(v) => {
            // branch 1: v stays nonadjacent, so drop v's neighbors
            let mut avoid_neighbors = region.clone();
            // branch 2: v becomes fully adjacent, so drop what v misses
            let mut avoid_misses = region.clone();
            match v.color {
                crate::graph::Color::Black => {
                    avoid_neighbors.whites.subtract(g.black_row(v.index));
                    let misses = g.black_row(v.index).negate();
                    avoid_misses.whites.subtract(&misses);
                }
                crate::graph::Color::White => {
                    avoid_neighbors.blacks.subtract(g.white_row(v.index));
                    let misses = g.white_row(v.index).negate();
                    avoid_misses.blacks.subtract(&misses);
                }
            }
            shrink_to_bimodules(g, avoid_neighbors, found, visited);
            shrink_to_bimodules(g, avoid_misses, found, visited);
        }
    }
}

/// The canonical structure of a graph admitting no Parallel, Series, or K+S
/// split: maximal nontrivial proper bimodules, the augmenting vertices they
/// share, and the resulting partition.
#[derive(Debug, Clone)]
pub struct CanonicalPartition {
    pub maximal_nontrivial: Vec<VertexSet>,
    /// Vertices lying in at least two maximal sets.
    pub augmenting: Vec<VertexRef>,
    /// Partition of V: remainders of maximal sets that keep >= 2 vertices
    /// and remain bimodules, plus singletons for everything else, ordered by
    /// smallest member.
    pub parts: Vec<VertexSet>,
}

/// Partition of V into maximal canonical bimodules and singletons.
///
/// A maximal set contributes its remainder after removing augmenting
/// vertices; if the remainder drops below 2 vertices or stops being a
/// bimodule it dissolves into singletons instead, which keeps every
/// nontrivial part a bimodule and the quotient well defined. Remainders of
/// distinct maximal sets never overlap: a shared vertex would be augmenting.
pub fn maximal_canonical_bimodules(g: &BipartiteGraph) -> Result<CanonicalPartition> {
    if ks_partition(g).is_some() {
        return Err(Error::PreconditionViolated(
            "graph admits a K+S decomposition; canonical bimodule partition is for the prime case"
                .into(),
        ));
    }
    if g.connected_components().len() > 1 {
        return Err(Error::PreconditionViolated(
            "graph admits a Parallel decomposition; canonical bimodule partition is for the prime case"
                .into(),
        ));
    }
    if g.bipartite_complement().connected_components().len() > 1 {
        return Err(Error::PreconditionViolated(
            "graph admits a Series decomposition; canonical bimodule partition is for the prime case"
                .into(),
        ));
    }

    let maximal = maximal_nontrivial_bimodules(g);

    let mut count = vec![0usize; g.n_vertices()];
    for m in &maximal {
        for r in m.iter_refs() {
            count[ref_id(g, r)] += 1;
        }
    }
    let augmenting: Vec<VertexRef> = (0..g.n_vertices())
        .filter(|&v| count[v] >= 2)
        .map(|v| vertex_by_id(g, v))
        .collect();
    let aug_set = VertexSet::from_refs(g, &augmenting);

    let mut parts: Vec<VertexSet> = Vec::new();
    let mut covered = VertexSet::empty(g);
    for m in &maximal {
        let mut r = m.clone();
        r.subtract(&aug_set);
        if r.count() >= 2 && is_bimodule(g, &r) {
            covered.union_with(&r);
            parts.push(r);
        }
    }
    for v in 0..g.n_vertices() {
        let r = vertex_by_id(g, v);
        if !covered.contains(r) {
            parts.push(VertexSet::from_refs(g, &[r]));
        }
    }
    parts.sort_by_key(|p| p.min_ref());

    Ok(CanonicalPartition { maximal_nontrivial: maximal, augmenting, parts })
}

fn ref_id(g: &BipartiteGraph, r: VertexRef) -> usize {
    match r.color {
        crate::graph::Color::Black => r.index,
        crate::graph::Color::White => g.n_black() + r.index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{cycle, path, position_ref, star123};

    fn set(g: &BipartiteGraph, positions: &[usize]) -> VertexSet {
        let refs: Vec<VertexRef> = positions.iter().map(|&p| position_ref(p)).collect();
        VertexSet::from_refs(g, &refs)
    }

    #[test]
    fn pairs_and_v_are_bimodules() {
        let g = path(7);
        assert!(is_bimodule(&g, &set(&g, &[1, 2])));
        assert!(!is_bimodule(&g, &set(&g, &[1, 2, 3]))); // vertex 4 sees 3, misses 1
        assert!(is_bimodule(&g, &VertexSet::full(&g)));
        assert!(is_bimodule(&g, &set(&g, &[5])));
    }

    #[test]
    fn closure_on_path_seven() {
        let g = path(7);
        assert_eq!(minimal_bimodule_containing(&g, &set(&g, &[1])), set(&g, &[1]));
        // {1,3} forces 4 (it sees 3 but not 1) and then closes
        let c = minimal_bimodule_containing(&g, &set(&g, &[1, 3]));
        assert_eq!(c, set(&g, &[1, 3, 4]));
        assert!(is_bimodule(&g, &c));
    }

    #[test]
    fn closure_of_antipodes_on_cycle_eight_is_everything() {
        let g = cycle(8);
        let c = minimal_bimodule_containing(&g, &set(&g, &[1, 5]));
        assert_eq!(c, VertexSet::full(&g));
    }

    #[test]
    fn maximal_family_of_path_seven() {
        let g = path(7);
        let fam = maximal_nontrivial_bimodules(&g);
        assert_eq!(fam, vec![set(&g, &[1, 3, 4]), set(&g, &[4, 5, 7])]);
    }

    #[test]
    fn canonical_partition_of_path_seven_is_all_singletons() {
        // the two maximal sets share vertex 4; removing it leaves {1,3} and
        // {5,7}, neither a bimodule (2 sees 1 but not 3; 6 sees 5 not 7), so
        // everything dissolves
        let g = path(7);
        let cp = maximal_canonical_bimodules(&g).unwrap();
        assert_eq!(cp.maximal_nontrivial.len(), 2);
        assert_eq!(cp.augmenting, vec![position_ref(4)]);
        assert_eq!(cp.parts.len(), 7);
        assert!(cp.parts.iter().all(|p| p.count() == 1));
    }

    #[test]
    fn canonical_partition_of_star123() {
        let g = star123();
        let cp = maximal_canonical_bimodules(&g).unwrap();
        assert_eq!(cp.maximal_nontrivial.len(), 3);
        assert_eq!(cp.augmenting.len(), 2);
        let sizes: Vec<usize> = cp.parts.iter().map(|p| p.count()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 7);
        assert_eq!(cp.parts.len(), 5);
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 2);
        for p in &cp.parts {
            assert!(is_bimodule(&g, p));
        }
    }

    #[test]
    fn decomposable_graphs_are_rejected() {
        // 2 K2's: Parallel split
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 0), (1, 1)]);
        assert!(matches!(
            maximal_canonical_bimodules(&g),
            Err(Error::PreconditionViolated(_))
        ));
        // P5 has a K+S split at its middle black vertex
        assert!(matches!(
            maximal_canonical_bimodules(&path(5)),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
