//! Brute-force ground truth, kept deliberately independent of the
//! decomposition and DP machinery.
//!
//! Everything here works straight from definitions: maxbisize sets by
//! enumerating subsets of the smaller color class, bimodules by testing
//! every vertex subset. Slow on purpose; the rest of the crate is tested
//! against these functions.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Color, VertexRef, VertexSet};
use crate::maxbisize::{bs, Bisize, MaxbisizeSet, Objective};

/// Hard cap on 2^min(|B|,|W|) subset enumeration.
pub const ORACLE_SIDE_LIMIT: usize = 20;
/// Hard cap on 2^n bimodule enumeration.
pub const ORACLE_BIMODULE_LIMIT: usize = 14;

/// Maxbisize set together with one realizing biclique per element.
#[derive(Debug, Clone)]
pub struct OracleWitnesses {
    pub set: MaxbisizeSet,
    /// Parallel to `set.items()`.
    pub witnesses: Vec<VertexSet>,
}

/// Strict-domination Pareto filter by pairwise comparison, returned sorted
/// by black ascending. Quadratic and trivially auditable; this is the
/// reference the array-based dom is checked against.
pub fn pareto_filter_naive(pairs: &[Bisize]) -> Vec<Bisize> {
    let mut kept: Vec<Bisize> = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        let dominated = pairs
            .iter()
            .any(|q| q.black >= p.black && q.white >= p.white && *q != *p);
        if !dominated && !pairs[..i].contains(p) {
            kept.push(*p);
        }
    }
    kept.sort();
    kept
}

fn subset_refs(color: Color, mask: u64) -> Vec<VertexRef> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| VertexRef { color, index: i })
        .collect()
}

/// Intersection of the rows selected by `mask`; full other side for mask 0.
fn common_neighborhood(rows: &[&BitSet], other: usize, mask: u64) -> BitSet {
    let mut inter = BitSet::full(other);
    for (i, row) in rows.iter().enumerate() {
        if mask >> i & 1 == 1 {
            inter.intersect_with(row);
        }
    }
    inter
}

/// Per-cardinality maximum of |common neighborhood| over all subsets of the
/// enumeration side, with a realizing subset mask for each cardinality.
fn best_by_count(rows: &[&BitSet], other: usize) -> Vec<(usize, u64)> {
    fn dfs(
        rows: &[&BitSet],
        i: usize,
        taken: usize,
        mask: u64,
        inter: &BitSet,
        best: &mut [Option<(usize, u64)>],
    ) {
        if i == rows.len() {
            let c = inter.count();
            if best[taken].map_or(true, |(w, _)| c > w) {
                best[taken] = Some((c, mask));
            }
            return;
        }
        dfs(rows, i + 1, taken, mask, inter, best);
        let mut next = inter.clone();
        next.intersect_with(rows[i]);
        dfs(rows, i + 1, taken + 1, mask | 1 << i, &next, best);
    }
    let mut best = vec![None; rows.len() + 1];
    dfs(rows, 0, 0, 0, &BitSet::full(other), &mut best);
    // every cardinality 0..=k is realized by some subset
    best.into_iter().map(Option::unwrap).collect()
}

/// Definitional maxbisize set with witnesses.
///
/// Every biclique is a subset S of one side together with a subset of the
/// common neighborhood N(S), so enumerating S over the smaller side and
/// pairing it with all of N(S) reaches every Pareto-maximal size pair.
pub fn oracle_maxbisizes_with_witnesses(g: &BipartiteGraph) -> Result<OracleWitnesses> {
    let enum_black = g.n_black() <= g.n_white();
    let k = g.n_black().min(g.n_white());
    if k > ORACLE_SIDE_LIMIT {
        return Err(Error::SizeLimit {
            msg: format!("oracle needs min(|B|,|W|) <= {ORACLE_SIDE_LIMIT}, got {k}"),
        });
    }
    let other = g.n_black().max(g.n_white());
    let rows: Vec<&BitSet> = if enum_black {
        (0..k).map(|i| g.black_row(i)).collect()
    } else {
        (0..k).map(|i| g.white_row(i)).collect()
    };
    let best = best_by_count(&rows, other);

    // candidate sizes; masks remember how the subset-derived ones arose
    let mut cand: Vec<(Bisize, Option<u64>)> = Vec::with_capacity(k + 3);
    for (t, &(w, mask)) in best.iter().enumerate() {
        let e = if enum_black { bs(t, w) } else { bs(w, t) };
        cand.push((e, Some(mask)));
    }
    cand.push((bs(g.n_black(), 0), None));
    cand.push((bs(0, g.n_white()), None));

    let pairs: Vec<Bisize> = cand.iter().map(|(e, _)| *e).collect();
    let front = pareto_filter_naive(&pairs);

    let mut witnesses = Vec::with_capacity(front.len());
    for e in &front {
        let provenance = cand.iter().find(|(c, _)| c == e).expect("front came from cand");
        let vs = match provenance.1 {
            Some(mask) => {
                let side = subset_refs(if enum_black { Color::Black } else { Color::White }, mask);
                let nbhd = common_neighborhood(&rows, other, mask);
                let mut vs = VertexSet::from_refs(g, &side);
                let opp = if enum_black { Color::White } else { Color::Black };
                for i in nbhd.iter() {
                    vs.insert(VertexRef { color: opp, index: i });
                }
                vs
            }
            None => {
                let mut vs = VertexSet::empty(g);
                if e.black > 0 {
                    for i in 0..g.n_black() {
                        vs.insert(VertexRef::black(i));
                    }
                } else {
                    for i in 0..g.n_white() {
                        vs.insert(VertexRef::white(i));
                    }
                }
                vs
            }
        };
        debug_assert!(g.is_biclique(&vs));
        debug_assert_eq!(bs(vs.count_black(), vs.count_white()), *e);
        witnesses.push(vs);
    }
    Ok(OracleWitnesses {
        set: MaxbisizeSet::from_sorted(front),
        witnesses,
    })
}

pub fn oracle_maxbisizes(g: &BipartiteGraph) -> Result<MaxbisizeSet> {
    oracle_maxbisizes_with_witnesses(g).map(|r| r.set)
}

/// Objective value, realizing size pair, and a concrete biclique of that size.
pub fn oracle_solve(
    g: &BipartiteGraph,
    objective: Objective,
) -> Result<(usize, Bisize, VertexSet)> {
    let ow = oracle_maxbisizes_with_witnesses(g)?;
    let (value, elem) = crate::maxbisize::reduce_objective(&ow.set, objective)?;
    let idx = ow.set.items().iter().position(|e| *e == elem).expect("element of the set");
    Ok((value, elem, ow.witnesses[idx].clone()))
}

/// Exhaustive bimodule family of a small graph plus the structures derived
/// from it: maximal nontrivial proper bimodules, augmenting vertices, and
/// the canonical partition.
///
/// The canonical partition is only meaningful when the graph admits no
/// Parallel, Series, or one-directional-join split; outside that case the
/// maximal sets may overlap in more than single vertices and `parts` is
/// whatever the definition yields.
#[derive(Debug, Clone)]
pub struct BimoduleEnumeration {
    /// Every nonempty bimodule, including V.
    pub bimodules: Vec<VertexSet>,
    /// Maximal elements among nontrivial proper bimodules.
    pub maximal_nontrivial: Vec<VertexSet>,
    /// Vertices lying in at least two maximal nontrivial proper bimodules.
    pub augmenting: Vec<VertexRef>,
    /// Canonical parts: each maximal set minus the augmenting vertices when
    /// at least 2 vertices remain and the remainder is still a bimodule,
    /// then singletons for uncovered vertices.
    pub parts: Vec<VertexSet>,
}

impl BimoduleEnumeration {
    /// Parts that are nontrivial as bimodules (at least 2 of one color).
    pub fn nontrivial_parts(&self) -> Vec<&VertexSet> {
        self.parts
            .iter()
            .filter(|p| p.count_black() >= 2 || p.count_white() >= 2)
            .collect()
    }
}

pub fn oracle_bimodules(g: &BipartiteGraph) -> Result<BimoduleEnumeration> {
    let nb = g.n_black();
    let nw = g.n_white();
    let n = nb + nw;
    if n > ORACLE_BIMODULE_LIMIT {
        return Err(Error::SizeLimit {
            msg: format!("bimodule oracle needs n <= {ORACLE_BIMODULE_LIMIT}, got {n}"),
        });
    }
    // bits 0..nb are blacks, bits nb..n are whites
    let rows_b: Vec<u32> = (0..nb)
        .map(|i| g.black_row(i).iter().fold(0u32, |m, j| m | 1 << j))
        .collect();
    let rows_w: Vec<u32> = (0..nw)
        .map(|j| g.white_row(j).iter().fold(0u32, |m, i| m | 1 << i))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    let is_bimodule_mask = |mask: u32| -> bool {
        let mb = mask & ((1u32 << nb) - 1);
        let mw = mask >> nb;
        for (b, row) in rows_b.iter().enumerate() {
            if mb >> b & 1 == 0 {
                let seen = row & mw;
                if seen != 0 && seen != mw {
                    return false;
                }
            }
        }
        for (w, row) in rows_w.iter().enumerate() {
            if mask >> (nb + w) & 1 == 0 {
                let seen = row & mb;
                if seen != 0 && seen != mb {
                    return false;
                }
            }
        }
        true
    };

    let mask_to_set = |mask: u32| -> VertexSet {
        let refs: Vec<VertexRef> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| {
                if i < nb {
                    VertexRef::black(i)
                } else {
                    VertexRef::white(i - nb)
                }
            })
            .collect();
        VertexSet::from_refs(g, &refs)
    };

    let mut bimodule_masks: Vec<u32> = Vec::new();
    let mut nontrivial_proper: Vec<u32> = Vec::new();
    for mask in 1..=full {
        if is_bimodule_mask(mask) {
            bimodule_masks.push(mask);
            let cb = (mask & ((1u32 << nb) - 1)).count_ones();
            let cw = (mask >> nb).count_ones();
            if (cb >= 2 || cw >= 2) && mask != full {
                nontrivial_proper.push(mask);
            }
        }
    }

    // downward closure over the subset lattice: down[s] iff some family
    // member contains s; then m is maximal iff no one-vertex extension of m
    // stays under a member
    let mut down = vec![false; 1 << n];
    for &m in &nontrivial_proper {
        down[m as usize] = true;
    }
    for bit in 0..n {
        for mask in 0..1u32 << n {
            if mask >> bit & 1 == 1 && down[mask as usize] {
                down[(mask ^ (1 << bit)) as usize] = true;
            }
        }
    }
    let maximal_masks: Vec<u32> = nontrivial_proper
        .iter()
        .copied()
        .filter(|&m| (0..n).all(|v| m >> v & 1 == 1 || !down[(m | 1 << v) as usize]))
        .collect();

    let mut in_count = vec![0usize; n];
    for &m in &maximal_masks {
        for v in 0..n {
            if m >> v & 1 == 1 {
                in_count[v] += 1;
            }
        }
    }
    let aug_mask: u32 = (0..n).filter(|&v| in_count[v] >= 2).fold(0, |a, v| a | 1 << v);

    // a remainder survives as a part only if it is still a bimodule; a
    // non-bimodule remainder dissolves into singletons so every nontrivial
    // part keeps the class property the quotient construction relies on
    let mut parts_masks: Vec<u32> = Vec::new();
    let mut covered: u32 = 0;
    for &m in &maximal_masks {
        let p = m & !aug_mask;
        if p.count_ones() >= 2 && is_bimodule_mask(p) {
            parts_masks.push(p);
            covered |= p;
        }
    }
    for v in 0..n {
        if covered >> v & 1 == 0 {
            parts_masks.push(1 << v);
        }
    }

    Ok(BimoduleEnumeration {
        bimodules: bimodule_masks.iter().map(|&m| mask_to_set(m)).collect(),
        maximal_nontrivial: maximal_masks.iter().map(|&m| mask_to_set(m)).collect(),
        augmenting: (0..n)
            .filter(|&v| aug_mask >> v & 1 == 1)
            .map(|v| {
                if v < nb {
                    VertexRef::black(v)
                } else {
                    VertexRef::white(v - nb)
                }
            })
            .collect(),
        parts: parts_masks.iter().map(|&m| mask_to_set(m)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BipartiteGraph;
    use crate::shapes::{co_cycle, co_path, complete, cycle, path, star123};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn items(s: &MaxbisizeSet) -> Vec<(usize, usize)> {
        s.items().iter().map(|e| (e.black, e.white)).collect()
    }

    #[test]
    fn naive_filter_matches_by_hand() {
        let out = pareto_filter_naive(&[bs(4, 0), bs(0, 5), bs(3, 1), bs(2, 2), bs(1, 3), bs(0, 4), bs(4, 0)]);
        assert_eq!(out, vec![bs(0, 5), bs(1, 3), bs(2, 2), bs(3, 1), bs(4, 0)]);
        assert_eq!(pareto_filter_naive(&[]), vec![]);
        assert_eq!(pareto_filter_naive(&[bs(1, 1), bs(1, 1)]), vec![bs(1, 1)]);
    }

    #[test]
    fn cycle_eight() {
        let ow = oracle_maxbisizes_with_witnesses(&cycle(8)).unwrap();
        assert_eq!(items(&ow.set), vec![(0, 4), (1, 2), (2, 1), (4, 0)]);
        let g = cycle(8);
        for (e, w) in ow.set.items().iter().zip(&ow.witnesses) {
            assert!(g.is_biclique(w));
            assert_eq!((w.count_black(), w.count_white()), (e.black, e.white));
        }
    }

    #[test]
    fn complete_two_two() {
        assert_eq!(items(&oracle_maxbisizes(&complete(2, 2)).unwrap()), vec![(2, 2)]);
    }

    #[test]
    fn edgeless_three_four() {
        let g = BipartiteGraph::new(3, 4);
        assert_eq!(items(&oracle_maxbisizes(&g).unwrap()), vec![(0, 4), (3, 0)]);
    }

    #[test]
    fn path_seven_and_its_complement() {
        assert_eq!(
            items(&oracle_maxbisizes(&path(7)).unwrap()),
            vec![(0, 3), (1, 2), (2, 1), (4, 0)]
        );
        assert_eq!(
            items(&oracle_maxbisizes(&co_path(7)).unwrap()),
            vec![(0, 3), (1, 2), (2, 1), (4, 0)]
        );
    }

    #[test]
    fn co_cycle_ten() {
        assert_eq!(
            items(&oracle_maxbisizes(&co_cycle(10)).unwrap()),
            vec![(0, 5), (1, 3), (2, 2), (3, 1), (5, 0)]
        );
    }

    #[test]
    fn size_limit_enforced() {
        let g = BipartiteGraph::new(21, 21);
        assert!(matches!(oracle_maxbisizes(&g), Err(Error::SizeLimit { .. })));
        // a skewed graph enumerates over the small side and is fine
        let g = BipartiteGraph::new(3, 40);
        assert!(oracle_maxbisizes(&g).is_ok());
    }

    #[test]
    fn solve_examples() {
        let (v, e, w) = oracle_solve(&cycle(8), Objective::EdgeMax).unwrap();
        assert_eq!(v, 2);
        assert_eq!(e, bs(2, 1));
        assert!(cycle(8).is_biclique(&w));
        let (v, _, _) = oracle_solve(&complete(2, 2), Objective::Balanced).unwrap();
        assert_eq!(v, 2);
        assert!(matches!(
            oracle_solve(&BipartiteGraph::new(3, 4), Objective::NontrivialVertexMax),
            Err(Error::NoNontrivialBiclique)
        ));
    }

    #[test]
    fn bimodules_of_path_seven() {
        // blacks p1,p3,p5,p7 indexed 0..3; whites p2,p4,p6 indexed 0..2.
        // Two maximal nontrivial bimodules share p4: every white outside
        // {p1,p3,p4} is nonadjacent to it or sees both its blacks, and
        // symmetrically for {p4,p5,p7}. Their remainders after removing the
        // shared vertex are not bimodules, so the partition dissolves into
        // singletons.
        let e = oracle_bimodules(&path(7)).unwrap();
        assert_eq!(e.maximal_nontrivial.len(), 2);
        let mut maximal: Vec<Vec<VertexRef>> =
            e.maximal_nontrivial.iter().map(|m| m.to_refs()).collect();
        maximal.sort();
        assert_eq!(
            maximal,
            vec![
                vec![VertexRef::black(0), VertexRef::black(1), VertexRef::white(1)],
                vec![VertexRef::black(2), VertexRef::black(3), VertexRef::white(1)],
            ]
        );
        assert_eq!(e.augmenting, vec![VertexRef::white(1)]); // p4
        assert_eq!(e.parts.len(), 7);
        assert!(e.parts.iter().all(|p| p.count() == 1));
        assert!(e.nontrivial_parts().is_empty());
        // V and every singleton are bimodules
        assert!(e.bimodules.iter().any(|m| m.count() == 7));
        assert_eq!(e.bimodules.iter().filter(|m| m.count() == 1).count(), 7);
    }

    #[test]
    fn bimodules_of_star123() {
        // path p1..p6 plus pendant q on p3; blacks p1,p3,p5 indexed 0,1,2;
        // whites p2,p4,p6,q indexed 0,1,2,3. Three maximal nontrivial
        // bimodules: {p1,p2,q}, {p3,p4,p6}, {p5,p4,q}; p4 and q sit in two
        // of them each, and the surviving remainders {p1,p2} and {p3,p6}
        // are still bimodules.
        let e = oracle_bimodules(&star123()).unwrap();
        let mut maximal: Vec<Vec<VertexRef>> =
            e.maximal_nontrivial.iter().map(|m| m.to_refs()).collect();
        maximal.sort();
        assert_eq!(
            maximal,
            vec![
                vec![VertexRef::black(0), VertexRef::white(0), VertexRef::white(3)],
                vec![VertexRef::black(1), VertexRef::white(1), VertexRef::white(2)],
                vec![VertexRef::black(2), VertexRef::white(1), VertexRef::white(3)],
            ]
        );
        assert_eq!(e.augmenting, vec![VertexRef::white(1), VertexRef::white(3)]);
        let mut parts: Vec<Vec<VertexRef>> = e.parts.iter().map(|p| p.to_refs()).collect();
        parts.sort();
        assert_eq!(
            parts,
            vec![
                vec![VertexRef::black(0), VertexRef::white(0)],
                vec![VertexRef::black(1), VertexRef::white(2)],
                vec![VertexRef::black(2)],
                vec![VertexRef::white(1)],
                vec![VertexRef::white(3)],
            ]
        );
        assert!(e.nontrivial_parts().is_empty());
    }

    #[test]
    fn bimodule_size_limit() {
        assert!(matches!(
            oracle_bimodules(&BipartiteGraph::new(8, 7)),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn random_graphs_antichain_and_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0bac1e);
        for _ in 0..200 {
            let nb = rng.gen_range(1..=6);
            let nw = rng.gen_range(1..=6);
            let mut g = BipartiteGraph::new(nb, nw);
            for b in 0..nb {
                for w in 0..nw {
                    if rng.gen_bool(0.4) {
                        g.add_edge(b, w);
                    }
                }
            }
            let ow = oracle_maxbisizes_with_witnesses(&g).unwrap();
            let it = ow.set.items();
            assert!(!it.is_empty());
            assert!(it.windows(2).all(|p| p[0].black < p[1].black && p[0].white > p[1].white));
            for (e, w) in it.iter().zip(&ow.witnesses) {
                assert!(g.is_biclique(w));
                assert_eq!((w.count_black(), w.count_white()), (e.black, e.white));
            }
        }
    }

    #[test]
    fn random_graphs_every_biclique_dominated() {
        // spot-check definitional completeness: every biclique's size pair is
        // dominated by some element of the oracle set
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..50 {
            let nb = rng.gen_range(1..=5);
            let nw = rng.gen_range(1..=5);
            let mut g = BipartiteGraph::new(nb, nw);
            for b in 0..nb {
                for w in 0..nw {
                    if rng.gen_bool(0.5) {
                        g.add_edge(b, w);
                    }
                }
            }
            let d = oracle_maxbisizes(&g).unwrap();
            for bm in 0u32..1 << nb {
                for wm in 0u32..1 << nw {
                    let ok = (0..nb).all(|b| {
                        (0..nw).all(|w| bm >> b & 1 == 0 || wm >> w & 1 == 0 || g.has_edge(b, w))
                    });
                    if ok {
                        let e = bs(bm.count_ones() as usize, wm.count_ones() as usize);
                        assert!(d.iter().any(|x| e.dominated_by(x)));
                    }
                }
            }
        }
    }
}
