//! Structure detection and tree construction: K+S chains via strongly
//! connected components of a constraint digraph, Parallel/Series splits via
//! components, base-shape recognition, and the two recursive builders.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::bimodule::maximal_canonical_bimodules;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Color, VertexRef, VertexSet};
use crate::tree::{quotient_graph, BaseInfo, BaseShape, DecompNode, DecompositionTree, NodeKind, QuotientGraph};

/// No edge between the two sets.
pub fn nonadjacent_sets(g: &BipartiteGraph, x: &VertexSet, y: &VertexSet) -> bool {
    x.blacks.iter().all(|b| !g.black_row(b).intersects(&y.whites))
        && y.blacks.iter().all(|b| !g.black_row(b).intersects(&x.whites))
}

/// Every black of either set adjacent to every white of the other.
pub fn fully_adjacent_sets(g: &BipartiteGraph, x: &VertexSet, y: &VertexSet) -> bool {
    x.blacks.iter().all(|b| y.whites.is_subset(g.black_row(b)))
        && y.blacks.iter().all(|b| x.whites.is_subset(g.black_row(b)))
}

/// Every black of `x` adjacent to every white of `y`, and no white of `x`
/// adjacent to any black of `y`.
pub fn left_adjacent_sets(g: &BipartiteGraph, x: &VertexSet, y: &VertexSet) -> bool {
    x.blacks.iter().all(|b| y.whites.is_subset(g.black_row(b)))
        && x.whites.iter().all(|w| !g.white_row(w).intersects(&y.blacks))
}

/// True iff every ordered pair of parts satisfies left-adjacency.
pub fn is_ks_chain(g: &BipartiteGraph, parts: &[VertexSet]) -> bool {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if !left_adjacent_sets(g, &parts[i], &parts[j]) {
                return false;
            }
        }
    }
    true
}

/// Finest K+S partition, or None when only the whole vertex set qualifies.
///
/// Between a black b and a white w exactly one placement is feasible: b
/// before w when bw is an edge, w before b otherwise. Encoding that as a
/// digraph (arc b->w per edge, arc w->b per non-edge) makes the parts of
/// every valid chain unions of strongly connected components, so the SCCs
/// themselves are the finest chain, ordered by any topological order of the
/// condensation. Ties among incomparable components go to the one holding
/// the smallest vertex, for determinism.
pub fn ks_partition(g: &BipartiteGraph) -> Option<Vec<VertexSet>> {
    let nb = g.n_black();
    let n = g.n_vertices();
    if n < 2 {
        return None;
    }
    let neg_black: Vec<BitSet> = (0..nb).map(|b| g.black_row(b).negate()).collect();
    let neg_white: Vec<BitSet> = (0..g.n_white()).map(|w| g.white_row(w).negate()).collect();
    // out-neighbors: id < nb is a black (row of whites, ids offset by nb)
    let forward = |v: usize| -> (&BitSet, usize) {
        if v < nb {
            (g.black_row(v), nb)
        } else {
            (&neg_white[v - nb], 0)
        }
    };
    let backward = |v: usize| -> (&BitSet, usize) {
        if v < nb {
            (&neg_black[v], nb)
        } else {
            (g.white_row(v - nb), 0)
        }
    };

    // Kosaraju pass 1: finishing order on the forward digraph
    let mut finish: Vec<usize> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push((s, 0));
        while let Some(&(v, cursor)) = stack.last() {
            let (row, off) = forward(v);
            let mut cur = cursor;
            let mut descended = false;
            while let Some(i) = row.first_at_or_after(cur) {
                cur = i + 1;
                let u = i + off;
                if !seen[u] {
                    seen[u] = true;
                    stack.last_mut().expect("nonempty stack").1 = cur;
                    stack.push((u, 0));
                    descended = true;
                    break;
                }
            }
            if !descended {
                finish.push(v);
                stack.pop();
            }
        }
    }

    // pass 2: components of the reverse digraph in reverse finishing order
    let mut comp = vec![usize::MAX; n];
    let mut k = 0usize;
    for &s in finish.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = k;
        let mut todo = vec![s];
        while let Some(v) = todo.pop() {
            let (row, off) = backward(v);
            for i in row.iter() {
                let u = i + off;
                if comp[u] == usize::MAX {
                    comp[u] = k;
                    todo.push(u);
                }
            }
        }
        k += 1;
    }
    if k == 1 {
        return None;
    }

    // deterministic topological order of the condensation
    let mut succ: Vec<HashSet<usize>> = vec![HashSet::new(); k];
    let mut indeg = vec![0usize; k];
    for v in 0..n {
        let (row, off) = forward(v);
        for i in row.iter() {
            let u = i + off;
            if comp[v] != comp[u] && succ[comp[v]].insert(comp[u]) {
                indeg[comp[u]] += 1;
            }
        }
    }
    let mut min_vertex = vec![usize::MAX; k];
    for v in 0..n {
        if min_vertex[comp[v]] == usize::MAX {
            min_vertex[comp[v]] = v;
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..k)
        .filter(|&c| indeg[c] == 0)
        .map(|c| Reverse((min_vertex[c], c)))
        .collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse((_, c))) = heap.pop() {
        order.push(c);
        let mut next: Vec<usize> = succ[c].iter().copied().collect();
        next.sort_unstable();
        for d in next {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                heap.push(Reverse((min_vertex[d], d)));
            }
        }
    }
    debug_assert_eq!(order.len(), k);

    let mut position = vec![0usize; k];
    for (p, &c) in order.iter().enumerate() {
        position[c] = p;
    }
    let mut parts = vec![VertexSet::empty(g); k];
    for v in 0..n {
        let r = if v < nb { VertexRef::black(v) } else { VertexRef::white(v - nb) };
        parts[position[comp[v]]].insert(r);
    }
    debug_assert!(is_ks_chain(g, &parts));
    Some(parts)
}

/// Shape of the graph as a (complemented) path or cycle, with the realizing
/// vertex order. Complement shapes are detected by recognizing the plain
/// shape on the bipartite complement; the reported order is the order of
/// that underlying path or cycle.
pub fn recognize_base(g: &BipartiteGraph) -> Option<BaseInfo> {
    if let Some(order) = path_order(g) {
        return Some(BaseInfo { shape: BaseShape::Path, order });
    }
    if let Some(order) = cycle_order(g) {
        return Some(BaseInfo { shape: BaseShape::Cycle, order });
    }
    let co = g.bipartite_complement();
    if let Some(order) = path_order(&co) {
        return Some(BaseInfo { shape: BaseShape::CoPath, order });
    }
    if let Some(order) = cycle_order(&co) {
        return Some(BaseInfo { shape: BaseShape::CoCycle, order });
    }
    None
}

fn neighbors(g: &BipartiteGraph, v: VertexRef) -> Vec<VertexRef> {
    match v.color {
        Color::Black => g.black_row(v.index).iter().map(VertexRef::white).collect(),
        Color::White => g.white_row(v.index).iter().map(VertexRef::black).collect(),
    }
}

fn all_refs(g: &BipartiteGraph) -> Vec<VertexRef> {
    (0..g.n_black())
        .map(VertexRef::black)
        .chain((0..g.n_white()).map(VertexRef::white))
        .collect()
}

fn path_order(g: &BipartiteGraph) -> Option<Vec<VertexRef>> {
    let n = g.n_vertices();
    if n == 0 {
        return None;
    }
    let refs = all_refs(g);
    if n == 1 {
        return Some(refs);
    }
    if g.edge_count() != n - 1 {
        return None;
    }
    let mut ends = Vec::new();
    for &v in &refs {
        match g.degree(v) {
            1 => ends.push(v),
            2 => {}
            _ => return None,
        }
    }
    if ends.len() != 2 {
        return None;
    }
    let mut order = vec![ends[0]];
    let mut prev = None;
    let mut cur = ends[0];
    while order.len() < n {
        let step: Vec<VertexRef> =
            neighbors(g, cur).into_iter().filter(|&u| Some(u) != prev).collect();
        // a path plus a stray cycle has the right degrees but strands the
        // walk at the path's far end
        if step.len() != 1 {
            return None;
        }
        prev = Some(cur);
        cur = step[0];
        order.push(cur);
    }
    Some(order)
}

fn cycle_order(g: &BipartiteGraph) -> Option<Vec<VertexRef>> {
    let n = g.n_vertices();
    if n < 4 || g.edge_count() != n {
        return None;
    }
    let refs = all_refs(g);
    if refs.iter().any(|&v| g.degree(v) != 2) {
        return None;
    }
    let start = refs[0];
    let first = neighbors(g, start)[0];
    let mut order = vec![start, first];
    let mut prev = start;
    let mut cur = first;
    while order.len() < n {
        let next = neighbors(g, cur)
            .into_iter()
            .find(|&u| u != prev)
            .expect("degree 2 leaves one way forward");
        if next == start {
            return None; // closed early: disjoint cycles
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    let closing = neighbors(g, cur).into_iter().find(|&u| u != prev);
    if closing == Some(start) {
        Some(order)
    } else {
        None
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Lozin,
    Canonical,
}

/// Decomposition by K+S, Parallel, Series, and (complemented) path/cycle
/// base cases, in that precedence. Fails with NotInClass on any node none
/// of the rules cover.
pub fn build_lozin_tree(g: &BipartiteGraph) -> Result<DecompositionTree> {
    build_tree(g, Mode::Lozin)
}

/// Decomposition by K+S, Parallel, Series, and Prime nodes over the
/// canonical bimodule partition. Total on twin-free graphs: the Prime case
/// always applies once the other three fail, in the worst case with an
/// all-singleton partition.
pub fn build_canonical_tree(g: &BipartiteGraph) -> Result<DecompositionTree> {
    build_tree(g, Mode::Canonical)
}

fn build_tree(g: &BipartiteGraph, mode: Mode) -> Result<DecompositionTree> {
    if g.n_vertices() == 0 {
        return Err(Error::PreconditionViolated("cannot decompose an empty graph".into()));
    }
    if let Some(class) = g.find_twins().into_iter().next() {
        return Err(Error::TwinsPresent { class });
    }
    let tb: Vec<VertexRef> = (0..g.n_black()).map(VertexRef::black).collect();
    let tw: Vec<VertexRef> = (0..g.n_white()).map(VertexRef::white).collect();
    let root = build_node(g, &tb, &tw, mode)?;
    Ok(DecompositionTree { root })
}

fn to_global(r: VertexRef, tb: &[VertexRef], tw: &[VertexRef]) -> VertexRef {
    match r.color {
        Color::Black => tb[r.index],
        Color::White => tw[r.index],
    }
}

fn build_node(
    g: &BipartiteGraph,
    tb: &[VertexRef],
    tw: &[VertexRef],
    mode: Mode,
) -> Result<DecompNode> {
    let vertices: Vec<VertexRef> = tb.iter().chain(tw.iter()).copied().collect();
    if vertices.len() == 1 {
        return Ok(DecompNode {
            kind: NodeKind::Leaf,
            vertices,
            children: vec![],
            base: None,
            quotient: None,
        });
    }

    if let Some(parts) = ks_partition(g) {
        let children = build_children(g, tb, tw, &parts, mode)?;
        return Ok(internal(NodeKind::Ks, vertices, children));
    }
    let components = g.connected_components();
    if components.len() > 1 {
        let children = build_children(g, tb, tw, &components, mode)?;
        return Ok(internal(NodeKind::Parallel, vertices, children));
    }
    let co_components = g.bipartite_complement().connected_components();
    if co_components.len() > 1 {
        let children = build_children(g, tb, tw, &co_components, mode)?;
        return Ok(internal(NodeKind::Series, vertices, children));
    }

    match mode {
        Mode::Lozin => match recognize_base(g) {
            Some(info) => {
                let order = info.order.iter().map(|&r| to_global(r, tb, tw)).collect();
                Ok(DecompNode {
                    kind: NodeKind::Base,
                    vertices,
                    children: vec![],
                    base: Some(BaseInfo { shape: info.shape, order }),
                    quotient: None,
                })
            }
            None => Err(Error::NotInClass { vertices }),
        },
        Mode::Canonical => {
            let cp = maximal_canonical_bimodules(g)?;
            let children = build_children(g, tb, tw, &cp.parts, mode)?;
            let local = quotient_graph(g, &cp.parts);
            let class_of = local
                .class_of
                .iter()
                .map(|(&r, &i)| (to_global(r, tb, tw), i))
                .collect();
            Ok(DecompNode {
                kind: NodeKind::Prime,
                vertices,
                children,
                base: None,
                quotient: Some(QuotientGraph {
                    h: local.h,
                    class_of,
                    black_rep: local.black_rep,
                    white_rep: local.white_rep,
                }),
            })
        }
    }
}

fn internal(kind: NodeKind, vertices: Vec<VertexRef>, children: Vec<DecompNode>) -> DecompNode {
    DecompNode { kind, vertices, children, base: None, quotient: None }
}

fn build_children(
    g: &BipartiteGraph,
    tb: &[VertexRef],
    tw: &[VertexRef],
    parts: &[VertexSet],
    mode: Mode,
) -> Result<Vec<DecompNode>> {
    parts
        .iter()
        .map(|p| {
            let (sub, im) = g.induced_subgraph(p);
            let ctb: Vec<VertexRef> = im.blacks.iter().map(|&i| tb[i]).collect();
            let ctw: Vec<VertexRef> = im.whites.iter().map(|&i| tw[i]).collect();
            build_node(&sub, &ctb, &ctw, mode)
        })
        .collect()
}
