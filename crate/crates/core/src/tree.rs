//! Decomposition trees: node kinds, quotient graphs, JSON and DOT output,
//! and the validator that re-derives every structural claim from the graph.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::bimodule::is_bimodule;
use crate::decompose::{fully_adjacent_sets, left_adjacent_sets, nonadjacent_sets};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, VertexRef, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Parallel,
    Series,
    Ks,
    Prime,
    Base,
}

impl NodeKind {
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Leaf => "leaf",
            NodeKind::Parallel => "parallel",
            NodeKind::Series => "series",
            NodeKind::Ks => "ks",
            NodeKind::Prime => "prime",
            NodeKind::Base => "base",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseShape {
    Path,
    Cycle,
    CoPath,
    CoCycle,
}

impl BaseShape {
    pub fn name(self) -> &'static str {
        match self {
            BaseShape::Path => "path",
            BaseShape::Cycle => "cycle",
            BaseShape::CoPath => "copath",
            BaseShape::CoCycle => "cocycle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BaseInfo {
    pub shape: BaseShape,
    /// Vertex sequence along the underlying (complemented) path or cycle.
    pub order: Vec<VertexRef>,
}

/// Quotient of a graph by a partition into bimodules: one representative
/// vertex per color per class.
#[derive(Debug, Clone)]
pub struct QuotientGraph {
    pub h: BipartiteGraph,
    pub class_of: BTreeMap<VertexRef, usize>,
    /// class index -> black vertex of h, present iff the class has blacks.
    pub black_rep: Vec<Option<usize>>,
    pub white_rep: Vec<Option<usize>>,
}

#[derive(Debug, Clone)]
pub struct DecompNode {
    pub kind: NodeKind,
    /// Vertices of the original graph this node spans, blacks then whites,
    /// each side ascending.
    pub vertices: Vec<VertexRef>,
    /// For Ks the order is semantic: child i is left-adjacent to child j for
    /// i < j.
    pub children: Vec<DecompNode>,
    pub base: Option<BaseInfo>,
    pub quotient: Option<QuotientGraph>,
}

impl DecompNode {
    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "kind": self.kind.name(),
            "vertices": refs_json(&self.vertices),
            "children": self.children.iter().map(DecompNode::to_json).collect::<Vec<_>>(),
        });
        if let Some(b) = &self.base {
            obj["base"] = json!({ "shape": b.shape.name(), "order": refs_json(&b.order) });
        }
        if let Some(q) = &self.quotient {
            let class_of: BTreeMap<String, usize> =
                q.class_of.iter().map(|(r, &i)| (r.to_string(), i)).collect();
            obj["quotient"] = json!({
                "n_black": q.h.n_black(),
                "n_white": q.h.n_white(),
                "edges": q.h.edges(),
                "class_of": class_of,
                "black_rep": q.black_rep,
                "white_rep": q.white_rep,
            });
        }
        obj
    }
}

fn refs_json(refs: &[VertexRef]) -> Vec<String> {
    refs.iter().map(VertexRef::to_string).collect()
}

#[derive(Debug, Clone)]
pub struct DecompositionTree {
    pub root: DecompNode,
}

impl DecompositionTree {
    /// Preorder traversal.
    pub fn nodes(&self) -> Vec<&DecompNode> {
        let mut out = Vec::new();
        let mut stack = vec![&self.root];
        while let Some(n) = stack.pop() {
            out.push(n);
            for c in n.children.iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        self.root.to_json()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomposition {\n  node [shape=box];\n");
        let mut next_id = 0usize;
        emit_dot(&self.root, &mut next_id, &mut out);
        out.push_str("}\n");
        out
    }
}

fn emit_dot(node: &DecompNode, next_id: &mut usize, out: &mut String) -> usize {
    let id = *next_id;
    *next_id += 1;
    let label = match node.kind {
        NodeKind::Leaf => node.vertices[0].to_string(),
        NodeKind::Base => {
            let b = node.base.as_ref().expect("base node carries its shape");
            format!("base:{} ({})", b.shape.name(), node.vertices.len())
        }
        k => format!("{} ({})", k.name(), node.vertices.len()),
    };
    out.push_str(&format!("  n{} [label=\"{}\"];\n", id, label));
    for (rank, child) in node.children.iter().enumerate() {
        let cid = emit_dot(child, next_id, out);
        if node.kind == NodeKind::Ks {
            out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", id, cid, rank + 1));
        } else {
            out.push_str(&format!("  n{} -> n{};\n", id, cid));
        }
    }
    id
}

/// Largest child count over Prime nodes, or 2 when the tree has none.
pub fn bimodularwidth(t: &DecompositionTree) -> usize {
    t.nodes()
        .iter()
        .filter(|n| n.kind == NodeKind::Prime)
        .map(|n| n.children.len())
        .max()
        .unwrap_or(2)
}

/// Quotient by a partition of V(g) into bimodules. Edges between distinct
/// classes follow any representative pair (bimodularity makes the choice
/// immaterial); a class gets a b_i-w_i self edge iff it has an internal
/// edge, which is exactly when a biclique can take both colors from it.
pub fn quotient_graph(g: &BipartiteGraph, parts: &[VertexSet]) -> QuotientGraph {
    let k = parts.len();
    let mut black_rep = vec![None; k];
    let mut white_rep = vec![None; k];
    let mut hb = 0usize;
    let mut hw = 0usize;
    for (i, p) in parts.iter().enumerate() {
        if p.count_black() > 0 {
            black_rep[i] = Some(hb);
            hb += 1;
        }
        if p.count_white() > 0 {
            white_rep[i] = Some(hw);
            hw += 1;
        }
    }
    let mut h = BipartiteGraph::new(hb, hw);
    for i in 0..k {
        let Some(bi) = black_rep[i] else { continue };
        let b = parts[i].blacks.first().expect("class with a black rep");
        for j in 0..k {
            let Some(wj) = white_rep[j] else { continue };
            if i == j {
                if parts[i].blacks.iter().any(|bb| g.black_row(bb).intersects(&parts[i].whites)) {
                    h.add_edge(bi, wj);
                }
            } else {
                let w = parts[j].whites.first().expect("class with a white rep");
                if g.has_edge(b, w) {
                    h.add_edge(bi, wj);
                }
            }
        }
    }
    let mut class_of = BTreeMap::new();
    for (i, p) in parts.iter().enumerate() {
        for r in p.iter_refs() {
            class_of.insert(r, i);
        }
    }
    QuotientGraph { h, class_of, black_rep, white_rep }
}

/// Re-verifies every structural invariant of a tree against the graph it
/// claims to decompose: spans partition correctly, each kind's adjacency
/// discipline holds, base orders realize their shapes, and Prime children
/// are bimodules of the node's induced subgraph with a faithful quotient.
pub fn validate_tree(g: &BipartiteGraph, t: &DecompositionTree) -> Result<()> {
    let mut all: Vec<VertexRef> = (0..g.n_black())
        .map(VertexRef::black)
        .chain((0..g.n_white()).map(VertexRef::white))
        .collect();
    all.sort();
    let mut root_span = t.root.vertices.clone();
    root_span.sort();
    if root_span != all {
        return fail("root does not span the whole graph");
    }
    validate_node(g, &t.root)
}

fn fail(msg: impl Into<String>) -> Result<()> {
    Err(Error::PreconditionViolated(format!("tree invariant violated: {}", msg.into())))
}

fn validate_node(g: &BipartiteGraph, node: &DecompNode) -> Result<()> {
    if node.vertices.is_empty() {
        return fail("empty node span");
    }
    let span = VertexSet::from_refs(g, &node.vertices);
    if span.count() != node.vertices.len() {
        return fail("duplicate vertex in node span");
    }
    match node.kind {
        NodeKind::Leaf => {
            if node.vertices.len() != 1 || !node.children.is_empty() {
                return fail("leaf must hold exactly one vertex and no children");
            }
            return Ok(());
        }
        NodeKind::Base => {
            if !node.children.is_empty() {
                return fail("base node must not have children");
            }
            return validate_base(g, node);
        }
        _ => {}
    }

    // a 2-part bimodule partition always induces a parallel, series or chain
    // split instead, so genuine prime nodes have at least 3 classes
    let min_arity = if node.kind == NodeKind::Prime { 3 } else { 2 };
    if node.children.len() < min_arity {
        return fail(format!(
            "{} node has {} children, needs at least {}",
            node.kind.name(),
            node.children.len(),
            min_arity
        ));
    }
    let mut concat: Vec<VertexRef> = node.children.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    concat.sort();
    let mut own = node.vertices.clone();
    own.sort();
    if concat != own {
        return fail("children do not partition the parent span");
    }

    let child_sets: Vec<VertexSet> =
        node.children.iter().map(|c| VertexSet::from_refs(g, &c.vertices)).collect();
    match node.kind {
        NodeKind::Parallel => {
            for i in 0..child_sets.len() {
                for j in i + 1..child_sets.len() {
                    if !nonadjacent_sets(g, &child_sets[i], &child_sets[j]) {
                        return fail("parallel children must be pairwise nonadjacent");
                    }
                }
            }
        }
        NodeKind::Series => {
            for i in 0..child_sets.len() {
                for j in i + 1..child_sets.len() {
                    if !fully_adjacent_sets(g, &child_sets[i], &child_sets[j]) {
                        return fail("series children must be pairwise fully adjacent");
                    }
                }
            }
        }
        NodeKind::Ks => {
            for i in 0..child_sets.len() {
                for j in i + 1..child_sets.len() {
                    if !left_adjacent_sets(g, &child_sets[i], &child_sets[j]) {
                        return fail("ks child order must satisfy left-adjacency");
                    }
                }
            }
        }
        NodeKind::Prime => validate_prime(g, node, &span)?,
        NodeKind::Leaf | NodeKind::Base => unreachable!(),
    }

    for c in &node.children {
        validate_node(g, c)?;
    }
    Ok(())
}

fn validate_prime(g: &BipartiteGraph, node: &DecompNode, span: &VertexSet) -> Result<()> {
    let (sub, im) = g.induced_subgraph(span);
    let mut local_of: BTreeMap<VertexRef, VertexRef> = BTreeMap::new();
    for (new, &old) in im.blacks.iter().enumerate() {
        local_of.insert(VertexRef::black(old), VertexRef::black(new));
    }
    for (new, &old) in im.whites.iter().enumerate() {
        local_of.insert(VertexRef::white(old), VertexRef::white(new));
    }
    let mut local_parts = Vec::with_capacity(node.children.len());
    for c in &node.children {
        let refs: Vec<VertexRef> = c.vertices.iter().map(|r| local_of[r]).collect();
        let s = VertexSet::from_refs(&sub, &refs);
        if s.count() >= 2 && !is_bimodule(&sub, &s) {
            return fail("prime child is not a bimodule of the node's subgraph");
        }
        local_parts.push(s);
    }
    let Some(q) = &node.quotient else {
        return fail("prime node lacks its quotient");
    };
    let expected = quotient_graph(&sub, &local_parts);
    if q.h != expected.h || q.black_rep != expected.black_rep || q.white_rep != expected.white_rep {
        return fail("quotient does not match the one derived from the children");
    }
    for (i, c) in node.children.iter().enumerate() {
        for r in &c.vertices {
            if q.class_of.get(r) != Some(&i) {
                return fail("quotient class map disagrees with child order");
            }
        }
    }
    if q.class_of.len() != node.vertices.len() {
        return fail("quotient class map does not cover the span exactly");
    }
    Ok(())
}

fn validate_base(g: &BipartiteGraph, node: &DecompNode) -> Result<()> {
    let Some(info) = &node.base else {
        return fail("base node lacks shape info");
    };
    let mut ordered = info.order.clone();
    ordered.sort();
    let mut own = node.vertices.clone();
    own.sort();
    if ordered != own {
        return fail("base order must enumerate the node span");
    }
    let k = info.order.len();
    let consecutive = |i: usize, j: usize| -> bool {
        j == i + 1
            || match info.shape {
                BaseShape::Cycle | BaseShape::CoCycle => i == 0 && j == k - 1,
                _ => false,
            }
    };
    for i in 0..k {
        for j in i + 1..k {
            let (u, v) = (info.order[i], info.order[j]);
            if u.color == v.color {
                continue;
            }
            let want = match info.shape {
                BaseShape::Path | BaseShape::Cycle => consecutive(i, j),
                BaseShape::CoPath | BaseShape::CoCycle => !consecutive(i, j),
            };
            if g.adjacent(u, v) != want {
                return fail(format!("base order breaks the {} pattern at {u}, {v}", info.shape.name()));
            }
        }
    }
    match info.shape {
        BaseShape::Cycle | BaseShape::CoCycle if k < 4 => fail("cycles need at least 4 vertices"),
        _ => Ok(()),
    }
}
