//! Constructors for the named graph families used throughout: paths, even
//! cycles, their bipartite complements, and the subdivided-claw obstruction.
//!
//! Convention: vertices are numbered 1..n along the underlying path or cycle,
//! position 1 is black, and colors alternate. Position p (1-based) therefore
//! maps to black index (p-1)/2 when p is odd and white index p/2 - 1 when p
//! is even.

use crate::graph::{BipartiteGraph, VertexRef};

/// Vertex at 1-based position `p` of a black-started alternating sequence.
pub fn position_ref(p: usize) -> VertexRef {
    if p % 2 == 1 {
        VertexRef::black((p - 1) / 2)
    } else {
        VertexRef::white(p / 2 - 1)
    }
}

/// Path on n >= 1 vertices.
pub fn path(n: usize) -> BipartiteGraph {
    let mut g = BipartiteGraph::new(n.div_ceil(2), n / 2);
    for p in 1..n {
        let (u, v) = (position_ref(p), position_ref(p + 1));
        let (b, w) = if p % 2 == 1 { (u, v) } else { (v, u) };
        g.add_edge(b.index, w.index);
    }
    g
}

/// Cycle on n vertices, n even and >= 4.
pub fn cycle(n: usize) -> BipartiteGraph {
    assert!(n >= 4 && n % 2 == 0, "cycles need even n >= 4");
    let mut g = path(n);
    g.add_edge(0, n / 2 - 1);
    g
}

/// Bipartite complement of the path on n vertices.
pub fn co_path(n: usize) -> BipartiteGraph {
    path(n).bipartite_complement()
}

/// Bipartite complement of the cycle on n vertices.
pub fn co_cycle(n: usize) -> BipartiteGraph {
    cycle(n).bipartite_complement()
}

/// Complete bipartite graph.
pub fn complete(n_black: usize, n_white: usize) -> BipartiteGraph {
    let mut g = BipartiteGraph::new(n_black, n_white);
    for b in 0..n_black {
        for w in 0..n_white {
            g.add_edge(b, w);
        }
    }
    g
}

/// Hand-checkable 13-vertex instance (6 black, 7 white, 16 edges) whose
/// decomposition mixes several node kinds and whose root has nontrivial
/// canonical bimodules. Useful as a fixed worked example in tests.
pub fn worked_example() -> BipartiteGraph {
    BipartiteGraph::from_edges(
        6,
        7,
        &[
            (0, 0),
            (1, 1),
            (1, 2),
            (2, 2),
            (3, 0),
            (3, 1),
            (3, 3),
            (4, 0),
            (4, 1),
            (4, 3),
            (4, 4),
            (4, 5),
            (5, 0),
            (5, 1),
            (5, 5),
            (5, 6),
        ],
    )
}

/// The 7-vertex obstruction: a 6-vertex path plus a pendant attached to the
/// third path vertex. Blacks are path positions 1, 3, 5; the pendant is the
/// fourth white.
pub fn star123() -> BipartiteGraph {
    let p6 = path(6);
    let mut g = BipartiteGraph::new(3, 4);
    for (b, w) in p6.edges() {
        g.add_edge(b, w);
    }
    g.add_edge(1, 3);
    g
}
