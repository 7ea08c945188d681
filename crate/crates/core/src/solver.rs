//! Dynamic programming over decomposition trees.
//!
//! Evaluation walks the tree bottom-up and assigns every node a maxbisize
//! set. Multi-way Parallel/Series/KS nodes are folded left to right as
//! binary combines, each fold step materialized as an extra evaluation node
//! so that every element of every set carries a [`Derivation`] pointing at
//! the elements it was built from. The witness module later replays those
//! records backward to produce a concrete biclique.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Color, VertexRef, VertexSet};
use crate::maxbisize::{bs, dom_indices, Bisize, MaxbisizeSet};
use crate::oracle::oracle_maxbisizes_with_witnesses;
use crate::tree::{BaseShape, DecompNode, DecompositionTree, NodeKind, QuotientGraph};

/// Default limit on quotient graph size inside Prime combines.
pub const DEFAULT_QUOTIENT_CAP: usize = 24;

/// How one element of an evaluation node's set was obtained. Child
/// references are indices into the evaluation arena; element references are
/// positions in that node's set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    LeafBlack,
    LeafWhite,
    /// All black vertices spanned by this evaluation node.
    TrivialAllBlack,
    /// All white vertices spanned by this evaluation node.
    TrivialAllWhite,
    FromChild {
        child: usize,
        element: usize,
    },
    Sum {
        left: usize,
        left_element: usize,
        right: usize,
        right_element: usize,
    },
    /// Child element plus every white vertex spanned by `whites_from`.
    ShiftW {
        child: usize,
        element: usize,
        whites_from: usize,
    },
    /// Child element plus every black vertex spanned by `blacks_from`.
    ShiftB {
        child: usize,
        element: usize,
        blacks_from: usize,
    },
    /// The closed neighborhood star of `center` in a path or cycle node.
    Star {
        center: VertexRef,
    },
    /// First `take_black` black vertices in path order, then every white at
    /// least two positions past the last of them.
    CoPathSplit {
        take_black: usize,
        take_white: usize,
    },
    CoCycleFromChild {
        removed: VertexRef,
        child: usize,
        element: usize,
    },
    /// One choice per quotient class that meets the chosen quotient
    /// biclique; pairs are (child evaluation node, choice).
    PrimeCombo {
        choices: Vec<(usize, PrimeChoice)>,
    },
    /// Explicit witness recorded when a small base case was evaluated by
    /// the exhaustive oracle. Global vertex indices.
    OracleWitness {
        blacks: Vec<usize>,
        whites: Vec<usize>,
    },
}

/// Per-class contribution inside a Prime combine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeChoice {
    /// An element of the class's own set.
    Element(usize),
    /// Every black vertex of the class.
    AllBlack,
    /// Every white vertex of the class.
    AllWhite,
}

/// Where an evaluation node's vertex span comes from. Fold steps reference
/// their two constituents instead of copying vertex lists.
#[derive(Debug, Clone)]
pub(crate) enum SpanSource {
    Vertices { blacks: Vec<usize>, whites: Vec<usize> },
    Fold(usize, usize),
}

#[derive(Debug, Clone)]
pub(crate) struct EvalNode {
    pub(crate) set: MaxbisizeSet,
    pub(crate) derivs: Vec<Derivation>,
    pub(crate) span: SpanSource,
    /// Base-case vertex order (path order for co-paths), used by Star and
    /// CoPathSplit witnesses.
    pub(crate) order: Option<Vec<VertexRef>>,
    pub(crate) n_black: usize,
    pub(crate) n_white: usize,
}

/// Result of evaluating a decomposition tree: one set per node plus the
/// fold intermediates, with full derivation records.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub(crate) nodes: Vec<EvalNode>,
    pub(crate) root: usize,
}

impl Evaluation {
    /// The maxbisize set of the whole graph.
    pub fn set(&self) -> &MaxbisizeSet {
        &self.nodes[self.root].set
    }

    pub(crate) fn root_id(&self) -> usize {
        self.root
    }

    pub(crate) fn node(&self, id: usize) -> &EvalNode {
        &self.nodes[id]
    }

    /// Collects the span of `id` into the two index vectors.
    pub(crate) fn gather_span(&self, id: usize, blacks: &mut Vec<usize>, whites: &mut Vec<usize>) {
        match &self.nodes[id].span {
            SpanSource::Vertices { blacks: b, whites: w } => {
                blacks.extend_from_slice(b);
                whites.extend_from_slice(w);
            }
            SpanSource::Fold(l, r) => {
                self.gather_span(*l, blacks, whites);
                self.gather_span(*r, blacks, whites);
            }
        }
    }
}

/// Evaluates `t` with the default quotient cap.
pub fn solve_tree(g: &BipartiteGraph, t: &DecompositionTree) -> Result<Evaluation> {
    solve_tree_with_cap(g, t, DEFAULT_QUOTIENT_CAP)
}

/// Evaluates `t`, refusing Prime quotients larger than `cap` vertices.
pub fn solve_tree_with_cap(
    g: &BipartiteGraph,
    t: &DecompositionTree,
    cap: usize,
) -> Result<Evaluation> {
    let mut b = Builder { g, cap, nodes: Vec::new() };
    let root = b.eval(&t.root)?;
    Ok(Evaluation { nodes: b.nodes, root })
}

fn split_span(vertices: &[VertexRef]) -> (Vec<usize>, Vec<usize>) {
    let mut blacks = Vec::new();
    let mut whites = Vec::new();
    for v in vertices {
        match v.color {
            Color::Black => blacks.push(v.index),
            Color::White => whites.push(v.index),
        }
    }
    (blacks, whites)
}

/// Streaming bucket filter for pairwise-sum folds. Tracks the best white
/// per black coordinate so a Series fold never materializes its |X|*|Y|
/// candidate list; ties keep the first derivation seen, matching
/// `dom_indices`.
struct SumAccumulator {
    best: Vec<Option<(usize, Derivation)>>,
}

impl SumAccumulator {
    fn new(bound: Bisize) -> Self {
        SumAccumulator { best: (0..=bound.black).map(|_| None).collect() }
    }

    fn push(&mut self, e: Bisize, make: impl FnOnce() -> Derivation) {
        debug_assert!(e.black < self.best.len());
        let slot = &mut self.best[e.black];
        if slot.as_ref().map_or(true, |(w, _)| e.white > *w) {
            *slot = Some((e.white, make()));
        }
    }

    /// Black-descending sweep keeping strictly increasing whites: the same
    /// monotone pass `dom_indices` runs over its buckets.
    fn into_antichain(self) -> (Vec<Bisize>, Vec<Derivation>) {
        let mut items = Vec::new();
        let mut derivs = Vec::new();
        let mut top_w: Option<usize> = None;
        for (b, slot) in self.best.into_iter().enumerate().rev() {
            if let Some((w, d)) = slot {
                if top_w.map_or(true, |t| w > t) {
                    items.push(bs(b, w));
                    derivs.push(d);
                    top_w = Some(w);
                }
            }
        }
        items.reverse();
        derivs.reverse();
        (items, derivs)
    }
}

struct Builder<'a> {
    g: &'a BipartiteGraph,
    cap: usize,
    nodes: Vec<EvalNode>,
}

impl Builder<'_> {
    fn push(&mut self, node: EvalNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn finish(
        &mut self,
        cands: Vec<(Bisize, Derivation)>,
        bound: Bisize,
        span: SpanSource,
        order: Option<Vec<VertexRef>>,
    ) -> Result<usize> {
        let sizes: Vec<Bisize> = cands.iter().map(|(e, _)| *e).collect();
        let kept = dom_indices(&sizes, bound)?;
        let mut items = Vec::with_capacity(kept.len());
        let mut derivs = Vec::with_capacity(kept.len());
        for i in kept {
            items.push(cands[i].0);
            derivs.push(cands[i].1.clone());
        }
        Ok(self.push(EvalNode {
            set: MaxbisizeSet::from_sorted(items),
            derivs,
            span,
            order,
            n_black: bound.black,
            n_white: bound.white,
        }))
    }

    /// Like `finish` for candidates that are already a filtered antichain.
    fn finish_sorted(
        &mut self,
        items: Vec<Bisize>,
        derivs: Vec<Derivation>,
        bound: Bisize,
        span: SpanSource,
    ) -> usize {
        self.push(EvalNode {
            set: MaxbisizeSet::from_sorted(items),
            derivs,
            span,
            order: None,
            n_black: bound.black,
            n_white: bound.white,
        })
    }

    fn eval(&mut self, node: &DecompNode) -> Result<usize> {
        match node.kind {
            NodeKind::Leaf => {
                let v = node.vertices[0];
                let (set, deriv) = match v.color {
                    Color::Black => (MaxbisizeSet::singleton(bs(1, 0)), Derivation::LeafBlack),
                    Color::White => (MaxbisizeSet::singleton(bs(0, 1)), Derivation::LeafWhite),
                };
                let (blacks, whites) = split_span(&node.vertices);
                let (n_black, n_white) = (blacks.len(), whites.len());
                Ok(self.push(EvalNode {
                    set,
                    derivs: vec![deriv],
                    span: SpanSource::Vertices { blacks, whites },
                    order: None,
                    n_black,
                    n_white,
                }))
            }
            NodeKind::Parallel | NodeKind::Series | NodeKind::Ks => self.fold_many(node),
            NodeKind::Base => self.eval_base(node),
            NodeKind::Prime => self.eval_prime(node),
        }
    }

    fn fold_many(&mut self, node: &DecompNode) -> Result<usize> {
        let kids: Vec<usize> =
            node.children.iter().map(|c| self.eval(c)).collect::<Result<_>>()?;
        debug_assert!(kids.len() >= 2, "internal nodes have at least two children");
        let mut acc = kids[0];
        for (step, &next) in kids[1..].iter().enumerate() {
            let last = step == kids.len() - 2;
            let span = if last {
                let (blacks, whites) = split_span(&node.vertices);
                SpanSource::Vertices { blacks, whites }
            } else {
                SpanSource::Fold(acc, next)
            };
            acc = self.fold_pair(node.kind, acc, next, span)?;
        }
        Ok(acc)
    }

    fn fold_pair(
        &mut self,
        kind: NodeKind,
        left: usize,
        right: usize,
        span: SpanSource,
    ) -> Result<usize> {
        let (lb, lw) = (self.nodes[left].n_black, self.nodes[left].n_white);
        let (rb, rw) = (self.nodes[right].n_black, self.nodes[right].n_white);
        let bound = bs(lb + rb, lw + rw);
        let mut cands: Vec<(Bisize, Derivation)> = Vec::new();
        match kind {
            NodeKind::Parallel => {
                for (i, e) in self.nodes[left].set.items().iter().enumerate() {
                    cands.push((*e, Derivation::FromChild { child: left, element: i }));
                }
                for (i, e) in self.nodes[right].set.items().iter().enumerate() {
                    cands.push((*e, Derivation::FromChild { child: right, element: i }));
                }
                cands.push((bs(bound.black, 0), Derivation::TrivialAllBlack));
                cands.push((bs(0, bound.white), Derivation::TrivialAllWhite));
            }
            NodeKind::Series => {
                // streamed through a bucket per black count: O(n) workspace
                // instead of an |X|*|Y| list
                let mut acc = SumAccumulator::new(bound);
                for (i, x) in self.nodes[left].set.items().iter().enumerate() {
                    for (j, y) in self.nodes[right].set.items().iter().enumerate() {
                        acc.push(bs(x.black + y.black, x.white + y.white), || {
                            Derivation::Sum { left, left_element: i, right, right_element: j }
                        });
                    }
                }
                let (items, derivs) = acc.into_antichain();
                return Ok(self.finish_sorted(items, derivs, bound, span));
            }
            NodeKind::Ks => {
                // left part keeps its biclique and absorbs every white on
                // the right; right part absorbs every black on the left
                for (i, e) in self.nodes[left].set.items().iter().enumerate() {
                    cands.push((
                        bs(e.black, e.white + rw),
                        Derivation::ShiftW { child: left, element: i, whites_from: right },
                    ));
                }
                for (i, e) in self.nodes[right].set.items().iter().enumerate() {
                    cands.push((
                        bs(e.black + lb, e.white),
                        Derivation::ShiftB { child: right, element: i, blacks_from: left },
                    ));
                }
            }
            _ => unreachable!("fold_pair only handles parallel, series and ks"),
        }
        self.finish(cands, bound, span, None)
    }

    fn eval_base(&mut self, node: &DecompNode) -> Result<usize> {
        let info = node.base.as_ref().expect("base node carries its shape");
        match info.shape {
            BaseShape::Path | BaseShape::Cycle => {
                let cyclic = info.shape == BaseShape::Cycle;
                let (blacks, whites) = split_span(&node.vertices);
                let bound = bs(blacks.len(), whites.len());
                let cands = star_candidates(&info.order, cyclic, bound);
                self.finish(
                    cands,
                    bound,
                    SpanSource::Vertices { blacks, whites },
                    Some(info.order.clone()),
                )
            }
            BaseShape::CoPath => {
                let (b, w) = color_counts(&info.order);
                if b <= 2 || w <= 2 {
                    self.oracle_eval(&node.vertices)
                } else {
                    self.copath_eval(info.order.clone())
                }
            }
            BaseShape::CoCycle => {
                if info.order.len() < 8 {
                    self.oracle_eval(&node.vertices)
                } else {
                    self.cocycle_eval(node, &info.order)
                }
            }
        }
    }

    /// Complement-of-path evaluation via the split formula; requires more
    /// than 2 vertices of each color (callers route smaller spans to the
    /// oracle).
    fn copath_eval(&mut self, order: Vec<VertexRef>) -> Result<usize> {
        let order = normalize_copath_order(order);
        let (b, w) = color_counts(&order);
        let bound = bs(b, w);
        let cands = copath_candidates(&order, bound);
        let (blacks, whites) = split_span(&order);
        self.finish(cands, bound, SpanSource::Vertices { blacks, whites }, Some(order))
    }

    /// Complement-of-cycle evaluation: removing either vertex of one
    /// cycle-consecutive black/white pair leaves a complement of a path, and
    /// the node's set is the filtered union of the two.
    fn cocycle_eval(&mut self, node: &DecompNode, order: &[VertexRef]) -> Result<usize> {
        let path_a: Vec<VertexRef> = order[1..].to_vec();
        let removed_a = order[0];
        let mut path_b: Vec<VertexRef> = order[2..].to_vec();
        path_b.push(order[0]);
        let removed_b = order[1];

        let child_a = self.copath_eval(path_a)?;
        let child_b = self.copath_eval(path_b)?;

        let (blacks, whites) = split_span(&node.vertices);
        let bound = bs(blacks.len(), whites.len());
        let mut cands: Vec<(Bisize, Derivation)> = Vec::new();
        for (child, removed) in [(child_a, removed_a), (child_b, removed_b)] {
            for (i, e) in self.nodes[child].set.items().iter().enumerate() {
                cands.push((
                    *e,
                    Derivation::CoCycleFromChild { removed, child, element: i },
                ));
            }
        }
        self.finish(cands, bound, SpanSource::Vertices { blacks, whites }, None)
    }

    /// Evaluates the induced subgraph exhaustively and stores explicit
    /// witnesses; used for degenerate base shapes below the formulas'
    /// preconditions.
    fn oracle_eval(&mut self, vertices: &[VertexRef]) -> Result<usize> {
        let span = VertexSet::from_refs(self.g, vertices);
        let (sub, im) = self.g.induced_subgraph(&span);
        let ow = oracle_maxbisizes_with_witnesses(&sub)?;
        let mut derivs = Vec::with_capacity(ow.witnesses.len());
        for wit in &ow.witnesses {
            let blacks: Vec<usize> = wit.blacks.iter().map(|i| im.blacks[i]).collect();
            let whites: Vec<usize> = wit.whites.iter().map(|i| im.whites[i]).collect();
            derivs.push(Derivation::OracleWitness { blacks, whites });
        }
        let (blacks, whites) = split_span(vertices);
        let (n_black, n_white) = (blacks.len(), whites.len());
        Ok(self.push(EvalNode {
            set: ow.set,
            derivs,
            span: SpanSource::Vertices { blacks, whites },
            order: None,
            n_black,
            n_white,
        }))
    }

    fn eval_prime(&mut self, node: &DecompNode) -> Result<usize> {
        let q = node.quotient.as_ref().expect("prime node carries its quotient");
        if q.h.n_vertices() > self.cap {
            return Err(Error::WidthExceeded { vertices: q.h.n_vertices(), cap: self.cap });
        }
        let kids: Vec<usize> =
            node.children.iter().map(|c| self.eval(c)).collect::<Result<_>>()?;
        let (blacks, whites) = split_span(&node.vertices);
        let bound = bs(blacks.len(), whites.len());

        let class_counts: Vec<(usize, usize)> =
            kids.iter().map(|&k| (self.nodes[k].n_black, self.nodes[k].n_white)).collect();
        let child_sets: Vec<&MaxbisizeSet> = kids.iter().map(|&k| &self.nodes[k].set).collect();
        let combos = prime_candidates(q, &class_counts, &child_sets, bound, self.cap)?;

        let cands: Vec<(Bisize, Derivation)> = combos
            .into_iter()
            .map(|(e, picks)| {
                let choices =
                    picks.into_iter().map(|(class, ch)| (kids[class], ch)).collect();
                (e, Derivation::PrimeCombo { choices })
            })
            .collect();
        self.finish(cands, bound, SpanSource::Vertices { blacks, whites }, None)
    }
}

fn color_counts(order: &[VertexRef]) -> (usize, usize) {
    let b = order.iter().filter(|v| v.color == Color::Black).count();
    (b, order.len() - b)
}

/// Every maximal biclique of a max-degree-2 graph is a closed star or one
/// color class, so the candidates are the two trivials plus one star per
/// vertex.
fn star_candidates(
    order: &[VertexRef],
    cyclic: bool,
    bound: Bisize,
) -> Vec<(Bisize, Derivation)> {
    let n = order.len();
    let mut cands = vec![
        (bs(bound.black, 0), Derivation::TrivialAllBlack),
        (bs(0, bound.white), Derivation::TrivialAllWhite),
    ];
    for (p, &v) in order.iter().enumerate() {
        let deg = if cyclic {
            2
        } else if n == 1 {
            0
        } else if p == 0 || p == n - 1 {
            1
        } else {
            2
        };
        let e = match v.color {
            Color::Black => bs(1, deg),
            Color::White => bs(deg, 1),
        };
        cands.push((e, Derivation::Star { center: v }));
    }
    cands
}

/// Reverses even-length orders that start white so the split construction
/// always yields floor(n/2) - b' whites past the gap.
fn normalize_copath_order(mut order: Vec<VertexRef>) -> Vec<VertexRef> {
    if order.len() % 2 == 0 && order.first().map(|v| v.color) == Some(Color::White) {
        order.reverse();
    }
    order
}

fn copath_candidates(order: &[VertexRef], bound: Bisize) -> Vec<(Bisize, Derivation)> {
    let half = order.len() / 2;
    let mut cands = vec![
        (bs(0, bound.white), Derivation::TrivialAllWhite),
        (bs(bound.black, 0), Derivation::TrivialAllBlack),
    ];
    for bp in 0..=half {
        let wp = half - bp;
        if bp <= bound.black && wp <= bound.white {
            cands.push((bs(bp, wp), Derivation::CoPathSplit { take_black: bp, take_white: wp }));
        }
    }
    cands
}

/// Maxbisize set of a complement of a path, given the underlying path
/// order. Requires more than two vertices of each color.
pub fn base_copath(order: &[VertexRef]) -> Result<MaxbisizeSet> {
    let order = normalize_copath_order(order.to_vec());
    let (b, w) = color_counts(&order);
    if b <= 2 || w <= 2 {
        return Err(Error::PreconditionViolated(format!(
            "co-path formula needs more than 2 vertices of each color, got {b} black and {w} white"
        )));
    }
    let bound = bs(b, w);
    let cands = copath_candidates(&order, bound);
    let sizes: Vec<Bisize> = cands.iter().map(|(e, _)| *e).collect();
    let kept = dom_indices(&sizes, bound)?;
    Ok(MaxbisizeSet::from_sorted(kept.into_iter().map(|i| sizes[i]).collect()))
}

/// Maxbisize set of a complement of a cycle, given the underlying cycle
/// order. Requires at least 8 vertices.
pub fn base_cocycle(order: &[VertexRef]) -> Result<MaxbisizeSet> {
    let n = order.len();
    if n < 8 {
        return Err(Error::PreconditionViolated(format!(
            "co-cycle formula needs at least 8 vertices, got {n}"
        )));
    }
    let (b, w) = color_counts(order);
    let da = base_copath(&order[1..])?;
    let mut path_b: Vec<VertexRef> = order[2..].to_vec();
    path_b.push(order[0]);
    let db = base_copath(&path_b)?;
    let all: Vec<Bisize> = da.items().iter().chain(db.items()).copied().collect();
    let kept = dom_indices(&all, bs(b, w))?;
    Ok(MaxbisizeSet::from_sorted(kept.into_iter().map(|i| all[i]).collect()))
}

/// Maxbisize set of a path or cycle, given the vertex order.
pub fn base_path_cycle(shape: BaseShape, order: &[VertexRef]) -> MaxbisizeSet {
    let cyclic = shape == BaseShape::Cycle;
    let (b, w) = color_counts(order);
    let bound = bs(b, w);
    let cands = star_candidates(order, cyclic, bound);
    let sizes: Vec<Bisize> = cands.iter().map(|(e, _)| *e).collect();
    let kept = dom_indices(&sizes, bound).expect("star candidates respect the bound");
    MaxbisizeSet::from_sorted(kept.into_iter().map(|i| sizes[i]).collect())
}

/// All inclusion-maximal bicliques of `h`, one-sided ones included.
/// Enumerates subsets of the smaller color side and closes each one.
pub fn maximal_bicliques_all(h: &BipartiteGraph, cap: usize) -> Result<Vec<VertexSet>> {
    let n = h.n_vertices();
    if n > cap {
        return Err(Error::WidthExceeded { vertices: n, cap });
    }
    let nb = h.n_black();
    let nw = h.n_white();
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut out = Vec::new();

    // closure of a black set: its common white neighborhood N, then every
    // black adjacent to all of N
    let close_black = |mask: u64| -> (Vec<usize>, Vec<usize>) {
        let mut ws = crate::bitset::BitSet::full(nw);
        for i in 0..nb {
            if mask >> i & 1 == 1 {
                ws.intersect_with(h.black_row(i));
            }
        }
        let mut blk = crate::bitset::BitSet::full(nb);
        for j in ws.iter() {
            blk.intersect_with(h.white_row(j));
        }
        (blk.iter().collect(), ws.iter().collect())
    };
    let close_white = |mask: u64| -> (Vec<usize>, Vec<usize>) {
        let mut blk = crate::bitset::BitSet::full(nb);
        for j in 0..nw {
            if mask >> j & 1 == 1 {
                blk.intersect_with(h.white_row(j));
            }
        }
        let mut ws = crate::bitset::BitSet::full(nw);
        for i in blk.iter() {
            ws.intersect_with(h.black_row(i));
        }
        (blk.iter().collect(), ws.iter().collect())
    };

    let side = nb.min(nw);
    debug_assert!(side < 63, "enumeration side must fit a u64 mask");
    let limit: u64 = 1u64 << side.min(62);
    for mask in 0..limit {
        let (blacks, whites) = if nb <= nw { close_black(mask) } else { close_white(mask) };
        if blacks.is_empty() && whites.is_empty() {
            continue;
        }
        if seen.insert((blacks.clone(), whites.clone())) {
            let refs: Vec<VertexRef> = blacks
                .iter()
                .map(|&i| VertexRef::black(i))
                .chain(whites.iter().map(|&j| VertexRef::white(j)))
                .collect();
            out.push(VertexSet::from_refs(h, &refs));
        }
    }
    out.sort_by_key(|s| s.to_refs());
    Ok(out)
}

/// Restriction of a class's set to a maximal quotient biclique `c`: nothing
/// when the class misses `c`, the full black or white side when only that
/// quotient vertex is in `c`, and the class's whole set when both are.
pub fn dc_restrict(
    c: &VertexSet,
    q: &QuotientGraph,
    class: usize,
    class_black: usize,
    class_white: usize,
    d_class: &MaxbisizeSet,
) -> MaxbisizeSet {
    let has_b = q.black_rep[class].map_or(false, |hb| c.blacks.contains(hb));
    let has_w = q.white_rep[class].map_or(false, |hw| c.whites.contains(hw));
    match (has_b, has_w) {
        (false, false) => MaxbisizeSet::empty(),
        (true, false) => MaxbisizeSet::singleton(bs(class_black, 0)),
        (false, true) => MaxbisizeSet::singleton(bs(0, class_white)),
        (true, true) => d_class.clone(),
    }
}

/// Candidate elements of a Prime node with provenance: for every maximal
/// biclique of the quotient, folds the participating classes' restricted
/// sets with pairwise sums, pruning to an antichain after every class.
fn prime_candidates(
    q: &QuotientGraph,
    class_counts: &[(usize, usize)],
    child_sets: &[&MaxbisizeSet],
    bound: Bisize,
    cap: usize,
) -> Result<Vec<(Bisize, Vec<(usize, PrimeChoice)>)>> {
    let cliques = maximal_bicliques_all(&q.h, cap)?;
    let mut cands: Vec<(Bisize, Vec<(usize, PrimeChoice)>)> = Vec::new();
    for c in &cliques {
        let mut acc: Vec<(Bisize, Vec<(usize, PrimeChoice)>)> = vec![(bs(0, 0), Vec::new())];
        for (i, set) in child_sets.iter().enumerate() {
            let has_b = q.black_rep[i].map_or(false, |hb| c.blacks.contains(hb));
            let has_w = q.white_rep[i].map_or(false, |hw| c.whites.contains(hw));
            let options: Vec<(Bisize, PrimeChoice)> = match (has_b, has_w) {
                (false, false) => continue,
                (true, false) => vec![(bs(class_counts[i].0, 0), PrimeChoice::AllBlack)],
                (false, true) => vec![(bs(0, class_counts[i].1), PrimeChoice::AllWhite)],
                (true, true) => set
                    .items()
                    .iter()
                    .enumerate()
                    .map(|(j, e)| (*e, PrimeChoice::Element(j)))
                    .collect(),
            };
            let mut next: Vec<(Bisize, Vec<(usize, PrimeChoice)>)> =
                Vec::with_capacity(acc.len() * options.len());
            for (s, picks) in &acc {
                for (e, choice) in &options {
                    let mut p = picks.clone();
                    p.push((i, choice.clone()));
                    next.push((bs(s.black + e.black, s.white + e.white), p));
                }
            }
            let sizes: Vec<Bisize> = next.iter().map(|(e, _)| *e).collect();
            let kept = dom_indices(&sizes, bound)?;
            acc = kept.into_iter().map(|k| next[k].clone()).collect();
        }
        if acc.len() == 1 && acc[0].1.is_empty() {
            continue; // biclique met no class; cannot happen for nonempty c
        }
        cands.append(&mut acc);
    }
    Ok(cands)
}

/// Maxbisize set of a Prime node from its children's sets.
pub fn combine_prime(
    node: &DecompNode,
    child_sets: &[MaxbisizeSet],
    cap: usize,
) -> Result<MaxbisizeSet> {
    let q = node.quotient.as_ref().ok_or_else(|| {
        Error::PreconditionViolated("prime combine needs the node's quotient".into())
    })?;
    let class_counts: Vec<(usize, usize)> = node
        .children
        .iter()
        .map(|ch| {
            let b = ch.vertices.iter().filter(|v| v.color == Color::Black).count();
            (b, ch.vertices.len() - b)
        })
        .collect();
    let (b, w) = color_counts(&node.vertices);
    let bound = bs(b, w);
    let sets: Vec<&MaxbisizeSet> = child_sets.iter().collect();
    let combos = prime_candidates(q, &class_counts, &sets, bound, cap)?;
    let sizes: Vec<Bisize> = combos.iter().map(|(e, _)| *e).collect();
    let kept = dom_indices(&sizes, bound)?;
    Ok(MaxbisizeSet::from_sorted(kept.into_iter().map(|i| sizes[i]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{build_canonical_tree, build_lozin_tree};
    use crate::graph::BipartiteGraph;
    use crate::maxbisize::Objective;
    use crate::oracle::oracle_maxbisizes;
    use crate::shapes::{co_cycle, co_path, cycle, path, position_ref, star123};

    fn items(s: &MaxbisizeSet) -> Vec<(usize, usize)> {
        s.items().iter().map(|e| (e.black, e.white)).collect()
    }

    fn solve_lozin(g: &BipartiteGraph) -> MaxbisizeSet {
        let t = build_lozin_tree(g).unwrap();
        solve_tree(g, &t).unwrap().set().clone()
    }

    fn solve_canonical(g: &BipartiteGraph) -> MaxbisizeSet {
        let t = build_canonical_tree(g).unwrap();
        solve_tree(g, &t).unwrap().set().clone()
    }

    #[test]
    fn single_edge_and_single_vertices() {
        let k2 = BipartiteGraph::from_edges(1, 1, &[(0, 0)]);
        assert_eq!(items(&solve_lozin(&k2)), vec![(1, 1)]);

        let single = BipartiteGraph::new(1, 0);
        assert_eq!(items(&solve_lozin(&single)), vec![(1, 0)]);
    }

    #[test]
    fn paths_and_cycles_match_their_formula_and_the_oracle() {
        for g in [path(7), path(9), cycle(8), cycle(12)] {
            let d = solve_lozin(&g);
            assert_eq!(d, oracle_maxbisizes(&g).unwrap());
        }
        assert_eq!(items(&solve_lozin(&cycle(8))), vec![(0, 4), (1, 2), (2, 1), (4, 0)]);
        assert_eq!(items(&solve_lozin(&path(7))), vec![(0, 3), (1, 2), (2, 1), (4, 0)]);
    }

    #[test]
    fn copath_formula_values() {
        let o7: Vec<VertexRef> = (1..=7).map(position_ref).collect();
        assert_eq!(items(&base_copath(&o7).unwrap()), vec![(0, 3), (1, 2), (2, 1), (4, 0)]);
        let o9: Vec<VertexRef> = (1..=9).map(position_ref).collect();
        assert_eq!(
            items(&base_copath(&o9).unwrap()),
            vec![(0, 4), (1, 3), (2, 2), (3, 1), (5, 0)]
        );
        let o8: Vec<VertexRef> = (1..=8).map(position_ref).collect();
        assert_eq!(
            items(&base_copath(&o8).unwrap()),
            vec![(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]
        );
    }

    #[test]
    fn copath_solves_match_the_oracle() {
        for n in [7, 8, 9, 11, 12] {
            let g = co_path(n);
            assert_eq!(solve_lozin(&g), oracle_maxbisizes(&g).unwrap(), "co-path {n}");
        }
    }

    #[test]
    fn cocycle_formula_and_solves() {
        let o10: Vec<VertexRef> = (1..=10).map(position_ref).collect();
        assert_eq!(
            items(&base_cocycle(&o10).unwrap()),
            vec![(0, 5), (1, 3), (2, 2), (3, 1), (5, 0)]
        );
        for n in [8, 10, 12, 14] {
            let g = co_cycle(n);
            assert_eq!(solve_lozin(&g), oracle_maxbisizes(&g).unwrap(), "co-cycle {n}");
        }
    }

    #[test]
    fn quotient_bicliques_of_a_path() {
        let g = path(7);
        let t = build_canonical_tree(&g).unwrap();
        let q = t.root.quotient.as_ref().unwrap();
        let cliques = maximal_bicliques_all(&q.h, DEFAULT_QUOTIENT_CAP).unwrap();
        assert_eq!(cliques.len(), 7);
        let one_sided =
            cliques.iter().filter(|c| c.count_black() == 0 || c.count_white() == 0).count();
        assert_eq!(one_sided, 2);
    }

    #[test]
    fn quotient_bicliques_edge_cases() {
        let k22 = BipartiteGraph::from_edges(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(maximal_bicliques_all(&k22, 24).unwrap().len(), 1);

        let bare = BipartiteGraph::new(1, 1);
        let cl = maximal_bicliques_all(&bare, 24).unwrap();
        assert_eq!(cl.len(), 2);

        assert!(matches!(
            maximal_bicliques_all(&cycle(8), 7),
            Err(Error::WidthExceeded { vertices: 8, cap: 7 })
        ));
    }

    #[test]
    fn prime_combine_agrees_with_the_star_formula_on_identity_quotients() {
        // all-singleton prime over a path: the quotient is the graph itself
        let g = path(7);
        let t = build_canonical_tree(&g).unwrap();
        assert_eq!(t.root.kind, NodeKind::Prime);
        let child_sets: Vec<MaxbisizeSet> = t
            .root
            .children
            .iter()
            .map(|c| match c.vertices[0].color {
                Color::Black => MaxbisizeSet::singleton(bs(1, 0)),
                Color::White => MaxbisizeSet::singleton(bs(0, 1)),
            })
            .collect();
        let via_prime = combine_prime(&t.root, &child_sets, DEFAULT_QUOTIENT_CAP).unwrap();
        let order: Vec<VertexRef> = (1..=7).map(position_ref).collect();
        assert_eq!(via_prime, base_path_cycle(BaseShape::Path, &order));
    }

    #[test]
    fn canonical_and_lozin_agree_where_both_apply() {
        for g in [path(7), cycle(8), co_path(9), co_cycle(10)] {
            assert_eq!(solve_canonical(&g), solve_lozin(&g));
        }
    }

    #[test]
    fn obstruction_solves_canonically() {
        let g = star123();
        assert_eq!(solve_canonical(&g), oracle_maxbisizes(&g).unwrap());
    }

    #[test]
    fn dc_restrict_cases() {
        let g = path(7);
        let t = build_canonical_tree(&g).unwrap();
        let q = t.root.quotient.as_ref().unwrap();
        // class 0 is the first black singleton
        let full = VertexSet::full(&q.h);
        let d = MaxbisizeSet::singleton(bs(1, 0));
        assert_eq!(items(&dc_restrict(&full, q, 0, 1, 0, &d)), vec![(1, 0)]);
        let none = VertexSet::empty(&q.h);
        assert!(dc_restrict(&none, q, 0, 1, 0, &d).is_empty());
    }

    #[test]
    fn width_cap_propagates() {
        let g = path(7);
        let t = build_canonical_tree(&g).unwrap();
        assert!(matches!(
            solve_tree_with_cap(&g, &t, 5),
            Err(Error::WidthExceeded { vertices: 7, cap: 5 })
        ));
    }

    #[test]
    fn objectives_read_off_the_root_set() {
        let g = cycle(8);
        let d = solve_lozin(&g);
        let (v, _) = crate::maxbisize::reduce_objective(&d, Objective::VertexMax).unwrap();
        let (e, _) = crate::maxbisize::reduce_objective(&d, Objective::EdgeMax).unwrap();
        assert_eq!((v, e), (4, 2));
    }
}
