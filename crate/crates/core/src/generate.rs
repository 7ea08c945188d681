//! Instance generators: parametric base families and random twin-free
//! graphs built by expanding a decomposition-tree specification.
//!
//! Expansion runs the decomposition operations in reverse, so the intended
//! tree comes out alongside the graph and can be fed straight to the
//! solver or compared against what the builders reconstruct. Exact tree
//! recovery is not promised: substitution can create coincidental
//! structure, so round-trip checks assert the root kind only.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Color, VertexRef};
use crate::shapes::{co_cycle, co_path, cycle, path, position_ref};
use crate::tree::{
    quotient_graph, BaseInfo, BaseShape, DecompNode, DecompositionTree, NodeKind,
};

/// Which builder the generated instance targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeClass {
    /// Structural rules only: generated trees contain no Prime nodes.
    Lozin,
    /// Primes allowed, drawn from the verified library.
    Canonical,
}

/// A quotient graph usable as a Prime node; must be twin-free and have no
/// proper nontrivial bimodules. Expansion re-verifies this.
#[derive(Debug, Clone)]
pub enum PrimeShape {
    PathSeven,
    CycleEight,
    Custom(BipartiteGraph),
}

impl PrimeShape {
    pub fn graph(&self) -> BipartiteGraph {
        match self {
            PrimeShape::PathSeven => path(7),
            PrimeShape::CycleEight => cycle(8),
            PrimeShape::Custom(g) => g.clone(),
        }
    }
}

/// One class of a Prime spec. Singleton classes take a quotient vertex
/// as-is; fused classes pair a quotient black with a quotient white and
/// expand a sub-spec in their place.
#[derive(Debug, Clone)]
pub enum ClassSpec {
    Black(usize),
    White(usize),
    Both { hb: usize, hw: usize, sub: TreeSpec },
}

/// Recursive description of a graph as the tree that should decompose it.
#[derive(Debug, Clone)]
pub enum TreeSpec {
    Leaf(Color),
    Parallel(Vec<TreeSpec>),
    Series(Vec<TreeSpec>),
    /// Parts in chain order: earlier parts end up left-adjacent to later.
    Ks(Vec<TreeSpec>),
    Base(BaseShape, usize),
    Prime(PrimeShape, Vec<ClassSpec>),
}

impl TreeSpec {
    /// Number of vertices the expansion will produce.
    pub fn size(&self) -> usize {
        match self {
            TreeSpec::Leaf(_) => 1,
            TreeSpec::Parallel(ps) | TreeSpec::Series(ps) | TreeSpec::Ks(ps) => {
                ps.iter().map(|p| p.size()).sum()
            }
            TreeSpec::Base(_, n) => *n,
            TreeSpec::Prime(_, classes) => classes
                .iter()
                .map(|c| match c {
                    ClassSpec::Black(_) | ClassSpec::White(_) => 1,
                    ClassSpec::Both { sub, .. } => sub.size(),
                })
                .sum(),
        }
    }
}

/// Named base family with canonical vertex order.
pub fn gen_base(shape: BaseShape, n: usize) -> Result<BipartiteGraph> {
    match shape {
        BaseShape::Path | BaseShape::CoPath => {
            if n < 2 {
                return Err(Error::BadParameter(format!(
                    "{} needs at least 2 vertices, got {n}",
                    shape.name()
                )));
            }
        }
        BaseShape::Cycle | BaseShape::CoCycle => {
            if n < 4 || n % 2 != 0 {
                return Err(Error::BadParameter(format!(
                    "{} needs an even vertex count of at least 4, got {n}",
                    shape.name()
                )));
            }
        }
    }
    Ok(match shape {
        BaseShape::Path => path(n),
        BaseShape::Cycle => cycle(n),
        BaseShape::CoPath => co_path(n),
        BaseShape::CoCycle => co_cycle(n),
    })
}

/// A generated corpus instance.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: BipartiteGraph,
    pub tree: DecompositionTree,
    pub spec: TreeSpec,
    pub seed: u64,
}

/// Expands a spec into its graph and intended decomposition tree. The
/// result is rejected with [`Error::TwinsProduced`] when the expansion
/// creates twins, which a spec can do even with twin-free parts.
pub fn gen_from_spec(spec: &TreeSpec) -> Result<(BipartiteGraph, DecompositionTree)> {
    let (g, root) = expand(spec)?;
    debug_assert_eq!(g.n_vertices(), spec.size());
    if let Some(class) = g.find_twins().into_iter().next() {
        return Err(Error::TwinsProduced { class, spec: format!("{spec:?}") });
    }
    Ok((g, DecompositionTree { root }))
}

fn all_refs(g: &BipartiteGraph) -> Vec<VertexRef> {
    (0..g.n_black())
        .map(VertexRef::black)
        .chain((0..g.n_white()).map(VertexRef::white))
        .collect()
}

/// Shifts every vertex reference in a subtree by the embedding offsets.
fn offset_node(node: &mut DecompNode, db: usize, dw: usize) {
    let shift = |v: &mut VertexRef| {
        v.index += match v.color {
            Color::Black => db,
            Color::White => dw,
        }
    };
    node.vertices.iter_mut().for_each(shift);
    if let Some(info) = node.base.as_mut() {
        info.order.iter_mut().for_each(shift);
    }
    if let Some(q) = node.quotient.as_mut() {
        let old = std::mem::take(&mut q.class_of);
        for (mut v, c) in old {
            shift(&mut v);
            q.class_of.insert(v, c);
        }
    }
    for c in &mut node.children {
        offset_node(c, db, dw);
    }
}

fn expand(spec: &TreeSpec) -> Result<(BipartiteGraph, DecompNode)> {
    match spec {
        TreeSpec::Leaf(color) => {
            let g = match color {
                Color::Black => BipartiteGraph::new(1, 0),
                Color::White => BipartiteGraph::new(0, 1),
            };
            let node = DecompNode {
                kind: NodeKind::Leaf,
                vertices: all_refs(&g),
                children: Vec::new(),
                base: None,
                quotient: None,
            };
            Ok((g, node))
        }
        TreeSpec::Parallel(parts) => expand_flat(NodeKind::Parallel, parts),
        TreeSpec::Series(parts) => expand_flat(NodeKind::Series, parts),
        TreeSpec::Ks(parts) => expand_flat(NodeKind::Ks, parts),
        TreeSpec::Base(shape, n) => {
            let g = gen_base(*shape, *n)?;
            let order: Vec<VertexRef> = (1..=*n).map(position_ref).collect();
            let node = DecompNode {
                kind: NodeKind::Base,
                vertices: all_refs(&g),
                children: Vec::new(),
                base: Some(BaseInfo { shape: *shape, order }),
                quotient: None,
            };
            Ok((g, node))
        }
        TreeSpec::Prime(shape, classes) => expand_prime(shape, classes),
    }
}

fn expand_flat(kind: NodeKind, parts: &[TreeSpec]) -> Result<(BipartiteGraph, DecompNode)> {
    if parts.len() < 2 {
        return Err(Error::BadSpec(format!(
            "{} spec needs at least two parts, got {}",
            kind.name(),
            parts.len()
        )));
    }
    let expanded: Vec<(BipartiteGraph, DecompNode)> =
        parts.iter().map(expand).collect::<Result<_>>()?;
    let sides: Vec<(usize, usize)> =
        expanded.iter().map(|(g, _)| (g.n_black(), g.n_white())).collect();

    let nb: usize = sides.iter().map(|s| s.0).sum();
    let nw: usize = sides.iter().map(|s| s.1).sum();
    let mut g = BipartiteGraph::new(nb, nw);
    let mut children = Vec::with_capacity(expanded.len());
    let mut offsets = Vec::with_capacity(expanded.len());
    let (mut db, mut dw) = (0usize, 0usize);
    for (pg, mut node) in expanded {
        for (b, w) in pg.edges() {
            g.add_edge(b + db, w + dw);
        }
        offset_node(&mut node, db, dw);
        children.push(node);
        offsets.push((db, dw));
        db += pg.n_black();
        dw += pg.n_white();
    }

    for i in 0..sides.len() {
        for j in 0..sides.len() {
            if i == j {
                continue;
            }
            let join = match kind {
                NodeKind::Series => true,
                NodeKind::Ks => i < j,
                _ => false,
            };
            if !join {
                continue;
            }
            for b in 0..sides[i].0 {
                for w in 0..sides[j].1 {
                    g.add_edge(b + offsets[i].0, w + offsets[j].1);
                }
            }
        }
    }

    let node = DecompNode {
        kind,
        vertices: all_refs(&g),
        children,
        base: None,
        quotient: None,
    };
    Ok((g, node))
}

fn expand_prime(shape: &PrimeShape, classes: &[ClassSpec]) -> Result<(BipartiteGraph, DecompNode)> {
    let h = shape.graph();
    verify_prime(&h)?;
    if classes.len() < 3 {
        return Err(Error::BadSpec(format!(
            "prime spec needs at least 3 classes, got {}",
            classes.len()
        )));
    }

    // reps per class, and the partition check over h's two sides
    let mut black_rep: Vec<Option<usize>> = Vec::with_capacity(classes.len());
    let mut white_rep: Vec<Option<usize>> = Vec::with_capacity(classes.len());
    let mut seen_b = vec![false; h.n_black()];
    let mut seen_w = vec![false; h.n_white()];
    let claim_b = |i: usize, seen: &mut Vec<bool>| -> Result<()> {
        if i >= seen.len() || seen[i] {
            return Err(Error::BadSpec(format!(
                "quotient black {i} is out of range or claimed twice"
            )));
        }
        seen[i] = true;
        Ok(())
    };
    let claim_w = |j: usize, seen: &mut Vec<bool>| -> Result<()> {
        if j >= seen.len() || seen[j] {
            return Err(Error::BadSpec(format!(
                "quotient white {j} is out of range or claimed twice"
            )));
        }
        seen[j] = true;
        Ok(())
    };
    for c in classes {
        match c {
            ClassSpec::Black(hb) => {
                claim_b(*hb, &mut seen_b)?;
                black_rep.push(Some(*hb));
                white_rep.push(None);
            }
            ClassSpec::White(hw) => {
                claim_w(*hw, &mut seen_w)?;
                black_rep.push(None);
                white_rep.push(Some(*hw));
            }
            ClassSpec::Both { hb, hw, .. } => {
                claim_b(*hb, &mut seen_b)?;
                claim_w(*hw, &mut seen_w)?;
                black_rep.push(Some(*hb));
                white_rep.push(Some(*hw));
            }
        }
    }
    if seen_b.iter().any(|s| !s) || seen_w.iter().any(|s| !s) {
        return Err(Error::BadSpec(
            "classes must cover every vertex of the prime quotient".into(),
        ));
    }

    let expanded: Vec<(BipartiteGraph, DecompNode)> = classes
        .iter()
        .map(|c| match c {
            ClassSpec::Black(_) => expand(&TreeSpec::Leaf(Color::Black)),
            ClassSpec::White(_) => expand(&TreeSpec::Leaf(Color::White)),
            ClassSpec::Both { hb, hw, sub } => {
                let (pg, node) = expand(sub)?;
                if pg.n_black() == 0 || pg.n_white() == 0 {
                    return Err(Error::BadSpec(format!(
                        "fused class ({hb}, {hw}) must expand to both colors"
                    )));
                }
                if (pg.edge_count() > 0) != h.has_edge(*hb, *hw) {
                    return Err(Error::BadSpec(format!(
                        "fused class ({hb}, {hw}) must contain an edge exactly when the \
                         quotient pair is adjacent"
                    )));
                }
                Ok((pg, node))
            }
        })
        .collect::<Result<_>>()?;

    let sides: Vec<(usize, usize)> =
        expanded.iter().map(|(g, _)| (g.n_black(), g.n_white())).collect();
    let nb: usize = sides.iter().map(|s| s.0).sum();
    let nw: usize = sides.iter().map(|s| s.1).sum();
    let mut g = BipartiteGraph::new(nb, nw);
    let mut children = Vec::with_capacity(expanded.len());
    let mut offsets = Vec::with_capacity(expanded.len());
    let (mut db, mut dw) = (0usize, 0usize);
    for (pg, mut node) in expanded {
        for (b, w) in pg.edges() {
            g.add_edge(b + db, w + dw);
        }
        offset_node(&mut node, db, dw);
        children.push(node);
        offsets.push((db, dw));
        db += pg.n_black();
        dw += pg.n_white();
    }

    // bimodular wiring: class i's blacks meet class j's whites exactly when
    // their quotient representatives are adjacent
    for i in 0..classes.len() {
        let Some(hb) = black_rep[i] else { continue };
        for j in 0..classes.len() {
            if i == j {
                continue;
            }
            let Some(hw) = white_rep[j] else { continue };
            if !h.has_edge(hb, hw) {
                continue;
            }
            for b in 0..sides[i].0 {
                for w in 0..sides[j].1 {
                    g.add_edge(b + offsets[i].0, w + offsets[j].1);
                }
            }
        }
    }

    // store the quotient in derived numbering (classes in child order), the
    // same convention the builders and the validator use; it is the library
    // graph up to relabeling
    let parts: Vec<crate::graph::VertexSet> = children
        .iter()
        .map(|c| crate::graph::VertexSet::from_refs(&g, &c.vertices))
        .collect();
    let quotient = quotient_graph(&g, &parts);
    let node = DecompNode {
        kind: NodeKind::Prime,
        vertices: all_refs(&g),
        children,
        base: None,
        quotient: Some(quotient),
    };
    Ok((g, node))
}

/// A library prime must come back from the canonical builder as a single
/// all-singleton Prime node: twin-free, no proper nontrivial bimodules,
/// and no structural split.
fn verify_prime(h: &BipartiteGraph) -> Result<()> {
    let t = crate::decompose::build_canonical_tree(h).map_err(|e| {
        Error::BadSpec(format!("prime library graph failed to decompose: {e}"))
    })?;
    let ok = t.root.kind == NodeKind::Prime
        && t.root.children.len() == h.n_vertices()
        && t.root.children.iter().all(|c| c.kind == NodeKind::Leaf);
    if ok {
        Ok(())
    } else {
        Err(Error::BadSpec(format!(
            "prime library graph is not bimodule-prime: root is {} with {} classes",
            t.root.kind.name(),
            t.root.children.len()
        )))
    }
}

/// Random twin-free instance of roughly `n` vertices, built from a random
/// spec of the requested class and expanded. Resamples on twin collisions;
/// deterministic for a given seed.
pub fn gen_random(n: usize, class: TreeClass, max_width: usize, seed: u64) -> Result<Generated> {
    if n == 0 {
        return Err(Error::BadParameter("cannot generate an empty graph".into()));
    }
    let mut last = None;
    for attempt in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let spec = rand_spec(&mut rng, n, class, max_width, false, false);
        match gen_from_spec(&spec) {
            Ok((graph, tree)) => return Ok(Generated { graph, tree, spec, seed }),
            Err(e @ Error::TwinsProduced { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::BadSpec("generation failed to converge".into())))
}

fn split_sizes(rng: &mut ChaCha8Rng, n: usize, k: usize, min_part: usize) -> Vec<usize> {
    debug_assert!(n >= k * min_part);
    let mut sizes = vec![min_part; k];
    for _ in 0..(n - k * min_part) {
        let i = rng.gen_range(0..k);
        sizes[i] += 1;
    }
    sizes
}

/// Random spec with roughly useful structure. `bicolor` forces both colors
/// into the expansion (so joins above stay unambiguous); `edged` further
/// forces at least one internal edge (for fused prime classes).
fn rand_spec(
    rng: &mut ChaCha8Rng,
    n: usize,
    class: TreeClass,
    max_width: usize,
    bicolor: bool,
    edged: bool,
) -> TreeSpec {
    let bicolor = bicolor || edged;
    match n {
        0 | 1 => {
            let color = if rng.gen_bool(0.5) { Color::Black } else { Color::White };
            TreeSpec::Leaf(color)
        }
        2 => {
            if edged || rng.gen_bool(0.7) {
                TreeSpec::Ks(vec![TreeSpec::Leaf(Color::Black), TreeSpec::Leaf(Color::White)])
            } else {
                TreeSpec::Ks(vec![TreeSpec::Leaf(Color::White), TreeSpec::Leaf(Color::Black)])
            }
        }
        3 => {
            let colors: [Color; 3] = if rng.gen_bool(0.5) {
                [Color::Black, Color::White, Color::Black]
            } else {
                [Color::White, Color::Black, Color::White]
            };
            TreeSpec::Ks(colors.iter().map(|&c| TreeSpec::Leaf(c)).collect())
        }
        _ => {
            #[derive(Clone, Copy)]
            enum Pick {
                Par,
                Ser,
                Ks,
                Base,
                Prime,
            }
            let mut picks = vec![Pick::Par, Pick::Ser, Pick::Ks, Pick::Ks];
            if n >= 7 {
                picks.push(Pick::Base);
                picks.push(Pick::Base);
            }
            if class == TreeClass::Canonical && n >= 7 && max_width >= 7 {
                picks.push(Pick::Prime);
                picks.push(Pick::Prime);
            }
            let pick = *picks.choose(rng).expect("pick list is nonempty");
            match pick {
                Pick::Par | Pick::Ser => {
                    let kmax = (n / 2).min(4).max(2);
                    let k = rng.gen_range(2..=kmax);
                    let sizes = split_sizes(rng, n, k, 2);
                    // a series join wires every cross pair, so any edge
                    // requirement is met structurally; a parallel union adds
                    // nothing, so the requirement falls on the first part
                    let par = matches!(pick, Pick::Par);
                    let parts = sizes
                        .iter()
                        .enumerate()
                        .map(|(i, &s)| {
                            rand_spec(rng, s, class, max_width, true, par && edged && i == 0)
                        })
                        .collect();
                    if par {
                        TreeSpec::Parallel(parts)
                    } else {
                        TreeSpec::Series(parts)
                    }
                }
                Pick::Ks => {
                    let kmax = n.min(4).max(2);
                    let k = rng.gen_range(2..=kmax);
                    let sizes = split_sizes(rng, n, k, 1);
                    let last = sizes.len() - 1;
                    let parts: Vec<TreeSpec> = sizes
                        .iter()
                        .enumerate()
                        .map(|(i, &s)| {
                            if s == 1 {
                                // pin the ends when colors matter so the
                                // chain both has blacks early and whites
                                // late
                                let color = if bicolor && i == 0 {
                                    Color::Black
                                } else if bicolor && i == last {
                                    Color::White
                                } else if rng.gen_bool(0.5) {
                                    Color::Black
                                } else {
                                    Color::White
                                };
                                TreeSpec::Leaf(color)
                            } else {
                                rand_spec(rng, s, class, max_width, bicolor && (i == 0 || i == last), false)
                            }
                        })
                        .collect();
                    TreeSpec::Ks(parts)
                }
                Pick::Base => {
                    let mut shapes = vec![BaseShape::Path, BaseShape::CoPath];
                    if n >= 8 && n % 2 == 0 {
                        shapes.push(BaseShape::Cycle);
                        shapes.push(BaseShape::CoCycle);
                    }
                    TreeSpec::Base(*shapes.choose(rng).unwrap(), n)
                }
                Pick::Prime => rand_prime_spec(rng, n, class, max_width),
            }
        }
    }
}

fn rand_prime_spec(rng: &mut ChaCha8Rng, n: usize, class: TreeClass, max_width: usize) -> TreeSpec {
    let shape = if n >= 8 && max_width >= 8 && rng.gen_bool(0.5) {
        PrimeShape::CycleEight
    } else {
        PrimeShape::PathSeven
    };
    let h = shape.graph();
    let mut extra = n.saturating_sub(h.n_vertices());

    // fuse disjoint adjacent pairs, growing them to absorb the extra size
    let mut edges: Vec<(usize, usize)> = h.edges();
    edges.shuffle(rng);
    let mut used_b = vec![false; h.n_black()];
    let mut used_w = vec![false; h.n_white()];
    let mut fused: Vec<(usize, usize, usize)> = Vec::new();
    let want = 1 + rng.gen_range(0..=1);
    for (hb, hw) in edges {
        if fused.len() >= want && extra == 0 {
            break;
        }
        if used_b[hb] || used_w[hw] {
            continue;
        }
        used_b[hb] = true;
        used_w[hw] = true;
        let grow = if extra > 0 { rng.gen_range(1..=extra.min(6)) } else { 0 };
        extra -= grow;
        fused.push((hb, hw, 2 + grow));
    }
    if extra > 0 {
        if let Some(last) = fused.last_mut() {
            last.2 += extra;
        }
    }

    let mut classes: Vec<ClassSpec> = fused
        .iter()
        .map(|&(hb, hw, s)| ClassSpec::Both {
            hb,
            hw,
            sub: rand_spec(rng, s, class, max_width, true, true),
        })
        .collect();
    for hb in 0..h.n_black() {
        if !used_b[hb] {
            classes.push(ClassSpec::Black(hb));
        }
    }
    for hw in 0..h.n_white() {
        if !used_w[hw] {
            classes.push(ClassSpec::White(hw));
        }
    }
    TreeSpec::Prime(shape, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{build_canonical_tree, build_lozin_tree};
    use crate::oracle::oracle_maxbisizes;
    use crate::solver::solve_tree;
    use crate::tree::validate_tree;

    #[test]
    fn base_families_and_parameter_checks() {
        assert_eq!(gen_base(BaseShape::Path, 7).unwrap(), path(7));
        assert_eq!(gen_base(BaseShape::Cycle, 8).unwrap(), cycle(8));
        assert_eq!(gen_base(BaseShape::CoPath, 9).unwrap(), co_path(9));
        assert!(matches!(gen_base(BaseShape::Path, 1), Err(Error::BadParameter(_))));
        assert!(matches!(gen_base(BaseShape::Cycle, 5), Err(Error::BadParameter(_))));
        assert!(matches!(gen_base(BaseShape::CoCycle, 2), Err(Error::BadParameter(_))));
    }

    #[test]
    fn series_of_two_leaves_is_a_single_edge() {
        let spec = TreeSpec::Series(vec![
            TreeSpec::Leaf(Color::Black),
            TreeSpec::Leaf(Color::White),
        ]);
        let (g, t) = gen_from_spec(&spec).unwrap();
        assert_eq!((g.n_black(), g.n_white(), g.edge_count()), (1, 1, 1));
        assert_eq!(t.root.kind, NodeKind::Series);
        validate_tree(&g, &t).unwrap();
    }

    #[test]
    fn parallel_of_two_paths_round_trips() {
        let spec = TreeSpec::Parallel(vec![
            TreeSpec::Base(BaseShape::Path, 5),
            TreeSpec::Base(BaseShape::Path, 5),
        ]);
        let (g, t) = gen_from_spec(&spec).unwrap();
        assert_eq!(g.n_vertices(), 10);
        assert_eq!(t.root.kind, NodeKind::Parallel);
        validate_tree(&g, &t).unwrap();
        // the graph itself is accepted by the structural builder
        let rebuilt = build_lozin_tree(&g).unwrap();
        assert_eq!(rebuilt.root.kind, NodeKind::Parallel);
    }

    #[test]
    fn all_singleton_prime_reproduces_the_library_graph() {
        let classes: Vec<ClassSpec> = (0..4)
            .map(ClassSpec::Black)
            .chain((0..3).map(ClassSpec::White))
            .collect();
        let spec = TreeSpec::Prime(PrimeShape::PathSeven, classes);
        let (g, t) = gen_from_spec(&spec).unwrap();
        assert_eq!(g, path(7));
        assert_eq!(t.root.kind, NodeKind::Prime);
        validate_tree(&g, &t).unwrap();
        let rebuilt = build_canonical_tree(&g).unwrap();
        assert_eq!(rebuilt.root.kind, NodeKind::Prime);
        assert_eq!(rebuilt.root.children.len(), 7);
    }

    #[test]
    fn fused_prime_class_expands_and_solves() {
        // fuse the pair (b1, w0) of the 7-path; the fused part is an edge
        // plus a second black that only sees the outside
        let mut classes = vec![ClassSpec::Both {
            hb: 1,
            hw: 0,
            sub: TreeSpec::Ks(vec![
                TreeSpec::Leaf(Color::Black),
                TreeSpec::Leaf(Color::White),
                TreeSpec::Leaf(Color::Black),
            ]),
        }];
        classes.extend([0, 2, 3].map(ClassSpec::Black));
        classes.extend([1, 2].map(ClassSpec::White));
        let spec = TreeSpec::Prime(PrimeShape::PathSeven, classes);
        let (g, t) = gen_from_spec(&spec).unwrap();
        assert_eq!(g.n_vertices(), 8);
        validate_tree(&g, &t).unwrap();
        let d = solve_tree(&g, &t).unwrap();
        assert_eq!(d.set(), &oracle_maxbisizes(&g).unwrap());
    }

    #[test]
    fn bad_specs_are_rejected() {
        // duplicate quotient vertex claim
        let classes: Vec<ClassSpec> = (0..4)
            .map(|_| ClassSpec::Black(0))
            .chain((0..3).map(ClassSpec::White))
            .collect();
        assert!(matches!(
            gen_from_spec(&TreeSpec::Prime(PrimeShape::PathSeven, classes)),
            Err(Error::BadSpec(_))
        ));
        // missing coverage
        let partial = vec![ClassSpec::Black(0), ClassSpec::Black(1), ClassSpec::White(0)];
        assert!(matches!(
            gen_from_spec(&TreeSpec::Prime(PrimeShape::PathSeven, partial)),
            Err(Error::BadSpec(_))
        ));
        // fused class whose internal edges contradict the quotient pair
        let contradict = vec![
            ClassSpec::Both {
                hb: 1,
                hw: 0,
                sub: TreeSpec::Ks(vec![
                    TreeSpec::Leaf(Color::White),
                    TreeSpec::Leaf(Color::Black),
                ]),
            },
            ClassSpec::Black(0),
            ClassSpec::Black(2),
            ClassSpec::Black(3),
            ClassSpec::White(1),
            ClassSpec::White(2),
        ];
        assert!(matches!(
            gen_from_spec(&TreeSpec::Prime(PrimeShape::PathSeven, contradict)),
            Err(Error::BadSpec(_))
        ));
        // arity floor
        assert!(matches!(
            gen_from_spec(&TreeSpec::Parallel(vec![TreeSpec::Leaf(Color::Black)])),
            Err(Error::BadSpec(_))
        ));
        // non-prime library graph
        let k22 = crate::shapes::complete(2, 2);
        let classes: Vec<ClassSpec> =
            (0..2).map(ClassSpec::Black).chain((0..2).map(ClassSpec::White)).collect();
        assert!(matches!(
            gen_from_spec(&TreeSpec::Prime(PrimeShape::Custom(k22), classes)),
            Err(Error::BadSpec(_))
        ));
    }

    #[test]
    fn twin_producing_specs_are_rejected() {
        // series of two single edges: both blacks end up seeing both whites
        let k2 = || {
            TreeSpec::Ks(vec![TreeSpec::Leaf(Color::Black), TreeSpec::Leaf(Color::White)])
        };
        assert!(matches!(
            gen_from_spec(&TreeSpec::Series(vec![k2(), k2()])),
            Err(Error::TwinsProduced { .. })
        ));
    }

    #[test]
    fn random_lozin_instances_round_trip() {
        for seed in 0..20 {
            let inst = gen_random(14, TreeClass::Lozin, 2, seed).unwrap();
            assert!(inst.graph.is_twin_free());
            assert_eq!(inst.graph.n_vertices(), inst.spec.size());
            validate_tree(&inst.graph, &inst.tree).unwrap();
            build_lozin_tree(&inst.graph)
                .unwrap_or_else(|e| panic!("seed {seed}: structural builder rejected: {e}"));
        }
    }

    #[test]
    fn random_canonical_instances_round_trip() {
        for seed in 100..120 {
            let inst = gen_random(18, TreeClass::Canonical, 8, seed).unwrap();
            assert!(inst.graph.is_twin_free());
            validate_tree(&inst.graph, &inst.tree).unwrap();
            let rebuilt = build_canonical_tree(&inst.graph).unwrap();
            let spec_kind = match inst.spec {
                TreeSpec::Parallel(_) => NodeKind::Parallel,
                TreeSpec::Series(_) => NodeKind::Series,
                TreeSpec::Ks(_) => NodeKind::Ks,
                TreeSpec::Prime(..) => NodeKind::Prime,
                TreeSpec::Base(..) | TreeSpec::Leaf(_) => continue,
            };
            assert_eq!(
                rebuilt.root.kind, spec_kind,
                "seed {seed}: spec {:?}",
                inst.spec
            );
        }
    }

    #[test]
    fn generated_instances_solve_like_the_oracle() {
        for seed in 200..215 {
            let inst = gen_random(12, TreeClass::Canonical, 8, seed).unwrap();
            let d = solve_tree(&inst.graph, &inst.tree).unwrap();
            assert_eq!(
                d.set(),
                &oracle_maxbisizes(&inst.graph).unwrap(),
                "seed {seed}: spec {:?}",
                inst.spec
            );
        }
    }
}
