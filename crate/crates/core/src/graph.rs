//! Bipartite graphs with two-sided bit-vector adjacency.
//!
//! Vertices are addressed as (color, index) pairs with 0-based indices per
//! color class. The text format and all user-facing output are 1-based.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A vertex of a bipartite graph: color class plus 0-based index within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexRef {
    pub color: Color,
    pub index: usize,
}

impl VertexRef {
    pub fn black(index: usize) -> Self {
        VertexRef { color: Color::Black, index }
    }

    pub fn white(index: usize) -> Self {
        VertexRef { color: Color::White, index }
    }
}

impl fmt::Display for VertexRef {
    /// 1-based, e.g. "b3" is the third black vertex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.color {
            Color::Black => 'b',
            Color::White => 'w',
        };
        write!(f, "{}{}", c, self.index + 1)
    }
}

impl FromStr for VertexRef {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let color = match s.chars().next() {
            Some('b') => Color::Black,
            Some('w') => Color::White,
            _ => return Err(format!("bad vertex '{s}'")),
        };
        let index: usize = s[1..]
            .parse()
            .map_err(|_| format!("bad vertex '{s}'"))?;
        if index == 0 {
            return Err(format!("bad vertex '{s}': indices are 1-based"));
        }
        Ok(VertexRef { color, index: index - 1 })
    }
}

impl Serialize for VertexRef {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for VertexRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of the vertices of a particular graph, one bit set per color.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    pub blacks: BitSet,
    pub whites: BitSet,
}

impl VertexSet {
    pub fn empty(g: &BipartiteGraph) -> Self {
        VertexSet {
            blacks: BitSet::new(g.n_black()),
            whites: BitSet::new(g.n_white()),
        }
    }

    pub fn full(g: &BipartiteGraph) -> Self {
        VertexSet {
            blacks: BitSet::full(g.n_black()),
            whites: BitSet::full(g.n_white()),
        }
    }

    pub fn from_parts(blacks: BitSet, whites: BitSet) -> Self {
        VertexSet { blacks, whites }
    }

    pub fn from_refs(g: &BipartiteGraph, refs: &[VertexRef]) -> Self {
        let mut s = VertexSet::empty(g);
        for r in refs {
            s.insert(*r);
        }
        s
    }

    pub fn insert(&mut self, v: VertexRef) {
        match v.color {
            Color::Black => self.blacks.insert(v.index),
            Color::White => self.whites.insert(v.index),
        }
    }

    pub fn remove(&mut self, v: VertexRef) {
        match v.color {
            Color::Black => self.blacks.remove(v.index),
            Color::White => self.whites.remove(v.index),
        }
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        match v.color {
            Color::Black => self.blacks.contains(v.index),
            Color::White => self.whites.contains(v.index),
        }
    }

    pub fn count(&self) -> usize {
        self.blacks.count() + self.whites.count()
    }

    pub fn count_black(&self) -> usize {
        self.blacks.count()
    }

    pub fn count_white(&self) -> usize {
        self.whites.count()
    }

    pub fn is_empty(&self) -> bool {
        self.blacks.is_empty() && self.whites.is_empty()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.blacks.union_with(&other.blacks);
        self.whites.union_with(&other.whites);
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        self.blacks.subtract(&other.blacks);
        self.whites.subtract(&other.whites);
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.blacks.intersects(&other.blacks) || self.whites.intersects(&other.whites)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.blacks.is_subset(&other.blacks) && self.whites.is_subset(&other.whites)
    }

    /// Blacks in index order, then whites in index order.
    pub fn iter_refs(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.blacks
            .iter()
            .map(VertexRef::black)
            .chain(self.whites.iter().map(VertexRef::white))
    }

    /// Smallest member under the blacks-then-whites order, for deterministic
    /// tie-breaking.
    pub fn min_ref(&self) -> Option<VertexRef> {
        self.blacks
            .first()
            .map(VertexRef::black)
            .or_else(|| self.whites.first().map(VertexRef::white))
    }

    pub fn to_refs(&self) -> Vec<VertexRef> {
        self.iter_refs().collect()
    }
}

/// Optional display names, aligned with vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub blacks: Vec<String>,
    pub whites: Vec<String>,
}

/// Bipartite graph with bit-vector adjacency addressable from both sides.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    black_adj: Vec<BitSet>, // per black vertex: adjacent whites
    white_adj: Vec<BitSet>, // per white vertex: adjacent blacks
    labels: Option<Labels>,
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BipartiteGraph({}+{}, {} edges)",
            self.n_black(),
            self.n_white(),
            self.edge_count()
        )
    }
}

impl BipartiteGraph {
    pub fn new(n_black: usize, n_white: usize) -> Self {
        BipartiteGraph {
            black_adj: vec![BitSet::new(n_white); n_black],
            white_adj: vec![BitSet::new(n_black); n_white],
            labels: None,
        }
    }

    pub fn from_edges(n_black: usize, n_white: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = BipartiteGraph::new(n_black, n_white);
        for &(b, w) in edges {
            g.add_edge(b, w);
        }
        g
    }

    pub fn n_black(&self) -> usize {
        self.black_adj.len()
    }

    pub fn n_white(&self) -> usize {
        self.white_adj.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_black() + self.n_white()
    }

    pub fn edge_count(&self) -> usize {
        self.black_adj.iter().map(|r| r.count()).sum()
    }

    pub fn add_edge(&mut self, b: usize, w: usize) {
        self.black_adj[b].insert(w);
        self.white_adj[w].insert(b);
    }

    pub fn has_edge(&self, b: usize, w: usize) -> bool {
        self.black_adj[b].contains(w)
    }

    pub fn adjacent(&self, u: VertexRef, v: VertexRef) -> bool {
        match (u.color, v.color) {
            (Color::Black, Color::White) => self.has_edge(u.index, v.index),
            (Color::White, Color::Black) => self.has_edge(v.index, u.index),
            _ => false,
        }
    }

    /// Whites adjacent to black `b`.
    pub fn black_row(&self, b: usize) -> &BitSet {
        &self.black_adj[b]
    }

    /// Blacks adjacent to white `w`.
    pub fn white_row(&self, w: usize) -> &BitSet {
        &self.white_adj[w]
    }

    pub fn degree(&self, v: VertexRef) -> usize {
        match v.color {
            Color::Black => self.black_adj[v.index].count(),
            Color::White => self.white_adj[v.index].count(),
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (b, row) in self.black_adj.iter().enumerate() {
            for w in row.iter() {
                out.push((b, w));
            }
        }
        out
    }

    pub fn set_labels(&mut self, labels: Labels) {
        assert_eq!(labels.blacks.len(), self.n_black());
        assert_eq!(labels.whites.len(), self.n_white());
        self.labels = Some(labels);
    }

    pub fn label(&self, v: VertexRef) -> Option<&str> {
        self.labels.as_ref().map(|l| match v.color {
            Color::Black => l.blacks[v.index].as_str(),
            Color::White => l.whites[v.index].as_str(),
        })
    }

    /// Display name of a vertex: its label when present, otherwise "b3"/"w1".
    pub fn display(&self, v: VertexRef) -> String {
        self.label(v).map(str::to_owned).unwrap_or_else(|| v.to_string())
    }

    /// Same graph with the color classes exchanged.
    pub fn swap_colors(&self) -> BipartiteGraph {
        BipartiteGraph {
            black_adj: self.white_adj.clone(),
            white_adj: self.black_adj.clone(),
            labels: self.labels.as_ref().map(|l| Labels {
                blacks: l.whites.clone(),
                whites: l.blacks.clone(),
            }),
        }
    }

    /// Graph on the same vertices with every black-white pair flipped.
    pub fn bipartite_complement(&self) -> BipartiteGraph {
        BipartiteGraph {
            black_adj: self.black_adj.iter().map(|r| r.negate()).collect(),
            white_adj: self.white_adj.iter().map(|r| r.negate()).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Classes of vertices with identical neighborhoods (necessarily of one
    /// color). Only classes of size >= 2 are returned, blacks before whites,
    /// ordered by smallest member.
    pub fn find_twins(&self) -> Vec<Vec<VertexRef>> {
        let mut out = Vec::new();
        for (color, rows) in [(Color::Black, &self.black_adj), (Color::White, &self.white_adj)] {
            let mut groups: HashMap<&BitSet, Vec<usize>> = HashMap::new();
            for (i, row) in rows.iter().enumerate() {
                groups.entry(row).or_default().push(i);
            }
            let mut classes: Vec<Vec<usize>> =
                groups.into_values().filter(|c| c.len() >= 2).collect();
            classes.sort();
            for class in classes {
                out.push(class.into_iter().map(|i| VertexRef { color, index: i }).collect());
            }
        }
        out
    }

    pub fn is_twin_free(&self) -> bool {
        self.find_twins().is_empty()
    }

    /// Connected components as vertex sets, ordered by smallest member
    /// (blacks before whites). Isolated vertices are singleton components.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.connected_components_within(&VertexSet::full(self))
    }

    /// Components of the subgraph induced by `within`.
    pub fn connected_components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut todo = within.clone();
        let mut out = Vec::new();
        while let Some(start) = todo.min_ref() {
            let mut comp = VertexSet::empty(self);
            comp.insert(start);
            todo.remove(start);
            // frontier expansion, one color per pass
            loop {
                let mut grew = false;
                let mut new_whites = BitSet::new(self.n_white());
                for b in comp.blacks.iter() {
                    new_whites.union_with(&self.black_adj[b]);
                }
                new_whites.intersect_with(&todo.whites);
                if !new_whites.is_empty() {
                    grew = true;
                    todo.whites.subtract(&new_whites);
                    comp.whites.union_with(&new_whites);
                }
                let mut new_blacks = BitSet::new(self.n_black());
                for w in comp.whites.iter() {
                    new_blacks.union_with(&self.white_adj[w]);
                }
                new_blacks.intersect_with(&todo.blacks);
                if !new_blacks.is_empty() {
                    grew = true;
                    todo.blacks.subtract(&new_blacks);
                    comp.blacks.union_with(&new_blacks);
                }
                if !grew {
                    break;
                }
            }
            out.push(comp);
        }
        out
    }

    /// True iff every black-white pair inside `s` is an edge.
    pub fn is_biclique(&self, s: &VertexSet) -> bool {
        s.blacks.iter().all(|b| s.whites.is_subset(&self.black_adj[b]))
    }

    /// Subgraph induced by `s`, plus the mapping from new indices back to the
    /// parent's.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (BipartiteGraph, IndexMap) {
        let blacks: Vec<usize> = s.blacks.iter().collect();
        let whites: Vec<usize> = s.whites.iter().collect();
        let mut white_new_of_old = vec![usize::MAX; self.n_white()];
        for (new, &old) in whites.iter().enumerate() {
            white_new_of_old[old] = new;
        }
        let mut g = BipartiteGraph::new(blacks.len(), whites.len());
        for (new_b, &old_b) in blacks.iter().enumerate() {
            for old_w in self.black_adj[old_b].and(&s.whites).iter() {
                g.add_edge(new_b, white_new_of_old[old_w]);
            }
        }
        if let Some(l) = &self.labels {
            g.set_labels(Labels {
                blacks: blacks.iter().map(|&i| l.blacks[i].clone()).collect(),
                whites: whites.iter().map(|&i| l.whites[i].clone()).collect(),
            });
        }
        (g, IndexMap { blacks, whites })
    }

    /// True iff no vertex has three pairwise "independent" neighbors, which in
    /// a bipartite graph reduces to max degree <= 2: any three neighbors of a
    /// vertex share its opposite color and so already induce a K_{1,3}.
    pub fn is_k13_free(&self) -> bool {
        self.black_adj.iter().all(|r| r.count() <= 2)
            && self.white_adj.iter().all(|r| r.count() <= 2)
    }

    /// Searches for an induced subdivided-claw obstruction: a 6-vertex induced
    /// path v1..v6 plus a pendant vertex q adjacent only to v3. Returns the
    /// witness as [v1, v2, v3, v4, v5, v6, q].
    pub fn find_induced_star123(&self) -> Result<Option<[VertexRef; 7]>> {
        self.find_induced_star123_with_limit(STAR123_DEFAULT_LIMIT)
    }

    pub fn find_induced_star123_with_limit(&self, limit: usize) -> Result<Option<[VertexRef; 7]>> {
        if self.n_vertices() > limit {
            return Err(Error::SizeLimit {
                msg: format!(
                    "obstruction search is exhaustive; graph has {} vertices, limit {}",
                    self.n_vertices(),
                    limit
                ),
            });
        }
        let verts: Vec<VertexRef> = (0..self.n_black())
            .map(VertexRef::black)
            .chain((0..self.n_white()).map(VertexRef::white))
            .collect();
        let nbrs = |v: VertexRef| -> Vec<VertexRef> {
            match v.color {
                Color::Black => self.black_adj[v.index].iter().map(VertexRef::white).collect(),
                Color::White => self.white_adj[v.index].iter().map(VertexRef::black).collect(),
            }
        };
        let adj = |u: VertexRef, v: VertexRef| self.adjacent(u, v);
        for &v3 in &verts {
            let n3 = nbrs(v3);
            if n3.len() < 3 {
                continue;
            }
            for &v2 in &n3 {
                for &v4 in &n3 {
                    if v4 == v2 {
                        continue;
                    }
                    for &q in &n3 {
                        if q == v2 || q == v4 {
                            continue;
                        }
                        for v1 in nbrs(v2) {
                            if v1 == v3 || adj(v1, v4) || adj(v1, q) {
                                continue;
                            }
                            for v5 in nbrs(v4) {
                                if v5 == v3 || v5 == v1 || adj(v5, v2) || adj(v5, q) {
                                    continue;
                                }
                                for v6 in nbrs(v5) {
                                    if v6 == v4 || v6 == v2 || v6 == q {
                                        continue;
                                    }
                                    if adj(v6, v1) || adj(v6, v3) {
                                        continue;
                                    }
                                    return Ok(Some([v1, v2, v3, v4, v5, v6, q]));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

pub const STAR123_DEFAULT_LIMIT: usize = 64;

/// New-index -> old-index mapping produced by `induced_subgraph`.
#[derive(Debug, Clone)]
pub struct IndexMap {
    pub blacks: Vec<usize>,
    pub whites: Vec<usize>,
}

impl IndexMap {
    pub fn to_parent(&self, v: VertexRef) -> VertexRef {
        match v.color {
            Color::Black => VertexRef::black(self.blacks[v.index]),
            Color::White => VertexRef::white(self.whites[v.index]),
        }
    }

    pub fn set_to_parent(&self, g_parent: &BipartiteGraph, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(g_parent);
        for v in s.iter_refs() {
            out.insert(self.to_parent(v));
        }
        out
    }
}

/// Parses the text format:
///
/// ```text
/// # optional comments
/// p bip <n_black> <n_white> <m>
/// e <black> <white>        (1-based, exactly m lines)
/// ```
pub fn parse_graph(input: &str) -> Result<BipartiteGraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut g: Option<BipartiteGraph> = None;
    let mut edges_seen = 0usize;

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::Parse { line: lineno, msg: "duplicate header".into() });
                }
                if fields.len() != 5 || fields[1] != "bip" {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected 'p bip <n_black> <n_white> <m>'".into(),
                    });
                }
                let nums: Vec<usize> = fields[2..]
                    .iter()
                    .map(|f| f.parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse {
                        line: lineno,
                        msg: "header counts must be non-negative integers".into(),
                    })?;
                header = Some((nums[0], nums[1], nums[2]));
                g = Some(BipartiteGraph::new(nums[0], nums[1]));
            }
            "e" => {
                let (nb, nw, m) = header.ok_or(Error::Parse {
                    line: lineno,
                    msg: "edge before header".into(),
                })?;
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected 'e <black> <white>'".into(),
                    });
                }
                let b: usize = fields[1].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad black index '{}'", fields[1]),
                })?;
                let w: usize = fields[2].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad white index '{}'", fields[2]),
                })?;
                if b == 0 || b > nb {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("black index {b} out of range 1..={nb}"),
                    });
                }
                if w == 0 || w > nw {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("white index {w} out of range 1..={nw}"),
                    });
                }
                let graph = g.as_mut().unwrap();
                if graph.has_edge(b - 1, w - 1) {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("duplicate edge e {b} {w}"),
                    });
                }
                graph.add_edge(b - 1, w - 1);
                edges_seen += 1;
                if edges_seen > m {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("more than the declared {m} edges"),
                    });
                }
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown record '{other}'"),
                });
            }
        }
    }

    let (_, _, m) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
    if edges_seen != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("declared {m} edges but found {edges_seen}"),
        });
    }
    Ok(g.unwrap())
}

/// Renders a graph in the same text format `parse_graph` accepts.
pub fn write_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("p bip {} {} {}\n", g.n_black(), g.n_white(), g.edge_count());
    for (b, w) in g.edges() {
        out.push_str(&format!("e {} {}\n", b + 1, w + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{cycle, path, star123};

    #[test]
    fn parse_k2() {
        let g = parse_graph("p bip 1 1 1\ne 1 1\n").unwrap();
        assert_eq!((g.n_black(), g.n_white(), g.edge_count()), (1, 1, 1));
        assert!(g.has_edge(0, 0));
    }

    #[test]
    fn parse_with_comments_and_blanks() {
        let g = parse_graph("# K_{2,2}\n\np bip 2 2 4\ne 1 1\ne 1 2\n# middle\ne 2 1\ne 2 2\n").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.is_biclique(&VertexSet::full(&g)));
    }

    #[test]
    fn parse_rejects_duplicate_edge() {
        let err = parse_graph("p bip 1 2 2\ne 1 1\ne 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn parse_rejects_out_of_range() {
        let err = parse_graph("p bip 1 1 1\ne 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn parse_rejects_missing_header_and_bad_count() {
        assert!(matches!(parse_graph("e 1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("p bip 1 1 2\ne 1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn write_then_parse_round_trip() {
        let g = cycle(8);
        let g2 = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn complement_is_involutive() {
        let g = path(7);
        assert_eq!(g.bipartite_complement().bipartite_complement(), g);
    }

    #[test]
    fn complement_of_c6_is_perfect_matching() {
        // C6 has each black adjacent to 2 of the 3 whites; the complement is
        // the antipodal perfect matching 3*K2.
        let co = cycle(6).bipartite_complement();
        assert_eq!(co.edge_count(), 3);
        for b in 0..3 {
            assert_eq!(co.black_row(b).count(), 1);
        }
        let comps = co.connected_components();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.count() == 2));
    }

    #[test]
    fn twins_in_k22_and_not_in_p7() {
        let k22 = parse_graph("p bip 2 2 4\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n").unwrap();
        let tw = k22.find_twins();
        assert_eq!(tw.len(), 2); // both blacks, both whites
        assert_eq!(tw[0], vec![VertexRef::black(0), VertexRef::black(1)]);
        assert!(path(7).is_twin_free());
    }

    #[test]
    fn twins_among_isolated_vertices() {
        let g = BipartiteGraph::new(3, 0);
        let tw = g.find_twins();
        assert_eq!(tw.len(), 1);
        assert_eq!(tw[0].len(), 3);
    }

    #[test]
    fn components_of_disjoint_paths() {
        // two copies of P5 (3 blacks + 2 whites each), interleaved indices
        let mut g = BipartiteGraph::new(6, 4);
        for (b, w) in [(0, 0), (2, 0), (2, 2), (4, 2)] {
            g.add_edge(b, w);
            g.add_edge(b + 1, w + 1);
        }
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].count(), 5);
        assert!(comps[0].contains(VertexRef::black(0)));
        assert!(comps[1].contains(VertexRef::black(1)));
    }

    #[test]
    fn biclique_checks_on_c8() {
        let g = cycle(8);
        // star around b1: whites w1 and w4
        let s = VertexSet::from_refs(&g, &[VertexRef::black(0), VertexRef::white(0), VertexRef::white(3)]);
        assert!(g.is_biclique(&s));
        let bad = VertexSet::from_refs(&g, &[VertexRef::black(0), VertexRef::white(1)]);
        assert!(!g.is_biclique(&bad));
        // one-sided sets are bicliques vacuously
        let blacks = VertexSet::from_parts(BitSet::full(4), BitSet::new(4));
        assert!(g.is_biclique(&blacks));
        assert!(g.is_biclique(&VertexSet::empty(&g)));
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let g = path(7);
        let mut s = VertexSet::empty(&g);
        for v in [VertexRef::black(1), VertexRef::black(2), VertexRef::white(1)] {
            s.insert(v);
        }
        let (h, map) = g.induced_subgraph(&s);
        assert_eq!((h.n_black(), h.n_white()), (2, 1));
        // b3-w4 and b5-w4 survive: that's blacks 1,2 and white 1 of the path
        assert_eq!(h.edge_count(), 2);
        assert_eq!(map.to_parent(VertexRef::black(0)), VertexRef::black(1));
        assert_eq!(map.to_parent(VertexRef::white(0)), VertexRef::white(1));
    }

    #[test]
    fn k13_detection() {
        assert!(cycle(8).is_k13_free());
        assert!(path(9).is_k13_free());
        let star = parse_graph("p bip 1 3 3\ne 1 1\ne 1 2\ne 1 3\n").unwrap();
        assert!(!star.is_k13_free());
    }

    #[test]
    fn star123_finds_itself() {
        let s = star123();
        let hit = s.find_induced_star123().unwrap().expect("should find the obstruction");
        // verify the witness is genuinely induced with the right edges
        let [v1, v2, v3, v4, v5, v6, q] = hit;
        for (u, v) in [(v1, v2), (v2, v3), (v3, v4), (v4, v5), (v5, v6), (v3, q)] {
            assert!(s.adjacent(u, v));
        }
        for (u, v) in [(v1, v4), (v1, v6), (v1, q), (v3, v6), (v5, q), (v2, v5)] {
            assert!(!s.adjacent(u, v));
        }
    }

    #[test]
    fn star123_absent_in_small_paths_and_cycles() {
        assert_eq!(path(12).find_induced_star123().unwrap(), None);
        assert_eq!(cycle(10).find_induced_star123().unwrap(), None);
    }

    #[test]
    fn star123_size_limit() {
        let g = BipartiteGraph::new(40, 40);
        assert!(matches!(g.find_induced_star123(), Err(Error::SizeLimit { .. })));
        assert!(g.find_induced_star123_with_limit(100).is_ok());
    }

    #[test]
    fn labels_travel_through_induced_subgraphs() {
        let mut g = parse_graph("p bip 2 1 2\ne 1 1\ne 2 1\n").unwrap();
        g.set_labels(Labels {
            blacks: vec!["E".into(), "F".into()],
            whites: vec!["P5".into()],
        });
        assert_eq!(g.display(VertexRef::black(1)), "F");
        let (h, _) = g.induced_subgraph(&VertexSet::from_refs(
            &g,
            &[VertexRef::black(1), VertexRef::white(0)],
        ));
        assert_eq!(h.display(VertexRef::black(0)), "F");
        assert_eq!(BipartiteGraph::new(1, 0).display(VertexRef::black(0)), "b1");
    }

    #[test]
    fn vertex_ref_round_trip() {
        let v: VertexRef = "b3".parse().unwrap();
        assert_eq!(v, VertexRef::black(2));
        assert_eq!(v.to_string(), "b3");
        assert!("x1".parse::<VertexRef>().is_err());
        assert!("b0".parse::<VertexRef>().is_err());
    }
}
