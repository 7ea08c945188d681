//! Size-pair sets and the operators the dynamic programming is built from.
//!
//! A `Bisize` (b, w) records the number of black and white vertices of a
//! biclique. The maxbisize set of a graph keeps only the Pareto-maximal
//! pairs under coordinatewise domination; observing that an antichain of
//! pairs bounded by (k1, k2) has at most min(k1, k2) + 1 elements is what
//! keeps every combine step cheap.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bisize {
    pub black: usize,
    pub white: usize,
}

pub fn bs(black: usize, white: usize) -> Bisize {
    Bisize { black, white }
}

impl Bisize {
    pub fn new(black: usize, white: usize) -> Self {
        Bisize { black, white }
    }

    /// Coordinatewise <=; strict domination additionally requires inequality.
    pub fn dominated_by(&self, other: &Bisize) -> bool {
        self.black <= other.black && self.white <= other.white
    }

    pub fn strictly_dominated_by(&self, other: &Bisize) -> bool {
        self.dominated_by(other) && self != other
    }

    pub fn plus(&self, other: &Bisize) -> Bisize {
        bs(self.black + other.black, self.white + other.white)
    }

    pub fn total(&self) -> usize {
        self.black + self.white
    }
}

impl fmt::Display for Bisize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.black, self.white)
    }
}

impl Serialize for Bisize {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.black, self.white).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bisize {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <Vec<usize>>::deserialize(d)?;
        if v.len() != 2 {
            return Err(D::Error::custom("bisize must be a [b, w] pair"));
        }
        Ok(bs(v[0], v[1]))
    }
}

/// Pareto frontier of bisizes: sorted by black strictly ascending, hence
/// white strictly descending.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MaxbisizeSet {
    items: Vec<Bisize>,
}

impl MaxbisizeSet {
    pub fn empty() -> Self {
        MaxbisizeSet { items: Vec::new() }
    }

    pub fn singleton(e: Bisize) -> Self {
        MaxbisizeSet { items: vec![e] }
    }

    /// Caller promises the antichain/sort invariant already holds.
    pub(crate) fn from_sorted(items: Vec<Bisize>) -> Self {
        debug_assert!(items
            .windows(2)
            .all(|p| p[0].black < p[1].black && p[0].white > p[1].white));
        MaxbisizeSet { items }
    }

    pub fn items(&self) -> &[Bisize] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, e: Bisize) -> bool {
        self.items
            .binary_search_by_key(&e.black, |x| x.black)
            .map_or(false, |i| self.items[i] == e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bisize> {
        self.items.iter()
    }

    /// Componentwise maximum over the set; (0,0) when empty. A valid dom
    /// bound for any recombination of this set's elements.
    pub fn corner(&self) -> Bisize {
        bs(
            self.items.last().map_or(0, |e| e.black),
            self.items.first().map_or(0, |e| e.white),
        )
    }
}

impl fmt::Debug for MaxbisizeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<(usize, usize)> for MaxbisizeSet {
    /// Test convenience; asserts the antichain invariant.
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let items: Vec<Bisize> = iter.into_iter().map(|(b, w)| bs(b, w)).collect();
        assert!(items
            .windows(2)
            .all(|p| p[0].black < p[1].black && p[0].white > p[1].white));
        MaxbisizeSet { items }
    }
}

/// Indices into `items` of the elements surviving domination, ordered by
/// black ascending. Duplicates collapse onto the earliest index.
///
/// Array-based: bucket by the scarcer coordinate, then one monotone sweep.
/// O(|items| + min(k1, k2)).
pub fn dom_indices(items: &[Bisize], bound: Bisize) -> Result<Vec<usize>> {
    for e in items {
        if e.black > bound.black || e.white > bound.white {
            return Err(Error::BoundViolated(e.black, e.white, bound.black, bound.white));
        }
    }
    let mut out = Vec::new();
    if bound.black <= bound.white {
        let mut best: Vec<Option<(usize, usize)>> = vec![None; bound.black + 1];
        for (i, e) in items.iter().enumerate() {
            let slot = &mut best[e.black];
            if slot.map_or(true, |(w, _)| e.white > w) {
                *slot = Some((e.white, i));
            }
        }
        let mut top_w: Option<usize> = None;
        for b in (0..=bound.black).rev() {
            if let Some((w, i)) = best[b] {
                if top_w.map_or(true, |t| w > t) {
                    out.push(i);
                    top_w = Some(w);
                }
            }
        }
        out.reverse();
    } else {
        let mut best: Vec<Option<(usize, usize)>> = vec![None; bound.white + 1];
        for (i, e) in items.iter().enumerate() {
            let slot = &mut best[e.white];
            if slot.map_or(true, |(b, _)| e.black > b) {
                *slot = Some((e.black, i));
            }
        }
        let mut top_b: Option<usize> = None;
        for w in (0..=bound.white).rev() {
            if let Some((b, i)) = best[w] {
                if top_b.map_or(true, |t| b > t) {
                    out.push(i);
                    top_b = Some(b);
                }
            }
        }
        // white descending is black ascending already
    }
    Ok(out)
}

/// Pareto filter: keeps the elements of `items` not strictly dominated by
/// another, as a sorted antichain.
pub fn dom(items: &[Bisize], bound: Bisize) -> Result<MaxbisizeSet> {
    let idx = dom_indices(items, bound)?;
    Ok(MaxbisizeSet::from_sorted(idx.into_iter().map(|i| items[i]).collect()))
}

/// All pairwise sums, filtered. An empty side acts as the identity.
pub fn oplus(x: &MaxbisizeSet, y: &MaxbisizeSet, bound: Bisize) -> Result<MaxbisizeSet> {
    if x.is_empty() {
        return Ok(y.clone());
    }
    if y.is_empty() {
        return Ok(x.clone());
    }
    let mut sums = Vec::with_capacity(x.len() * y.len());
    for a in x.iter() {
        for b in y.iter() {
            sums.push(a.plus(b));
        }
    }
    dom(&sums, bound)
}

/// Adds z to every white coordinate. The antichain shape is unaffected.
pub fn shift_w(x: &MaxbisizeSet, z: usize) -> MaxbisizeSet {
    MaxbisizeSet::from_sorted(x.iter().map(|e| bs(e.black, e.white + z)).collect())
}

/// Adds z to every black coordinate.
pub fn shift_b(x: &MaxbisizeSet, z: usize) -> MaxbisizeSet {
    MaxbisizeSet::from_sorted(x.iter().map(|e| bs(e.black + z, e.white)).collect())
}

/// Disjoint-union rule: the children's sets plus the union's two one-sided
/// bicliques.
pub fn combine_parallel(
    dx: &MaxbisizeSet,
    dy: &MaxbisizeSet,
    n_black: usize,
    n_white: usize,
) -> Result<MaxbisizeSet> {
    let mut cand: Vec<Bisize> = Vec::with_capacity(dx.len() + dy.len() + 2);
    cand.extend(dx.iter().copied());
    cand.extend(dy.iter().copied());
    cand.push(bs(0, n_white));
    cand.push(bs(n_black, 0));
    dom(&cand, bs(n_black, n_white))
}

/// Complete-join rule: every biclique of the union splits as one biclique
/// per side, so the set is the filtered sumset.
pub fn combine_series(dx: &MaxbisizeSet, dy: &MaxbisizeSet, bound: Bisize) -> Result<MaxbisizeSet> {
    oplus(dx, dy, bound)
}

/// One-directional join rule for X left-adjacent to Y: a biclique either
/// takes some biclique of X together with all w_y whites of Y, or some
/// biclique of Y together with all b_x blacks of X.
pub fn combine_ks(
    dx: &MaxbisizeSet,
    dy: &MaxbisizeSet,
    w_y: usize,
    b_x: usize,
    bound: Bisize,
) -> Result<MaxbisizeSet> {
    let mut cand: Vec<Bisize> = Vec::with_capacity(dx.len() + dy.len());
    cand.extend(shift_w(dx, w_y).iter().copied());
    cand.extend(shift_b(dy, b_x).iter().copied());
    dom(&cand, bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    VertexMax,
    EdgeMax,
    Balanced,
    NontrivialVertexMax,
}

impl Objective {
    pub const ALL: [Objective; 4] = [
        Objective::VertexMax,
        Objective::EdgeMax,
        Objective::Balanced,
        Objective::NontrivialVertexMax,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Objective::VertexMax => "vertex_max",
            Objective::EdgeMax => "edge_max",
            Objective::Balanced => "balanced",
            Objective::NontrivialVertexMax => "nontrivial_vertex_max",
        }
    }
}

/// Best objective value over the set together with the element achieving it.
/// Ties prefer the larger black coordinate.
pub fn reduce_objective(d: &MaxbisizeSet, objective: Objective) -> Result<(usize, Bisize)> {
    if d.is_empty() {
        return Err(Error::PreconditionViolated("objective over an empty set".into()));
    }
    let value = |e: &Bisize| -> Option<usize> {
        match objective {
            Objective::VertexMax => Some(e.black + e.white),
            Objective::EdgeMax => Some(e.black * e.white),
            Objective::Balanced => Some(e.black.min(e.white)),
            Objective::NontrivialVertexMax => {
                (e.black >= 1 && e.white >= 1).then(|| e.black + e.white)
            }
        }
    };
    let mut best: Option<(usize, Bisize)> = None;
    // elements come black-ascending, so >= keeps the larger black on ties
    for e in d.iter() {
        if let Some(v) = value(e) {
            if best.map_or(true, |(bv, _)| v >= bv) {
                best = Some((v, *e));
            }
        }
    }
    best.ok_or(Error::NoNontrivialBiclique)
}
