use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Graph, ListAssignment, Result};

/// Slot pairs `(i, j)` of one oriented edge `u < v`: slot `i` of `u`
/// conflicts with slot `j` of `v`.
pub type EdgeMatching = Vec<(usize, usize)>;

/// First broken invariant of a correspondence cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A matching is keyed by a pair that is not an edge of the graph.
    NotAnEdge { u: usize, v: usize },
    /// A matching key is not oriented low-to-high.
    BadOrientation { u: usize, v: usize },
    /// A slot index is `>= k`.
    SlotOutOfRange { u: usize, v: usize, pair: (usize, usize) },
    /// The matching is not injective: `vertex` (an endpoint of the edge)
    /// has `slot` matched more than once.
    RepeatedSlot { u: usize, v: usize, vertex: usize, slot: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NotAnEdge { u, v } => write!(f, "matching given for non-edge {u}-{v}"),
            Violation::BadOrientation { u, v } => {
                write!(f, "matching key {u}-{v} must be written low-high")
            }
            Violation::SlotOutOfRange { u, v, pair } => {
                write!(f, "edge {u}-{v}: pair ({},{}) has a slot outside 0..k", pair.0, pair.1)
            }
            Violation::RepeatedSlot { u, v, vertex, slot } => {
                write!(f, "edge {u}-{v}: slot {slot} of vertex {vertex} is matched twice")
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Link {
    to: usize,
    /// `map[s]` is the slot of `to` conflicting with slot `s` of the owner.
    map: Vec<Option<usize>>,
}

/// A `k`-fold correspondence cover: every vertex has slots `0..k`, and every
/// edge carries a partial injection between the slots of its endpoints.
/// Edges absent from the matching map carry the empty matching.
#[derive(Clone, Debug)]
pub struct CorrespondenceCover {
    graph: Graph,
    k: usize,
    matchings: BTreeMap<(usize, usize), EdgeMatching>,
    links: Vec<Vec<Link>>,
}

impl PartialEq for CorrespondenceCover {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.k == other.k && self.matchings == other.matchings
    }
}

impl Eq for CorrespondenceCover {}

impl CorrespondenceCover {
    /// Stores the matchings as given. Nothing is checked here; call
    /// [`validate`](Self::validate) (the packers do so themselves).
    pub fn new(graph: Graph, k: usize, matchings: BTreeMap<(usize, usize), EdgeMatching>) -> Self {
        let mut matchings = matchings;
        for m in matchings.values_mut() {
            m.sort_unstable();
        }
        let mut links: Vec<Vec<Link>> = (0..graph.n())
            .map(|u| {
                graph
                    .neighbours(u)
                    .iter()
                    .map(|&to| Link { to, map: vec![None; k] })
                    .collect()
            })
            .collect();
        for (&(u, v), pairs) in &matchings {
            if u >= v || !graph.has_edge(u, v) {
                continue;
            }
            let iu = graph.neighbours(u).binary_search(&v).unwrap();
            let iv = graph.neighbours(v).binary_search(&u).unwrap();
            for &(i, j) in pairs {
                if i < k && j < k {
                    links[u][iu].map[i] = Some(j);
                    links[v][iv].map[j] = Some(i);
                }
            }
        }
        CorrespondenceCover { graph, k, matchings, links }
    }

    /// Every edge carries the identity matching `(s, s)`.
    pub fn identity(graph: Graph, k: usize) -> Self {
        let matchings = graph
            .edges()
            .iter()
            .map(|&e| (e, (0..k).map(|s| (s, s)).collect()))
            .collect();
        CorrespondenceCover::new(graph, k, matchings)
    }

    /// No conflicts at all.
    pub fn empty(graph: Graph, k: usize) -> Self {
        CorrespondenceCover::new(graph, k, BTreeMap::new())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matchings(&self) -> &BTreeMap<(usize, usize), EdgeMatching> {
        &self.matchings
    }

    /// Matching of edge `uv` oriented from `u` to `v` (pairs are
    /// `(slot of u, slot of v)`), empty for edges without one.
    pub fn matching(&self, u: usize, v: usize) -> EdgeMatching {
        if u < v {
            self.matchings.get(&(u, v)).cloned().unwrap_or_default()
        } else {
            let mut m: EdgeMatching = self
                .matchings
                .get(&(v, u))
                .map(|m| m.iter().map(|&(i, j)| (j, i)).collect())
                .unwrap_or_default();
            m.sort_unstable();
            m
        }
    }

    /// Slot of neighbour `v` that conflicts with slot `s` of `u`.
    pub fn conflict(&self, u: usize, s: usize, v: usize) -> Option<usize> {
        let i = self.graph.neighbours(u).binary_search(&v).ok()?;
        self.links[u][i].map[s]
    }

    /// For every neighbour `w` of `u` with a slot conflicting with slot `s`
    /// of `u`, yields `(w, slot of w)`.
    pub fn conflicts_of(&self, u: usize, s: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.links[u].iter().filter_map(move |l| l.map[s].map(|t| (l.to, t)))
    }

    /// Checks every cover invariant and reports the first violation.
    pub fn validate(&self) -> Result<(), Violation> {
        for (&(u, v), pairs) in &self.matchings {
            if u >= v {
                return Err(Violation::BadOrientation { u, v });
            }
            if !self.graph.has_edge(u, v) {
                return Err(Violation::NotAnEdge { u, v });
            }
            let mut used_u = vec![false; self.k];
            let mut used_v = vec![false; self.k];
            for &(i, j) in pairs {
                if i >= self.k || j >= self.k {
                    return Err(Violation::SlotOutOfRange { u, v, pair: (i, j) });
                }
                if std::mem::replace(&mut used_u[i], true) {
                    return Err(Violation::RepeatedSlot { u, v, vertex: u, slot: i });
                }
                if std::mem::replace(&mut used_v[j], true) {
                    return Err(Violation::RepeatedSlot { u, v, vertex: v, slot: j });
                }
            }
        }
        Ok(())
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidCover)
    }
}

/// Validates a cover; see [`CorrespondenceCover::validate`].
pub fn validate_cover(cover: &CorrespondenceCover) -> Result<(), Violation> {
    cover.validate()
}

/// List-cover of a `k`-list-assignment: slot `i` of `u` conflicts with slot
/// `j` of `v` exactly when the `i`-th colour of `u` equals the `j`-th colour
/// of `v`.
pub fn list_to_cover(g: &Graph, l: &ListAssignment) -> Result<CorrespondenceCover> {
    if l.n() != g.n() {
        return Err(Error::SizeMismatch(format!(
            "{} lists for a graph on {} vertices",
            l.n(),
            g.n()
        )));
    }
    let k = l.require_uniform()?;
    let mut matchings = BTreeMap::new();
    for &(u, v) in g.edges() {
        let (a, b) = (l.list(u), l.list(v));
        let (mut i, mut j) = (0, 0);
        let mut pairs = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    pairs.push((i, j));
                    i += 1;
                    j += 1;
                }
            }
        }
        matchings.insert((u, v), pairs);
    }
    Ok(CorrespondenceCover::new(g.clone(), k, matchings))
}
