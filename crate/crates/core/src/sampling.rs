//! Random instances for property suites and experiments.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::{Colour, CorrespondenceCover, Error, Graph, ListAssignment, Result};

/// Erdős–Rényi graph: each pair joined independently with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple by construction")
}

/// Random bipartite graph on `a + b` vertices (sides `0..a` and `a..a+b`).
pub fn random_bipartite<R: Rng + ?Sized>(a: usize, b: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(a + b, edges).expect("simple by construction")
}

/// `delta`-regular bipartite graph with sides `0..m` and `m..2m`, the union
/// of `delta` edge-disjoint random perfect matchings. A matching that would
/// repeat an edge is redrawn.
pub fn random_regular_bipartite<R: Rng + ?Sized>(
    m: usize,
    delta: usize,
    rng: &mut R,
) -> Result<Graph> {
    if delta > m {
        return Err(Error::Precondition(format!("degree {delta} exceeds side size {m}")));
    }
    let mut edges = BTreeSet::new();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut added = 0;
    let mut attempts = 0u32;
    while added < delta {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::Internal("could not draw edge-disjoint matchings".into()));
        }
        perm.shuffle(rng);
        if perm.iter().enumerate().any(|(u, &v)| edges.contains(&(u, m + v))) {
            continue;
        }
        edges.extend(perm.iter().enumerate().map(|(u, &v)| (u, m + v)));
        added += 1;
    }
    Graph::new(2 * m, edges)
}

/// `k`-fold cover of `g`: each edge gets a uniformly random perfect matching
/// from which every pair is kept independently with probability `density`.
pub fn random_cover<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    density: f64,
    rng: &mut R,
) -> CorrespondenceCover {
    let mut matchings = BTreeMap::new();
    let mut perm: Vec<usize> = (0..k).collect();
    for &e in g.edges() {
        perm.shuffle(rng);
        let pairs: Vec<(usize, usize)> = perm
            .iter()
            .enumerate()
            .filter(|_| rng.gen_bool(density))
            .map(|(i, &j)| (i, j))
            .collect();
        matchings.insert(e, pairs);
    }
    CorrespondenceCover::new(g.clone(), k, matchings)
}

/// Every vertex gets `k` distinct colours drawn uniformly from
/// `0..palette`.
pub fn random_lists<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    palette: usize,
    rng: &mut R,
) -> ListAssignment {
    assert!(k <= palette);
    let lists = (0..n)
        .map(|_| index::sample(rng, palette, k).into_iter().map(|c| c as Colour).collect())
        .collect();
    ListAssignment::new(lists).expect("distinct by construction")
}

/// `k`-lists on `n` vertices in which every colour lies in at most `k`
/// lists. Each vertex draws from the colours of `0..palette` that still have
/// room, opening fresh colours beyond the palette when fewer than `k`
/// remain.
pub fn random_capped_lists<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    palette: usize,
    rng: &mut R,
) -> ListAssignment {
    let mut uses: Vec<usize> = vec![0; palette];
    let mut lists = Vec::with_capacity(n);
    for _ in 0..n {
        let mut open: Vec<usize> = (0..uses.len()).filter(|&c| uses[c] < k).collect();
        while open.len() < k {
            open.push(uses.len());
            uses.push(0);
        }
        let list: Vec<Colour> = open.choose_multiple(rng, k).map(|&c| c as Colour).collect();
        for &c in &list {
            uses[c as usize] += 1;
        }
        lists.push(list);
    }
    ListAssignment::new(lists).expect("distinct by construction")
}
