use std::collections::{BTreeSet, VecDeque};

use crate::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints. Edges may be given in either orientation.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({},{})", e.0, e.1)));
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    /// Cycle on `n >= 3` vertices in the order `0, 1, …, n-1`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// `K_{a,b}` with the `a` side on vertices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges).expect("complete bipartite graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Subgraph on the same vertex set keeping only the edges for which
    /// `keep` returns true.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let edges: Vec<_> = self.edges.iter().copied().filter(|&(u, v)| keep(u, v)).collect();
        Graph::new(self.n, edges).expect("subgraph of a simple graph is simple")
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(vertices.len(), edges.collect::<Vec<_>>()).expect("induced subgraph is simple")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Proper 2-colouring (`false`/`true` per vertex), or `None` if the graph
    /// has an odd cycle. The smallest vertex of each component gets `false`.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }
}

/// Degeneracy ordering by repeated removal of a minimum-degree vertex
/// (lowest id on ties). Returns the order in which every vertex has at most
/// `d` neighbours before it, together with the degeneracy `d`.
pub fn degeneracy_order(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n.max(1)];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removal = Vec::with_capacity(n);
    let mut d = 0;
    let mut low: usize = 0;
    for _ in 0..n {
        low = low.saturating_sub(1);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = *buckets[low].iter().next().unwrap();
        buckets[low].remove(&v);
        removed[v] = true;
        d = d.max(low);
        removal.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
    }
    removal.reverse();
    (removal, d)
}
