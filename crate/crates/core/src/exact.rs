//! Exhaustive deciders: packing existence, independent transversals, and
//! the packing numbers of tiny graphs by enumeration.
//!
//! Every search is bounded by an explicit node budget. Running out of budget
//! is reported as [`Error::BudgetExceeded`], never as "no solution".

use std::collections::BTreeMap;

use crate::graph::degeneracy_order;
use crate::matching::perfect_matching;
use crate::{
    list_to_cover, Colour, CorrespondenceCover, Error, Graph, ListAssignment, Packing,
    PackingMode, Result,
};

/// Node counter shared by a search (and by all sub-searches of a decider).
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Result of a packing-number decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<W> {
    /// An instance with no packing: the packing number exceeds `k`.
    Witness(W),
    /// Every enumerated instance packs; `checked` instances were solved.
    AllPack { checked: u64 },
}

impl<W> Decision<W> {
    pub fn is_all_pack(&self) -> bool {
        matches!(self, Decision::AllPack { .. })
    }
}

/// Slots of `v` usable by each colouring given the columns fixed so far:
/// `allowed[i][s]` is false when an assigned neighbour uses, in colouring
/// `i`, the slot matched to `s`.
fn allowed_slots(
    cover: &CorrespondenceCover,
    v: usize,
    columns: &[Option<Vec<usize>>],
) -> Vec<Vec<bool>> {
    let k = cover.k();
    let mut allowed = vec![vec![true; k]; k];
    for s in 0..k {
        for (w, t) in cover.conflicts_of(v, s) {
            if let Some(col) = &columns[w] {
                for i in 0..k {
                    if col[i] == t {
                        allowed[i][s] = false;
                    }
                }
            }
        }
    }
    allowed
}

fn to_adjacency(allowed: &[Vec<bool>], used: &[bool], from: usize) -> Vec<Vec<usize>> {
    allowed[from..]
        .iter()
        .map(|row| {
            row.iter().enumerate().filter(|&(s, &ok)| ok && !used[s]).map(|(s, _)| s).collect()
        })
        .collect()
}

fn has_perfect(allowed: &[Vec<bool>], used: &[bool], from: usize) -> bool {
    let adj = to_adjacency(allowed, used, from);
    let remaining_slots: Vec<usize> = (0..used.len()).filter(|&s| !used[s]).collect();
    // relabel slots to 0..remaining
    let mut index = vec![usize::MAX; used.len()];
    for (i, &s) in remaining_slots.iter().enumerate() {
        index[s] = i;
    }
    let adj: Vec<Vec<usize>> =
        adj.into_iter().map(|row| row.into_iter().map(|s| index[s]).collect()).collect();
    perfect_matching(&adj, remaining_slots.len()).is_some()
}

/// All columns (colouring → slot bijections) compatible with `allowed`, in
/// lexicographic order. Branches that cannot be completed are cut by the
/// Hall condition before they are entered.
fn valid_columns(allowed: &[Vec<bool>], budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    let k = allowed.len();
    let mut out = Vec::new();
    let mut used = vec![false; k];
    let mut col = Vec::with_capacity(k);
    if !has_perfect(allowed, &used, 0) {
        return Ok(out);
    }
    fn rec(
        i: usize,
        allowed: &[Vec<bool>],
        used: &mut Vec<bool>,
        col: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &mut Budget,
    ) -> Result<()> {
        let k = allowed.len();
        if i == k {
            out.push(col.clone());
            return Ok(());
        }
        for s in 0..k {
            if used[s] || !allowed[i][s] {
                continue;
            }
            budget.tick()?;
            used[s] = true;
            if has_perfect(allowed, used, i + 1) {
                col.push(s);
                rec(i + 1, allowed, used, col, out, budget)?;
                col.pop();
            }
            used[s] = false;
        }
        Ok(())
    }
    rec(0, allowed, &mut used, &mut col, &mut out, budget)?;
    Ok(out)
}

struct PackingSearch<'a> {
    cover: &'a CorrespondenceCover,
    order: Vec<usize>,
    columns: Vec<Option<Vec<usize>>>,
}

impl<'a> PackingSearch<'a> {
    /// Search order for one component: its degeneracy order.
    fn new(cover: &'a CorrespondenceCover, component: &[usize]) -> Self {
        let sub = cover.graph().induced(component);
        let (order, _) = degeneracy_order(&sub);
        let order = order.into_iter().map(|i| component[i]).collect();
        PackingSearch { cover, order, columns: vec![None; cover.n()] }
    }

    /// Visits every packing of the component whose first vertex carries the
    /// identity column. `visit` returns true to stop the search.
    fn run(
        &mut self,
        idx: usize,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[Option<Vec<usize>>]) -> bool,
    ) -> Result<bool> {
        if idx == self.order.len() {
            return Ok(visit(&self.columns));
        }
        let v = self.order[idx];
        let k = self.cover.k();
        let candidates = if idx == 0 {
            budget.tick()?;
            vec![(0..k).collect()]
        } else {
            valid_columns(&allowed_slots(self.cover, v, &self.columns), budget)?
        };
        for col in candidates {
            self.columns[v] = Some(col);
            if self.forward_ok(v) && self.run(idx + 1, budget, visit)? {
                return Ok(true);
            }
        }
        self.columns[v] = None;
        Ok(false)
    }

    /// Every unassigned neighbour of `v` can still receive a column.
    fn forward_ok(&self, v: usize) -> bool {
        let k = self.cover.k();
        self.cover.graph().neighbours(v).iter().all(|&u| {
            self.columns[u].is_some()
                || has_perfect(&allowed_slots(self.cover, u, &self.columns), &vec![false; k], 0)
        })
    }
}

fn columns_to_packing(k: usize, columns: &[Vec<usize>]) -> Packing {
    let cols: Vec<Vec<Colour>> =
        columns.iter().map(|c| c.iter().map(|&s| s as Colour).collect()).collect();
    Packing::from_columns(PackingMode::Cover, k, &cols)
}

/// Complete search for a `k`-fold packing of a cover. Vertices are visited
/// in degeneracy order per connected component and branch on whole columns
/// (which slot every colouring takes at the vertex). Colourings are
/// interchangeable, so the first vertex of each component is fixed to the
/// identity column.
pub fn find_packing(cover: &CorrespondenceCover, budget: &mut Budget) -> Result<Option<Packing>> {
    cover.require_valid()?;
    let k = cover.k();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); cover.n()];
    for component in cover.graph().components() {
        let mut search = PackingSearch::new(cover, &component);
        let mut found = None;
        search.run(0, budget, &mut |cols| {
            found = Some(cols.to_vec());
            true
        })?;
        let Some(found) = found else { return Ok(None) };
        for &v in &component {
            columns[v] = found[v].clone().expect("complete assignment");
        }
    }
    Ok(Some(columns_to_packing(k, &columns)))
}

/// Number of packings counted up to renaming the colourings inside each
/// connected component (equivalently, the number of ordered packings divided
/// by `(k!)^components`).
pub fn count_packings(cover: &CorrespondenceCover, budget: &mut Budget) -> Result<u128> {
    cover.require_valid()?;
    let mut total: u128 = 1;
    for component in cover.graph().components() {
        let mut search = PackingSearch::new(cover, &component);
        let mut count: u128 = 0;
        search.run(0, budget, &mut |_| {
            count += 1;
            false
        })?;
        total *= count;
    }
    Ok(total)
}

/// Convenience wrapper: list packing of `(g, l)` via its list-cover, with
/// entries translated back to colours.
pub fn find_list_packing(
    g: &Graph,
    l: &ListAssignment,
    budget: &mut Budget,
) -> Result<Option<Packing>> {
    let cover = list_to_cover(g, l)?;
    match find_packing(&cover, budget)? {
        Some(p) => Ok(Some(crate::packing::cover_packing_to_list(l, &p)?)),
        None => Ok(None),
    }
}

/// Searches for one slot per vertex, drawn from `allowed[v]`, such that no
/// two chosen slots are matched across an edge. Branches on the vertex with
/// the fewest remaining candidates (lowest id on ties), trying slots in
/// ascending order.
pub fn find_independent_transversal(
    cover: &CorrespondenceCover,
    allowed: &[Vec<usize>],
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>> {
    cover.require_valid()?;
    let (n, k) = (cover.n(), cover.k());
    if allowed.len() != n {
        return Err(Error::SizeMismatch(format!("{} slot sets for {n} vertices", allowed.len())));
    }
    let mut domains: Vec<Vec<bool>> = vec![vec![false; k]; n];
    for (v, set) in allowed.iter().enumerate() {
        for &s in set {
            if s >= k {
                return Err(Error::SizeMismatch(format!("slot {s} at vertex {v} is >= k={k}")));
            }
            domains[v][s] = true;
        }
    }
    let mut choice: Vec<Option<usize>> = vec![None; n];
    if it_search(cover, &mut domains, &mut choice, budget)? {
        Ok(Some(choice.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

fn it_search(
    cover: &CorrespondenceCover,
    domains: &mut [Vec<bool>],
    choice: &mut [Option<usize>],
    budget: &mut Budget,
) -> Result<bool> {
    let next = (0..choice.len())
        .filter(|&v| choice[v].is_none())
        .min_by_key(|&v| domains[v].iter().filter(|&&b| b).count());
    let Some(v) = next else { return Ok(true) };
    for s in 0..cover.k() {
        if !domains[v][s] {
            continue;
        }
        budget.tick()?;
        choice[v] = Some(s);
        let mut removed = Vec::new();
        let mut wiped = false;
        for (w, t) in cover.conflicts_of(v, s) {
            if choice[w].is_none() && domains[w][t] {
                domains[w][t] = false;
                removed.push((w, t));
                if !domains[w].iter().any(|&b| b) {
                    wiped = true;
                }
            }
        }
        if !wiped && it_search(cover, domains, choice, budget)? {
            return Ok(true);
        }
        for (w, t) in removed {
            domains[w][t] = true;
        }
        choice[v] = None;
    }
    Ok(false)
}

/// Calls `visit` on every canonical `k`-list-assignment of an `n`-vertex
/// graph: colours are named by first appearance in vertex-then-slot scan
/// order, so vertex `v` uses some already-seen colours plus the next unused
/// identifiers. Every assignment is equivalent under colour renaming to at
/// least one visited assignment, and all colours lie in `0..n*k`.
pub fn for_each_canonical_assignment(
    n: usize,
    k: usize,
    visit: &mut dyn FnMut(&[Vec<Colour>]) -> Result<bool>,
) -> Result<bool> {
    fn rec(
        v: usize,
        n: usize,
        k: usize,
        used: usize,
        lists: &mut Vec<Vec<Colour>>,
        visit: &mut dyn FnMut(&[Vec<Colour>]) -> Result<bool>,
    ) -> Result<bool> {
        if v == n {
            return visit(lists);
        }
        for fresh in (0..=k).rev() {
            let old = k - fresh;
            if old > used {
                continue;
            }
            for subset in combinations(used, old) {
                let mut list: Vec<Colour> = subset.iter().map(|&c| c as Colour).collect();
                list.extend((used..used + fresh).map(|c| c as Colour));
                lists.push(list);
                let stop = rec(v + 1, n, k, used + fresh, lists, visit)?;
                lists.pop();
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    rec(0, n, k, 0, &mut Vec::with_capacity(n), visit)
}

/// All `r`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < r - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Decides whether every `k`-list-assignment of `g` admits a packing of
/// size `k`, by solving every canonical assignment. Returns the first
/// assignment without a packing, if any.
pub fn decide_chi_star_list(
    g: &Graph,
    k: usize,
    budget: &mut Budget,
) -> Result<Decision<ListAssignment>> {
    let mut checked = 0u64;
    let mut witness = None;
    for_each_canonical_assignment(g.n(), k, &mut |lists| {
        budget.tick()?;
        let l = ListAssignment::new(lists.to_vec())?;
        let cover = list_to_cover(g, &l)?;
        checked += 1;
        if find_packing(&cover, budget)?.is_none() {
            witness = Some(l);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(match witness {
        Some(w) => Decision::Witness(w),
        None => Decision::AllPack { checked },
    })
}

/// Decides whether every `k`-fold cover of `g` with perfect matchings on
/// all edges admits a packing. Slots of each vertex may be renamed freely,
/// so the edges of a spanning forest are fixed to the identity matching and
/// the remaining edges range over all `k!` permutations. Covers with partial
/// matchings are not enumerated, so `AllPack` certifies only the
/// perfect-matching class.
pub fn decide_chi_star_corr(
    g: &Graph,
    k: usize,
    budget: &mut Budget,
) -> Result<Decision<CorrespondenceCover>> {
    let forest = spanning_forest(g);
    let free: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|e| !forest.contains(e)).collect();
    let perms = permutations(k);
    let space = (perms.len() as u128).checked_pow(free.len() as u32);
    if space.is_none_or(|s| s > budget.limit as u128) {
        return Err(Error::BudgetExceeded { budget: budget.limit });
    }
    let identity: Vec<(usize, usize)> = (0..k).map(|s| (s, s)).collect();
    let mut odometer = vec![0usize; free.len()];
    let mut checked = 0u64;
    loop {
        budget.tick()?;
        let mut matchings: BTreeMap<(usize, usize), Vec<(usize, usize)>> =
            forest.iter().map(|&e| (e, identity.clone())).collect();
        for (e, &p) in free.iter().zip(&odometer) {
            matchings.insert(*e, perms[p].iter().enumerate().map(|(i, &j)| (i, j)).collect());
        }
        let cover = CorrespondenceCover::new(g.clone(), k, matchings);
        checked += 1;
        if find_packing(&cover, budget)?.is_none() {
            return Ok(Decision::Witness(cover));
        }
        // advance
        let mut pos = 0;
        loop {
            if pos == odometer.len() {
                return Ok(Decision::AllPack { checked });
            }
            odometer[pos] += 1;
            if odometer[pos] < perms.len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

fn spanning_forest(g: &Graph) -> Vec<(usize, usize)> {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let nx = p[x];
            p[x] = r;
            x = nx;
        }
        r
    }
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            out.push((u, v));
        }
    }
    out
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
