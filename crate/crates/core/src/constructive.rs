//! Packers that always succeed under their hypotheses.
//!
//! * [`pack_degenerate`]: greedy along a degeneracy order, `k >= 2d`.
//! * [`pack_complete`]: complete graphs whose colours each lie in at most
//!   `k` lists.
//! * [`pack_bipartite_ordered`]: bipartite graphs with `k >= Δ_A + 1`.
//! * [`pack_augment`]: maximum-degree bound `k >= 1 + Δ + χ_c`.

use std::collections::{BTreeMap, BTreeSet};

use crate::exact::{find_independent_transversal, Budget};
use crate::graph::degeneracy_order;
use crate::matching::{max_matching, perfect_matching};
use crate::{
    Colour, CorrespondenceCover, Error, Graph, ListAssignment, Packing, PackingMode,
    PartialPacking, Result,
};

/// Extends a packing one vertex at a time along a degeneracy order. At each
/// vertex the slots are matched to the colourings by a perfect matching
/// in which slot `s` may serve colouring `i` unless an earlier neighbour's
/// colouring-`i` slot is matched to `s`. With `k >= 2d` every slot serves at
/// least `d` colourings and every colouring has at least `d` usable slots,
/// which is enough for Hall's condition.
pub fn pack_degenerate(cover: &CorrespondenceCover) -> Result<Packing> {
    cover.require_valid()?;
    let (order, d) = degeneracy_order(cover.graph());
    let k = cover.k();
    if k < 2 * d {
        return Err(Error::Precondition(format!("k={k} is below 2*degeneracy={}", 2 * d)));
    }
    let n = cover.n();
    let mut columns: Vec<Option<Vec<usize>>> = vec![None; n];
    for &v in &order {
        // adjacency: colouring i -> usable slots, ascending
        let mut usable = vec![vec![true; k]; k];
        for s in 0..k {
            for (w, t) in cover.conflicts_of(v, s) {
                if let Some(col) = &columns[w] {
                    for (i, &ws) in col.iter().enumerate() {
                        if ws == t {
                            usable[i][s] = false;
                        }
                    }
                }
            }
        }
        let adj: Vec<Vec<usize>> = usable
            .iter()
            .map(|row| (0..k).filter(|&s| row[s]).collect())
            .collect();
        let col = perfect_matching(&adj, k).ok_or_else(|| {
            Error::Internal(format!("no perfect matching at vertex {v} despite k >= 2d"))
        })?;
        columns[v] = Some(col);
    }
    let cols: Vec<Vec<Colour>> = columns
        .into_iter()
        .map(|c| c.unwrap().into_iter().map(|s| s as Colour).collect())
        .collect();
    Ok(Packing::from_columns(PackingMode::Cover, k, &cols))
}

/// Per-stage statistics of [`pack_complete_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteStage {
    /// List size at the start of the stage.
    pub list_size: usize,
    /// Colours lying in exactly `list_size` lists.
    pub rich: usize,
    /// Reassignments `c(f(r)) = r` performed.
    pub swaps: usize,
}

/// Packing of `K_n` under lists in which every colour lies in at most `k`
/// lists. See [`pack_complete_traced`].
pub fn pack_complete(lists: &ListAssignment, k: usize) -> Result<Packing> {
    pack_complete_traced(lists, k).map(|(p, _)| p)
}

/// Peels off one proper colouring per stage. Each stage takes a system of
/// distinct representatives of the current lists, then makes sure every
/// rich colour (one lying in as many lists as the current list size) is
/// used: with an injection `f` from rich colours to vertices listing them,
/// any unused rich colour `r` is written to `f(r)`, repeatedly, in
/// ascending colour order. The used colour is then removed from each list,
/// which leaves every colour in at most `k - 1` lists.
pub fn pack_complete_traced(
    lists: &ListAssignment,
    k: usize,
) -> Result<(Packing, Vec<CompleteStage>)> {
    let n = lists.n();
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if lists.require_uniform()? != k {
        return Err(Error::Precondition(format!("lists must have size k={k}")));
    }
    if let Some((c, m)) = lists.multiplicities().into_iter().find(|&(_, m)| m > k) {
        return Err(Error::Precondition(format!("colour {c} lies in {m} > k lists")));
    }
    let mut current: Vec<Vec<Colour>> = lists.lists().to_vec();
    let mut colourings = Vec::with_capacity(k);
    let mut stages = Vec::with_capacity(k);
    for size in (1..=k).rev() {
        let (colouring, stage) = rich_covering_colouring(&current, size)?;
        for (v, list) in current.iter_mut().enumerate() {
            list.retain(|&c| c != colouring[v]);
        }
        colourings.push(colouring);
        stages.push(stage);
    }
    Ok((Packing { mode: PackingMode::List, colourings }, stages))
}

/// One stage of [`pack_complete_traced`]: a proper colouring of `K_n` from
/// `lists` using every colour that lies in exactly `size` lists.
fn rich_covering_colouring(
    lists: &[Vec<Colour>],
    size: usize,
) -> Result<(Vec<Colour>, CompleteStage)> {
    let n = lists.len();
    let mut mult: BTreeMap<Colour, usize> = BTreeMap::new();
    for list in lists {
        for &c in list {
            *mult.entry(c).or_insert(0) += 1;
        }
    }
    let palette: Vec<Colour> = mult.keys().copied().collect();
    let index: BTreeMap<Colour, usize> = palette.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    // system of distinct representatives: vertices -> colours
    let adj: Vec<Vec<usize>> =
        lists.iter().map(|l| l.iter().map(|c| index[c]).collect()).collect();
    let sdr = max_matching(&adj, palette.len());
    let mut colouring: Vec<Colour> = sdr
        .into_iter()
        .map(|m| m.map(|i| palette[i]))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("Hall's condition failed for the lists of K_n".into()))?;

    // injection f: rich colours -> vertices whose list contains them
    let rich: Vec<Colour> = mult.iter().filter(|&(_, &m)| m == size).map(|(&c, _)| c).collect();
    let rich_adj: Vec<Vec<usize>> = rich
        .iter()
        .map(|r| (0..n).filter(|&v| lists[v].binary_search(r).is_ok()).collect())
        .collect();
    let f: Vec<usize> = max_matching(&rich_adj, n)
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("no injection from rich colours to vertices".into()))?;

    let mut swaps = 0;
    let mut passes = 0;
    loop {
        let used: BTreeSet<Colour> = colouring.iter().copied().collect();
        let unused: Vec<usize> = (0..rich.len()).filter(|&i| !used.contains(&rich[i])).collect();
        if unused.is_empty() {
            break;
        }
        passes += 1;
        if passes > rich.len() {
            return Err(Error::Internal("rich-colour reassignment did not settle".into()));
        }
        for i in unused {
            // an earlier reassignment in this pass may already have used it
            if !colouring.contains(&rich[i]) {
                colouring[f[i]] = rich[i];
                swaps += 1;
            }
        }
    }
    Ok((colouring, CompleteStage { list_size: size, rich: rich.len(), swaps }))
}

/// Packs a bipartite graph with `k`-lists when `k >= Δ_A + 1`, where in
/// each connected component `A` is the side with the smaller maximum degree
/// (the lower-id side on ties). Every `b ∈ B` takes its list in increasing
/// order (`c_i(b)` is the `i`-th smallest colour); each `a ∈ A` is then
/// extended on its own by a matching from its colours to the colourings that
/// can accept them.
pub fn pack_bipartite_ordered(g: &Graph, lists: &ListAssignment) -> Result<Packing> {
    if lists.n() != g.n() {
        return Err(Error::SizeMismatch(format!("{} lists for {} vertices", lists.n(), g.n())));
    }
    let k = lists.require_uniform()?;
    let in_a = smaller_degree_side(g)?;
    let delta_a = (0..g.n()).filter(|&v| in_a[v]).map(|v| g.degree(v)).max().unwrap_or(0);
    if k < delta_a + 1 {
        return Err(Error::Precondition(format!("k={k} is below Δ_A + 1 = {}", delta_a + 1)));
    }
    pack_bipartite_ordered_with_sides(g, lists, &in_a)
}

/// [`pack_bipartite_ordered`] with the `A` side given explicitly
/// (`in_a[v]`). Every edge must join `A` to `B`.
pub fn pack_bipartite_ordered_with_sides(
    g: &Graph,
    lists: &ListAssignment,
    in_a: &[bool],
) -> Result<Packing> {
    let k = lists.require_uniform()?;
    if g.edges().iter().any(|&(u, v)| in_a[u] == in_a[v]) {
        return Err(Error::NotBipartite);
    }
    let n = g.n();
    let mut columns: Vec<Vec<Colour>> = vec![Vec::new(); n];
    for b in (0..n).filter(|&v| !in_a[v]) {
        columns[b] = lists.list(b).to_vec();
    }
    for a in (0..n).filter(|&v| in_a[v]) {
        // colour slot j -> colourings i where no neighbour b has c_i(b) = colour
        let adj: Vec<Vec<usize>> = lists
            .list(a)
            .iter()
            .map(|&c| {
                (0..k).filter(|&i| g.neighbours(a).iter().all(|&b| columns[b][i] != c)).collect()
            })
            .collect();
        let m = perfect_matching(&adj, k).ok_or_else(|| {
            Error::Precondition(format!("vertex {a} cannot be extended (Hall's condition fails)"))
        })?;
        let mut col = vec![0; k];
        for (j, &i) in m.iter().enumerate() {
            col[i] = lists.list(a)[j];
        }
        columns[a] = col;
    }
    Ok(Packing::from_columns(PackingMode::List, k, &columns))
}

/// Per component, marks as `A` the side with the smaller maximum degree.
pub fn smaller_degree_side(g: &Graph) -> Result<Vec<bool>> {
    let sides = g.bipartition().ok_or(Error::NotBipartite)?;
    let mut in_a = vec![false; g.n()];
    for comp in g.components() {
        let max_deg = |side: bool| {
            comp.iter().filter(|&&v| sides[v] == side).map(|&v| g.degree(v)).max().unwrap_or(0)
        };
        let a_side = max_deg(true) < max_deg(false);
        for &v in &comp {
            in_a[v] = sides[v] == a_side;
        }
    }
    Ok(in_a)
}

/// Per-round record of [`pack_augment_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentRound {
    /// Vertex and slot coloured this round.
    pub target: (usize, usize),
    /// The colouring index that was missing at the target vertex.
    pub red: usize,
    /// Number of assigned entries after the round.
    pub assigned: usize,
}

/// Packing for `k >= 1 + Δ + chi_c_bound`, where `chi_c_bound` bounds the
/// correspondence chromatic number from above. See [`pack_augment_traced`].
pub fn pack_augment(cover: &CorrespondenceCover, chi_c_bound: usize) -> Result<Packing> {
    pack_augment_traced(cover, chi_c_bound, &mut Budget::new(crate::DEFAULT_BUDGET))
        .map(|(p, _)| p)
}

/// Grows a partial packing one augmentation at a time. Each round picks the
/// lexicographically first unassigned `(vertex, slot)` cell `x` and the
/// smallest colouring index ("red") missing at that vertex. For every other
/// vertex the candidate slots are those whose colouring could be handed to
/// that vertex's red slot without a conflict, minus the slot matched to `x`.
/// An independent transversal of the candidates (one exists when each set
/// has at least `chi_c_bound` slots) becomes the new red class, with `x` as
/// its representative at the target vertex; each displaced red slot takes
/// the old colouring of its replacement.
pub fn pack_augment_traced(
    cover: &CorrespondenceCover,
    chi_c_bound: usize,
    budget: &mut Budget,
) -> Result<(Packing, Vec<AugmentRound>)> {
    cover.require_valid()?;
    let (n, k) = (cover.n(), cover.k());
    let delta = cover.graph().max_degree();
    if k < 1 + delta + chi_c_bound {
        return Err(Error::Precondition(format!(
            "k={k} is below 1 + Δ + chi_c_bound = {}",
            1 + delta + chi_c_bound
        )));
    }
    // colour[v][s]: colouring index owning slot s of v
    let mut colour: Vec<Vec<Option<usize>>> = vec![vec![None; k]; n];
    let mut rounds = Vec::new();
    let all_slots: Vec<usize> = (0..k).collect();
    loop {
        let target = (0..n).flat_map(|v| (0..k).map(move |s| (v, s))).find(|&(v, s)| colour[v][s].is_none());
        let Some((v1, x)) = target else { break };
        let red = (0..k)
            .find(|i| !colour[v1].contains(&Some(*i)))
            .ok_or_else(|| Error::Internal("a part with an empty cell uses every colouring".into()))?;
        let red_slot: Vec<Option<usize>> =
            (0..n).map(|v| colour[v].iter().position(|&c| c == Some(red))).collect();

        let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
        for v in 0..n {
            if v == v1 {
                candidates.push(all_slots.clone());
                continue;
            }
            let blocked: BTreeSet<usize> = match red_slot[v] {
                Some(r) => cover.conflicts_of(v, r).filter_map(|(w, t)| colour[w][t]).collect(),
                None => BTreeSet::new(),
            };
            let near_x = cover.conflict(v1, x, v);
            let set: Vec<usize> = (0..k)
                .filter(|&s| colour[v][s].is_none_or(|c| !blocked.contains(&c)))
                .filter(|&s| Some(s) != near_x)
                .collect();
            if set.len() < chi_c_bound {
                return Err(Error::Internal(format!(
                    "candidate set at vertex {v} has {} < {chi_c_bound} slots",
                    set.len()
                )));
            }
            candidates.push(set);
        }
        let mut transversal = find_independent_transversal(cover, &candidates, budget)?
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "no independent transversal: chi_c_bound={chi_c_bound} is too small"
                ))
            })?;
        transversal[v1] = x;

        let before = colour.iter().flatten().filter(|c| c.is_some()).count();
        for v in 0..n {
            let t = transversal[v];
            match red_slot[v] {
                Some(r) if r != t => {
                    colour[v][r] = colour[v][t];
                    colour[v][t] = Some(red);
                }
                Some(_) => {}
                None => colour[v][t] = Some(red),
            }
        }
        let assigned = colour.iter().flatten().filter(|c| c.is_some()).count();
        if assigned <= before {
            return Err(Error::Internal("augmentation did not grow the packing".into()));
        }
        rounds.push(AugmentRound { target: (v1, x), red, assigned });
        if rounds.len() > n * k {
            return Err(Error::Internal("more augmentation rounds than cells".into()));
        }
    }
    let mut partial = PartialPacking::unassigned(k, n);
    for v in 0..n {
        for s in 0..k {
            if let Some(i) = colour[v][s] {
                partial.colourings[i][v] = Some(s as Colour);
            }
        }
    }
    let packing = partial
        .complete()
        .ok_or_else(|| Error::Internal("augmentation finished with gaps".into()))?;
    Ok((packing, rounds))
}
