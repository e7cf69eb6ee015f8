//! Randomized packers.
//!
//! [`pack_fractional`] turns an `(a, b)`-colouring into a list packing by
//! giving every colour a random vector in `[a]^k`. [`pack_bipartite_lll`]
//! orders the `B` side of a bipartite cover at random and resamples around
//! `A` vertices that cannot be completed, in the Moser–Tardos style.
//! Whatever the hypotheses, a returned packing has been validated.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::constructive::smaller_degree_side;
use crate::matrixlab::{one_transversal, BinaryMatrix};
use crate::rng::{self, Rng};
use crate::{
    validate_list_packing, validate_packing, Colour, CorrespondenceCover, Error, Graph,
    ListAssignment, Packing, PackingMode, Result,
};

/// Proper `(a, b)`-colouring: every vertex gets `b` of the values `0..a`,
/// adjacent vertices disjoint sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub a: usize,
    pub b: usize,
    pub assignment: Vec<Vec<usize>>,
}

impl FractionalColoring {
    /// `(2, 1)`-colouring from a bipartition.
    pub fn from_bipartition(g: &Graph) -> Result<Self> {
        let sides = g.bipartition().ok_or(Error::NotBipartite)?;
        Ok(FractionalColoring {
            a: 2,
            b: 1,
            assignment: sides.into_iter().map(|s| vec![s as usize]).collect(),
        })
    }

    /// `(t, 1)`-colouring from a proper colouring with values in `0..t`.
    pub fn from_colouring(t: usize, colours: &[usize]) -> Self {
        FractionalColoring { a: t, b: 1, assignment: colours.iter().map(|&c| vec![c]).collect() }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.assignment.len() != g.n() {
            return Err(Error::SizeMismatch(format!(
                "{} sets for {} vertices",
                self.assignment.len(),
                g.n()
            )));
        }
        for (v, set) in self.assignment.iter().enumerate() {
            let mut s = set.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != self.b || set.len() != self.b || s.iter().any(|&x| x >= self.a) {
                return Err(Error::Precondition(format!(
                    "vertex {v} needs {} distinct values below {}",
                    self.b, self.a
                )));
            }
        }
        for &(u, v) in g.edges() {
            if self.assignment[u].iter().any(|x| self.assignment[v].contains(x)) {
                return Err(Error::Precondition(format!("adjacent vertices {u} and {v} share a value")));
            }
        }
        Ok(())
    }

    fn contains(&self, v: usize, x: usize) -> bool {
        self.assignment[v].contains(&x)
    }
}

/// One sampling round of [`pack_fractional`].
#[derive(Clone, Debug)]
pub struct FractionalRound {
    /// The vector `x_ℓ ∈ [a]^k` of every colour `ℓ`.
    pub x: BTreeMap<Colour, Vec<usize>>,
    /// Decoded packing, if every vertex had a transversal.
    pub packing: Option<Packing>,
}

/// Draws `x_ℓ` for every colour in ascending order, then for each vertex `v`
/// looks for a permutation `σ` with `x_{L(v)[σ(i)]}[i] ∈ fc(v)` for every
/// row `i`, and sets `c_i(v) = L(v)[σ(i)]`. Two neighbours sharing a colour
/// in the same colouring would need the same value in disjoint sets, so the
/// colourings are proper.
pub fn fractional_round(
    g: &Graph,
    lists: &ListAssignment,
    fc: &FractionalColoring,
    rng: &mut Rng,
) -> Result<FractionalRound> {
    let k = lists.require_uniform()?;
    let x: BTreeMap<Colour, Vec<usize>> = lists
        .palette()
        .into_iter()
        .map(|c| (c, (0..k).map(|_| rng.gen_range(0..fc.a)).collect()))
        .collect();
    let mut columns = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let list = lists.list(v);
        let mut m = BinaryMatrix::filled(k, false);
        for (j, c) in list.iter().enumerate() {
            for (i, &val) in x[c].iter().enumerate() {
                m.set(i, j, fc.contains(v, val));
            }
        }
        match one_transversal(&m) {
            Some(sigma) => columns.push(sigma.iter().map(|&j| list[j]).collect::<Vec<_>>()),
            None => return Ok(FractionalRound { x, packing: None }),
        }
    }
    Ok(FractionalRound { x, packing: Some(Packing::from_columns(PackingMode::List, k, &columns)) })
}

/// Outcome of a randomized packer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomizedOutcome {
    pub packing: Option<Packing>,
    /// Rounds drawn ([`pack_fractional`]) or resamplings performed
    /// ([`pack_bipartite_lll`]).
    pub attempts: u64,
    /// The budget the attempts were measured against.
    pub budget: u64,
}

/// Repeats [`fractional_round`] up to `max_rounds` times on one seeded
/// stream and returns the first packing found.
pub fn pack_fractional(
    g: &Graph,
    lists: &ListAssignment,
    fc: &FractionalColoring,
    max_rounds: u64,
    seed: u64,
) -> Result<RandomizedOutcome> {
    fc.validate(g)?;
    if lists.n() != g.n() {
        return Err(Error::SizeMismatch(format!("{} lists for {} vertices", lists.n(), g.n())));
    }
    lists.require_uniform()?;
    let mut rng = rng::seeded(seed);
    for round in 1..=max_rounds {
        if let Some(p) = fractional_round(g, lists, fc, &mut rng)?.packing {
            validate_list_packing(g, lists, &p)
                .map_err(|e| Error::Internal(format!("decoded packing is invalid: {e}")))?;
            return Ok(RandomizedOutcome { packing: Some(p), attempts: round, budget: max_rounds });
        }
    }
    Ok(RandomizedOutcome { packing: None, attempts: max_rounds, budget: max_rounds })
}

/// Default resampling budget: ten per `A` vertex.
pub fn default_resample_budget(in_a: &[bool]) -> u64 {
    10 * in_a.iter().filter(|&&a| a).count() as u64
}

/// [`pack_bipartite_lll_with_sides`] with `A` chosen per component as the
/// side of smaller maximum degree.
pub fn pack_bipartite_lll(
    cover: &CorrespondenceCover,
    max_resamples: Option<u64>,
    seed: u64,
) -> Result<RandomizedOutcome> {
    let in_a = smaller_degree_side(cover.graph())?;
    pack_bipartite_lll_with_sides(cover, &in_a, max_resamples, seed)
}

/// Every `b ∈ B` gets a uniformly random ordering of its slots
/// (`c_i(b)` is the `i`-th slot). For `a ∈ A`, `M(a)[i][s] = 1` when slot
/// `s` of `a` is matched to `c_i(b)` for some neighbour `b`; `a` is bad when
/// `M(a)` has no 0-transversal. While a bad vertex exists, the orderings of
/// all neighbours of the lowest-id bad vertex are redrawn. Once none is bad,
/// each `a` takes `c_i(a) = σ(i)` for its 0-transversal `σ`. `None` means
/// the budget (default [`default_resample_budget`]) ran out.
pub fn pack_bipartite_lll_with_sides(
    cover: &CorrespondenceCover,
    in_a: &[bool],
    max_resamples: Option<u64>,
    seed: u64,
) -> Result<RandomizedOutcome> {
    cover.require_valid()?;
    let g = cover.graph();
    let (n, k) = (g.n(), cover.k());
    if in_a.len() != n {
        return Err(Error::SizeMismatch(format!("{} side flags for {n} vertices", in_a.len())));
    }
    if g.edges().iter().any(|&(u, v)| in_a[u] == in_a[v]) {
        return Err(Error::NotBipartite);
    }
    let budget = max_resamples.unwrap_or_else(|| default_resample_budget(in_a));
    let mut rng = rng::seeded(seed);
    let mut order: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in (0..n).filter(|&v| !in_a[v]) {
        order[b] = (0..k).collect();
        order[b].shuffle(&mut rng);
    }
    let free_cells = |a: usize, order: &[Vec<usize>]| {
        let mut m = BinaryMatrix::filled(k, true);
        for s in 0..k {
            for (b, t) in cover.conflicts_of(a, s) {
                // slot t of b conflicts with slot s of a
                if let Some(i) = order[b].iter().position(|&x| x == t) {
                    m.set(i, s, false);
                }
            }
        }
        m
    };
    let mut resamples = 0u64;
    loop {
        // free_cells is the complement of M(a): its 1-transversals are the
        // 0-transversals of M(a)
        let bad = (0..n).filter(|&a| in_a[a]).find(|&a| one_transversal(&free_cells(a, &order)).is_none());
        let Some(a) = bad else { break };
        if resamples == budget {
            return Ok(RandomizedOutcome { packing: None, attempts: resamples, budget });
        }
        for &b in g.neighbours(a) {
            order[b].shuffle(&mut rng);
        }
        resamples += 1;
    }
    let mut columns: Vec<Vec<Colour>> = vec![Vec::new(); n];
    for v in 0..n {
        let col = if in_a[v] {
            one_transversal(&free_cells(v, &order)).expect("no bad vertex remains")
        } else {
            order[v].clone()
        };
        columns[v] = col.into_iter().map(|s| s as Colour).collect();
    }
    let p = Packing::from_columns(PackingMode::Cover, k, &columns);
    validate_packing(cover, &p)
        .map_err(|e| Error::Internal(format!("resampled packing is invalid: {e}")))?;
    Ok(RandomizedOutcome { packing: Some(p), attempts: resamples, budget })
}
