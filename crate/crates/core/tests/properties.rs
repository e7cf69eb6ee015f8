use std::collections::BTreeMap;

use num::BigRational;
use proptest::prelude::*;

use listpack::constructive::{
    pack_augment, pack_bipartite_ordered, pack_complete_traced, pack_degenerate,
};
use listpack::exact::{find_list_packing, find_packing, permutations, Budget};
use listpack::io::{self, Instance};
use listpack::matrixlab::{
    one_transversal, permanent, sample_sum_of_permutations, zero_permanent_prob_exact,
    zero_transversal, BinaryMatrix, CountMatrix,
};
use listpack::packing::{cover_packing_to_list, list_packing_to_cover};
use listpack::probabilistic::{
    fractional_round, pack_bipartite_lll, pack_bipartite_lll_with_sides, pack_fractional,
    FractionalColoring,
};
use listpack::rng::{seeded, substream};
use listpack::sampling::{random_capped_lists, random_cover, random_lists};
use listpack::{
    degeneracy_order, list_to_cover, validate_list_packing, validate_packing, Colour,
    CorrespondenceCover, Graph, ListAssignment, Packing, PackingMode,
};

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u32>()).prop_map(|(n, m)| graph_from_mask(n, m))
}

fn budget() -> Budget {
    Budget::new(listpack::DEFAULT_BUDGET)
}

/// Every assignment of a permutation column to each vertex, checked
/// against the matchings directly.
fn brute_force_packs(cover: &CorrespondenceCover) -> bool {
    let (n, k) = (cover.n(), cover.k());
    let perms = permutations(k);
    let mut idx = vec![0usize; n];
    loop {
        let ok = cover.graph().edges().iter().all(|&(u, v)| {
            let pairs = cover.matching(u, v);
            (0..k).all(|i| !pairs.contains(&(perms[idx[u]][i], perms[idx[v]][i])))
        });
        if ok {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < perms.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn naive_valid(cover: &CorrespondenceCover, p: &Packing) -> bool {
    let (n, k) = (cover.n(), cover.k());
    if p.mode != PackingMode::Cover || p.k() != k || p.colourings.iter().any(|c| c.len() != n) {
        return false;
    }
    for v in 0..n {
        let mut col: Vec<Colour> = p.column(v);
        if col.iter().any(|&s| s as usize >= k) {
            return false;
        }
        col.sort_unstable();
        col.dedup();
        if col.len() != k {
            return false;
        }
    }
    cover.graph().edges().iter().all(|&(u, v)| {
        let pairs = cover.matching(u, v);
        p.colourings.iter().all(|c| !pairs.contains(&(c[u] as usize, c[v] as usize)))
    })
}

fn brute_degeneracy(g: &Graph) -> usize {
    let n = g.n();
    (1u32..1 << n)
        .map(|set| {
            (0..n)
                .filter(|&v| set >> v & 1 == 1)
                .map(|v| g.neighbours(v).iter().filter(|&&w| set >> w & 1 == 1).count())
                .min()
                .unwrap()
        })
        .max()
        .unwrap_or(0)
}

fn brute_permanent(a: &BinaryMatrix) -> u128 {
    permutations(a.k())
        .iter()
        .filter(|s| s.iter().enumerate().all(|(i, &j)| a.get(i, j)))
        .count() as u128
}

fn without_edge(cover: &CorrespondenceCover, e: (usize, usize)) -> CorrespondenceCover {
    let g = cover.graph().spanning_subgraph(|u, v| (u, v) != e);
    let matchings: BTreeMap<_, _> =
        cover.matchings().iter().filter(|(&key, _)| key != e).map(|(&k, m)| (k, m.clone())).collect();
    CorrespondenceCover::new(g, cover.k(), matchings)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_search_agrees_with_brute_force(g in small_graph(4), k in 1usize..=3, seed: u64, density in 0.0f64..=1.0) {
        let cover = random_cover(&g, k, density, &mut seeded(seed));
        let found = find_packing(&cover, &mut budget()).unwrap();
        prop_assert_eq!(found.is_some(), brute_force_packs(&cover));
        if let Some(p) = found {
            prop_assert!(naive_valid(&cover, &p));
        }
    }

    #[test]
    fn validator_agrees_with_naive_check(g in small_graph(5), k in 1usize..=3, seed: u64, raw in prop::collection::vec(0u32..4, 15)) {
        let cover = random_cover(&g, k, 0.7, &mut seeded(seed));
        let n = g.n();
        let colourings: Vec<Vec<Colour>> =
            (0..k).map(|i| (0..n).map(|v| raw[(i * n + v) % raw.len()] % (k as u32 + 1)).collect()).collect();
        let p = Packing { mode: PackingMode::Cover, colourings };
        prop_assert_eq!(validate_packing(&cover, &p).is_ok(), naive_valid(&cover, &p));
    }

    #[test]
    fn list_and_cover_packings_correspond(g in small_graph(5), k in 1usize..=3, palette in 3usize..=6, seed: u64) {
        let lists = random_lists(g.n(), k, palette, &mut seeded(seed));
        let cover = list_to_cover(&g, &lists).unwrap();
        let via_cover = find_packing(&cover, &mut budget()).unwrap();
        let via_lists = find_list_packing(&g, &lists, &mut budget()).unwrap();
        prop_assert_eq!(via_cover.is_some(), via_lists.is_some());
        if let Some(p) = via_cover {
            let as_list = cover_packing_to_list(&lists, &p).unwrap();
            prop_assert!(validate_list_packing(&g, &lists, &as_list).is_ok());
            let back = list_packing_to_cover(&lists, &as_list).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert!(validate_packing(&cover, &back).is_ok());
        }
    }

    #[test]
    fn colour_renaming_preserves_packability(g in small_graph(5), k in 1usize..=3, seed: u64, shift in 1u32..100) {
        let lists = random_lists(g.n(), k, 5, &mut seeded(seed));
        let renamed = lists.relabel(|c| (4 - c) * 7 + shift).unwrap();
        let a = find_list_packing(&g, &lists, &mut budget()).unwrap();
        let b = find_list_packing(&g, &renamed, &mut budget()).unwrap();
        prop_assert_eq!(a.is_some(), b.is_some());
    }

    #[test]
    fn deleting_an_edge_keeps_packings(g in small_graph(4), k in 1usize..=3, seed: u64, pick: usize) {
        prop_assume!(!g.edges().is_empty());
        let cover = random_cover(&g, k, 1.0, &mut seeded(seed));
        let e = g.edges()[pick % g.edges().len()];
        let smaller = without_edge(&cover, e);
        if let Some(p) = find_packing(&cover, &mut budget()).unwrap() {
            prop_assert!(validate_packing(&smaller, &p).is_ok());
            prop_assert!(find_packing(&smaller, &mut budget()).unwrap().is_some());
        }
    }

    #[test]
    fn degeneracy_matches_brute_force(g in small_graph(8)) {
        let (order, d) = degeneracy_order(&g);
        prop_assert_eq!(d, brute_degeneracy(&g));
        let mut sorted = order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..g.n()).collect::<Vec<_>>());
        // every vertex has at most d neighbours earlier in the order
        let mut pos = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for v in 0..g.n() {
            prop_assert!(g.neighbours(v).iter().filter(|&&w| pos[w] < pos[v]).count() <= d);
        }
    }

    #[test]
    fn degenerate_packer_succeeds_at_twice_degeneracy(g in small_graph(7), seed: u64, extra in 0usize..2) {
        let k = (2 * degeneracy_order(&g).1).max(1) + extra;
        let cover = random_cover(&g, k, 1.0, &mut seeded(seed));
        let p = pack_degenerate(&cover).unwrap();
        prop_assert!(naive_valid(&cover, &p));
    }

    #[test]
    fn augment_packer_output_is_valid(g in small_graph(5), seed: u64) {
        let delta = g.max_degree();
        let bound = delta + 1;
        let cover = random_cover(&g, 1 + delta + bound, 1.0, &mut seeded(seed));
        let p = pack_augment(&cover, bound).unwrap();
        prop_assert!(naive_valid(&cover, &p));
    }

    #[test]
    fn bipartite_packer_agrees_with_exact(a in 1usize..=3, b in 1usize..=3, mask: u32, seed: u64) {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                if mask >> (i * 3 + j) & 1 == 1 {
                    edges.push((i, a + j));
                }
            }
        }
        let g = Graph::new(a + b, edges).unwrap();
        let k = 1 + g.max_degree().min(2);
        let lists = random_lists(g.n(), k, k + 2, &mut seeded(seed));
        if let Ok(p) = pack_bipartite_ordered(&g, &lists) {
            prop_assert!(validate_list_packing(&g, &lists, &p).is_ok());
            prop_assert!(find_list_packing(&g, &lists, &mut budget()).unwrap().is_some());
        }
    }

    #[test]
    fn complete_packer_uses_one_stage_per_colouring(n in 1usize..=7, k_raw: usize, seed: u64) {
        let k = 1 + k_raw % n;
        let lists = random_capped_lists(n, k, n + 2, &mut seeded(seed));
        let (p, stages) = pack_complete_traced(&lists, k).unwrap();
        prop_assert_eq!(stages.len(), k);
        prop_assert!(validate_list_packing(&Graph::complete(n), &lists, &p).is_ok());
    }

    #[test]
    fn permanent_matches_brute_force(k in 0usize..=4, mask: u64) {
        let a = BinaryMatrix::from_mask(k, mask & ((1u64 << (k * k)) - 1));
        prop_assert_eq!(permanent(&a).unwrap(), brute_permanent(&a));
        prop_assert_eq!(one_transversal(&a).is_some(), brute_permanent(&a) > 0);
        if let Some(s) = one_transversal(&a) {
            prop_assert!(s.iter().enumerate().all(|(i, &j)| a.get(i, j)));
        }
    }

    #[test]
    fn zero_transversal_is_a_zero_permutation(k in 1usize..=4, cells in prop::collection::vec(0u32..3, 16)) {
        let rows: Vec<Vec<u32>> = (0..k).map(|i| cells[i * k..i * k + k].to_vec()).collect();
        let m = CountMatrix::from_rows(&rows).unwrap();
        let brute = permutations(k).into_iter().any(|s| s.iter().enumerate().all(|(i, &j)| m.get(i, j) == 0));
        let found = zero_transversal(&m);
        prop_assert_eq!(found.is_some(), brute);
        if let Some(s) = found {
            prop_assert!(s.iter().enumerate().all(|(i, &j)| m.get(i, j) == 0));
        }
    }

    #[test]
    fn permutation_sums_have_constant_margins(n in 1usize..20, k in 1usize..8, seed: u64) {
        let m = sample_sum_of_permutations(n, k, seed);
        prop_assert!(m.row_sums().iter().all(|&s| s as usize == n));
        prop_assert!(m.col_sums().iter().all(|&s| s as usize == n));
    }

    #[test]
    fn exact_probability_is_monotone_in_p(k in 1usize..=3, a in 0u32..=20, b in 0u32..=20) {
        let (lo, hi) = (a.min(b), a.max(b));
        let p = |x: u32| BigRational::new(x.into(), 20.into());
        let f_lo = zero_permanent_prob_exact(k, &p(lo)).unwrap();
        let f_hi = zero_permanent_prob_exact(k, &p(hi)).unwrap();
        prop_assert!(f_lo <= f_hi);
    }

    #[test]
    fn fractional_rounds_decode_consistently(n in 2usize..=8, k in 1usize..=4, seed: u64) {
        let n = n & !1;
        let g = Graph::cycle(n.max(4));
        let lists = random_lists(g.n(), k, k + 3, &mut seeded(seed));
        let fc = FractionalColoring::from_bipartition(&g).unwrap();
        let round = fractional_round(&g, &lists, &fc, &mut seeded(seed ^ 1)).unwrap();
        if let Some(p) = round.packing {
            prop_assert!(validate_list_packing(&g, &lists, &p).is_ok());
            for v in 0..g.n() {
                for (i, c) in p.colourings.iter().enumerate() {
                    prop_assert!(fc.assignment[v].contains(&round.x[&c[v]][i]));
                }
            }
        }
    }

    #[test]
    fn randomized_packers_are_deterministic(seed: u64) {
        let g = Graph::cycle(6);
        let lists = random_lists(6, 4, 6, &mut seeded(seed));
        let fc = FractionalColoring::from_bipartition(&g).unwrap();
        prop_assert_eq!(
            pack_fractional(&g, &lists, &fc, 20, seed).unwrap(),
            pack_fractional(&g, &lists, &fc, 20, seed).unwrap()
        );
        let cover = random_cover(&g, 4, 1.0, &mut seeded(seed));
        let first = pack_bipartite_lll(&cover, None, seed).unwrap();
        prop_assert_eq!(&first, &pack_bipartite_lll(&cover, None, seed).unwrap());
        if let Some(p) = first.packing {
            prop_assert!(naive_valid(&cover, &p));
        }
    }

    #[test]
    fn instances_round_trip_through_json(g in small_graph(6), k in 1usize..=3, seed: u64, list: bool) {
        let inst = if list {
            Instance::List { lists: random_lists(g.n(), k, 5, &mut seeded(seed)), graph: g }
        } else {
            Instance::Cover(random_cover(&g, k, 0.6, &mut seeded(seed)))
        };
        prop_assert_eq!(io::parse_instance(&io::instance_to_json(&inst)).unwrap(), inst.clone());
        let cover = inst.to_cover().unwrap();
        if let Ok(p) = pack_degenerate(&cover) {
            prop_assert_eq!(io::parse_packing(&io::packing_to_json(&p)).unwrap(), p);
        }
    }
}

#[test]
fn lll_orderings_on_b_are_uniform() {
    // empty matchings never trigger a resampling, so the B column is the
    // initial uniform ordering
    let g = Graph::new(2, [(0, 1)]).unwrap();
    let cover = CorrespondenceCover::empty(g, 3);
    let perms = permutations(3);
    let mut counts = vec![0u64; perms.len()];
    let runs = 10_000u64;
    for seed in 0..runs {
        let out = pack_bipartite_lll_with_sides(&cover, &[true, false], None, seed).unwrap();
        assert_eq!(out.attempts, 0);
        let col: Vec<usize> = out.packing.unwrap().column(1).iter().map(|&s| s as usize).collect();
        counts[perms.iter().position(|p| *p == col).unwrap()] += 1;
    }
    let expected = runs as f64 / perms.len() as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 5 degrees of freedom, 0.1% upper quantile
    assert!(chi2 < 20.515, "chi-squared {chi2} for counts {counts:?}");
}

#[test]
fn substreams_do_not_depend_on_order() {
    use rand::Rng as _;
    let forward: Vec<u64> = (0..8).map(|t| substream(3, t).gen()).collect();
    let backward: Vec<u64> = (0..8).rev().map(|t| substream(3, t).gen()).collect();
    assert_eq!(forward, backward.into_iter().rev().collect::<Vec<_>>());
}

#[test]
fn random_capped_lists_respect_the_cap() {
    for seed in 0..50 {
        let lists: ListAssignment = random_capped_lists(9, 3, 5, &mut seeded(seed));
        assert!(lists.multiplicities().values().all(|&m| m <= 3));
    }
}
