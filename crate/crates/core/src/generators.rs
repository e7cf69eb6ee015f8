//! Extremal instances. Colours are 1-based, as in the usual presentation
//! of these examples.

use std::collections::BTreeMap;

use crate::exact::permutations;
use crate::{Colour, CorrespondenceCover, Error, Graph, ListAssignment, Result};

/// The 4-cycle `0-1-2-3` with lists `{1,2}, {1,2}, {1,3}, {2,3}` in cyclic
/// order. It has no packing of size 2.
pub fn gen_c4() -> (Graph, ListAssignment) {
    let lists = vec![vec![1, 2], vec![1, 2], vec![1, 3], vec![2, 3]];
    (Graph::cycle(4), ListAssignment::new(lists).expect("fixed lists"))
}

/// `K_{d, ((2d-1)!)^{d-1}}` with a `(2d-1)`-fold cover. Vertices `0..d` form
/// the small side. Every large-side vertex is joined to vertex 0 by the
/// identity matching and to vertices `1..d` by one of the
/// `((2d-1)!)^{d-1}` combinations of permutations, each used once. Supported
/// for `d <= 2`.
pub fn gen_kab_cover(d: usize) -> Result<CorrespondenceCover> {
    if !(1..=2).contains(&d) {
        return Err(Error::Precondition(format!("gen_kab_cover supports d in 1..=2, got {d}")));
    }
    let k = 2 * d - 1;
    let perms = permutations(k);
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 1..d {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                (0..perms.len()).map(move |p| {
                    let mut c = c.clone();
                    c.push(p);
                    c
                })
            })
            .collect();
    }
    let g = Graph::complete_bipartite(d, combos.len());
    let mut matchings = BTreeMap::new();
    for (t, combo) in combos.iter().enumerate() {
        let b = d + t;
        matchings.insert((0, b), (0..k).map(|s| (s, s)).collect());
        for (a, &p) in combo.iter().enumerate() {
            matchings.insert((a + 1, b), perms[p].iter().copied().enumerate().collect());
        }
    }
    Ok(CorrespondenceCover::new(g, k, matchings))
}

/// Layered shift construction for `d = 2`: a degenerate graph with 3-lists
/// and no packing of size 3.
///
/// Layer 0 is a triangle on vertices `0, 1, 2` with lists `{1,2,3}`. Layer
/// `m + 1` (vertices `3(m+1) + i`) copies layer `m`: its vertex `i` is
/// joined to the vertices `j != i` of layer `m`. The copies carry the lists
/// `{2,3,4}`, `{1,3,4}`, `{1,2,3}` (shifts replacing 1 by 4, 2 by 1, 4 by
/// 2), which forces the packing of layer 3 to be that of layer 0 with
/// colours 1 and 2 exchanged. Vertex 12 has list `{1,2,3}` and is joined to
/// vertex 0 and to its copy 9, which then disagree in every colouring.
pub fn gen_shift_construction(d: usize) -> Result<(Graph, ListAssignment)> {
    if d != 2 {
        return Err(Error::Precondition(format!("gen_shift_construction supports d = 2, got {d}")));
    }
    let layer_lists: [[Colour; 3]; 4] = [[1, 2, 3], [2, 3, 4], [1, 3, 4], [1, 2, 3]];
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    for m in 0..3 {
        for i in 0..3 {
            for j in (0..3).filter(|&j| j != i) {
                edges.push((3 * m + j, 3 * (m + 1) + i));
            }
        }
    }
    let apex = 12;
    edges.push((0, apex));
    edges.push((9, apex));
    let mut lists: Vec<Vec<Colour>> =
        layer_lists.iter().flat_map(|l| std::iter::repeat_n(l.to_vec(), 3)).collect();
    lists.push(vec![1, 2, 3]);
    Ok((Graph::new(13, edges)?, ListAssignment::new(lists)?))
}

/// `K_{b, b^b}`: vertices `0..b` carry the disjoint lists
/// `{1..b}, {b+1..2b}, …`, and the `b^b` remaining vertices carry every
/// transversal of those lists, in lexicographic order. Supported for
/// `1 <= b <= 3`.
pub fn gen_kbb_lists(b: usize) -> Result<(Graph, ListAssignment)> {
    if !(1..=3).contains(&b) {
        return Err(Error::Precondition(format!("gen_kbb_lists supports b in 1..=3, got {b}")));
    }
    let small: Vec<Vec<Colour>> =
        (0..b).map(|j| (1..=b).map(|c| (j * b + c) as Colour).collect()).collect();
    let mut tuples: Vec<Vec<Colour>> = vec![Vec::new()];
    for list in &small {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                list.iter().map(move |&c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    let g = Graph::complete_bipartite(b, tuples.len());
    let mut lists = small;
    lists.extend(tuples);
    Ok((g, ListAssignment::new(lists)?))
}

/// Tops every list up to `new_k` colours with fresh colours
/// `fresh_start, fresh_start + 1, …`, never reusing one. `fresh_start` must
/// exceed every colour in `l`.
pub fn pad_lists(l: &ListAssignment, new_k: usize, fresh_start: Colour) -> ListAssignment {
    assert!(l.palette().last().is_none_or(|&c| c < fresh_start));
    let mut next = fresh_start;
    let lists = l
        .lists()
        .iter()
        .map(|list| {
            let mut list = list.clone();
            while list.len() < new_k {
                list.push(next);
                next += 1;
            }
            list
        })
        .collect();
    ListAssignment::new(lists).expect("fresh colours are distinct")
}
