//! Maximum bipartite matching by augmenting paths.
//!
//! Left vertices are tried in increasing order. Each first takes its first
//! free candidate, in the order given, and only then looks for an
//! augmenting path, so with sorted adjacency the lowest free right vertex
//! wins ties.

/// Maximum matching between left vertices `0..adj.len()` and right vertices
/// `0..n_right`. Returns `left_to_right`.
pub fn max_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut right_to_left = vec![None; n_right];
    let mut seen = vec![false; n_right];
    for u in 0..adj.len() {
        seen.iter_mut().for_each(|s| *s = false);
        augment(u, adj, &mut seen, &mut right_to_left);
    }
    let mut left_to_right = vec![None; adj.len()];
    for (r, l) in right_to_left.iter().enumerate() {
        if let Some(l) = *l {
            left_to_right[l] = Some(r);
        }
    }
    left_to_right
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    right_to_left: &mut [Option<usize>],
) -> bool {
    if let Some(&r) = adj[u].iter().find(|&&r| right_to_left[r].is_none()) {
        right_to_left[r] = Some(u);
        return true;
    }
    for &r in &adj[u] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if right_to_left[r].is_none_or(|w| augment(w, adj, seen, right_to_left)) {
            right_to_left[r] = Some(u);
            return true;
        }
    }
    false
}

/// Perfect matching when `|left| == n_right` and one exists.
pub fn perfect_matching(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    if adj.len() != n_right {
        return None;
    }
    max_matching(adj, n_right).into_iter().collect()
}

/// Given a maximum matching that leaves some left vertex unmatched, returns
/// a Hall violator `(T, N(T))` with `|N(T)| = |T| - 1`: the left vertices
/// and right vertices reachable by alternating paths from the first
/// unmatched left vertex. Both sets are sorted.
pub fn hall_violator(
    adj: &[Vec<usize>],
    n_right: usize,
    left_to_right: &[Option<usize>],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let start = left_to_right.iter().position(Option::is_none)?;
    let mut right_to_left = vec![None; n_right];
    for (l, r) in left_to_right.iter().enumerate() {
        if let Some(r) = *r {
            right_to_left[r] = Some(l);
        }
    }
    let mut left_seen = vec![false; adj.len()];
    let mut right_seen = vec![false; n_right];
    let mut stack = vec![start];
    left_seen[start] = true;
    while let Some(u) = stack.pop() {
        for &r in &adj[u] {
            if right_seen[r] {
                continue;
            }
            right_seen[r] = true;
            // maximality: every reachable right vertex is matched
            let w = right_to_left[r].expect("augmenting path in a maximum matching");
            if !left_seen[w] {
                left_seen[w] = true;
                stack.push(w);
            }
        }
    }
    let t = (0..adj.len()).filter(|&l| left_seen[l]).collect();
    let nt = (0..n_right).filter(|&r| right_seen[r]).collect();
    Some((t, nt))
}
