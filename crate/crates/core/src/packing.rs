use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Colour, CorrespondenceCover, Error, Graph, ListAssignment, Result};

/// Whether packing entries are colours (list mode) or slot indices
/// `0..k` (cover mode).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PackingMode {
    List,
    Cover,
}

/// `k` colourings of the same graph; `colourings[i][v]` is the entry of
/// vertex `v` in colouring `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    pub mode: PackingMode,
    pub colourings: Vec<Vec<Colour>>,
}

impl Packing {
    /// Builds a packing from per-vertex columns: `columns[v][i]` is the entry
    /// of `v` in colouring `i`.
    pub fn from_columns(mode: PackingMode, k: usize, columns: &[Vec<Colour>]) -> Self {
        let colourings = (0..k).map(|i| columns.iter().map(|col| col[i]).collect()).collect();
        Packing { mode, colourings }
    }

    pub fn k(&self) -> usize {
        self.colourings.len()
    }

    /// Entries of vertex `v` across all colourings.
    pub fn column(&self, v: usize) -> Vec<Colour> {
        self.colourings.iter().map(|c| c[v]).collect()
    }
}

/// Packing whose entries may be unassigned. Only cover mode is used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPacking {
    pub colourings: Vec<Vec<Option<Colour>>>,
}

impl PartialPacking {
    pub fn unassigned(k: usize, n: usize) -> Self {
        PartialPacking { colourings: vec![vec![None; n]; k] }
    }

    pub fn assigned(&self) -> usize {
        self.colourings.iter().flatten().filter(|e| e.is_some()).count()
    }

    /// `None` while any entry is unassigned.
    pub fn complete(&self) -> Option<Packing> {
        let colourings = self
            .colourings
            .iter()
            .map(|c| c.iter().copied().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Packing { mode: PackingMode::Cover, colourings })
    }

    /// Disjointness and properness on the assigned entries.
    pub fn validate(&self, cover: &CorrespondenceCover) -> Result<(), PackingViolation> {
        check_shape(self.colourings.iter().map(Vec::len), self.colourings.len(), cover.n())?;
        validate_cover_entries(cover, |i, v| self.colourings[i][v], self.colourings.len())
    }
}

/// First broken invariant of a packing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackingViolation {
    SizeMismatch(String),
    WrongMode { expected: PackingMode },
    /// Entry of `v` in colouring `i` is not one of its colours / slots.
    NotAvailable { v: usize, colouring: usize },
    /// Colourings `i` and `j` agree at `v`.
    NotDisjoint { v: usize, i: usize, j: usize },
    /// Colouring `colouring` has a conflict across edge `uv`.
    Conflict { u: usize, v: usize, colouring: usize },
}

impl fmt::Display for PackingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PackingViolation::SizeMismatch(msg) => write!(f, "size mismatch: {msg}"),
            PackingViolation::WrongMode { expected } => {
                write!(f, "expected a packing in {expected:?} mode")
            }
            PackingViolation::NotAvailable { v, colouring } => {
                write!(f, "colouring {colouring} gives vertex {v} an unavailable entry")
            }
            PackingViolation::NotDisjoint { v, i, j } => {
                write!(f, "colourings {i} and {j} agree at vertex {v}")
            }
            PackingViolation::Conflict { u, v, colouring } => {
                write!(f, "colouring {colouring} has a conflict on edge {u}-{v}")
            }
        }
    }
}

impl std::error::Error for PackingViolation {}

fn check_shape(
    lens: impl Iterator<Item = usize>,
    k: usize,
    n: usize,
) -> Result<(), PackingViolation> {
    for (i, len) in lens.enumerate() {
        if len != n {
            return Err(PackingViolation::SizeMismatch(format!(
                "colouring {i} has {len} entries, graph has {n} vertices"
            )));
        }
    }
    let _ = k;
    Ok(())
}

fn validate_cover_entries(
    cover: &CorrespondenceCover,
    entry: impl Fn(usize, usize) -> Option<Colour>,
    k: usize,
) -> Result<(), PackingViolation> {
    let n = cover.n();
    for v in 0..n {
        let mut owner = vec![None; cover.k()];
        for i in 0..k {
            let Some(s) = entry(i, v) else { continue };
            let s = s as usize;
            if s >= cover.k() {
                return Err(PackingViolation::NotAvailable { v, colouring: i });
            }
            if let Some(j) = owner[s].replace(i) {
                return Err(PackingViolation::NotDisjoint { v, i: j, j: i });
            }
        }
    }
    for &(u, v) in cover.graph().edges() {
        for i in 0..k {
            if let (Some(su), Some(sv)) = (entry(i, u), entry(i, v)) {
                if cover.conflict(u, su as usize, v) == Some(sv as usize) {
                    return Err(PackingViolation::Conflict { u, v, colouring: i });
                }
            }
        }
    }
    Ok(())
}

/// Checks a cover-mode packing: `k` colourings, one slot per vertex each,
/// pairwise disjoint at every vertex, and no matched slot pair used by the
/// same colouring across an edge.
pub fn validate_packing(cover: &CorrespondenceCover, p: &Packing) -> Result<(), PackingViolation> {
    if p.mode != PackingMode::Cover {
        return Err(PackingViolation::WrongMode { expected: PackingMode::Cover });
    }
    if p.k() != cover.k() {
        return Err(PackingViolation::SizeMismatch(format!(
            "{} colourings for a {}-fold cover",
            p.k(),
            cover.k()
        )));
    }
    check_shape(p.colourings.iter().map(Vec::len), p.k(), cover.n())?;
    validate_cover_entries(cover, |i, v| Some(p.colourings[i][v]), p.k())
}

/// Checks a list-mode packing: every entry drawn from the vertex's list,
/// colourings pairwise disjoint at every vertex, and each colouring proper.
pub fn validate_list_packing(
    g: &Graph,
    l: &ListAssignment,
    p: &Packing,
) -> Result<(), PackingViolation> {
    if p.mode != PackingMode::List {
        return Err(PackingViolation::WrongMode { expected: PackingMode::List });
    }
    if l.n() != g.n() {
        return Err(PackingViolation::SizeMismatch(format!(
            "{} lists for {} vertices",
            l.n(),
            g.n()
        )));
    }
    check_shape(p.colourings.iter().map(Vec::len), p.k(), g.n())?;
    for v in 0..g.n() {
        for (i, c) in p.colourings.iter().enumerate() {
            if l.slot_of(v, c[v]).is_none() {
                return Err(PackingViolation::NotAvailable { v, colouring: i });
            }
            for (j, d) in p.colourings.iter().enumerate().skip(i + 1) {
                if c[v] == d[v] {
                    return Err(PackingViolation::NotDisjoint { v, i, j });
                }
            }
        }
    }
    for &(u, v) in g.edges() {
        for (i, c) in p.colourings.iter().enumerate() {
            if c[u] == c[v] {
                return Err(PackingViolation::Conflict { u, v, colouring: i });
            }
        }
    }
    Ok(())
}

/// Replaces colours by their slot index in the sorted lists.
pub fn list_packing_to_cover(l: &ListAssignment, p: &Packing) -> Result<Packing> {
    let mut colourings = Vec::with_capacity(p.k());
    for c in &p.colourings {
        let row = c
            .iter()
            .enumerate()
            .map(|(v, &col)| {
                l.slot_of(v, col).map(|s| s as Colour).ok_or_else(|| {
                    Error::SizeMismatch(format!("colour {col} is not in the list of vertex {v}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        colourings.push(row);
    }
    Ok(Packing { mode: PackingMode::Cover, colourings })
}

/// Replaces slot indices by the colours they denote.
pub fn cover_packing_to_list(l: &ListAssignment, p: &Packing) -> Result<Packing> {
    let mut colourings = Vec::with_capacity(p.k());
    for c in &p.colourings {
        let row = c
            .iter()
            .enumerate()
            .map(|(v, &s)| {
                l.list(v).get(s as usize).copied().ok_or_else(|| {
                    Error::SizeMismatch(format!("slot {s} out of range at vertex {v}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        colourings.push(row);
    }
    Ok(Packing { mode: PackingMode::List, colourings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::list_to_cover;

    fn k3() -> (Graph, ListAssignment) {
        (Graph::complete(3), ListAssignment::uniform(3, &[1, 2, 3]).unwrap())
    }

    fn list(rows: &[[Colour; 3]]) -> Packing {
        Packing { mode: PackingMode::List, colourings: rows.iter().map(|r| r.to_vec()).collect() }
    }

    #[test]
    fn latin_square_validates() {
        let (g, l) = k3();
        let p = list(&[[1, 2, 3], [2, 3, 1], [3, 1, 2]]);
        assert_eq!(validate_list_packing(&g, &l, &p), Ok(()));
        let cover = list_to_cover(&g, &l).unwrap();
        let slots = list_packing_to_cover(&l, &p).unwrap();
        assert_eq!(validate_packing(&cover, &slots), Ok(()));
        assert_eq!(cover_packing_to_list(&l, &slots).unwrap(), p);
    }

    #[test]
    fn detects_edge_conflict() {
        let (g, l) = k3();
        let p = list(&[[1, 1, 3], [2, 3, 1], [3, 2, 2]]);
        assert_eq!(
            validate_list_packing(&g, &l, &p),
            Err(PackingViolation::Conflict { u: 0, v: 1, colouring: 0 })
        );
        let cover = list_to_cover(&g, &l).unwrap();
        let slots = list_packing_to_cover(&l, &p).unwrap();
        assert!(matches!(
            validate_packing(&cover, &slots),
            Err(PackingViolation::Conflict { .. })
        ));
    }

    #[test]
    fn detects_disjointness_failure() {
        let (g, l) = k3();
        let p = list(&[[1, 2, 3], [1, 3, 2], [3, 1, 2]]);
        assert_eq!(
            validate_list_packing(&g, &l, &p),
            Err(PackingViolation::NotDisjoint { v: 0, i: 0, j: 1 })
        );
    }

    #[test]
    fn size_mismatch_is_reported() {
        let (g, l) = k3();
        let cover = list_to_cover(&g, &l).unwrap();
        let short = Packing { mode: PackingMode::Cover, colourings: vec![vec![0, 1]; 3] };
        assert!(matches!(
            validate_packing(&cover, &short),
            Err(PackingViolation::SizeMismatch(_))
        ));
        let few = Packing { mode: PackingMode::Cover, colourings: vec![vec![0, 1, 2]; 2] };
        assert!(matches!(validate_packing(&cover, &few), Err(PackingViolation::SizeMismatch(_))));
    }

    #[test]
    fn partial_packing_checks_assigned_entries() {
        let (g, l) = k3();
        let cover = list_to_cover(&g, &l).unwrap();
        let mut pp = PartialPacking::unassigned(3, 3);
        assert_eq!(pp.validate(&cover), Ok(()));
        pp.colourings[0][0] = Some(0);
        pp.colourings[0][1] = Some(0);
        assert!(pp.validate(&cover).is_err());
        pp.colourings[0][1] = Some(1);
        assert_eq!(pp.validate(&cover), Ok(()));
        assert_eq!(pp.assigned(), 2);
        assert!(pp.complete().is_none());
    }
}
