use std::collections::BTreeMap;

use crate::{Error, Result};

/// Colour identifier. Colours need not be contiguous.
pub type Colour = u32;

/// Per-vertex colour lists, each stored sorted ascending. The slot index of
/// a colour is its rank within the sorted list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<Colour>>,
}

impl ListAssignment {
    /// Sorts every list; repeated colours within one list are rejected.
    pub fn new(lists: Vec<Vec<Colour>>) -> Result<Self> {
        let mut lists = lists;
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidLists(format!("list of vertex {v} repeats a colour")));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, list: &[Colour]) -> Result<Self> {
        ListAssignment::new(vec![list.to_vec(); n])
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: usize) -> &[Colour] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Colour>] {
        &self.lists
    }

    pub fn into_lists(self) -> Vec<Vec<Colour>> {
        self.lists
    }

    /// `Some(k)` when every list has exactly `k` colours. An assignment on
    /// zero vertices is uniform with `k = 0`.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.lists.first().map_or(0, Vec::len);
        self.lists.iter().all(|l| l.len() == k).then_some(k)
    }

    /// Like [`uniform_size`](Self::uniform_size) but as an error.
    pub fn require_uniform(&self) -> Result<usize> {
        self.uniform_size()
            .ok_or_else(|| Error::InvalidLists("list sizes are unequal".into()))
    }

    /// Slot index of `c` in the list of `v`.
    pub fn slot_of(&self, v: usize, c: Colour) -> Option<usize> {
        self.lists[v].binary_search(&c).ok()
    }

    /// Number of lists containing each colour.
    pub fn multiplicities(&self) -> BTreeMap<Colour, usize> {
        let mut out = BTreeMap::new();
        for list in &self.lists {
            for &c in list {
                *out.entry(c).or_insert(0) += 1;
            }
        }
        out
    }

    /// Sorted union of all lists.
    pub fn palette(&self) -> Vec<Colour> {
        self.multiplicities().into_keys().collect()
    }

    /// Applies a colour relabelling to every list.
    pub fn relabel(&self, mut f: impl FnMut(Colour) -> Colour) -> Result<Self> {
        ListAssignment::new(
            self.lists.iter().map(|l| l.iter().map(|&c| f(c)).collect()).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_are_sorted_and_checked() {
        let l = ListAssignment::new(vec![vec![3, 1, 2], vec![5, 4, 9]]).unwrap();
        assert_eq!(l.list(0), &[1, 2, 3]);
        assert_eq!(l.slot_of(1, 9), Some(2));
        assert_eq!(l.uniform_size(), Some(3));
        assert!(ListAssignment::new(vec![vec![1, 1]]).is_err());
        let ragged = ListAssignment::new(vec![vec![1], vec![1, 2]]).unwrap();
        assert!(ragged.require_uniform().is_err());
    }

    #[test]
    fn multiplicities_count_lists() {
        let l = ListAssignment::new(vec![vec![1, 2], vec![2, 3]]).unwrap();
        let m = l.multiplicities();
        assert_eq!(m[&1], 1);
        assert_eq!(m[&2], 2);
        assert_eq!(l.palette(), vec![1, 2, 3]);
    }
}
