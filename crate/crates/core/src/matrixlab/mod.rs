//! Binary and count matrices, permanents and transversals.

mod enumerate;
mod montecarlo;

pub use enumerate::{
    block_nonzero_prob_exact, no_zero_transversal_prob_exact, zero_permanent_counts,
    zero_permanent_lower_bound, zero_permanent_prob_exact,
};
pub use montecarlo::{
    binomial_estimate, block_nonzero_prob_mc, no_zero_transversal_prob_mc,
    predicted_zero_permanent, sample_sum_of_permutations, sum_of_permutations,
    zero_permanent_prob_mc, zero_permanent_prob_mc_with, zero_transversal_bound, BernoulliZeros,
    BinaryMatrixSampler, Estimate,
};

use crate::matching::{hall_violator, max_matching, perfect_matching};
use crate::{Error, Result};

/// Largest dimension accepted by [`permanent`].
pub const MAX_PERMANENT_K: usize = 24;

/// Square matrix with entries in {0, 1}, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    k: usize,
    bits: Vec<bool>,
}

impl BinaryMatrix {
    pub fn new(k: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != k * k {
            return Err(Error::SizeMismatch(format!("{} entries for a {k}x{k} matrix", bits.len())));
        }
        Ok(BinaryMatrix { k, bits })
    }

    /// Rows of 0/1 values; rejects ragged or non-binary input.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let k = rows.len();
        let mut bits = Vec::with_capacity(k * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::SizeMismatch(format!("row {i} has {} entries", row.len())));
            }
            for &x in row {
                match x {
                    0 => bits.push(false),
                    1 => bits.push(true),
                    _ => return Err(Error::Parse(format!("entry {x} in row {i} is not binary"))),
                }
            }
        }
        Ok(BinaryMatrix { k, bits })
    }

    /// Entry `(i, j)` is bit `i * k + j` of `mask`.
    pub fn from_mask(k: usize, mask: u64) -> Self {
        assert!(k * k <= 64);
        BinaryMatrix { k, bits: (0..k * k).map(|b| mask >> b & 1 == 1).collect() }
    }

    pub fn identity(k: usize) -> Self {
        BinaryMatrix { k, bits: (0..k * k).map(|b| b / k == b % k).collect() }
    }

    pub fn filled(k: usize, value: bool) -> Self {
        BinaryMatrix { k, bits: vec![value; k * k] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.bits[i * self.k + j] = value;
    }

    pub fn zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| !b).count()
    }

    fn row_support(&self) -> Vec<Vec<usize>> {
        (0..self.k).map(|i| (0..self.k).filter(|&j| self.get(i, j)).collect()).collect()
    }
}

/// Square matrix of non-negative counts, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountMatrix {
    k: usize,
    counts: Vec<u32>,
}

impl CountMatrix {
    pub fn zeros(k: usize) -> Self {
        CountMatrix { k, counts: vec![0; k * k] }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::SizeMismatch("count matrix must be square".into()));
        }
        Ok(CountMatrix { k, counts: rows.concat() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.counts[i * self.k + j]
    }

    pub fn add(&mut self, i: usize, j: usize, by: u32) {
        self.counts[i * self.k + j] += by;
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.counts.chunks(self.k.max(1)).map(|r| r.iter().sum()).take(self.k).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.k).map(|j| (0..self.k).map(|i| self.get(i, j)).sum()).collect()
    }

    /// Indicator of the zero cells.
    pub fn zero_indicator(&self) -> BinaryMatrix {
        BinaryMatrix { k: self.k, bits: self.counts.iter().map(|&c| c == 0).collect() }
    }
}

/// Exact permanent by Ryser's inclusion–exclusion over column subsets,
/// visited in Gray-code order so each step updates the row sums by one
/// column. Overflow of the 128-bit accumulator is an error, never a wrap.
pub fn permanent(a: &BinaryMatrix) -> Result<u128> {
    let k = a.k();
    if k > MAX_PERMANENT_K {
        return Err(Error::MatrixTooLarge { k, max: MAX_PERMANENT_K });
    }
    if k == 0 {
        return Ok(1);
    }
    let mut row_sums = vec![0i128; k];
    let mut total: i128 = 0;
    let mut gray: u64 = 0;
    for s in 1u64..(1 << k) {
        let j = s.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for (i, r) in row_sums.iter_mut().enumerate() {
            if a.get(i, j) {
                *r += if adding { 1 } else { -1 };
            }
        }
        let mut prod: i128 = 1;
        for &r in &row_sums {
            prod = prod.checked_mul(r).ok_or(Error::Overflow)?;
            if prod == 0 {
                break;
            }
        }
        let odd = gray.count_ones() % 2 == 1;
        total = if odd { total.checked_sub(prod) } else { total.checked_add(prod) }
            .ok_or(Error::Overflow)?;
    }
    if k % 2 == 1 {
        total = -total;
    }
    u128::try_from(total).map_err(|_| Error::Internal("negative permanent".into()))
}

/// Permutation `σ` (row `i` → column `σ[i]`) with `a[i][σ[i]] = 1` for every
/// row, found by maximum bipartite matching.
pub fn one_transversal(a: &BinaryMatrix) -> Option<Vec<usize>> {
    perfect_matching(&a.row_support(), a.k())
}

/// Permutation hitting only zero cells of `m`.
pub fn zero_transversal(m: &CountMatrix) -> Option<Vec<usize>> {
    one_transversal(&m.zero_indicator())
}

/// When `a` has no 1-transversal, returns rows `S` and columns `T` with
/// `|S| + |T| = k + 1` and `a[S×T]` all zero. `T` is the set of columns
/// reachable by alternating paths from an unmatched column, and `S` the rows
/// outside their neighbourhood.
pub fn frobenius_konig_witness(a: &BinaryMatrix) -> Option<(Vec<usize>, Vec<usize>)> {
    let k = a.k();
    let col_support: Vec<Vec<usize>> =
        (0..k).map(|j| (0..k).filter(|&i| a.get(i, j)).collect()).collect();
    let m = max_matching(&col_support, k);
    let (cols, rows_hit) = hall_violator(&col_support, k, &m)?;
    let rows = (0..k).filter(|i| rows_hit.binary_search(i).is_err()).collect();
    Some((rows, cols))
}
