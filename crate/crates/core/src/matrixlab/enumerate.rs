//! Exact probabilities by exhaustive enumeration (tiny dimensions only).

use num::{BigInt, BigRational, One, Zero};

use super::{permanent, zero_transversal, BinaryMatrix, CountMatrix};
use crate::exact::permutations;
use crate::{Error, Result};

/// Largest `k` for which all `2^(k²)` binary matrices are enumerated.
pub const MAX_ENUMERATION_K: usize = 4;

/// Largest number of permutation tuples [`no_zero_transversal_prob_exact`]
/// and [`block_nonzero_prob_exact`] will walk.
pub const MAX_PERMUTATION_TUPLES: u128 = 20_000_000;

/// `counts[z]` is the number of `k×k` binary matrices with exactly `z` zero
/// entries and permanent zero, over all `2^(k²)` matrices.
pub fn zero_permanent_counts(k: usize) -> Result<Vec<u64>> {
    if k > MAX_ENUMERATION_K {
        return Err(Error::MatrixTooLarge { k, max: MAX_ENUMERATION_K });
    }
    let cells = k * k;
    let mut counts = vec![0u64; cells + 1];
    for mask in 0u64..(1 << cells) {
        let a = BinaryMatrix::from_mask(k, mask);
        if permanent(&a)? == 0 {
            counts[a.zeros()] += 1;
        }
    }
    Ok(counts)
}

/// Probability that a `k×k` matrix whose entries are independently 0 with
/// probability `p` has permanent zero: `Σ_z counts[z] p^z (1-p)^(k²-z)`.
pub fn zero_permanent_prob_exact(k: usize, p: &BigRational) -> Result<BigRational> {
    let counts = zero_permanent_counts(k)?;
    let q = BigRational::one() - p;
    let cells = k * k;
    let mut total = BigRational::zero();
    for (z, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = num::pow(p.clone(), z) * num::pow(q.clone(), cells - z);
        total += term * BigRational::from_integer(BigInt::from(c));
    }
    Ok(total)
}

/// Truncated inclusion–exclusion lower bound on the probability of a zero
/// row or zero column: `2k p^k − (2·C(k,2) p^{2k} + k² p^{2k−1})`.
pub fn zero_permanent_lower_bound(k: usize, p: &BigRational) -> BigRational {
    let int = |x: usize| BigRational::from_integer(BigInt::from(x));
    let pk = num::pow(p.clone(), k);
    let pairs = k * k.saturating_sub(1) / 2;
    let first = int(2 * k) * pk.clone();
    let second = int(2 * pairs) * num::pow(p.clone(), 2 * k);
    let third = if k == 0 { BigRational::zero() } else { int(k * k) * num::pow(p.clone(), 2 * k - 1) };
    first - (second + third)
}

fn for_each_permutation_tuple(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&CountMatrix),
) -> Result<u128> {
    let perms = permutations(k);
    let total = (perms.len() as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= MAX_PERMUTATION_TUPLES)
        .ok_or_else(|| {
            Error::Precondition(format!("({k}!)^{n} permutation tuples exceed the enumeration cap"))
        })?;
    let mut odometer = vec![0usize; n];
    loop {
        let mut m = CountMatrix::zeros(k);
        for &p in &odometer {
            for (i, &j) in perms[p].iter().enumerate() {
                m.add(i, j, 1);
            }
        }
        visit(&m);
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(total);
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

fn ratio(hits: u128, total: u128) -> BigRational {
    BigRational::new(BigInt::from(hits), BigInt::from(total))
}

/// Exact probability that the sum of `n` independent uniform `k×k`
/// permutation matrices has no all-zero transversal, over all `(k!)^n`
/// tuples.
pub fn no_zero_transversal_prob_exact(n: usize, k: usize) -> Result<BigRational> {
    let mut hits = 0u128;
    let total = for_each_permutation_tuple(n, k, |m| {
        if zero_transversal(m).is_none() {
            hits += 1;
        }
    })?;
    Ok(ratio(hits, total))
}

/// For the sum of `n` uniform `k×k` permutation matrices, returns the exact
/// probability that every cell of `rows × cols` is nonzero, together with
/// the probability that cell `(0, 0)` is nonzero.
pub fn block_nonzero_prob_exact(
    n: usize,
    k: usize,
    rows: &[usize],
    cols: &[usize],
) -> Result<(BigRational, BigRational)> {
    if rows.iter().chain(cols).any(|&x| x >= k) || k == 0 {
        return Err(Error::SizeMismatch(format!("block index outside 0..{k}")));
    }
    let (mut block, mut corner) = (0u128, 0u128);
    let total = for_each_permutation_tuple(n, k, |m| {
        if rows.iter().all(|&i| cols.iter().all(|&j| m.get(i, j) > 0)) {
            block += 1;
        }
        if m.get(0, 0) > 0 {
            corner += 1;
        }
    })?;
    Ok((ratio(block, total), ratio(corner, total)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn k1_probability_is_p() {
        let p = BigRational::new(3.into(), 10.into());
        assert_eq!(zero_permanent_prob_exact(1, &p).unwrap(), p);
    }

    #[test]
    fn k2_half_is_nine_sixteenths() {
        assert_eq!(
            zero_permanent_prob_exact(2, &half()).unwrap(),
            BigRational::new(9.into(), 16.into())
        );
    }

    #[test]
    fn nonzero_permanent_counts_at_half() {
        // binary matrices with positive permanent: 7, 247, 37823 for k = 2, 3, 4
        for (k, positive) in [(2u32, 7u64), (3, 247), (4, 37823)] {
            let total = 1u64 << (k * k);
            let expected = BigRational::new((total - positive).into(), total.into());
            assert_eq!(zero_permanent_prob_exact(k as usize, &half()).unwrap(), expected);
        }
    }

    #[test]
    fn counts_reject_large_k() {
        assert!(zero_permanent_counts(5).is_err());
    }

    #[test]
    fn exact_zero_transversal_n1() {
        // a single permutation matrix always leaves a zero transversal for k >= 2
        assert_eq!(no_zero_transversal_prob_exact(1, 3).unwrap(), BigRational::zero());
        assert_eq!(no_zero_transversal_prob_exact(1, 1).unwrap(), BigRational::one());
    }

    #[test]
    fn block_probability_k2_n2() {
        let (block, corner) = block_nonzero_prob_exact(2, 2, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(block, half());
        assert_eq!(corner, BigRational::new(3.into(), 4.into()));
    }
}
