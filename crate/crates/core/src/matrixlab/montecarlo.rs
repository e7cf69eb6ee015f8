//! Monte Carlo estimators. Trial `t` draws from substream `t` of the seed,
//! and hits are summed, so results do not depend on the thread count.

use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::{one_transversal, zero_transversal, BinaryMatrix, CountMatrix};
use crate::rng::{self, Rng};
use crate::{Error, Result};

/// Two-sided 99% normal quantile.
const Z99: f64 = 2.575_829_303_548_900_4;

/// Binomial proportion with a 99% confidence half-width.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub hits: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci: f64,
}

/// Normal-approximation interval with a `1/(2n)` continuity term. When no
/// trial (or every trial) hits, the half-width is the exact one-sided 99%
/// Clopper–Pearson bound `1 - 0.01^(1/n)`.
pub fn binomial_estimate(hits: u64, trials: u64) -> Estimate {
    assert!(trials > 0 && hits <= trials);
    let n = trials as f64;
    let est = hits as f64 / n;
    let ci = if hits == 0 || hits == trials {
        1.0 - 0.01f64.powf(1.0 / n)
    } else {
        Z99 * (est * (1.0 - est) / n).sqrt() + 0.5 / n
    };
    Estimate { hits, trials, estimate: est, ci }
}

fn count_hits(trials: u64, seed: u64, hit: impl Fn(&mut Rng) -> bool + Sync) -> u64 {
    (0..trials)
        .into_par_iter()
        .map(|t| hit(&mut rng::substream(seed, t)) as u64)
        .sum()
}

fn require_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    Ok(())
}

/// Source of random binary matrices for [`zero_permanent_prob_mc_with`].
pub trait BinaryMatrixSampler: Sync {
    fn sample(&self, rng: &mut Rng) -> BinaryMatrix;
}

/// Entries independently 0 with probability `p`, filled row by row.
#[derive(Clone, Copy, Debug)]
pub struct BernoulliZeros {
    pub k: usize,
    pub p: f64,
}

impl BinaryMatrixSampler for BernoulliZeros {
    fn sample(&self, rng: &mut Rng) -> BinaryMatrix {
        let bits = (0..self.k * self.k).map(|_| !rng.gen_bool(self.p)).collect();
        BinaryMatrix::new(self.k, bits).expect("k*k entries")
    }
}

/// Fraction of sampled matrices without a 1-transversal (permanent zero).
pub fn zero_permanent_prob_mc_with(
    sampler: &impl BinaryMatrixSampler,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    require_trials(trials)?;
    let hits = count_hits(trials, seed, |rng| one_transversal(&sampler.sample(rng)).is_none());
    Ok(binomial_estimate(hits, trials))
}

pub fn zero_permanent_prob_mc(k: usize, p: f64, trials: u64, seed: u64) -> Result<Estimate> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("p={p} is not a probability")));
    }
    zero_permanent_prob_mc_with(&BernoulliZeros { k, p }, trials, seed)
}

/// The first-order prediction `2k p^k`.
pub fn predicted_zero_permanent(k: usize, p: f64) -> f64 {
    2.0 * k as f64 * p.powi(k as i32)
}

/// Sum of `n` independent uniform `k×k` permutation matrices, each drawn by
/// a Fisher–Yates shuffle.
pub fn sum_of_permutations(n: usize, k: usize, rng: &mut Rng) -> CountMatrix {
    let mut m = CountMatrix::zeros(k);
    let mut perm: Vec<usize> = (0..k).collect();
    for _ in 0..n {
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            m.add(i, j, 1);
        }
    }
    m
}

pub fn sample_sum_of_permutations(n: usize, k: usize, seed: u64) -> CountMatrix {
    sum_of_permutations(n, k, &mut rng::seeded(seed))
}

/// Fraction of sampled permutation sums without an all-zero transversal.
pub fn no_zero_transversal_prob_mc(n: usize, k: usize, trials: u64, seed: u64) -> Result<Estimate> {
    require_trials(trials)?;
    let hits = count_hits(trials, seed, |rng| zero_transversal(&sum_of_permutations(n, k, rng)).is_none());
    Ok(binomial_estimate(hits, trials))
}

/// `3k² exp(−n^{ε/3})`.
pub fn zero_transversal_bound(n: usize, k: usize, eps: f64) -> f64 {
    3.0 * (k * k) as f64 * (-(n as f64).powf(eps / 3.0)).exp()
}

/// Monte Carlo counterpart of
/// [`block_nonzero_prob_exact`](super::block_nonzero_prob_exact): estimates
/// of `P(all cells of rows×cols nonzero)` and `P(cell (0,0) nonzero)` from
/// the same samples.
pub fn block_nonzero_prob_mc(
    n: usize,
    k: usize,
    rows: &[usize],
    cols: &[usize],
    trials: u64,
    seed: u64,
) -> Result<(Estimate, Estimate)> {
    require_trials(trials)?;
    if rows.iter().chain(cols).any(|&x| x >= k) || k == 0 {
        return Err(Error::SizeMismatch(format!("block index outside 0..{k}")));
    }
    let (block, corner) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let m = sum_of_permutations(n, k, &mut rng::substream(seed, t));
            let all = rows.iter().all(|&i| cols.iter().all(|&j| m.get(i, j) > 0));
            (all as u64, (m.get(0, 0) > 0) as u64)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok((binomial_estimate(block, trials), binomial_estimate(corner, trials)))
}
