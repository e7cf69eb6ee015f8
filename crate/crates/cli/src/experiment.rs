//! Experiment runner.
//!
//! A config is `{"experiments": [{"name", "kind", "seeds": [...], ...}]}`.
//! Each (experiment, seed) pair yields one report line. Pairs run in
//! parallel; lines are written in config order, then seed order.

use std::collections::BTreeSet;
use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use listpack::constructive::pack_degenerate;
use listpack::matrixlab::{
    no_zero_transversal_prob_mc, predicted_zero_permanent, zero_permanent_prob_mc,
    zero_transversal_bound,
};
use listpack::probabilistic::{pack_bipartite_lll_with_sides, pack_fractional, FractionalColoring};
use listpack::rng::substream;
use listpack::sampling::{random_cover, random_graph, random_lists, random_regular_bipartite};
use listpack::{degeneracy_order, validate_list_packing, validate_packing, Graph};

use crate::output::{self, record, Failure, EX_DATAERR, EX_FOUND};

#[derive(Deserialize, Debug)]
struct Config {
    #[serde(default)]
    experiments: Vec<Experiment>,
}

#[derive(Deserialize, Debug)]
struct Experiment {
    name: String,
    seeds: Vec<u64>,
    #[serde(flatten)]
    spec: Spec,
}

fn one() -> u64 {
    1
}

#[derive(Deserialize, Debug, Clone)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Spec {
    /// Bernoulli zero matrices: probability of permanent zero.
    PermZero { k: usize, p: f64, trials: u64 },
    /// Sums of `n` random permutation matrices: probability of no zero
    /// transversal.
    ZeroTransversal {
        n: usize,
        k: usize,
        trials: u64,
        #[serde(default = "default_eps")]
        eps: f64,
    },
    /// Resampling packer on random `delta`-regular bipartite graphs with
    /// sides of size `side` and random perfect-matching covers.
    BipLll {
        side: usize,
        delta: usize,
        k: usize,
        #[serde(default = "one")]
        repetitions: u64,
        max_resamples: Option<u64>,
    },
    /// Fractional packer on the even cycle `C_n` with random `k`-lists
    /// from `0..palette`.
    Fractional {
        n: usize,
        k: usize,
        palette: usize,
        #[serde(default = "one")]
        repetitions: u64,
        max_rounds: u64,
    },
    /// Degeneracy packer on `G(n, p)` with random covers at `k = 2d`.
    Degenerate {
        n: usize,
        p: f64,
        #[serde(default = "one")]
        repetitions: u64,
    },
}

fn default_eps() -> f64 {
    0.2
}

fn data_err(msg: impl Into<String>) -> Failure {
    Failure::new(EX_DATAERR, msg)
}

fn parse_config(text: &str) -> Result<Config, Failure> {
    let config: Config =
        serde_json::from_str(text).map_err(|e| data_err(format!("invalid config: {e}")))?;
    let mut names = BTreeSet::new();
    for e in &config.experiments {
        if !names.insert(e.name.as_str()) {
            return Err(data_err(format!("invalid config: duplicate experiment name {:?}", e.name)));
        }
    }
    Ok(config)
}

fn run_one(spec: &Spec, seed: u64) -> Result<Value, Failure> {
    Ok(match *spec {
        Spec::PermZero { k, p, trials } => {
            let e = zero_permanent_prob_mc(k, p, trials, seed)?;
            let predicted = predicted_zero_permanent(k, p);
            json!({"k": k, "p": p, "trials": trials, "hits": e.hits, "estimate": e.estimate,
                   "ci": e.ci, "predicted": predicted, "ratio": e.estimate / predicted})
        }
        Spec::ZeroTransversal { n, k, trials, eps } => {
            let e = no_zero_transversal_prob_mc(n, k, trials, seed)?;
            let bound = zero_transversal_bound(n, k, eps);
            json!({"n": n, "k": k, "trials": trials, "hits": e.hits, "estimate": e.estimate,
                   "ci": e.ci, "predicted": bound, "ratio": e.estimate / bound})
        }
        Spec::BipLll { side, delta, k, repetitions, max_resamples } => {
            let (mut successes, mut attempts, mut valid) = (0u64, 0u64, true);
            for r in 0..repetitions {
                let mut rng = substream(seed, r);
                let g = random_regular_bipartite(side, delta, &mut rng)?;
                let cover = random_cover(&g, k, 1.0, &mut rng);
                let in_a: Vec<bool> = (0..g.n()).map(|v| v < side).collect();
                let out = pack_bipartite_lll_with_sides(
                    &cover,
                    &in_a,
                    max_resamples,
                    seed.wrapping_add(r),
                )?;
                attempts += out.attempts;
                if let Some(p) = out.packing {
                    successes += 1;
                    valid &= validate_packing(&cover, &p).is_ok();
                }
            }
            json!({"side": side, "delta": delta, "k": k, "repetitions": repetitions,
                   "successes": successes, "mean_resamples": attempts as f64 / repetitions.max(1) as f64,
                   "all_valid": valid})
        }
        Spec::Fractional { n, k, palette, repetitions, max_rounds } => {
            let g = Graph::cycle(n);
            let fc = FractionalColoring::from_bipartition(&g)?;
            let (mut successes, mut rounds, mut valid) = (0u64, 0u64, true);
            for r in 0..repetitions {
                let mut rng = substream(seed, r);
                let lists = random_lists(n, k, palette, &mut rng);
                let out = pack_fractional(&g, &lists, &fc, max_rounds, seed.wrapping_add(r))?;
                rounds += out.attempts;
                if let Some(p) = out.packing {
                    successes += 1;
                    valid &= validate_list_packing(&g, &lists, &p).is_ok();
                }
            }
            json!({"n": n, "k": k, "palette": palette, "repetitions": repetitions,
                   "successes": successes, "mean_rounds": rounds as f64 / repetitions.max(1) as f64,
                   "all_valid": valid})
        }
        Spec::Degenerate { n, p, repetitions } => {
            let (mut successes, mut valid) = (0u64, true);
            for r in 0..repetitions {
                let mut rng = substream(seed, r);
                let g = random_graph(n, p, &mut rng);
                let k = (2 * degeneracy_order(&g).1).max(1);
                let cover = random_cover(&g, k, 1.0, &mut rng);
                let p = pack_degenerate(&cover)?;
                successes += 1;
                valid &= validate_packing(&cover, &p).is_ok();
            }
            json!({"n": n, "p": p, "repetitions": repetitions, "successes": successes,
                   "all_valid": valid})
        }
    })
}

fn kind_name(spec: &Spec) -> &'static str {
    match spec {
        Spec::PermZero { .. } => "perm-zero",
        Spec::ZeroTransversal { .. } => "zero-transversal",
        Spec::BipLll { .. } => "bip-lll",
        Spec::Fractional { .. } => "fractional",
        Spec::Degenerate { .. } => "degenerate",
    }
}

/// Report text for a config: one line per (experiment, seed).
pub fn report(config_text: &str) -> Result<String, Failure> {
    let config = parse_config(config_text)?;
    let jobs: Vec<(&Experiment, u64)> =
        config.experiments.iter().flat_map(|e| e.seeds.iter().map(move |&s| (e, s))).collect();
    let lines: Vec<Result<String, Failure>> = jobs
        .par_iter()
        .map(|&(e, seed)| {
            let mut v = json!({"experiment": e.name, "kind": kind_name(&e.spec), "seed": seed});
            if let (Value::Object(m), Value::Object(extra)) = (&mut v, run_one(&e.spec, seed)?) {
                m.extend(extra);
            }
            Ok(output::line(&record("experiment", v)))
        })
        .collect();
    lines.into_iter().collect::<Result<Vec<_>, _>>().map(|l| l.concat())
}

pub fn run(config: &str, out: Option<&Path>) -> Result<u8, Failure> {
    let text = report(&output::read_input(config)?)?;
    output::write_output(out, &text)?;
    eprintln!("listpack: wrote {} record(s)", text.lines().count());
    Ok(EX_FOUND)
}
