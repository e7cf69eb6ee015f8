//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `harness = false` so the lines are always printed. Every
//! criterion also returns a textual report; the last criterion reruns all
//! others on a single-threaded pool and compares the reports byte for byte.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::{BigRational, ToPrimitive};
use rand::Rng;

use listpack::constructive::{
    pack_augment_traced, pack_bipartite_ordered, pack_complete_traced, pack_degenerate,
    smaller_degree_side,
};
use listpack::exact::{decide_chi_star_list, find_packing, Budget, Decision};
use listpack::generators::{gen_c4, gen_kab_cover, gen_shift_construction};
use listpack::matrixlab::{
    block_nonzero_prob_exact, frobenius_konig_witness, no_zero_transversal_prob_exact,
    no_zero_transversal_prob_mc, one_transversal, permanent, predicted_zero_permanent,
    zero_permanent_lower_bound, zero_permanent_prob_exact, zero_permanent_prob_mc, BinaryMatrix,
};
use listpack::probabilistic::{pack_bipartite_lll, pack_fractional, FractionalColoring};
use listpack::rng::substream;
use listpack::sampling::{
    random_bipartite, random_capped_lists, random_cover, random_graph, random_lists,
    random_regular_bipartite,
};
use listpack::{
    degeneracy_order, list_to_cover, validate_list_packing, validate_packing, Graph,
    DEFAULT_BUDGET,
};

/// Estimate of `P(Per = 0)` for `k = 12`, `p = 1/2` from a pilot run of
/// 10^6 trials under a different seed (6069 hits).
const PILOT_K12: f64 = 0.006069;
/// Band for `estimate / (2k p^k)` at `k = 12`, fixed after the pilot run
/// (pilot ratio 1.036).
const RATIO_BAND: (f64, f64) = (0.8, 1.3);

struct Outcome {
    pass: bool,
    report: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, report: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl AsRef<str>) {
        let _ = writeln!(self.report, "[{}] {}", if ok { "ok" } else { "FAILED" }, what.as_ref());
        self.pass &= ok;
    }
}

fn budget() -> Budget {
    Budget::new(DEFAULT_BUDGET)
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn c1_c4_witness() -> Outcome {
    let mut o = Outcome::new();
    let (g, l) = gen_c4();
    let cover = list_to_cover(&g, &l).unwrap();
    o.check(find_packing(&cover, &mut budget()).unwrap().is_none(), "C4 lists have no 2-packing");
    let d = decide_chi_star_list(&g, 3, &mut budget()).unwrap();
    o.check(d.is_all_pack(), format!("every 3-list-assignment of C4 packs: {d:?}"));
    o
}

fn chi_star_list_equals(o: &mut Outcome, name: &str, g: &Graph, k: usize) {
    let below = decide_chi_star_list(g, k - 1, &mut budget()).unwrap();
    let at = decide_chi_star_list(g, k, &mut budget()).unwrap();
    o.check(
        matches!(below, Decision::Witness(_)) && at.is_all_pack(),
        format!("list packing number of {name} is {k} (k-1: {below:?}; k: {at:?})"),
    );
}

fn c2_complete_graphs() -> Outcome {
    let mut o = Outcome::new();
    chi_star_list_equals(&mut o, "K2", &Graph::complete(2), 2);
    chi_star_list_equals(&mut o, "K3", &Graph::complete(3), 3);
    chi_star_list_equals(&mut o, "P3", &Graph::path(3), 2);
    o
}

fn c3_kab_cover() -> Outcome {
    let mut o = Outcome::new();
    let cover = gen_kab_cover(2).unwrap();
    o.check(find_packing(&cover, &mut budget()).unwrap().is_none(), "K_{2,6} 3-fold cover has no packing");
    let g = cover.graph().clone();
    o.check(degeneracy_order(&g).1 == 2, "K_{2,6} has degeneracy 2");
    let mut ok = true;
    for seed in 0..20 {
        let c4 = random_cover(&g, 4, 1.0, &mut substream(3, seed));
        ok &= pack_degenerate(&c4).is_ok_and(|p| validate_packing(&c4, &p).is_ok());
    }
    o.check(ok, "pack_degenerate packs 20 random full 4-fold covers of K_{2,6}");
    o
}

fn c4_shift() -> Outcome {
    let mut o = Outcome::new();
    let (g, l) = gen_shift_construction(2).unwrap();
    o.check(degeneracy_order(&g).1 == 2, "shift construction has degeneracy 2");
    o.check(l.uniform_size() == Some(3), "shift construction has 3-lists");
    let cover = list_to_cover(&g, &l).unwrap();
    o.check(find_packing(&cover, &mut budget()).unwrap().is_none(), "no packing of size 3");
    o
}

fn c5_degenerate() -> Outcome {
    let mut o = Outcome::new();
    let classes: [(&str, fn(&mut listpack::rng::Rng) -> (Graph, f64)); 4] = [
        ("paths", |r| (Graph::path(r.gen_range(1..=12)), 1.0)),
        ("cycles", |r| (Graph::cycle(r.gen_range(3..=12)), 1.0)),
        ("random graphs", |r| {
            let n = r.gen_range(1..=12);
            let p = r.gen_range(0.1..0.9);
            (random_graph(n, p, r), 1.0)
        }),
        ("random partial matchings", |r| {
            let n = r.gen_range(1..=12);
            let p = r.gen_range(0.1..0.9);
            let density = r.gen_range(0.0..=1.0);
            (random_graph(n, p, r), density)
        }),
    ];
    for (ci, (name, make)) in classes.iter().enumerate() {
        let mut failures = 0;
        for seed in 0..200 {
            let mut rng = substream(500 + ci as u64, seed);
            let (g, density) = make(&mut rng);
            let k = 2 * degeneracy_order(&g).1;
            let cover = random_cover(&g, k, density, &mut rng);
            if !pack_degenerate(&cover).is_ok_and(|p| validate_packing(&cover, &p).is_ok()) {
                failures += 1;
            }
        }
        o.check(failures == 0, format!("{name}: {failures} failures in 200"));
    }
    o
}

fn c6_complete() -> Outcome {
    let mut o = Outcome::new();
    let mut failures = 0;
    for seed in 0..200 {
        let mut rng = substream(600, seed);
        let n = rng.gen_range(1..=7);
        let k = rng.gen_range(1..=n);
        let palette = rng.gen_range(k..=n * k);
        let lists = random_capped_lists(n, k, palette, &mut rng);
        let ok = pack_complete_traced(&lists, k).is_ok_and(|(p, stages)| {
            stages.len() == k && validate_list_packing(&Graph::complete(n), &lists, &p).is_ok()
        });
        failures += usize::from(!ok);
    }
    o.check(failures == 0, format!("{failures} failures in 200 capped K_n instances"));
    o
}

fn c7_bipartite_ordered() -> Outcome {
    let mut o = Outcome::new();
    let (mut failures, mut order_failures) = (0, 0);
    for seed in 0..200 {
        let mut rng = substream(700, seed);
        let a = rng.gen_range(1..=6);
        let b = rng.gen_range(1..=6);
        let g = random_bipartite(a, b, rng.gen_range(0.2..1.0), &mut rng);
        let in_a = smaller_degree_side(&g).unwrap();
        let delta_a = (0..g.n()).filter(|&v| in_a[v]).map(|v| g.degree(v)).max().unwrap_or(0);
        let k = delta_a + 1;
        let palette = rng.gen_range(k..=2 * k + 3);
        let lists = random_lists(g.n(), k, palette, &mut rng);
        match pack_bipartite_ordered(&g, &lists) {
            Ok(p) if validate_list_packing(&g, &lists, &p).is_ok() => {
                let sorted = (0..g.n())
                    .filter(|&v| !in_a[v])
                    .all(|v| p.column(v).windows(2).all(|w| w[0] < w[1]));
                order_failures += usize::from(!sorted);
            }
            _ => failures += 1,
        }
    }
    o.check(failures == 0, format!("{failures} invalid or missing packings in 200"));
    o.check(order_failures == 0, format!("{order_failures} B-side order violations"));
    o
}

fn c8_augment() -> Outcome {
    let mut o = Outcome::new();
    let (mut failures, mut stalls, mut rounds_total) = (0, 0, 0);
    for seed in 0..100 {
        let mut rng = substream(800, seed);
        let n = rng.gen_range(1..=8);
        let g = random_graph(n, rng.gen_range(0.1..0.8), &mut rng);
        let bound = 1 + degeneracy_order(&g).1;
        let k = 1 + g.max_degree() + bound;
        let cover = random_cover(&g, k, rng.gen_range(0.5..=1.0), &mut rng);
        match pack_augment_traced(&cover, bound, &mut budget()) {
            Ok((p, rounds)) if validate_packing(&cover, &p).is_ok() => {
                rounds_total += rounds.len();
                let grows = rounds.windows(2).all(|w| w[0].assigned < w[1].assigned);
                stalls += usize::from(!grows || rounds.len() > n * k);
            }
            _ => failures += 1,
        }
    }
    o.check(failures == 0, format!("{failures} invalid or missing packings in 100"));
    o.check(stalls == 0, format!("{stalls} runs without strict growth ({rounds_total} rounds)"));
    o
}

fn c9_frobenius_konig() -> Outcome {
    let mut o = Outcome::new();
    for k in 1..=4usize {
        let mut bad = 0u64;
        let mut zero = 0u64;
        for mask in 0u64..(1 << (k * k)) {
            let a = BinaryMatrix::from_mask(k, mask);
            let per_zero = permanent(&a).unwrap() == 0;
            let no_one = one_transversal(&a).is_none();
            let witness = frobenius_konig_witness(&a);
            let witness_ok = witness.as_ref().is_none_or(|(s, t)| {
                s.len() + t.len() == k + 1 && s.iter().all(|&i| t.iter().all(|&j| !a.get(i, j)))
            });
            zero += u64::from(per_zero);
            bad += u64::from(per_zero != no_one || no_one != witness.is_some() || !witness_ok);
        }
        o.check(bad == 0, format!("k={k}: {zero} zero-permanent matrices, {bad} disagreements"));
    }
    o
}

fn c10_permanent_mc() -> Outcome {
    let mut o = Outcome::new();
    let exact = zero_permanent_prob_exact(2, &half()).unwrap();
    o.check(exact == BigRational::new(9.into(), 16.into()), format!("exact k=2, p=1/2: {exact}"));
    let e2 = zero_permanent_prob_mc(2, 0.5, 1_000_000, 1010).unwrap();
    o.check((e2.estimate - 0.5625).abs() <= e2.ci, format!("k=2 Monte Carlo {e2:?}"));
    let e = zero_permanent_prob_mc(12, 0.5, 1_000_000, 1012).unwrap();
    o.check((e.estimate - PILOT_K12).abs() <= e.ci, format!("k=12 {e:?} vs pilot {PILOT_K12}"));
    let ratio = e.estimate / predicted_zero_permanent(12, 0.5);
    o.check(
        (RATIO_BAND.0..=RATIO_BAND.1).contains(&ratio),
        format!("ratio to 2k p^k = {ratio:.4}, band {RATIO_BAND:?}"),
    );
    o
}

fn c11_inclusion_exclusion() -> Outcome {
    let mut o = Outcome::new();
    for k in 1..=4 {
        for t in 1..=9 {
            let p = BigRational::new(t.into(), 10.into());
            let exact = zero_permanent_prob_exact(k, &p).unwrap();
            let lower = zero_permanent_lower_bound(k, &p);
            o.check(
                lower <= exact,
                format!(
                    "k={k} p=0.{t}: lower {:.6} <= exact {:.6}",
                    lower.to_f64().unwrap(),
                    exact.to_f64().unwrap()
                ),
            );
        }
    }
    o
}

fn c12_zero_transversals() -> Outcome {
    let mut o = Outcome::new();
    let exact = no_zero_transversal_prob_exact(2, 3).unwrap();
    let e = no_zero_transversal_prob_mc(2, 3, 100_000, 1200).unwrap();
    let x = exact.to_f64().unwrap();
    o.check((e.estimate - x).abs() <= e.ci, format!("(n,k)=(2,3): exact {exact} = {x:.5}, {e:?}"));
    let big = no_zero_transversal_prob_mc(30, 11, 100_000, 1201).unwrap();
    o.check(big.estimate < 0.05, format!("(n,k)=(30,11): {big:?}, fence 0.05"));
    o
}

fn c13_negative_correlation() -> Outcome {
    let mut o = Outcome::new();
    let (block, corner) = block_nonzero_prob_exact(2, 2, &[0, 1], &[0, 1]).unwrap();
    let product = num::pow(corner.clone(), 4);
    o.check(block > product, format!("P(all nonzero) = {block} > P(R11 != 0)^4 = {product}"));
    o
}

fn c14_randomized_validity() -> Outcome {
    let mut o = Outcome::new();
    let g = Graph::cycle(6);
    let fc = FractionalColoring::from_bipartition(&g).unwrap();
    let (mut invalid, mut successes) = (0, 0);
    for seed in 0..500 {
        let lists = random_lists(6, 5, 12, &mut substream(1400, seed));
        let out = pack_fractional(&g, &lists, &fc, 50, seed).unwrap();
        if let Some(p) = out.packing {
            successes += 1;
            invalid += usize::from(validate_list_packing(&g, &lists, &p).is_err());
        }
    }
    o.check(invalid == 0, format!("fractional on C6, k=5: {successes}/500 packed, {invalid} invalid"));

    let (mut invalid, mut successes, mut resamples) = (0, 0, 0);
    for seed in 0..500 {
        let mut rng = substream(1401, seed);
        let g = random_regular_bipartite(8, 3, &mut rng).unwrap();
        let cover = random_cover(&g, 4, 1.0, &mut rng);
        let out = pack_bipartite_lll(&cover, None, seed).unwrap();
        resamples += out.attempts;
        if let Some(p) = out.packing {
            successes += 1;
            invalid += usize::from(validate_packing(&cover, &p).is_err());
        }
    }
    o.check(
        invalid == 0,
        format!("resampling on 3-regular 8+8, k=4: {successes}/500 packed, {resamples} resamples, {invalid} invalid"),
    );

    let (mut invalid, mut successes, mut resamples) = (0, 0, 0);
    for seed in 0..100 {
        let mut rng = substream(1402, seed);
        let g = random_regular_bipartite(40, 8, &mut rng).unwrap();
        let cover = random_cover(&g, 9, 1.0, &mut rng);
        let out = pack_bipartite_lll(&cover, None, seed).unwrap();
        resamples += out.attempts;
        if let Some(p) = out.packing {
            successes += 1;
            invalid += usize::from(validate_packing(&cover, &p).is_err());
        }
    }
    o.check(
        invalid == 0,
        format!("baseline 8-regular 40+40, k=9: {successes}/100 packed, mean resamples {:.2}, {invalid} invalid", resamples as f64 / 100.0),
    );
    o
}

type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);

const CRITERIA: [Criterion; 14] = [
    (1, "C4 witness and all-pack at k=3", c1_c4_witness, Some(Duration::from_secs(1))),
    (2, "list packing numbers of K2, K3, P3", c2_complete_graphs, Some(Duration::from_secs(300))),
    (3, "K_{2,6} cover needs four colours", c3_kab_cover, Some(Duration::from_secs(10))),
    (4, "shift construction has no 3-packing", c4_shift, Some(Duration::from_secs(60))),
    (5, "degeneracy packer property suite", c5_degenerate, None),
    (6, "complete-graph packer property suite", c6_complete, None),
    (7, "ordered bipartite packer property suite", c7_bipartite_ordered, None),
    (8, "augmentation packer property suite", c8_augment, None),
    (9, "permanent / transversal / witness equivalence", c9_frobenius_konig, Some(Duration::from_secs(120))),
    (10, "zero-permanent probability, exact and Monte Carlo", c10_permanent_mc, Some(Duration::from_secs(300))),
    (11, "truncated inclusion-exclusion lower bound", c11_inclusion_exclusion, None),
    (12, "zero transversals of permutation sums", c12_zero_transversals, Some(Duration::from_secs(600))),
    (13, "positive correlation of nonzero cells at k=n=2", c13_negative_correlation, None),
    (14, "randomized packers emit only valid packings", c14_randomized_validity, None),
];

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--nocapture" || a == "--show-output");
    let mut all_pass = true;
    let mut reports = Vec::new();
    for &(id, title, run, limit) in &CRITERIA {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            out.check(elapsed <= limit, format!("runtime {elapsed:.2?} within {limit:?}"));
        }
        println!("{} criterion {id:>2}: {title} ({elapsed:.2?})", if out.pass { "PASS" } else { "FAIL" });
        if verbose || !out.pass {
            for l in out.report.lines() {
                println!("        {l}");
            }
        }
        all_pass &= out.pass;
        reports.push(strip_runtime(&out.report));
    }

    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let rerun: Vec<String> =
        pool.install(|| CRITERIA.iter().map(|&(_, _, run, _)| strip_runtime(&run().report)).collect());
    let differing: Vec<u32> = CRITERIA
        .iter()
        .zip(reports.iter().zip(&rerun))
        .filter(|(_, (a, b))| a != b)
        .map(|(c, _)| c.0)
        .collect();
    let det = differing.is_empty();
    println!(
        "{} criterion 15: byte-identical reports on a single-threaded rerun ({:.2?}){}",
        if det { "PASS" } else { "FAIL" },
        start.elapsed(),
        if det { String::new() } else { format!(", differing: {differing:?}") }
    );
    all_pass &= det;
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Drops the timing lines, which are the only nondeterministic content.
fn strip_runtime(report: &str) -> String {
    report.lines().filter(|l| !l.contains("runtime")).map(|l| format!("{l}\n")).collect()
}
