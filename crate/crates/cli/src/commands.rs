use std::path::Path;

use clap::ValueEnum;
use num::{BigRational, ToPrimitive};
use serde_json::{json, Value};

use listpack::constructive::{
    pack_augment, pack_bipartite_ordered, pack_complete, pack_degenerate,
};
use listpack::exact::{decide_chi_star_corr, decide_chi_star_list, find_packing, Budget, Decision};
use listpack::generators::{gen_c4, gen_kab_cover, gen_kbb_lists, gen_shift_construction};
use listpack::io::{self, Instance};
use listpack::matrixlab::{
    no_zero_transversal_prob_mc, predicted_zero_permanent, zero_permanent_prob_exact,
    zero_permanent_prob_mc, zero_transversal_bound,
};
use listpack::packing::cover_packing_to_list;
use listpack::probabilistic::{pack_bipartite_lll, pack_fractional, FractionalColoring};
use listpack::{degeneracy_order, Error, Packing};

use crate::output::{self, line, record, Failure, EX_BUDGET, EX_FOUND, EX_NONE};
use crate::{ChiKind, Family, MatrixCommand, Method, PackArgs};

fn emit(path: Option<&Path>, v: Value) -> Result<(), Failure> {
    output::write_output(path, &line(&v))
}

fn parse_instance(path: &str) -> Result<Instance, Failure> {
    Ok(io::parse_instance(&output::read_input(path)?)?)
}

/// Packings of list instances are reported in colours, others in slots.
fn to_instance_mode(inst: &Instance, p: Packing) -> Result<Packing, Failure> {
    match inst {
        Instance::List { lists, .. } if p.mode == listpack::PackingMode::Cover => {
            Ok(cover_packing_to_list(lists, &p)?)
        }
        _ => Ok(p),
    }
}

fn packing_fields(p: &Packing) -> Value {
    io::packing_to_value(p)
}

/// Reports budget exhaustion and unmet preconditions as records with their
/// own exit codes; everything else is a failure.
fn soft_error(schema: &str, e: Error, out: Option<&Path>) -> Result<u8, Failure> {
    match e {
        Error::BudgetExceeded { budget } => {
            emit(out, record(schema, json!({"result": "budget", "budget": budget})))?;
            Ok(EX_BUDGET)
        }
        Error::Precondition(_) | Error::NotBipartite => {
            emit(out, record(schema, json!({"result": "precondition", "message": e.to_string()})))?;
            Ok(EX_NONE)
        }
        e => Err(e.into()),
    }
}

pub fn solve(path: &str, budget: Option<u64>) -> Result<u8, Failure> {
    let inst = parse_instance(path)?;
    let cover = inst.to_cover()?;
    let mut budget = Budget::new(output::budget(budget)?);
    match find_packing(&cover, &mut budget) {
        Ok(Some(p)) => {
            let p = to_instance_mode(&inst, p)?;
            let mut v = packing_fields(&p);
            v["result"] = json!("packing");
            v["nodes"] = json!(budget.used());
            emit(None, record("solve", v))?;
            Ok(EX_FOUND)
        }
        Ok(None) => {
            emit(None, record("solve", json!({"result": "none", "nodes": budget.used()})))?;
            Ok(EX_NONE)
        }
        Err(e) => soft_error("solve", e, None),
    }
}

fn require_seed(args: &PackArgs) -> Result<u64, Failure> {
    args.seed.ok_or_else(|| Failure::usage(format!("--method {} needs --seed", method_name(args.method))))
}

fn method_name(m: Method) -> String {
    m.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn require_lists(inst: &Instance) -> Result<(&listpack::Graph, &listpack::ListAssignment), Error> {
    match inst {
        Instance::List { graph, lists } => Ok((graph, lists)),
        Instance::Cover(_) => Err(Error::Precondition("this method needs a list instance".into())),
    }
}

pub fn pack(args: &PackArgs) -> Result<u8, Failure> {
    let randomized = matches!(args.method, Method::Fractional | Method::BipLll);
    let seed = if randomized { Some(require_seed(args)?) } else { None };
    let inst = parse_instance(&args.instance)?;
    let fc = match &args.fc {
        Some(path) => Some(
            serde_json::from_str::<FractionalColoring>(&output::read_input(&path.to_string_lossy())?)
                .map_err(|e| Failure::new(output::EX_DATAERR, format!("fc file: {e}")))?,
        ),
        None => None,
    };
    let out = args.output.as_deref();
    let mut meta = json!({"method": method_name(args.method)});
    let result: Result<Option<Packing>, Error> = (|| match args.method {
        Method::Degenerate => Ok(Some(pack_degenerate(&inst.to_cover()?)?)),
        Method::Augment => {
            let bound = args.chi_c_bound.unwrap_or_else(|| 1 + degeneracy_order(inst.graph()).1);
            meta["chi_c_bound"] = json!(bound);
            Ok(Some(pack_augment(&inst.to_cover()?, bound)?))
        }
        Method::Complete => {
            let (g, lists) = require_lists(&inst)?;
            let n = g.n();
            if g.edges().len() != n * n.saturating_sub(1) / 2 {
                return Err(Error::Precondition("method complete needs a complete graph".into()));
            }
            Ok(Some(pack_complete(lists, lists.require_uniform()?)?))
        }
        Method::BipOrdered => {
            let (g, lists) = require_lists(&inst)?;
            Ok(Some(pack_bipartite_ordered(g, lists)?))
        }
        Method::Fractional => {
            let (g, lists) = require_lists(&inst)?;
            let fc = match &fc {
                Some(fc) => fc.clone(),
                None => FractionalColoring::from_bipartition(g)?,
            };
            let rounds = args.max_rounds.unwrap_or(10 * g.n().max(1) as u64);
            let res = pack_fractional(g, lists, &fc, rounds, seed.expect("checked"))?;
            meta["attempts"] = json!(res.attempts);
            meta["max_rounds"] = json!(res.budget);
            Ok(res.packing)
        }
        Method::BipLll => {
            let res = pack_bipartite_lll(&inst.to_cover()?, args.max_rounds, seed.expect("checked"))?;
            meta["attempts"] = json!(res.attempts);
            meta["max_resamples"] = json!(res.budget);
            Ok(res.packing)
        }
    })();
    match result {
        Ok(Some(p)) => {
            let p = to_instance_mode(&inst, p)?;
            let mut v = packing_fields(&p);
            v["result"] = json!("packing");
            merge(&mut v, meta);
            emit(out, record("packing", v))?;
            Ok(EX_FOUND)
        }
        Ok(None) => {
            meta["result"] = json!("none");
            emit(out, record("packing", meta))?;
            Ok(EX_NONE)
        }
        Err(e) => soft_error("packing", e, out),
    }
}

fn merge(v: &mut Value, extra: Value) {
    if let (Value::Object(a), Value::Object(b)) = (v, extra) {
        a.extend(b);
    }
}

pub fn chi_star(kind: ChiKind, path: &str, k: usize, budget: Option<u64>) -> Result<u8, Failure> {
    let g = io::parse_graph(&output::read_input(path)?)?;
    let mut budget = Budget::new(output::budget(budget)?);
    let kind_name = match kind {
        ChiKind::List => "list",
        ChiKind::Corr => "corr",
    };
    let decision = match kind {
        ChiKind::List => decide_chi_star_list(&g, k, &mut budget).map(|d| match d {
            Decision::Witness(lists) => Decision::Witness(Instance::List { graph: g.clone(), lists }),
            Decision::AllPack { checked } => Decision::AllPack { checked },
        }),
        ChiKind::Corr => decide_chi_star_corr(&g, k, &mut budget).map(|d| match d {
            Decision::Witness(c) => Decision::Witness(Instance::Cover(c)),
            Decision::AllPack { checked } => Decision::AllPack { checked },
        }),
    };
    let base = json!({"kind": kind_name, "k": k});
    match decision {
        Ok(Decision::AllPack { checked }) => {
            let mut v = base;
            merge(&mut v, json!({"result": "all-pack", "checked": checked, "nodes": budget.used()}));
            emit(None, record("chi-star", v))?;
            Ok(EX_FOUND)
        }
        Ok(Decision::Witness(w)) => {
            let mut v = base;
            merge(&mut v, json!({"result": "witness", "witness": io::instance_to_value(&w), "nodes": budget.used()}));
            emit(None, record("chi-star", v))?;
            Ok(EX_NONE)
        }
        Err(e) => soft_error("chi-star", e, None),
    }
}

pub fn gen(family: Family, d: usize, b: usize, out: Option<&Path>) -> Result<u8, Failure> {
    let (name, inst) = match family {
        Family::C4 => {
            let (graph, lists) = gen_c4();
            ("c4", Instance::List { graph, lists })
        }
        Family::KabCover => ("kab-cover", Instance::Cover(gen_kab_cover(d).map_err(usage)?)),
        Family::Shift => {
            let (graph, lists) = gen_shift_construction(d).map_err(usage)?;
            ("shift", Instance::List { graph, lists })
        }
        Family::Kbb => {
            let (graph, lists) = gen_kbb_lists(b).map_err(usage)?;
            ("kbb", Instance::List { graph, lists })
        }
    };
    let mut v = io::instance_to_value(&inst);
    v["family"] = json!(name);
    emit(out, record("instance", v))?;
    Ok(EX_FOUND)
}

fn usage(e: Error) -> Failure {
    Failure::usage(e.to_string())
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn matrix(cmd: MatrixCommand) -> Result<u8, Failure> {
    match cmd {
        MatrixCommand::PermZero { k, p, trials, seed, exact } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::usage(format!("--p {p} is not a probability")));
            }
            if trials == 0 {
                return Err(Failure::usage("--trials must be at least 1"));
            }
            if exact && k > 4 {
                return Err(Failure::usage("--exact supports k <= 4"));
            }
            let e = zero_permanent_prob_mc(k, p, trials, seed)?;
            let predicted = predicted_zero_permanent(k, p);
            let mut v = json!({
                "k": k, "p": p, "trials": trials, "seed": seed, "hits": e.hits,
                "estimate": e.estimate, "ci": e.ci, "predicted": predicted,
                "ratio": finite_or_null(e.estimate / predicted),
            });
            if exact {
                let pr = BigRational::from_float(p).expect("finite probability");
                let value = zero_permanent_prob_exact(k, &pr)?;
                v["exact"] = json!(value.to_f64());
                v["exact_fraction"] = json!(value.to_string());
            }
            emit(None, record("perm-zero", v))?;
        }
        MatrixCommand::ZeroTransversal { n, k, trials, seed, eps } => {
            if trials == 0 || n == 0 || k == 0 {
                return Err(Failure::usage("--n, --k and --trials must be at least 1"));
            }
            let e = no_zero_transversal_prob_mc(n, k, trials, seed)?;
            let bound = zero_transversal_bound(n, k, eps);
            let v = json!({
                "n": n, "k": k, "trials": trials, "seed": seed, "hits": e.hits,
                "estimate": e.estimate, "ci": e.ci, "predicted": bound,
                "ratio": finite_or_null(e.estimate / bound), "eps": eps,
            });
            emit(None, record("zero-transversal", v))?;
        }
    }
    Ok(EX_FOUND)
}
