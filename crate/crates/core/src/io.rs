//! JSON formats.
//!
//! * list instance: `{"n", "edges": [[u,v],…], "lists": [[c,…],…]}`
//! * cover instance: `{"n", "edges", "k", "matchings": {"u-v": [[i,j],…]}}`
//! * packing: `{"k", "mode": "list"|"cover", "colourings": [[…],…]}`
//!
//! Unknown keys are ignored, so records may carry extra metadata such as a
//! schema stamp. Edges missing from `matchings` carry the empty matching.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{
    Colour, CorrespondenceCover, Error, Graph, ListAssignment, Packing, PackingMode, Result,
};

/// A parsed problem instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    List { graph: Graph, lists: ListAssignment },
    Cover(CorrespondenceCover),
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::List { graph, .. } => graph,
            Instance::Cover(c) => c.graph(),
        }
    }

    /// The list-cover of a list instance, or the cover itself.
    pub fn to_cover(&self) -> Result<CorrespondenceCover> {
        match self {
            Instance::List { graph, lists } => crate::list_to_cover(graph, lists),
            Instance::Cover(c) => Ok(c.clone()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct ListJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    lists: Vec<Vec<Colour>>,
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    k: usize,
    #[serde(default)]
    matchings: BTreeMap<String, Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct PackingJson {
    k: usize,
    mode: PackingMode,
    colourings: Vec<Vec<Colour>>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn edge_key(u: usize, v: usize) -> String {
    format!("{u}-{v}")
}

fn parse_edge_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("matching key {key:?} is not of the form \"u-v\""));
    let (u, v) = key.split_once('-').ok_or_else(bad)?;
    Ok((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let g: GraphJson = serde_json::from_str(text).map_err(parse_err)?;
    Graph::new(g.n, g.edges)
}

pub fn graph_to_value(g: &Graph) -> Value {
    serde_json::to_value(GraphJson { n: g.n(), edges: g.edges().to_vec() }).expect("serializable")
}

/// Parses a list or cover instance, telling them apart by the presence of
/// `"lists"` or `"k"`. Cover instances are validated.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let value: Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("instance must be a JSON object".into()))?;
    if obj.contains_key("lists") {
        let raw: ListJson = serde_json::from_value(value).map_err(parse_err)?;
        let graph = Graph::new(raw.n, raw.edges)?;
        if raw.lists.len() != raw.n {
            return Err(Error::SizeMismatch(format!("{} lists for {} vertices", raw.lists.len(), raw.n)));
        }
        let lists = ListAssignment::new(raw.lists)?;
        Ok(Instance::List { graph, lists })
    } else if obj.contains_key("k") {
        let raw: CoverJson = serde_json::from_value(value).map_err(parse_err)?;
        let graph = Graph::new(raw.n, raw.edges)?;
        let mut matchings = BTreeMap::new();
        for (key, pairs) in raw.matchings {
            matchings.insert(parse_edge_key(&key)?, pairs);
        }
        let cover = CorrespondenceCover::new(graph, raw.k, matchings);
        cover.validate().map_err(Error::InvalidCover)?;
        Ok(Instance::Cover(cover))
    } else {
        Err(Error::Parse("instance needs either \"lists\" or \"k\"".into()))
    }
}

pub fn instance_to_value(inst: &Instance) -> Value {
    match inst {
        Instance::List { graph, lists } => serde_json::to_value(ListJson {
            n: graph.n(),
            edges: graph.edges().to_vec(),
            lists: lists.lists().to_vec(),
        }),
        Instance::Cover(c) => serde_json::to_value(CoverJson {
            n: c.n(),
            edges: c.graph().edges().to_vec(),
            k: c.k(),
            matchings: c.matchings().iter().map(|(&(u, v), m)| (edge_key(u, v), m.clone())).collect(),
        }),
    }
    .expect("serializable")
}

pub fn instance_to_json(inst: &Instance) -> String {
    instance_to_value(inst).to_string()
}

pub fn parse_packing(text: &str) -> Result<Packing> {
    let raw: PackingJson = serde_json::from_str(text).map_err(parse_err)?;
    if raw.colourings.len() != raw.k {
        return Err(Error::SizeMismatch(format!(
            "k={} but {} colourings given",
            raw.k,
            raw.colourings.len()
        )));
    }
    Ok(Packing { mode: raw.mode, colourings: raw.colourings })
}

pub fn packing_to_value(p: &Packing) -> Value {
    serde_json::to_value(PackingJson { k: p.k(), mode: p.mode, colourings: p.colourings.clone() })
        .expect("serializable")
}

pub fn packing_to_json(p: &Packing) -> String {
    packing_to_value(p).to_string()
}
