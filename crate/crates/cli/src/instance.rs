//! Instance files: one JSON document holding a graph, its arc weights and
//! metadata.
//!
//! ```json
//! {
//!   "graph": { "n": 2, "edges": [[0, 1]], "loops": [] },
//!   "weights": { "0->1": [1, 0, 0, 0], "1->0": [0, 0, 1, 0] },
//!   "metadata": { "name": "edge", "seed": 7 }
//! }
//! ```

use std::collections::HashSet;
use std::fmt;

use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::Deserialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use qwalk_core::{build_graph, Graph, Quaternion, WeightMap};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub seed: Option<u64>,
    pub description: Option<String>,
    pub graph: Graph,
    pub weights: WeightMap,
    /// Hex SHA-256 of the source text.
    pub sha256: String,
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Rejects repeated object keys anywhere in a document.
struct NoDuplicates;

impl<'de> Deserialize<'de> for NoDuplicates {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(NoDuplicates)
    }
}

impl<'de> Visitor<'de> for NoDuplicates {
    type Value = NoDuplicates;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("any JSON value")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
        let mut seen = HashSet::new();
        while let Some(key) = map.next_key::<String>()? {
            if !seen.insert(key.clone()) {
                return Err(de::Error::custom(format!("duplicate key \"{key}\"")));
            }
            map.next_value::<NoDuplicates>()?;
        }
        Ok(NoDuplicates)
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
        while seq.next_element::<NoDuplicates>()?.is_some() {}
        Ok(NoDuplicates)
    }

    fn visit_bool<E>(self, _: bool) -> Result<Self::Value, E> {
        Ok(NoDuplicates)
    }
    fn visit_i64<E>(self, _: i64) -> Result<Self::Value, E> {
        Ok(NoDuplicates)
    }
    fn visit_u64<E>(self, _: u64) -> Result<Self::Value, E> {
        Ok(NoDuplicates)
    }
    fn visit_f64<E>(self, _: f64) -> Result<Self::Value, E> {
        Ok(NoDuplicates)
    }
    fn visit_str<E>(self, _: &str) -> Result<Self::Value, E> {
        Ok(NoDuplicates)
    }
    fn visit_unit<E>(self) -> Result<Self::Value, E> {
        Ok(NoDuplicates)
    }
}

fn object<'a>(v: &'a Value, path: &str) -> CliResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| input(format!("{path}: expected an object")))
}

fn check_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> CliResult<()> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(input(format!("{path}: unknown field \"{k}\" (expected one of {})", allowed.join(", "))));
        }
    }
    Ok(())
}

fn vertex_id(v: &Value, path: &str) -> CliResult<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| input(format!("{path}: expected a nonnegative integer vertex id, found {v}")))
}

/// Parses `"u->v"`.
pub fn parse_arc_key(key: &str) -> Option<(usize, usize)> {
    let (u, v) = key.split_once("->")?;
    Some((u.trim().parse().ok()?, v.trim().parse().ok()?))
}

pub fn arc_key(u: usize, v: usize) -> String {
    format!("{u}->{v}")
}

fn quaternion_tuple(v: &Value, path: &str) -> CliResult<Quaternion> {
    let arr = v.as_array().ok_or_else(|| input(format!("{path}: expected a 4-tuple [x0, x1, x2, x3], found {v}")))?;
    if arr.len() != 4 {
        return Err(input(format!("{path}: expected 4 components, found {}", arr.len())));
    }
    let mut x = [0.0; 4];
    for (i, c) in arr.iter().enumerate() {
        x[i] = c
            .as_f64()
            .filter(|f| f.is_finite())
            .ok_or_else(|| input(format!("{path}[{i}]: expected a finite number, found {c}")))?;
    }
    Ok(Quaternion::new(x[0], x[1], x[2], x[3]))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses and validates an instance document; `origin` prefixes messages.
pub fn parse_instance(text: &str, origin: &str) -> CliResult<Instance> {
    serde_json::from_str::<NoDuplicates>(text).map_err(|e| input(format!("{origin}: {e}")))?;
    let doc: Value = serde_json::from_str(text).map_err(|e| input(format!("{origin}: {e}")))?;
    let root = object(&doc, "(root)")?;
    check_keys(root, "(root)", &["graph", "weights", "metadata"])?;

    let gv = root.get("graph").ok_or_else(|| input(format!("{origin}: missing field \"graph\"")))?;
    let gobj = object(gv, "graph")?;
    check_keys(gobj, "graph", &["n", "edges", "loops"])?;
    let n = gobj
        .get("n")
        .ok_or_else(|| input("graph.n: missing"))?
        .as_u64()
        .ok_or_else(|| input("graph.n: expected a nonnegative integer"))? as usize;
    let mut edges = Vec::new();
    if let Some(ev) = gobj.get("edges") {
        let arr = ev.as_array().ok_or_else(|| input("graph.edges: expected an array of [u, v] pairs"))?;
        for (k, e) in arr.iter().enumerate() {
            let path = format!("graph.edges[{k}]");
            let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| input(format!("{path}: expected [u, v]")))?;
            edges.push((vertex_id(&pair[0], &format!("{path}[0]"))?, vertex_id(&pair[1], &format!("{path}[1]"))?));
        }
    }
    let mut loops = Vec::new();
    if let Some(lv) = gobj.get("loops") {
        let arr = lv.as_array().ok_or_else(|| input("graph.loops: expected an array of vertex ids"))?;
        for (k, u) in arr.iter().enumerate() {
            loops.push(vertex_id(u, &format!("graph.loops[{k}]"))?);
        }
    }
    let graph = build_graph(n, &edges, &loops).map_err(|e| input(format!("graph: {e}")))?;

    let wv = root.get("weights").ok_or_else(|| input(format!("{origin}: missing field \"weights\"")))?;
    let wobj = object(wv, "weights")?;
    let mut q: Vec<Option<Quaternion>> = vec![None; graph.m_prime()];
    for (key, val) in wobj {
        let path = format!("weights.\"{key}\"");
        let (u, v) = parse_arc_key(key).ok_or_else(|| input(format!("{path}: arc keys look like \"u->v\"")))?;
        let idx = graph.arc_index(u, v).ok_or_else(|| input(format!("{path}: the graph has no arc {u}->{v}")))?;
        let x = quaternion_tuple(val, &path)?;
        if x.is_zero() {
            return Err(input(format!("{path}: weights must be nonzero")));
        }
        q[idx] = Some(x);
    }
    let mut weights = Vec::with_capacity(q.len());
    for (idx, w) in q.into_iter().enumerate() {
        let a = graph.arc(idx);
        weights.push(w.ok_or_else(|| input(format!("weights: missing entry for arc {}", arc_key(a.origin, a.terminus))))?);
    }
    let weights = WeightMap::new(&graph, weights)?;

    let mut name = origin.to_string();
    let mut seed = None;
    let mut description = None;
    if let Some(mv) = root.get("metadata") {
        let m = object(mv, "metadata")?;
        check_keys(m, "metadata", &["name", "seed", "description"])?;
        if let Some(v) = m.get("name") {
            name = v.as_str().ok_or_else(|| input("metadata.name: expected a string"))?.to_string();
        }
        if let Some(v) = m.get("seed") {
            if !v.is_null() {
                seed = Some(v.as_u64().ok_or_else(|| input("metadata.seed: expected a nonnegative integer"))?);
            }
        }
        if let Some(v) = m.get("description") {
            description = Some(v.as_str().ok_or_else(|| input("metadata.description: expected a string"))?.to_string());
        }
    }
    Ok(Instance { name, seed, description, graph, weights, sha256: sha256_hex(text.as_bytes()) })
}

fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("finite weight")
}

/// Serializes an instance, weights in arc order, one arc per line.
pub fn to_json(name: &str, seed: Option<u64>, graph: &Graph, weights: &WeightMap) -> String {
    let edges: Vec<String> = graph.edges().iter().map(|(u, v)| format!("[{u}, {v}]")).collect();
    let loops: Vec<String> = graph.loops().iter().map(|u| u.to_string()).collect();
    let rows: Vec<String> = graph
        .arcs()
        .iter()
        .map(|a| {
            let x = weights.get(a.index);
            let key = Value::String(arc_key(a.origin, a.terminus));
            format!("    {key}: [{}, {}, {}, {}]", num(x.x0), num(x.x1), num(x.x2), num(x.x3))
        })
        .collect();
    let mut meta = format!("\"name\": {}", Value::String(name.to_string()));
    if let Some(s) = seed {
        meta.push_str(&format!(", \"seed\": {s}"));
    }
    format!(
        "{{\n  \"graph\": {{\n    \"n\": {},\n    \"edges\": [{}],\n    \"loops\": [{}]\n  }},\n  \"weights\": {{\n{}\n  }},\n  \"metadata\": {{{meta}}}\n}}\n",
        graph.n(),
        edges.join(", "),
        loops.join(", "),
        rows.join(",\n"),
    )
}
