//! JSON file formats. Faces are sorted arrays of ground-set indices.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::collapse::{CollapsePair, CollapseSequence};
use crate::complex::{Complex, Face, GroundSet, VdCertificate};
use crate::error::{Error, Result};
use crate::generators::{Arrangement, Graph};
use crate::homology::BettiTable;
use crate::poset::{Element, MonotoneMap, Poset};
use crate::semimatroid::{Matroid, Semimatroid};
use crate::tree::{ElementTree, SetTree};

/// Values with a JSON file representation.
pub trait JsonFormat: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

/// Parses text, reporting syntax errors with their line and column.
pub fn from_str<T: JsonFormat>(text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    T::from_json(&v)
}

pub fn to_string_pretty<T: JsonFormat>(x: &T) -> String {
    serde_json::to_string_pretty(&x.to_json()).expect("JSON values always serialize")
}

pub fn read_file<T: JsonFormat>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    from_str(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_file<T: JsonFormat>(path: &std::path::Path, x: &T) -> Result<()> {
    std::fs::write(path, to_string_pretty(x) + "\n")?;
    Ok(())
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

pub fn face_to_json(face: Face) -> Value {
    json!(face.to_indices())
}

pub fn face_from_json(v: &Value, ground_len: usize) -> Result<Face> {
    let mut face = Face::EMPTY;
    for x in as_array(v, "face")? {
        let i = as_usize(x, "face index")?;
        if i >= ground_len {
            return Err(Error::Range(format!("index {i} outside a ground set of size {ground_len}")));
        }
        face = face.with(i);
    }
    Ok(face)
}

fn labels_from_json(v: &Value) -> Result<Arc<GroundSet>> {
    let labels = as_array(v, "labels")?
        .iter()
        .map(|l| l.as_str().map(String::from).ok_or_else(|| parse_err("labels must be strings")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(GroundSet::new(labels)?))
}

impl JsonFormat for Complex {
    fn to_json(&self) -> Value {
        let facets = if self.is_void() {
            Value::Null
        } else {
            Value::Array(self.facets().into_iter().map(face_to_json).collect())
        };
        let mut m = Map::new();
        m.insert("labels".into(), json!(self.ground().labels()));
        m.insert("facets".into(), facets);
        if self.universe() != self.ground().full() {
            m.insert("universe".into(), face_to_json(self.universe()));
        }
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let ground = labels_from_json(field(v, "labels")?)?;
        let n = ground.len();
        let universe = match v.get("universe") {
            Some(u) => face_from_json(u, n)?,
            None => ground.full(),
        };
        let c = match field(v, "facets")? {
            Value::Null => Complex::void(ground),
            facets => {
                let facets =
                    as_array(facets, "facets")?.iter().map(|f| face_from_json(f, n)).collect::<Result<Vec<_>>>()?;
                Complex::from_facets(ground, &facets)?
            }
        };
        c.with_universe(universe)
    }
}

impl JsonFormat for Poset {
    fn to_json(&self) -> Value {
        match self {
            Poset::Naturals => json!({ "kind": "nat" }),
            Poset::Explicit { elements, le } => json!({ "kind": "explicit", "elements": elements, "le": le }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match field(v, "kind")?.as_str() {
            Some("nat") => Ok(Poset::Naturals),
            Some("explicit") => {
                let elements = as_array(field(v, "elements")?, "elements")?
                    .iter()
                    .map(|e| e.as_str().map(String::from).ok_or_else(|| parse_err("poset elements must be strings")))
                    .collect::<Result<Vec<_>>>()?;
                let le = as_array(field(v, "le")?, "le")?
                    .iter()
                    .map(|row| {
                        as_array(row, "le row")?
                            .iter()
                            .map(|b| b.as_bool().ok_or_else(|| parse_err("le entries must be booleans")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Poset::explicit(elements, le)
            }
            _ => Err(parse_err("poset kind must be \"nat\" or \"explicit\"")),
        }
    }
}

fn element_from_json(v: &Value, poset: &Poset) -> Result<Element> {
    match v {
        Value::String(name) => poset.index_of(name).ok_or_else(|| parse_err(format!("unknown poset element {name:?}"))),
        other => as_usize(other, "poset element"),
    }
}

impl JsonFormat for MonotoneMap {
    fn to_json(&self) -> Value {
        let values: Vec<Value> = self
            .domain()
            .sorted_faces()
            .into_iter()
            .map(|f| json!([face_to_json(f), self.value(f).expect("total")]))
            .collect();
        json!({ "complex": self.domain().to_json(), "poset": self.poset().to_json(), "values": values })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let domain = Complex::from_json(field(v, "complex")?)?;
        let poset = Poset::from_json(field(v, "poset")?)?;
        let n = domain.ground().len();
        let mut values = BTreeMap::new();
        for pair in as_array(field(v, "values")?, "values")? {
            let pair = as_array(pair, "value entry")?;
            if pair.len() != 2 {
                return Err(parse_err("value entries are [face, element]"));
            }
            values.insert(face_from_json(&pair[0], n)?, element_from_json(&pair[1], &poset)?);
        }
        MonotoneMap::new(domain, poset, values)
    }
}

fn leaf_json(p: Element) -> Value {
    json!({ "leaf": p })
}

fn leaf_from_json(v: &Value) -> Result<Option<Element>> {
    match v {
        Value::String(s) if s == "N" => Ok(None),
        other => as_usize(other, "leaf").map(Some),
    }
}

impl JsonFormat for ElementTree {
    fn to_json(&self) -> Value {
        match self {
            ElementTree::Leaf(p) => leaf_json(*p),
            ElementTree::LeafN => json!({ "leaf": "N" }),
            ElementTree::Query { element, in_child, out_child } => {
                json!({ "query": [element], "in": in_child.to_json(), "out": out_child.to_json() })
            }
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if let Some(leaf) = v.get("leaf") {
            return Ok(leaf_from_json(leaf)?.map_or(ElementTree::LeafN, ElementTree::Leaf));
        }
        let face = face_from_json(field(v, "query")?, 64)?;
        if face.len() != 1 {
            return Err(parse_err("element tree queries must name exactly one element"));
        }
        Ok(ElementTree::Query {
            element: face.min_element().expect("singleton"),
            in_child: Box::new(ElementTree::from_json(field(v, "in")?)?),
            out_child: Box::new(ElementTree::from_json(field(v, "out")?)?),
        })
    }
}

impl JsonFormat for SetTree {
    fn to_json(&self) -> Value {
        match self {
            SetTree::Leaf(p) => leaf_json(*p),
            SetTree::LeafN => json!({ "leaf": "N" }),
            SetTree::Query { face, in_child, out_child } => {
                json!({ "query": face_to_json(*face), "in": in_child.to_json(), "out": out_child.to_json() })
            }
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if let Some(leaf) = v.get("leaf") {
            return Ok(leaf_from_json(leaf)?.map_or(SetTree::LeafN, SetTree::Leaf));
        }
        Ok(SetTree::Query {
            face: face_from_json(field(v, "query")?, 64)?,
            in_child: Box::new(SetTree::from_json(field(v, "in")?)?),
            out_child: Box::new(SetTree::from_json(field(v, "out")?)?),
        })
    }
}

fn rank_table_json(ranks: impl Iterator<Item = (Face, usize)>) -> Value {
    let mut rows: Vec<(Face, usize)> = ranks.collect();
    rows.sort_by(|a, b| crate::complex::face_order(&a.0, &b.0));
    Value::Array(rows.into_iter().map(|(f, r)| json!([face_to_json(f), r])).collect())
}

fn rank_table_from_json(v: &Value, n: usize) -> Result<BTreeMap<Face, usize>> {
    let mut out = BTreeMap::new();
    for row in as_array(v, "rank")? {
        let row = as_array(row, "rank entry")?;
        if row.len() != 2 {
            return Err(parse_err("rank entries are [face, integer]"));
        }
        let face = face_from_json(&row[0], n)?;
        if out.insert(face, as_usize(&row[1], "rank")?).is_some() {
            return Err(parse_err(format!("rank of {face:?} given twice")));
        }
    }
    Ok(out)
}

impl JsonFormat for Semimatroid {
    fn to_json(&self) -> Value {
        json!({ "complex": self.complex().to_json(), "rank": rank_table_json(self.ranks()) })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let complex = Complex::from_json(field(v, "complex")?)?;
        let rank = rank_table_from_json(field(v, "rank")?, complex.ground().len())?;
        Semimatroid::new(complex, rank)
    }
}

impl JsonFormat for Matroid {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("labels".into(), json!(self.ground().labels()));
        if self.elements() != self.ground().full() {
            m.insert("elements".into(), face_to_json(self.elements()));
        }
        m.insert("rank".into(), rank_table_json(self.ranks()));
        Value::Object(m)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let ground = labels_from_json(field(v, "labels")?)?;
        let n = ground.len();
        let elements = match v.get("elements") {
            Some(e) => face_from_json(e, n)?,
            None => ground.full(),
        };
        let rank = rank_table_from_json(field(v, "rank")?, n)?;
        Matroid::new(ground, elements, rank)
    }
}

fn rational_to_json(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    let s = v.as_str().ok_or_else(|| parse_err("rationals are strings like \"3/4\""))?;
    s.trim().parse::<BigRational>().map_err(|_| parse_err(format!("bad rational {s:?}")))
}

impl JsonFormat for Arrangement {
    fn to_json(&self) -> Value {
        let hs: Vec<Value> = self
            .hyperplanes
            .iter()
            .map(|(n, b)| {
                json!({ "normal": n.iter().map(rational_to_json).collect::<Vec<_>>(), "offset": rational_to_json(b) })
            })
            .collect();
        json!({ "dim": self.dim, "hyperplanes": hs })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dim = as_usize(field(v, "dim")?, "dim")?;
        let mut hyperplanes = Vec::new();
        for h in as_array(field(v, "hyperplanes")?, "hyperplanes")? {
            let normal =
                as_array(field(h, "normal")?, "normal")?.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?;
            hyperplanes.push((normal, rational_from_json(field(h, "offset")?)?));
        }
        Arrangement::new(dim, hyperplanes)
    }
}

impl JsonFormat for Graph {
    fn to_json(&self) -> Value {
        json!({ "vertices": self.vertices, "edges": self.edges.iter().map(|(u, v)| [u, v]).collect::<Vec<_>>() })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let vertices = as_usize(field(v, "vertices")?, "vertices")?;
        let mut edges = Vec::new();
        for e in as_array(field(v, "edges")?, "edges")? {
            let e = as_array(e, "edge")?;
            if e.len() != 2 {
                return Err(parse_err("edges are [u, v] pairs"));
            }
            edges.push((as_usize(&e[0], "vertex")?, as_usize(&e[1], "vertex")?));
        }
        Graph::new(vertices, edges)
    }
}

impl JsonFormat for CollapseSequence {
    fn to_json(&self) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|s| json!({ "free": face_to_json(s.free), "cofacet": face_to_json(s.cofacet) }))
                .collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self> {
        let steps = as_array(v, "collapse sequence")?
            .iter()
            .map(|s| {
                Ok(CollapsePair {
                    free: face_from_json(field(s, "free")?, 64)?,
                    cofacet: face_from_json(field(s, "cofacet")?, 64)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CollapseSequence { steps })
    }
}

impl JsonFormat for VdCertificate {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificates serialize")
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(serde_json::from_value(v.clone())?)
    }
}

impl JsonFormat for BettiTable {
    fn to_json(&self) -> Value {
        BettiTable::to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mut table = BettiTable::default();
        for (d, b) in field(v, "betti")?.as_object().ok_or_else(|| parse_err("betti must be an object"))? {
            let d: i32 = d.parse().map_err(|_| parse_err(format!("bad degree {d:?}")))?;
            table.betti.insert(d, as_usize(b, "Betti number")?);
        }
        if let Some(t) = v.get("torsion").and_then(Value::as_object) {
            for (d, list) in t {
                let d: i32 = d.parse().map_err(|_| parse_err(format!("bad degree {d:?}")))?;
                let factors = as_array(list, "torsion")?
                    .iter()
                    .map(|x| {
                        x.as_str()
                            .and_then(|s| s.parse().ok())
                            .ok_or_else(|| parse_err("torsion coefficients are decimal strings"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                table.torsion.insert(d, factors);
            }
        }
        for d in table.betti.keys().copied().collect::<Vec<_>>() {
            table.torsion.entry(d).or_default();
        }
        Ok(table)
    }
}

/// An order is a JSON array listing element indices from smallest to largest.
pub fn order_from_json(v: &Value) -> Result<Vec<usize>> {
    as_array(v, "order")?.iter().map(|x| as_usize(x, "order entry")).collect()
}
