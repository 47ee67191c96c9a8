//! Checkers comparing decision trees with homology: Morse inequalities,
//! optimality, the equidimensionality criterion and the shedding-vertex
//! decomposition of relative Betti numbers.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::Face;
use crate::error::{Error, Result};
use crate::homology::sublevel_betti;
use crate::poset::{Element, MonotoneMap};
use crate::tree::{evasive_profile, ElementTree, EvasiveProfile};

/// A failed claim with enough context to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finding {
    pub claim: String,
    pub instance: String,
    pub witness: Value,
}

impl Finding {
    pub fn new(claim: impl Into<String>, instance: impl Into<String>, witness: Value) -> Self {
        Self { claim: claim.into(), instance: instance.into(), witness }
    }
}

/// Evasive count against the relative Betti number one degree lower, at one `(p, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelComparison {
    pub value: Element,
    pub cardinality: usize,
    pub evasive: usize,
    pub betti: usize,
}

/// `ev_T(f, p, i)` next to `β̃_{i−1}(Δ_{≤p}, Δ_{<p})` for every value `p` taken by `f`
/// and every cardinality up to `|S|`.
pub fn level_table(t: &ElementTree, f: &MonotoneMap) -> Result<Vec<LevelComparison>> {
    let profile = evasive_profile(t, f)?;
    level_table_from_profile(&profile, f)
}

pub fn level_table_from_profile(profile: &EvasiveProfile, f: &MonotoneMap) -> Result<Vec<LevelComparison>> {
    let mut out = Vec::new();
    let top = f.domain().universe().len();
    for p in f.image() {
        let table = sublevel_betti(f, p)?;
        for i in 0..=top {
            out.push(LevelComparison {
                value: p,
                cardinality: i,
                evasive: profile.count(p, i),
                betti: table.get(i as i32 - 1),
            });
        }
    }
    Ok(out)
}

/// The first `(p, i)` where the evasive count falls below the Betti number, if any.
pub fn check_morse_inequalities(t: &ElementTree, f: &MonotoneMap) -> Result<Option<LevelComparison>> {
    Ok(level_table(t, f)?.into_iter().find(|c| c.evasive < c.betti))
}

/// Equality in every Morse inequality.
pub fn check_optimal(t: &ElementTree, f: &MonotoneMap) -> Result<bool> {
    Ok(level_table(t, f)?.iter().all(|c| c.evasive == c.betti))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquidimensionalCheck {
    /// Every `p`-evasive face has cardinality `d(p)`.
    pub premise: bool,
    /// Optimality, computed only when the premise holds.
    pub optimal: Option<bool>,
    pub finding: Option<Finding>,
}

/// Tests whether evasive cardinalities depend only on the value through `d`, and
/// if so whether the tree is optimal as that premise guarantees.
pub fn check_equidimensional(
    t: &ElementTree,
    f: &MonotoneMap,
    d: impl Fn(Element) -> usize,
) -> Result<EquidimensionalCheck> {
    let profile = evasive_profile(t, f)?;
    let offender = profile.counts().into_keys().find(|&(p, i)| i != d(p));
    if let Some((p, i)) = offender {
        let witness = json!({ "value": p, "cardinality": i, "expected": d(p) });
        return Ok(EquidimensionalCheck {
            premise: false,
            optimal: None,
            finding: Some(Finding::new("evasive cardinality determined by value", "", witness)),
        });
    }
    let table = level_table_from_profile(&profile, f)?;
    let mismatch = table.iter().find(|c| c.evasive != c.betti);
    Ok(EquidimensionalCheck {
        premise: true,
        optimal: Some(mismatch.is_none()),
        finding: mismatch.map(|c| Finding::new("equidimensional evasive faces imply an optimal tree", "", json!(c))),
    })
}

/// One failure of `β̃_d(f) = β̃_d(f∖x) + β̃_{d−1}(f/x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionMismatch {
    pub value: Element,
    pub degree: i32,
    pub whole: usize,
    pub deletion: usize,
    pub link: usize,
}

/// Checks the rank form of the shedding-vertex splitting at every value and degree.
pub fn check_decidability_decomposition(f: &MonotoneMap, x: usize) -> Result<Option<DecompositionMismatch>> {
    if !f.domain().is_vertex(x) {
        return Err(Error::Precondition(format!("{x} is not a vertex of the domain")));
    }
    let del = f.delete_element(x);
    let lk = f.link(Face::singleton(x));
    let top = f.domain().dimension().map_or(0, |d| d as i32) + 1;
    let values: BTreeSet<Element> = f.image();
    for p in values {
        let whole = sublevel_betti(f, p)?;
        let bd = sublevel_betti(&del, p)?;
        let bl = sublevel_betti(&lk, p)?;
        for d in -1..=top {
            let (w, a, b) = (whole.get(d), bd.get(d), bl.get(d - 1));
            if w != a + b {
                return Ok(Some(DecompositionMismatch { value: p, degree: d, whole: w, deletion: a, link: b }));
            }
        }
    }
    Ok(None)
}
