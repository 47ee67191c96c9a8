//! Element and set decision trees for monotone maps.
//!
//! Children are named by meaning rather than side: `in_child` is followed when
//! the queried element (or face) is contained in the input set, `out_child`
//! otherwise. The leaf order visits the `in` branch first.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::complex::{Face, MinorKind};
use crate::error::{Error, Result};
use crate::polynomial::BivariatePolynomial;
use crate::poset::{Element, MonotoneMap, Poset};

/// Largest universe on which the exhaustive subset walk is attempted.
pub const MAX_EXHAUSTIVE: usize = 22;

/// Label of a leaf reached by an evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Value(Element),
    N,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementTree {
    Leaf(Element),
    LeafN,
    Query { element: usize, in_child: Box<ElementTree>, out_child: Box<ElementTree> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetTree {
    Leaf(Element),
    LeafN,
    Query { face: Face, in_child: Box<SetTree>, out_child: Box<SetTree> },
}

/// Why a tree fails to be a decision tree for a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeViolation {
    pub witness: Option<Face>,
    pub reason: String,
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            Some(w) => write!(f, "{} (witness {w:?})", self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

fn violation(witness: Option<Face>, reason: impl Into<String>) -> TreeViolation {
    TreeViolation { witness, reason: reason.into() }
}

/// `Query(x, in, out)`.
pub fn graft(x: usize, in_tree: ElementTree, out_tree: ElementTree) -> ElementTree {
    ElementTree::Query { element: x, in_child: Box::new(in_tree), out_child: Box::new(out_tree) }
}

/// `Query(x, N, out)`, used when `{x}` is not a face.
pub fn graft_nonface(x: usize, out_tree: ElementTree) -> ElementTree {
    graft(x, ElementTree::LeafN, out_tree)
}

impl ElementTree {
    pub fn evaluate(&self, sigma: Face) -> Outcome {
        self.walk(sigma).0
    }

    /// Outcome and number of queries made.
    pub fn walk(&self, sigma: Face) -> (Outcome, usize) {
        let mut node = self;
        let mut depth = 0;
        loop {
            match node {
                ElementTree::Leaf(p) => return (Outcome::Value(*p), depth),
                ElementTree::LeafN => return (Outcome::N, depth),
                ElementTree::Query { element, in_child, out_child } => {
                    depth += 1;
                    node = if sigma.contains(*element) { in_child } else { out_child };
                }
            }
        }
    }

    /// Increments every value leaf; only meaningful over the naturals.
    pub fn shift(&self, poset: &Poset) -> Result<ElementTree> {
        if !poset.is_naturals() {
            return Err(Error::Domain("shift needs leaves in the naturals".into()));
        }
        Ok(self.shifted())
    }

    pub(crate) fn shifted(&self) -> ElementTree {
        match self {
            ElementTree::Leaf(p) => ElementTree::Leaf(p + 1),
            ElementTree::LeafN => ElementTree::LeafN,
            ElementTree::Query { element, in_child, out_child } => {
                graft(*element, in_child.shifted(), out_child.shifted())
            }
        }
    }

    pub fn to_set_tree(&self) -> SetTree {
        match self {
            ElementTree::Leaf(p) => SetTree::Leaf(*p),
            ElementTree::LeafN => SetTree::LeafN,
            ElementTree::Query { element, in_child, out_child } => SetTree::Query {
                face: Face::singleton(*element),
                in_child: Box::new(in_child.to_set_tree()),
                out_child: Box::new(out_child.to_set_tree()),
            },
        }
    }

    /// The element queried at the root, if any.
    pub fn root_element(&self) -> Option<usize> {
        match self {
            ElementTree::Query { element, .. } => Some(*element),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ElementTree::Query { in_child, out_child, .. } => 1 + in_child.depth().max(out_child.depth()),
            _ => 0,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            ElementTree::Query { in_child, out_child, .. } => 1 + in_child.node_count() + out_child.node_count(),
            _ => 1,
        }
    }
}

/// Exhaustive check that `t` is an element decision tree for `f`: the recursive
/// structural cases, then every subset of the universe evaluates to `f(σ)` on
/// faces and to `N` off them.
pub fn check_element_tree(t: &ElementTree, f: &MonotoneMap) -> Result<(), TreeViolation> {
    check_element_structure(t, f)?;
    let universe = f.domain().universe();
    if universe.len() > MAX_EXHAUSTIVE {
        return Err(violation(None, format!("universe of {} elements too large", universe.len())));
    }
    for sigma in universe.subsets() {
        let expected = f.value(sigma).map_or(Outcome::N, Outcome::Value);
        let got = t.evaluate(sigma);
        if got != expected {
            return Err(violation(Some(sigma), format!("returned {got:?}, expected {expected:?}")));
        }
    }
    Ok(())
}

fn check_element_structure(t: &ElementTree, f: &MonotoneMap) -> Result<(), TreeViolation> {
    let domain = f.domain();
    match t {
        ElementTree::Leaf(p) => {
            let full = 1usize << domain.universe().len();
            if domain.len() != full {
                return Err(violation(None, "leaf over a residual complex that is not the full simplex"));
            }
            match f.constant_value() {
                Some(c) if c == *p => Ok(()),
                _ => {
                    let w = f.values().find(|(_, v)| v != p).map(|(s, _)| s);
                    Err(violation(w, format!("leaf {p} but the residual map is not constant {p}")))
                }
            }
        }
        ElementTree::LeafN => Err(violation(None, "N leaf outside a nonface query")),
        ElementTree::Query { element, in_child, out_child } => {
            let x = *element;
            if !domain.universe().contains(x) {
                return Err(violation(None, format!("element {x} queried twice or outside the ground set")));
            }
            if domain.is_vertex(x) {
                check_element_structure(in_child, &f.link(Face::singleton(x)))?;
            } else if **in_child != ElementTree::LeafN {
                return Err(violation(
                    Some(Face::singleton(x)),
                    format!("{{{x}}} is not a face but the in-branch is not N"),
                ));
            }
            check_element_structure(out_child, &f.delete_element(x))
        }
    }
}

/// Evasive faces grouped by `(value, cardinality)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvasiveProfile {
    faces: BTreeMap<(Element, usize), Vec<Face>>,
}

impl EvasiveProfile {
    fn insert(&mut self, value: Element, face: Face) {
        self.faces.entry((value, face.len())).or_default().push(face);
    }

    fn finish(mut self) -> Self {
        for v in self.faces.values_mut() {
            v.sort();
        }
        self
    }

    pub fn count(&self, value: Element, cardinality: usize) -> usize {
        self.faces.get(&(value, cardinality)).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> BTreeMap<(Element, usize), usize> {
        self.faces.iter().map(|(&k, v)| (k, v.len())).collect()
    }

    pub fn faces(&self, value: Element, cardinality: usize) -> &[Face] {
        self.faces.get(&(value, cardinality)).map_or(&[], Vec::as_slice)
    }

    /// All evasive faces.
    pub fn all_faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.values().flatten().copied()
    }

    pub fn total(&self) -> usize {
        self.faces.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// `Σ |Ev_{j,i}| x^j q^i`.
    pub fn polynomial(&self) -> BivariatePolynomial {
        let mut p = BivariatePolynomial::qx_zero();
        for (&(j, i), faces) in &self.faces {
            p.add_term(i as u32, j as u32, faces.len() as i64);
        }
        p
    }
}

/// A face is evasive when its evaluation makes `|S|` queries.
pub fn evasive_profile(t: &ElementTree, f: &MonotoneMap) -> Result<EvasiveProfile> {
    check_element_tree(t, f).map_err(|v| Error::Precondition(format!("invalid element tree: {v}")))?;
    let n = f.domain().universe().len();
    let mut profile = EvasiveProfile::default();
    for (face, value) in f.values() {
        if t.walk(face).1 == n {
            profile.insert(value, face);
        }
    }
    Ok(profile.finish())
}

/// `E(T, f; q, x)` for a map into the naturals.
pub fn evasive_polynomial(t: &ElementTree, f: &MonotoneMap) -> Result<BivariatePolynomial> {
    if !f.poset().is_naturals() {
        return Err(Error::Domain("evasive polynomial needs a map into the naturals".into()));
    }
    Ok(evasive_profile(t, f)?.polynomial())
}

/// Grows an element tree for `f`. `pick` receives the residual map and whether a
/// leaf is allowed there; it returns the element to query, or `None` to stop
/// (honoured only when a leaf is allowed).
pub fn grow_element_tree<F>(f: &MonotoneMap, pick: &mut F) -> ElementTree
where
    F: FnMut(&MonotoneMap, bool) -> Option<usize>,
{
    let domain = f.domain();
    let universe = domain.universe();
    let leaf_ok = domain.len() == 1usize << universe.len() && f.constant_value().is_some();
    if universe.is_empty() {
        return ElementTree::Leaf(f.value(Face::EMPTY).expect("nonvoid residual"));
    }
    let x = match pick(f, leaf_ok) {
        None if leaf_ok => return ElementTree::Leaf(f.constant_value().expect("constant")),
        None => universe.min_element().expect("nonempty"),
        Some(x) => {
            assert!(universe.contains(x), "picked element outside the residual universe");
            x
        }
    };
    let out = grow_element_tree(&f.delete_element(x), pick);
    if domain.is_vertex(x) {
        graft(x, grow_element_tree(&f.link(Face::singleton(x)), pick), out)
    } else {
        graft_nonface(x, out)
    }
}

/// Queries elements in `order` until the universe is exhausted.
pub fn full_depth_tree(f: &MonotoneMap, order: &[usize]) -> ElementTree {
    grow_element_tree(f, &mut |m: &MonotoneMap, _| order.iter().copied().find(|&x| m.domain().universe().contains(x)))
}

/// Random valid tree: random pivots, stopping at a permitted leaf with probability `stop`.
pub fn random_element_tree<R: Rng>(f: &MonotoneMap, rng: &mut R, stop: f64) -> ElementTree {
    grow_element_tree(f, &mut |m: &MonotoneMap, leaf_ok| {
        if leaf_ok && rng.gen_bool(stop) {
            return None;
        }
        let elems: Vec<usize> = m.domain().universe().iter().collect();
        Some(elems[rng.gen_range(0..elems.len())])
    })
}

/// Leaf of a set tree in leaf order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafRef {
    pub index: usize,
    pub outcome: Outcome,
    /// Query faces on the root path with the branch taken (`true` = in).
    pub path: Vec<(Face, bool)>,
}

/// Boolean interval `[lower, upper]` of faces reaching one leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub leaf: usize,
    pub value: Element,
    pub lower: Face,
    pub upper: Face,
}

impl Interval {
    pub fn size(&self) -> usize {
        1usize << (self.upper.len() - self.lower.len())
    }

    pub fn is_singleton(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, face: Face) -> bool {
        self.lower.is_subset(face) && face.is_subset(self.upper)
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.upper.difference(self.lower).subsets().map(|s| s.union(self.lower))
    }
}

impl SetTree {
    pub fn evaluate(&self, sigma: Face) -> Outcome {
        self.outcome_at(self.locate(sigma))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            SetTree::Query { in_child, out_child, .. } => in_child.leaf_count() + out_child.leaf_count(),
            _ => 1,
        }
    }

    /// Position in leaf order of the leaf reached by `sigma`.
    pub fn locate(&self, sigma: Face) -> usize {
        let mut node = self;
        let mut index = 0;
        loop {
            match node {
                SetTree::Query { face, in_child, out_child } => {
                    if face.is_subset(sigma) {
                        node = in_child;
                    } else {
                        index += in_child.leaf_count();
                        node = out_child;
                    }
                }
                _ => return index,
            }
        }
    }

    fn outcome_at(&self, index: usize) -> Outcome {
        match self {
            SetTree::Leaf(p) => Outcome::Value(*p),
            SetTree::LeafN => Outcome::N,
            SetTree::Query { in_child, out_child, .. } => {
                let k = in_child.leaf_count();
                if index < k {
                    in_child.outcome_at(index)
                } else {
                    out_child.outcome_at(index - k)
                }
            }
        }
    }
}

/// Depth-first leaf order, `in` branch first.
pub fn leaf_order(t: &SetTree) -> Vec<LeafRef> {
    fn go(t: &SetTree, path: &mut Vec<(Face, bool)>, out: &mut Vec<LeafRef>) {
        match t {
            SetTree::Leaf(p) => out.push(LeafRef { index: out.len(), outcome: Outcome::Value(*p), path: path.clone() }),
            SetTree::LeafN => out.push(LeafRef { index: out.len(), outcome: Outcome::N, path: path.clone() }),
            SetTree::Query { face, in_child, out_child } => {
                path.push((*face, true));
                go(in_child, path, out);
                path.pop();
                path.push((*face, false));
                go(out_child, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Structural check of a set decision tree plus agreement with `f` on every face.
pub fn check_set_tree(t: &SetTree, f: &MonotoneMap) -> Result<(), TreeViolation> {
    check_set_structure(t, f)?;
    for (face, value) in f.values() {
        let got = t.evaluate(face);
        if got != Outcome::Value(value) {
            return Err(violation(Some(face), format!("returned {got:?}, expected {value}")));
        }
    }
    Ok(())
}

fn check_set_structure(t: &SetTree, f: &MonotoneMap) -> Result<(), TreeViolation> {
    let domain = f.domain();
    match t {
        SetTree::LeafN if domain.is_void() => Ok(()),
        SetTree::LeafN => Err(violation(None, "N leaf over a nonvoid residual complex")),
        SetTree::Leaf(p) => {
            if !domain.is_simplex() {
                return Err(violation(None, "value leaf over a residual complex that is not a simplex"));
            }
            match f.constant_value() {
                Some(c) if c == *p => Ok(()),
                _ => Err(violation(None, format!("leaf {p} but the residual map is not constant {p}"))),
            }
        }
        SetTree::Query { face, in_child, out_child } => {
            if face.is_empty() || !face.is_subset(domain.universe()) {
                return Err(violation(Some(*face), "query label must be a nonempty subset of the universe"));
            }
            if domain.contains(*face) {
                let link = f.minor(*face, MinorKind::Link).expect("face of the domain");
                check_set_structure(in_child, &link)?;
            } else if **in_child != SetTree::LeafN {
                return Err(violation(Some(*face), "query label is not a face but the in-branch is not N"));
            }
            check_set_structure(out_child, &f.deletion(*face))
        }
    }
}

/// Groups the faces of `f`'s domain by leaf and checks each group is a boolean
/// interval on which `f` is constant. Intervals come back in leaf order.
pub fn interval_partition(t: &SetTree, f: &MonotoneMap) -> Result<Vec<Interval>> {
    check_set_tree(t, f).map_err(|v| Error::Precondition(format!("invalid set tree: {v}")))?;
    let mut groups: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
    for face in f.domain().faces() {
        groups.entry(t.locate(face)).or_default().push(face);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (leaf, faces) in groups {
        let lower = faces.iter().fold(faces[0], |acc, &s| acc.intersection(s));
        let upper = faces.iter().fold(Face::EMPTY, |acc, &s| acc.union(s));
        let value = f.value(faces[0]).expect("face of the domain");
        let interval = Interval { leaf, value, lower, upper };
        if faces.len() != interval.size() || faces.iter().any(|&s| f.value(s) != Some(value)) {
            return Err(Error::Invariant(format!(
                "leaf {leaf} receives {} faces that do not form a boolean interval with constant value",
                faces.len()
            )));
        }
        out.push(interval);
    }
    Ok(out)
}

/// Evasive faces of a set tree: those alone in their interval.
pub fn set_tree_evasive_profile(t: &SetTree, f: &MonotoneMap) -> Result<EvasiveProfile> {
    let mut profile = EvasiveProfile::default();
    for iv in interval_partition(t, f)? {
        if iv.is_singleton() {
            profile.insert(iv.value, iv.lower);
        }
    }
    Ok(profile.finish())
}
