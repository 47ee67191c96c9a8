//! Posets and monotone maps from complexes into them.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Complex, Face, MinorKind};
use crate::error::{Error, Result};

/// Poset element: a natural number for [`Poset::Naturals`], an index otherwise.
pub type Element = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poset {
    /// The chain `0 < 1 < 2 < ...`.
    Naturals,
    Explicit {
        elements: Vec<String>,
        le: Vec<Vec<bool>>,
    },
}

impl Poset {
    /// Builds an explicit poset, checking that `le` is a partial order.
    pub fn explicit(elements: Vec<String>, le: Vec<Vec<bool>>) -> Result<Self> {
        let n = elements.len();
        if le.len() != n || le.iter().any(|row| row.len() != n) {
            return Err(Error::Argument(format!("order relation must be {n}x{n}")));
        }
        if elements.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::Argument("poset element names must be distinct".into()));
        }
        for a in 0..n {
            if !le[a][a] {
                return Err(Error::Argument(format!("relation not reflexive at {}", elements[a])));
            }
            for b in 0..n {
                if a != b && le[a][b] && le[b][a] {
                    return Err(Error::Argument(format!(
                        "relation not antisymmetric: {} and {}",
                        elements[a], elements[b]
                    )));
                }
                for c in 0..n {
                    if le[a][b] && le[b][c] && !le[a][c] {
                        return Err(Error::Argument(format!(
                            "relation not transitive: {} <= {} <= {}",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(Poset::Explicit { elements, le })
    }

    pub fn is_naturals(&self) -> bool {
        matches!(self, Poset::Naturals)
    }

    pub fn contains(&self, a: Element) -> bool {
        match self {
            Poset::Naturals => true,
            Poset::Explicit { elements, .. } => a < elements.len(),
        }
    }

    pub fn le(&self, a: Element, b: Element) -> bool {
        match self {
            Poset::Naturals => a <= b,
            Poset::Explicit { le, .. } => le[a][b],
        }
    }

    pub fn lt(&self, a: Element, b: Element) -> bool {
        a != b && self.le(a, b)
    }

    pub fn name(&self, a: Element) -> String {
        match self {
            Poset::Naturals => a.to_string(),
            Poset::Explicit { elements, .. } => elements[a].clone(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<Element> {
        match self {
            Poset::Naturals => name.parse().ok(),
            Poset::Explicit { elements, .. } => elements.iter().position(|e| e == name),
        }
    }
}

/// Total, order-preserving map from the faces of a complex into a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    domain: Complex,
    poset: Poset,
    values: BTreeMap<Face, Element>,
}

impl MonotoneMap {
    /// Checks totality and that values lie in the poset; monotonicity is checked
    /// separately by [`MonotoneMap::check_monotone`].
    pub fn new(domain: Complex, poset: Poset, values: BTreeMap<Face, Element>) -> Result<Self> {
        for face in domain.faces() {
            match values.get(&face) {
                None => return Err(Error::Totality(format!("no value for face {face:?}"))),
                Some(&v) if !poset.contains(v) => {
                    return Err(Error::Argument(format!("value {v} of {face:?} not in the poset")))
                }
                _ => {}
            }
        }
        if let Some(extra) = values.keys().find(|f| !domain.contains(**f)) {
            return Err(Error::Argument(format!("value given for non-face {extra:?}")));
        }
        Ok(Self { domain, poset, values })
    }

    pub fn from_fn(domain: Complex, poset: Poset, mut f: impl FnMut(Face) -> Element) -> Self {
        let values = domain.faces().map(|s| (s, f(s))).collect();
        Self { domain, poset, values }
    }

    /// `σ ↦ |σ|` into the naturals.
    pub fn cardinality(domain: Complex) -> Self {
        Self::from_fn(domain, Poset::Naturals, |s| s.len())
    }

    pub fn constant(domain: Complex, poset: Poset, c: Element) -> Self {
        Self::from_fn(domain, poset, |_| c)
    }

    pub fn domain(&self) -> &Complex {
        &self.domain
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn value(&self, face: Face) -> Option<Element> {
        self.values.get(&face).copied()
    }

    pub fn values(&self) -> impl Iterator<Item = (Face, Element)> + '_ {
        self.values.iter().map(|(&f, &v)| (f, v))
    }

    /// Distinct values taken, in increasing element order.
    pub fn image(&self) -> BTreeSet<Element> {
        self.values.values().copied().collect()
    }

    /// The common value when the map is constant on a nonvoid domain.
    pub fn constant_value(&self) -> Option<Element> {
        let mut it = self.values.values();
        let first = *it.next()?;
        it.all(|&v| v == first).then_some(first)
    }

    /// Covering pairs `(σ, σ ∪ {x})` with `f(σ) ≰ f(σ ∪ {x})`.
    pub fn check_monotone(&self) -> Vec<(Face, Face)> {
        let mut out = Vec::new();
        for face in self.domain.sorted_faces() {
            let v = self.values[&face];
            for x in self.domain.universe().difference(face).iter() {
                let up = face.with(x);
                if let Some(&w) = self.values.get(&up) {
                    if !self.poset.le(v, w) {
                        out.push((face, up));
                    }
                }
            }
        }
        out
    }

    pub fn is_monotone(&self) -> bool {
        self.check_monotone().is_empty()
    }

    /// `f_{/σ}(τ) = f(σ ∪ τ)` on the link, or the restriction to the deletion.
    pub fn minor(&self, sigma: Face, kind: MinorKind) -> Result<MonotoneMap> {
        if kind == MinorKind::Link && !self.domain.contains(sigma) {
            return Err(Error::Argument(format!("{sigma:?} is not a face of the domain")));
        }
        let domain = self.domain.minor(sigma, kind)?;
        Ok(match kind {
            MinorKind::Link => {
                let values = domain.faces().map(|t| (t, self.values[&t.union(sigma)])).collect();
                MonotoneMap { domain, poset: self.poset.clone(), values }
            }
            MinorKind::Deletion => self.restrict(domain),
        })
    }

    pub fn link(&self, sigma: Face) -> MonotoneMap {
        self.minor(sigma, MinorKind::Link).expect("link of a face")
    }

    /// Restriction to the faces avoiding `x`, over the universe without `x`.
    pub fn delete_element(&self, x: usize) -> MonotoneMap {
        self.restrict(self.domain.delete_element(x))
    }

    /// Restriction to the faces not containing `sigma`.
    pub fn deletion(&self, sigma: Face) -> MonotoneMap {
        self.restrict(self.domain.deletion(sigma))
    }

    /// Restriction to a subcomplex.
    pub fn restrict(&self, domain: Complex) -> MonotoneMap {
        let values = domain.faces().map(|t| (t, self.values[&t])).collect();
        MonotoneMap { domain, poset: self.poset.clone(), values }
    }

    /// `(Δ_{≤p}, Δ_{<p})` with the strict order of the poset.
    pub fn sublevel_pair(&self, p: Element) -> Result<(Complex, Complex)> {
        if !self.poset.contains(p) {
            return Err(Error::Argument(format!("{p} is not a poset element")));
        }
        if let Some((a, b)) = self.check_monotone().first() {
            return Err(Error::Precondition(format!("map is not monotone at {a:?} < {b:?}")));
        }
        let ground = self.domain.ground().clone();
        let universe = self.domain.universe();
        let le = self.values.iter().filter(|(_, &v)| self.poset.le(v, p)).map(|(&f, _)| f);
        let lt = self.values.iter().filter(|(_, &v)| self.poset.lt(v, p)).map(|(&f, _)| f);
        Ok((Complex::from_faces(ground.clone(), universe, le)?, Complex::from_faces(ground, universe, lt)?))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::GroundSet;

    fn f(ix: &[usize]) -> Face {
        Face::from_indices(ix.iter().copied())
    }

    fn edge() -> Complex {
        Complex::from_facets(Arc::new(GroundSet::numbered(2)), &[f(&[0, 1])]).unwrap()
    }

    #[test]
    fn cardinality_and_constant_are_monotone() {
        assert!(MonotoneMap::cardinality(edge()).is_monotone());
        assert!(MonotoneMap::constant(edge(), Poset::Naturals, 4).is_monotone());
    }

    #[test]
    fn decreasing_map_is_flagged() {
        let c = Complex::from_facets(Arc::new(GroundSet::numbered(1)), &[f(&[0])]).unwrap();
        let m = MonotoneMap::from_fn(c, Poset::Naturals, |s| if s.is_empty() { 1 } else { 0 });
        assert_eq!(m.check_monotone(), vec![(Face::EMPTY, f(&[0]))]);
        assert!(matches!(m.sublevel_pair(0), Err(Error::Precondition(_))));
    }

    #[test]
    fn totality_is_enforced() {
        let mut values = BTreeMap::new();
        values.insert(Face::EMPTY, 0);
        let err = MonotoneMap::new(edge(), Poset::Naturals, values).unwrap_err();
        assert!(matches!(err, Error::Totality(_)));
    }

    #[test]
    fn minors_of_maps() {
        let card = MonotoneMap::cardinality(edge());
        let lk = card.link(f(&[0]));
        assert_eq!(lk.value(Face::EMPTY), Some(1));
        assert_eq!(lk.value(f(&[1])), Some(2));
        let del = card.delete_element(0);
        assert_eq!(del.values().count(), 2);
        assert_eq!(card.link(Face::EMPTY), card);
    }

    #[test]
    fn sublevel_pairs() {
        let card = MonotoneMap::cardinality(edge());
        let (le, lt) = card.sublevel_pair(1).unwrap();
        assert_eq!(le.sorted_faces(), vec![Face::EMPTY, f(&[0]), f(&[1])]);
        assert_eq!(lt.sorted_faces(), vec![Face::EMPTY]);
        let constant = MonotoneMap::constant(edge(), Poset::Naturals, 3);
        let (le, lt) = constant.sublevel_pair(3).unwrap();
        assert_eq!(le, edge());
        assert!(lt.is_void());
    }

    #[test]
    fn explicit_poset_validation() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(Poset::explicit(names.clone(), vec![vec![true, true], vec![false, true]]).is_ok());
        assert!(Poset::explicit(names.clone(), vec![vec![true, true], vec![true, true]]).is_err());
        assert!(Poset::explicit(names, vec![vec![false, true], vec![false, true]]).is_err());
    }

    #[test]
    fn incomparable_elements_use_strict_order() {
        // z < a < c, z < b < c, a and b incomparable
        let names = ["z", "a", "b", "c"].map(String::from).to_vec();
        let le = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        let poset = Poset::explicit(names, le).unwrap();
        let m = MonotoneMap::from_fn(edge(), poset, |s| match s.len() {
            0 => 0,
            1 if s.contains(0) => 1,
            1 => 2,
            _ => 3,
        });
        assert!(m.is_monotone());
        let (le, lt) = m.sublevel_pair(2).unwrap();
        assert_eq!(le.sorted_faces(), vec![Face::EMPTY, f(&[1])]);
        let (_, below_top) = m.sublevel_pair(3).unwrap();
        assert_eq!(below_top.len(), 3);
        assert_eq!(lt.sorted_faces(), vec![Face::EMPTY]);
    }
}
