//! Finite ground sets, faces encoded as bitmasks, and downward-closed complexes.
//!
//! Every complex carries the ground set it lives over plus a `universe`: the
//! subset of ground elements that are still "in play". Minors shrink the
//! universe instead of re-indexing, so faces of a minor keep the indices of
//! the complex they came from.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 63;

/// Labelled finite set; elements are addressed by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() > MAX_GROUND {
            return Err(Error::Range(format!(
                "ground set has {} elements, at most {MAX_GROUND} supported",
                labels.len()
            )));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Argument("ground set labels must be distinct".into()));
        }
        Ok(Self { labels })
    }

    /// Ground set labelled `1..=n`.
    pub fn numbered(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string()).collect()).expect("numbered labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The face containing every element.
    pub fn full(&self) -> Face {
        Face::full(self.len())
    }

    pub fn format_face(&self, face: Face) -> String {
        let parts: Vec<&str> = face.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A subset of the ground set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub const fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Face(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Face(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub const fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub const fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub const fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub const fn with(self, i: usize) -> Face {
        Face(self.0 | 1u64 << i)
    }

    pub const fn without(self, i: usize) -> Face {
        Face(self.0 & !(1u64 << i))
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Element indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, the full set first and the empty set last.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let mask = self.0;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & mask) };
            Some(Face(cur))
        })
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Sort key used whenever faces are listed: by cardinality, then by bits.
pub fn face_order(a: &Face, b: &Face) -> std::cmp::Ordering {
    (a.len(), a.bits()).cmp(&(b.len(), b.bits()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorKind {
    Link,
    Deletion,
}

/// Downward-closed family of faces. A complex with no faces at all is void.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    ground: Arc<GroundSet>,
    universe: Face,
    faces: BTreeSet<Face>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "Complex(void)");
        }
        f.debug_set().entries(self.sorted_faces()).finish()
    }
}

impl Complex {
    pub fn void(ground: Arc<GroundSet>) -> Self {
        let universe = ground.full();
        Self { ground, universe, faces: BTreeSet::new() }
    }

    /// Downward closure of `facets`; an empty list gives the void complex.
    pub fn from_facets(ground: Arc<GroundSet>, facets: &[Face]) -> Result<Self> {
        let full = ground.full();
        let mut faces = BTreeSet::new();
        for &facet in facets {
            if !facet.is_subset(full) {
                return Err(Error::Range(format!("facet {facet:?} not within a ground set of size {}", ground.len())));
            }
            if faces.contains(&facet) {
                continue;
            }
            faces.extend(facet.subsets());
        }
        Ok(Self { ground, universe: full, faces })
    }

    /// Complex from an explicit face family, which must already be downward closed.
    pub fn from_faces<I: IntoIterator<Item = Face>>(ground: Arc<GroundSet>, universe: Face, faces: I) -> Result<Self> {
        if !universe.is_subset(ground.full()) {
            return Err(Error::Range("universe exceeds the ground set".into()));
        }
        let faces: BTreeSet<Face> = faces.into_iter().collect();
        for &face in &faces {
            if !face.is_subset(universe) {
                return Err(Error::Range(format!("face {face:?} outside the universe")));
            }
            for x in face.iter() {
                if !faces.contains(&face.without(x)) {
                    return Err(Error::Argument(format!(
                        "family is not downward closed: {face:?} present, {:?} missing",
                        face.without(x)
                    )));
                }
            }
        }
        Ok(Self { ground, universe, faces })
    }

    /// The full simplex on `face`.
    pub fn simplex(ground: Arc<GroundSet>, face: Face) -> Result<Self> {
        Self::from_facets(ground, &[face])
    }

    /// Same faces over a different universe (must contain every face).
    pub fn with_universe(&self, universe: Face) -> Result<Self> {
        Self::from_faces(self.ground.clone(), universe, self.faces.iter().copied())
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// The element set `S` this complex is considered over.
    pub fn universe(&self) -> Face {
        self.universe
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.faces.contains(&face)
    }

    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied()
    }

    pub fn sorted_faces(&self) -> Vec<Face> {
        let mut v: Vec<Face> = self.faces.iter().copied().collect();
        v.sort_by(face_order);
        v
    }

    /// Same ground set and same faces; the universe is ignored.
    pub fn same_faces(&self, other: &Complex) -> bool {
        self.faces == other.faces
    }

    /// Union of all faces.
    pub fn vertices(&self) -> Face {
        self.faces.iter().fold(Face::EMPTY, |acc, &f| acc.union(f))
    }

    pub fn is_vertex(&self, x: usize) -> bool {
        self.contains(Face::singleton(x))
    }

    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len()).max().map(|d| d.saturating_sub(1))
    }

    /// Maximal faces in face order.
    pub fn facets(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .faces
            .iter()
            .copied()
            .filter(|&f| self.universe.difference(f).iter().all(|x| !self.faces.contains(&f.with(x))))
            .collect();
        out.sort_by(face_order);
        out
    }

    /// Nonvoid with a single facet (this includes `{∅}`).
    pub fn is_simplex(&self) -> bool {
        !self.is_void() && self.faces.len() == 1usize << self.vertices().len()
    }

    /// Number of faces per cardinality, index `i` holding faces of size `i`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for f in &self.faces {
            let k = f.len();
            if v.len() <= k {
                v.resize(k + 1, 0);
            }
            v[k] += 1;
        }
        v
    }

    /// `lk_σ(Δ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}`; `σ` leaves the universe.
    pub fn link(&self, sigma: Face) -> Complex {
        let faces = self.faces.iter().copied().filter(|&f| sigma.is_subset(f)).map(|f| f.difference(sigma)).collect();
        Complex { ground: self.ground.clone(), universe: self.universe.difference(sigma), faces }
    }

    /// `del_σ(Δ) = {τ ∈ Δ : σ ⊄ τ}`; the universe is unchanged.
    pub fn deletion(&self, sigma: Face) -> Complex {
        let faces = self.faces.iter().copied().filter(|&f| !sigma.is_subset(f)).collect();
        Complex { ground: self.ground.clone(), universe: self.universe, faces }
    }

    /// Faces avoiding `x`, over the universe with `x` removed.
    pub fn delete_element(&self, x: usize) -> Complex {
        let faces = self.faces.iter().copied().filter(|f| !f.contains(x)).collect();
        Complex { ground: self.ground.clone(), universe: self.universe.without(x), faces }
    }

    /// Link or deletion with respect to `sigma`. A singleton deletion also drops
    /// the element from the universe.
    pub fn minor(&self, sigma: Face, kind: MinorKind) -> Result<Complex> {
        if !sigma.is_subset(self.ground.full()) {
            return Err(Error::Range(format!("{sigma:?} not within the ground set")));
        }
        Ok(match kind {
            MinorKind::Link => self.link(sigma),
            MinorKind::Deletion if sigma.len() == 1 => self.delete_element(sigma.min_element().expect("singleton")),
            MinorKind::Deletion => self.deletion(sigma),
        })
    }

    /// Join `{α ∪ β}` over the concatenated ground set.
    pub fn join(a: &Complex, b: &Complex) -> Result<Complex> {
        for label in b.ground.labels() {
            if a.ground.index_of(label).is_some() {
                return Err(Error::Argument(format!("label {label:?} occurs in both complexes")));
            }
        }
        let mut labels = a.ground.labels().to_vec();
        labels.extend(b.ground.labels().iter().cloned());
        let ground = Arc::new(GroundSet::new(labels)?);
        let shift = a.ground.len();
        let lift = |f: Face| Face::from_bits(f.bits() << shift);
        let universe = a.universe.union(lift(b.universe));
        let mut faces = BTreeSet::new();
        for &alpha in &a.faces {
            for &beta in &b.faces {
                faces.insert(alpha.union(lift(beta)));
            }
        }
        Ok(Complex { ground, universe, faces })
    }

    /// Join with the point `{∅, {apex}}` inside the same ground set.
    pub fn cone(&self, apex: usize) -> Result<Complex> {
        if self.faces.iter().any(|f| f.contains(apex)) {
            return Err(Error::Argument(format!("apex {apex} already used by a face")));
        }
        let mut faces = self.faces.clone();
        faces.extend(self.faces.iter().map(|f| f.with(apex)));
        Ok(Complex { ground: self.ground.clone(), universe: self.universe.with(apex), faces })
    }

    /// The unique facet strictly containing `sigma`, when `sigma` is a nonempty
    /// proper face lying in exactly one facet.
    pub fn is_free_face(&self, sigma: Face) -> Result<Option<Face>> {
        if !self.contains(sigma) {
            return Err(Error::Argument(format!("{sigma:?} is not a face")));
        }
        if sigma.is_empty() {
            return Ok(None);
        }
        let mut above = self.facets().into_iter().filter(|f| sigma.is_subset(*f));
        let first = above.next();
        Ok(match (first, above.next()) {
            (Some(facet), None) if facet != sigma => Some(facet),
            _ => None,
        })
    }

    /// Exhaustive search for a shedding-vertex certificate.
    pub fn is_vertex_decomposable(&self) -> Option<VdCertificate> {
        let mut memo = HashMap::new();
        vd_search(self, &mut memo)
    }

    /// Faces relabelled onto a ground set that contains only the universe.
    pub fn compact(&self) -> Complex {
        let keep: Vec<usize> = self.universe.iter().collect();
        let labels = keep.iter().map(|&i| self.ground.label(i).to_string()).collect();
        let ground = Arc::new(GroundSet::new(labels).expect("subset of distinct labels"));
        let remap =
            |f: Face| Face::from_indices(keep.iter().enumerate().filter(|(_, &i)| f.contains(i)).map(|(k, _)| k));
        let faces = self.faces.iter().map(|&f| remap(f)).collect();
        Complex { universe: ground.full(), ground, faces }
    }
}

/// Recursive witness of vertex decomposability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VdCertificate {
    Void,
    Simplex,
    Shed { vertex: usize, link: Box<VdCertificate>, deletion: Box<VdCertificate> },
}

impl VdCertificate {
    /// Checks the certificate against `c`, including the shedding condition
    /// (no facet of the link is a facet of the deletion).
    pub fn validate(&self, c: &Complex) -> bool {
        match self {
            VdCertificate::Void => c.is_void(),
            VdCertificate::Simplex => c.is_simplex(),
            VdCertificate::Shed { vertex, link, deletion } => {
                let v = *vertex;
                if !c.is_vertex(v) {
                    return false;
                }
                let lk = c.link(Face::singleton(v));
                let del = c.deletion(Face::singleton(v));
                is_shedding(&lk, &del) && link.validate(&lk) && deletion.validate(&del)
            }
        }
    }

    /// Certificate for the cone over the certified complex.
    pub fn cone(&self) -> VdCertificate {
        match self {
            VdCertificate::Shed { vertex, link, deletion } => VdCertificate::Shed {
                vertex: *vertex,
                link: Box::new(link.cone()),
                deletion: Box::new(deletion.cone()),
            },
            other => other.clone(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            VdCertificate::Shed { link, deletion, .. } => 1 + link.depth().max(deletion.depth()),
            _ => 0,
        }
    }
}

fn is_shedding(lk: &Complex, del: &Complex) -> bool {
    let del_facets: BTreeSet<Face> = del.facets().into_iter().collect();
    lk.facets().iter().all(|f| !del_facets.contains(f))
}

fn vd_search(c: &Complex, memo: &mut HashMap<Vec<Face>, Option<VdCertificate>>) -> Option<VdCertificate> {
    if c.is_void() {
        return Some(VdCertificate::Void);
    }
    if c.is_simplex() {
        return Some(VdCertificate::Simplex);
    }
    let key = c.facets();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut found = None;
    for v in c.vertices().iter() {
        let lk = c.link(Face::singleton(v));
        let del = c.deletion(Face::singleton(v));
        if !is_shedding(&lk, &del) {
            continue;
        }
        let Some(lc) = vd_search(&lk, memo) else { continue };
        let Some(dc) = vd_search(&del, memo) else { continue };
        found = Some(VdCertificate::Shed { vertex: v, link: Box::new(lc), deletion: Box::new(dc) });
        break;
    }
    memo.insert(key, found.clone());
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(n: usize) -> Arc<GroundSet> {
        Arc::new(GroundSet::numbered(n))
    }

    fn f(ix: &[usize]) -> Face {
        Face::from_indices(ix.iter().copied())
    }

    fn triangle_boundary() -> Complex {
        Complex::from_facets(ground(3), &[f(&[0, 1]), f(&[0, 2]), f(&[1, 2])]).unwrap()
    }

    #[test]
    fn closure_of_facets() {
        assert_eq!(triangle_boundary().len(), 7);
        let point = Complex::from_facets(ground(1), &[Face::EMPTY]).unwrap();
        assert_eq!(point.sorted_faces(), vec![Face::EMPTY]);
        assert_eq!(Complex::from_facets(ground(3), &[f(&[0, 1, 2])]).unwrap().len(), 8);
        assert!(Complex::from_facets(ground(3), &[]).unwrap().is_void());
        assert!(matches!(Complex::from_facets(ground(2), &[f(&[3])]), Err(Error::Range(_))));
    }

    #[test]
    fn link_and_deletion() {
        let c = triangle_boundary();
        let lk = c.link(f(&[0]));
        assert_eq!(lk.sorted_faces(), vec![Face::EMPTY, f(&[1]), f(&[2])]);
        let del = c.minor(f(&[0]), MinorKind::Deletion).unwrap();
        assert_eq!(del.sorted_faces(), vec![Face::EMPTY, f(&[1]), f(&[2]), f(&[1, 2])]);
        assert_eq!(c.link(Face::EMPTY), c);
        assert_eq!(c.len(), del.len() + lk.len());
    }

    #[test]
    fn joins() {
        let gs = Arc::new(GroundSet::new(vec!["s".into()]).unwrap());
        let gt = Arc::new(GroundSet::new(vec!["t".into()]).unwrap());
        let point_s = Complex::from_facets(gs.clone(), &[f(&[0])]).unwrap();
        let empty_t = Complex::from_facets(gt.clone(), &[Face::EMPTY]).unwrap();
        let point_t = Complex::from_facets(gt.clone(), &[f(&[0])]).unwrap();
        assert_eq!(Complex::join(&point_s, &empty_t).unwrap().len(), 2);
        let edge = Complex::join(&point_s, &point_t).unwrap();
        assert!(edge.is_simplex());
        assert_eq!(edge.len(), 4);
        assert!(Complex::join(&Complex::void(gs.clone()), &point_t).unwrap().is_void());
        assert!(Complex::join(&point_s, &point_s).is_err());
    }

    #[test]
    fn free_faces() {
        let edge = Complex::from_facets(ground(2), &[f(&[0, 1])]).unwrap();
        assert_eq!(edge.is_free_face(f(&[0])).unwrap(), Some(f(&[0, 1])));
        assert_eq!(edge.is_free_face(Face::EMPTY).unwrap(), None);
        assert_eq!(edge.is_free_face(f(&[0, 1])).unwrap(), None);
        assert_eq!(triangle_boundary().is_free_face(f(&[0])).unwrap(), None);
        assert!(triangle_boundary().is_free_face(f(&[0, 1, 2])).is_err());
    }

    #[test]
    fn vertex_decomposability() {
        let simplex = Complex::from_facets(ground(3), &[f(&[0, 1, 2])]).unwrap();
        assert_eq!(simplex.is_vertex_decomposable(), Some(VdCertificate::Simplex));
        let tri = triangle_boundary();
        let cert = tri.is_vertex_decomposable().expect("circle is vertex decomposable");
        assert!(cert.validate(&tri));
        // two disjoint edges: every link facet is an isolated vertex of the deletion
        let two_edges = Complex::from_facets(ground(4), &[f(&[0, 1]), f(&[2, 3])]).unwrap();
        assert_eq!(two_edges.is_vertex_decomposable(), None);
        assert_eq!(Complex::void(ground(2)).is_vertex_decomposable(), Some(VdCertificate::Void));
    }

    #[test]
    fn cone_certificates_lift() {
        let tri = Complex::from_facets(ground(4), &[f(&[0, 1]), f(&[0, 2]), f(&[1, 2])]).unwrap().delete_element(3);
        let cone = tri.cone(3).unwrap();
        let cert = tri.is_vertex_decomposable().unwrap().cone();
        assert!(cert.validate(&cone));
    }

    #[test]
    fn subsets_enumeration() {
        let s: Vec<Face> = f(&[0, 2]).subsets().collect();
        assert_eq!(s, vec![f(&[0, 2]), f(&[2]), f(&[0]), Face::EMPTY]);
        assert_eq!(Face::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compact_relabels() {
        let c = triangle_boundary().link(f(&[0]));
        let k = c.compact();
        assert_eq!(k.ground().labels(), &["2".to_string(), "3".to_string()]);
        assert_eq!(k.sorted_faces(), vec![Face::EMPTY, f(&[0]), f(&[1])]);
    }
}
