//! Semimatroids, their Tutte polynomials, the decision trees for rank,
//! nullity and the complex itself, and the bridge to strong pseudo-independence
//! complexes over matroids.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{face_order, Complex, Face, GroundSet};
use crate::error::{Error, Result};
use crate::polynomial::{BivariatePolynomial, RationalFunction, UniPoly};
use crate::poset::{MonotoneMap, Poset};
use crate::tree::{graft, graft_nonface, ElementTree};

/// The five defining conditions, in the order they are usually listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `0 ≤ r(σ) ≤ |σ|`.
    Bounded,
    /// `σ ⊆ τ ⇒ r(σ) ≤ r(τ)`.
    Monotone,
    /// `σ ∪ τ ∈ Δ ⇒ r(σ) + r(τ) ≥ r(σ ∪ τ) + r(σ ∩ τ)`.
    Submodular,
    /// `r(σ) = r(σ ∩ τ) ⇒ σ ∪ τ ∈ Δ`.
    Closure,
    /// `r(σ) < r(τ) ⇒ σ + y ∈ Δ` for some `y ∈ τ \ σ`.
    Augmentation,
}

impl Axiom {
    pub fn number(self) -> usize {
        self as usize + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub sigma: Face,
    pub tau: Option<Face>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tau {
            Some(t) => write!(f, "{:?} fails at σ={:?}, τ={:?}", self.axiom, self.sigma, t),
            None => write!(f, "{:?} fails at σ={:?}", self.axiom, self.sigma),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementClass {
    Loop,
    Coloop,
    Nonface,
    Ordinary,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ElementClass::Loop => "loop",
            ElementClass::Coloop => "coloop",
            ElementClass::Nonface => "nonface",
            ElementClass::Ordinary => "ordinary",
        };
        f.write_str(s)
    }
}

/// Pivot rule for recursions over the elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// The first ordinary element, falling back to the first element.
    #[default]
    Any,
    Min,
    Max,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(Strategy::Any),
            "min" => Ok(Strategy::Min),
            "max" => Ok(Strategy::Max),
            _ => Err(Error::Argument(format!("unknown strategy {s:?} (any, min, max)"))),
        }
    }
}

/// Which monotone map a tree or closed form is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Rank,
    Nullity,
    /// The complex itself, i.e. the constant map.
    Constant,
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank" => Ok(Target::Rank),
            "nullity" => Ok(Target::Nullity),
            "constant" | "complex" => Ok(Target::Constant),
            _ => Err(Error::Argument(format!("unknown target {s:?} (rank, nullity, constant)"))),
        }
    }
}

/// `(S, Δ, r)` with `S` the universe of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semimatroid {
    complex: Complex,
    rank: BTreeMap<Face, usize>,
}

impl Semimatroid {
    /// Checks that the complex is nonvoid and the rank table is defined exactly
    /// on its faces. The axioms are checked by [`Semimatroid::check_axioms`].
    pub fn new(complex: Complex, rank: BTreeMap<Face, usize>) -> Result<Self> {
        if complex.is_void() {
            return Err(Error::Argument("a semimatroid needs a nonvoid complex".into()));
        }
        if let Some(face) = complex.faces().find(|f| !rank.contains_key(f)) {
            return Err(Error::Totality(format!("no rank for face {face:?}")));
        }
        if let Some(extra) = rank.keys().find(|f| !complex.contains(**f)) {
            return Err(Error::Argument(format!("rank given for non-face {extra:?}")));
        }
        Ok(Self { complex, rank })
    }

    /// [`Semimatroid::new`] followed by the axiom check.
    pub fn validated(complex: Complex, rank: BTreeMap<Face, usize>) -> Result<Self> {
        let s = Self::new(complex, rank)?;
        match s.check_axioms().first() {
            None => Ok(s),
            Some(v) => Err(Error::Precondition(format!("not a semimatroid: {v}"))),
        }
    }

    pub fn from_fn(complex: Complex, mut r: impl FnMut(Face) -> usize) -> Result<Self> {
        let rank = complex.faces().map(|f| (f, r(f))).collect();
        Self::new(complex, rank)
    }

    /// `S = ∅`, `Δ = {∅}`.
    pub fn empty(ground: Arc<GroundSet>) -> Self {
        let complex = Complex::from_faces(ground, Face::EMPTY, [Face::EMPTY]).expect("{∅} is a complex");
        Self { complex, rank: BTreeMap::from([(Face::EMPTY, 0)]) }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        self.complex.ground()
    }

    pub fn elements(&self) -> Face {
        self.complex.universe()
    }

    pub fn is_empty(&self) -> bool {
        self.elements().is_empty()
    }

    pub fn rank_of(&self, face: Face) -> Option<usize> {
        self.rank.get(&face).copied()
    }

    pub fn ranks(&self) -> impl Iterator<Item = (Face, usize)> + '_ {
        self.rank.iter().map(|(&f, &r)| (f, r))
    }

    pub fn is_face(&self, face: Face) -> bool {
        self.complex.contains(face)
    }

    pub fn is_independent(&self, face: Face) -> bool {
        self.rank_of(face) == Some(face.len())
    }

    /// `r_C`, the size of a largest independent face.
    pub fn rank(&self) -> usize {
        self.rank.iter().filter(|(f, &r)| f.len() == r).map(|(_, &r)| r).max().unwrap_or(0)
    }

    pub fn nullity_of(&self, face: Face) -> Option<usize> {
        self.rank_of(face).map(|r| face.len() - r)
    }

    /// Independent faces of size `r_C`, in face order.
    pub fn bases(&self) -> Vec<Face> {
        let rc = self.rank();
        let mut b: Vec<Face> = self.rank.iter().filter(|(f, &r)| f.len() == rc && r == rc).map(|(&f, _)| f).collect();
        b.sort_by(face_order);
        b
    }

    /// Every violated instance of the axioms, checked over all faces and all pairs of faces.
    pub fn check_axioms(&self) -> Vec<AxiomViolation> {
        let mut out = Vec::new();
        let faces = self.complex.sorted_faces();
        for &s in &faces {
            if self.rank[&s] > s.len() {
                out.push(AxiomViolation { axiom: Axiom::Bounded, sigma: s, tau: None });
            }
        }
        for &s in &faces {
            let rs = self.rank[&s];
            for &t in &faces {
                let rt = self.rank[&t];
                let pair = |axiom| AxiomViolation { axiom, sigma: s, tau: Some(t) };
                if s.is_subset(t) && rs > rt {
                    out.push(pair(Axiom::Monotone));
                }
                let cup = s.union(t);
                let cap = s.intersection(t);
                let r_cap = self.rank[&cap];
                if let Some(&r_cup) = self.rank.get(&cup) {
                    if rs + rt < r_cup + r_cap {
                        out.push(pair(Axiom::Submodular));
                    }
                } else if rs == r_cap {
                    out.push(pair(Axiom::Closure));
                }
                if rs < rt && !t.difference(s).iter().any(|y| self.is_face(s.with(y))) {
                    out.push(pair(Axiom::Augmentation));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check_axioms().is_empty()
    }

    pub fn classify(&self, e: usize) -> Result<ElementClass> {
        if !self.elements().contains(e) {
            return Err(Error::Range(format!("element {e} not in the semimatroid")));
        }
        let single = Face::singleton(e);
        Ok(match self.rank_of(single) {
            None => ElementClass::Nonface,
            Some(0) => ElementClass::Loop,
            Some(_) if self.bases().iter().all(|b| b.contains(e)) => ElementClass::Coloop,
            Some(_) => ElementClass::Ordinary,
        })
    }

    /// `C − e`: the deletion of `e` with the restricted rank.
    pub fn delete(&self, e: usize) -> Result<Semimatroid> {
        if !self.elements().contains(e) {
            return Err(Error::Range(format!("element {e} not in the semimatroid")));
        }
        let complex = self.complex.delete_element(e);
        let rank = complex.faces().map(|f| (f, self.rank[&f])).collect();
        Ok(Self { complex, rank })
    }

    /// `C / e`: the link of `e` with `r′(σ) = r(σ + e) − r(e)`.
    pub fn contract(&self, e: usize) -> Result<Semimatroid> {
        if !self.elements().contains(e) {
            return Err(Error::Range(format!("element {e} not in the semimatroid")));
        }
        let single = Face::singleton(e);
        let Some(re) = self.rank_of(single) else {
            return Err(Error::Argument(format!("cannot contract the nonface {e}")));
        };
        let complex = self.complex.link(single);
        let rank = complex.faces().map(|f| (f, self.rank[&f.with(e)] - re)).collect();
        Ok(Self { complex, rank })
    }

    pub fn pivot(&self, strategy: Strategy) -> Option<usize> {
        let s = self.elements();
        match strategy {
            Strategy::Min => s.min_element(),
            Strategy::Max => s.max_element(),
            Strategy::Any => {
                s.iter().find(|&e| self.classify(e).ok() == Some(ElementClass::Ordinary)).or_else(|| s.min_element())
            }
        }
    }

    /// `Σ_σ (x−1)^{r_C − r(σ)} (y−1)^{|σ| − r(σ)}`.
    pub fn tutte_sum(&self) -> BivariatePolynomial {
        let vars = ['x', 'y'];
        let xm1 = BivariatePolynomial::monomial(vars, 1, 1, 0) - BivariatePolynomial::constant(vars, 1);
        let ym1 = BivariatePolynomial::monomial(vars, 1, 0, 1) - BivariatePolynomial::constant(vars, 1);
        let rc = self.rank();
        let mut total = BivariatePolynomial::tutte_zero();
        for (&f, &r) in &self.rank {
            total = total + &xm1.pow((rc - r) as u32) * &ym1.pow((f.len() - r) as u32);
        }
        total
    }

    /// Deletion-contraction, pivoting according to `strategy`.
    pub fn tutte_recurrence(&self, strategy: Strategy) -> BivariatePolynomial {
        let Some(e) = self.pivot(strategy) else {
            return BivariatePolynomial::constant(['x', 'y'], 1);
        };
        let del = || self.delete(e).expect("pivot is an element");
        let con = || self.contract(e).expect("pivot is a vertex");
        match self.classify(e).expect("pivot is an element") {
            ElementClass::Nonface => del().tutte_recurrence(strategy),
            ElementClass::Loop => BivariatePolynomial::monomial(['x', 'y'], 1, 0, 1) * del().tutte_recurrence(strategy),
            ElementClass::Coloop => {
                BivariatePolynomial::monomial(['x', 'y'], 1, 1, 0) * con().tutte_recurrence(strategy)
            }
            ElementClass::Ordinary => del().tutte_recurrence(strategy) + con().tutte_recurrence(strategy),
        }
    }

    pub fn rank_map(&self) -> MonotoneMap {
        MonotoneMap::from_fn(self.complex.clone(), Poset::Naturals, |f| self.rank[&f])
    }

    pub fn nullity_map(&self) -> MonotoneMap {
        MonotoneMap::from_fn(self.complex.clone(), Poset::Naturals, |f| f.len() - self.rank[&f])
    }

    pub fn constant_map(&self) -> MonotoneMap {
        MonotoneMap::constant(self.complex.clone(), Poset::Naturals, 0)
    }

    pub fn target_map(&self, target: Target) -> MonotoneMap {
        match target {
            Target::Rank => self.rank_map(),
            Target::Nullity => self.nullity_map(),
            Target::Constant => self.constant_map(),
        }
    }

    /// The recursive decision tree for `target`, pivoting according to `strategy`.
    ///
    /// # Panics
    /// If the semimatroid axioms fail in a way the recursion notices.
    pub fn build_tree(&self, target: Target, strategy: Strategy) -> ElementTree {
        let Some(e) = self.pivot(strategy) else {
            return ElementTree::Leaf(0);
        };
        let class = self.classify(e).expect("pivot is an element");
        let del = || self.delete(e).expect("pivot is an element").build_tree(target, strategy);
        let con = || self.contract(e).expect("pivot is a vertex").build_tree(target, strategy);
        if class == ElementClass::Nonface {
            let minor = self.delete(e).expect("pivot is an element");
            assert_eq!(minor.rank(), self.rank(), "deleting a nonface changed the rank");
            return graft_nonface(e, minor.build_tree(target, strategy));
        }
        match (target, class) {
            (Target::Rank, ElementClass::Loop) => del(),
            (Target::Rank, ElementClass::Coloop) => {
                let c = con();
                graft(e, c.shifted(), c)
            }
            (Target::Rank, _) => graft(e, con().shifted(), del()),
            (Target::Nullity, ElementClass::Loop) => {
                let d = del();
                graft(e, d.shifted(), d)
            }
            (Target::Nullity, ElementClass::Coloop) => del(),
            (Target::Nullity, _) => graft(e, con(), del()),
            (Target::Constant, ElementClass::Loop | ElementClass::Coloop) => del(),
            (Target::Constant, _) => graft(e, con(), del()),
        }
    }

    /// `T_C(0, 0)`.
    pub fn beta(&self) -> i64 {
        self.tutte_sum().constant_term()
    }

    /// Closed forms from the Tutte polynomial, in `q, x`:
    /// rank `(qx)^{r_C} T((qx+1)/(qx), 0)`, nullity `q^{r_C} T(0, qx+1)`,
    /// constant `T(0,0) q^{r_C}`.
    pub fn poincare_closed(&self, target: Target) -> Result<BivariatePolynomial> {
        let tutte = self.tutte_sum();
        let rc = self.rank();
        let mut out = BivariatePolynomial::qx_zero();
        match target {
            Target::Rank => {
                // t = qx
                let sub = RationalFunction::new(&UniPoly::t() + &UniPoly::constant(1), UniPoly::t())?;
                let cleared = sub
                    .compose_into(&tutte.at_second_zero())
                    .mul(&RationalFunction::from_poly(UniPoly::monomial(1, rc)))
                    .into_polynomial()?;
                for (k, &c) in cleared.coeffs().iter().enumerate() {
                    out.add_term(k as u32, k as u32, c);
                }
            }
            Target::Nullity => {
                let sub = RationalFunction::from_poly(&UniPoly::t() + &UniPoly::constant(1));
                let p = sub.compose_into(&tutte.at_first_zero()).into_polynomial()?;
                for (k, &c) in p.coeffs().iter().enumerate() {
                    out.add_term((k + rc) as u32, k as u32, c);
                }
            }
            Target::Constant => out.add_term(rc as u32, 0, tutte.constant_term()),
        }
        Ok(out)
    }
}

/// Matroid given by its rank on every subset of `elements`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: Arc<GroundSet>,
    elements: Face,
    rank: BTreeMap<Face, usize>,
}

impl Matroid {
    /// Checks totality and the rank axioms.
    pub fn new(ground: Arc<GroundSet>, elements: Face, rank: BTreeMap<Face, usize>) -> Result<Self> {
        if !elements.is_subset(ground.full()) {
            return Err(Error::Range("matroid elements exceed the ground set".into()));
        }
        if let Some(s) = elements.subsets().find(|s| !rank.contains_key(s)) {
            return Err(Error::Totality(format!("no rank for subset {s:?}")));
        }
        if let Some(extra) = rank.keys().find(|s| !s.is_subset(elements)) {
            return Err(Error::Argument(format!("rank given for {extra:?} outside the elements")));
        }
        let m = Self { ground, elements, rank };
        match m.violations().first() {
            None => Ok(m),
            Some(v) => Err(Error::Argument(format!("not a matroid rank function: {v}"))),
        }
    }

    pub fn from_fn(ground: Arc<GroundSet>, elements: Face, mut r: impl FnMut(Face) -> usize) -> Result<Self> {
        let rank = elements.subsets().map(|s| (s, r(s))).collect();
        Self::new(ground, elements, rank)
    }

    /// `U_{r,n}`: every subset of size at most `r` is independent.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::Argument(format!("uniform matroid rank {r} exceeds size {n}")));
        }
        Self::from_fn(Arc::new(GroundSet::numbered(n)), Face::full(n), |s| s.len().min(r))
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn elements(&self) -> Face {
        self.elements
    }

    pub fn rank_of(&self, s: Face) -> usize {
        self.rank[&s]
    }

    pub fn ranks(&self) -> impl Iterator<Item = (Face, usize)> + '_ {
        self.rank.iter().map(|(&f, &r)| (f, r))
    }

    pub fn rank(&self) -> usize {
        self.rank[&self.elements]
    }

    /// Failures of `r(∅) = 0`, unit increase, and local submodularity
    /// `r(A+x) + r(A+y) ≥ r(A+x+y) + r(A)` (equivalent to submodularity given unit increase).
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.rank[&Face::EMPTY] != 0 {
            out.push("rank of the empty set is not 0".to_string());
        }
        for a in self.elements.subsets() {
            let ra = self.rank[&a];
            let outside: Vec<usize> = self.elements.difference(a).iter().collect();
            for &x in &outside {
                let rx = self.rank[&a.with(x)];
                if rx != ra && rx != ra + 1 {
                    out.push(format!("unit increase fails at {a:?} + {x}"));
                }
            }
            for (i, &x) in outside.iter().enumerate() {
                for &y in &outside[i + 1..] {
                    if self.rank[&a.with(x)] + self.rank[&a.with(y)] < self.rank[&a.with(x).with(y)] + ra {
                        out.push(format!("submodularity fails at {a:?} with {x}, {y}"));
                    }
                }
            }
        }
        out
    }

    /// The matroid viewed as a semimatroid on the full simplex.
    pub fn as_semimatroid(&self) -> Semimatroid {
        let complex = Complex::simplex(self.ground.clone(), self.elements).expect("elements lie in the ground set");
        Semimatroid { complex, rank: self.rank.clone() }
    }
}

/// `r′(A) = max { r(τ) : τ ⊆ A, τ ∈ Δ }` on every subset of the elements.
pub fn matroid_closure(s: &Semimatroid) -> Matroid {
    let mut subsets: Vec<Face> = s.elements().subsets().collect();
    subsets.reverse(); // increasing bits, so A − x precedes A
    let mut rank = BTreeMap::new();
    for a in subsets {
        let r = match s.rank_of(a) {
            Some(r) => r,
            None => a.iter().map(|x| rank[&a.without(x)]).max().unwrap_or(0),
        };
        rank.insert(a, r);
    }
    Matroid { ground: s.ground().clone(), elements: s.elements(), rank }
}

/// A failure of the pseudo-independence or strong cone-point condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiViolation {
    pub sigma: Face,
    pub x: usize,
    /// `true` for the cone-point condition.
    pub strong: bool,
}

/// Every `(σ, x)` breaking pseudo-independence (`r(σ+x) > r(σ) ⇒ σ+x ∈ Δ`) or the
/// strong condition (`r(σ+x) = r(σ)`, `σ+x ∈ Δ` ⇒ `x` a cone point of `lk_σ Δ`).
pub fn spi_violations(complex: &Complex, m: &Matroid) -> Vec<SpiViolation> {
    let mut out = Vec::new();
    if complex.universe() != m.elements() {
        out.push(SpiViolation { sigma: Face::EMPTY, x: usize::MAX, strong: false });
        return out;
    }
    for sigma in complex.sorted_faces() {
        let rs = m.rank_of(sigma);
        for x in m.elements().difference(sigma).iter() {
            let up = sigma.with(x);
            let ru = m.rank_of(up);
            if ru > rs && !complex.contains(up) {
                out.push(SpiViolation { sigma, x, strong: false });
            }
            if ru == rs && complex.contains(up) {
                let cone = complex.faces().filter(|f| sigma.is_subset(*f)).all(|f| complex.contains(f.with(x)));
                if !cone {
                    out.push(SpiViolation { sigma, x, strong: true });
                }
            }
        }
    }
    out
}

pub fn check_spi(complex: &Complex, m: &Matroid) -> bool {
    spi_violations(complex, m).is_empty()
}

/// `(S, Δ, r|_Δ)` for a strong pseudo-independence complex `Δ` over `m`.
pub fn semimatroid_from_spi(m: &Matroid, complex: &Complex) -> Result<Semimatroid> {
    if complex.is_void() {
        return Err(Error::Precondition("the complex is void".into()));
    }
    if let Some(v) = spi_violations(complex, m).first() {
        return Err(Error::Precondition(format!(
            "not a strong pseudo-independence complex: {} fails at {:?} + {}",
            if v.strong { "cone-point condition" } else { "pseudo-independence" },
            v.sigma,
            v.x
        )));
    }
    let rank = complex.faces().map(|f| (f, m.rank_of(f))).collect();
    Ok(Semimatroid { complex: complex.clone(), rank })
}
