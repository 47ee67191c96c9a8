//! Elementary collapses scheduled from the boolean intervals of a set decision tree.

use crate::broken_circuit::{bc_complex, f_polynomial, NbcComplex, NbcOrder};
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::polynomial::BivariatePolynomial;
use crate::poset::MonotoneMap;
use crate::semimatroid::{Semimatroid, Strategy, Target};
use crate::tree::{interval_partition, SetTree};

/// Removal of `free` together with its unique proper coface `cofacet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollapsePair {
    pub free: Face,
    pub cofacet: Face,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollapseSequence {
    pub steps: Vec<CollapsePair>,
}

impl CollapseSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies every step to `initial`, checking each is an elementary collapse at its turn.
    pub fn replay(&self, initial: &Complex) -> Result<Complex> {
        let mut current = initial.clone();
        for (k, step) in self.steps.iter().enumerate() {
            current = elementary_collapse(&current, *step).map_err(|e| match e {
                Error::Schedule(msg) => Error::Schedule(format!("step {k}: {msg}")),
                other => other,
            })?;
        }
        Ok(current)
    }
}

/// One elementary collapse, validated against `c`.
pub fn elementary_collapse(c: &Complex, step: CollapsePair) -> Result<Complex> {
    let CollapsePair { free, cofacet } = step;
    if !free.is_subset(cofacet) || cofacet.len() != free.len() + 1 {
        return Err(Error::Schedule(format!("{cofacet:?} is not a cofacet of {free:?}")));
    }
    if free.is_empty() {
        return Err(Error::Schedule("the empty face is never free".into()));
    }
    if !c.contains(cofacet) {
        return Err(Error::Schedule(format!("{cofacet:?} is not a face")));
    }
    let mut above = c.faces().filter(|&g| free.is_subset(g) && g != free);
    if above.next() != Some(cofacet) || above.next().is_some() {
        return Err(Error::Schedule(format!("{free:?} is not free with coface {cofacet:?}")));
    }
    let faces = c.faces().filter(|&g| g != free && g != cofacet);
    Complex::from_faces(c.ground().clone(), c.universe(), faces)
}

/// Pairs `(γ ∪ σ, γ ∪ σ ∪ {x})` removing the interval `[σ, τ]`, with `x = max(τ \ σ)`
/// and `γ` running over subsets of `τ \ σ \ {x}` by decreasing size.
pub fn collapse_interval(current: &Complex, sigma: Face, tau: Face) -> Result<CollapseSequence> {
    if sigma.is_empty() || !sigma.is_subset(tau) || sigma == tau {
        return Err(Error::Precondition(format!("[{sigma:?}, {tau:?}] is not a collapsible interval")));
    }
    if !current.contains(tau) {
        return Err(Error::Precondition(format!("{tau:?} is not a face")));
    }
    if let Some(g) = current.faces().find(|&g| sigma.is_subset(g) && !g.is_subset(tau)) {
        return Err(Error::Precondition(format!("{sigma:?} is not free: {g:?} lies above it outside {tau:?}")));
    }
    let spare = tau.difference(sigma);
    let x = spare.max_element().expect("nonempty difference");
    let mut gammas: Vec<Face> = spare.without(x).subsets().collect();
    gammas.sort_by_key(|g| (std::cmp::Reverse(g.len()), g.bits()));
    let steps =
        gammas.into_iter().map(|g| CollapsePair { free: g.union(sigma), cofacet: g.union(sigma).with(x) }).collect();
    Ok(CollapseSequence { steps })
}

/// Collapses the domain of `f` along the non-singleton intervals of `t`, in leaf
/// order. The result is the complex generated by the evasive faces; when nothing
/// is evasive the last interval `[∅, τ]` is collapsed to the vertex `max τ`.
pub fn morse_collapse(t: &SetTree, f: &MonotoneMap) -> Result<(CollapseSequence, Complex)> {
    let intervals = interval_partition(t, f)?;
    let domain = f.domain();
    let evasive: Vec<Face> = intervals.iter().filter(|iv| iv.is_singleton()).map(|iv| iv.lower).collect();
    let target = Complex::from_faces(domain.ground().clone(), domain.universe(), evasive.iter().copied())
        .map_err(|_| Error::Precondition("the evasive faces do not form a simplicial complex".into()))?;
    let mut sequence = CollapseSequence::default();
    let mut current = domain.clone();
    let mut expected = target;
    for iv in intervals.iter().filter(|iv| !iv.is_singleton()) {
        let steps = if iv.lower.is_empty() {
            let v = iv.upper.max_element().expect("nonsingleton interval");
            if !current.same_faces(&Complex::simplex(domain.ground().clone(), iv.upper)?) {
                return Err(Error::Schedule(format!("[∅, {:?}] reached before the rest was collapsed", iv.upper)));
            }
            expected =
                Complex::from_faces(domain.ground().clone(), domain.universe(), [Face::EMPTY, Face::singleton(v)])?;
            let mut gammas: Vec<Face> = iv.upper.without(v).subsets().filter(|g| !g.is_empty()).collect();
            gammas.sort_by_key(|g| (std::cmp::Reverse(g.len()), g.bits()));
            CollapseSequence {
                steps: gammas.into_iter().map(|g| CollapsePair { free: g, cofacet: g.with(v) }).collect(),
            }
        } else {
            collapse_interval(&current, iv.lower, iv.upper).map_err(|e| match e {
                Error::Precondition(msg) => Error::Schedule(msg),
                other => other,
            })?
        };
        current = steps.replay(&current)?;
        sequence.steps.extend(steps.steps);
    }
    if !current.same_faces(&expected) {
        return Err(Error::Invariant("collapse residual differs from the evasive subcomplex".into()));
    }
    Ok((sequence, current))
}

/// `Σ_{σ ∈ c} (qx)^{|σ|}`.
pub fn qx_face_polynomial(c: &Complex) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::qx_zero();
    for (k, c) in f_polynomial(c).terms() {
        p.add_term(k.0, k.0, c);
    }
    p
}

/// Collapses `Δ` onto `BC(C)` through the max-label rank tree. A void `BC(C)`
/// (some element is a loop) leaves a single vertex.
pub fn collapse_to_bc(s: &Semimatroid) -> Result<(CollapseSequence, NbcComplex)> {
    let tree = s.build_tree(Target::Rank, Strategy::Max).to_set_tree();
    let (sequence, residual) = morse_collapse(&tree, &s.rank_map())?;
    let bc = bc_complex(s, &NbcOrder::natural(s));
    let matches = if bc.complex.is_void() {
        residual.len() == 2 && residual.vertices().len() == 1
    } else {
        residual.same_faces(&bc.complex)
    };
    if !matches {
        return Err(Error::Invariant(format!(
            "collapse residual {:?} differs from the broken circuit complex {:?}",
            residual.sorted_faces(),
            bc.complex.sorted_faces()
        )));
    }
    if s.poincare_closed(Target::Rank)? != qx_face_polynomial(&bc.complex) {
        return Err(Error::Invariant("rank Poincaré polynomial differs from the nbc face count".into()));
    }
    Ok((sequence, bc))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::GroundSet;
    use crate::tree::ElementTree;

    fn f(ix: &[usize]) -> Face {
        Face::from_indices(ix.iter().copied())
    }

    fn simplex(n: usize) -> Complex {
        Complex::simplex(Arc::new(GroundSet::numbered(n)), Face::full(n)).unwrap()
    }

    #[test]
    fn edge_interval() {
        let c = simplex(2);
        let seq = collapse_interval(&c, f(&[0]), f(&[0, 1])).unwrap();
        assert_eq!(seq.steps, vec![CollapsePair { free: f(&[0]), cofacet: f(&[0, 1]) }]);
        assert_eq!(seq.replay(&c).unwrap().sorted_faces(), vec![Face::EMPTY, f(&[1])]);
    }

    #[test]
    fn triangle_interval() {
        let c = simplex(3);
        let seq = collapse_interval(&c, f(&[0]), f(&[0, 1, 2])).unwrap();
        assert_eq!(seq.len(), 2);
        let rest = seq.replay(&c).unwrap();
        assert_eq!(c.len() - rest.len(), 4);
        assert!(rest.faces().all(|g| !g.contains(0)));
        assert!(collapse_interval(&c, f(&[0]), f(&[0])).is_err());
        assert!(collapse_interval(&c, f(&[0]), f(&[0, 1])).is_err());
    }

    #[test]
    fn non_free_step_is_rejected() {
        let c = simplex(3);
        let bad = CollapseSequence { steps: vec![CollapsePair { free: f(&[0]), cofacet: f(&[0, 1]) }] };
        assert!(matches!(bad.replay(&c), Err(Error::Schedule(_))));
    }

    #[test]
    fn constant_simplex_collapses_to_a_point() {
        let m = MonotoneMap::constant(simplex(3), crate::poset::Poset::Naturals, 0);
        let (seq, rest) = morse_collapse(&ElementTree::Leaf(0).to_set_tree(), &m).unwrap();
        assert_eq!(rest.sorted_faces(), vec![Face::EMPTY, f(&[2])]);
        assert_eq!(seq.len(), 3);
    }

    #[test]
    fn concurrent_lines_collapse_to_broken_circuits() {
        let c = simplex(3);
        let s = Semimatroid::from_fn(c, |g| g.len().min(2)).unwrap();
        let (seq, bc) = collapse_to_bc(&s).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(bc.complex.len(), 6);
        let tri =
            Complex::from_facets(Arc::new(GroundSet::numbered(3)), &[f(&[0, 1]), f(&[0, 2]), f(&[1, 2])]).unwrap();
        let a = Semimatroid::from_fn(tri, |g| g.len()).unwrap();
        let (seq, bc) = collapse_to_bc(&a).unwrap();
        assert!(seq.is_empty());
        assert!(bc.complex.same_faces(a.complex()));
    }

    #[test]
    fn loop_leaves_a_point() {
        let s = Semimatroid::from_fn(simplex(1), |_| 0).unwrap();
        let (seq, bc) = collapse_to_bc(&s).unwrap();
        assert!(bc.complex.is_void());
        assert_eq!(seq.len(), 0);
    }
}
