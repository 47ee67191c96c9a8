//! Circuits, broken circuits and the broken circuit complex of a semimatroid.

use crate::complex::{face_order, Complex, Face, VdCertificate};
use crate::error::{Error, Result};
use crate::polynomial::{BivariatePolynomial, RationalFunction, UniPoly};
use crate::semimatroid::{ElementClass, Semimatroid};

/// A linear order on the elements of a semimatroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbcOrder {
    sequence: Vec<usize>,
    position: Vec<usize>,
}

impl NbcOrder {
    /// Increasing ground-set index.
    pub fn natural(s: &Semimatroid) -> Self {
        Self::new(s, s.elements().to_indices()).expect("index order is a permutation")
    }

    /// `sequence` lists the elements from smallest to largest.
    pub fn new(s: &Semimatroid, sequence: Vec<usize>) -> Result<Self> {
        let n = s.ground().len();
        let mut position = vec![usize::MAX; n];
        for (k, &e) in sequence.iter().enumerate() {
            if e >= n || !s.elements().contains(e) {
                return Err(Error::Argument(format!("{e} is not an element of the semimatroid")));
            }
            if position[e] != usize::MAX {
                return Err(Error::Argument(format!("{e} appears twice in the order")));
            }
            position[e] = k;
        }
        if sequence.len() != s.elements().len() {
            return Err(Error::Argument("order must list every element exactly once".into()));
        }
        Ok(Self { sequence, position })
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    pub fn min_of(&self, face: Face) -> Option<usize> {
        face.iter().min_by_key(|&e| self.position[e])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSet {
    pub circuits: Vec<Face>,
    /// `σ − min σ` for each circuit, deduplicated.
    pub broken: Vec<Face>,
}

/// Inclusion-minimal dependent faces, and the broken circuits they induce.
pub fn circuits(s: &Semimatroid, order: &NbcOrder) -> CircuitSet {
    let mut circuits: Vec<Face> = s
        .ranks()
        .filter(|&(f, r)| r < f.len() && f.iter().all(|x| s.is_independent(f.without(x))))
        .map(|(f, _)| f)
        .collect();
    circuits.sort_by(face_order);
    let mut broken: Vec<Face> =
        circuits.iter().map(|&c| c.without(order.min_of(c).expect("circuits are nonempty"))).collect();
    broken.sort_by(face_order);
    broken.dedup();
    CircuitSet { circuits, broken }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbcComplex {
    pub complex: Complex,
    pub order: NbcOrder,
}

/// Faces of `Δ` containing no broken circuit.
pub fn bc_complex(s: &Semimatroid, order: &NbcOrder) -> NbcComplex {
    let broken = circuits(s, order).broken;
    let faces = s.complex().faces().filter(|&f| !broken.iter().any(|b| b.is_subset(f)));
    let complex = Complex::from_faces(s.ground().clone(), s.elements(), faces).expect("nbc faces are downward closed");
    NbcComplex { complex, order: order.clone() }
}

/// `Σ_σ q^{|σ|}` over the faces, in the `q, x` variables.
pub fn f_polynomial(c: &Complex) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::qx_zero();
    for face in c.faces() {
        p.add_term(face.len() as u32, 0, 1);
    }
    p
}

/// `q^{r_C} T_C((q+1)/q, 0)`.
pub fn bc_f_polynomial_closed(s: &Semimatroid) -> Result<BivariatePolynomial> {
    let sub = RationalFunction::new(&UniPoly::t() + &UniPoly::constant(1), UniPoly::t())?;
    let p = sub
        .compose_into(&s.tutte_sum().at_second_zero())
        .mul(&RationalFunction::from_poly(UniPoly::monomial(1, s.rank())))
        .into_polynomial()?;
    let mut out = BivariatePolynomial::qx_zero();
    for (k, &c) in p.coeffs().iter().enumerate() {
        out.add_term(k as u32, 0, c);
    }
    Ok(out)
}

/// nbc bases `σ` such that every `x ∈ σ` can be swapped for some `y < x`, `y ∉ σ`,
/// leaving an nbc face.
pub fn critical_nbc(s: &Semimatroid, order: &NbcOrder) -> Vec<Face> {
    let bc = bc_complex(s, order).complex;
    let rc = s.rank();
    let mut out: Vec<Face> = bc
        .faces()
        .filter(|&f| f.len() == rc && s.is_independent(f))
        .filter(|&f| {
            f.iter().all(|x| {
                order
                    .sequence()
                    .iter()
                    .take_while(|&&y| order.lt(y, x))
                    .any(|&y| !f.contains(y) && bc.contains(f.without(x).with(y)))
            })
        })
        .collect();
    out.sort_by(face_order);
    out
}

/// Vertex-decomposability certificate for `BC(C)` (natural order) built by
/// recursing on the largest element.
pub fn bc_shedding_order(s: &Semimatroid) -> Result<VdCertificate> {
    let cert = shedding(s)?;
    let bc = bc_complex(s, &NbcOrder::natural(s)).complex;
    if !cert.validate(&bc) {
        return Err(Error::Invariant("shedding certificate does not validate".into()));
    }
    Ok(cert)
}

fn shedding(s: &Semimatroid) -> Result<VdCertificate> {
    let Some(top) = s.elements().max_element() else {
        return Ok(VdCertificate::Simplex);
    };
    let deleted = s.delete(top)?;
    Ok(match s.classify(top)? {
        ElementClass::Nonface => shedding(&deleted)?,
        ElementClass::Loop => VdCertificate::Void,
        ElementClass::Coloop => shedding(&deleted)?.cone(),
        ElementClass::Ordinary => {
            let contracted = s.contract(top)?;
            let bc = bc_complex(s, &NbcOrder::natural(s)).complex;
            let single = Face::singleton(top);
            let del = bc.deletion(single);
            let lk = bc.link(single);
            let bc_del = bc_complex(&deleted, &NbcOrder::natural(&deleted)).complex;
            let bc_con = bc_complex(&contracted, &NbcOrder::natural(&contracted)).complex;
            if !del.same_faces(&bc_del) {
                return Err(Error::Invariant(format!("deletion of BC at {top} differs from BC of the deletion")));
            }
            if !lk.same_faces(&bc_con) {
                return Err(Error::Invariant(format!("link of BC at {top} differs from BC of the contraction")));
            }
            if lk.is_void() {
                shedding(&deleted)?
            } else {
                VdCertificate::Shed {
                    vertex: top,
                    link: Box::new(shedding(&contracted)?),
                    deletion: Box::new(shedding(&deleted)?),
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::GroundSet;
    use crate::homology::reduced_betti;

    fn f(ix: &[usize]) -> Face {
        Face::from_indices(ix.iter().copied())
    }

    fn ground(n: usize) -> Arc<GroundSet> {
        Arc::new(GroundSet::numbered(n))
    }

    fn instance_a() -> Semimatroid {
        let c = Complex::from_facets(ground(3), &[f(&[0, 1]), f(&[0, 2]), f(&[1, 2])]).unwrap();
        Semimatroid::from_fn(c, |s| s.len()).unwrap()
    }

    fn instance_b() -> Semimatroid {
        let c = Complex::simplex(ground(3), Face::full(3)).unwrap();
        Semimatroid::from_fn(c, |s| s.len().min(2)).unwrap()
    }

    fn instance_e() -> Semimatroid {
        let c = Complex::simplex(ground(1), Face::full(1)).unwrap();
        Semimatroid::from_fn(c, |_| 0).unwrap()
    }

    fn instance_f() -> Semimatroid {
        let c = Complex::from_facets(ground(2), &[f(&[0]), f(&[1])]).unwrap();
        Semimatroid::from_fn(c, |s| s.len()).unwrap()
    }

    #[test]
    fn circuit_sets() {
        let a = instance_a();
        assert!(circuits(&a, &NbcOrder::natural(&a)).circuits.is_empty());
        let b = instance_b();
        let cb = circuits(&b, &NbcOrder::natural(&b));
        assert_eq!(cb.circuits, vec![f(&[0, 1, 2])]);
        assert_eq!(cb.broken, vec![f(&[1, 2])]);
        let e = instance_e();
        let ce = circuits(&e, &NbcOrder::natural(&e));
        assert_eq!((ce.circuits, ce.broken), (vec![f(&[0])], vec![Face::EMPTY]));
    }

    #[test]
    fn broken_circuit_complexes() {
        let b = instance_b();
        let bc = bc_complex(&b, &NbcOrder::natural(&b)).complex;
        assert_eq!(bc.facets(), vec![f(&[0, 1]), f(&[0, 2])]);
        assert_eq!(f_polynomial(&bc).to_string(), "2*q^2 + 3*q + 1");
        assert_eq!(bc_f_polynomial_closed(&b).unwrap(), f_polynomial(&bc));
        let e = instance_e();
        assert!(bc_complex(&e, &NbcOrder::natural(&e)).complex.is_void());
        assert_eq!(bc_f_polynomial_closed(&e).unwrap().to_string(), "0");
        let a = instance_a();
        assert!(bc_complex(&a, &NbcOrder::natural(&a)).complex.same_faces(a.complex()));
    }

    #[test]
    fn reversed_order_changes_the_broken_circuit() {
        let b = instance_b();
        let order = NbcOrder::new(&b, vec![2, 1, 0]).unwrap();
        assert_eq!(circuits(&b, &order).broken, vec![f(&[0, 1])]);
        assert!(NbcOrder::new(&b, vec![0, 1]).is_err());
        assert!(NbcOrder::new(&b, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn critical_bases() {
        let a = instance_a();
        assert_eq!(critical_nbc(&a, &NbcOrder::natural(&a)), vec![f(&[1, 2])]);
        let b = instance_b();
        assert!(critical_nbc(&b, &NbcOrder::natural(&b)).is_empty());
        let ff = instance_f();
        assert_eq!(critical_nbc(&ff, &NbcOrder::natural(&ff)), vec![f(&[1])]);
    }

    #[test]
    fn shedding_certificates() {
        assert_eq!(bc_shedding_order(&instance_e()).unwrap(), VdCertificate::Void);
        match bc_shedding_order(&instance_a()).unwrap() {
            VdCertificate::Shed { vertex, .. } => assert_eq!(vertex, 2),
            other => panic!("unexpected {other:?}"),
        }
        let b = instance_b();
        bc_shedding_order(&b).unwrap();
        let bc = bc_complex(&b, &NbcOrder::natural(&b)).complex;
        assert!(reduced_betti(&bc).unwrap().support().is_empty());
    }
}
