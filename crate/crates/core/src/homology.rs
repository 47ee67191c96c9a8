//! Relative simplicial homology over the integers.
//!
//! Chains are augmented: the empty face is a generator in degree -1 whenever it
//! belongs to `A \ B`. Ranks and torsion come from the Smith normal form of each
//! boundary matrix, computed on checked `i64` entries and redone on big
//! integers if an entry would overflow.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::complex::{face_order, Complex, Face};
use crate::error::{Error, Result};
use crate::polynomial::BivariatePolynomial;
use crate::poset::{Element, MonotoneMap};

trait SnfEntry: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Self;
    /// `self - q * b`, `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn divides(&self, a: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl SnfEntry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn divides(&self, a: &Self) -> bool {
        a % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfEntry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn divides(&self, a: &Self) -> bool {
        Zero::is_zero(&(a % self))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Diagonalises `a` in place; returns the nonzero invariant factors (absolute
/// values, each dividing the next) or `None` on overflow.
fn snf_in_place<T: SnfEntry>(a: &mut [Vec<T>]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs_lt(&a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quot(&a[t][t]);
                for j in t..cols {
                    a[i][j] = a[i][j].sub_mul(&q, &a[t][j])?;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quot(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    row[j] = row[j].sub_mul(&q, &row[t])?;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot appeared; make it the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs_lt(&a[best.0][best.1]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs_lt(&a[best.0][best.1]) {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[t][t].divides(&a[i][j])));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].add(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].to_big().abs());
    }
    Some(factors)
}

/// Invariant factors `d_1 | d_2 | ...` (nonzero only) of an integer matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut small = m.to_vec();
    if let Some(f) = snf_in_place(&mut small) {
        return f;
    }
    let mut big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    snf_in_place(&mut big).expect("big-integer elimination cannot overflow")
}

/// Big-integer input variant of [`smith_normal_form`].
pub fn smith_normal_form_big(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut big = m.to_vec();
    snf_in_place(&mut big).expect("big-integer elimination cannot overflow")
}

/// Augmented relative chain complex of a pair `(A, B)`.
#[derive(Clone, Debug)]
pub struct RelativeChainComplex {
    bases: BTreeMap<i32, Vec<Face>>,
}

fn degree(face: Face) -> i32 {
    face.len() as i32 - 1
}

impl RelativeChainComplex {
    pub fn new(a: &Complex, b: &Complex) -> Result<Self> {
        if let Some(extra) = b.faces().find(|f| !a.contains(*f)) {
            return Err(Error::Argument(format!("subcomplex face {extra:?} missing from the complex")));
        }
        let mut bases: BTreeMap<i32, Vec<Face>> = BTreeMap::new();
        for face in a.faces().filter(|f| !b.contains(*f)) {
            bases.entry(degree(face)).or_default().push(face);
        }
        for basis in bases.values_mut() {
            basis.sort_by(face_order);
        }
        Ok(Self { bases })
    }

    pub fn basis(&self, d: i32) -> &[Face] {
        self.bases.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn top_degree(&self) -> Option<i32> {
        self.bases.keys().next_back().copied()
    }

    /// Matrix of `∂_d : C_d → C_{d-1}`, rows indexed by the degree `d-1` basis.
    pub fn boundary(&self, d: i32) -> Vec<Vec<i64>> {
        let rows = self.basis(d - 1);
        let cols = self.basis(d);
        let index: BTreeMap<Face, usize> = rows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (j, &sigma) in cols.iter().enumerate() {
            for (k, v) in sigma.iter().enumerate() {
                if let Some(&i) = index.get(&sigma.without(v)) {
                    m[i][j] = if k % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        m
    }

    /// Checks `∂_{d-1} ∘ ∂_d = 0` in every degree.
    pub fn check_boundary_squared(&self) -> Result<()> {
        let Some(top) = self.top_degree() else { return Ok(()) };
        for d in 1..=top {
            let outer = self.boundary(d - 1);
            let inner = self.boundary(d);
            for (i, row) in outer.iter().enumerate() {
                for j in 0..inner.first().map_or(0, Vec::len) {
                    let s: i64 = row.iter().zip(&inner).map(|(&a, r)| a * r[j]).sum();
                    if s != 0 {
                        return Err(Error::Invariant(format!("boundary squared nonzero in degree {d} at ({i},{j})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reduced relative Betti numbers and torsion coefficients per degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub betti: BTreeMap<i32, usize>,
    pub torsion: BTreeMap<i32, Vec<BigInt>>,
}

impl BettiTable {
    pub fn get(&self, d: i32) -> usize {
        self.betti.get(&d).copied().unwrap_or(0)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.values().all(Vec::is_empty)
    }

    /// Degrees with nonzero free rank.
    pub fn support(&self) -> Vec<i32> {
        self.betti.iter().filter(|(_, &b)| b > 0).map(|(&d, _)| d).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().map(|(&d, &b)| if d.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn to_json(&self) -> Value {
        let betti: serde_json::Map<String, Value> = self.betti.iter().map(|(d, b)| (d.to_string(), json!(b))).collect();
        let torsion: serde_json::Map<String, Value> = self
            .torsion
            .iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(d, t)| (d.to_string(), json!(t.iter().map(|x| x.to_string()).collect::<Vec<_>>())))
            .collect();
        json!({ "betti": betti, "torsion": torsion })
    }
}

/// `β̃_d(A, B)` and torsion for every degree from -1 to the top dimension of `A`.
pub fn relative_betti(a: &Complex, b: &Complex) -> Result<BettiTable> {
    let chains = RelativeChainComplex::new(a, b)?;
    chains.check_boundary_squared()?;
    let top = a.faces().map(degree).max().unwrap_or(-1);
    // rank and torsion of ∂_d for d in -1..=top+1
    let mut ranks = BTreeMap::new();
    let mut torsion_of = BTreeMap::new();
    for d in 0..=top + 1 {
        let m = chains.boundary(d);
        let factors = if m.is_empty() || m[0].is_empty() { Vec::new() } else { smith_normal_form(&m) };
        ranks.insert(d, factors.len());
        torsion_of.insert(d, factors.into_iter().filter(|f| !f.is_one()).collect::<Vec<_>>());
    }
    let mut table = BettiTable::default();
    for d in -1..=top {
        let dim = chains.basis(d).len();
        let rank_out = ranks.get(&d).copied().unwrap_or(0);
        let rank_in = ranks.get(&(d + 1)).copied().unwrap_or(0);
        table.betti.insert(d, dim - rank_out - rank_in);
        table.torsion.insert(d, torsion_of.remove(&(d + 1)).unwrap_or_default());
    }
    let chain_euler: i64 = (-1..=top)
        .map(|d| {
            let n = chains.basis(d).len() as i64;
            if d.rem_euclid(2) == 0 {
                n
            } else {
                -n
            }
        })
        .sum();
    if chain_euler != table.euler_characteristic() {
        return Err(Error::Invariant("Euler-Poincaré identity fails".into()));
    }
    Ok(table)
}

/// Reduced homology of a single complex.
pub fn reduced_betti(c: &Complex) -> Result<BettiTable> {
    relative_betti(c, &Complex::void(c.ground().clone()))
}

/// Poincaré polynomial computed from homology, with any torsion reported alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPoincare {
    pub polynomial: BivariatePolynomial,
    /// `(value, degree) → torsion coefficients`, only nonempty entries.
    pub torsion: BTreeMap<(Element, i32), Vec<BigInt>>,
}

/// `P(f; q, x) = Σ_j Σ_d β̃_d(Δ_{≤j}, Δ_{<j}) x^j q^{d+1}`.
pub fn poincare_from_homology(f: &MonotoneMap) -> Result<HomologyPoincare> {
    if !f.poset().is_naturals() {
        return Err(Error::Domain("Poincaré polynomial needs a map into the naturals".into()));
    }
    let mut polynomial = BivariatePolynomial::qx_zero();
    let mut torsion = BTreeMap::new();
    for j in f.image() {
        let (le, lt) = f.sublevel_pair(j)?;
        let table = relative_betti(&le, &lt)?;
        for (&d, &b) in &table.betti {
            polynomial.add_term((d + 1) as u32, j as u32, b as i64);
        }
        for (&d, t) in &table.torsion {
            if !t.is_empty() {
                torsion.insert((j, d), t.clone());
            }
        }
    }
    Ok(HomologyPoincare { polynomial, torsion })
}

/// Relative Betti table of the sublevel pair of `f` at `p`.
pub fn sublevel_betti(f: &MonotoneMap, p: Element) -> Result<BettiTable> {
    let (le, lt) = f.sublevel_pair(p)?;
    relative_betti(&le, &lt)
}
