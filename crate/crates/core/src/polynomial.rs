//! Integer polynomials in two formal variables, plus the small univariate
//! fraction-field layer used for substitutions like `(t+1)/t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

fn checked(v: Option<i64>) -> i64 {
    v.expect("polynomial coefficient overflow")
}

/// Sparse integer polynomial in two named variables. The key of `terms` is
/// `(exponent of vars[0], exponent of vars[1])`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    vars: [char; 2],
    terms: BTreeMap<(u32, u32), i64>,
}

impl BivariatePolynomial {
    pub fn zero(vars: [char; 2]) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    /// Polynomial in `x, y` (Tutte polynomials).
    pub fn tutte_zero() -> Self {
        Self::zero(['x', 'y'])
    }

    /// Polynomial in `q, x` (Poincaré and evasive polynomials, f-polynomials).
    pub fn qx_zero() -> Self {
        Self::zero(['q', 'x'])
    }

    pub fn constant(vars: [char; 2], c: i64) -> Self {
        Self::monomial(vars, c, 0, 0)
    }

    pub fn monomial(vars: [char; 2], c: i64, e0: u32, e1: u32) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(e0, e1, c);
        p
    }

    pub fn vars(&self) -> [char; 2] {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e0: u32, e1: u32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((e0, e1)).or_insert(0);
        *entry = checked(entry.checked_add(c));
        if *entry == 0 {
            self.terms.remove(&(e0, e1));
        }
    }

    pub fn coefficient(&self, e0: u32, e1: u32) -> i64 {
        self.terms.get(&(e0, e1)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars, 1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Value with the second variable set to zero, as a univariate polynomial in the first.
    pub fn at_second_zero(&self) -> UniPoly {
        let mut c = Vec::new();
        for (&(a, b), &v) in &self.terms {
            if b == 0 {
                if c.len() <= a as usize {
                    c.resize(a as usize + 1, 0);
                }
                c[a as usize] = v;
            }
        }
        UniPoly::new(c)
    }

    /// Value with the first variable set to zero, as a univariate polynomial in the second.
    pub fn at_first_zero(&self) -> UniPoly {
        let mut c = Vec::new();
        for (&(a, b), &v) in &self.terms {
            if a == 0 {
                if c.len() <= b as usize {
                    c.resize(b as usize + 1, 0);
                }
                c[b as usize] = v;
            }
        }
        UniPoly::new(c)
    }

    pub fn constant_term(&self) -> i64 {
        self.coefficient(0, 0)
    }

    /// True when every coefficient of `self` is at least the matching one of `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        let keys = self.terms.keys().chain(other.terms.keys());
        keys.into_iter().all(|&(a, b)| self.coefficient(a, b) >= other.coefficient(a, b))
    }

    fn sort_key(&self, key: (u32, u32)) -> (u32, u32) {
        // the variable named `x` sorts first when present
        if self.vars[1] == 'x' {
            (key.1, key.0)
        } else {
            key
        }
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&k| std::cmp::Reverse(self.sort_key(k)));
        for (n, key) in keys.into_iter().enumerate() {
            let c = self.terms[&key];
            let mut factors = Vec::new();
            for (var, e) in self.vars.iter().zip([key.0, key.1]) {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            let mag = c.unsigned_abs();
            let body = if factors.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                factors.join("*")
            } else {
                format!("{mag}*{}", factors.join("*"))
            };
            match (n, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        assert_eq!(self.vars, rhs.vars, "adding polynomials over different variables");
        let mut out = self.clone();
        for (&(a, b), &c) in &rhs.terms {
            out.add_term(a, b, c);
        }
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self + &rhs
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -*v;
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self - &rhs
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        assert_eq!(self.vars, rhs.vars, "multiplying polynomials over different variables");
        let mut out = BivariatePolynomial::zero(self.vars);
        for (&(a, b), &c) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                out.add_term(a + a2, b + b2, checked(c.checked_mul(c2)));
            }
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self * &rhs
    }
}

/// Dense univariate integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly(Vec<i64>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn t() -> Self {
        UniPoly(vec![0, 1])
    }

    pub fn monomial(c: i64, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| checked(checked(acc.checked_mul(t)).checked_add(c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` when the quotient would not be an integer polynomial.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let dd = d.degree()?;
        let lead = *d.0.last().expect("nonzero divisor");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return rem.iter().all(|&c| c == 0).then(UniPoly::zero);
        }
        let mut q = vec![0i64; rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd];
            if c % lead != 0 {
                return None;
            }
            let factor = c / lead;
            q[k] = factor;
            for (j, &dc) in d.0.iter().enumerate() {
                rem[k + j] = checked(rem[k + j].checked_sub(checked(factor.checked_mul(dc))));
            }
        }
        rem.iter().all(|&c| c == 0).then(|| UniPoly::new(q))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        let v = (0..n)
            .map(|i| {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = rhs.0.get(i).copied().unwrap_or(0);
                checked(a.checked_add(b))
            })
            .collect();
        UniPoly::new(v)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![0i64; self.0.len() + rhs.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in rhs.0.iter().enumerate() {
                v[i + j] = checked(v[i + j].checked_add(checked(a.checked_mul(b))));
            }
        }
        UniPoly::new(v)
    }
}

/// Quotient of two univariate integer polynomials.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self { num: p, den: UniPoly::constant(1) }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self { num: &self.num + &other.num, den: self.den.clone() };
        }
        Self { num: &(&self.num * &other.den) + &(&other.num * &self.den), den: &self.den * &other.den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn pow(&self, k: u32) -> Self {
        Self { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Substitutes `self` for the variable of `p` (Horner scheme).
    pub fn compose_into(&self, p: &UniPoly) -> Self {
        let mut acc = Self::from_poly(UniPoly::zero());
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::from_poly(UniPoly::constant(c)));
        }
        acc
    }

    /// The polynomial this function equals; an error if the division leaves a remainder.
    pub fn into_polynomial(self) -> Result<UniPoly> {
        self.num.div_exact(&self.den).ok_or_else(|| {
            Error::Invariant(format!("rational function {:?}/{:?} is not a polynomial", self.num, self.den))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_orders_by_x_degree() {
        let mut p = BivariatePolynomial::qx_zero();
        p.add_term(0, 0, 1);
        p.add_term(1, 1, 3);
        p.add_term(2, 2, 3);
        assert_eq!(p.to_string(), "3*q^2*x^2 + 3*q*x + 1");
        let mut n = BivariatePolynomial::qx_zero();
        n.add_term(2, 0, 1);
        n.add_term(3, 1, 1);
        assert_eq!(n.to_string(), "q^3*x + q^2");
        let mut t = BivariatePolynomial::tutte_zero();
        t.add_term(0, 1, 1);
        t.add_term(1, 0, 1);
        t.add_term(2, 0, 1);
        assert_eq!(t.to_string(), "x^2 + x + y");
        assert_eq!(BivariatePolynomial::qx_zero().to_string(), "0");
        let mut neg = BivariatePolynomial::tutte_zero();
        neg.add_term(1, 0, -2);
        neg.add_term(0, 0, 1);
        assert_eq!(neg.to_string(), "-2*x + 1");
    }

    #[test]
    fn arithmetic_cancels() {
        let x = BivariatePolynomial::monomial(['x', 'y'], 1, 1, 0);
        let one = BivariatePolynomial::constant(['x', 'y'], 1);
        let sq = (&x - &one).pow(2);
        assert_eq!(sq.to_string(), "x^2 - 2*x + 1");
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn exact_division() {
        let p = UniPoly::new(vec![1, 2, 1]);
        assert_eq!(p.div_exact(&UniPoly::new(vec![1, 1])), Some(UniPoly::new(vec![1, 1])));
        assert_eq!(p.div_exact(&UniPoly::t()), None);
        assert_eq!(UniPoly::zero().div_exact(&UniPoly::t()), Some(UniPoly::zero()));
    }

    #[test]
    fn substitution_clears_denominator() {
        // t^2 * s(t) with s = (t+1)/t and p(s) = s^2 + s + 1
        let s = RationalFunction::new(UniPoly::new(vec![1, 1]), UniPoly::t()).unwrap();
        let p = UniPoly::new(vec![1, 1, 1]);
        let cleared = s.compose_into(&p).mul(&RationalFunction::from_poly(UniPoly::monomial(1, 2)));
        assert_eq!(cleared.into_polynomial().unwrap(), UniPoly::new(vec![1, 3, 3]));
        let bad = s.compose_into(&UniPoly::new(vec![0, 0, 1]));
        assert!(bad.into_polynomial().is_err());
    }
}
