//! Sparse multivariate polynomials with exact coefficients.
//!
//! Monomials are exponent vectors ordered graded-lexicographically with the
//! declared variable order, so term iteration, leading terms and rendered
//! output are all deterministic.

use super::scalar::{CoeffField, Scalar};
use super::AlgebraError;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Exponent vector. Ordered by total degree first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial. The term map never stores zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: CoeffField,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(field: CoeffField, nvars: usize) -> Self {
        Poly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: CoeffField, nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: CoeffField, nvars: usize) -> Self {
        Poly::constant(field, nvars, field.one())
    }

    pub fn from_i64(field: CoeffField, nvars: usize, n: i64) -> Self {
        Poly::constant(field, nvars, field.from_i64(n))
    }

    pub fn var(field: CoeffField, nvars: usize, i: usize) -> Result<Self, AlgebraError> {
        if i >= nvars {
            return Err(AlgebraError::BadVariable(i, nvars));
        }
        let mut p = Poly::zero(field, nvars);
        p.terms.insert(Monomial::var(nvars, i), field.one());
        Ok(p)
    }

    pub fn monomial(field: CoeffField, nvars: usize, m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(field, nvars);
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one(self.nvars))
                .map(|c| *c == self.field.one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Graded-lex leading term.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of the constant monomial (zero scalar if absent).
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn assert_compat(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        assert_eq!(self.nvars, other.nvars, "mixed variable universes");
    }

    fn insert_term(&mut self, m: Monomial, c: Scalar) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = self.field.add(&old, &c);
                if !self.field.is_zero(&s) {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_compat(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_compat(other);
        let mut out = Poly::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero(self.field, self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.field, self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Formal partial derivative with respect to variable `i`. In
    /// characteristic p the exponent multiplier reduces mod p, so d(x^p) = 0.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mult = self.field.from_u64(e as u64);
            let coeff = self.field.mul(c, &mult);
            if self.field.is_zero(&coeff) {
                continue;
            }
            let mut me = m.clone();
            me.0[i] -= 1;
            out.insert_term(me, coeff);
        }
        out
    }

    /// Exact p-th root in characteristic p: defined iff every exponent is
    /// divisible by p (coefficients are Frobenius-fixed in 𝔽_p).
    pub fn p_th_root(&self) -> Option<Poly> {
        let p = self.field.char_p();
        assert!(p > 0, "p-th root in characteristic 0");
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            if m.0.iter().any(|&e| e % p as u32 != 0) {
                return None;
            }
            let root = Monomial(m.0.iter().map(|&e| e / p as u32).collect());
            out.insert_term(root, self.field.frobenius(c));
        }
        Some(out)
    }

    /// Raise every variable to the p-th power (substitute t_i -> t_i^p) and
    /// apply Frobenius to the coefficients; this is the p-th power map on
    /// polynomials over 𝔽_p.
    pub fn frobenius_pow(&self) -> Poly {
        let p = self.field.char_p() as u32;
        assert!(p > 0, "frobenius in characteristic 0");
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let up = Monomial(m.0.iter().map(|&e| e * p).collect());
            out.insert_term(up, self.field.frobenius(c));
        }
        out
    }

    /// Deterministic rendering against variable names: graded-lex descending
    /// terms joined with `+`/`-`. Re-parses to the same polynomial.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "name list arity");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = self.field.is_negative(c);
            let abs = if neg { self.field.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = self.field.render(&abs);
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                out.push_str(&coeff_str);
            } else {
                if coeff_str != "1" {
                    out.push_str(&coeff_str);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoeffField {
        CoeffField::rationals()
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(q(), n, i).unwrap()
    }

    #[test]
    fn grlex_order() {
        // degree first, then lex on exponent vectors
        let a = Monomial(vec![2, 0]); // t1^2
        let b = Monomial(vec![1, 1]); // t1 t2
        let c = Monomial(vec![0, 1]); // t2
        assert!(a > b); // same degree, lex: [2,0] > [1,1]
        assert!(b > c); // higher degree wins
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let t1 = x(2, 0);
        let t2 = x(2, 1);
        let s = t1.add(&t2);
        let p = s.mul(&s);
        // (t1+t2)^2 = t1^2 + 2 t1 t2 + t2^2
        assert_eq!(p.num_terms(), 3);
        let diff = p.sub(&p);
        assert!(diff.is_zero());
    }

    #[test]
    fn char_p_squares_collapse() {
        let f2 = CoeffField::prime(2).unwrap();
        let t1 = Poly::var(f2, 1, 0).unwrap();
        let one = Poly::one(f2, 1);
        let s = t1.add(&one);
        let sq = s.mul(&s);
        // (t+1)^2 = t^2 + 1 in characteristic 2
        assert_eq!(sq.num_terms(), 2);
        assert!(sq.partial(0).is_zero());
        let root = sq.p_th_root().unwrap();
        assert_eq!(root, s);
        assert_eq!(s.frobenius_pow(), sq);
    }

    #[test]
    fn partial_derivative() {
        let t1 = x(2, 0);
        let t2 = x(2, 1);
        let p = t1.pow(2).mul(&t2); // t1^2 t2
        assert_eq!(p.partial(0), t1.mul(&t2).scale(&q().from_i64(2)));
        assert_eq!(p.partial(1), t1.pow(2));
    }

    #[test]
    fn render_matches_expectations() {
        let names = vec!["t1".to_string(), "t2".to_string()];
        let t1 = x(2, 0);
        let t2 = x(2, 1);
        let p = t1
            .pow(2)
            .mul(&t2)
            .add(&Poly::from_i64(q(), 2, 3));
        assert_eq!(p.render(&names), "t1^2*t2 + 3");
        let m = t1.sub(&t2.scale(&q().from_i64(2)));
        assert_eq!(m.render(&names), "t1 - 2*t2");
        assert_eq!(Poly::zero(q(), 2).render(&names), "0");
        let neg = t1.neg();
        assert_eq!(neg.render(&names), "-t1");
    }
}
