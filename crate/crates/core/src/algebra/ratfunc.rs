//! Exact rational functions: pairs of polynomials with nonzero denominator.
//!
//! Equality is decided by cross-multiplication, so no multivariate GCD is
//! needed. A cheap normalization pass (integer coefficients with content 1
//! and a positive graded-lex leading denominator coefficient over ℚ, monic
//! denominator over 𝔽_p) keeps representations small and makes syntactic
//! equality catch most duplicates.

use super::poly::Poly;
use super::scalar::{CoeffField, Scalar};
use super::AlgebraError;
use num::{BigInt, BigRational, Integer, One, Zero};

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.field() != den.field() {
            return Err(AlgebraError::MixedCharacteristic(
                num.field().char_p(),
                den.field().char_p(),
            ));
        }
        if num.nvars() != den.nvars() {
            return Err(AlgebraError::MixedArity(num.nvars(), den.nvars()));
        }
        let mut f = RatFunc { num, den };
        f.normalize();
        Ok(f)
    }

    pub fn from_poly(num: Poly) -> Self {
        let den = Poly::one(num.field(), num.nvars());
        let mut f = RatFunc { num, den };
        f.normalize();
        f
    }

    pub fn zero(field: CoeffField, nvars: usize) -> Self {
        RatFunc::from_poly(Poly::zero(field, nvars))
    }

    pub fn one(field: CoeffField, nvars: usize) -> Self {
        RatFunc::from_poly(Poly::one(field, nvars))
    }

    pub fn from_i64(field: CoeffField, nvars: usize, n: i64) -> Self {
        RatFunc::from_poly(Poly::from_i64(field, nvars, n))
    }

    pub fn var(field: CoeffField, nvars: usize, i: usize) -> Result<Self, AlgebraError> {
        Ok(RatFunc::from_poly(Poly::var(field, nvars, i)?))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> CoeffField {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.field(), self.nvars());
            return;
        }
        match self.field().char_p() {
            0 => self.normalize_rat(),
            _ => self.normalize_fp(),
        }
    }

    fn normalize_fp(&mut self) {
        let field = self.field();
        let lead = self.den.leading().expect("nonzero denominator").1.clone();
        if lead != field.one() {
            let inv = field.inv(&lead).expect("leading coefficient is a unit");
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    fn normalize_rat(&mut self) {
        let field = self.field();
        // clear coefficient denominators
        let mut lcm = BigInt::one();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            if let Scalar::Rat(r) = c {
                lcm = lcm.lcm(r.denom());
            }
        }
        if !lcm.is_one() {
            let s = Scalar::Rat(BigRational::from(lcm));
            self.num = self.num.scale(&s);
            self.den = self.den.scale(&s);
        }
        // divide by the common integer content
        let mut content = BigInt::zero();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            if let Scalar::Rat(r) = c {
                content = content.gcd(r.numer());
            }
        }
        if !content.is_zero() && !content.is_one() {
            let s = Scalar::Rat(BigRational::from(content).recip());
            self.num = self.num.scale(&s);
            self.den = self.den.scale(&s);
        }
        // positive leading denominator coefficient
        let lead = self.den.leading().expect("nonzero denominator").1.clone();
        if field.is_negative(&lead) {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("denominators stay nonzero")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("denominators stay nonzero")
    }

    pub fn inv(&self) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut out = RatFunc::one(self.field(), self.nvars());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    /// Formal partial derivative by the quotient rule.
    pub fn partial(&self, i: usize) -> RatFunc {
        let num = self
            .num
            .partial(i)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.partial(i)));
        let den = self.den.mul(&self.den);
        RatFunc::new(num, den).expect("square of nonzero denominator")
    }

    /// Exact p-th root within the same rational function field, if one
    /// exists: f = (n d^{p-1}) / d^p, so f^{1/p} exists iff n d^{p-1} is a
    /// p-th power of a polynomial.
    pub fn p_th_root(&self) -> Option<RatFunc> {
        let p = self.field().char_p();
        assert!(p > 0, "p-th root in characteristic 0");
        if self.is_zero() {
            return Some(self.clone());
        }
        let g = self.num.mul(&self.den.pow(p as u32 - 1));
        let root = g.p_th_root()?;
        let out = RatFunc::new(root, self.den.clone()).expect("denominator nonzero");
        debug_assert_eq!(out.pow(p as u32), *self);
        Some(out)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            self.num.render(names)
        } else {
            format!("({})/({})", self.num.render(names), self.den.render(names))
        }
    }
}

/// Cross-multiplication equality: n1 d2 = n2 d1 as polynomials.
impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoeffField {
        CoeffField::rationals()
    }

    fn t(i: usize) -> RatFunc {
        RatFunc::var(q(), 2, i).unwrap()
    }

    #[test]
    fn cross_multiplication_equality() {
        // t1/t2 == (t1*t1)/(t1*t2)
        let a = t(0).div(&t(1)).unwrap();
        let b = t(0).mul(&t(0)).div(&t(0).mul(&t(1))).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, t(0));
    }

    #[test]
    fn field_identities() {
        let a = t(0).add(&RatFunc::from_i64(q(), 2, 3));
        let b = t(1).sub(&t(0));
        let prod = a.mul(&b);
        assert_eq!(prod.div(&b).unwrap(), a);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), RatFunc::one(q(), 2));
    }

    #[test]
    fn quotient_rule() {
        // d/dt1 (t1/t2) = 1/t2
        let f = t(0).div(&t(1)).unwrap();
        let expect = RatFunc::one(q(), 2).div(&t(1)).unwrap();
        assert_eq!(f.partial(0), expect);
        // d/dt2 (t1/t2) = -t1/t2^2
        let expect2 = t(0).neg().div(&t(1).mul(&t(1))).unwrap();
        assert_eq!(f.partial(1), expect2);
    }

    #[test]
    fn p_th_root_of_fraction() {
        let f2 = CoeffField::prime(2).unwrap();
        let w = RatFunc::var(f2, 1, 0).unwrap();
        let sq = w.pow(4).div(&w.pow(2)).unwrap();
        assert_eq!(sq.p_th_root().unwrap(), w);
        let not_sq = w.add(&RatFunc::one(f2, 1)).mul(&w);
        // w^2 + w is not a square in F2[w]
        assert!(not_sq.p_th_root().is_none());
    }

    #[test]
    fn normalization_is_content_free() {
        // (2 t1) / 4 should normalize to t1 / 2
        let two_t1 = t(0).scale(&q().from_i64(2));
        let four = RatFunc::from_i64(q(), 2, 4);
        let f = two_t1.div(&four).unwrap();
        let names = vec!["t1".into(), "t2".into()];
        assert_eq!(f.render(&names), "(t1)/(2)");
    }

    #[test]
    fn render_polynomial_without_parens() {
        let f = t(0).pow(2).add(&RatFunc::from_i64(q(), 2, 1));
        let names = vec!["t1".into(), "t2".into()];
        assert_eq!(f.render(&names), "t1^2 + 1");
    }
}
