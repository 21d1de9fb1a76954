//! Finitely generated subfields of the ambient rational function field,
//! given by characteristic, an ordered ambient variable list and a
//! generator list. The spec denotes the subfield the generators generate
//! over the prime field.

use super::FieldError;
use crate::algebra::{parse_element, CoeffField, ElementParseError, RatFunc};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Debug)]
pub struct FieldSpec {
    char_p: u64,
    vars: Vec<String>,
    generators: Vec<RatFunc>,
}

impl FieldSpec {
    pub fn new(
        char_p: u64,
        vars: Vec<String>,
        generators: Vec<RatFunc>,
    ) -> Result<Self, FieldError> {
        let field = CoeffField::of_char(char_p)?;
        for g in &generators {
            if g.field() != field {
                return Err(FieldError::CharMismatch {
                    left: char_p,
                    right: g.field().char_p(),
                });
            }
            if g.nvars() != vars.len() {
                return Err(FieldError::AmbientMismatch);
            }
        }
        Ok(FieldSpec { char_p, vars, generators })
    }

    /// The prime field inside the given ambient: no generators.
    pub fn prime_field(char_p: u64, vars: Vec<String>) -> Result<Self, FieldError> {
        FieldSpec::new(char_p, vars, Vec::new())
    }

    /// The full ambient rational function field: generated by the variables.
    pub fn ambient(char_p: u64, vars: Vec<String>) -> Result<Self, FieldError> {
        let field = CoeffField::of_char(char_p)?;
        let n = vars.len();
        let gens = (0..n)
            .map(|i| RatFunc::var(field, n, i).expect("index in range"))
            .collect();
        FieldSpec::new(char_p, vars, gens)
    }

    pub fn char_p(&self) -> u64 {
        self.char_p
    }

    pub fn coeff_field(&self) -> CoeffField {
        CoeffField::of_char(self.char_p).expect("validated at construction")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[RatFunc] {
        &self.generators
    }

    pub fn same_ambient(&self, other: &FieldSpec) -> bool {
        self.char_p == other.char_p && self.vars == other.vars
    }

    /// True when the generator list is exactly the ambient variables.
    pub fn is_full_ambient(&self) -> bool {
        let field = self.coeff_field();
        self.generators.len() == self.nvars()
            && self.generators.iter().enumerate().all(|(i, g)| {
                *g == RatFunc::var(field, self.nvars(), i).expect("index in range")
            })
    }

    /// Same ambient, different generators.
    pub fn with_generators(&self, generators: Vec<RatFunc>) -> Result<FieldSpec, FieldError> {
        FieldSpec::new(self.char_p, self.vars.clone(), generators)
    }

    /// Adjoin extra generators, skipping exact duplicates.
    pub fn adjoin(&self, extra: &[RatFunc]) -> Result<FieldSpec, FieldError> {
        let mut gens = self.generators.clone();
        for e in extra {
            if !gens.iter().any(|g| g == e) {
                gens.push(e.clone());
            }
        }
        self.with_generators(gens)
    }

    /// The Frobenius image: the subfield generated by the p-th powers of the
    /// generators (equals the field of p-th powers of this subfield).
    pub fn frobenius_spec(&self) -> Result<FieldSpec, FieldError> {
        if self.char_p == 0 {
            return Err(FieldError::WrongCharacteristic {
                expected: "positive characteristic",
            });
        }
        let p = self.char_p as u32;
        let gens = self.generators.iter().map(|g| g.pow(p)).collect();
        self.with_generators(gens)
    }

    /// Products of generators up to the given total degree, ordered by
    /// degree then lexicographic exponent vector, starting with 1.
    /// Syntactic duplicates are dropped (first occurrence kept).
    pub fn monomials(&self, bound: u32) -> Vec<RatFunc> {
        let field = self.coeff_field();
        let m = self.generators.len();
        // cache generator powers
        let powers: Vec<Vec<RatFunc>> = self
            .generators
            .iter()
            .map(|g| {
                let mut v = vec![RatFunc::one(field, self.nvars())];
                for e in 1..=bound {
                    v.push(v[(e - 1) as usize].mul(g));
                }
                v
            })
            .collect();
        let mut out: Vec<RatFunc> = Vec::new();
        for expo in exponent_vectors(m, bound) {
            let mut prod = RatFunc::one(field, self.nvars());
            for (i, &e) in expo.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&powers[i][e as usize]);
                }
            }
            if !out.iter().any(|q| *q == prod) {
                out.push(prod);
            }
        }
        out
    }

    pub fn render_element(&self, f: &RatFunc) -> String {
        f.render(&self.vars)
    }

    pub fn parse_element(&self, src: &str) -> Result<RatFunc, ElementParseError> {
        parse_element(src, self.coeff_field(), &self.vars, &BTreeMap::new())
    }
}

/// All exponent vectors of length `m` with total degree at most `bound`,
/// ordered by total degree then lexicographically.
pub(crate) fn exponent_vectors(m: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if m == 0 {
        out.push(Vec::new());
        return out;
    }
    for d in 0..=bound {
        let mut prefix = Vec::with_capacity(m);
        fill(m, d, &mut prefix, &mut out);
    }
    out
}

fn fill(m: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == m - 1 {
        prefix.push(remaining);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for e in 0..=remaining {
        prefix.push(e);
        fill(m, remaining - e, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> FieldSpec {
        FieldSpec::ambient(0, vec!["t1".into(), "t2".into()]).unwrap()
    }

    #[test]
    fn exponent_vector_order() {
        let vs = exponent_vectors(2, 2);
        let expect: Vec<Vec<u32>> = vec![
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![0, 2],
            vec![1, 1],
            vec![2, 0],
        ];
        assert_eq!(vs, expect);
    }

    #[test]
    fn monomials_start_with_one_and_dedupe() {
        let amb = q2();
        let t1 = amb.parse_element("t1").unwrap();
        let k = amb.with_generators(vec![t1.clone(), t1.clone()]).unwrap();
        let mons = k.monomials(2);
        assert_eq!(mons[0], RatFunc::one(amb.coeff_field(), 2));
        // duplicates of t1 collapse: 1, t1, t1^2 only
        assert_eq!(mons.len(), 3);
    }

    #[test]
    fn ambient_detection() {
        assert!(q2().is_full_ambient());
        let t1 = q2().parse_element("t1").unwrap();
        assert!(!q2().with_generators(vec![t1]).unwrap().is_full_ambient());
    }

    #[test]
    fn frobenius_spec_squares_generators() {
        let amb = FieldSpec::ambient(2, vec!["t1".into()]).unwrap();
        let fr = amb.frobenius_spec().unwrap();
        let t1sq = amb.parse_element("t1^2").unwrap();
        assert_eq!(fr.generators(), &[t1sq]);
    }
}
