//! Bounded search for polynomial relations: a nontrivial polynomial with
//! coefficients in a generated subfield that vanishes on a given tuple of
//! ambient elements.

use super::span::{reduced_monomials, BlockSystem};
use super::spec::{exponent_vectors, FieldSpec};
use super::FieldError;
use crate::algebra::{Monomial, RatFunc};
use crate::verdict::{Verdict, Witness};

/// A polynomial in slot variables (one slot per queried element) with
/// coefficients in the base subfield, stored as explicit ambient elements.
#[derive(Clone, Debug)]
pub struct AnnPoly {
    pub slots: usize,
    /// (exponent vector over slots, coefficient), graded-lex ascending
    pub terms: Vec<(Monomial, RatFunc)>,
}

const SLOT_NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl AnnPoly {
    pub fn eval(&self, elems: &[RatFunc]) -> RatFunc {
        assert_eq!(elems.len(), self.slots);
        let field = elems[0].field();
        let nvars = elems[0].nvars();
        let mut acc = RatFunc::zero(field, nvars);
        for (expo, coeff) in &self.terms {
            let mut prod = coeff.clone();
            for (i, &e) in expo.0.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&elems[i].pow(e));
                }
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// Formal partial derivative in the given slot (coefficients are base
    /// field constants with respect to the slots).
    pub fn partial(&self, slot: usize) -> AnnPoly {
        let mut terms = Vec::new();
        for (expo, coeff) in &self.terms {
            let e = expo.0[slot];
            if e == 0 {
                continue;
            }
            let field = coeff.field();
            let mult = RatFunc::from_poly(crate::algebra::Poly::constant(
                field,
                coeff.nvars(),
                field.from_u64(e as u64),
            ));
            let scaled = coeff.mul(&mult);
            if scaled.is_zero() {
                continue;
            }
            let mut me = expo.clone();
            me.0[slot] -= 1;
            terms.push((me, scaled));
        }
        AnnPoly { slots: self.slots, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Slot variable names: x, y, z, w for up to four slots, else s1..sn.
    /// Falls back to s1..sn when an ambient variable shadows a slot name.
    pub fn slot_names(&self, ambient_vars: &[String]) -> Vec<String> {
        let short: Vec<String> = (0..self.slots)
            .map(|i| SLOT_NAMES.get(i).map(|s| s.to_string()))
            .collect::<Option<_>>()
            .unwrap_or_default();
        if !short.is_empty() && short.iter().all(|s| !ambient_vars.contains(s)) {
            short
        } else {
            (1..=self.slots).map(|i| format!("s{i}")).collect()
        }
    }

    /// Deterministic rendering, graded-lex descending, leading coefficient
    /// first: e.g. `x^2 - 2*y - z`.
    pub fn render(&self, ambient_vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = self.slot_names(ambient_vars);
        let field = self.terms[0].1.field();
        let mut out = String::new();
        for (idx, (expo, coeff)) in self.terms.iter().rev().enumerate() {
            // pull the sign out of single-term coefficients
            let single_term = coeff.is_polynomial() && coeff.num().num_terms() == 1;
            let neg = single_term
                && coeff
                    .num()
                    .leading()
                    .map(|(_, c)| field.is_negative(c))
                    .unwrap_or(false);
            let abs = if neg { coeff.neg() } else { coeff.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in expo.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let coeff_str = match constant_scalar(&abs) {
                Some(s) => field.render(&s),
                // single monomials and quotients bind tightly enough to
                // juxtapose; sums need parentheses
                None if single_term || !abs.is_polynomial() => abs.render(ambient_vars),
                None => format!("({})", abs.render(ambient_vars)),
            };
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

fn constant_scalar(f: &RatFunc) -> Option<crate::algebra::Scalar> {
    if f.is_polynomial() && f.num().num_terms() <= 1 && f.num().total_degree() == 0 {
        Some(f.num().constant_term())
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct AnnihilatorResult {
    pub verdict: Verdict,
    pub polynomial: Option<AnnPoly>,
    pub bound: u32,
}

/// Search for a nontrivial polynomial of total degree at most `d`, with
/// coefficients in the subfield denoted by `over` (drawn from the bounded
/// span of its generator products), vanishing on `elems`. A found relation
/// is certain; absence is a certificate at the bound only.
pub fn annihilator_search(
    elems: &[RatFunc],
    over: &FieldSpec,
    d: u32,
) -> Result<AnnihilatorResult, FieldError> {
    if d < 1 {
        return Err(FieldError::BadBound(d));
    }
    for e in elems {
        if e.field() != over.coeff_field() {
            return Err(FieldError::CharMismatch {
                left: over.char_p(),
                right: e.field().char_p(),
            });
        }
        if e.nvars() != over.nvars() {
            return Err(FieldError::AmbientMismatch);
        }
    }
    let field = over.coeff_field();
    let nvars = over.nvars();
    let mstar = reduced_monomials(over, d);
    let expos: Vec<Vec<u32>> = exponent_vectors(elems.len(), d);

    // cache element powers
    let powers: Vec<Vec<RatFunc>> = elems
        .iter()
        .map(|e| {
            let mut v = vec![RatFunc::one(field, nvars)];
            for k in 1..=d {
                v.push(v[(k - 1) as usize].mul(e));
            }
            v
        })
        .collect();

    // one block per slot monomial, columns paired with the base monomials
    let blocks: Vec<Vec<RatFunc>> = expos
        .iter()
        .map(|expo| {
            let mut prod = RatFunc::one(field, nvars);
            for (i, &e) in expo.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&powers[i][e as usize]);
                }
            }
            mstar.iter().map(|m| prod.mul(m)).collect()
        })
        .collect();

    let system = BlockSystem::build(&blocks, field);
    let basis = system.nullspace_upto(blocks.len());
    let Some(vec) = basis.first() else {
        return Ok(AnnihilatorResult {
            verdict: Verdict::holds_at(d as u64),
            polynomial: None,
            bound: d,
        });
    };

    let poly = vector_to_poly(vec, &system, &expos, &mstar, elems.len(), field, nvars);
    debug_assert!(poly.eval(elems).is_zero());
    Ok(AnnihilatorResult {
        verdict: Verdict::fails(Witness::Polynomial {
            polynomial: poly.render(over.vars()),
        }),
        polynomial: Some(poly),
        bound: d,
    })
}

/// The full canonical basis of annihilating polynomials at the bound (one
/// per nullspace basis vector), each normalized to a monic leading term.
pub fn annihilator_basis(
    elems: &[RatFunc],
    over: &FieldSpec,
    d: u32,
) -> Result<Vec<AnnPoly>, FieldError> {
    if d < 1 {
        return Err(FieldError::BadBound(d));
    }
    if elems.is_empty() {
        return Ok(Vec::new());
    }
    let field = over.coeff_field();
    let nvars = over.nvars();
    let mstar = reduced_monomials(over, d);
    let expos: Vec<Vec<u32>> = exponent_vectors(elems.len(), d);
    let powers: Vec<Vec<RatFunc>> = elems
        .iter()
        .map(|e| {
            let mut v = vec![RatFunc::one(field, nvars)];
            for k in 1..=d {
                v.push(v[(k - 1) as usize].mul(e));
            }
            v
        })
        .collect();
    let blocks: Vec<Vec<RatFunc>> = expos
        .iter()
        .map(|expo| {
            let mut prod = RatFunc::one(field, nvars);
            for (i, &e) in expo.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&powers[i][e as usize]);
                }
            }
            mstar.iter().map(|m| prod.mul(m)).collect()
        })
        .collect();
    let system = BlockSystem::build(&blocks, field);
    let basis = system.nullspace_upto(blocks.len());
    Ok(basis
        .iter()
        .map(|vec| {
            let poly = vector_to_poly(vec, &system, &expos, &mstar, elems.len(), field, nvars);
            debug_assert!(poly.eval(elems).is_zero());
            poly
        })
        .collect())
}

fn vector_to_poly(
    vec: &[crate::algebra::Scalar],
    system: &BlockSystem,
    expos: &[Vec<u32>],
    mstar: &[RatFunc],
    slots: usize,
    field: crate::algebra::CoeffField,
    nvars: usize,
) -> AnnPoly {
    let mut terms: Vec<(Monomial, RatFunc)> = Vec::new();
    for (bi, expo) in expos.iter().enumerate() {
        let range = system.blocks[bi].clone();
        let mut coeff = RatFunc::zero(field, nvars);
        for (offset, c) in vec[range].iter().enumerate() {
            if !field.is_zero(c) {
                coeff = coeff.add(&mstar[offset].scale(c));
            }
        }
        if !coeff.is_zero() {
            terms.push((Monomial(expo.clone()), coeff));
        }
    }
    // normalize: leading (graded-lex) coefficient becomes 1
    let lead = terms
        .iter()
        .map(|(m, _)| m.clone())
        .max()
        .expect("nontrivial polynomial");
    let lead_coeff = terms
        .iter()
        .find(|(m, _)| *m == lead)
        .expect("leading term present")
        .1
        .clone();
    let inv = lead_coeff.inv().expect("leading coefficient nonzero");
    for (_, c) in terms.iter_mut() {
        *c = c.mul(&inv);
    }
    terms.sort_by(|(a, _), (b, _)| a.cmp(b));
    AnnPoly { slots, terms }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb() -> FieldSpec {
        FieldSpec::ambient(0, vec!["t1".into(), "t2".into()]).unwrap()
    }

    fn prime() -> FieldSpec {
        FieldSpec::prime_field(0, amb().vars().to_vec()).unwrap()
    }

    fn el(s: &str) -> RatFunc {
        amb().parse_element(s).unwrap()
    }

    #[test]
    fn distinct_variables_have_no_relation() {
        let r = annihilator_search(&[el("t1"), el("t2")], &prime(), 3).unwrap();
        assert!(r.polynomial.is_none());
        assert!(r.verdict.is_holds());
        assert_eq!(r.verdict.bound, Some(3));
    }

    #[test]
    fn square_relation() {
        let r = annihilator_search(&[el("t1"), el("t1^2")], &prime(), 2).unwrap();
        let p = r.polynomial.unwrap();
        assert_eq!(p.render(amb().vars()), "x^2 - y");
        assert!(p.eval(&[el("t1"), el("t1^2")]).is_zero());
    }

    #[test]
    fn newton_symmetric_relation() {
        // (t1+t2)^2 - 2 t1 t2 - (t1^2+t2^2) = 0
        let elems = [el("t1+t2"), el("t1*t2"), el("t1^2+t2^2")];
        let r = annihilator_search(&elems, &prime(), 2).unwrap();
        let p = r.polynomial.unwrap();
        assert_eq!(p.render(amb().vars()), "x^2 - 2*y - z");
    }

    #[test]
    fn relation_with_subfield_coefficients() {
        // over Q(t2): t1*t2 - t2 * t1 = 0 links the tuple (t1, t1*t2)
        let over = amb().with_generators(vec![el("t2")]).unwrap();
        let r = annihilator_search(&[el("t1"), el("t1*t2")], &over, 2).unwrap();
        let p = r.polynomial.unwrap();
        assert!(p.eval(&[el("t1"), el("t1*t2")]).is_zero());
    }

    #[test]
    fn annpoly_formal_derivative() {
        let r = annihilator_search(&[el("t1"), el("t1^2")], &prime(), 2).unwrap();
        let p = r.polynomial.unwrap(); // x^2 - y
        let px = p.partial(0); // 2x
        assert_eq!(px.eval(&[el("t1"), el("t1^2")]), el("2*t1"));
        let py = p.partial(1); // -1
        assert_eq!(py.eval(&[el("t1"), el("t1^2")]), el("-1"));
    }
}
