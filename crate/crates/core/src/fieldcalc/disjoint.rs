//! Bounded linear disjointness of two subfields over a common base.
//!
//! It suffices to test the generator products of `L`: a maximal
//! k-independent subfamily of them is a k-basis of the degree-bounded
//! fragment, and such a basis stays linearly independent over `M` exactly
//! when no k-independent tuple from the fragment becomes M-dependent.

use super::span::{reduced_monomials, BlockSystem, LinearDependence};
use super::spec::FieldSpec;
use super::{field_member, FieldError};
use crate::algebra::RatFunc;
use crate::verdict::Verdict;

#[derive(Clone, Debug)]
pub struct DisjointResult {
    pub verdict: Verdict,
    /// On failure: the enumerated k-independent prefix family up to and
    /// including the first element that became dependent over M.
    pub witness: Option<Vec<RatFunc>>,
    /// The M-dependence among the witness tuple, aligned with it.
    pub dependence: Option<LinearDependence>,
    /// Size of the k-independent family that was tested over M.
    pub family_checked: usize,
    pub bound: u32,
}

/// Are the subfields `L` and `M` linearly disjoint over `k`? `Fails` is
/// certain and carries a witness tuple (k-independent but M-dependent);
/// `Holds` is a certificate at the bound. Returns `Inconclusive` when the
/// precondition `k ⊆ L ∩ M` could not be confirmed at the bound.
pub fn linearly_disjoint(
    l: &FieldSpec,
    m: &FieldSpec,
    k: &FieldSpec,
    bound: u32,
) -> Result<DisjointResult, FieldError> {
    if bound < 1 {
        return Err(FieldError::BadBound(bound));
    }
    if l.char_p() != m.char_p() || l.char_p() != k.char_p() {
        return Err(FieldError::CharMismatch { left: l.char_p(), right: m.char_p() });
    }
    if !l.same_ambient(m) || !l.same_ambient(k) {
        return Err(FieldError::AmbientMismatch);
    }

    // precondition: k's generators lie in both generated fields
    for g in k.generators() {
        if !field_member(g, l, bound)?.is_member() || !field_member(g, m, bound)?.is_member() {
            return Ok(DisjointResult {
                verdict: Verdict::inconclusive(bound as u64),
                witness: None,
                dependence: None,
                family_checked: 0,
                bound,
            });
        }
    }

    let field = l.coeff_field();
    let l_monomials = l.monomials(bound);

    // greedy k-independent subfamily of the L-products (at the bound)
    let kstar = reduced_monomials(k, bound);
    let k_blocks: Vec<Vec<RatFunc>> = l_monomials
        .iter()
        .map(|u| kstar.iter().map(|km| u.mul(km)).collect())
        .collect();
    let k_growth = BlockSystem::build(&k_blocks, field).block_growth();
    let basis: Vec<RatFunc> = l_monomials
        .into_iter()
        .zip(&k_growth)
        .filter_map(|(u, &g)| if g == kstar.len() { Some(u) } else { None })
        .collect();

    // scan the basis over M for the first dependence
    let mstar = reduced_monomials(m, bound);
    let m_blocks: Vec<Vec<RatFunc>> = basis
        .iter()
        .map(|u| mstar.iter().map(|mm| u.mul(mm)).collect())
        .collect();
    let system = BlockSystem::build(&m_blocks, field);
    let growth = system.block_growth();

    for (i, &g) in growth.iter().enumerate() {
        if g == mstar.len() {
            continue;
        }
        // first basis element dependent over M: the prefix through it is the
        // witness tuple
        let nvars = l.nvars();
        let vecs = system.nullspace_upto(i + 1);
        let block = system.blocks[i].clone();
        let vec = vecs
            .into_iter()
            .find(|v| v[block.clone()].iter().any(|s| !field.is_zero(s)))
            .expect("rank deficiency implies such a null vector");
        let coefficients: Vec<RatFunc> = (0..=i)
            .map(|j| {
                let r = system.blocks[j].clone();
                let mut acc = RatFunc::zero(field, nvars);
                for (offset, c) in vec[r].iter().enumerate() {
                    if !field.is_zero(c) {
                        acc = acc.add(&mstar[offset].scale(c));
                    }
                }
                acc
            })
            .collect();
        let witness: Vec<RatFunc> = basis[..=i].to_vec();
        let dependence = LinearDependence { coefficients };
        debug_assert!(dependence.verify(&witness));
        let verdict = Verdict::fails(dependence.to_witness(&witness, l.vars()));
        return Ok(DisjointResult {
            verdict,
            witness: Some(witness),
            dependence: Some(dependence),
            family_checked: i + 1,
            bound,
        });
    }

    Ok(DisjointResult {
        verdict: Verdict::holds_at(bound as u64),
        witness: None,
        dependence: None,
        family_checked: basis.len(),
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb() -> FieldSpec {
        FieldSpec::ambient(0, vec!["t1".into(), "t2".into()]).unwrap()
    }

    fn sub(gens: &[&str]) -> FieldSpec {
        let a = amb();
        let g = gens.iter().map(|s| a.parse_element(s).unwrap()).collect();
        a.with_generators(g).unwrap()
    }

    fn prime() -> FieldSpec {
        FieldSpec::prime_field(0, amb().vars().to_vec()).unwrap()
    }

    #[test]
    fn distinct_variables_are_disjoint_at_bound() {
        let r = linearly_disjoint(&sub(&["t1"]), &sub(&["t2"]), &prime(), 4).unwrap();
        assert!(r.verdict.is_holds());
        assert_eq!(r.verdict.bound, Some(4));
    }

    #[test]
    fn self_against_self_fails_with_unit_and_generator() {
        let l = sub(&["t1"]);
        let r = linearly_disjoint(&l, &l, &prime(), 4).unwrap();
        assert!(r.verdict.is_fails());
        let w = r.witness.unwrap();
        let a = amb();
        assert_eq!(w, vec![a.parse_element("1").unwrap(), a.parse_element("t1").unwrap()]);
        assert!(r.dependence.unwrap().verify(&w));
    }

    #[test]
    fn square_subfield_fails_with_three_element_witness() {
        let r = linearly_disjoint(&sub(&["t1"]), &sub(&["t1^2"]), &prime(), 4).unwrap();
        assert!(r.verdict.is_fails());
        let a = amb();
        let expect = vec![
            a.parse_element("1").unwrap(),
            a.parse_element("t1").unwrap(),
            a.parse_element("t1^2").unwrap(),
        ];
        assert_eq!(r.witness.unwrap(), expect);
    }

    #[test]
    fn unconfirmed_base_is_inconclusive() {
        // k = Q(t2) is not inside L = Q(t1)
        let r = linearly_disjoint(&sub(&["t1"]), &sub(&["t1", "t2"]), &sub(&["t2"]), 3).unwrap();
        assert_eq!(r.verdict.status, crate::verdict::Status::Inconclusive);
    }

    #[test]
    fn base_equal_to_both_sides_holds() {
        let l = sub(&["t1"]);
        let r = linearly_disjoint(&l, &l, &l, 3).unwrap();
        assert!(r.verdict.is_holds());
    }
}
