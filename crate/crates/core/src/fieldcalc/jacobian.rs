//! Algebraic independence via formal differentials.
//!
//! In characteristic 0 the Jacobian criterion is exact: a tuple is
//! algebraically independent over a generated subfield precisely when its
//! gradients are independent over the ambient field modulo the span of the
//! subfield generators' gradients. In characteristic p the same matrix only
//! detects separable independence, so those callers are refused and pointed
//! at the annihilator search.

use super::annihilator::annihilator_search;
use super::spec::FieldSpec;
use super::FieldError;
use crate::algebra::{IncrementalRatRank, RatFunc};
use crate::verdict::{Verdict, Witness};

/// Rows are the formal gradients (∂f/∂t_1, ..., ∂f/∂t_n) of the inputs.
#[derive(Clone, Debug)]
pub struct DiffMatrix {
    pub rows: Vec<Vec<RatFunc>>,
}

impl DiffMatrix {
    pub fn of(elems: &[RatFunc]) -> DiffMatrix {
        let rows = elems
            .iter()
            .map(|e| (0..e.nvars()).map(|i| e.partial(i)).collect())
            .collect();
        DiffMatrix { rows }
    }

    pub fn rank(&self) -> usize {
        crate::algebra::ratfunc_rank(&self.rows)
    }
}

/// Exact algebraic-independence test over the prime field in
/// characteristic 0: full Jacobian row rank. Refuses characteristic p,
/// where the Jacobian conflates inseparability with dependence; use
/// [`annihilator_search`] there. The ambient spec supplies variable names
/// for witness rendering.
pub fn alg_indep_jacobian(elems: &[RatFunc], ambient: &FieldSpec) -> Result<Verdict, FieldError> {
    if elems.is_empty() {
        return Err(FieldError::EmptyElements);
    }
    if ambient.char_p() != 0 || elems[0].field().char_p() != 0 {
        return Err(FieldError::WrongCharacteristic { expected: "characteristic 0" });
    }
    let nvars = ambient.nvars();
    let mut inc = IncrementalRatRank::new(nvars);
    for e in elems {
        if e.nvars() != nvars {
            return Err(FieldError::AmbientMismatch);
        }
        let grad: Vec<RatFunc> = (0..nvars).map(|v| e.partial(v)).collect();
        if !inc.add(grad) {
            return Ok(Verdict::fails(Witness::Elements {
                elements: vec![ambient.render_element(e)],
            }));
        }
    }
    Ok(Verdict::holds())
}

#[derive(Clone, Debug)]
pub struct TrdegResult {
    pub degree: usize,
    /// indices of the greedily accepted (independent) elements
    pub accepted: Vec<usize>,
    pub verdict: Verdict,
}

/// Size of a maximal subset of `elems` algebraically independent over the
/// subfield denoted by `over`, greedy in declared order. Exact via the
/// relative Jacobian in characteristic 0; bounded annihilator search in
/// characteristic p.
pub fn transcendence_degree(
    elems: &[RatFunc],
    over: &FieldSpec,
    bound: u32,
) -> Result<TrdegResult, FieldError> {
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
    if over.char_p() == 0 {
        let nvars = over.nvars();
        let mut inc = IncrementalRatRank::new(nvars);
        for g in over.generators() {
            inc.add((0..nvars).map(|v| g.partial(v)).collect());
        }
        let mut accepted = Vec::new();
        for (i, e) in elems.iter().enumerate() {
            if inc.add((0..nvars).map(|v| e.partial(v)).collect()) {
                accepted.push(i);
            }
        }
        Ok(TrdegResult { degree: accepted.len(), accepted, verdict: Verdict::holds() })
    } else {
        if bound < 1 {
            return Err(FieldError::BadBound(bound));
        }
        let mut base = over.clone();
        let mut accepted = Vec::new();
        for (i, e) in elems.iter().enumerate() {
            let found = annihilator_search(std::slice::from_ref(e), &base, bound)?
                .polynomial
                .is_some();
            if !found {
                accepted.push(i);
                base = base.adjoin(std::slice::from_ref(e))?;
            }
        }
        Ok(TrdegResult {
            degree: accepted.len(),
            accepted,
            verdict: Verdict::holds_at(bound as u64),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb() -> FieldSpec {
        FieldSpec::ambient(0, vec!["t1".into(), "t2".into()]).unwrap()
    }

    fn el(s: &str) -> RatFunc {
        amb().parse_element(s).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let a = amb();
        assert!(alg_indep_jacobian(&[el("t1"), el("t1+t2")], &a).unwrap().is_holds());
        assert!(alg_indep_jacobian(&[el("t1"), el("t1^2")], &a).unwrap().is_fails());
        assert!(alg_indep_jacobian(&[el("t1*t2"), el("t1+t2"), el("t1^2+t2^2")], &a)
            .unwrap()
            .is_fails());
    }

    #[test]
    fn jacobian_refuses_characteristic_p() {
        let a2 = FieldSpec::ambient(2, vec!["t1".into()]).unwrap();
        let t1 = a2.parse_element("t1").unwrap();
        assert!(matches!(
            alg_indep_jacobian(&[t1], &a2),
            Err(FieldError::WrongCharacteristic { .. })
        ));
    }

    #[test]
    fn trdeg_char0() {
        let prime = FieldSpec::prime_field(0, amb().vars().to_vec()).unwrap();
        let r = transcendence_degree(&[el("t1"), el("t2"), el("t1+t2")], &prime, 4).unwrap();
        assert_eq!(r.degree, 2);
        assert_eq!(r.accepted, vec![0, 1]);

        let over = amb().with_generators(vec![el("t1")]).unwrap();
        let r = transcendence_degree(&[el("t1^2")], &over, 4).unwrap();
        assert_eq!(r.degree, 0);
    }

    #[test]
    fn trdeg_char2_bounded() {
        let a2 = FieldSpec::ambient(2, vec!["t1".into(), "t2".into()]).unwrap();
        let prime = FieldSpec::prime_field(2, a2.vars().to_vec()).unwrap();
        let e1 = a2.parse_element("t1*t2^2").unwrap();
        let e2 = a2.parse_element("t1").unwrap();
        let r = transcendence_degree(&[e1, e2], &prime, 4).unwrap();
        assert_eq!(r.degree, 2);
        assert_eq!(r.verdict.bound, Some(4));
    }
}
