//! Three-valued outcomes of degree-bounded decision procedures.

use serde::Serialize;

/// Outcome status of a bounded query.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

/// Counterexample payloads. A `Fails` verdict always carries one of these,
/// and it must re-verify under direct evaluation.
#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// A pair or tuple of structure points (pseudoplane vertices).
    Points { points: Vec<String> },
    /// A tuple of field elements, rendered in re-parseable element syntax.
    Elements { elements: Vec<String> },
    /// A linear dependence: `sum(coefficients[i] * support[i]) = 0` with not
    /// all coefficients zero. Both lists are aligned and re-parseable.
    Dependence {
        support: Vec<String>,
        coefficients: Vec<String>,
    },
    /// An annihilating polynomial in slot variables x, y, z, ...
    Polynomial { polynomial: String },
    /// A membership representation `x = sum(coeff_i^p * monomial_i)`.
    Representation {
        element: String,
        terms: Vec<RepTerm>,
        char_p: u64,
    },
    /// A point mapping (an isomorphism found by a type-equality query).
    Mapping { pairs: Vec<(String, String)> },
    /// Which clause of a two-clause criterion broke, with the inner witness.
    Clause {
        clause: u8,
        description: String,
        inner: Box<Witness>,
    },
    /// Free-form reason where no structured payload applies.
    Text { text: String },
}

/// One `coeff^p * monomial` term of a membership representation.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RepTerm {
    pub coefficient: String,
    pub monomial: String,
}

/// Three-valued query outcome. `Fails` carries a witness; `Inconclusive`
/// carries the bound at which the search stopped. `Holds` may carry a
/// witness too (e.g. the isomorphism found by a type-equality query) and
/// records the bound whenever the certificate is only degree-bounded.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub bound: Option<u64>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict { status: Status::Holds, witness: None, bound: None }
    }

    /// `Holds`, but certified only up to the given search bound.
    pub fn holds_at(bound: u64) -> Self {
        Verdict { status: Status::Holds, witness: None, bound: Some(bound) }
    }

    pub fn holds_with(witness: Witness) -> Self {
        Verdict { status: Status::Holds, witness: Some(witness), bound: None }
    }

    pub fn fails(witness: Witness) -> Self {
        Verdict { status: Status::Fails, witness: Some(witness), bound: None }
    }

    pub fn inconclusive(bound: u64) -> Self {
        Verdict { status: Status::Inconclusive, witness: None, bound: Some(bound) }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_conclusive(&self) -> bool {
        self.status != Status::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fails_carries_witness() {
        let v = Verdict::fails(Witness::Points { points: vec!["a".into(), "b".into()] });
        assert_eq!(v.status, Status::Fails);
        assert!(v.witness.is_some());
    }

    #[test]
    fn inconclusive_carries_bound() {
        let v = Verdict::inconclusive(4);
        assert_eq!(v.bound, Some(4));
        assert!(!v.is_conclusive());
    }
}
