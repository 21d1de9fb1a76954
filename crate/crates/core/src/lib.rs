//! Exact-computation workbench for ternary independence relations.
//!
//! The crate has four layers:
//!
//! * [`algebra`] — exact multivariate polynomial and rational function
//!   arithmetic over ℚ and 𝔽_p, plus the dense exact linear algebra the
//!   decision procedures run on.
//! * [`pseudoplane`] — finite forests with unique reduced paths, path
//!   closure, the path-meets-base independence criterion, and type equality
//!   over a base via closure isomorphism.
//! * [`fieldcalc`] — degree-bounded field-theoretic primitives: linear
//!   dimension over a subfield, linear disjointness, annihilator search,
//!   Jacobian independence, p-independence, p-bases, imperfection degree,
//!   separability and relative algebraic closedness certificates.
//! * [`theories`] — adapters that assemble the primitives into independence
//!   relations for jet differential fields (characteristic 0 and p) and for
//!   separably closed fields, plus a Base Monotonicity search harness.
//!
//! The [`indep`] module ties everything together: it defines the abstract
//! independence-relation interface and checks the finitely decidable axioms
//! (Invariance, Symmetry, Monotonicity, Base Monotonicity, Transitivity,
//! Finite Character, Basedness) by exhaustive enumeration over pluggable
//! finite instance families.
//!
//! All verdicts are three-valued: `Holds`, `Fails` with a re-verifiable
//! witness, or `Inconclusive` with the bound at which the search stopped.

pub mod algebra;
pub mod fieldcalc;
pub mod indep;
pub mod pseudoplane;
pub mod theories;
pub mod verdict;

pub use verdict::{Status, Verdict, Witness};
