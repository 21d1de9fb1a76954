//! The abstract ternary independence-relation interface and the property
//! harness: checks the finitely decidable axioms by exhaustive enumeration
//! over pluggable finite instance families.
//!
//! Subsets of a structure's points are bitmasks over point indices, and the
//! `(C∪A, C∪B, C)` normalization happens in one place — [`evaluate`] — so
//! concrete relations may assume the base is contained in both sides.
//! Extension and Local Character quantify over infinite sets and have no
//! finite refutation, so they are deliberately absent from [`Axiom`].

use crate::verdict::{Status, Verdict};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

/// The finitely checkable axioms. `Basedness` (`A∪B ⫝_B acl(B)`) rides
/// along with the six core axioms because it is equally decidable whenever
/// the relation supplies a closure operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Axiom {
    Invariance,
    Symmetry,
    Monotonicity,
    BaseMonotonicity,
    Transitivity,
    FiniteCharacter,
    Basedness,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Invariance,
        Axiom::Symmetry,
        Axiom::Monotonicity,
        Axiom::BaseMonotonicity,
        Axiom::Transitivity,
        Axiom::FiniteCharacter,
        Axiom::Basedness,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Invariance => "Invariance",
            Axiom::Symmetry => "Symmetry",
            Axiom::Monotonicity => "Monotonicity",
            Axiom::BaseMonotonicity => "BaseMonotonicity",
            Axiom::Transitivity => "Transitivity",
            Axiom::FiniteCharacter => "FiniteCharacter",
            Axiom::Basedness => "Basedness",
        }
    }

    pub fn parse(s: &str) -> Option<Axiom> {
        let lower = s.to_ascii_lowercase();
        Axiom::ALL
            .iter()
            .copied()
            .find(|a| a.name().to_ascii_lowercase() == lower)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum HarnessError {
    #[error("Invariance requires an automorphism enumerator")]
    MissingAutomorphisms,
    #[error("Basedness requires a closure operator")]
    MissingClosure,
}

/// A query over named points; the harness works on index masks internally.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IndepQuery {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
}

/// An independence relation over a family of finite structures. Points are
/// indexed `0..size`; subsets are bitmasks. `evaluate_normalized` receives
/// the already-normalized triple (C∪A, C∪B, C) with `c ⊆ ca ∩ cb`.
pub trait FiniteRelation: Sync {
    type Structure: Sync;

    fn size(&self, s: &Self::Structure) -> usize;

    fn point_label(&self, s: &Self::Structure, i: usize) -> String;

    /// One-line rendering of the structure for reports.
    fn structure_label(&self, s: &Self::Structure) -> String;

    fn evaluate_normalized(&self, s: &Self::Structure, ca: u64, cb: u64, c: u64) -> Verdict;

    /// Status-only fast path for exhaustive loops; relations may override
    /// to skip witness construction.
    fn status_normalized(&self, s: &Self::Structure, ca: u64, cb: u64, c: u64) -> Status {
        self.evaluate_normalized(s, ca, cb, c).status
    }

    /// All automorphisms, as point permutations; `None` when the relation
    /// cannot enumerate them (Invariance is then a configuration error).
    fn automorphisms(&self, _s: &Self::Structure) -> Option<Vec<Vec<usize>>> {
        None
    }

    /// Point closure operator, if the relation has one (needed for
    /// Basedness).
    fn closure(&self, _s: &Self::Structure, _x: u64) -> Option<u64> {
        None
    }
}

/// Evaluate a relation on a raw query: applies the convention that the
/// relation is judged on `(C∪A, C∪B, C)`. This is the only place the
/// normalization happens.
pub fn evaluate<R: FiniteRelation>(
    rel: &R,
    s: &R::Structure,
    a: u64,
    b: u64,
    c: u64,
) -> Verdict {
    rel.evaluate_normalized(s, c | a, c | b, c)
}

/// Enumeration limits for an instance family. Enumeration is deterministic:
/// structures in the order given, subsets by size then lexicographic.
#[derive(Clone, Copy, Debug)]
pub struct FamilyLimits {
    /// maximum size of each of the quantified subsets
    pub max_subset: usize,
    /// optional cap on the number of structures consumed
    pub max_structures: Option<usize>,
}

impl Default for FamilyLimits {
    fn default() -> Self {
        FamilyLimits { max_subset: 3, max_structures: None }
    }
}

/// One record of a failed axiom instance: the structure index plus the
/// query sets that re-verify the failure via `evaluate`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub structure: usize,
    pub structure_text: String,
    pub sets: Vec<(String, Vec<String>)>,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub instances_checked: u64,
    pub inconclusive: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl Serialize for AxiomReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("AxiomReport", 4)?;
        s.serialize_field("axiom", self.axiom.name())?;
        s.serialize_field("checked", &self.instances_checked)?;
        s.serialize_field("counterexamples", &self.counterexamples)?;
        s.serialize_field("inconclusive", &self.inconclusive)?;
        s.end()
    }
}

/// All subset masks of an n-point structure with at most `max` points,
/// ordered by size then lexicographic (numeric mask order within a size).
pub fn subsets_by_size(n: usize, max: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0u64..(1 << n))
        .filter(|m| (m.count_ones() as usize) <= max)
        .collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

fn submasks(m: u64) -> Vec<u64> {
    // ascending numeric order
    let mut out = Vec::with_capacity(1 << m.count_ones());
    let mut s = 0u64;
    loop {
        out.push(s);
        if s == m {
            break;
        }
        s = (s.wrapping_sub(m)) & m;
    }
    out
}

struct Memo {
    n: usize,
    flat: Option<Vec<u8>>,
    map: HashMap<(u64, u64, u64), u8>,
}

impl Memo {
    fn new(n: usize) -> Memo {
        let flat = if n <= 6 && n > 0 { Some(vec![0u8; 1 << (3 * n)]) } else { None };
        Memo { n, flat, map: HashMap::new() }
    }

    fn get(&self, a: u64, b: u64, c: u64) -> u8 {
        match &self.flat {
            Some(t) => t[(a | (b << self.n) | (c << (2 * self.n))) as usize],
            None => self.map.get(&(a, b, c)).copied().unwrap_or(0),
        }
    }

    fn set(&mut self, a: u64, b: u64, c: u64, v: u8) {
        let n = self.n;
        match &mut self.flat {
            Some(t) => t[(a | (b << n) | (c << (2 * n))) as usize] = v,
            None => {
                self.map.insert((a, b, c), v);
            }
        }
    }
}

const ST_HOLDS: u8 = 1;
const ST_FAILS: u8 = 2;
const ST_INCONCLUSIVE: u8 = 3;

struct Checker<'a, R: FiniteRelation> {
    rel: &'a R,
    s: &'a R::Structure,
    memo: Memo,
    checked: u64,
    inconclusive: u64,
}

impl<'a, R: FiniteRelation> Checker<'a, R> {
    fn status(&mut self, a: u64, b: u64, c: u64) -> u8 {
        let cached = self.memo.get(a, b, c);
        if cached != 0 {
            return cached;
        }
        let st = match self.rel.status_normalized(self.s, c | a, c | b, c) {
            Status::Holds => ST_HOLDS,
            Status::Fails => ST_FAILS,
            Status::Inconclusive => ST_INCONCLUSIVE,
        };
        self.memo.set(a, b, c, st);
        st
    }
}

fn labels_of<R: FiniteRelation>(rel: &R, s: &R::Structure, mask: u64) -> Vec<String> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(rel.point_label(s, i));
        m &= m - 1;
    }
    out
}

/// Exhaustively instantiate one axiom's quantifiers over the structure
/// family within the limits. Structures are processed in parallel; the
/// report is ordered by the deterministic enumeration index regardless of
/// completion order.
pub fn verify_axiom<R: FiniteRelation>(
    rel: &R,
    axiom: Axiom,
    structures: &[R::Structure],
    limits: FamilyLimits,
) -> Result<AxiomReport, HarnessError> {
    let take = limits.max_structures.unwrap_or(structures.len()).min(structures.len());
    let structures = &structures[..take];

    // configuration errors surface before any enumeration
    if axiom == Axiom::Invariance {
        if let Some(s) = structures.first() {
            if rel.automorphisms(s).is_none() {
                return Err(HarnessError::MissingAutomorphisms);
            }
        }
    }
    if axiom == Axiom::Basedness {
        if let Some(s) = structures.first() {
            if rel.closure(s, 0).is_none() {
                return Err(HarnessError::MissingClosure);
            }
        }
    }

    let per: Vec<(u64, u64, Vec<Counterexample>)> = structures
        .par_iter()
        .enumerate()
        .map(|(si, s)| check_structure(rel, axiom, si, s, limits))
        .collect::<Result<_, _>>()?;

    let mut report = AxiomReport {
        axiom,
        instances_checked: 0,
        inconclusive: 0,
        counterexamples: Vec::new(),
    };
    for (checked, inconclusive, mut ces) in per {
        report.instances_checked += checked;
        report.inconclusive += inconclusive;
        report.counterexamples.append(&mut ces);
    }
    Ok(report)
}

fn check_structure<R: FiniteRelation>(
    rel: &R,
    axiom: Axiom,
    si: usize,
    s: &R::Structure,
    limits: FamilyLimits,
) -> Result<(u64, u64, Vec<Counterexample>), HarnessError> {
    let n = rel.size(s);
    let subs = subsets_by_size(n, limits.max_subset);
    let mut ck = Checker { rel, s, memo: Memo::new(n), checked: 0, inconclusive: 0 };
    let mut ces: Vec<Counterexample> = Vec::new();

    let record = |ck: &Checker<R>, sets: Vec<(&str, u64)>, detail: String| Counterexample {
        structure: si,
        structure_text: ck.rel.structure_label(ck.s),
        sets: sets
            .into_iter()
            .map(|(name, m)| (name.to_string(), labels_of(ck.rel, ck.s, m)))
            .collect(),
        detail,
    };

    match axiom {
        Axiom::Symmetry => {
            for &a in &subs {
                for &b in &subs {
                    for &c in &subs {
                        ck.checked += 1;
                        let lhs = ck.status(a, b, c);
                        if lhs == ST_INCONCLUSIVE {
                            ck.inconclusive += 1;
                            continue;
                        }
                        if lhs != ST_HOLDS {
                            continue;
                        }
                        match ck.status(b, a, c) {
                            ST_FAILS => ces.push(record(
                                &ck,
                                vec![("A", a), ("B", b), ("C", c)],
                                "A independent from B over C, but not conversely".into(),
                            )),
                            ST_INCONCLUSIVE => ck.inconclusive += 1,
                            _ => {}
                        }
                    }
                }
            }
        }
        Axiom::Monotonicity => {
            for &d in &subs {
                for &b in &submasks(d) {
                    for &c in &submasks(b) {
                        for &a in &subs {
                            ck.checked += 1;
                            let lhs = ck.status(a, d, c);
                            if lhs == ST_INCONCLUSIVE {
                                ck.inconclusive += 1;
                                continue;
                            }
                            if lhs != ST_HOLDS {
                                continue;
                            }
                            match ck.status(a, b, c) {
                                ST_FAILS => ces.push(record(
                                    &ck,
                                    vec![("A", a), ("B", b), ("C", c), ("D", d)],
                                    "A is independent from D over C but not from B".into(),
                                )),
                                ST_INCONCLUSIVE => ck.inconclusive += 1,
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        Axiom::BaseMonotonicity => {
            for &d in &subs {
                for &b in &submasks(d) {
                    for &c in &submasks(b) {
                        for &a in &subs {
                            ck.checked += 1;
                            let lhs = ck.status(a, d, c);
                            if lhs == ST_INCONCLUSIVE {
                                ck.inconclusive += 1;
                                continue;
                            }
                            if lhs != ST_HOLDS {
                                continue;
                            }
                            match ck.status(a | b, d, b) {
                                ST_FAILS => ces.push(record(
                                    &ck,
                                    vec![("A", a), ("B", b), ("C", c), ("D", d)],
                                    "A ind. D over C, but A∪B not ind. D over B".into(),
                                )),
                                ST_INCONCLUSIVE => ck.inconclusive += 1,
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        Axiom::Transitivity => {
            for &d in &subs {
                for &b in &submasks(d) {
                    for &c in &submasks(b) {
                        for &a in &subs {
                            ck.checked += 1;
                            let p1 = ck.status(a, b, c);
                            let p2 = ck.status(a | b, d, b);
                            if p1 == ST_INCONCLUSIVE || p2 == ST_INCONCLUSIVE {
                                ck.inconclusive += 1;
                                continue;
                            }
                            if p1 != ST_HOLDS || p2 != ST_HOLDS {
                                continue;
                            }
                            match ck.status(a, d, c) {
                                ST_FAILS => ces.push(record(
                                    &ck,
                                    vec![("A", a), ("B", b), ("C", c), ("D", d)],
                                    "premises hold but A is not independent from D over C"
                                        .into(),
                                )),
                                ST_INCONCLUSIVE => ck.inconclusive += 1,
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        Axiom::FiniteCharacter => {
            'outer: for &a in &subs {
                for &b in &subs {
                    for &c in &subs {
                        ck.checked += 1;
                        let lhs = ck.status(a, b, c);
                        if lhs == ST_INCONCLUSIVE {
                            ck.inconclusive += 1;
                            continue;
                        }
                        let mut conj = ST_HOLDS;
                        'pairs: for &ap in &submasks(a) {
                            for &bp in &submasks(b) {
                                match ck.status(ap, bp, c) {
                                    ST_FAILS => {
                                        conj = ST_FAILS;
                                        break 'pairs;
                                    }
                                    ST_INCONCLUSIVE => {
                                        ck.inconclusive += 1;
                                        continue 'outer;
                                    }
                                    _ => {}
                                }
                            }
                        }
                        if lhs != conj {
                            ces.push(record(
                                &ck,
                                vec![("A", a), ("B", b), ("C", c)],
                                "verdict differs from the conjunction over finite sub-tuples"
                                    .into(),
                            ));
                        }
                    }
                }
            }
        }
        Axiom::Basedness => {
            for &a in &subs {
                for &b in &subs {
                    ck.checked += 1;
                    let closure = ck.rel.closure(ck.s, b).ok_or(HarnessError::MissingClosure)?;
                    match ck.status(a | b, closure, b) {
                        ST_FAILS => ces.push(record(
                            &ck,
                            vec![("A", a), ("B", b)],
                            "A∪B is not independent from acl(B) over B".into(),
                        )),
                        ST_INCONCLUSIVE => ck.inconclusive += 1,
                        _ => {}
                    }
                }
            }
        }
        Axiom::Invariance => {
            let autos = ck.rel.automorphisms(ck.s).ok_or(HarnessError::MissingAutomorphisms)?;
            let apply = |perm: &[usize], m: u64| -> u64 {
                let mut out = 0u64;
                let mut rest = m;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    out |= 1 << perm[i];
                    rest &= rest - 1;
                }
                out
            };
            for perm in &autos {
                for &a in &subs {
                    for &b in &subs {
                        for &c in &subs {
                            ck.checked += 1;
                            let lhs = ck.status(a, b, c);
                            let rhs = ck.status(apply(perm, a), apply(perm, b), apply(perm, c));
                            if lhs == ST_INCONCLUSIVE || rhs == ST_INCONCLUSIVE {
                                ck.inconclusive += 1;
                                continue;
                            }
                            if lhs != rhs {
                                ces.push(record(
                                    &ck,
                                    vec![
                                        ("A", a),
                                        ("B", b),
                                        ("C", c),
                                        ("A'", apply(perm, a)),
                                        ("B'", apply(perm, b)),
                                        ("C'", apply(perm, c)),
                                    ],
                                    "verdict changes under an automorphism".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    Ok((ck.checked, ck.inconclusive, ces))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration_order() {
        let subs = subsets_by_size(3, 2);
        assert_eq!(subs, vec![0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110]);
    }

    #[test]
    fn submask_enumeration() {
        assert_eq!(submasks(0b101), vec![0b000, 0b001, 0b100, 0b101]);
        assert_eq!(submasks(0), vec![0]);
    }

    #[test]
    fn axiom_parsing() {
        assert_eq!(Axiom::parse("symmetry"), Some(Axiom::Symmetry));
        assert_eq!(Axiom::parse("BaseMonotonicity"), Some(Axiom::BaseMonotonicity));
        assert_eq!(Axiom::parse("basemonotonicity"), Some(Axiom::BaseMonotonicity));
        assert_eq!(Axiom::parse("extension"), None);
    }
}
