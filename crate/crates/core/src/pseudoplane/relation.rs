//! The path-meets-base relation plugged into the axiom harness, with a
//! precomputed mask representation so exhaustive enumeration stays fast.

use super::forest::Forest;
use super::PsError;
use crate::indep::FiniteRelation;
use crate::verdict::{Status, Verdict, Witness};

/// A forest prepared for mask queries: per-pair path masks, component ids
/// and the full closure table.
pub struct PreparedForest {
    pub forest: Forest,
    n: usize,
    comp: Vec<u8>,
    /// path[u*n+v]: vertices on the reduced path as a bitmask (0 when
    /// disconnected); path[u*n+u] = {u}
    path: Vec<u64>,
    /// acl_table[mask] = path closure of the mask
    acl_table: Vec<u64>,
}

impl PreparedForest {
    pub fn new(forest: Forest) -> Result<PreparedForest, PsError> {
        let n = forest.vertex_count();
        if n > 16 {
            return Err(PsError::ResourceLimit(format!(
                "prepared forest on {n} vertices"
            )));
        }
        let mut comp = vec![0u8; n];
        let mut seen = vec![false; n];
        let mut next_comp = 0u8;
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(x) = stack.pop() {
                comp[x] = next_comp;
                for &y in &forest.adjacency()[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            next_comp += 1;
        }
        let mut path = vec![0u64; n * n];
        for u in 0..n {
            for v in 0..n {
                if comp[u] == comp[v] {
                    let p = forest.path_idx(u, v).expect("same component");
                    let mut mask = 0u64;
                    for i in p {
                        mask |= 1 << i;
                    }
                    path[u * n + v] = mask;
                }
            }
        }
        let mut acl_table = vec![0u64; 1 << n];
        for mask in 0u64..(1 << n) {
            let mut closed = mask;
            let mut rest = mask;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let mut rest2 = rest;
                while rest2 != 0 {
                    let v = rest2.trailing_zeros() as usize;
                    rest2 &= rest2 - 1;
                    closed |= path[u * n + v];
                }
            }
            acl_table[mask as usize] = closed;
        }
        Ok(PreparedForest { forest, n, comp, path, acl_table })
    }

    pub fn acl_mask(&self, mask: u64) -> u64 {
        self.acl_table[mask as usize]
    }

    /// First offending pair (x, y): closure points of the two sides in the
    /// same component whose connecting path misses the closure of the base.
    fn offending_pair(&self, ca: u64, cb: u64, c: u64) -> Option<(usize, usize)> {
        let acl_a = self.acl_table[ca as usize];
        let acl_b = self.acl_table[cb as usize];
        let acl_c = self.acl_table[c as usize];
        let mut rest_a = acl_a;
        while rest_a != 0 {
            let x = rest_a.trailing_zeros() as usize;
            rest_a &= rest_a - 1;
            let mut rest_b = acl_b;
            while rest_b != 0 {
                let y = rest_b.trailing_zeros() as usize;
                rest_b &= rest_b - 1;
                if self.comp[x] == self.comp[y] && self.path[x * self.n + y] & acl_c == 0 {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// The forest independence relation for the harness.
pub struct ForestRelation;

impl FiniteRelation for ForestRelation {
    type Structure = PreparedForest;

    fn size(&self, s: &PreparedForest) -> usize {
        s.n
    }

    fn point_label(&self, s: &PreparedForest, i: usize) -> String {
        s.forest.labels()[i].clone()
    }

    fn structure_label(&self, s: &PreparedForest) -> String {
        s.forest.to_text()
    }

    fn evaluate_normalized(&self, s: &PreparedForest, ca: u64, cb: u64, c: u64) -> Verdict {
        match s.offending_pair(ca, cb, c) {
            None => Verdict::holds(),
            Some((x, y)) => Verdict::fails(Witness::Points {
                points: vec![s.forest.labels()[x].clone(), s.forest.labels()[y].clone()],
            }),
        }
    }

    fn status_normalized(&self, s: &PreparedForest, ca: u64, cb: u64, c: u64) -> Status {
        match s.offending_pair(ca, cb, c) {
            None => Status::Holds,
            Some(_) => Status::Fails,
        }
    }

    fn automorphisms(&self, s: &PreparedForest) -> Option<Vec<Vec<usize>>> {
        Some(s.forest.automorphisms())
    }

    fn closure(&self, s: &PreparedForest, x: u64) -> Option<u64> {
        Some(s.acl_table[x as usize])
    }
}

/// Prepare a whole enumerated family.
pub fn prepare_family(forests: Vec<Forest>) -> Result<Vec<PreparedForest>, PsError> {
    forests.into_iter().map(PreparedForest::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indep::{evaluate, verify_axiom, Axiom, FamilyLimits};
    use crate::pseudoplane::forests_up_to;
    use std::collections::BTreeSet;

    fn star() -> PreparedForest {
        let f = Forest::new(
            vec!["x".into(), "a".into(), "b".into()],
            vec![("x".into(), "a".into()), ("x".into(), "b".into())],
        )
        .unwrap();
        PreparedForest::new(f).unwrap()
    }

    #[test]
    fn mask_evaluation_matches_label_evaluation() {
        let s = star();
        // A={a}=bit1, B={b}=bit2, C={} — fails; C={x}=bit0 — holds
        let v = evaluate(&ForestRelation, &s, 0b010, 0b100, 0);
        assert_eq!(v.status, Status::Fails);
        let v = evaluate(&ForestRelation, &s, 0b010, 0b100, 0b001);
        assert_eq!(v.status, Status::Holds);

        let set = |vs: &[&str]| -> BTreeSet<String> {
            vs.iter().map(|x| x.to_string()).collect()
        };
        let direct = s.forest.indep(&set(&["a"]), &set(&["b"]), &set(&[])).unwrap();
        assert_eq!(direct.status, Status::Fails);
    }

    #[test]
    fn acl_table_matches_direct_closure() {
        let s = star();
        // {a, b} closes to {x, a, b}
        assert_eq!(s.acl_mask(0b110), 0b111);
        assert_eq!(s.acl_mask(0), 0);
    }

    #[test]
    fn symmetry_holds_on_small_family() {
        let family = prepare_family(forests_up_to(3).unwrap()).unwrap();
        let report = verify_axiom(
            &ForestRelation,
            Axiom::Symmetry,
            &family,
            FamilyLimits { max_subset: 2, max_structures: None },
        )
        .unwrap();
        assert!(report.passed());
        assert!(report.instances_checked > 0);
    }

    #[test]
    fn basedness_and_invariance_are_available() {
        let family = prepare_family(forests_up_to(3).unwrap()).unwrap();
        for axiom in [Axiom::Basedness, Axiom::Invariance] {
            let report = verify_axiom(
                &ForestRelation,
                axiom,
                &family,
                FamilyLimits { max_subset: 2, max_structures: None },
            )
            .unwrap();
            assert!(report.passed(), "{:?}", report.counterexamples.first());
        }
    }
}
