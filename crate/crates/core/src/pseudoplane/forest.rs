//! Finite simple acyclic graphs with labeled vertices.

use super::PsError;
use crate::verdict::{Verdict, Witness};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A walk with no immediate backtracking. In a forest it is uniquely
/// determined by its endpoints; a single vertex is a path of length 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedPath {
    pub vertices: Vec<String>,
}

impl ReducedPath {
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Forest {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '#')
}

impl Forest {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
    ) -> Result<Forest, PsError> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_label(v) {
                return Err(PsError::BadLabel(v.clone()));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(PsError::DuplicateVertex(v.clone()));
            }
        }
        let mut adj = vec![BTreeSet::new(); vertices.len()];
        // union-find for the acyclicity check
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in &edges {
            let ia = *index.get(a).ok_or_else(|| PsError::UnknownVertex(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| PsError::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(PsError::SelfLoop(a.clone()));
            }
            if adj[ia].contains(&ib) {
                return Err(PsError::DuplicateEdge(a.clone(), b.clone()));
            }
            let ra = find(&mut parent, ia);
            let rb = find(&mut parent, ib);
            if ra == rb {
                return Err(PsError::Cyclic);
            }
            parent[ra] = rb;
            adj[ia].insert(ib);
            adj[ib].insert(ia);
        }
        Ok(Forest { labels: vertices, index, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    out.push((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        out
    }

    pub fn degree(&self, v: &str) -> Result<usize, PsError> {
        Ok(self.adj[self.idx(v)?].len())
    }

    /// The textual format: `vertices: a b x; edges: a-x, x-b;`.
    pub fn to_text(&self) -> String {
        let edges = self
            .edges()
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect::<Vec<_>>()
            .join(", ");
        format!("vertices: {}; edges: {};", self.labels.join(" "), edges)
    }

    fn idx(&self, v: &str) -> Result<usize, PsError> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| PsError::UnknownVertex(v.to_string()))
    }

    fn idx_set(&self, xs: &BTreeSet<String>) -> Result<BTreeSet<usize>, PsError> {
        xs.iter().map(|v| self.idx(v)).collect()
    }

    pub(crate) fn adjacency(&self) -> &[BTreeSet<usize>] {
        &self.adj
    }

    /// BFS tree path between two vertex indices, endpoints included.
    pub(crate) fn path_idx(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        if u == v {
            return Some(vec![u]);
        }
        let mut prev = vec![usize::MAX; self.labels.len()];
        let mut queue = VecDeque::new();
        prev[u] = u;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    if y == v {
                        let mut path = vec![v];
                        let mut cur = v;
                        while cur != u {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// The unique reduced path between two vertices, if they are connected;
    /// `reduced_path(u, u)` is the length-0 path `[u]`.
    pub fn reduced_path(&self, u: &str, v: &str) -> Result<Option<ReducedPath>, PsError> {
        let iu = self.idx(u)?;
        let iv = self.idx(v)?;
        Ok(self.path_idx(iu, iv).map(|p| ReducedPath {
            vertices: p.into_iter().map(|i| self.labels[i].clone()).collect(),
        }))
    }

    pub(crate) fn acl_idx(&self, xs: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = xs.clone();
        let items: Vec<usize> = xs.iter().copied().collect();
        for (i, &u) in items.iter().enumerate() {
            for &v in &items[i + 1..] {
                if let Some(path) = self.path_idx(u, v) {
                    out.extend(path);
                }
            }
        }
        out
    }

    /// Path closure: X together with every vertex on a reduced path between
    /// two members of X. Idempotent, and the closed sets are exactly the
    /// nice sets.
    pub fn acl(&self, xs: &BTreeSet<String>) -> Result<BTreeSet<String>, PsError> {
        let closed = self.acl_idx(&self.idx_set(xs)?);
        Ok(closed.into_iter().map(|i| self.labels[i].clone()).collect())
    }

    /// Nice means closed under connecting reduced paths. The empty set is
    /// accepted and reported nice by convention.
    pub fn is_nice(&self, xs: &BTreeSet<String>) -> Result<bool, PsError> {
        Ok(self.acl(xs)? == *xs)
    }

    /// Path-meets-base independence, evaluated on (C∪A, C∪B, C): holds iff
    /// every reduced path between a closure point of C∪A and a closure
    /// point of C∪B passes through the closure of C. Equal endpoints count
    /// as a length-0 path, so a shared closure point outside acl(C) is a
    /// failure. The witness is the first offending pair in label-index
    /// order.
    pub fn indep(
        &self,
        a: &BTreeSet<String>,
        b: &BTreeSet<String>,
        c: &BTreeSet<String>,
    ) -> Result<Verdict, PsError> {
        let ia = self.idx_set(a)?;
        let ib = self.idx_set(b)?;
        let ic = self.idx_set(c)?;
        Ok(self.indep_idx(&ia, &ib, &ic))
    }

    pub(crate) fn indep_idx(
        &self,
        a: &BTreeSet<usize>,
        b: &BTreeSet<usize>,
        c: &BTreeSet<usize>,
    ) -> Verdict {
        let ca = self.acl_idx(&c.union(a).copied().collect());
        let cb = self.acl_idx(&c.union(b).copied().collect());
        let cc = self.acl_idx(c);
        for &x in &ca {
            for &y in &cb {
                if let Some(path) = self.path_idx(x, y) {
                    if !path.iter().any(|p| cc.contains(p)) {
                        return Verdict::fails(Witness::Points {
                            points: vec![self.labels[x].clone(), self.labels[y].clone()],
                        });
                    }
                }
            }
        }
        Verdict::holds()
    }

    /// Type equality of the tuples A and A' over the base B: holds iff some
    /// graph isomorphism acl(B∪A) -> acl(B∪A') fixes acl(B) pointwise and
    /// maps the i-th entry of A to the i-th entry of A'. The found
    /// isomorphism is returned as the witness.
    pub fn same_type_over(
        &self,
        a: &[String],
        a2: &[String],
        b: &BTreeSet<String>,
    ) -> Result<Verdict, PsError> {
        if a.len() != a2.len() {
            return Err(PsError::ArityMismatch { left: a.len(), right: a2.len() });
        }
        let ia: Vec<usize> = a.iter().map(|v| self.idx(v)).collect::<Result<_, _>>()?;
        let ia2: Vec<usize> = a2.iter().map(|v| self.idx(v)).collect::<Result<_, _>>()?;
        let ib = self.idx_set(b)?;

        let base = self.acl_idx(&ib);
        let mut dom_seed: BTreeSet<usize> = ib.clone();
        dom_seed.extend(ia.iter().copied());
        let mut tgt_seed: BTreeSet<usize> = ib.clone();
        tgt_seed.extend(ia2.iter().copied());
        let domain = self.acl_idx(&dom_seed);
        let target = self.acl_idx(&tgt_seed);
        if domain.len() != target.len() {
            return Ok(Verdict::fails(Witness::Text {
                text: format!(
                    "closures have different sizes ({} vs {})",
                    domain.len(),
                    target.len()
                ),
            }));
        }

        let mut forced: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in &base {
            if !target.contains(&v) {
                return Ok(Verdict::fails(Witness::Text {
                    text: format!("base point `{}` missing from the target closure", self.labels[v]),
                }));
            }
            forced.insert(v, v);
        }
        for (&x, &y) in ia.iter().zip(&ia2) {
            if let Some(&old) = forced.get(&x) {
                if old != y {
                    return Ok(Verdict::fails(Witness::Text {
                        text: format!(
                            "`{}` must map to both `{}` and `{}`",
                            self.labels[x], self.labels[old], self.labels[y]
                        ),
                    }));
                }
            }
            if !target.contains(&y) {
                return Ok(Verdict::fails(Witness::Text {
                    text: format!("`{}` lies outside the target closure", self.labels[y]),
                }));
            }
            forced.insert(x, y);
        }
        // forced part must be injective
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for &y in forced.values() {
            if !used.insert(y) {
                return Ok(Verdict::fails(Witness::Text {
                    text: "forced mapping is not injective".to_string(),
                }));
            }
        }

        let dom_vec: Vec<usize> = domain.iter().copied().collect();
        let tgt_vec: Vec<usize> = target.iter().copied().collect();
        let found = self.extend_isomorphism(&dom_vec, &tgt_vec, &forced);
        match found {
            Some(map) => Ok(Verdict::holds_with(Witness::Mapping {
                pairs: map
                    .iter()
                    .map(|(&x, &y)| (self.labels[x].clone(), self.labels[y].clone()))
                    .collect(),
            })),
            None => Ok(Verdict::fails(Witness::Text {
                text: "no isomorphism between the closures respects the constraints"
                    .to_string(),
            })),
        }
    }

    /// Backtracking search for an induced-subgraph isomorphism
    /// domain -> target extending `forced`.
    fn extend_isomorphism(
        &self,
        domain: &[usize],
        target: &[usize],
        forced: &BTreeMap<usize, usize>,
    ) -> Option<BTreeMap<usize, usize>> {
        // forced pairs must already respect adjacency
        let pairs: Vec<(usize, usize)> = forced.iter().map(|(&x, &y)| (x, y)).collect();
        for (i, &(x1, y1)) in pairs.iter().enumerate() {
            for &(x2, y2) in &pairs[i + 1..] {
                if self.adj[x1].contains(&x2) != self.adj[y1].contains(&y2) {
                    return None;
                }
            }
        }
        let remaining: Vec<usize> =
            domain.iter().copied().filter(|v| !forced.contains_key(v)).collect();
        let used: BTreeSet<usize> = forced.values().copied().collect();
        let mut map = forced.clone();
        if self.backtrack(&remaining, 0, target, &mut map, &used.clone()) {
            Some(map)
        } else {
            None
        }
    }

    fn backtrack(
        &self,
        remaining: &[usize],
        pos: usize,
        target: &[usize],
        map: &mut BTreeMap<usize, usize>,
        used: &BTreeSet<usize>,
    ) -> bool {
        if pos == remaining.len() {
            return true;
        }
        let x = remaining[pos];
        for &y in target {
            if used.contains(&y) || map.values().any(|&m| m == y) {
                continue;
            }
            let consistent = map.iter().all(|(&dx, &dy)| {
                self.adj[x].contains(&dx) == self.adj[y].contains(&dy)
            });
            if !consistent {
                continue;
            }
            map.insert(x, y);
            if self.backtrack(remaining, pos + 1, target, map, used) {
                return true;
            }
            map.remove(&x);
        }
        false
    }

    /// All graph automorphisms, as permutations of vertex indices.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.perms(&mut perm, &mut used, &mut out);
        out
    }

    fn perms(&self, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = self.labels.len();
        let pos = perm.len();
        if pos == n {
            out.push(perm.clone());
            return;
        }
        'cand: for y in 0..n {
            if used[y] || self.adj[pos].len() != self.adj[y].len() {
                continue;
            }
            for (x, &px) in perm.iter().enumerate() {
                if self.adj[pos].contains(&x) != self.adj[y].contains(&px) {
                    continue 'cand;
                }
            }
            perm.push(y);
            used[y] = true;
            self.perms(perm, used, out);
            used[y] = false;
            perm.pop();
        }
    }

    /// Grow a superforest in which every vertex present before the final
    /// round has at least `min_degree` neighbors; runs `depth` rounds of
    /// padding with fresh leaves, so vertices added in the last round may
    /// keep degree 1. Fresh labels are `parent#k` with `k` increasing.
    /// The original forest is an induced subgraph and the new vertices form
    /// pendant trees, so closures and verdicts among original vertices are
    /// unchanged.
    pub fn saturate(&self, min_degree: usize, depth: usize) -> Result<Forest, PsError> {
        if min_degree < 1 {
            return Err(PsError::ResourceLimit("min_degree must be at least 1".into()));
        }
        const MAX_VERTICES: usize = 10_000;
        let mut labels = self.labels.clone();
        let mut edges = self.edges();
        let mut adj_count: BTreeMap<String, usize> = BTreeMap::new();
        for v in &labels {
            adj_count.insert(v.clone(), 0);
        }
        for (a, b) in &edges {
            *adj_count.get_mut(a).expect("endpoint known") += 1;
            *adj_count.get_mut(b).expect("endpoint known") += 1;
        }
        let mut existing: BTreeSet<String> = labels.iter().cloned().collect();
        for _round in 0..depth {
            let snapshot = labels.clone();
            for v in snapshot {
                let mut k = 1;
                while adj_count[&v] < min_degree {
                    let fresh = loop {
                        let cand = format!("{v}#{k}");
                        k += 1;
                        if !existing.contains(&cand) {
                            break cand;
                        }
                    };
                    if labels.len() >= MAX_VERTICES {
                        return Err(PsError::ResourceLimit(format!(
                            "saturation exceeded {MAX_VERTICES} vertices"
                        )));
                    }
                    existing.insert(fresh.clone());
                    labels.push(fresh.clone());
                    adj_count.insert(fresh.clone(), 1);
                    *adj_count.get_mut(&v).expect("vertex known") += 1;
                    edges.push((v.clone(), fresh));
                }
            }
        }
        Forest::new(labels, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[&str]) -> BTreeSet<String> {
        vs.iter().map(|s| s.to_string()).collect()
    }

    fn forest(vertices: &[&str], edges: &[(&str, &str)]) -> Forest {
        Forest::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(
            Forest::new(vec!["a".into(), "a".into()], vec![]),
            Err(PsError::DuplicateVertex(_))
        ));
        assert!(matches!(
            Forest::new(vec!["a".into()], vec![("a".into(), "a".into())]),
            Err(PsError::SelfLoop(_))
        ));
        assert!(matches!(
            Forest::new(
                vec!["a".into(), "b".into(), "c".into()],
                vec![
                    ("a".into(), "b".into()),
                    ("b".into(), "c".into()),
                    ("c".into(), "a".into())
                ]
            ),
            Err(PsError::Cyclic)
        ));
        assert!(matches!(
            Forest::new(vec!["a!".into()], vec![]),
            Err(PsError::BadLabel(_))
        ));
    }

    #[test]
    fn reduced_paths() {
        let f = forest(&["a", "b"], &[("a", "b")]);
        let p = f.reduced_path("a", "b").unwrap().unwrap();
        assert_eq!(p.vertices, vec!["a", "b"]);

        let f = forest(&["a", "x", "b"], &[("a", "x"), ("x", "b")]);
        let p = f.reduced_path("a", "b").unwrap().unwrap();
        assert_eq!(p.vertices, vec!["a", "x", "b"]);
        assert_eq!(p.len(), 2);

        let f = forest(&["a", "b"], &[]);
        assert!(f.reduced_path("a", "b").unwrap().is_none());
        let p = f.reduced_path("a", "a").unwrap().unwrap();
        assert_eq!(p.vertices, vec!["a"]);

        assert!(matches!(f.reduced_path("a", "zz"), Err(PsError::UnknownVertex(_))));
    }

    #[test]
    fn closure_examples() {
        let f = forest(&["a", "x", "y", "b"], &[("a", "x"), ("x", "y"), ("y", "b")]);
        assert_eq!(f.acl(&set(&["a", "b"])).unwrap(), set(&["a", "x", "y", "b"]));
        assert_eq!(f.acl(&set(&[])).unwrap(), set(&[]));

        let star = forest(&["x", "a", "b", "c"], &[("x", "a"), ("x", "b"), ("x", "c")]);
        assert_eq!(star.acl(&set(&["a", "b"])).unwrap(), set(&["a", "x", "b"]));

        let path = forest(&["a", "x", "b"], &[("a", "x"), ("x", "b")]);
        assert!(path.is_nice(&set(&["a", "x", "b"])).unwrap());
        assert!(!path.is_nice(&set(&["a", "b"])).unwrap());
        assert!(path.is_nice(&set(&["a"])).unwrap());
        assert!(path.is_nice(&set(&[])).unwrap());
    }

    #[test]
    fn independence_examples() {
        let star = forest(&["x", "a", "b"], &[("x", "a"), ("x", "b")]);
        let v = star.indep(&set(&["a"]), &set(&["b"]), &set(&[])).unwrap();
        assert!(v.is_fails());
        match v.witness.unwrap() {
            Witness::Points { points } => assert_eq!(points, vec!["a", "b"]),
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(star.indep(&set(&["a"]), &set(&["b"]), &set(&["x"])).unwrap().is_holds());

        let two = forest(&["a", "b"], &[]);
        assert!(two.indep(&set(&["a"]), &set(&["b"]), &set(&[])).unwrap().is_holds());

        // reflexivity over a base containing the point
        assert!(star.indep(&set(&["a"]), &set(&["a"]), &set(&["a"])).unwrap().is_holds());
        // empty left side is independent from everything
        assert!(star.indep(&set(&[]), &set(&["a", "b", "x"]), &set(&[])).unwrap().is_holds());
        // shared closure point outside acl(C) fails, even with no edge used
        assert!(star.indep(&set(&["a"]), &set(&["a"]), &set(&[])).unwrap().is_fails());
    }

    #[test]
    fn type_equality_examples() {
        let star = forest(&["x", "a", "b"], &[("x", "a"), ("x", "b")]);
        let v = star
            .same_type_over(&["a".into()], &["b".into()], &set(&["x"]))
            .unwrap();
        assert!(v.is_holds());
        assert!(v.witness.is_some());

        // distance from the base distinguishes the types
        let path = forest(&["a", "x", "y"], &[("a", "x"), ("x", "y")]);
        let v = path
            .same_type_over(&["x".into()], &["y".into()], &set(&["a"]))
            .unwrap();
        assert!(v.is_fails());

        let v = star
            .same_type_over(&["a".into()], &["a".into()], &set(&["x"]))
            .unwrap();
        assert!(v.is_holds());

        assert!(matches!(
            star.same_type_over(&["a".into()], &[], &set(&[])),
            Err(PsError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn saturation_behavior() {
        let single = forest(&["a"], &[]);
        let grown = single.saturate(2, 1).unwrap();
        assert_eq!(grown.labels(), &["a", "a#1", "a#2"]);
        assert_eq!(grown.degree("a").unwrap(), 2);

        let same = single.saturate(2, 0).unwrap();
        assert_eq!(same, single);

        let edge = forest(&["a", "b"], &[("a", "b")]);
        assert_eq!(edge.saturate(1, 5).unwrap(), edge);

        // two rounds: the first round's leaves get padded too
        let deep = single.saturate(2, 2).unwrap();
        for v in ["a", "a#1", "a#2"] {
            assert!(deep.degree(v).unwrap() >= 2, "degree of {v}");
        }
    }

    #[test]
    fn automorphisms_of_star() {
        let star = forest(&["x", "a", "b"], &[("x", "a"), ("x", "b")]);
        let autos = star.automorphisms();
        // identity and the leaf swap
        assert_eq!(autos.len(), 2);
    }
}
