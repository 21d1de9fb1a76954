//! Deterministic enumeration of labeled forests: structures by size, then
//! by lexicographic adjacency encoding (the edge set read as a bitmask over
//! the lexicographically ordered vertex pairs, ascending).

use super::forest::Forest;
use super::PsError;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// All labeled forests on exactly `n` vertices.
pub fn forests_on(n: usize) -> Result<Vec<Forest>, PsError> {
    if n > 12 {
        return Err(PsError::ResourceLimit(format!(
            "forest enumeration on {n} vertices"
        )));
    }
    let names = labels(n);
    let pairs: Vec<(usize, usize)> = {
        let mut v = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                v.push((i, j));
            }
        }
        v
    };
    let m = pairs.len();
    let mut out = Vec::new();
    'mask: for mask in 0u64..(1 << m) {
        // union-find acyclicity filter
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut edges = Vec::new();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            let ri = find(&mut parent, i);
            let rj = find(&mut parent, j);
            if ri == rj {
                continue 'mask;
            }
            parent[ri] = rj;
            edges.push((names[i].clone(), names[j].clone()));
        }
        out.push(Forest::new(names.clone(), edges).expect("filtered acyclic"));
    }
    Ok(out)
}

/// All labeled forests on at most `n` vertices, smaller sizes first.
pub fn forests_up_to(n: usize) -> Result<Vec<Forest>, PsError> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(forests_on(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forest_counts_match_the_known_sequence() {
        // labeled forests on n vertices: 1, 1, 2, 7, 38, 291
        let counts: Vec<usize> = (0..=5).map(|n| forests_on(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 7, 38, 291]);
        assert_eq!(forests_up_to(5).unwrap().len(), 340);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = forests_on(4).unwrap();
        let b = forests_on(4).unwrap();
        assert_eq!(a, b);
        // first structure is edgeless, last is built from the highest mask
        assert!(a[0].edges().is_empty());
    }
}
