//! Exact dense linear algebra over the coefficient field and over the
//! rational function field. Pivoting always takes the first nonzero entry,
//! so elimination is deterministic.

use super::ratfunc::RatFunc;
use super::scalar::{CoeffField, Scalar};

/// Dense matrix over the coefficient field, row major.
#[derive(Clone, Debug)]
pub struct ScalarMat {
    pub field: CoeffField,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMat {
    pub fn zero(field: CoeffField, rows: usize, cols: usize) -> Self {
        ScalarMat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form. Returns the pivot column of each
    /// pivot row in order; the rank is the length of that list.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // find first nonzero entry in this column at or below `row`
            let mut pivot_row = None;
            for r in row..self.rows {
                if !f.is_zero(self.at(r, col)) {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            // scale pivot row to 1
            let inv = f.inv(self.at(row, col)).expect("pivot nonzero");
            for c in col..self.cols {
                let v = f.mul(self.at(row, c), &inv);
                self.set(row, c, v);
            }
            // eliminate everywhere else
            for r in 0..self.rows {
                if r == row || f.is_zero(self.at(r, col)) {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = f.sub(self.at(r, c), &f.mul(&factor, self.at(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Canonical nullspace basis from the reduced echelon form: one vector
    /// per free column, in ascending free-column order.
    pub fn nullspace_basis(mut self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let pivots = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![f.zero(); self.cols];
            vec[free] = f.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                vec[pcol] = f.neg(self.at(prow, free));
            }
            basis.push(vec);
        }
        basis
    }
}

/// Incremental column rank over the coefficient field: columns are reduced
/// against stored pivots; `add` reports whether the rank grew.
pub struct IncrementalRank {
    field: CoeffField,
    dim: usize,
    /// stored reduced columns, each with a unique leading position
    pivots: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalRank {
    pub fn new(field: CoeffField, dim: usize) -> Self {
        IncrementalRank { field, dim, pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn add(&mut self, mut col: Vec<Scalar>) -> bool {
        let f = self.field;
        assert_eq!(col.len(), self.dim);
        for (lead, pivot) in &self.pivots {
            if !f.is_zero(&col[*lead]) {
                let factor = col[*lead].clone();
                for i in *lead..self.dim {
                    col[i] = f.sub(&col[i], &f.mul(&factor, &pivot[i]));
                }
            }
        }
        let lead = match col.iter().position(|v| !f.is_zero(v)) {
            Some(i) => i,
            None => return false,
        };
        let inv = f.inv(&col[lead]).expect("leading entry nonzero");
        for v in col.iter_mut() {
            *v = f.mul(v, &inv);
        }
        self.pivots.push((lead, col));
        self.pivots.sort_by_key(|(l, _)| *l);
        true
    }
}

/// Incremental row rank over the rational function field. Used for Jacobian
/// ranks and differential span tests, which need exact field arithmetic on
/// rational functions.
pub struct IncrementalRatRank {
    dim: usize,
    pivots: Vec<(usize, Vec<RatFunc>)>,
}

impl IncrementalRatRank {
    pub fn new(dim: usize) -> Self {
        IncrementalRatRank { dim, pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn add(&mut self, mut row: Vec<RatFunc>) -> bool {
        assert_eq!(row.len(), self.dim);
        for (lead, pivot) in &self.pivots {
            if !row[*lead].is_zero() {
                let factor = row[*lead].clone();
                for i in *lead..self.dim {
                    row[i] = row[i].sub(&factor.mul(&pivot[i]));
                }
            }
        }
        let lead = match row.iter().position(|v| !v.is_zero()) {
            Some(i) => i,
            None => return false,
        };
        let inv = row[lead].inv().expect("leading entry nonzero");
        for v in row.iter_mut() {
            *v = v.mul(&inv);
        }
        self.pivots.push((lead, row));
        self.pivots.sort_by_key(|(l, _)| *l);
        true
    }
}

/// Rank of a matrix of rational functions.
pub fn ratfunc_rank(rows: &[Vec<RatFunc>]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut inc = IncrementalRatRank::new(first.len());
    for row in rows {
        inc.add(row.clone());
    }
    inc.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Poly;

    fn q() -> CoeffField {
        CoeffField::rationals()
    }

    #[test]
    fn rref_and_rank() {
        // [[1,2,3],[2,4,6],[1,0,1]] has rank 2
        let mut m = ScalarMat::zero(q(), 3, 3);
        let vals = [[1, 2, 3], [2, 4, 6], [1, 0, 1]];
        for (r, row) in vals.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, q().from_i64(*v));
            }
        }
        let pivots = m.rref();
        assert_eq!(pivots.len(), 2);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let mut m = ScalarMat::zero(q(), 2, 3);
        // x + y + z = 0 ; y - z = 0  -> nullspace spanned by (-2, 1, 1)
        let vals = [[1, 1, 1], [0, 1, -1]];
        for (r, row) in vals.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, q().from_i64(*v));
            }
        }
        let orig = m.clone();
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 1);
        for vec in &basis {
            for r in 0..orig.rows {
                let mut acc = q().zero();
                for c in 0..orig.cols {
                    acc = q().add(&acc, &q().mul(orig.at(r, c), &vec[c]));
                }
                assert!(q().is_zero(&acc));
            }
        }
    }

    #[test]
    fn incremental_rank_over_f3() {
        let f3 = CoeffField::prime(3).unwrap();
        let mut inc = IncrementalRank::new(f3, 3);
        assert!(inc.add(vec![f3.from_i64(1), f3.from_i64(2), f3.from_i64(0)]));
        assert!(inc.add(vec![f3.from_i64(0), f3.from_i64(1), f3.from_i64(1)]));
        // 2*first + second = (2,2,1)... dependent combination: first*2 + second
        assert!(!inc.add(vec![f3.from_i64(2), f3.from_i64(2), f3.from_i64(1)]));
        assert_eq!(inc.rank(), 2);
    }

    #[test]
    fn ratfunc_rank_detects_dependence() {
        let t1 = RatFunc::var(q(), 2, 0).unwrap();
        let t2 = RatFunc::var(q(), 2, 1).unwrap();
        let one = RatFunc::one(q(), 2);
        let zero = RatFunc::zero(q(), 2);
        // rows (1, t1), (t2, t1 t2) are proportional
        let rows = vec![
            vec![one.clone(), t1.clone()],
            vec![t2.clone(), t1.mul(&t2)],
            vec![zero.clone(), one.clone()],
        ];
        assert_eq!(ratfunc_rank(&rows), 2);
        let _ = Poly::zero(q(), 1);
    }
}
