//! Dense exact linear algebra: reduced row echelon form, rank, nullspaces,
//! and canonical subspaces of k^n.
//!
//! Everything here is exact over a [`Field`]; the matrices arising from
//! graded components of artinian rings are small, so dense Gaussian
//! elimination is the right tool.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: K, cols: usize, rows: Vec<Vec<K::Elem>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, r: Vec<K::Elem>) {
        assert_eq!(r.len(), self.cols);
        self.data.extend(r);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zero(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, vj) in v.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(self.get(i, j), vj));
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c)).expect("pivot nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.get(i, c)) {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Rank computed with early exit once `bound` independent rows are found.
    pub fn rank_at_least(&self, bound: usize) -> bool {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r >= bound {
                return true;
            }
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot nonzero");
            for i in r + 1..m.rows {
                if !f.is_zero(m.get(i, c)) {
                    let factor = f.mul(m.get(i, c), &inv);
                    for j in c..m.cols {
                        let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            r += 1;
        }
        r >= bound
    }

    /// Basis of the right kernel {v : Av = 0}, ordered by free column.
    pub fn nullspace(&self) -> Vec<Vec<K::Elem>> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve A x = b; None when inconsistent. Returns one solution (free
    /// coordinates set to zero).
    pub fn solve(&self, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field.clone();
        let mut aug = Matrix::zero(f.clone(), self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

/// A subspace of k^n held in canonical reduced-row-echelon form, so equality
/// of subspaces is structural equality and membership is a reduction.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<K: Field> {
    field: K,
    ambient: usize,
    /// rref rows, each with leading coefficient 1 at its pivot column.
    rows: Vec<Vec<K::Elem>>,
    pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
    pub fn empty(field: K, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_spanning(
        field: K,
        ambient: usize,
        vectors: impl IntoIterator<Item = Vec<K::Elem>>,
    ) -> Self {
        let mut s = Subspace::empty(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn full(field: K, ambient: usize) -> Self {
        let basis: Vec<Vec<K::Elem>> = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace::from_spanning(field, ambient, basis)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<K::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce v modulo the subspace; the result is zero iff v is a member.
    pub fn reduce(&self, mut v: Vec<K::Elem>) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for j in p..self.ambient {
                v[j] = f.sub(&v[j], &f.mul(&factor, &row[j]));
            }
        }
        v
    }

    pub fn contains(&self, v: &[K::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|c| self.field.is_zero(c))
    }

    /// Insert a vector; returns true when it was independent (dim grew).
    /// Keeps the representation in reduced row echelon form.
    pub fn insert(&mut self, v: Vec<K::Elem>) -> bool {
        let f = self.field.clone();
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !f.is_zero(c)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        let v: Vec<K::Elem> = v.iter().map(|c| f.mul(c, &inv)).collect();
        // back-substitute into existing rows to stay reduced
        for row in &mut self.rows {
            if !f.is_zero(&row[p]) {
                let factor = row[p].clone();
                for j in 0..self.ambient {
                    row[j] = f.sub(&row[j], &f.mul(&factor, &v[j]));
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&q| q > p)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subspace<K>) -> Subspace<K> {
        let mut s = self.clone();
        for row in &other.rows {
            s.insert(row.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace<K>) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::Field;

    #[test]
    fn rref_and_rank() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_rows(f, 3, vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert!(m.rank_at_least(2));
        assert!(!m.rank_at_least(3));
    }

    #[test]
    fn nullspace_is_kernel() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(f, 3, vec![vec![1, 2, 3], vec![0, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let img = m.apply(v);
            assert!(img.iter().all(|c| *c == 0));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let q = Rationals;
        let m = Matrix::from_rows(
            q,
            2,
            vec![
                vec![q.from_i64(1), q.from_i64(1)],
                vec![q.from_i64(1), q.from_i64(-1)],
            ],
        );
        let b = vec![q.from_i64(3), q.from_i64(1)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let sing = Matrix::from_rows(
            q,
            2,
            vec![
                vec![q.from_i64(1), q.from_i64(1)],
                vec![q.from_i64(2), q.from_i64(2)],
            ],
        );
        assert!(sing.solve(&[q.from_i64(0), q.from_i64(1)]).is_none());
    }

    #[test]
    fn subspace_canonical_equality() {
        let f = PrimeField::new(5).unwrap();
        let a = Subspace::from_spanning(f, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        let b = Subspace::from_spanning(f, 3, vec![vec![1, 2, 1], vec![1, 0, 4], vec![2, 2, 0]]);
        assert_eq!(a.dim(), 2);
        assert_eq!(a, b);
        assert!(a.contains(&[1, 3, 2]));
        assert!(!a.contains(&[1, 0, 0]));
    }

    #[test]
    fn subspace_sum_and_order() {
        let q = Rationals;
        let e1 = vec![q.one(), q.zero(), q.zero()];
        let e3 = vec![q.zero(), q.zero(), q.one()];
        let a = Subspace::from_spanning(q, 3, vec![e3.clone()]);
        let b = Subspace::from_spanning(q, 3, vec![e1.clone()]);
        let s = a.sum(&b);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots, vec![0, 2]);
        assert!(Subspace::from_spanning(q, 3, vec![e1, e3]) == s);
    }
}
