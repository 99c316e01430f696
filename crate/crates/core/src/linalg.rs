//! Dense exact linear algebra: row reduction, kernels, and subspaces.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{Field, Scalar};

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Matrix {
        Matrix { field, ncols, rows: vec![vec![field.zero(); ncols]; nrows] }
    }

    pub fn from_rows(field: Field, ncols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix { field, ncols, rows }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, nrows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.rows[i][j] = v.clone();
            }
        }
        m
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.rows[i][j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.ncols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.ncols);
        self.rows.iter().map(|r| dot(self.field, r, x)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows());
        let mut out = Matrix::zeros(self.field, self.nrows(), other.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for (k, a) in r.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[i][j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        rref(&mut rows, self.ncols).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows() == self.ncols && self.rank() == self.ncols
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut rows = self.rows.clone();
        let pivots = rref(&mut rows, self.ncols);
        kernel_from_rref(self.field, &rows, &pivots, self.ncols)
    }

    /// Basis of `{y : y A = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel()
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.nrows());
        let mut rows: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, v)| {
                let mut r = r.clone();
                r.push(v.clone());
                r
            })
            .collect();
        let pivots = rref(&mut rows, self.ncols + 1);
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.ncols];
        for (r, &p) in rows.iter().zip(&pivots) {
            x[p] = r[self.ncols].clone();
        }
        Some(x)
    }

    /// Column space as a subspace of `K^nrows`.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.nrows(), self.transpose().rows)
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.ncols, self.rows.clone())
    }
}

pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul(x, y);
        }
    }
    acc
}

/// `a += c * b` on vectors.
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            x.add_mul(c, y);
        }
    }
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Reduces `rows` in place to reduced row echelon form over the first `ncols`
/// columns, drops zero rows, and returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for v in rows[top].iter_mut().skip(col) {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = core::mem::take(&mut rows[top]);
        for (i, r) in rows.iter_mut().enumerate() {
            if i == top || r.is_empty() || r[col].is_zero() {
                continue;
            }
            let c = -&r[col];
            for (x, y) in r.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    x.add_mul(&c, y);
                }
            }
        }
        rows[top] = pivot_row;
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

fn kernel_from_rref(field: Field, rows: &[Vec<Scalar>], pivots: &[usize], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &p) in rows.iter().zip(pivots) {
            if !r[free].is_zero() {
                v[p] = -&r[free];
            }
        }
        out.push(v);
    }
    out
}

/// A subspace of `K^ambient`, kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::from_vectors(field, ambient, Matrix::identity(field, ambient).rows)
    }

    pub fn from_vectors(field: Field, ambient: usize, mut rows: Vec<Vec<Scalar>>) -> Subspace {
        let pivots = rref(&mut rows, ambient);
        Subspace { field, ambient, rows, pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The echelon basis; row `i` has a leading 1 in column `pivots()[i]`.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(&mut v, &c, r);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_vectors(self.field, self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // v = sum a_i u_i = sum b_j w_j  <=>  [U; -W]^T (a, b) = 0
        let n = self.dim();
        let m = other.dim();
        if n == 0 || m == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        let mut cols: Vec<Vec<Scalar>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let a = Matrix::from_columns(self.field, self.ambient, &cols);
        let vecs = a
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![self.field.zero(); self.ambient];
                for (c, u) in k[..n].iter().zip(&self.rows) {
                    axpy(&mut v, c, u);
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.field, self.ambient, vecs)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (c, r) in coords.iter().zip(&self.rows) {
            let neg = -c;
            axpy(&mut w, &neg, r);
        }
        is_zero_vec(&w).then_some(coords)
    }

    /// Vectors spanning the quotient `K^ambient / self`: the functionals whose
    /// common kernel is this subspace.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        kernel_from_rref(self.field, &self.rows, &self.pivots, self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.int(v)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        let n = rows[0].len();
        Matrix::from_rows(Field::Rational, n, rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&a.mul_vec(&k[0])));
        assert_eq!(a.left_kernel().len(), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = mat(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let b = mat(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn subspace_intersection() {
        let f = Field::Rational;
        let u = Subspace::from_vectors(f, 3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let w = Subspace::from_vectors(f, 3, vec![vec![q(0), q(1), q(1)], vec![q(1), q(0), q(1)]]);
        let i = u.intersect(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[q(1), q(-1), q(0)]));
        assert_eq!(u.sum(&w).dim(), 3);
        assert_eq!(u.annihilator().len(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            (Just(c), proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((c, rows) in small_matrix()) {
            let a = Matrix::from_rows(Field::Rational, c, rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect());
            let k = a.kernel();
            prop_assert_eq!(a.rank() + k.len(), c);
            for v in &k {
                prop_assert!(is_zero_vec(&a.mul_vec(v)));
            }
        }

        #[test]
        fn intersection_dimension_formula((c, rows) in small_matrix(), (_, rows2) in small_matrix()) {
            let f = Field::Rational;
            let conv = |rs: &Vec<Vec<i64>>| -> Vec<Vec<Scalar>> {
                rs.iter().map(|r| (0..c).map(|j| q(*r.get(j).unwrap_or(&0))).collect()).collect()
            };
            let u = Subspace::from_vectors(f, c, conv(&rows));
            let w = Subspace::from_vectors(f, c, conv(&rows2));
            prop_assert_eq!(u.intersect(&w).dim() + u.sum(&w).dim(), u.dim() + w.dim());
        }
    }
}
