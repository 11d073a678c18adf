//! Dense matrices over an explicit ring context.
//!
//! Elements do not know their ring (a group-ring element needs the group to
//! multiply, a cyclotomic number needs its cyclotomic polynomial), so every
//! arithmetic routine takes the ring as a separate argument.

use std::fmt;

pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_int(&self, k: i64) -> Self::Elem {
        let one = self.one();
        let mut acc = self.zero();
        for _ in 0..k.unsigned_abs() {
            acc = self.add(&acc, &one);
        }
        if k < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }
}

pub trait Field: Ring {
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.data.chunks(self.cols.max(1)).take(self.rows)).finish()
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    /// Builds from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Option<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return None;
            }
            data.extend(r);
        }
        Some(Self { rows: n, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<R: Ring<Elem = T>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: Ring<Elem = T>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Self { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn insert_row(&mut self, at: usize, row: Vec<T>) {
        assert!(at <= self.rows && row.len() == self.cols);
        let start = at * self.cols;
        self.data.splice(start..start, row);
        self.rows += 1;
    }

    pub fn insert_col(&mut self, at: usize, col: Vec<T>) {
        assert!(at <= self.cols && col.len() == self.rows);
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, v) in col.into_iter().enumerate() {
            let r = &self.data[i * self.cols..(i + 1) * self.cols];
            data.extend_from_slice(&r[..at]);
            data.push(v);
            data.extend_from_slice(&r[at..]);
        }
        self.data = data;
        self.cols += 1;
    }

    pub fn remove_row(&mut self, at: usize) {
        assert!(at < self.rows);
        let start = at * self.cols;
        self.data.drain(start..start + self.cols);
        self.rows -= 1;
    }

    pub fn remove_col(&mut self, at: usize) {
        assert!(at < self.cols);
        let cols = self.cols;
        let mut idx = 0;
        self.data.retain(|_| {
            let keep = idx % cols != at;
            idx += 1;
            keep
        });
        self.cols -= 1;
    }

    /// `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..a.rows {
            data.extend_from_slice(a.row(i));
            data.extend_from_slice(b.row(i));
        }
        for i in 0..c.rows {
            data.extend_from_slice(c.row(i));
            data.extend_from_slice(d.row(i));
        }
        Self { rows, cols, data }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = Matrix::zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = &b[(k, j)];
                if ring.is_zero(bkj) {
                    continue;
                }
                let prod = ring.mul(aik, bkj);
                out[(i, j)] = ring.add(&out[(i, j)], &prod);
            }
        }
    }
    out
}

pub fn mat_add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert!(a.rows == b.rows && a.cols == b.cols, "matrix sum shape mismatch");
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect(),
    }
}

pub fn mat_neg<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.neg(x))
}

pub fn is_zero_matrix<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.data.iter().all(|x| ring.is_zero(x))
}

/// Reduces the columns of `m`, visited in `order`, to echelon form and
/// returns the ones that increased the rank, in visiting order.
pub fn pivot_columns<F: Field>(field: &F, m: &Matrix<F::Elem>, order: &[usize]) -> Vec<usize> {
    // Work on the transpose: each visited column becomes a row vector that is
    // reduced against the pivots found so far.
    let mut basis: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    let mut pivots = Vec::new();
    for &j in order {
        let mut v = m.column(j);
        for (p, b) in &basis {
            if field.is_zero(&v[*p]) {
                continue;
            }
            let factor = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !field.is_zero(x)) {
            let inv = field.inv(&v[p]).expect("nonzero pivot is invertible");
            let v: Vec<_> = v.iter().map(|x| field.mul(x, &inv)).collect();
            basis.push((p, v));
            pivots.push(j);
        }
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let order: Vec<usize> = (0..m.cols).collect();
    pivot_columns(field, m, &order).len()
}

pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(&a[(r, col)])) else {
            return field.zero();
        };
        if piv != col {
            for j in 0..n {
                a.data.swap(piv * n + j, col * n + j);
            }
            det = field.neg(&det);
        }
        let p = a[(col, col)].clone();
        det = field.mul(&det, &p);
        let inv = field.inv(&p).expect("nonzero pivot is invertible");
        for r in col + 1..n {
            if field.is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = field.mul(&a[(r, col)], &inv);
            for j in col..n {
                if field.is_zero(&a[(col, j)]) {
                    continue;
                }
                let t = field.mul(&factor, &a[(col, j)]);
                a[(r, j)] = field.sub(&a[(r, j)], &t);
            }
        }
    }
    det
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    /// Plain rationals, for exercising the generic routines.
    #[derive(Clone, Debug, PartialEq)]
    pub struct Rationals;

    impl Ring for Rationals {
        type Elem = BigRational;
        fn zero(&self) -> BigRational {
            BigRational::zero()
        }
        fn one(&self) -> BigRational {
            BigRational::one()
        }
        fn is_zero(&self, a: &BigRational) -> bool {
            a.is_zero()
        }
        fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
            a + b
        }
        fn neg(&self, a: &BigRational) -> BigRational {
            -a
        }
        fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
            a * b
        }
        fn from_int(&self, k: i64) -> BigRational {
            BigRational::from_integer(k.into())
        }
    }

    impl Field for Rationals {
        fn inv(&self, a: &BigRational) -> Option<BigRational> {
            (!a.is_zero()).then(|| a.recip())
        }
    }

    pub fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rationals.from_int(x)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&Rationals, &qm(&[&[2, 4], &[6, 8]])), Rationals.from_int(-8));
        assert_eq!(determinant(&Rationals, &qm(&[&[0, 1], &[1, 0]])), Rationals.from_int(-1));
        assert_eq!(determinant(&Rationals, &qm(&[&[1, 2], &[2, 4]])), Rationals.from_int(0));
        assert_eq!(determinant(&Rationals, &Matrix::zeros(&Rationals, 0, 0)), Rationals.one());
    }

    #[test]
    fn pivots_depend_on_order() {
        let m = qm(&[&[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(pivot_columns(&Rationals, &m, &[0, 1, 2]), vec![0, 2]);
        assert_eq!(pivot_columns(&Rationals, &m, &[1, 0, 2]), vec![1, 2]);
        assert_eq!(rank(&Rationals, &m), 2);
    }

    #[test]
    fn insert_and_remove_round_trip() {
        let m = qm(&[&[1, 2], &[3, 4]]);
        let mut n = m.clone();
        n.insert_row(1, vec![Rationals.from_int(9), Rationals.from_int(9)]);
        n.insert_col(0, vec![Rationals.from_int(7); 3]);
        assert_eq!(n[(1, 1)], Rationals.from_int(9));
        assert_eq!(n[(2, 2)], Rationals.from_int(4));
        n.remove_col(0);
        n.remove_row(1);
        assert_eq!(n, m);
    }

    #[test]
    fn block_layout() {
        let a = qm(&[&[1]]);
        let b = qm(&[&[2, 3]]);
        let c = qm(&[&[4], &[5]]);
        let d = qm(&[&[6, 7], &[8, 9]]);
        let m = Matrix::block(&a, &b, &c, &d);
        assert_eq!(m, qm(&[&[1, 2, 3], &[4, 6, 7], &[5, 8, 9]]));
    }
}
