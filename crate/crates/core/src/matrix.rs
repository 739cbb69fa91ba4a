//! Dense exact integer matrices.
//!
//! The scalar is any signed integer type implementing the `num` traits;
//! computations that certify spec-level facts instantiate it with the
//! crate-level [`crate::Int`] (arbitrary precision), while tests also run
//! the same code over `i64` as a cross-check.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::Signed;

/// Scalar bound for exact linear algebra.
pub trait Scalar: Integer + Signed + Clone + Send + Sync + fmt::Debug + 'static {}
impl<T: Integer + Signed + Clone + Send + Sync + fmt::Debug + 'static> Scalar for T {}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<I> {
    rows: usize,
    cols: usize,
    data: Vec<I>,
}

impl<I: Scalar> Mat<I> {
    pub fn zero(rows: usize, cols: usize) -> Mat<I> {
        Mat {
            rows,
            cols,
            data: (0..rows * cols).map(|_| I::zero()).collect(),
        }
    }

    pub fn identity(n: usize) -> Mat<I> {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = I::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<I>>) -> Mat<I> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> I>(rows: usize, cols: usize, mut f: F) -> Mat<I> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[I] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<I> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, rhs: &Mat<I>) -> Mat<I> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out: Mat<I> = Mat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[I]) -> Vec<I> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = I::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    /// `row[dst] += q * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, q: &I) {
        assert_ne!(dst, src);
        for j in 0..self.cols {
            let term = q.clone() * self[(src, j)].clone();
            self[(dst, j)] = self[(dst, j)].clone() + term;
        }
    }

    /// `col[dst] += q * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, q: &I) {
        assert_ne!(dst, src);
        for i in 0..self.rows {
            let term = q.clone() * self[(i, src)].clone();
            self[(i, dst)] = self[(i, dst)].clone() + term;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Exact.
    pub fn det(&self) -> I {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return I::one();
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = I::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = !sign;
                    }
                    None => return I::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(k, k)].clone() * m[(i, j)].clone()
                        - m[(i, k)].clone() * m[(k, j)].clone();
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m[(i, j)] = q;
                }
                m[(i, k)] = I::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Whether the matrix is square with determinant +-1.
    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    pub fn map<J: Scalar, F: Fn(&I) -> J>(&self, f: F) -> Mat<J> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<I> Index<(usize, usize)> for Mat<I> {
    type Output = I;
    fn index(&self, (i, j): (usize, usize)) -> &I {
        &self.data[i * self.cols + j]
    }
}

impl<I> IndexMut<(usize, usize)> for Mat<I> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut I {
        let c = self.cols;
        &mut self.data[i * c + j]
    }
}

impl<I: fmt::Debug> fmt::Debug for Mat<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;
    use proptest::prelude::*;

    #[test]
    fn multiply_identity() {
        let a: Mat<i64> = Mat::from_rows(vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(Mat::identity(3).mul(&a), a);
        assert_eq!(a.mul(&Mat::identity(2)), a);
    }

    #[test]
    fn determinant_small_cases() {
        let a: Mat<i64> = Mat::from_rows(vec![vec![3, 2], vec![1, 4]]);
        assert_eq!(a.det(), 10);
        let b: Mat<i64> = Mat::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(b.det(), 0);
        let c: Mat<Int> = Mat::from_rows(vec![
            vec![Int::from(2), Int::from(0), Int::from(1)],
            vec![Int::from(1), Int::from(1), Int::from(0)],
            vec![Int::from(0), Int::from(3), Int::from(1)],
        ]);
        assert_eq!(c.det(), Int::from(5));
        assert!(Mat::<i64>::identity(4).is_unimodular());
    }

    proptest! {
        // Laplace expansion over the first row as an independent oracle.
        #[test]
        fn det_matches_cofactor_expansion(vals in proptest::collection::vec(-5i64..=5, 9)) {
            let m: Mat<i64> = Mat::from_fn(3, 3, |i, j| vals[3 * i + j]);
            let minor = |r: usize, c: usize| -> i64 {
                let mut v = Vec::new();
                for i in 0..3 {
                    if i == r { continue; }
                    for j in 0..3 {
                        if j == c { continue; }
                        v.push(m[(i, j)]);
                    }
                }
                v[0] * v[3] - v[1] * v[2]
            };
            let oracle = m[(0, 0)] * minor(0, 0) - m[(0, 1)] * minor(0, 1) + m[(0, 2)] * minor(0, 2);
            prop_assert_eq!(m.det(), oracle);
        }

        #[test]
        fn det_is_multiplicative(a in proptest::collection::vec(-3i64..=3, 9),
                                 b in proptest::collection::vec(-3i64..=3, 9)) {
            let ma: Mat<Int> = Mat::from_fn(3, 3, |i, j| Int::from(a[3 * i + j]));
            let mb: Mat<Int> = Mat::from_fn(3, 3, |i, j| Int::from(b[3 * i + j]));
            prop_assert_eq!(ma.mul(&mb).det(), ma.det() * mb.det());
        }
    }
}
