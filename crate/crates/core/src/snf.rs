//! Smith normal form over the integers.
//!
//! Elimination uses a minimal-absolute-value pivot rule with
//! nearest-quotient reduction, which keeps intermediate entries small on
//! the sparse relation matrices this crate produces. Transform
//! accumulation is selectable: the full certificate
//! `left * input * right = diag` tracks all four matrices, while hot
//! paths that only consume the diagonal or the left transform can skip
//! the (often much larger) right-hand ones.

use crate::matrix::{Mat, Scalar};

/// Which transforms to accumulate: `[left, left_inv, right, right_inv]`.
pub type SnfFlags = [bool; 4];

/// Track everything: the full certificate.
pub const SNF_ALL: SnfFlags = [true; 4];
/// Track nothing: diagonal only.
pub const SNF_DIAG_ONLY: SnfFlags = [false; 4];
/// Track only the left transform.
pub const SNF_LEFT: SnfFlags = [true, false, false, false];

/// Smith normal form `left * input * right = diag`, with the transforms
/// present according to the flags the computation ran with.
#[derive(Debug, Clone)]
pub struct SnfResult<I> {
    /// Full diagonal of length `min(rows, cols)`: non-negative, each entry
    /// dividing the next, zeros trailing.
    pub diag: Vec<I>,
    pub left: Option<Mat<I>>,
    pub left_inv: Option<Mat<I>>,
    pub right: Option<Mat<I>>,
    pub right_inv: Option<Mat<I>>,
}

impl<I: Scalar> SnfResult<I> {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries greater than one, i.e. the torsion
    /// invariant factors of the cokernel.
    pub fn invariant_factors(&self) -> Vec<I> {
        self.diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }

    /// Reassemble the diagonal as a matrix of the input shape.
    pub fn diag_matrix(&self, rows: usize, cols: usize) -> Mat<I> {
        let mut m = Mat::zero(rows, cols);
        for (i, d) in self.diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }
}

struct Calc<I> {
    m: Mat<I>,
    left: Option<Mat<I>>,
    left_inv: Option<Mat<I>>,
    right: Option<Mat<I>>,
    right_inv: Option<Mat<I>>,
}

impl<I: Scalar> Calc<I> {
    fn new(m: Mat<I>, flags: SnfFlags) -> Self {
        let (r, c) = (m.nrows(), m.ncols());
        let tracked = |on: bool, n: usize| on.then(|| Mat::identity(n));
        Calc {
            m,
            left: tracked(flags[0], r),
            left_inv: tracked(flags[1], r),
            right: tracked(flags[2], c),
            right_inv: tracked(flags[3], c),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(left) = &mut self.left {
            left.swap_rows(a, b);
        }
        if let Some(left_inv) = &mut self.left_inv {
            left_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(right) = &mut self.right {
            right.swap_cols(a, b);
        }
        if let Some(right_inv) = &mut self.right_inv {
            right_inv.swap_rows(a, b);
        }
    }

    /// row[dst] += q * row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &I) {
        self.m.add_row_multiple(dst, src, q);
        if let Some(left) = &mut self.left {
            left.add_row_multiple(dst, src, q);
        }
        if let Some(left_inv) = &mut self.left_inv {
            left_inv.add_col_multiple(src, dst, &-q.clone());
        }
    }

    /// col[dst] += q * col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &I) {
        self.m.add_col_multiple(dst, src, q);
        if let Some(right) = &mut self.right {
            right.add_col_multiple(dst, src, q);
        }
        if let Some(right_inv) = &mut self.right_inv {
            right_inv.add_row_multiple(src, dst, &-q.clone());
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        if let Some(left) = &mut self.left {
            left.negate_row(i);
        }
        if let Some(left_inv) = &mut self.left_inv {
            left_inv.negate_col(i);
        }
    }

    /// Pivot with minimal absolute value in the trailing block, ties broken
    /// row-major. Deterministic.
    fn select_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.m.nrows() {
            for j in k..self.m.ncols() {
                let x = &self.m[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.m[b].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clear row and column `k` down to the pivot at `(k, k)`.
    fn eliminate_at(&mut self, k: usize) {
        loop {
            let mut clean = true;
            for i in k + 1..self.m.nrows() {
                if self.m[(i, k)].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&self.m[(i, k)], &self.m[(k, k)]);
                if !q.is_zero() {
                    self.row_op(i, k, &-q);
                }
                if !self.m[(i, k)].is_zero() {
                    // remainder is strictly smaller: promote it to the pivot
                    self.swap_rows(k, i);
                    clean = false;
                }
            }
            for j in k + 1..self.m.ncols() {
                if self.m[(k, j)].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&self.m[(k, j)], &self.m[(k, k)]);
                if !q.is_zero() {
                    self.col_op(j, k, &-q);
                }
                if !self.m[(k, j)].is_zero() {
                    self.swap_cols(k, j);
                    clean = false;
                }
            }
            if clean {
                return;
            }
        }
    }

    fn eliminate_all(&mut self) {
        let steps = self.m.nrows().min(self.m.ncols());
        for k in 0..steps {
            let Some((i, j)) = self.select_pivot(k) else {
                break;
            };
            self.swap_rows(k, i);
            self.swap_cols(k, j);
            self.eliminate_at(k);
        }
    }

    /// Enforce the divisibility chain on the nonzero diagonal.
    fn normalize_divisibility(&mut self) {
        let steps = self.m.nrows().min(self.m.ncols());
        let rank = (0..steps)
            .take_while(|&i| !self.m[(i, i)].is_zero())
            .count();
        if rank == 0 {
            return;
        }
        loop {
            let mut stable = true;
            for i in 0..rank - 1 {
                let a = self.m[(i, i)].clone();
                let b = self.m[(i + 1, i + 1)].clone();
                if b.is_multiple_of(&a) {
                    continue;
                }
                stable = false;
                // couple the two diagonal positions and re-reduce
                self.col_op(i, i + 1, &I::one());
                self.eliminate_at(i);
            }
            if stable {
                break;
            }
        }
    }

    fn normalize_signs(&mut self) {
        let steps = self.m.nrows().min(self.m.ncols());
        for i in 0..steps {
            if self.m[(i, i)].is_negative() {
                self.negate_row(i);
            }
        }
    }
}

/// Smith normal form with the full transform certificate.
pub fn smith_normal_form<I: Scalar>(input: &Mat<I>) -> SnfResult<I> {
    smith_normal_form_flags(input, SNF_ALL)
}

/// Smith normal form accumulating only the requested transforms.
pub fn smith_normal_form_flags<I: Scalar>(input: &Mat<I>, flags: SnfFlags) -> SnfResult<I> {
    let mut calc = Calc::new(input.clone(), flags);
    calc.eliminate_all();
    calc.normalize_divisibility();
    calc.normalize_signs();
    let steps = calc.m.nrows().min(calc.m.ncols());
    let diag: Vec<I> = (0..steps).map(|i| calc.m[(i, i)].clone()).collect();
    debug_assert!(match (&calc.left, &calc.right) {
        (Some(left), Some(right)) => {
            let mut expected = Mat::zero(input.nrows(), input.ncols());
            for (i, x) in diag.iter().enumerate() {
                expected[(i, i)] = x.clone();
            }
            left.mul(input).mul(right) == expected
        }
        _ => true,
    });
    SnfResult {
        diag,
        left: calc.left,
        left_inv: calc.left_inv,
        right: calc.right,
        right_inv: calc.right_inv,
    }
}

/// Quotient rounded to nearest, so the remainder has minimal magnitude.
fn nearest_quotient<I: Scalar>(a: &I, b: &I) -> I {
    let (q, r) = a.div_rem(b);
    let two = I::one() + I::one();
    if r.abs() * two > b.abs() {
        let bump = if r.is_negative() == b.is_negative() {
            I::one()
        } else {
            -I::one()
        };
        q + bump
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;
    use proptest::prelude::*;

    fn mat_i64(rows: Vec<Vec<i64>>) -> Mat<Int> {
        Mat::from_rows(rows).map(|x| Int::from(*x))
    }

    fn check_certificate<I: Scalar>(input: &Mat<I>, snf: &SnfResult<I>) {
        let left = snf.left.as_ref().expect("full certificate");
        let right = snf.right.as_ref().expect("full certificate");
        let product = left.mul(input).mul(right);
        assert_eq!(product, snf.diag_matrix(input.nrows(), input.ncols()));
        assert_eq!(
            left.mul(snf.left_inv.as_ref().expect("full")),
            Mat::identity(input.nrows())
        );
        assert_eq!(
            right.mul(snf.right_inv.as_ref().expect("full")),
            Mat::identity(input.ncols())
        );
        // divisibility chain and signs
        let nz: Vec<&I> = snf.diag.iter().filter(|d| !d.is_zero()).collect();
        for w in nz.windows(2) {
            assert!(w[1].is_multiple_of(w[0]));
        }
        for d in &snf.diag {
            assert!(!d.is_negative());
        }
        // zeros trail
        let first_zero = snf
            .diag
            .iter()
            .position(|d| d.is_zero())
            .unwrap_or(snf.diag.len());
        assert!(snf.diag[first_zero..].iter().all(|d| d.is_zero()));
    }

    #[test]
    fn identity_matrix() {
        let m: Mat<Int> = Mat::identity(3);
        let snf = smith_normal_form(&m);
        check_certificate(&m, &snf);
        assert_eq!(snf.diag, vec![Int::from(1); 3]);
        assert_eq!(snf.left, Some(Mat::identity(3)));
        assert_eq!(snf.right, Some(Mat::identity(3)));
    }

    #[test]
    fn zero_matrix() {
        let m: Mat<Int> = Mat::zero(2, 3);
        let snf = smith_normal_form(&m);
        check_certificate(&m, &snf);
        assert_eq!(snf.diag, vec![Int::from(0); 2]);
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        // hand elimination: a 1 pivot appears from gcd(2,3), the product is preserved
        let m = mat_i64(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        check_certificate(&m, &snf);
        assert_eq!(snf.diag, vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn known_invariant_factors() {
        let m = mat_i64(vec![
            vec![-20, -7, -27, 2, 29],
            vec![17, 8, 14, -4, -10],
            vec![13, 8, 10, -4, -6],
            vec![-9, -2, -14, 0, 16],
            vec![5, 0, 5, -1, -4],
        ]);
        let snf = smith_normal_form(&m);
        check_certificate(&m, &snf);
        assert_eq!(
            snf.diag,
            [1, 1, 1, 2, 60]
                .iter()
                .map(|&x| Int::from(x))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn transforms_are_unimodular() {
        let m = mat_i64(vec![vec![4, 6, 8], vec![2, 2, 2]]);
        let snf = smith_normal_form(&m);
        check_certificate(&m, &snf);
        assert!(snf.left.as_ref().unwrap().is_unimodular());
        assert!(snf.right.as_ref().unwrap().is_unimodular());
    }

    #[test]
    fn flag_selection_matches_full_run() {
        let m = mat_i64(vec![vec![6, 4, 2], vec![4, 0, 8], vec![2, 2, 2]]);
        let full = smith_normal_form(&m);
        let diag_only = smith_normal_form_flags(&m, SNF_DIAG_ONLY);
        let left_only = smith_normal_form_flags(&m, SNF_LEFT);
        assert_eq!(full.diag, diag_only.diag);
        assert_eq!(full.diag, left_only.diag);
        assert!(diag_only.left.is_none() && diag_only.right.is_none());
        assert_eq!(left_only.left, full.left);
        assert!(left_only.right.is_none());
    }

    proptest! {
        #[test]
        fn random_matrices_certify(rows in 1usize..5, cols in 1usize..5,
                                   vals in proptest::collection::vec(-9i64..=9, 16)) {
            let m: Mat<Int> = Mat::from_fn(rows, cols, |i, j| Int::from(vals[(i * cols + j) % vals.len()]));
            let snf = smith_normal_form(&m);
            check_certificate(&m, &snf);
        }

        // The generic routine must agree across scalar types.
        #[test]
        fn i64_and_bigint_agree(vals in proptest::collection::vec(-9i64..=9, 12)) {
            let a: Mat<i64> = Mat::from_fn(3, 4, |i, j| vals[i * 4 + j]);
            let b: Mat<Int> = a.map(|x| Int::from(*x));
            let sa = smith_normal_form(&a);
            let sb = smith_normal_form(&b);
            let lifted: Vec<Int> = sa.diag.iter().map(|&d| Int::from(d)).collect();
            prop_assert_eq!(lifted, sb.diag);
        }
    }
}
