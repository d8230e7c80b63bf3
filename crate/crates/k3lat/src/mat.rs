//! Dense integer matrices with exact arithmetic, Smith normal form with
//! full transform tracking, and the handful of rational solvers the lattice
//! layer needs. Everything here is deterministic: pivots are chosen by
//! minimal absolute value with lexicographic tie-breaking.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix over arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl core::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        debug_assert!(rows.iter().all(|row| row.len() == c));
        IntMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMat::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul_vec_rational(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from(self.at(i, j).clone()) * &v[j])
                    .sum()
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self.at(i, j).is_one() } else { self.at(i, j).is_zero() }
                })
            })
    }

    /// Block-diagonal juxtaposition.
    pub fn direct_sum(&self, other: &IntMat) -> IntMat {
        let mut out = IntMat::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.at_mut(self.rows + i, self.cols + j) = other.at(i, j).clone();
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> IntMat {
        let mut out = self.clone();
        for x in &mut out.data {
            *x *= k;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    /// row[i] += q * row[j]
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        debug_assert_ne!(i, j);
        for k in 0..self.cols {
            let add = self.at(j, k) * q;
            *self.at_mut(i, k) += add;
        }
    }

    /// col[i] += q * col[j]
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        debug_assert_ne!(i, j);
        for k in 0..self.rows {
            let add = self.at(k, j) * q;
            *self.at_mut(k, i) += add;
        }
    }
}

/// Smith normal form `left * a * right = diag(d)` with unimodular transforms
/// and their inverses. Invariant factors are non-negative and form a
/// divisibility chain `d[i] | d[i+1]`; zeros come last.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: Vec<BigInt>,
    pub left: IntMat,
    pub right: IntMat,
    pub left_inv: IntMat,
    pub right_inv: IntMat,
    /// Determinant signs of `left` and `right` (each is +1 or -1).
    pub left_det: i8,
    pub right_det: i8,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }

    /// Product of the nonzero invariant factors (1 for the empty product).
    pub fn nonzero_product(&self) -> BigInt {
        self.d.iter().filter(|x| !x.is_zero()).product()
    }
}

struct SnfState {
    work: IntMat,
    left: IntMat,
    right: IntMat,
    left_inv: IntMat,
    right_inv: IntMat,
    left_det: i8,
    right_det: i8,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.work.swap_rows(a, b);
        self.left.swap_rows(a, b);
        self.left_inv.swap_cols(a, b);
        self.left_det = -self.left_det;
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.work.swap_cols(a, b);
        self.right.swap_cols(a, b);
        self.right_inv.swap_rows(a, b);
        self.right_det = -self.right_det;
    }

    fn negate_row(&mut self, i: usize) {
        self.work.negate_row(i);
        self.left.negate_row(i);
        self.left_inv.negate_col(i);
        self.left_det = -self.left_det;
    }

    // work.row[i] += q * work.row[j]
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        self.work.add_row(i, j, q);
        self.left.add_row(i, j, q);
        let neg = -q;
        self.left_inv.add_col(j, i, &neg);
    }

    // work.col[i] += q * work.col[j]
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        self.work.add_col(i, j, q);
        self.right.add_col(i, j, q);
        let neg = -q;
        self.right_inv.add_row(j, i, &neg);
    }

    /// Minimal-|value| nonzero entry of the trailing submatrix, ties broken
    /// by (row, col).
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = BigInt::zero();
        for i in t..self.work.rows() {
            for j in t..self.work.cols() {
                let v = self.work.at(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.is_none() || a < best_abs {
                    best = Some((i, j));
                    best_abs = a;
                }
            }
        }
        best
    }
}

/// Smith normal form of an arbitrary integer matrix. Empty matrices yield
/// empty `d`. Elementary row/column operations only; deterministic.
pub fn snf(a: &IntMat) -> Snf {
    let (r, c) = (a.rows(), a.cols());
    let mut st = SnfState {
        work: a.clone(),
        left: IntMat::identity(r),
        right: IntMat::identity(c),
        left_inv: IntMat::identity(r),
        right_inv: IntMat::identity(c),
        left_det: 1,
        right_det: 1,
    };
    let k = r.min(c);
    for t in 0..k {
        'pivot: loop {
            let Some((pi, pj)) = st.find_pivot(t) else {
                break; // trailing submatrix is zero
            };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            // reduce column t
            for i in t + 1..r {
                if !st.work.at(i, t).is_zero() {
                    let q = -st.work.at(i, t).div_floor(st.work.at(t, t));
                    st.add_row(i, t, &q);
                    if !st.work.at(i, t).is_zero() {
                        // remainder is strictly smaller; restart with it as pivot
                        continue 'pivot;
                    }
                }
            }
            // reduce row t
            for j in t + 1..c {
                if !st.work.at(t, j).is_zero() {
                    let q = -st.work.at(t, j).div_floor(st.work.at(t, t));
                    st.add_col(j, t, &q);
                    if !st.work.at(t, j).is_zero() {
                        continue 'pivot;
                    }
                }
            }
            // pivot must divide the rest of the submatrix
            for i in t + 1..r {
                for j in t + 1..c {
                    if !st.work.at(i, j).mod_floor(st.work.at(t, t)).is_zero() {
                        st.add_row(t, i, &BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if st.work.at(t, t).is_negative() {
            st.negate_row(t);
        }
        if st.work.at(t, t).is_zero() {
            break; // all remaining invariant factors vanish
        }
    }
    let d = (0..k).map(|t| st.work.at(t, t).clone()).collect();
    Snf {
        d,
        left: st.left,
        right: st.right,
        left_inv: st.left_inv,
        right_inv: st.right_inv,
        left_det: st.left_det,
        right_det: st.right_det,
    }
}

/// Signed determinant of a square matrix, via SNF and transform signs.
pub fn det(a: &IntMat) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    if a.rows() == 0 {
        return BigInt::one();
    }
    let s = snf(a);
    let prod: BigInt = s.d.iter().product();
    prod * BigInt::from(s.left_det as i64 * s.right_det as i64)
}

/// Rank over the rationals.
pub fn rank(a: &IntMat) -> usize {
    snf(a).rank()
}

/// Saturated basis of the integer kernel `{x : a·x = 0}`, as columns.
/// The kernel of an integer matrix is a primitive sublattice of Z^cols.
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<BigInt>> {
    let s = snf(a);
    let rk = s.rank();
    (rk..a.cols()).map(|j| s.right.col(j)).collect()
}

/// Solve `a·x = b` over the integers. Returns `None` when no integral
/// solution exists.
pub fn solve_integer(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let s = snf(a);
    let lb = s.left.mul_vec(b);
    let k = s.d.len();
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < k && !s.d[i].is_zero() {
            let (q, r) = lb[i].div_rem(&s.d[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !lb[i].is_zero() {
            return None;
        }
    }
    Some(s.right.mul_vec(&y))
}

/// Solve `a·x = b` over the rationals (b rational). `None` if inconsistent.
pub fn solve_rational(a: &IntMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    let s = snf(a);
    // left * a * right = D, so with y = right^{-1} x: D y = left b.
    let lb: Vec<BigRational> = (0..a.rows())
        .map(|i| {
            (0..a.rows())
                .map(|j| BigRational::from(s.left.at(i, j).clone()) * &b[j])
                .sum()
        })
        .collect();
    let k = s.d.len();
    let mut y = vec![BigRational::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < k && !s.d[i].is_zero() {
            y[i] = &lb[i] / BigRational::from(s.d[i].clone());
        } else if !lb[i].is_zero() {
            return None;
        }
    }
    Some(
        (0..a.cols())
            .map(|i| {
                (0..a.cols())
                    .map(|j| BigRational::from(s.right.at(i, j).clone()) * &y[j])
                    .sum()
            })
            .collect(),
    )
}

/// Signature (positive, negative, zero inertia) of a symmetric matrix,
/// by exact symmetric diagonalisation over the rationals.
pub fn signature(a: &IntMat) -> (usize, usize, usize) {
    assert!(a.is_symmetric(), "signature of a non-symmetric matrix");
    let n = a.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from(a.at(i, j).clone())).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    for t in 0..n {
        if m[t][t].is_zero() {
            // pull a nonzero diagonal entry up, or manufacture one
            if let Some(j) = (t + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(t, j);
                for row in m.iter_mut() {
                    row.swap(t, j);
                }
            } else if let Some(j) = (t + 1..n).find(|&j| !m[t][j].is_zero()) {
                // rows t and j pair nontrivially: add row/col j to row/col t
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[t][k] += v;
                }
                for row in m.iter_mut() {
                    let v = row[j].clone();
                    row[t] += v;
                }
            }
        }
        let pivot = m[t][t].clone();
        if pivot.is_zero() {
            zero += 1;
            continue;
        }
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in t + 1..n {
            if m[i][t].is_zero() {
                continue;
            }
            let f = &m[i][t] / &pivot;
            for k in 0..n {
                let sub = &f * &m[t][k];
                m[i][k] -= sub;
            }
            for row in m.iter_mut() {
                let sub = &f * &row[t];
                row[i] -= sub;
            }
        }
    }
    (pos, neg, zero)
}

/// gcd of a slice, non-negative; 0 for the empty slice or all zeros.
pub fn gcd_all(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}
