//! Dense linear algebra over `f64` and exact rationals.
//!
//! Matrices are row-major `Vec<Vec<T>>`. Stochastic matrices follow the
//! column convention `m[to][from]`.

use num_traits::{Num, Signed};

/// Scalars the solvers work over: `f64` and [`crate::Rational`].
pub trait Scalar: Clone + PartialOrd + Num + Signed {}

impl<T: Clone + PartialOrd + Num + Signed> Scalar for T {}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let inner = b.len();
    let m = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![T::zero(); m]; n];
    for (i, row) in a.iter().enumerate() {
        for (l, a_il) in row.iter().enumerate().take(inner) {
            if a_il.is_zero() {
                continue;
            }
            for (j, b_lj) in b[l].iter().enumerate() {
                if !b_lj.is_zero() {
                    out[i][j] = out[i][j].clone() + a_il.clone() * b_lj.clone();
                }
            }
        }
    }
    out
}

pub fn mat_vec<T: Scalar>(a: &Matrix<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

pub fn mat_pow<T: Scalar>(a: &Matrix<T>, mut k: usize) -> Matrix<T> {
    let mut result = identity(a.len());
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mat_mul(&base, &base);
        }
    }
    result
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
///
/// Returns `None` when `a` is singular.
pub fn solve<T: Scalar>(mut a: Matrix<T>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&r1, &r2| {
                a[r1][col]
                    .abs()
                    .partial_cmp(&a[r2][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].clone() / p.clone();
            let (upper, lower) = a.split_at_mut(row);
            for (t, pv) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                if !pv.is_zero() {
                    *t = t.clone() - factor.clone() * pv.clone();
                }
            }
            let delta = factor * b[col].clone();
            b[row] = b[row].clone() - delta;
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for j in row + 1..n {
            if !a[row][j].is_zero() {
                acc = acc - a[row][j].clone() * x[j].clone();
            }
        }
        x[row] = acc / a[row][row].clone();
    }
    Some(x)
}

/// Stationary vector of an irreducible column-stochastic block:
/// solves `(P - I) v = 0` with the last equation replaced by `sum(v) = 1`.
pub fn stationary_block<T: Scalar>(block: &Matrix<T>) -> Option<Vec<T>> {
    let n = block.len();
    if n == 0 {
        return None;
    }
    let mut a: Matrix<T> = block.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i].clone() - T::one();
    }
    a[n - 1] = vec![T::one(); n];
    let mut rhs = vec![T::zero(); n];
    rhs[n - 1] = T::one();
    solve(a, rhs)
}

/// Largest absolute component of `a v - v`.
pub fn residual_inf(a: &Matrix<f64>, v: &[f64]) -> f64 {
    mat_vec(a, v)
        .iter()
        .zip(v)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
