//! Exact dense linear algebra helpers, desk-scale only.

use num_traits::{One, Signed, Zero};

use crate::scalar::{rat_is_integral, Int, Rat};

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub(crate) fn int_det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&p| !a[p][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact division by the previous pivot
                debug_assert!((&num % &prev).is_zero());
                a[i][j] = num / &prev;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Exact inverse over the rationals; `None` when singular.
pub(crate) fn rat_inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let av = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &av;
                let iv = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - &iv;
            }
        }
    }
    Some(inv)
}

/// Inverse of an integer matrix with determinant `+-1`; the result is again
/// integral.
pub(crate) fn unimodular_inverse(m: &[Vec<Int>]) -> Option<Vec<Vec<Int>>> {
    let det = int_det(m);
    if !det.abs().is_one() {
        return None;
    }
    let rat: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|v| Rat::from(v.clone())).collect())
        .collect();
    let inv = rat_inverse(&rat)?;
    let mut out = Vec::with_capacity(m.len());
    for row in inv {
        let mut irow = Vec::with_capacity(row.len());
        for v in row {
            debug_assert!(rat_is_integral(&v));
            irow.push(v.to_integer());
        }
        out.push(irow);
    }
    Some(out)
}

pub(crate) fn int_mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    debug_assert!(a.iter().all(|r| r.len() == k));
    let mut out = vec![vec![Int::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let prod = &a[i][l] * &b[l][j];
                out[i][j] += prod;
            }
        }
    }
    out
}

/// `m * v` for a rational matrix and column vector.
pub(crate) fn rat_mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}
