//! Dense exact linear algebra over any `Field`: products, RREF, nullspace,
//! inversion, and linear solving. Sizes here are tiny (at most 70x35), so
//! simplicity and exactness win over sparsity tricks.

use crate::exact::Field;

pub type Matrix<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Matrix<F> {
    let n = a.len();
    let k = b.len();
    assert!(a.iter().all(|r| r.len() == k), "dimension mismatch");
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = F::zero();
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            acc = acc.add(&a[i][t].mul(&b[t][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &[Vec<F>], v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            let mut acc = F::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            acc
        })
        .collect()
}

pub fn transpose<F: Field>(a: &[Vec<F>]) -> Matrix<F> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// In-place reduced row echelon form; returns the pivot column indices in row
/// order. Pivot choice is the first nonzero entry scanning down each column,
/// which keeps the result deterministic.
pub fn rref<F: Field>(mat: &mut Matrix<F>) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].inv();
        for x in mat[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    if !mat[r][j].is_zero() {
                        let t = mat[r][j].mul(&f);
                        mat[i][j] = mat[i][j].sub(&t);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel {v : A v = 0}. One vector per free column, with
/// a 1 in the free coordinate: the standard RREF back-substitution basis.
pub fn nullspace<F: Field>(a: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = m[row][free].neg();
        }
        basis.push(v);
    }
    basis
}

pub fn invert<F: Field>(a: &[Vec<F>]) -> Option<Matrix<F>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "square matrix required");
    let mut aug: Matrix<F> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solve A x = b for square invertible A; None when A is singular or the
/// system is inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    assert_eq!(b.len(), n, "dimension mismatch");
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    let cols = if n == 0 { 0 } else { a[0].len() };
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column: inconsistent
    }
    if pivots.len() != cols {
        return None; // underdetermined; callers here need a unique solution
    }
    let mut x = vec![F::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}
