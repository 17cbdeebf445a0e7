//! Small dense/sparse linear algebra at working precision.

use nalgebra::DMatrix;

use crate::scalar::Scalar;

/// One Jacobian row as (column, value) pairs with distinct columns.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Adds `v` to column `c` of a sparse row, merging repeated columns.
pub(crate) fn push_entry(row: &mut SparseRow, c: usize, v: Scalar) {
    if let Some(e) = row.iter_mut().find(|e| e.0 == c) {
        e.1 += v;
    } else {
        row.push((c, v));
    }
}

/// Lower triangle of `JᵀJ` and the gradient `Jᵀr`.
pub fn normal_equations(
    rows: &[SparseRow],
    r: &[Scalar],
    ncols: usize,
) -> (Vec<Vec<Scalar>>, Vec<Scalar>) {
    let mut a: Vec<Vec<Scalar>> = (0..ncols).map(|i| vec![Scalar::zero(); i + 1]).collect();
    let mut g = vec![Scalar::zero(); ncols];
    for (row, ri) in rows.iter().zip(r) {
        for (i, vi) in row {
            g[*i] += vi * ri;
            for (j, vj) in row {
                if j <= i {
                    a[*i][*j] += vi * vj;
                }
            }
        }
    }
    (a, g)
}

/// Solves `(A + λ·diag(A)) x = b` for symmetric positive definite `A` given
/// by its lower triangle. Returns `None` if the factorization breaks down.
#[allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]
pub fn damped_cholesky_solve(
    a: &[Vec<Scalar>],
    lambda: &Scalar,
    b: &[Scalar],
) -> Option<Vec<Scalar>> {
    let n = b.len();
    let mut l: Vec<Vec<Scalar>> = a.to_vec();
    for i in 0..n {
        let d = l[i][i].clone();
        l[i][i] = &d + &(&d * lambda);
    }
    for j in 0..n {
        let mut d = l[j][j].clone();
        for k in 0..j {
            d -= &l[j][k].square();
        }
        if !(d > 0.0) {
            return None;
        }
        let d = d.sqrt();
        for i in j + 1..n {
            let mut s = l[i][j].clone();
            for k in 0..j {
                s -= &(&l[i][k] * &l[j][k]);
            }
            l[i][j] = s / &d;
        }
        l[j][j] = d;
    }
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            let t = &l[i][k] * &y[k];
            y[i] -= &t;
        }
        y[i] = &y[i] / &l[i][i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let t = &l[k][i] * &y[k];
            y[i] -= &t;
        }
        y[i] = &y[i] / &l[i][i];
    }
    Some(y)
}

/// Singular values of the sparse matrix, descending (double precision).
pub fn singular_values(rows: &[SparseRow], ncols: usize) -> Vec<f64> {
    let mut m = DMatrix::<f64>::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row {
            m[(i, *j)] = v.to_f64();
        }
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn max_abs(v: &[Scalar]) -> Scalar {
    v.iter().fold(Scalar::zero(), |m, x| m.max(x.abs()))
}

pub fn sum_squares(v: &[Scalar]) -> Scalar {
    v.iter().map(Scalar::square).sum()
}
