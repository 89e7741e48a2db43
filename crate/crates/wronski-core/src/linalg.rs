//! Elimination-based linear algebra and a symmetric eigensolver wrapper.

use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

const FLOAT_PIVOT_TOL: f64 = 1e-12;

fn pick_pivot<F: Scalar>(m: &Matrix<F>, col: usize, from: usize, scale: f64) -> Option<usize> {
    if F::EXACT {
        (from..m.rows()).find(|&r| !m[(r, col)].is_zero())
    } else {
        let best = (from..m.rows()).max_by(|&a, &b| {
            m[(a, col)].to_f64().abs().total_cmp(&m[(b, col)].to_f64().abs())
        })?;
        (m[(best, col)].to_f64().abs() > FLOAT_PIVOT_TOL * scale).then_some(best)
    }
}

fn swap_rows<F: Scalar>(m: &mut Matrix<F>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

/// Reduce to row echelon form in place; returns pivot columns.
pub fn row_echelon<F: Scalar>(m: &mut Matrix<F>) -> Vec<usize> {
    let scale = m.max_abs().max(1.0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = pick_pivot(m, c, r, scale) else { continue };
        swap_rows(m, r, p);
        let piv = m[(r, c)].clone();
        for i in r + 1..m.rows() {
            if m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].div_ref(&piv);
            for j in c..m.cols() {
                let v = m[(r, j)].mul_ref(&f);
                m[(i, j)].sub_assign_ref(&v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Scalar>(m: &Matrix<F>) -> usize {
    let mut w = m.clone();
    row_echelon(&mut w).len()
}

pub fn determinant<F: Scalar>(m: &Matrix<F>) -> F {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut w = m.clone();
    let mut det = F::one();
    for c in 0..n {
        let p = if F::EXACT {
            (c..n).find(|&r| !w[(r, c)].is_zero())
        } else {
            (c..n).max_by(|&a, &b| w[(a, c)].to_f64().abs().total_cmp(&w[(b, c)].to_f64().abs()))
        };
        let Some(p) = p else { return F::zero() };
        if w[(p, c)].is_zero() {
            return F::zero();
        }
        if p != c {
            swap_rows(&mut w, p, c);
            det = -det;
        }
        let piv = w[(c, c)].clone();
        det = det.mul_ref(&piv);
        for i in c + 1..n {
            if w[(i, c)].is_zero() {
                continue;
            }
            let f = w[(i, c)].div_ref(&piv);
            for j in c..n {
                let v = w[(c, j)].mul_ref(&f);
                w[(i, j)].sub_assign_ref(&v);
            }
        }
    }
    det
}

/// Characteristic polynomial `det(x I - m)` by the Faddeev–LeVerrier recursion,
/// returned in ascending degree.
pub fn charpoly<F: Scalar>(m: &Matrix<F>) -> Vec<F> {
    let n = m.rows();
    let mut coeffs = alloc::vec![F::zero(); n + 1];
    coeffs[n] = F::one();
    let mut mk = Matrix::<F>::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            next[(i, i)].add_assign_ref(&coeffs[n - k + 1]);
        }
        mk = next;
        let tr = m.mul(&mk).trace();
        coeffs[n - k] = -(tr.div_ref(&F::from_usize(k)));
    }
    coeffs
}

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors as columns.
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix<f64>,
}

/// Eigendecomposition of the symmetric part of `m`.
pub fn symmetric_eigen(m: &Matrix<f64>) -> SymmetricEigen {
    let n = m.rows();
    let sym = nalgebra::DMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    SymmetricEigen { values, vectors }
}
