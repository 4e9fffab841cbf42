//! Real-linear solution spaces of Hermitian trace constraints.
//!
//! A Hermitian `d x d` matrix is coordinatized by `d^2` real numbers: the
//! diagonal entries first, then the (real, imaginary) parts of the strictly
//! upper entries in row-major order. A constraint matrix `T` imposes
//! `tr(A T) = 0`, which is two real-linear equations in that chart.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

use super::{c, cr, real_nullspace, CMatrix};

/// A real-linear basis of Hermitian solutions to a trace-constraint system.
#[derive(Debug, Clone)]
pub struct SolutionSpace {
    /// Basis elements, Hermitian, unit Frobenius norm, linearly independent
    /// over the reals.
    pub basis: Vec<CMatrix>,
    /// Side length of the matrices.
    pub ambient_dim: usize,
}

impl SolutionSpace {
    /// Real dimension of the solution space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Frobenius norm of the component of `m` orthogonal to the identity.
    pub fn off_identity_norm(m: &CMatrix) -> f64 {
        let d = m.nrows();
        let tr = m.trace();
        let mut proj = m.clone();
        for i in 0..d {
            proj[(i, i)] -= tr / cr(d as f64);
        }
        proj.norm()
    }

    /// Largest off-identity component over the basis elements.
    pub fn max_off_identity(&self) -> f64 {
        self.basis
            .iter()
            .map(Self::off_identity_norm)
            .fold(0.0, f64::max)
    }

    /// Residual of projecting `m` onto the span of the basis, in the real
    /// trace inner product. The basis is orthonormalized internally; the
    /// published basis elements are left untouched.
    pub fn projection_residual(&self, m: &CMatrix) -> f64 {
        let mut ortho: Vec<CMatrix> = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let mut w = b.clone();
            for _ in 0..2 {
                for q in &ortho {
                    let coeff: f64 = (q.adjoint() * &w).trace().re;
                    w -= q * cr(coeff);
                }
            }
            let n = w.norm();
            if n > 1e-12 {
                ortho.push(w / cr(n));
            }
        }
        let mut residual = m.clone();
        for q in &ortho {
            let coeff: f64 = (q.adjoint() * &residual).trace().re;
            residual -= q * cr(coeff);
        }
        residual.norm()
    }
}

/// Chart coordinates of a Hermitian matrix: diagonal, then (re, im) of the
/// strictly upper triangle in row-major order.
pub fn hermitian_to_chart(m: &CMatrix) -> DVector<f64> {
    let d = m.nrows();
    let mut coords = DVector::zeros(d * d);
    for i in 0..d {
        coords[i] = m[(i, i)].re;
    }
    let mut idx = d;
    for i in 0..d {
        for j in (i + 1)..d {
            coords[idx] = m[(i, j)].re;
            coords[idx + 1] = m[(i, j)].im;
            idx += 2;
        }
    }
    coords
}

/// Inverse of [`hermitian_to_chart`].
pub fn chart_to_hermitian(coords: &DVector<f64>, dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = cr(coords[i]);
    }
    let mut idx = dim;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let entry = c(coords[idx], coords[idx + 1]);
            m[(i, j)] = entry;
            m[(j, i)] = entry.conj();
            idx += 2;
        }
    }
    m
}

/// Two real constraint rows (real and imaginary part of `tr(A T) = 0`) in the
/// Hermitian chart, for one constraint matrix `T`.
fn constraint_rows(t: &CMatrix) -> (DVector<f64>, DVector<f64>) {
    let d = t.nrows();
    let n = d * d;
    let mut row_re = DVector::zeros(n);
    let mut row_im = DVector::zeros(n);
    // tr(A T) = sum_i A_ii T_ii
    //         + sum_{i<j} [ x_ij (T_ji + T_ij) + y_ij i (T_ji - T_ij) ]
    for i in 0..d {
        row_re[i] = t[(i, i)].re;
        row_im[i] = t[(i, i)].im;
    }
    let mut idx = d;
    for i in 0..d {
        for j in (i + 1)..d {
            let sum = t[(j, i)] + t[(i, j)];
            let diff = t[(j, i)] - t[(i, j)];
            row_re[idx] = sum.re;
            row_im[idx] = sum.im;
            // i * diff has real part -Im(diff) and imaginary part Re(diff)
            row_re[idx + 1] = -diff.im;
            row_im[idx + 1] = diff.re;
            idx += 2;
        }
    }
    (row_re, row_im)
}

/// Real-linear basis of `{A Hermitian : tr(A T) = 0 for every constraint T}`.
///
/// An empty constraint list returns the full `d^2`-dimensional Hermitian
/// space. Basis elements are normalized to unit Frobenius norm.
pub fn hermitian_solution_space(
    constraints: &[CMatrix],
    dim: usize,
    tol: f64,
) -> Result<SolutionSpace> {
    let n = dim * dim;
    for (k, t) in constraints.iter().enumerate() {
        if t.nrows() != dim || t.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "constraint {k} is {}x{}, expected {dim}x{dim}",
                t.nrows(),
                t.ncols()
            )));
        }
    }
    let coords = if constraints.is_empty() {
        (0..n)
            .map(|i| {
                let mut e = DVector::zeros(n);
                e[i] = 1.0;
                e
            })
            .collect::<Vec<_>>()
    } else {
        let mut rows = DMatrix::zeros(2 * constraints.len(), n);
        for (k, t) in constraints.iter().enumerate() {
            let (re, im) = constraint_rows(t);
            rows.row_mut(2 * k).copy_from(&re.transpose());
            rows.row_mut(2 * k + 1).copy_from(&im.transpose());
        }
        real_nullspace(&rows, tol)
    };
    let basis = coords
        .iter()
        .map(|v| {
            let m = chart_to_hermitian(v, dim);
            let norm = m.norm();
            m / cr(norm)
        })
        .collect();
    Ok(SolutionSpace {
        basis,
        ambient_dim: dim,
    })
}
