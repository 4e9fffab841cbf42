//! Deterministic dense complex linear algebra: orthonormalization, nullspaces,
//! Hermitian constraint solving, a unitary-group chart and a multi-start
//! derivative-free minimizer.
//!
//! Everything here is double precision. Rank decisions go through singular
//! values with a relative threshold `tol * sigma_max`.

mod hermitian;
mod minimize;
mod unitary;

pub use hermitian::{hermitian_solution_space, hermitian_to_chart, chart_to_hermitian, SolutionSpace};
pub use minimize::minimize;
pub use unitary::{unitary_from_params, UnitaryParams};

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex column vector (a ket in the computational basis).
pub type CVector = DVector<Complex64>;
/// Row-major complex matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Shorthand complex constructor.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real number as a complex scalar.
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Inner product `<x|y>`, conjugate-linear in the first argument.
pub fn inner(x: &CVector, y: &CVector) -> Complex64 {
    x.dotc(y)
}

/// Computational basis vector `|k>` in dimension `dim`.
pub fn basis_vector(dim: usize, k: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[k] = cr(1.0);
    v
}

/// Modified Gram-Schmidt orthonormalization with one re-orthogonalization
/// pass. Input vectors whose residual norm falls below `tol` are dropped;
/// the output order follows the input order of the surviving vectors.
pub fn gram_schmidt(vectors: &[CVector], tol: f64) -> Result<Vec<CVector>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let dim = first.len();
    let mut basis: Vec<CVector> = Vec::new();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "gram_schmidt: expected dim {dim}, got {}",
                v.len()
            )));
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let coeff = b.dotc(&w);
                w -= b * coeff;
            }
        }
        let n = w.norm();
        if n >= tol {
            basis.push(w / cr(n));
        }
    }
    Ok(basis)
}

/// Orthonormal basis of the right nullspace of `rows`. Singular values below
/// `tol * sigma_max` are treated as zero.
pub fn nullspace(rows: &CMatrix, tol: f64) -> Vec<CVector> {
    nullspace_of(rows, tol)
}

/// Rank of a complex matrix at relative threshold `tol * sigma_max`.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    let sv = m.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s >= tol * smax).count()
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` inside
/// `C^dim`. An empty input yields the computational basis.
pub fn orthocomplement(vectors: &[CVector], dim: usize, tol: f64) -> Vec<CVector> {
    if vectors.is_empty() {
        return (0..dim).map(|k| basis_vector(dim, k)).collect();
    }
    // Rows <v_s| so that the nullspace is exactly {w : <v_s|w> = 0}.
    let mut rows = CMatrix::zeros(vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        for j in 0..dim {
            rows[(i, j)] = v[j].conj();
        }
    }
    nullspace(&rows, tol)
}

/// Generic SVD-based nullspace; padding to square exposes the full right
/// factor even for wide matrices.
fn nullspace_of<T>(rows: &DMatrix<T>, tol: f64) -> Vec<DVector<T>>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let (m, n) = rows.shape();
    let k = m.max(n);
    let mut padded: DMatrix<T> = DMatrix::zeros(k, n);
    padded.view_mut((0, 0), (m, n)).copy_from(rows);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("svd requested v_t");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let cutoff = if smax > 0.0 { tol * smax } else { f64::INFINITY };
    let mut basis = Vec::new();
    for i in 0..vt.nrows() {
        let sv = svd.singular_values.get(i).copied().unwrap_or(0.0);
        if sv < cutoff {
            basis.push(vt.row(i).map(|x| x.conjugate()).transpose());
        }
    }
    basis
}

pub(crate) fn real_nullspace(rows: &DMatrix<f64>, tol: f64) -> Vec<DVector<f64>> {
    nullspace_of(rows, tol)
}

/// Max absolute entry of `m^H m - I`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let d = m.ncols();
    let gram = m.adjoint() * m;
    let mut defect = 0.0_f64;
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { cr(1.0) } else { cr(0.0) };
            defect = defect.max((gram[(i, j)] - target).norm());
        }
    }
    defect
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(entries: &[(f64, f64)]) -> CVector {
        CVector::from_iterator(entries.len(), entries.iter().map(|&(re, im)| c(re, im)))
    }

    #[test]
    fn gram_schmidt_independent_pair() {
        let s = 1.0 / 2.0_f64.sqrt();
        let input = vec![v(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]), v(&[(s, 0.0), (s, 0.0), (0.0, 0.0)])];
        let out = gram_schmidt(&input, 1e-9).unwrap();
        assert_eq!(out.len(), 2);
        assert!((out[0][0].re - 1.0).abs() < 1e-12);
        assert!((out[1][1].norm() - 1.0).abs() < 1e-12);
        assert!(out[1][0].norm() < 1e-12);
    }

    #[test]
    fn gram_schmidt_drops_collinear() {
        let input = vec![v(&[(1.0, 0.0), (0.0, 0.0)]), v(&[(2.0, 0.0), (0.0, 0.0)])];
        let out = gram_schmidt(&input, 1e-9).unwrap();
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn gram_schmidt_three_product_parts() {
        // Alice parts |0>, |a1>, |a2> with <a1|a2> != 0: the orthonormalized
        // third vector is proportional to a2 minus its projection on a1.
        let a1 = v(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let a2 = v(&[(0.0, 0.0), (0.6, 0.0), (0.8, 0.0)]);
        let input = vec![v(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]), a1.clone(), a2.clone()];
        let out = gram_schmidt(&input, 1e-9).unwrap();
        assert_eq!(out.len(), 3);
        let alpha = inner(&a1, &a2);
        let expected = (&a2 - &a1 * alpha).normalize();
        let agree = inner(&expected, &out[2]).norm();
        assert!((agree - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gram_schmidt_rejects_dim_mismatch() {
        let input = vec![v(&[(1.0, 0.0)]), v(&[(1.0, 0.0), (0.0, 0.0)])];
        assert!(gram_schmidt(&input, 1e-9).is_err());
    }

    #[test]
    fn nullspace_identity_is_empty() {
        let id = CMatrix::identity(3, 3);
        assert!(nullspace(&id, 1e-9).is_empty());
    }

    #[test]
    fn nullspace_zero_matrix_is_full() {
        let z = CMatrix::zeros(2, 3);
        let ns = nullspace(&z, 1e-9);
        assert_eq!(ns.len(), 3);
        for (i, x) in ns.iter().enumerate() {
            assert!((x.norm() - 1.0).abs() < 1e-12);
            for y in ns.iter().skip(i + 1) {
                assert!(inner(x, y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn nullspace_single_row() {
        let mut rows = CMatrix::zeros(1, 3);
        rows[(0, 0)] = cr(1.0);
        rows[(0, 1)] = cr(1.0);
        let ns = nullspace(&rows, 1e-9);
        assert_eq!(ns.len(), 2);
        let r = v(&[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        for x in &ns {
            assert!(inner(&r, x).norm() < 1e-12);
        }
    }

    #[test]
    fn rank_and_nullspace_dims_sum_to_ambient() {
        let m = CMatrix::from_row_slice(
            2,
            4,
            &[
                c(1.0, 0.0),
                c(0.0, 1.0),
                c(2.0, 0.0),
                c(0.0, 0.0),
                c(0.5, 0.0),
                c(0.0, 0.5),
                c(1.0, 0.0),
                c(0.0, 0.0),
            ],
        );
        assert_eq!(rank(&m, 1e-9) + nullspace(&m, 1e-9).len(), 4);
    }

    proptest! {
        #[test]
        fn gram_schmidt_output_orthonormal(seed in 0u64..500) {
            use rand::{RngExt, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let dim = 4;
            let n = 1 + (seed as usize % 4);
            let vectors: Vec<CVector> = (0..n)
                .map(|_| {
                    CVector::from_iterator(dim, (0..dim).map(|_| {
                        c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    }))
                })
                .collect();
            let out = gram_schmidt(&vectors, 1e-9).unwrap();
            for (i, x) in out.iter().enumerate() {
                prop_assert!((x.norm() - 1.0).abs() < 1e-10);
                for y in out.iter().skip(i + 1) {
                    prop_assert!(inner(x, y).norm() < 1e-10);
                }
            }
        }
    }
}
