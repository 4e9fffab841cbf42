//! Numerical basis search over the unitary group of the measuring side.
//!
//! Minimizes the residual objective
//! `F(U) = sum_j sum_{h<k} |<eta_j^h | eta_j^k>|^2`
//! where the `eta` rows are taken in the basis formed by the columns of `U`.
//! A small best value only ever *suggests* a basis: the candidate is
//! re-verified entry by entry before a `Distinguishable` outcome is
//! returned, and a large best value is reported as evidence, never as an
//! indistinguishability claim.

use num_complex::Complex64;

use crate::error::Result;
use crate::numerics::{minimize, unitary_from_params, CMatrix};
use crate::states::{require_orthogonal, StateSet};
use crate::Side;

use super::{verify_pure_basis, MeasurementBasis};

/// Best objective value below which a candidate basis is re-verified.
pub const OPTIMIZER_FTOL: f64 = 1e-10;

/// Outcome of the numerical search.
#[derive(Debug, Clone)]
pub enum OptimizerOutcome {
    Distinguishable {
        basis: MeasurementBasis,
        best_value: f64,
    },
    Undetermined {
        best_value: f64,
    },
}

/// Residual objective for a fixed unitary (columns = basis vectors).
pub fn residual_objective(coeffs: &[CMatrix], side: Side, u: &CMatrix) -> f64 {
    let d = u.nrows();
    // Row j of each transformed matrix is eta_j in the rotated basis.
    let rows: Vec<CMatrix> = coeffs
        .iter()
        .map(|c| match side {
            Side::Alice => u.adjoint() * c,
            Side::Bob => (c * u.conjugate()).transpose(),
        })
        .collect();
    let n = rows.len();
    let mut f = 0.0;
    for j in 0..d {
        for h in 0..n {
            for k in (h + 1)..n {
                let mut overlap = Complex64::default();
                for m in 0..rows[h].ncols() {
                    overlap += rows[h][(j, m)].conj() * rows[k][(j, m)];
                }
                f += overlap.norm_sqr();
            }
        }
    }
    f
}

/// Seeded multi-start search for a verifying basis on `side`.
pub fn optimizer_search(
    set: &StateSet,
    side: Side,
    restarts: usize,
    seed: u64,
    tol: f64,
) -> Result<OptimizerOutcome> {
    require_orthogonal(set, tol)?;
    let coeffs = set.coeffs()?;
    let d = set.dim(side);
    let (params, best_value) = minimize(
        |p| {
            let u = unitary_from_params(p).expect("well-formed params");
            residual_objective(&coeffs, side, &u)
        },
        d,
        restarts,
        seed,
    );
    if best_value < OPTIMIZER_FTOL {
        let u = unitary_from_params(&params)?;
        let basis = MeasurementBasis::from_columns(side, &u)?;
        let (ok, _table) = verify_pure_basis(set, &basis, tol)?;
        if ok {
            return Ok(OptimizerOutcome::Distinguishable { basis, best_value });
        }
    }
    Ok(OptimizerOutcome::Undetermined { best_value })
}
