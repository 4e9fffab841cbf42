//! Operator-space indistinguishability certificates.
//!
//! For a globally orthogonal pure/product set, any first measurement on the
//! chosen side that keeps the states distinguishable must satisfy
//! `tr(E T_hk) = 0` for every pair, where `E` is the (Hermitian) measurement
//! operator and `T_hk` is the cross term `|psi_k><psi_h|` partially traced
//! over the other side. If the real-linear solution space of that system is
//! spanned by the identity alone, no nontrivial orthogonality-preserving
//! measurement exists on that side, so the set is one-way indistinguishable
//! with that side going first.

use serde::Serialize;

use crate::error::Result;
use crate::numerics::{hermitian_solution_space, hermitian_to_chart, CMatrix, SolutionSpace};
use crate::states::{require_orthogonal, StateSet};
use crate::Side;

/// Solution space plus the triviality conclusion.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorSpaceReport {
    pub side: Side,
    /// Real dimension of the Hermitian solution space.
    pub dimension: usize,
    /// True iff the space is one-dimensional and spanned by the identity.
    pub trivial: bool,
    /// Largest Frobenius norm of a basis element's component orthogonal to
    /// the identity (small iff every solution is proportional to identity).
    pub identity_residual: f64,
    /// Residual of projecting the identity onto the solution span; the
    /// identity is always a solution for orthogonal sets, so this must be
    /// numerically zero.
    pub identity_projection_residual: f64,
    /// Number of constraint matrices in the stacked system.
    pub constraint_count: usize,
    /// Solution basis in the real Hermitian chart (diagonal entries, then
    /// (re, im) of the strictly upper triangle, row-major).
    pub basis_chart: Vec<Vec<f64>>,
    #[serde(skip)]
    pub space: SolutionSpace,
}

/// Build the orthogonality-preservation constraint matrices for `side`:
/// the partial trace of `|psi_k><psi_h|` over the other side, for all
/// unordered pairs `h < k`.
pub fn constraint_matrices(set: &StateSet, side: Side) -> Result<Vec<CMatrix>> {
    let coeffs = set.coeffs()?;
    let n = coeffs.len();
    let mut constraints = Vec::with_capacity(n * (n - 1) / 2);
    for h in 0..n {
        for k in (h + 1)..n {
            let t = match side {
                // (Tr_B |psi_k><psi_h|)_{ij} = (C_k C_h^H)_{ij}
                Side::Alice => &coeffs[k] * coeffs[h].adjoint(),
                // (Tr_A |psi_k><psi_h|)_{pq} = (C_k^T conj(C_h))_{pq}
                Side::Bob => coeffs[k].transpose() * coeffs[h].conjugate(),
            };
            constraints.push(t);
        }
    }
    Ok(constraints)
}

/// Compute the Hermitian solution space of the orthogonality-preservation
/// system on `side` and test it for triviality.
pub fn op_operator_space(set: &StateSet, side: Side, tol: f64) -> Result<OperatorSpaceReport> {
    require_orthogonal(set, tol)?;
    let constraints = constraint_matrices(set, side)?;
    let dim = set.dim(side);
    let space = hermitian_solution_space(&constraints, dim, tol)?;
    let identity = CMatrix::identity(dim, dim);
    let identity_projection_residual = space.projection_residual(&identity);
    let identity_residual = space.max_off_identity();
    let trivial = space.dim() == 1 && identity_residual < 1e-8;
    Ok(OperatorSpaceReport {
        side,
        dimension: space.dim(),
        trivial,
        identity_residual,
        identity_projection_residual,
        constraint_count: constraints.len(),
        basis_chart: space
            .basis
            .iter()
            .map(|m| hermitian_to_chart(m).iter().copied().collect())
            .collect(),
        space,
    })
}
