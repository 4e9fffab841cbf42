//! Pair-measurement conditions on a single side.
//!
//! A measurement `{E_k}` keeps two orthogonal kets `|psi>`, `|phi>`
//! distinguishable iff every cross term `<psi|E_k|phi>` vanishes. For
//! rank-one projective measurements in `C^3` this is equivalent to one of
//! the two kets being a basis member, which the second operation checks and
//! cross-validates.

use crate::error::{Error, Result};
use crate::numerics::{CMatrix, CVector};

use super::MeasurementBasis;

/// Check `|<psi|E_k|phi>| < tol` for every element of a POVM.
///
/// The elements must be Hermitian, positive semidefinite (smallest
/// eigenvalue above `-tol`) and sum to the identity within `tol`.
pub fn pair_measurement_check(
    psi: &CVector,
    phi: &CVector,
    povm: &[CMatrix],
    tol: f64,
) -> Result<bool> {
    let d = psi.len();
    if phi.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "kets of dimension {d} and {}",
            phi.len()
        )));
    }
    if povm.is_empty() {
        return Err(Error::InvalidPovm("empty element list".into()));
    }
    let mut sum = CMatrix::zeros(d, d);
    for (k, e) in povm.iter().enumerate() {
        if e.nrows() != d || e.ncols() != d {
            return Err(Error::InvalidPovm(format!(
                "element {k} is {}x{}, expected {d}x{d}",
                e.nrows(),
                e.ncols()
            )));
        }
        let herm_dev = (e - e.adjoint()).norm();
        if herm_dev > tol.max(1e-12) {
            return Err(Error::InvalidPovm(format!(
                "element {k} not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let min_eig = e
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -tol {
            return Err(Error::InvalidPovm(format!(
                "element {k} has negative eigenvalue {min_eig:.3e}"
            )));
        }
        sum += e;
    }
    let completeness = (&sum - CMatrix::identity(d, d)).norm();
    if completeness > tol.max(1e-9) {
        return Err(Error::InvalidPovm(format!(
            "elements sum to identity only within {completeness:.3e}"
        )));
    }
    Ok(povm
        .iter()
        .all(|e| psi.dotc(&(e * phi)).norm() < tol))
}

/// For a rank-one projective measurement in `C^3` and an orthogonal ket
/// pair: the measurement distinguishes the pair iff one of the kets is a
/// basis member (up to global phase). Returns the membership result after
/// cross-checking it against [`pair_measurement_check`] on the projector
/// POVM; a disagreement is an internal error.
pub fn c3_pair_rank1(
    basis: &MeasurementBasis,
    psi: &CVector,
    phi: &CVector,
    tol: f64,
) -> Result<bool> {
    if basis.dim() != 3 || psi.len() != 3 || phi.len() != 3 {
        return Err(Error::DimensionMismatch(
            "rank-one pair test is specific to C^3".into(),
        ));
    }
    let pair_overlap = psi.dotc(phi).norm();
    if pair_overlap >= tol {
        return Err(Error::NonOrthogonalPair(pair_overlap));
    }
    let member = basis.vectors().iter().any(|v| {
        v.dotc(psi).norm() > 1.0 - tol || v.dotc(phi).norm() > 1.0 - tol
    });
    let projectors: Vec<CMatrix> = basis.vectors().iter().map(|v| v * v.adjoint()).collect();
    let check = pair_measurement_check(psi, phi, &projectors, tol)?;
    if member != check {
        return Err(Error::Internal(format!(
            "membership test ({member}) disagrees with the cross-term test ({check})"
        )));
    }
    Ok(member)
}
