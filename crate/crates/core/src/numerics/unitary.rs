//! A surjective chart on the unitary group U(d).
//!
//! A unitary is built from `d(d-1)/2` two-level rotations, each carrying a
//! rotation angle and a phase, followed by `d` diagonal phases:
//!
//! `U = D(lambda) * R_{p_R} * ... * R_{p_1}`
//!
//! with pairs `p_1..p_R` in row-major order `(0,1), (0,2), ..., (d-2,d-1)`.
//! Any unitary can be reduced to a diagonal by right-multiplying the inverse
//! rotations in that order (zeroing row 0, then row 1 of the remaining block,
//! and so on), so the chart covers all of U(d).

use crate::error::{Error, Result};

use super::{c, cr, CMatrix};

/// Chart coordinates on U(d): `d(d-1)/2` rotation angles, then `d(d-1)/2`
/// rotation phases, then `d` diagonal phases: `d^2` real numbers in total.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryParams {
    /// Angles in radians; interpreted modulo 2 pi.
    pub angles: Vec<f64>,
    /// Dimension `d` of the unitary.
    pub dim: usize,
}

impl UnitaryParams {
    /// Number of chart coordinates for dimension `dim`.
    pub fn param_count(dim: usize) -> usize {
        dim * dim
    }

    /// All-zero parameters (the identity).
    pub fn zeros(dim: usize) -> Self {
        UnitaryParams {
            angles: vec![0.0; Self::param_count(dim)],
            dim,
        }
    }

    /// Wrap a raw coordinate vector, checking the length.
    pub fn from_vec(dim: usize, angles: Vec<f64>) -> Result<Self> {
        if angles.len() != Self::param_count(dim) {
            return Err(Error::InvalidParams(format!(
                "expected {} parameters for U({dim}), got {}",
                Self::param_count(dim),
                angles.len()
            )));
        }
        Ok(UnitaryParams { angles, dim })
    }

    fn rotation_count(&self) -> usize {
        self.dim * (self.dim - 1) / 2
    }
}

/// Build the unitary matrix for the given chart coordinates.
pub fn unitary_from_params(p: &UnitaryParams) -> Result<CMatrix> {
    let d = p.dim;
    if d == 0 {
        return Err(Error::InvalidParams("dimension must be positive".into()));
    }
    if p.angles.len() != UnitaryParams::param_count(d) {
        return Err(Error::InvalidParams(format!(
            "expected {} parameters for U({d}), got {}",
            UnitaryParams::param_count(d),
            p.angles.len()
        )));
    }
    let r = p.rotation_count();
    let thetas = &p.angles[0..r];
    let phis = &p.angles[r..2 * r];
    let lambdas = &p.angles[2 * r..2 * r + d];

    let mut m = CMatrix::identity(d, d);
    let mut idx = 0;
    for i in 0..d {
        for j in (i + 1)..d {
            // Left-multiply by the two-level rotation acting on rows (i, j):
            //   row_i' =  cos(t) row_i - e^{-i phi} sin(t) row_j
            //   row_j' =  e^{i phi} sin(t) row_i + cos(t) row_j
            let (s, t) = thetas[idx].sin_cos();
            let e_neg = c(phis[idx].cos(), -phis[idx].sin());
            let e_pos = e_neg.conj();
            for col in 0..d {
                let ri = m[(i, col)];
                let rj = m[(j, col)];
                m[(i, col)] = ri * cr(t) - rj * e_neg * cr(s);
                m[(j, col)] = ri * e_pos * cr(s) + rj * cr(t);
            }
            idx += 1;
        }
    }
    for (k, lam) in lambdas.iter().enumerate() {
        let phase = c(lam.cos(), lam.sin());
        for col in 0..d {
            m[(k, col)] *= phase;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::unitarity_defect;
    use rand::{RngExt, SeedableRng};

    #[test]
    fn zero_params_give_identity() {
        let u = unitary_from_params(&UnitaryParams::zeros(2)).unwrap();
        assert!((u - CMatrix::identity(2, 2)).norm() < 1e-15);
    }

    #[test]
    fn quarter_turn_in_dimension_two() {
        let mut p = UnitaryParams::zeros(2);
        p.angles[0] = std::f64::consts::FRAC_PI_2;
        let u = unitary_from_params(&p).unwrap();
        // Columns (0, 1) and (-1, 0).
        assert!(u[(0, 0)].norm() < 1e-15);
        assert!((u[(1, 0)] - cr(1.0)).norm() < 1e-15);
        assert!((u[(0, 1)] - cr(-1.0)).norm() < 1e-15);
        assert!(u[(1, 1)].norm() < 1e-15);
        assert!(unitarity_defect(&u) < 1e-12);
    }

    #[test]
    fn random_params_give_unitary_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let dim = 4;
            let angles: Vec<f64> = (0..UnitaryParams::param_count(dim))
                .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
                .collect();
            let u = unitary_from_params(&UnitaryParams { angles, dim }).unwrap();
            assert!(unitarity_defect(&u) < 1e-12);
        }
    }

    #[test]
    fn rejects_malformed_parameter_count() {
        let p = UnitaryParams {
            angles: vec![0.0; 3],
            dim: 2,
        };
        assert!(unitary_from_params(&p).is_err());
        assert!(UnitaryParams::from_vec(2, vec![0.0; 3]).is_err());
    }
}
