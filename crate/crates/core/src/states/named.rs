//! Named state families used as fixtures and regression targets.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{cr, CMatrix, CVector};

use super::{ProductState, PureState, State, StateSet};

/// The named sets built by [`make_named`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedSet {
    /// Three of the four Bell states in `C^2 x C^2`.
    Bell3,
    /// Four product states `(|0> +- |1>)|0>`, `(|1> +- |2>)|1>` in `C^3 x C^2`.
    Quad3x2,
    /// `|00>`, `|10>`, `(|0> +- |1>)|1>` in `C^2 x C^2`.
    Groisman2x2,
    /// Five product states with pentagon orthogonality structure in `C^3 x C^3`.
    Penta3x3,
    /// Six product states in `C^3 x C^2`.
    Hex3x2,
}

impl NamedSet {
    pub const ALL: [NamedSet; 5] = [
        NamedSet::Bell3,
        NamedSet::Quad3x2,
        NamedSet::Groisman2x2,
        NamedSet::Penta3x3,
        NamedSet::Hex3x2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedSet::Bell3 => "bell3",
            NamedSet::Quad3x2 => "quad_3x2",
            NamedSet::Groisman2x2 => "groisman_2x2",
            NamedSet::Penta3x3 => "penta_3x3",
            NamedSet::Hex3x2 => "hex_3x2",
        }
    }
}

impl FromStr for NamedSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedSet::ALL
            .iter()
            .copied()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl std::fmt::Display for NamedSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn ket(dim: usize, amplitudes: &[(usize, f64)]) -> CVector {
    let mut v = CVector::zeros(dim);
    for &(i, x) in amplitudes {
        v[i] = cr(x);
    }
    let n = v.norm();
    v / cr(n)
}

fn product(d_a: usize, d_b: usize, a: &[(usize, f64)], b: &[(usize, f64)]) -> State {
    State::Product(ProductState {
        a: ket(d_a, a),
        b: ket(d_b, b),
    })
}

/// Build a named set. Every returned set is pairwise globally orthogonal.
pub fn make_named(name: NamedSet) -> StateSet {
    let result = match name {
        NamedSet::Bell3 => {
            let s = 1.0 / 2.0_f64.sqrt();
            let mut phi0 = CMatrix::zeros(2, 2);
            phi0[(0, 0)] = cr(s);
            phi0[(1, 1)] = cr(s);
            let mut phi1 = CMatrix::zeros(2, 2);
            phi1[(0, 0)] = cr(s);
            phi1[(1, 1)] = cr(-s);
            let mut phi2 = CMatrix::zeros(2, 2);
            phi2[(0, 1)] = cr(s);
            phi2[(1, 0)] = cr(s);
            StateSet::new(
                2,
                2,
                vec![
                    State::Pure(PureState { coeff: phi0 }),
                    State::Pure(PureState { coeff: phi1 }),
                    State::Pure(PureState { coeff: phi2 }),
                ],
                vec!["Phi0".into(), "Phi1".into(), "Phi2".into()],
            )
        }
        NamedSet::Quad3x2 => StateSet::new(
            3,
            2,
            vec![
                product(3, 2, &[(0, 1.0), (1, 1.0)], &[(0, 1.0)]),
                product(3, 2, &[(0, 1.0), (1, -1.0)], &[(0, 1.0)]),
                product(3, 2, &[(1, 1.0), (2, 1.0)], &[(1, 1.0)]),
                product(3, 2, &[(1, 1.0), (2, -1.0)], &[(1, 1.0)]),
            ],
            vec!["psi1".into(), "psi2".into(), "psi3".into(), "psi4".into()],
        ),
        NamedSet::Groisman2x2 => StateSet::new(
            2,
            2,
            vec![
                product(2, 2, &[(0, 1.0)], &[(0, 1.0)]),
                product(2, 2, &[(1, 1.0)], &[(0, 1.0)]),
                product(2, 2, &[(0, 1.0), (1, 1.0)], &[(1, 1.0)]),
                product(2, 2, &[(0, 1.0), (1, -1.0)], &[(1, 1.0)]),
            ],
            vec!["phi0".into(), "phi1".into(), "phi2".into(), "phi3".into()],
        ),
        NamedSet::Penta3x3 => StateSet::new(
            3,
            3,
            vec![
                product(3, 3, &[(0, 1.0)], &[(0, 1.0)]),
                product(3, 3, &[(2, 1.0)], &[(0, 1.0), (1, -1.0), (2, 1.0)]),
                product(3, 3, &[(0, 1.0), (1, 1.0)], &[(2, 1.0)]),
                product(3, 3, &[(0, 1.0), (1, -1.0), (2, 1.0)], &[(1, 1.0), (2, 1.0)]),
                product(3, 3, &[(1, 1.0), (2, 1.0)], &[(0, 1.0), (1, 1.0)]),
            ],
            vec![
                "Psi0".into(),
                "Psi1".into(),
                "Psi2".into(),
                "Psi3".into(),
                "Psi4".into(),
            ],
        ),
        NamedSet::Hex3x2 => StateSet::new(
            3,
            2,
            vec![
                product(3, 2, &[(0, 1.0)], &[(0, 1.0)]),
                product(3, 2, &[(1, 1.0)], &[(0, 1.0)]),
                product(3, 2, &[(0, 1.0), (1, 1.0)], &[(1, 1.0)]),
                product(3, 2, &[(0, 1.0), (1, -1.0)], &[(1, 1.0)]),
                product(3, 2, &[(2, 1.0)], &[(0, 1.0), (1, 1.0)]),
                product(3, 2, &[(2, 1.0)], &[(0, 1.0), (1, -1.0)]),
            ],
            vec![
                "Psi1".into(),
                "Psi2".into(),
                "Psi3".into(),
                "Psi4".into(),
                "Psi5".into(),
                "Psi6".into(),
            ],
        ),
    };
    result.expect("named sets are well-formed")
}
