//! JSON schema for state sets. Complex numbers serialize as `[re, im]`
//! pairs; matrices as row-major nested arrays.
//!
//! ```json
//! {
//!   "dA": 2, "dB": 2,
//!   "states": [
//!     {"kind": "product", "a": [[1.0, 0.0], [0.0, 0.0]], "b": [[1.0, 0.0], [0.0, 0.0]]},
//!     {"kind": "pure", "coeff": [[[0.707, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.707, 0.0]]]},
//!     {"kind": "mixed", "rho": [[[0.5, 0.0], ...], ...]}
//!   ],
//!   "labels": ["psi0", "psi1", "psi2"]
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{c, CMatrix, CVector};

use super::{MixedState, ProductState, PureState, State, StateSet};

pub(crate) fn vec_to_json(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub(crate) fn vec_from_json(v: &[[f64; 2]]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(|&[re, im]| c(re, im)))
}

pub(crate) fn matrix_to_json(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub(crate) fn matrix_from_json(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let nrows = rows.len();
    if nrows == 0 {
        return Err(Error::InvalidParams("empty matrix".into()));
    }
    let ncols = rows[0].len();
    if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidParams("ragged or empty matrix rows".into()));
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| {
        c(rows[i][j][0], rows[i][j][1])
    }))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateJson {
    Product {
        a: Vec<[f64; 2]>,
        b: Vec<[f64; 2]>,
    },
    Pure {
        coeff: Vec<Vec<[f64; 2]>>,
    },
    Mixed {
        rho: Vec<Vec<[f64; 2]>>,
    },
}

/// Serde mirror of [`StateSet`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateSetJson {
    #[serde(rename = "dA")]
    pub d_a: usize,
    #[serde(rename = "dB")]
    pub d_b: usize,
    pub states: Vec<StateJson>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl From<&StateSet> for StateSetJson {
    fn from(set: &StateSet) -> Self {
        let states = set
            .states()
            .iter()
            .map(|s| match s {
                State::Product(p) => StateJson::Product {
                    a: vec_to_json(&p.a),
                    b: vec_to_json(&p.b),
                },
                State::Pure(p) => StateJson::Pure {
                    coeff: matrix_to_json(&p.coeff),
                },
                State::Mixed(m) => StateJson::Mixed {
                    rho: matrix_to_json(&m.rho),
                },
            })
            .collect();
        StateSetJson {
            d_a: set.d_a,
            d_b: set.d_b,
            states,
            labels: set.labels().to_vec(),
        }
    }
}

impl TryFrom<&StateSetJson> for StateSet {
    type Error = Error;

    fn try_from(json: &StateSetJson) -> Result<StateSet> {
        let states = json
            .states
            .iter()
            .map(|s| {
                Ok(match s {
                    StateJson::Product { a, b } => {
                        State::Product(ProductState::new(vec_from_json(a), vec_from_json(b))?)
                    }
                    StateJson::Pure { coeff } => {
                        State::Pure(PureState::new(matrix_from_json(coeff)?)?)
                    }
                    StateJson::Mixed { rho } => State::Mixed(MixedState::new(matrix_from_json(rho)?)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        StateSet::new(json.d_a, json.d_b, states, json.labels.clone())
    }
}

/// Serialize a set to the JSON schema (pretty-printed, stable field order).
pub fn state_set_to_json(set: &StateSet) -> String {
    serde_json::to_string_pretty(&StateSetJson::from(set)).expect("schema types serialize")
}

/// Parse a set from the JSON schema, validating all invariants.
pub fn state_set_from_json(text: &str) -> Result<StateSet> {
    let json: StateSetJson = serde_json::from_str(text)
        .map_err(|e| Error::InvalidParams(format!("malformed state-set JSON: {e}")))?;
    StateSet::try_from(&json)
}
