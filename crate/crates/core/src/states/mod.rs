//! Bipartite state sets: product, pure and mixed states on `C^dA x C^dB`,
//! constructors for the families used throughout the crate, and the global
//! (unrestricted-operations) distinguishability check.

mod json;
mod named;
mod random;
mod tiling;

pub use json::{state_set_from_json, state_set_to_json, StateSetJson};
pub use named::{make_named, NamedSet};
pub use random::random_orthogonal_products;
pub use tiling::{make_tiling, TilingParams};

use num_complex::Complex64;

use crate::decider::MeasurementBasis;
use crate::error::{Error, Result};
use crate::numerics::{cr, inner, CMatrix, CVector};
use crate::Side;

/// A product state `|a>_A |b>_B`.
#[derive(Debug, Clone)]
pub struct ProductState {
    /// Alice ket, dimension `dA`, unit norm.
    pub a: CVector,
    /// Bob ket, dimension `dB`, unit norm.
    pub b: CVector,
}

impl ProductState {
    /// Build from already-normalized kets; errors if a norm is off by more
    /// than 1e-9.
    pub fn new(a: CVector, b: CVector) -> Result<Self> {
        for (name, v) in [("a", &a), ("b", &b)] {
            if (v.norm() - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParams(format!(
                    "product factor {name} has norm {:.12}, expected 1",
                    v.norm()
                )));
            }
        }
        Ok(ProductState { a, b })
    }

    /// Normalize the kets and build the state; errors on zero vectors.
    pub fn normalized(a: CVector, b: CVector) -> Result<Self> {
        let (na, nb) = (a.norm(), b.norm());
        if na == 0.0 || nb == 0.0 {
            return Err(Error::InvalidParams("zero product factor".into()));
        }
        Ok(ProductState {
            a: a / cr(na),
            b: b / cr(nb),
        })
    }

    /// Coefficient matrix `C = a b^T` of the joint state.
    pub fn coeff(&self) -> CMatrix {
        &self.a * self.b.transpose()
    }
}

/// A pure bipartite state stored as its `dA x dB` coefficient matrix `C`,
/// with `|psi> = sum_{j,m} C[j,m] |j>_A |m>_B`. Row `j` of `C` is the
/// (unnormalized) conditional Bob ket for Alice outcome `|j>`.
#[derive(Debug, Clone)]
pub struct PureState {
    pub coeff: CMatrix,
}

impl PureState {
    /// Build from a coefficient matrix; errors unless the Frobenius norm is
    /// 1 to 1e-9.
    pub fn new(coeff: CMatrix) -> Result<Self> {
        if (coeff.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "pure-state coefficient matrix has norm {:.12}, expected 1",
                coeff.norm()
            )));
        }
        Ok(PureState { coeff })
    }

    /// Normalize and build; errors on the zero matrix.
    pub fn normalized(coeff: CMatrix) -> Result<Self> {
        let n = coeff.norm();
        if n == 0.0 {
            return Err(Error::InvalidParams("zero coefficient matrix".into()));
        }
        Ok(PureState { coeff: coeff / cr(n) })
    }
}

impl From<&ProductState> for PureState {
    fn from(p: &ProductState) -> Self {
        PureState { coeff: p.coeff() }
    }
}

/// A mixed state stored as its full `dA dB x dA dB` density matrix.
#[derive(Debug, Clone)]
pub struct MixedState {
    pub rho: CMatrix,
}

impl MixedState {
    /// Build from a density matrix, validating Hermiticity, positive
    /// semidefiniteness and unit trace.
    pub fn new(rho: CMatrix) -> Result<Self> {
        validate_density(&rho, 0).map(|()| MixedState { rho })
    }
}

fn validate_density(rho: &CMatrix, index: usize) -> Result<()> {
    let fail = |reason: String| Error::NotDensityMatrix { index, reason };
    if rho.nrows() != rho.ncols() {
        return Err(fail(format!("not square: {}x{}", rho.nrows(), rho.ncols())));
    }
    let herm_dev = (rho - rho.adjoint()).norm();
    if herm_dev > 1e-9 {
        return Err(fail(format!("not Hermitian (deviation {herm_dev:.3e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-9 || tr.im.abs() > 1e-9 {
        return Err(fail(format!("trace is {tr}, expected 1")));
    }
    let eigs = rho.clone().symmetric_eigen().eigenvalues;
    let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig < -1e-9 {
        return Err(fail(format!("negative eigenvalue {min_eig:.3e}")));
    }
    Ok(())
}

/// One member of a state set.
#[derive(Debug, Clone)]
pub enum State {
    Product(ProductState),
    Pure(PureState),
    Mixed(MixedState),
}

impl State {
    /// Coefficient matrix for product and pure states; `None` for mixed.
    pub fn coeff(&self) -> Option<CMatrix> {
        match self {
            State::Product(p) => Some(p.coeff()),
            State::Pure(p) => Some(p.coeff.clone()),
            State::Mixed(_) => None,
        }
    }

    /// Density matrix of the state (rank-one embedding for pure/product).
    pub fn density(&self) -> CMatrix {
        match self {
            State::Mixed(m) => m.rho.clone(),
            _ => {
                let coeff = self.coeff().expect("pure or product");
                let (da, db) = coeff.shape();
                let mut psi = CVector::zeros(da * db);
                for j in 0..da {
                    for m in 0..db {
                        psi[j * db + m] = coeff[(j, m)];
                    }
                }
                &psi * psi.adjoint()
            }
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, State::Product(_))
    }

    pub fn is_mixed(&self) -> bool {
        matches!(self, State::Mixed(_))
    }
}

/// The object under analysis: dimensions plus a list of labelled states.
/// Pairwise global orthogonality is *not* assumed; it is checked by
/// [`globally_distinguishable`].
#[derive(Debug, Clone)]
pub struct StateSet {
    pub d_a: usize,
    pub d_b: usize,
    states: Vec<State>,
    labels: Vec<String>,
}

impl StateSet {
    /// Build a set, checking every state against the dimensions. Missing
    /// labels are filled in as `psi0, psi1, ...`.
    pub fn new(d_a: usize, d_b: usize, states: Vec<State>, labels: Vec<String>) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::InvalidParams("dimensions must be positive".into()));
        }
        for (i, s) in states.iter().enumerate() {
            let ok = match s {
                State::Product(p) => p.a.len() == d_a && p.b.len() == d_b,
                State::Pure(p) => p.coeff.shape() == (d_a, d_b),
                State::Mixed(m) => m.rho.nrows() == d_a * d_b,
            };
            if !ok {
                return Err(Error::DimensionMismatch(format!(
                    "state {i} is inconsistent with dimensions {d_a}x{d_b}"
                )));
            }
        }
        let labels = if labels.is_empty() {
            (0..states.len()).map(|i| format!("psi{i}")).collect()
        } else if labels.len() == states.len() {
            labels
        } else {
            return Err(Error::InvalidParams(format!(
                "{} labels for {} states",
                labels.len(),
                states.len()
            )));
        };
        Ok(StateSet {
            d_a,
            d_b,
            states,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Side dimension for `side`.
    pub fn dim(&self, side: Side) -> usize {
        match side {
            Side::Alice => self.d_a,
            Side::Bob => self.d_b,
        }
    }

    /// True if every member is a product state.
    pub fn all_products(&self) -> bool {
        self.states.iter().all(State::is_product)
    }

    /// The product members, or an error naming the first non-product state.
    pub fn products(&self) -> Result<Vec<&ProductState>> {
        self.states
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                State::Product(p) => Ok(p),
                _ => Err(Error::NonProductState(i)),
            })
            .collect()
    }

    /// Coefficient matrices of all members, or an error naming the first
    /// mixed state.
    pub fn coeffs(&self) -> Result<Vec<CMatrix>> {
        self.states
            .iter()
            .enumerate()
            .map(|(i, s)| s.coeff().ok_or(Error::MixedStatePresent(i)))
            .collect()
    }

    /// The same set with the roles of Alice and Bob exchanged.
    pub fn swapped(&self) -> StateSet {
        let states = self
            .states
            .iter()
            .map(|s| match s {
                State::Product(p) => State::Product(ProductState {
                    a: p.b.clone(),
                    b: p.a.clone(),
                }),
                State::Pure(p) => State::Pure(PureState {
                    coeff: p.coeff.transpose(),
                }),
                State::Mixed(m) => {
                    let (da, db) = (self.d_a, self.d_b);
                    let n = da * db;
                    let mut rho = CMatrix::zeros(n, n);
                    for i in 0..da {
                        for p_ in 0..db {
                            for j in 0..da {
                                for q in 0..db {
                                    rho[(p_ * da + i, q * da + j)] =
                                        m.rho[(i * db + p_, j * db + q)];
                                }
                            }
                        }
                    }
                    State::Mixed(MixedState { rho })
                }
            })
            .collect();
        StateSet {
            d_a: self.d_b,
            d_b: self.d_a,
            states,
            labels: self.labels.clone(),
        }
    }

    /// The sub-set with the given state indices (ascending order preserved).
    pub fn subset(&self, indices: &[usize]) -> Result<StateSet> {
        let mut states = Vec::with_capacity(indices.len());
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            let s = self
                .states
                .get(i)
                .ok_or_else(|| Error::InvalidParams(format!("state index {i} out of range")))?;
            states.push(s.clone());
            labels.push(self.labels[i].clone());
        }
        StateSet::new(self.d_a, self.d_b, states, labels)
    }
}

/// Outcome of the global (unrestricted operations) orthogonality check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GlobalOrthogonality {
    /// True iff every distinct pair has `tr(rho_h rho_k) < tol`.
    pub orthogonal: bool,
    /// Largest pairwise overlap `sqrt(tr(rho_h rho_k))`; equals
    /// `|<psi_h|psi_k>|` for pure pairs.
    pub max_overlap: f64,
    /// Pair achieving the maximum, if the set has at least two states.
    pub worst_pair: Option<(usize, usize)>,
}

/// Check whether the set is distinguishable when arbitrary global operations
/// are allowed: every distinct pair must satisfy `tr(rho_h rho_k) = 0`.
pub fn globally_distinguishable(set: &StateSet, tol: f64) -> GlobalOrthogonality {
    let n = set.len();
    let mut max_overlap = 0.0_f64;
    let mut worst = None;
    let mut orthogonal = true;
    // Cache coefficient matrices (cheap) and densities (only when needed).
    let coeffs: Vec<Option<CMatrix>> = set.states.iter().map(State::coeff).collect();
    let densities: Vec<Option<CMatrix>> = set
        .states
        .iter()
        .map(|s| s.is_mixed().then(|| s.density()))
        .collect();
    for h in 0..n {
        for k in (h + 1)..n {
            let t = match (&coeffs[h], &coeffs[k]) {
                (Some(ch), Some(ck)) => {
                    // tr(rho_h rho_k) = |<psi_h|psi_k>|^2 = |tr(C_h^H C_k)|^2
                    (ch.adjoint() * ck).trace().norm_sqr()
                }
                _ => {
                    let rh = densities[h]
                        .clone()
                        .unwrap_or_else(|| set.states[h].density());
                    let rk = densities[k]
                        .clone()
                        .unwrap_or_else(|| set.states[k].density());
                    (rh * rk).trace().re.max(0.0)
                }
            };
            if t >= tol {
                orthogonal = false;
            }
            let overlap = t.max(0.0).sqrt();
            if overlap > max_overlap || worst.is_none() {
                max_overlap = overlap;
                worst = Some((h, k));
            }
        }
    }
    GlobalOrthogonality {
        orthogonal,
        max_overlap,
        worst_pair: worst,
    }
}

/// First non-orthogonal pair as an error, for operations that require a
/// globally orthogonal input.
pub fn require_orthogonal(set: &StateSet, tol: f64) -> Result<()> {
    let report = globally_distinguishable(set, tol);
    if report.orthogonal {
        Ok(())
    } else {
        let (h, k) = report.worst_pair.unwrap_or((0, 0));
        Err(Error::NotGloballyOrthogonal {
            h,
            k,
            overlap: report.max_overlap,
        })
    }
}

/// Conditional kets on the non-measuring side: for each basis vector
/// `|j-bar>` of `basis`, the (unnormalized) residual `eta_j` with
/// `|psi> = sum_j |j-bar> |eta_j>` expanded in that basis on the measuring
/// side. The squared norms of the residuals sum to 1.
pub fn residual_rows(state: &PureState, basis: &MeasurementBasis) -> Result<Vec<CVector>> {
    let coeff = &state.coeff;
    let (da, db) = coeff.shape();
    let expected = match basis.side {
        Side::Alice => da,
        Side::Bob => db,
    };
    if basis.dim() != expected {
        return Err(Error::DimensionMismatch(format!(
            "basis dimension {} does not match side dimension {expected}",
            basis.dim()
        )));
    }
    let rows = basis
        .vectors()
        .iter()
        .map(|v| match basis.side {
            // eta_j[m] = sum_i conj(v_i) C[i, m]
            Side::Alice => CVector::from_iterator(
                db,
                (0..db).map(|m| {
                    (0..da)
                        .map(|i| v[i].conj() * coeff[(i, m)])
                        .sum::<Complex64>()
                }),
            ),
            // eta_j[i] = sum_m C[i, m] conj(v_m)
            Side::Bob => CVector::from_iterator(
                da,
                (0..da).map(|i| {
                    (0..db)
                        .map(|m| coeff[(i, m)] * v[m].conj())
                        .sum::<Complex64>()
                }),
            ),
        })
        .collect();
    Ok(rows)
}

/// Re-assemble a pure state from its residual rows in `basis`; inverse of
/// [`residual_rows`] for complete bases.
pub fn assemble_from_residuals(
    rows: &[CVector],
    basis: &MeasurementBasis,
    d_a: usize,
    d_b: usize,
) -> Result<PureState> {
    if rows.len() != basis.dim() {
        return Err(Error::DimensionMismatch(
            "one residual per basis vector expected".into(),
        ));
    }
    let mut coeff = CMatrix::zeros(d_a, d_b);
    for (v, eta) in basis.vectors().iter().zip(rows) {
        match basis.side {
            Side::Alice => {
                for i in 0..d_a {
                    for m in 0..d_b {
                        coeff[(i, m)] += v[i] * eta[m];
                    }
                }
            }
            Side::Bob => {
                for i in 0..d_a {
                    for m in 0..d_b {
                        coeff[(i, m)] += eta[i] * v[m];
                    }
                }
            }
        }
    }
    PureState::new(coeff)
}

pub(crate) fn product_side_vectors<'a>(
    products: &'a [&ProductState],
    side: Side,
) -> Vec<&'a CVector> {
    products
        .iter()
        .map(|p| match side {
            Side::Alice => &p.a,
            Side::Bob => &p.b,
        })
        .collect()
}

/// `|<x|y>|` for two kets.
pub fn overlap(x: &CVector, y: &CVector) -> f64 {
    inner(x, y).norm()
}

#[cfg(test)]
mod tests;
