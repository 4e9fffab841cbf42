//! Counting bounds on product members of one-way distinguishable sets.
//!
//! A one-way distinguishable set of `floor(dA dB / 2) + k` orthogonal states
//! must contain at least `2k` product states when `dA dB` is even, and at
//! least `2k - 1` when odd: after the first measurement each non-product
//! state still occupies at least two slots of the `dA dB` available
//! outcome-ket pairs, each product state at least one.

use serde::Serialize;

use crate::numerics::rank;
use crate::states::{State, StateSet};

/// Minimum number of product states a one-way distinguishable `n`-set in
/// `C^dA x C^dB` must contain (0 when the bound does not bind).
pub fn min_product_bound(d_a: usize, d_b: usize, n: usize) -> usize {
    let total = d_a * d_b;
    let half = total / 2;
    if n <= half {
        return 0;
    }
    let k = n - half;
    (2 * k + 2 * half).saturating_sub(total)
}

/// Applying the bound to a concrete set.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    /// Members with Schmidt rank one (products by construction or by the
    /// singular-value test on the coefficient matrix).
    pub product_count: usize,
    /// Required minimum from [`min_product_bound`].
    pub bound: usize,
    /// True iff `product_count < bound`; a violation already implies one-way
    /// indistinguishability with either side first.
    pub violated: bool,
}

/// Count Schmidt-rank-one members and compare against the bound.
pub fn bound_check(set: &StateSet, tol: f64) -> BoundReport {
    let product_count = set
        .states()
        .iter()
        .filter(|s| match s {
            State::Product(_) => true,
            State::Pure(p) => rank(&p.coeff, tol) == 1,
            State::Mixed(m) => {
                // A mixed member counts only if it is a pure product in
                // disguise: rank-one density whose top eigenvector has
                // Schmidt rank one.
                let purity = (&m.rho * &m.rho).trace().re;
                if (purity - 1.0).abs() > tol.max(1e-9) {
                    return false;
                }
                let eig = m.rho.clone().symmetric_eigen();
                let top = (0..eig.eigenvalues.len())
                    .max_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
                    .expect("nonempty spectrum");
                let psi = eig.eigenvectors.column(top);
                let d_b = set.d_b;
                let coeff = crate::numerics::CMatrix::from_fn(set.d_a, d_b, |i, mcol| {
                    psi[i * d_b + mcol]
                });
                rank(&coeff, tol) == 1
            }
        })
        .count();
    let bound = min_product_bound(set.d_a, set.d_b, set.len());
    BoundReport {
        n: set.len(),
        product_count,
        bound,
        violated: product_count < bound,
    }
}
