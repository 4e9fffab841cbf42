//! Constructive protocol synthesis for small product sets, conversion of a
//! verified basis into an executable protocol, and exact simulation.
//!
//! A protocol is: the first mover's basis, one follow-up basis on the other
//! side per first outcome, and a decision table mapping outcome pairs to
//! state labels. Synthesis for three and four product states follows the
//! constructive case analysis on which same-side kets are orthogonal; in
//! every branch the measurement basis is the Gram-Schmidt orthonormalization
//! of the mover's kets taken in a branch-specific anchor order, padded with
//! computational kets.

use serde::Serialize;

use crate::conflict::{build_conflict_graph, classify_quad, QuadCase};
use crate::decider::MeasurementBasis;
use crate::error::{Error, Result};
use crate::numerics::{basis_vector, cr, inner, CVector};
use crate::states::{product_side_vectors, require_orthogonal, residual_rows, PureState, StateSet};
use crate::Side;

/// An executable one-way discrimination strategy.
#[derive(Debug, Clone, Serialize)]
pub struct Protocol {
    /// Who measures first.
    pub first: Side,
    /// The first mover's basis.
    pub first_basis: MeasurementBasis,
    /// Follow-up basis on the other side, per first outcome.
    pub followups: Vec<MeasurementBasis>,
    /// `decision[j][m]`: state index identified on outcome pair `(j, m)`,
    /// or `None` when the pair has probability zero for every input.
    pub decision: Vec<Vec<Option<usize>>>,
    pub notes: Vec<String>,
}

impl Protocol {
    /// Exchange the side tags (used when a protocol was synthesized on the
    /// swapped state set).
    fn swap_sides(mut self) -> Protocol {
        self.first = self.first.other();
        self.first_basis = self.first_basis.with_side(self.first);
        let follow_side = self.first.other();
        self.followups = self
            .followups
            .iter()
            .map(|b| b.with_side(follow_side))
            .collect();
        self
    }
}

/// Exact per-state identification statistics for a protocol.
#[derive(Debug, Clone, Serialize)]
pub struct SimulationReport {
    /// Probability of correctly identifying each input state.
    pub success: Vec<f64>,
    /// `confusion[input][label]`; the last column collects probability mass
    /// on outcome pairs the decision table marks impossible.
    pub confusion: Vec<Vec<f64>>,
    pub min_success: f64,
}

/// Orthonormalize `vectors` in the given order and pad with computational
/// kets (ascending index) to a complete basis.
fn basis_from_order(vectors: &[&CVector], side: Side, dim: usize, tol: f64) -> Result<MeasurementBasis> {
    let mut work: Vec<CVector> = vectors.iter().map(|v| (*v).clone()).collect();
    for k in 0..dim {
        work.push(basis_vector(dim, k));
    }
    let ortho = crate::numerics::gram_schmidt(&work, tol)?;
    debug_assert_eq!(ortho.len(), dim);
    MeasurementBasis::new(side, ortho)
}

/// Convert a verified basis into a protocol: the follow-up basis for outcome
/// `j` is the orthonormalization of the nonzero residuals, padded to
/// completeness; the decision table maps each follow-up vector back to the
/// state whose residual it is.
pub fn protocol_from_basis(
    set: &StateSet,
    basis: &MeasurementBasis,
    tol: f64,
) -> Result<Protocol> {
    let (ok, table) = crate::decider::verify_pure_basis(set, basis, tol)?;
    if !ok {
        return Err(Error::BasisVerificationFailed(table.max_offdiag));
    }
    let coeffs = set.coeffs()?;
    let other = basis.side.other();
    let d_other = set.dim(other);
    let residuals: Vec<Vec<CVector>> = coeffs
        .iter()
        .map(|c| residual_rows(&PureState { coeff: c.clone() }, basis))
        .collect::<Result<Vec<_>>>()?;

    let mut followups = Vec::with_capacity(basis.dim());
    let mut decision = Vec::with_capacity(basis.dim());
    for j in 0..basis.dim() {
        let mut surviving: Vec<(usize, CVector)> = Vec::new();
        for (k, rows) in residuals.iter().enumerate() {
            let norm = rows[j].norm();
            if norm >= tol {
                surviving.push((k, &rows[j] / cr(norm)));
            }
        }
        // Verified bases leave surviving residuals pairwise orthogonal, so
        // two states can never claim the same follow-up vector.
        for (i, (_, x)) in surviving.iter().enumerate() {
            for (_, y) in surviving.iter().skip(i + 1) {
                debug_assert!(inner(x, y).norm() < 10.0 * tol);
            }
        }
        let ordered: Vec<&CVector> = surviving.iter().map(|(_, v)| v).collect();
        let followup = basis_from_order(&ordered, other, d_other, tol)?;
        let mut row: Vec<Option<usize>> = vec![None; d_other];
        for (m, (k, _)) in surviving.iter().enumerate() {
            row[m] = Some(*k);
        }
        followups.push(followup);
        decision.push(row);
    }
    Ok(Protocol {
        first: basis.side,
        first_basis: basis.clone(),
        followups,
        decision,
        notes: Vec::new(),
    })
}

/// Exact outcome distribution of `protocol` on every member of `set`.
pub fn simulate(protocol: &Protocol, set: &StateSet) -> Result<SimulationReport> {
    let coeffs = set.coeffs()?;
    let n = coeffs.len();
    let d_first = set.dim(protocol.first);
    if protocol.first_basis.dim() != d_first || protocol.followups.len() != d_first {
        return Err(Error::DimensionMismatch(format!(
            "protocol built for side dimension {}, set has {d_first}",
            protocol.first_basis.dim()
        )));
    }
    let mut confusion = vec![vec![0.0_f64; n + 1]; n];
    for (k, coeff) in coeffs.iter().enumerate() {
        let rows = residual_rows(&PureState { coeff: coeff.clone() }, &protocol.first_basis)?;
        for (j, eta) in rows.iter().enumerate() {
            let followup = &protocol.followups[j];
            if followup.dim() != eta.len() {
                return Err(Error::DimensionMismatch(format!(
                    "follow-up basis {j} has dimension {}, expected {}",
                    followup.dim(),
                    eta.len()
                )));
            }
            for (m, w) in followup.vectors().iter().enumerate() {
                let p = w.dotc(eta).norm_sqr();
                match protocol.decision[j].get(m).copied().flatten() {
                    Some(label) => confusion[k][label] += p,
                    None => confusion[k][n] += p,
                }
            }
        }
    }
    let success: Vec<f64> = (0..n).map(|k| confusion[k][k]).collect();
    let min_success = success.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(SimulationReport {
        success,
        confusion,
        min_success,
    })
}

/// Anchor order for up to three orthogonal product states, following the
/// case analysis on which mover-side kets are non-orthogonal.
fn small_anchor_order(kets: &[&CVector], tol: f64) -> Vec<usize> {
    let n = kets.len();
    if n < 3 {
        return (0..n).collect();
    }
    let nonorth: Vec<(usize, usize)> = [(0usize, 1usize), (0, 2), (1, 2)]
        .into_iter()
        .filter(|&(h, k)| inner(kets[h], kets[k]).norm() >= tol)
        .collect();
    match nonorth.len() {
        // All mutually orthogonal: the kets themselves are the basis.
        0 => vec![0, 1, 2],
        // One non-orthogonal pair: anchor on the third state, then the pair.
        1 => {
            let (h, k) = nonorth[0];
            let t = 3 - h - k;
            vec![t, h, k]
        }
        // Two non-orthogonal pairs share a vertex; the other two states form
        // the only possible conflict and anchor the basis.
        2 => {
            let (a, b) = nonorth[0];
            let (c, d) = nonorth[1];
            let shared = if a == c || a == d { a } else { b };
            let mut order: Vec<usize> = (0..3).filter(|&x| x != shared).collect();
            order.push(shared);
            order
        }
        // All pairs non-orthogonal: the other side is fully orthogonal and
        // any basis works.
        _ => vec![0, 1, 2],
    }
}

/// Synthesize an Alice-first protocol for exactly three orthogonal product
/// states.
pub fn synth_three(set: &StateSet, tol: f64) -> Result<Protocol> {
    if set.len() != 3 {
        return Err(Error::InvalidParams(format!(
            "synth_three expects 3 states, got {}",
            set.len()
        )));
    }
    synth_small(set, Side::Alice, tol)
}

/// Synthesize a protocol for up to three orthogonal product states with the
/// given side moving first (always possible).
pub fn synth_small(set: &StateSet, side: Side, tol: f64) -> Result<Protocol> {
    if set.len() > 3 {
        return Err(Error::InvalidParams(format!(
            "small-set synthesis handles up to 3 states, got {}",
            set.len()
        )));
    }
    require_orthogonal(set, tol)?;
    let work = match side {
        Side::Alice => set.clone(),
        Side::Bob => set.swapped(),
    };
    let products = work.products()?;
    let kets = product_side_vectors(&products, Side::Alice);
    let order = small_anchor_order(&kets, tol);
    let ordered: Vec<&CVector> = order.iter().map(|&i| kets[i]).collect();
    let basis = basis_from_order(&ordered, Side::Alice, work.d_a, tol)?;
    let mut protocol = match protocol_from_basis(&work, &basis, tol) {
        Ok(p) => p,
        Err(_) => {
            // The anchor analysis covers every orthogonality structure; keep
            // a permutation sweep as a safety net against degenerate input.
            let mut found = None;
            'perm: for perm in permutations(kets.len()) {
                let ordered: Vec<&CVector> = perm.iter().map(|&i| kets[i]).collect();
                if let Ok(b) = basis_from_order(&ordered, Side::Alice, work.d_a, tol) {
                    if let Ok(p) = protocol_from_basis(&work, &b, tol) {
                        found = Some(p);
                        break 'perm;
                    }
                }
            }
            found.ok_or_else(|| {
                Error::Internal("no anchor ordering yields a verified basis".into())
            })?
        }
    };
    protocol
        .notes
        .push(format!("small-set synthesis, anchor order {order:?}"));
    if side == Side::Bob {
        protocol = protocol.swap_sides();
    }
    Ok(protocol)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Synthesize a protocol for exactly four orthogonal product states,
/// choosing the first mover from the quadruple case analysis.
pub fn synth_four(set: &StateSet, tol: f64) -> Result<Protocol> {
    if set.len() != 4 {
        return Err(Error::InvalidParams(format!(
            "synth_four expects 4 states, got {}",
            set.len()
        )));
    }
    require_orthogonal(set, tol)?;
    let g_a = build_conflict_graph(set, Side::Alice, tol)?;
    let g_b = build_conflict_graph(set, Side::Bob, tol)?;
    let cls = classify_quad(&g_a, &g_b)?;
    let work = match cls.first {
        Side::Alice => set.clone(),
        Side::Bob => set.swapped(),
    };
    let products = work.products()?;
    let kets = product_side_vectors(&products, Side::Alice);
    let ordered: Vec<&CVector> = cls.relabel.iter().map(|&i| kets[i]).collect();
    let basis = basis_from_order(&ordered, Side::Alice, work.d_a, tol)?;
    let mut protocol = protocol_from_basis(&work, &basis, tol)?;
    protocol.notes.push(format!(
        "quad synthesis: case {:?}, mover {}, anchor order {:?}",
        cls.case, cls.first, cls.relabel
    ));
    if matches!(cls.case, QuadCase::CycleG | QuadCase::PathH) {
        protocol.notes.push(
            "basis anchors follow the same-side orthogonality conditions of the matched pattern"
                .into(),
        );
    }
    if cls.first == Side::Bob {
        protocol = protocol.swap_sides();
    }
    Ok(protocol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c;
    use crate::states::{make_named, make_tiling, NamedSet, ProductState, State, TilingParams};

    fn product_set(d_a: usize, d_b: usize, parts: &[(&[f64], &[f64])]) -> StateSet {
        let states = parts
            .iter()
            .map(|(a, b)| {
                let mk = |xs: &[f64], d: usize| {
                    let mut v = CVector::zeros(d);
                    for (i, &x) in xs.iter().enumerate() {
                        v[i] = cr(x);
                    }
                    let n = v.norm();
                    v / cr(n)
                };
                State::Product(ProductState::new(mk(a, d_a), mk(b, d_b)).unwrap())
            })
            .collect();
        StateSet::new(d_a, d_b, states, Vec::new()).unwrap()
    }

    #[test]
    fn computational_triple_gets_identity_protocol() {
        let set = product_set(
            3,
            3,
            &[
                (&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]),
                (&[0.0, 1.0, 0.0], &[0.0, 1.0, 0.0]),
                (&[0.0, 0.0, 1.0], &[0.0, 0.0, 1.0]),
            ],
        );
        let protocol = synth_three(&set, 1e-9).unwrap();
        assert_eq!(protocol.first, Side::Alice);
        let report = simulate(&protocol, &set).unwrap();
        assert!(report.min_success > 1.0 - 1e-9);
    }

    #[test]
    fn overlapping_alice_pair_uses_anchored_basis() {
        // <a_1|a_2> != 0 with |psi_0> = |00>: the anchored Gram-Schmidt basis
        // starts at |0>.
        let set = product_set(
            3,
            2,
            &[
                (&[1.0, 0.0, 0.0], &[1.0, 0.0]),
                (&[0.0, 1.0, 0.0], &[0.0, 1.0]),
                (&[0.0, 0.6, 0.8], &[1.0, 0.0]),
            ],
        );
        let protocol = synth_three(&set, 1e-9).unwrap();
        let report = simulate(&protocol, &set).unwrap();
        assert!(report.min_success > 1.0 - 1e-9);
        let v0 = &protocol.first_basis.vectors()[0];
        assert!((v0[0].norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn wrong_decision_labels_fail_negative_control() {
        let set = product_set(
            2,
            2,
            &[
                (&[1.0, 0.0], &[1.0, 0.0]),
                (&[0.0, 1.0], &[0.0, 1.0]),
            ],
        );
        let mut protocol = synth_small(&set, Side::Alice, 1e-9).unwrap();
        for row in &mut protocol.decision {
            for label in row.iter_mut().flatten() {
                *label = 1 - *label;
            }
        }
        let report = simulate(&protocol, &set).unwrap();
        assert!(report.success.iter().all(|&s| s < 1e-12));
    }

    #[test]
    fn simulation_rows_sum_to_one() {
        let set = make_named(NamedSet::Quad3x2);
        let protocol = synth_four(&set, 1e-9).unwrap();
        let report = simulate(&protocol, &set).unwrap();
        for row in &report.confusion {
            let total: f64 = row.iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn quad_3x2_synthesizes_bob_first() {
        let set = make_named(NamedSet::Quad3x2);
        let protocol = synth_four(&set, 1e-9).unwrap();
        assert_eq!(protocol.first, Side::Bob);
        let report = simulate(&protocol, &set).unwrap();
        assert!(report.min_success > 1.0 - 1e-9);
    }

    #[test]
    fn cycle_pattern_quad_is_alice_first() {
        let set = product_set(
            3,
            3,
            &[
                (&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]),
                (&[0.0, 1.0, 0.0], &[1.0, 1.0, 0.0]),
                (&[0.0, 1.0, 1.0], &[1.0, -1.0, 0.0]),
                (&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]),
            ],
        );
        let protocol = synth_four(&set, 1e-9).unwrap();
        assert_eq!(protocol.first, Side::Alice);
        let report = simulate(&protocol, &set).unwrap();
        assert!(report.min_success > 1.0 - 1e-9, "success {:?}", report.success);
    }

    #[test]
    fn path_pattern_quad_verifies() {
        let set = product_set(
            3,
            3,
            &[
                (&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]),
                (&[1.0, 0.0, 1.0], &[0.0, 1.0, 0.0]),
                (&[0.0, 1.0, 0.0], &[1.0, 1.0, -1.0]),
                (&[0.0, 1.0, 1.0], &[1.0, 0.0, 1.0]),
            ],
        );
        let protocol = synth_four(&set, 1e-9).unwrap();
        let report = simulate(&protocol, &set).unwrap();
        assert!(report.min_success > 1.0 - 1e-9, "success {:?}", report.success);
    }

    #[test]
    fn protocol_from_basis_rejects_failing_bases() {
        let set = make_tiling(TilingParams { l_a: 1, l_b: 1 }).unwrap();
        let basis = MeasurementBasis::computational(Side::Alice, set.d_a);
        assert!(matches!(
            protocol_from_basis(&set, &basis, 1e-9),
            Err(Error::BasisVerificationFailed(_))
        ));
    }

    #[test]
    fn complex_amplitudes_synthesize_too() {
        let a1 = CVector::from_iterator(3, [c(0.0, 0.0), c(0.6, 0.0), c(0.0, 0.8)]);
        let a2 = CVector::from_iterator(3, [c(0.0, 0.0), c(0.8, 0.0), c(0.0, -0.6)]);
        let b0 = CVector::from_iterator(2, [c(1.0, 0.0), c(0.0, 0.0)]);
        let b1 = CVector::from_iterator(2, [c(0.0, 0.0), c(0.0, 1.0)]);
        let set = StateSet::new(
            3,
            2,
            vec![
                State::Product(ProductState::new(basis_vector(3, 0), b0.clone()).unwrap()),
                State::Product(ProductState::new(a1, b1).unwrap()),
                State::Product(ProductState::new(a2, b0).unwrap()),
            ],
            Vec::new(),
        )
        .unwrap();
        let protocol = synth_three(&set, 1e-9).unwrap();
        let report = simulate(&protocol, &set).unwrap();
        assert!(report.min_success > 1.0 - 1e-9);
    }
}
