//! The decision pipeline: verify claimed bases, prove indistinguishability,
//! search for bases, and evaluate counting bounds and pair-measurement
//! conditions.
//!
//! A *verdict* is three-valued. `Distinguishable` always carries a
//! measurement basis that passes [`verify_pure_basis`] (re-checked
//! independently of whichever search produced it) plus an executable
//! protocol. `Indistinguishable` carries a machine-checkable certificate:
//! either a cover certificate from the combinatorial search or an
//! operator-space triviality certificate. Anything unproven is
//! `Undetermined`, never a claim.

mod bounds;
mod operator_space;
mod optimizer;
mod pairwise;
mod pattern;
mod subset;

pub use bounds::{bound_check, min_product_bound, BoundReport};
pub use operator_space::{op_operator_space, OperatorSpaceReport};
pub use optimizer::{optimizer_search, residual_objective, OptimizerOutcome};
pub use pairwise::{c3_pair_rank1, pair_measurement_check};
pub use pattern::{
    pattern_search, CoverCertificate, CoverEntry, PatternOutcome, PovmSoundness, SearchLimits,
};
pub use subset::{find_indistinguishable_subset, SubsetCertificate, SubsetSearch};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{basis_vector, CMatrix, CVector};
use crate::protocol::{protocol_from_basis, synth_four, synth_small, Protocol};
use crate::states::{require_orthogonal, residual_rows, PureState, StateSet};
use crate::{Side, DEFAULT_RESTARTS, DEFAULT_SEED, DEFAULT_TOL};

/// An orthonormal, complete measurement basis on one side.
#[derive(Debug, Clone, Serialize)]
pub struct MeasurementBasis {
    pub side: Side,
    #[serde(serialize_with = "crate::ser::cvector_list")]
    vectors: Vec<CVector>,
}

impl MeasurementBasis {
    /// Build a basis, checking orthonormality and completeness to 1e-9.
    pub fn new(side: Side, vectors: Vec<CVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidParams("empty basis".into()));
        }
        let dim = vectors[0].len();
        if vectors.iter().any(|v| v.len() != dim) || vectors.len() != dim {
            return Err(Error::NonOrthonormalBasis { max_dev: f64::NAN });
        }
        let mut max_dev = 0.0_f64;
        for (i, x) in vectors.iter().enumerate() {
            for (j, y) in vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                max_dev = max_dev.max((x.dotc(y).norm() - target).abs());
            }
        }
        if max_dev > 1e-9 {
            return Err(Error::NonOrthonormalBasis { max_dev });
        }
        Ok(MeasurementBasis { side, vectors })
    }

    /// The computational basis on `side` in dimension `dim`.
    pub fn computational(side: Side, dim: usize) -> Self {
        MeasurementBasis {
            side,
            vectors: (0..dim).map(|k| basis_vector(dim, k)).collect(),
        }
    }

    /// Basis from the columns of a (numerically) unitary matrix.
    pub fn from_columns(side: Side, u: &CMatrix) -> Result<Self> {
        let vectors = (0..u.ncols()).map(|j| u.column(j).into_owned()).collect();
        MeasurementBasis::new(side, vectors)
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// The same basis attributed to the other side (used when analysing a
    /// swapped state set).
    pub fn with_side(&self, side: Side) -> Self {
        MeasurementBasis {
            side,
            vectors: self.vectors.clone(),
        }
    }
}

/// Table of residual overlaps `<eta_j^h | eta_j^k>` for every basis outcome
/// `j` and state pair `(h, k)`.
#[derive(Debug, Clone)]
pub struct ResidualTable {
    /// One `N x N` overlap matrix per basis outcome; Hermitian in `(h, k)`.
    pub per_outcome: Vec<CMatrix>,
    /// Largest off-diagonal modulus across outcomes.
    pub max_offdiag: f64,
    /// `(j, h, k)` achieving the maximum.
    pub worst: Option<(usize, usize, usize)>,
}

impl ResidualTable {
    /// Largest off-diagonal modulus per outcome (compact certificate form).
    pub fn per_outcome_maxima(&self) -> Vec<f64> {
        self.per_outcome
            .iter()
            .map(|m| {
                let n = m.nrows();
                let mut worst = 0.0_f64;
                for h in 0..n {
                    for k in 0..n {
                        if h != k {
                            worst = worst.max(m[(h, k)].norm());
                        }
                    }
                }
                worst
            })
            .collect()
    }
}

/// Check the residual-orthogonality condition for a pure/product set against
/// a claimed basis: for every outcome `j` and pair `h != k`,
/// `|<eta_j^h|eta_j^k>| < tol`. The full table is returned either way.
#[allow(clippy::needless_range_loop)] // gram entries index two residual tables at once
pub fn verify_pure_basis(
    set: &StateSet,
    basis: &MeasurementBasis,
    tol: f64,
) -> Result<(bool, ResidualTable)> {
    let coeffs = set.coeffs()?;
    let n = coeffs.len();
    let d_first = set.dim(basis.side);
    if basis.dim() != d_first {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} vectors for side dimension {d_first}",
            basis.dim()
        )));
    }
    let residuals: Vec<Vec<CVector>> = coeffs
        .iter()
        .map(|c| residual_rows(&PureState { coeff: c.clone() }, basis))
        .collect::<Result<Vec<_>>>()?;
    let mut per_outcome = Vec::with_capacity(d_first);
    let mut max_offdiag = 0.0_f64;
    let mut worst = None;
    for j in 0..d_first {
        let mut gram = CMatrix::zeros(n, n);
        for h in 0..n {
            for k in 0..n {
                let g: Complex64 = residuals[h][j].dotc(&residuals[k][j]);
                gram[(h, k)] = g;
                if h != k && g.norm() > max_offdiag {
                    max_offdiag = g.norm();
                    worst = Some((j, h, k));
                }
            }
        }
        per_outcome.push(gram);
    }
    Ok((
        max_offdiag < tol,
        ResidualTable {
            per_outcome,
            max_offdiag,
            worst,
        },
    ))
}

/// Result of the mixed-state block verification.
#[derive(Debug, Clone, Serialize)]
pub struct MixedVerify {
    pub ok: bool,
    /// Largest `|tr(rho^h_mm rho^k_mm)|` over outcomes `m` and pairs.
    pub max_block_overlap: f64,
    /// `(m, h, k)` achieving the maximum.
    pub worst: Option<(usize, usize, usize)>,
}

/// Check the block condition for a (possibly mixed) set against a claimed
/// basis: extract `rho^x_mm = (<m-bar| (x) I) rho_x (|m-bar> (x) I)` for every
/// basis ket and require all pairwise block traces below `tol`. Pure and
/// product members are embedded as rank-one densities. A Bob-side basis is
/// handled by exchanging the subsystem roles.
pub fn verify_mixed_basis(
    set: &StateSet,
    basis: &MeasurementBasis,
    tol: f64,
) -> Result<MixedVerify> {
    let (set, basis) = match basis.side {
        Side::Alice => (set.clone(), basis.clone()),
        Side::Bob => (set.swapped(), basis.with_side(Side::Alice)),
    };
    if basis.dim() != set.d_a {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} vectors for side dimension {}",
            basis.dim(),
            set.d_a
        )));
    }
    let (d_a, d_b) = (set.d_a, set.d_b);
    let densities: Vec<CMatrix> = set
        .states()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let rho = s.density();
            let dev = (&rho - rho.adjoint()).norm();
            if dev > 1e-8 {
                return Err(Error::NotDensityMatrix {
                    index: i,
                    reason: format!("not Hermitian (deviation {dev:.3e})"),
                });
            }
            let tr = rho.trace();
            if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
                return Err(Error::NotDensityMatrix {
                    index: i,
                    reason: format!("trace {tr}"),
                });
            }
            Ok(rho)
        })
        .collect::<Result<Vec<_>>>()?;

    let block = |rho: &CMatrix, m: &CVector| -> CMatrix {
        CMatrix::from_fn(d_b, d_b, |p, q| {
            let mut acc = Complex64::default();
            for i in 0..d_a {
                for j in 0..d_a {
                    acc += m[i].conj() * rho[(i * d_b + p, j * d_b + q)] * m[j];
                }
            }
            acc
        })
    };

    let n = densities.len();
    let mut max_overlap = 0.0_f64;
    let mut worst = None;
    for (m_idx, m) in basis.vectors().iter().enumerate() {
        let blocks: Vec<CMatrix> = densities.iter().map(|rho| block(rho, m)).collect();
        for h in 0..n {
            for k in (h + 1)..n {
                let t = (&blocks[h] * &blocks[k]).trace().norm();
                if t > max_overlap {
                    max_overlap = t;
                    worst = Some((m_idx, h, k));
                }
            }
        }
    }
    Ok(MixedVerify {
        ok: max_overlap < tol,
        max_block_overlap: max_overlap,
        worst,
    })
}

/// Which party (or parties) may move first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SidePolicy {
    AliceFirst,
    BobFirst,
    EitherFirst,
}

impl SidePolicy {
    pub fn sides(&self) -> &'static [Side] {
        match self {
            SidePolicy::AliceFirst => &[Side::Alice],
            SidePolicy::BobFirst => &[Side::Bob],
            SidePolicy::EitherFirst => &[Side::Alice, Side::Bob],
        }
    }
}

/// Pipeline configuration.
#[derive(Debug, Clone, Serialize)]
pub struct DecideConfig {
    pub tol: f64,
    pub seed: u64,
    pub restarts: usize,
    pub limits: SearchLimits,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            tol: DEFAULT_TOL,
            seed: DEFAULT_SEED,
            restarts: DEFAULT_RESTARTS,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    Distinguishable,
    Indistinguishable,
    Undetermined,
}

/// Pipeline stage that produced a conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stage {
    SmallSetSynthesis,
    QuadSynthesis,
    PatternSearch,
    OperatorSpace,
    Optimizer,
}

/// The evidence attached to a per-side conclusion.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A verified measurement basis and the protocol it induces.
    Basis {
        basis: MeasurementBasis,
        max_residual: f64,
        per_outcome_maxima: Vec<f64>,
        protocol: Box<Protocol>,
    },
    /// Operator-space triviality: solution dimension and identity residual.
    OperatorSpace(OperatorSpaceReport),
    /// Cover infeasibility from the combinatorial search.
    Cover(CoverCertificate),
    /// Best optimizer evidence; never a proof of indistinguishability.
    Optimizer {
        best_value: f64,
        restarts: usize,
        seed: u64,
    },
    None,
}

/// Per-side analysis outcome.
#[derive(Debug, Clone, Serialize)]
pub struct SideAnalysis {
    pub side: Side,
    pub status: VerdictStatus,
    pub stage: Option<Stage>,
    pub certificate: Certificate,
    pub notes: Vec<String>,
}

/// Combined verdict for a side policy.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub side_policy: SidePolicy,
    pub analyses: Vec<SideAnalysis>,
    pub warnings: Vec<String>,
}

impl Verdict {
    /// First verified basis among the analyses, if any.
    pub fn basis(&self) -> Option<&MeasurementBasis> {
        self.analyses.iter().find_map(|a| match &a.certificate {
            Certificate::Basis { basis, .. } => Some(basis),
            _ => None,
        })
    }

    /// First attached protocol among the analyses, if any.
    pub fn protocol(&self) -> Option<&Protocol> {
        self.analyses.iter().find_map(|a| match &a.certificate {
            Certificate::Basis { protocol, .. } => Some(protocol.as_ref()),
            _ => None,
        })
    }
}

/// Decide one-way distinguishability under `policy`.
///
/// The set must be globally orthogonal (anything else is already
/// indistinguishable under unrestricted operations and is reported as an
/// error naming the offending pair). Per side the pipeline runs, in order:
/// constructive fast paths for product sets of up to four states, the
/// combinatorial cover search, the operator-space certifier, and the seeded
/// numerical basis search. The first conclusive stage wins.
pub fn decide_one_way(set: &StateSet, policy: SidePolicy, config: &DecideConfig) -> Result<Verdict> {
    require_orthogonal(set, config.tol)?;
    let mut analyses = Vec::new();
    let mut warnings = near_threshold_warnings(set, config.tol);

    // Under a free choice of mover, the quadruple construction picks its own
    // side; accept it directly instead of walking both side pipelines.
    if policy == SidePolicy::EitherFirst && set.all_products() && set.len() == 4 {
        if let Ok(protocol) = synth_four(set, config.tol) {
            let side = protocol.first;
            if let Ok(analysis) = distinguishable_analysis(
                set,
                side,
                Stage::QuadSynthesis,
                protocol,
                config.tol,
                Vec::new(),
            ) {
                return Ok(Verdict {
                    status: VerdictStatus::Distinguishable,
                    side_policy: policy,
                    analyses: vec![analysis],
                    warnings,
                });
            }
        }
    }

    for &side in policy.sides() {
        let analysis = decide_side(set, side, config, &mut warnings);
        let stop = policy == SidePolicy::EitherFirst
            && analysis.status == VerdictStatus::Distinguishable;
        analyses.push(analysis);
        if stop {
            break;
        }
    }
    let status = if analyses
        .iter()
        .any(|a| a.status == VerdictStatus::Distinguishable)
    {
        VerdictStatus::Distinguishable
    } else if analyses
        .iter()
        .all(|a| a.status == VerdictStatus::Indistinguishable)
    {
        VerdictStatus::Indistinguishable
    } else {
        VerdictStatus::Undetermined
    };
    Ok(Verdict {
        status,
        side_policy: policy,
        analyses,
        warnings,
    })
}

fn near_threshold_warnings(set: &StateSet, tol: f64) -> Vec<String> {
    let mut warnings = Vec::new();
    let Ok(products) = set.products() else {
        return warnings;
    };
    for side in [Side::Alice, Side::Bob] {
        let kets = crate::states::product_side_vectors(&products, side);
        for h in 0..kets.len() {
            for k in (h + 1)..kets.len() {
                let ov = crate::numerics::inner(kets[h], kets[k]).norm();
                if ov >= tol / 10.0 && ov <= tol * 10.0 {
                    warnings.push(format!(
                        "near-threshold {side} overlap |<{h}|{k}>| = {ov:.3e} (tol {tol:.1e})"
                    ));
                }
            }
        }
    }
    warnings
}

fn distinguishable_analysis(
    set: &StateSet,
    side: Side,
    stage: Stage,
    protocol: Protocol,
    tol: f64,
    notes: Vec<String>,
) -> Result<SideAnalysis> {
    // Soundness gate: re-verify independently of the producing search.
    let (ok, table) = verify_pure_basis(set, &protocol.first_basis, tol)?;
    if !ok {
        return Err(Error::BasisVerificationFailed(table.max_offdiag));
    }
    Ok(SideAnalysis {
        side,
        status: VerdictStatus::Distinguishable,
        stage: Some(stage),
        certificate: Certificate::Basis {
            basis: protocol.first_basis.clone(),
            max_residual: table.max_offdiag,
            per_outcome_maxima: table.per_outcome_maxima(),
            protocol: Box::new(protocol),
        },
        notes,
    })
}

fn decide_side(
    set: &StateSet,
    side: Side,
    config: &DecideConfig,
    warnings: &mut Vec<String>,
) -> SideAnalysis {
    let tol = config.tol;
    let mut notes = Vec::new();

    if set.all_products() {
        let n = set.len();
        if n <= 3 {
            match synth_small(set, side, tol)
                .and_then(|p| distinguishable_analysis(set, side, Stage::SmallSetSynthesis, p, tol, notes.clone()))
            {
                Ok(analysis) => return analysis,
                Err(e) => notes.push(format!("small-set synthesis failed: {e}")),
            }
        } else if n == 4 {
            match synth_four(set, tol) {
                Ok(protocol) if protocol.first == side => {
                    match distinguishable_analysis(set, side, Stage::QuadSynthesis, protocol, tol, notes.clone()) {
                        Ok(analysis) => return analysis,
                        Err(e) => notes.push(format!("quad synthesis verification failed: {e}")),
                    }
                }
                Ok(protocol) => notes.push(format!(
                    "quad construction prefers {} first; continuing for {side}",
                    protocol.first
                )),
                Err(e) => notes.push(format!("quad synthesis failed: {e}")),
            }
        }

        match pattern_search(set, side, &config.limits, tol) {
            Ok(PatternOutcome::Distinguishable { basis }) => {
                match protocol_from_basis(set, &basis, tol)
                    .and_then(|p| distinguishable_analysis(set, side, Stage::PatternSearch, p, tol, notes.clone()))
                {
                    Ok(analysis) => return analysis,
                    Err(e) => notes.push(format!("pattern-search basis rejected: {e}")),
                }
            }
            Ok(PatternOutcome::Indistinguishable { certificate }) => {
                return SideAnalysis {
                    side,
                    status: VerdictStatus::Indistinguishable,
                    stage: Some(Stage::PatternSearch),
                    certificate: Certificate::Cover(certificate),
                    notes,
                }
            }
            Ok(PatternOutcome::Undetermined { reason }) => {
                notes.push(format!("pattern search inconclusive: {reason}"))
            }
            Err(e) => notes.push(format!("pattern search unavailable: {e}")),
        }
    } else {
        notes.push("set has non-product members; combinatorial stages skipped".into());
    }

    match op_operator_space(set, side, tol) {
        Ok(report) if report.trivial => {
            return SideAnalysis {
                side,
                status: VerdictStatus::Indistinguishable,
                stage: Some(Stage::OperatorSpace),
                certificate: Certificate::OperatorSpace(report),
                notes,
            }
        }
        Ok(report) => notes.push(format!(
            "operator space has dimension {} (nontrivial)",
            report.dimension
        )),
        Err(e) => notes.push(format!("operator-space stage unavailable: {e}")),
    }

    match optimizer_search(set, side, config.restarts, config.seed, tol) {
        Ok(OptimizerOutcome::Distinguishable { basis, best_value }) => {
            match protocol_from_basis(set, &basis, tol)
                .and_then(|p| distinguishable_analysis(set, side, Stage::Optimizer, p, tol, notes.clone()))
            {
                Ok(analysis) => {
                    let _ = best_value;
                    return analysis;
                }
                Err(e) => notes.push(format!("optimizer basis rejected: {e}")),
            }
        }
        Ok(OptimizerOutcome::Undetermined { best_value }) => {
            return SideAnalysis {
                side,
                status: VerdictStatus::Undetermined,
                stage: Some(Stage::Optimizer),
                certificate: Certificate::Optimizer {
                    best_value,
                    restarts: config.restarts,
                    seed: config.seed,
                },
                notes,
            }
        }
        Err(e) => {
            warnings.push(format!("optimizer stage failed on {side}: {e}"));
        }
    }

    SideAnalysis {
        side,
        status: VerdictStatus::Undetermined,
        stage: None,
        certificate: Certificate::None,
        notes,
    }
}
