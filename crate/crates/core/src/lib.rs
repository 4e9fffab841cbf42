//! One-way LOCC distinguishability of bipartite quantum state sets.
//!
//! `locclab` decides whether a set of orthogonal bipartite states can be
//! perfectly distinguished by one-way local operations and classical
//! communication (one party measures, announces the outcome, the other
//! finishes), and produces machine-checkable certificates either way:
//!
//! - **Distinguishable**: an orthonormal first-measurement basis under which
//!   every outcome leaves the conditional states on the other side pairwise
//!   orthogonal, together with an executable [`protocol::Protocol`] whose
//!   exact simulation identifies every state with probability 1.
//! - **Indistinguishable**: either a cover certificate (every admissible
//!   first-measurement direction is excluded by rank counting over the
//!   conflict graph) or an operator-space certificate (the only Hermitian
//!   operator compatible with orthogonality preservation is a multiple of
//!   the identity).
//!
//! The crate is organised as a small deterministic linear-algebra kernel
//! ([`numerics`]), a state-set model with generators for the standard tiling
//! and named families ([`states`]), per-side orthogonality structure
//! ([`conflict`]), the decision pipeline ([`decider`]), protocol synthesis
//! and exact simulation ([`protocol`]), and a CLI ([`cli`]).
//!
//! # Quick start
//!
//! ```
//! use locclab::decider::{decide_one_way, DecideConfig, SidePolicy, VerdictStatus};
//! use locclab::protocol::simulate;
//! use locclab::states::{make_named, NamedSet};
//!
//! let config = DecideConfig::default();
//!
//! // Three Bell states: no one-way protocol exists for either mover.
//! let bell3 = make_named(NamedSet::Bell3);
//! let verdict = decide_one_way(&bell3, SidePolicy::EitherFirst, &config).unwrap();
//! assert_eq!(verdict.status, VerdictStatus::Indistinguishable);
//!
//! // The asymmetric 3x2 quadruple: Bob first works, and the synthesized
//! // protocol identifies every state with probability 1, exactly.
//! let quad = make_named(NamedSet::Quad3x2);
//! let verdict = decide_one_way(&quad, SidePolicy::BobFirst, &config).unwrap();
//! assert_eq!(verdict.status, VerdictStatus::Distinguishable);
//! let report = simulate(verdict.protocol().unwrap(), &quad).unwrap();
//! assert!(report.min_success > 1.0 - 1e-9);
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod conflict;
pub mod decider;
pub mod error;
pub mod numerics;
pub mod protocol;
pub(crate) mod ser;
pub mod states;

pub use error::{Error, Result};

/// Default tolerance for "equals zero" decisions.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance for unitarity checks.
pub const UNITARITY_TOL: f64 = 1e-12;
/// Default seed for seeded searches.
pub const DEFAULT_SEED: u64 = 42;
/// Default number of local-descent restarts.
pub const DEFAULT_RESTARTS: usize = 32;
/// Default maximum subset size explored by the indistinguishable-subset finder.
pub const DEFAULT_MAX_SUBSET: usize = 6;

/// Which party acts first (or is being analysed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Alice,
    Bob,
}

impl Side {
    /// The other party.
    pub fn other(self) -> Side {
        match self {
            Side::Alice => Side::Bob,
            Side::Bob => Side::Alice,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Alice => write!(f, "Alice"),
            Side::Bob => write!(f, "Bob"),
        }
    }
}
