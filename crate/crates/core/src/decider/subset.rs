//! Smallest certified-indistinguishable subset search.
//!
//! Any subset of a distinguishable set is distinguishable, so exhibiting one
//! certified-indistinguishable subset settles the whole set. Subsets are
//! enumerated by increasing size, lexicographically within a size, and each
//! is run through the cover search and the operator-space certifier; the
//! first certificate wins.

use serde::Serialize;

use crate::error::Result;
use crate::states::{globally_distinguishable, StateSet};
use crate::Side;

use super::{op_operator_space, pattern_search, Certificate, PatternOutcome, SearchLimits};

/// A certified subset.
#[derive(Debug, Clone, Serialize)]
pub struct SubsetCertificate {
    pub side: Side,
    /// Indices into the parent set, ascending.
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    /// The indistinguishability certificate for the subset (cover or
    /// operator-space).
    pub certificate: Certificate,
}

/// Search outcome.
#[derive(Debug, Clone, Serialize)]
pub struct SubsetSearch {
    pub found: Option<SubsetCertificate>,
    /// True iff every subset up to the size cap was examined.
    pub exhausted: bool,
    pub subsets_examined: usize,
}

/// Lexicographic k-combinations of `0..n`.
struct Combinations {
    n: usize,
    indices: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            indices: (0..k).collect(),
            started: false,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let k = self.indices.len();
        if k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.indices.clone());
        }
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.indices[i] < self.n - (k - i) {
                self.indices[i] += 1;
                for j in (i + 1)..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                return Some(self.indices.clone());
            }
        }
    }
}

/// Find the smallest subset of `set` that is certified one-way
/// indistinguishable with `side` going first, scanning sizes `2..=max_size`.
/// `max_examined` caps the total number of subsets tried.
pub fn find_indistinguishable_subset(
    set: &StateSet,
    side: Side,
    max_size: usize,
    limits: &SearchLimits,
    tol: f64,
    max_examined: usize,
) -> Result<SubsetSearch> {
    let n = set.len();
    let mut examined = 0usize;
    for size in 2..=max_size.min(n) {
        for indices in Combinations::new(n, size) {
            if examined >= max_examined {
                return Ok(SubsetSearch {
                    found: None,
                    exhausted: false,
                    subsets_examined: examined,
                });
            }
            examined += 1;
            let sub = set.subset(&indices)?;
            if !globally_distinguishable(&sub, tol).orthogonal {
                continue;
            }
            if sub.all_products() {
                if let Ok(PatternOutcome::Indistinguishable { certificate }) =
                    pattern_search(&sub, side, limits, tol)
                {
                    return Ok(SubsetSearch {
                        found: Some(SubsetCertificate {
                            side,
                            labels: sub.labels().to_vec(),
                            indices,
                            certificate: Certificate::Cover(certificate),
                        }),
                        exhausted: true,
                        subsets_examined: examined,
                    });
                }
            }
            if let Ok(report) = op_operator_space(&sub, side, tol) {
                if report.trivial {
                    return Ok(SubsetSearch {
                        found: Some(SubsetCertificate {
                            side,
                            labels: sub.labels().to_vec(),
                            indices,
                            certificate: Certificate::OperatorSpace(report),
                        }),
                        exhausted: true,
                        subsets_examined: examined,
                    });
                }
            }
        }
    }
    Ok(SubsetSearch {
        found: None,
        exhausted: true,
        subsets_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_named, make_tiling, NamedSet, TilingParams};

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 3).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn tiling_contains_a_small_certified_subset() {
        let set = make_tiling(TilingParams { l_a: 1, l_b: 1 }).unwrap();
        let search = find_indistinguishable_subset(
            &set,
            Side::Alice,
            6,
            &SearchLimits::default(),
            1e-9,
            1_000_000,
        )
        .unwrap();
        let found = search.found.expect("tiling has an indistinguishable subset");
        assert!(found.indices.len() <= 6);
    }

    #[test]
    fn quad_3x2_returns_the_whole_set() {
        let set = make_named(NamedSet::Quad3x2);
        let search = find_indistinguishable_subset(
            &set,
            Side::Alice,
            6,
            &SearchLimits::default(),
            1e-9,
            1_000_000,
        )
        .unwrap();
        let found = search.found.expect("quad is its own minimal witness");
        assert_eq!(found.indices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn distinguishable_triples_have_no_witness() {
        let set = make_named(NamedSet::Quad3x2).subset(&[0, 1, 2]).unwrap();
        let search = find_indistinguishable_subset(
            &set,
            Side::Alice,
            6,
            &SearchLimits::default(),
            1e-9,
            1_000_000,
        )
        .unwrap();
        assert!(search.found.is_none());
        assert!(search.exhausted);
    }

    #[test]
    fn cap_reports_not_exhausted() {
        let set = make_tiling(TilingParams { l_a: 1, l_b: 1 }).unwrap();
        let search = find_indistinguishable_subset(
            &set,
            Side::Alice,
            6,
            &SearchLimits::default(),
            1e-9,
            3,
        )
        .unwrap();
        assert!(!search.exhausted);
        assert!(search.found.is_none());
    }
}
