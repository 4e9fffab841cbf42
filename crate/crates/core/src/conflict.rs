//! Per-side orthogonality structure of product-state sets and the quadruple
//! case analysis.
//!
//! For a measuring side, an *ortho edge* joins two states whose kets on that
//! side are orthogonal; a *conflict pair* joins two states whose kets on the
//! **other** side are not orthogonal, so the measuring side must separate
//! them. In a globally orthogonal product set every conflict pair is also an
//! ortho edge on the measuring side.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::inner;
use crate::states::{product_side_vectors, StateSet};
use crate::Side;

/// Same-side orthogonality and cross-side conflict structure of a product set.
#[derive(Debug, Clone, Serialize)]
pub struct ConflictGraph {
    /// Number of states.
    pub n: usize,
    /// The measuring side this graph describes.
    pub side: Side,
    /// Pairs `(h, k)`, `h < k`, whose kets on `side` are orthogonal.
    pub ortho_edges: BTreeSet<(usize, usize)>,
    /// Pairs whose kets on the *other* side are non-orthogonal.
    pub conflict_pairs: BTreeSet<(usize, usize)>,
}

impl ConflictGraph {
    pub fn has_ortho(&self, h: usize, k: usize) -> bool {
        let key = if h < k { (h, k) } else { (k, h) };
        self.ortho_edges.contains(&key)
    }
}

/// Build the conflict graph of a product set for the given measuring side.
pub fn build_conflict_graph(set: &StateSet, side: Side, tol: f64) -> Result<ConflictGraph> {
    let products = set.products()?;
    let same = product_side_vectors(&products, side);
    let other = product_side_vectors(&products, side.other());
    let n = products.len();
    let mut ortho_edges = BTreeSet::new();
    let mut conflict_pairs = BTreeSet::new();
    for h in 0..n {
        for k in (h + 1)..n {
            if inner(same[h], same[k]).norm() < tol {
                ortho_edges.insert((h, k));
            }
            if inner(other[h], other[k]).norm() >= tol {
                conflict_pairs.insert((h, k));
            }
        }
    }
    Ok(ConflictGraph {
        n,
        side,
        ortho_edges,
        conflict_pairs,
    })
}

/// Which constructive branch applies to a globally orthogonal product
/// quadruple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuadCase {
    /// All four kets mutually orthogonal on the first mover's side.
    AFull,
    /// Three kets mutually orthogonal on Alice's side.
    ATriangle,
    /// Three kets mutually orthogonal on Bob's side.
    BTriangle,
    /// Four-cycle of ortho edges on the mover's side, diagonals orthogonal
    /// on the other side.
    CycleG,
    /// Path pattern on the mover's side, complementary path on the other.
    PathH,
}

/// Classification result: the case, the side that moves first under the
/// matching construction, and the state relabeling that exhibits the pattern.
#[derive(Debug, Clone, Serialize)]
pub struct QuadClassification {
    pub case: QuadCase,
    pub first: Side,
    pub relabel: [usize; 4],
}

const ALL_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            if b == a {
                continue;
            }
            for c in 0..4 {
                if c == a || c == b {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

/// Classify a globally orthogonal product quadruple by trying the branches in
/// the fixed order `AFull`, `ATriangle`, `BTriangle`, `CycleG`, `PathH` and
/// returning the first match (searching over state relabelings and, for the
/// last two, over the mover side).
pub fn classify_quad(g_a: &ConflictGraph, g_b: &ConflictGraph) -> Result<QuadClassification> {
    if g_a.n != 4 || g_b.n != 4 {
        return Err(Error::InvalidParams(format!(
            "quadruple classification requires 4 states, got {} and {}",
            g_a.n, g_b.n
        )));
    }
    if g_a.side != Side::Alice || g_b.side != Side::Bob {
        return Err(Error::InvalidParams(
            "expected graphs for sides Alice and Bob in that order".into(),
        ));
    }

    if ALL_PAIRS.iter().all(|&(h, k)| g_a.has_ortho(h, k)) {
        return Ok(QuadClassification {
            case: QuadCase::AFull,
            first: Side::Alice,
            relabel: [0, 1, 2, 3],
        });
    }
    for (graph, case, side) in [
        (g_a, QuadCase::ATriangle, Side::Alice),
        (g_b, QuadCase::BTriangle, Side::Bob),
    ] {
        for triple in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            if graph.has_ortho(triple[0], triple[1])
                && graph.has_ortho(triple[0], triple[2])
                && graph.has_ortho(triple[1], triple[2])
            {
                let fourth = (0..4).find(|i| !triple.contains(i)).expect("one left");
                return Ok(QuadClassification {
                    case,
                    first: side,
                    relabel: [triple[0], triple[1], triple[2], fourth],
                });
            }
        }
    }
    // Cycle: mover edges (p0,p1), (p0,p2), (p1,p3), (p2,p3); other side must
    // make the diagonals (p0,p3), (p1,p2) orthogonal.
    for (mover, other, side) in [(g_a, g_b, Side::Alice), (g_b, g_a, Side::Bob)] {
        for p in permutations4() {
            if mover.has_ortho(p[0], p[1])
                && mover.has_ortho(p[0], p[2])
                && mover.has_ortho(p[1], p[3])
                && mover.has_ortho(p[2], p[3])
                && other.has_ortho(p[0], p[3])
                && other.has_ortho(p[1], p[2])
            {
                return Ok(QuadClassification {
                    case: QuadCase::CycleG,
                    first: side,
                    relabel: p,
                });
            }
        }
    }
    // Path: mover edges (p0,p2), (p0,p3), (p1,p2); the complementary pairs
    // (p0,p1), (p1,p3), (p2,p3) orthogonal on the other side.
    for (mover, other, side) in [(g_a, g_b, Side::Alice), (g_b, g_a, Side::Bob)] {
        for p in permutations4() {
            if mover.has_ortho(p[0], p[2])
                && mover.has_ortho(p[0], p[3])
                && mover.has_ortho(p[1], p[2])
                && other.has_ortho(p[0], p[1])
                && other.has_ortho(p[1], p[3])
                && other.has_ortho(p[2], p[3])
            {
                return Ok(QuadClassification {
                    case: QuadCase::PathH,
                    first: side,
                    relabel: p,
                });
            }
        }
    }
    Err(Error::Internal(
        "orthogonal product quadruple matched no branch; input is likely not globally orthogonal"
            .into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_named, NamedSet, ProductState, State, StateSet};

    fn product_set(d_a: usize, d_b: usize, parts: &[(&[f64], &[f64])]) -> StateSet {
        let states = parts
            .iter()
            .map(|(a, b)| {
                let mk = |xs: &[f64], d: usize| {
                    let mut v = crate::numerics::CVector::zeros(d);
                    for (i, &x) in xs.iter().enumerate() {
                        v[i] = crate::numerics::cr(x);
                    }
                    let n = v.norm();
                    v / crate::numerics::cr(n)
                };
                State::Product(ProductState::new(mk(a, d_a), mk(b, d_b)).unwrap())
            })
            .collect();
        StateSet::new(d_a, d_b, states, Vec::new()).unwrap()
    }

    #[test]
    fn quad_3x2_conflicts_and_edges() {
        let set = make_named(NamedSet::Quad3x2);
        let g = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
        let conflicts: Vec<_> = g.conflict_pairs.iter().copied().collect();
        assert_eq!(conflicts, vec![(0, 1), (2, 3)]);
        assert!(g.has_ortho(0, 1));
        assert!(g.has_ortho(2, 3));
        assert!(!g.has_ortho(0, 2));
        // Bob side carries the four-cycle of ortho edges.
        let gb = build_conflict_graph(&set, Side::Bob, 1e-9).unwrap();
        let edges: Vec<_> = gb.ortho_edges.iter().copied().collect();
        assert_eq!(edges, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn penta_conflicts_form_the_five_cycle() {
        let set = make_named(NamedSet::Penta3x3);
        let g = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
        let expected: BTreeSet<(usize, usize)> =
            [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)].into_iter().collect();
        assert_eq!(g.conflict_pairs, expected);
        // Every conflict pair is an ortho edge on the measuring side.
        for &(h, k) in &g.conflict_pairs {
            assert!(g.has_ortho(h, k));
        }
    }

    #[test]
    fn entangled_members_are_rejected() {
        let set = make_named(NamedSet::Bell3);
        assert!(matches!(
            build_conflict_graph(&set, Side::Alice, 1e-9),
            Err(Error::NonProductState(0))
        ));
    }

    #[test]
    fn complementarity_for_orthogonal_sets() {
        for name in [NamedSet::Quad3x2, NamedSet::Groisman2x2, NamedSet::Penta3x3, NamedSet::Hex3x2] {
            let set = make_named(name);
            let ga = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
            let gb = build_conflict_graph(&set, Side::Bob, 1e-9).unwrap();
            for h in 0..set.len() {
                for k in (h + 1)..set.len() {
                    assert!(
                        ga.has_ortho(h, k) || gb.has_ortho(h, k),
                        "{name}: pair ({h},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn classify_full_alice_orthogonality() {
        let set = product_set(
            4,
            2,
            &[
                (&[1.0, 0.0, 0.0, 0.0], &[1.0, 0.0]),
                (&[0.0, 1.0, 0.0, 0.0], &[1.0, 1.0]),
                (&[0.0, 0.0, 1.0, 0.0], &[1.0, -1.0]),
                (&[0.0, 0.0, 0.0, 1.0], &[0.0, 1.0]),
            ],
        );
        let ga = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
        let gb = build_conflict_graph(&set, Side::Bob, 1e-9).unwrap();
        let c = classify_quad(&ga, &gb).unwrap();
        assert_eq!(c.case, QuadCase::AFull);
        assert_eq!(c.first, Side::Alice);
    }

    #[test]
    fn classify_cycle_pattern() {
        // Alice edges form the 4-cycle {01, 02, 13, 23} with no triangle;
        // Bob covers the diagonals {03, 12}.
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
        let ga = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
        let gb = build_conflict_graph(&set, Side::Bob, 1e-9).unwrap();
        let expected: BTreeSet<(usize, usize)> =
            [(0, 1), (0, 2), (1, 3), (2, 3)].into_iter().collect();
        assert_eq!(ga.ortho_edges, expected);
        let c = classify_quad(&ga, &gb).unwrap();
        assert_eq!(c.case, QuadCase::CycleG);
        assert_eq!(c.first, Side::Alice);
    }

    #[test]
    fn classify_path_pattern() {
        // Alice edges {02, 03, 12} (a path), Bob edges {01, 13, 23}.
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
        let ga = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
        let gb = build_conflict_graph(&set, Side::Bob, 1e-9).unwrap();
        let expected: BTreeSet<(usize, usize)> = [(0, 2), (0, 3), (1, 2)].into_iter().collect();
        assert_eq!(ga.ortho_edges, expected);
        let expected_b: BTreeSet<(usize, usize)> = [(0, 1), (1, 3), (2, 3)].into_iter().collect();
        assert_eq!(gb.ortho_edges, expected_b);
        let c = classify_quad(&ga, &gb).unwrap();
        assert_eq!(c.case, QuadCase::PathH);
        assert_eq!(c.first, Side::Alice);
    }

    #[test]
    fn classify_quad_3x2_as_bob_cycle() {
        let set = make_named(NamedSet::Quad3x2);
        let ga = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
        let gb = build_conflict_graph(&set, Side::Bob, 1e-9).unwrap();
        let c = classify_quad(&ga, &gb).unwrap();
        assert_eq!(c.case, QuadCase::CycleG);
        assert_eq!(c.first, Side::Bob);
    }

    #[test]
    fn classification_is_permutation_invariant() {
        let set = make_named(NamedSet::Quad3x2);
        let base = {
            let ga = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
            let gb = build_conflict_graph(&set, Side::Bob, 1e-9).unwrap();
            classify_quad(&ga, &gb).unwrap()
        };
        for perm in permutations4() {
            let relabeled = set.subset(&perm).unwrap();
            let ga = build_conflict_graph(&relabeled, Side::Alice, 1e-9).unwrap();
            let gb = build_conflict_graph(&relabeled, Side::Bob, 1e-9).unwrap();
            let c = classify_quad(&ga, &gb).unwrap();
            assert_eq!(c.case, base.case);
            assert_eq!(c.first, base.first);
        }
    }

    #[test]
    fn classify_rejects_wrong_size() {
        let set = make_named(NamedSet::Penta3x3);
        let ga = build_conflict_graph(&set, Side::Alice, 1e-9).unwrap();
        let gb = build_conflict_graph(&set, Side::Bob, 1e-9).unwrap();
        assert!(classify_quad(&ga, &gb).is_err());
    }
}
