use super::*;
use crate::decider::MeasurementBasis;
use crate::numerics::{basis_vector, c};
use crate::Side;

fn ket(entries: &[(f64, f64)]) -> CVector {
    let v = CVector::from_iterator(entries.len(), entries.iter().map(|&(re, im)| c(re, im)));
    let n = v.norm();
    v / cr(n)
}

#[test]
fn computational_pair_is_globally_orthogonal() {
    let set = StateSet::new(
        2,
        2,
        vec![
            State::Product(ProductState::new(basis_vector(2, 0), basis_vector(2, 0)).unwrap()),
            State::Product(ProductState::new(basis_vector(2, 1), basis_vector(2, 1)).unwrap()),
        ],
        Vec::new(),
    )
    .unwrap();
    let report = globally_distinguishable(&set, 1e-9);
    assert!(report.orthogonal);
    assert!(report.max_overlap < 1e-12);
}

#[test]
fn bell_triple_is_globally_orthogonal() {
    let set = make_named(NamedSet::Bell3);
    let report = globally_distinguishable(&set, 1e-9);
    assert!(report.orthogonal);
}

#[test]
fn overlapping_pair_reports_its_overlap() {
    let set = StateSet::new(
        2,
        2,
        vec![
            State::Product(
                ProductState::new(basis_vector(2, 0), ket(&[(1.0, 0.0), (1.0, 0.0)])).unwrap(),
            ),
            State::Product(ProductState::new(basis_vector(2, 0), basis_vector(2, 0)).unwrap()),
        ],
        Vec::new(),
    )
    .unwrap();
    let report = globally_distinguishable(&set, 1e-9);
    assert!(!report.orthogonal);
    assert!((report.max_overlap - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12);
    assert_eq!(report.worst_pair, Some((0, 1)));
}

#[test]
fn mixed_identical_states_overlap() {
    let rho = CMatrix::identity(4, 4) * cr(0.25);
    let set = StateSet::new(
        2,
        2,
        vec![
            State::Mixed(MixedState::new(rho.clone()).unwrap()),
            State::Mixed(MixedState::new(rho).unwrap()),
        ],
        Vec::new(),
    )
    .unwrap();
    assert!(!globally_distinguishable(&set, 1e-9).orthogonal);
}

#[test]
fn tiling_count_matches_closed_form() {
    for l_a in 1..=4usize {
        for l_b in l_a..=4usize {
            let p = TilingParams { l_a, l_b };
            let set = make_tiling(p).unwrap();
            assert_eq!(set.len(), p.expected_count(), "lA={l_a} lB={l_b}");
            assert!(set.labels().iter().all(|l| !l.contains("[OOR]")));
        }
    }
}

#[test]
fn tiling_11_has_eleven_states_in_c4xc4() {
    let set = make_tiling(TilingParams { l_a: 1, l_b: 1 }).unwrap();
    assert_eq!(set.len(), 11);
    assert_eq!((set.d_a, set.d_b), (4, 4));
}

#[test]
fn tiling_12_has_eighteen_states_in_c4xc7() {
    let set = make_tiling(TilingParams { l_a: 1, l_b: 2 }).unwrap();
    assert_eq!(set.len(), 18);
    assert_eq!((set.d_a, set.d_b), (4, 7));
}

#[test]
fn tilings_are_pairwise_orthogonal() {
    for l_a in 1..=3usize {
        for l_b in l_a..=3usize {
            let set = make_tiling(TilingParams { l_a, l_b }).unwrap();
            let report = globally_distinguishable(&set, 1e-10);
            assert!(
                report.orthogonal,
                "lA={l_a} lB={l_b}: overlap {:.3e} at {:?}",
                report.max_overlap, report.worst_pair
            );
        }
    }
}

#[test]
fn tiling_rejects_bad_params() {
    assert!(make_tiling(TilingParams { l_a: 2, l_b: 1 }).is_err());
    assert!(make_tiling(TilingParams { l_a: 0, l_b: 1 }).is_err());
}

#[test]
fn named_sets_are_globally_orthogonal() {
    for name in NamedSet::ALL {
        let set = make_named(name);
        let report = globally_distinguishable(&set, 1e-9);
        assert!(report.orthogonal, "{name}: overlap {:.3e}", report.max_overlap);
    }
}

#[test]
fn named_set_shapes() {
    assert_eq!(make_named(NamedSet::Bell3).len(), 3);
    let quad = make_named(NamedSet::Quad3x2);
    assert_eq!((quad.d_a, quad.d_b, quad.len()), (3, 2, 4));
    let penta = make_named(NamedSet::Penta3x3);
    assert_eq!((penta.d_a, penta.d_b, penta.len()), (3, 3, 5));
    assert_eq!(make_named(NamedSet::Hex3x2).len(), 6);
    assert_eq!(make_named(NamedSet::Groisman2x2).len(), 4);
}

#[test]
fn residuals_of_computational_product() {
    // |00> against the computational Alice basis: rows (1,0) and (0,0).
    let state = PureState::from(&ProductState::new(basis_vector(2, 0), basis_vector(2, 0)).unwrap());
    let basis = MeasurementBasis::computational(Side::Alice, 2);
    let rows = residual_rows(&state, &basis).unwrap();
    assert_eq!(rows.len(), 2);
    assert!((rows[0][0] - cr(1.0)).norm() < 1e-12);
    assert!(rows[0][1].norm() < 1e-12);
    assert!(rows[1].norm() < 1e-12);
}

#[test]
fn residuals_of_bell_state_have_schmidt_form() {
    let set = make_named(NamedSet::Bell3);
    let State::Pure(phi0) = &set.states()[0] else {
        panic!("bell3 stores pure states")
    };
    let basis = MeasurementBasis::computational(Side::Alice, 2);
    let rows = residual_rows(phi0, &basis).unwrap();
    let s = 1.0 / 2.0_f64.sqrt();
    assert!((rows[0][0] - cr(s)).norm() < 1e-12);
    assert!(rows[0][1].norm() < 1e-12);
    assert!(rows[1][0].norm() < 1e-12);
    assert!((rows[1][1] - cr(s)).norm() < 1e-12);
}

#[test]
fn residuals_in_rotated_basis_match_hand_expansion() {
    // Phi0 in the basis {|phi>, |phi-perp>} with phi = cos t |0> + e^{i d} sin t |1>.
    let (t, d) = (0.7_f64, 1.3_f64);
    let phi = CVector::from_iterator(2, [c(t.cos(), 0.0), c(d.cos(), d.sin()) * cr(t.sin())]);
    let perp = CVector::from_iterator(2, [c(-(d.cos()), d.sin()) * cr(t.sin()), c(t.cos(), 0.0)]);
    let basis = MeasurementBasis::new(Side::Alice, vec![phi.clone(), perp.clone()]).unwrap();
    let set = make_named(NamedSet::Bell3);
    let State::Pure(phi0) = &set.states()[0] else {
        panic!()
    };
    let rows = residual_rows(phi0, &basis).unwrap();
    // eta_phi = (cos^2 t + e^{-2id} sin^2 t)|phi> + (e^{-id} - e^{id}) sin t cos t |phi-perp>,
    // scaled by 1/sqrt(2).
    let e_m2 = c((2.0 * d).cos(), -(2.0 * d).sin());
    let e_m = c(d.cos(), -d.sin());
    let coeff_phi = (cr(t.cos().powi(2)) + e_m2 * cr(t.sin().powi(2))) * cr(1.0 / 2.0_f64.sqrt());
    let coeff_perp = (e_m - e_m.conj()) * cr(t.sin() * t.cos() / 2.0_f64.sqrt());
    let expected = &phi * coeff_phi + &perp * coeff_perp;
    assert!((&rows[0] - &expected).norm() < 1e-12);
}

#[test]
fn residual_mass_sums_to_one_and_reassembles() {
    let set = make_named(NamedSet::Penta3x3);
    let basis = MeasurementBasis::new(
        Side::Bob,
        vec![
            ket(&[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]),
            ket(&[(1.0, 0.0), (-1.0, 0.0), (0.0, 0.0)]),
            ket(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]),
        ],
    )
    .unwrap();
    for state in set.states() {
        let pure = match state {
            State::Product(p) => PureState::from(p),
            State::Pure(p) => p.clone(),
            State::Mixed(_) => unreachable!(),
        };
        let rows = residual_rows(&pure, &basis).unwrap();
        let mass: f64 = rows.iter().map(|r| r.norm_squared()).sum();
        assert!((mass - 1.0).abs() < 1e-9);
        let back = assemble_from_residuals(&rows, &basis, set.d_a, set.d_b).unwrap();
        assert!((back.coeff - pure.coeff).norm() < 1e-10);
    }
}

#[test]
fn swap_exchanges_roles() {
    let set = make_named(NamedSet::Quad3x2);
    let swapped = set.swapped();
    assert_eq!((swapped.d_a, swapped.d_b), (2, 3));
    let report = globally_distinguishable(&swapped, 1e-9);
    assert!(report.orthogonal);
    let State::Product(p) = &swapped.states()[0] else {
        panic!()
    };
    assert_eq!(p.a.len(), 2);
    assert_eq!(p.b.len(), 3);
}

#[test]
fn mixed_swap_preserves_block_structure() {
    let set = make_named(NamedSet::Bell3);
    let rho_set = StateSet::new(
        2,
        2,
        set.states().iter().map(|s| State::Mixed(MixedState::new(s.density()).unwrap())).collect(),
        Vec::new(),
    )
    .unwrap();
    let swapped = rho_set.swapped();
    // Bell states are symmetric under swap up to relabeling; traces must match.
    for (orig, sw) in rho_set.states().iter().zip(swapped.states()) {
        let (State::Mixed(a), State::Mixed(b)) = (orig, sw) else {
            panic!()
        };
        assert!((a.rho.trace() - b.rho.trace()).norm() < 1e-12);
        assert!(((&a.rho * &a.rho).trace() - (&b.rho * &b.rho).trace()).norm() < 1e-12);
    }
}

#[test]
fn subset_selects_by_index() {
    let set = make_named(NamedSet::Hex3x2);
    let sub = set.subset(&[0, 2, 5]).unwrap();
    assert_eq!(sub.len(), 3);
    assert_eq!(sub.labels(), &["Psi1".to_string(), "Psi3".into(), "Psi6".into()]);
    assert!(set.subset(&[9]).is_err());
}

#[test]
fn density_embedding_is_rank_one() {
    let set = make_named(NamedSet::Quad3x2);
    for s in set.states() {
        let rho = s.density();
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        assert!(((&rho * &rho).trace().re - 1.0).abs() < 1e-12);
    }
}

mod properties {
    use super::*;
    use crate::numerics::gram_schmidt;
    use proptest::prelude::*;
    use rand::{RngExt, SeedableRng};

    fn random_pure(d_a: usize, d_b: usize, rng: &mut rand_chacha::ChaCha8Rng) -> PureState {
        let coeff = CMatrix::from_fn(d_a, d_b, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        PureState::normalized(coeff).expect("nonzero with probability one")
    }

    proptest! {
        // Residual decomposition against a random basis is lossless and
        // mass-preserving on both sides.
        #[test]
        fn residual_round_trip(seed in 0u64..300) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (d_a, d_b) = (2 + (seed % 3) as usize, 2 + (seed % 2) as usize);
            let state = random_pure(d_a, d_b, &mut rng);
            for side in [Side::Alice, Side::Bob] {
                let dim = if side == Side::Alice { d_a } else { d_b };
                let raw: Vec<CVector> = (0..dim)
                    .map(|_| {
                        CVector::from_iterator(dim, (0..dim).map(|_| {
                            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                        }))
                    })
                    .collect();
                let ortho = gram_schmidt(&raw, 1e-9).unwrap();
                prop_assume!(ortho.len() == dim);
                let basis = MeasurementBasis::new(side, ortho).unwrap();
                let rows = residual_rows(&state, &basis).unwrap();
                let mass: f64 = rows.iter().map(|r| r.norm_squared()).sum();
                prop_assert!((mass - 1.0).abs() < 1e-9);
                let back = assemble_from_residuals(&rows, &basis, d_a, d_b).unwrap();
                prop_assert!((back.coeff - &state.coeff).norm() < 1e-10);
            }
        }

        // JSON round trip preserves random product sets exactly enough to
        // re-serialize byte-identically.
        #[test]
        fn json_round_trip(seed in 0u64..200) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (d_a, d_b) = (2 + (seed % 2) as usize, 2 + (seed % 3) as usize);
            let n = 2 + (seed % 3) as usize;
            let set = random_orthogonal_products(d_a, d_b, n, &mut rng).unwrap();
            let text = state_set_to_json(&set);
            let back = state_set_from_json(&text).unwrap();
            prop_assert_eq!(state_set_to_json(&back), text);
        }
    }
}
