//! Seeded generation of random pairwise-orthogonal product sets.
//!
//! For every pair of states one side is chosen to carry the orthogonality;
//! each new Alice (Bob) ket is then drawn uniformly from the orthogonal
//! complement of the already-constrained kets on that side. Infeasible coin
//! patterns (complement of dimension zero) are redrawn.

use rand::{Rng, RngExt};

use crate::error::{Error, Result};
use crate::numerics::{c, gram_schmidt, orthocomplement, CVector};

use super::{ProductState, State, StateSet};

fn random_ket<R: Rng>(dim: usize, rng: &mut R) -> CVector {
    // Gaussian-ish via sums of uniforms is not rotation invariant; use
    // Box-Muller for a proper isotropic draw.
    let mut v = CVector::zeros(dim);
    for i in 0..dim {
        v[i] = c(standard_normal(rng), standard_normal(rng));
    }
    let n = v.norm();
    if n == 0.0 {
        return random_ket(dim, rng);
    }
    v / crate::numerics::cr(n)
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn random_ket_in_span<R: Rng>(span: &[CVector], rng: &mut R) -> CVector {
    let dim = span[0].len();
    let mut v = CVector::zeros(dim);
    for b in span {
        v += b * c(standard_normal(rng), standard_normal(rng));
    }
    let n = v.norm();
    if n < 1e-12 {
        return random_ket_in_span(span, rng);
    }
    v / crate::numerics::cr(n)
}

/// Draw `n` pairwise globally orthogonal product states on `C^dA x C^dB`.
/// Returns an error if no feasible orthogonality pattern is found within the
/// retry budget (only possible when `n` is too large for the dimensions).
pub fn random_orthogonal_products<R: Rng>(
    d_a: usize,
    d_b: usize,
    n: usize,
    rng: &mut R,
) -> Result<StateSet> {
    'attempt: for _ in 0..200 {
        let mut kets_a: Vec<CVector> = Vec::with_capacity(n);
        let mut kets_b: Vec<CVector> = Vec::with_capacity(n);
        for i in 0..n {
            // For each earlier state pick which side enforces orthogonality.
            let coins: Vec<bool> = (0..i).map(|_| rng.random_bool(0.5)).collect();
            let constrain =
                |kets: &[CVector], pick_a: bool| -> Vec<CVector> {
                    coins
                        .iter()
                        .enumerate()
                        .filter(|&(_, &ca)| ca == pick_a)
                        .map(|(j, _)| kets[j].clone())
                        .collect()
                };
            let need_a = constrain(&kets_a, true);
            let need_b = constrain(&kets_b, false);
            let mut draw = |need: &[CVector], dim: usize| -> Result<Option<CVector>> {
                if need.is_empty() {
                    return Ok(Some(random_ket(dim, rng)));
                }
                let span = orthocomplement(&gram_schmidt(need, 1e-9)?, dim, 1e-9);
                if span.is_empty() {
                    return Ok(None);
                }
                Ok(Some(random_ket_in_span(&span, rng)))
            };
            let (Some(ka), Some(kb)) = (draw(&need_a, d_a)?, draw(&need_b, d_b)?) else {
                continue 'attempt;
            };
            kets_a.push(ka);
            kets_b.push(kb);
        }
        let states = kets_a
            .into_iter()
            .zip(kets_b)
            .map(|(a, b)| Ok(State::Product(ProductState::new(a, b)?)))
            .collect::<Result<Vec<_>>>()?;
        return StateSet::new(d_a, d_b, states, Vec::new());
    }
    Err(Error::InvalidParams(format!(
        "no orthogonal product {n}-set found in C^{d_a} x C^{d_b} within the retry budget"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::globally_distinguishable;
    use rand::SeedableRng;

    #[test]
    fn generated_sets_are_orthogonal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (da, db, n) in [(2, 2, 3), (2, 3, 4), (3, 3, 4), (4, 2, 3)] {
            let set = random_orthogonal_products(da, db, n, &mut rng).unwrap();
            assert_eq!(set.len(), n);
            let report = globally_distinguishable(&set, 1e-9);
            assert!(report.orthogonal, "overlap {:.3e}", report.max_overlap);
        }
    }

    #[test]
    fn isotropic_draws_are_normalized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let v = random_ket(4, &mut rng);
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }
}
