//! Multi-start Nelder-Mead over the U(d) chart.
//!
//! The objectives in this crate (residual-overlap sums over a measurement
//! basis) are smooth but multimodal on U(d), so the minimizer runs a fixed
//! number of independent local descents from seeded random starts and keeps
//! the best value. For a fixed seed the result is fully deterministic; ties
//! are broken by the lowest restart index.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UnitaryParams;

const MAX_ITERS_PER_DIM: usize = 600;
const DIAMETER_TOL: f64 = 1e-11;
const INITIAL_STEP: f64 = 0.4;

/// Minimize `objective` over the U(`dim`) chart with `restarts` independent
/// Nelder-Mead descents (restart 0 starts at the identity, the rest at
/// seeded uniform random points). Returns the best parameters and value.
pub fn minimize<F>(objective: F, dim: usize, restarts: usize, seed: u64) -> (UnitaryParams, f64)
where
    F: Fn(&UnitaryParams) -> f64,
{
    let n = UnitaryParams::param_count(dim);
    let restarts = restarts.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for r in 0..restarts {
        let x0: Vec<f64> = if r == 0 {
            vec![0.0; n]
        } else {
            (0..n)
                .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
                .collect()
        };
        let eval = |x: &[f64]| {
            objective(&UnitaryParams {
                angles: x.to_vec(),
                dim,
            })
        };
        let (x, f) = nelder_mead(&eval, &x0, MAX_ITERS_PER_DIM * n);
        match &best {
            Some((_, fb)) if f >= *fb => {}
            _ => best = Some((x, f)),
        }
    }
    let (x, f) = best.expect("restarts >= 1");
    (
        UnitaryParams {
            angles: x,
            dim,
        },
        f,
    )
}

#[allow(clippy::needless_range_loop)] // simplex rows are indexed against row 0
fn nelder_mead<F>(f: &F, x0: &[f64], max_iters: usize) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += INITIAL_STEP;
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();

    for _ in 0..max_iters {
        // Sort simplex by value (stable, so equal values keep insertion order).
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let diameter = simplex[1..]
            .iter()
            .map(|x| {
                x.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0_f64, f64::max)
            })
            .fold(0.0_f64, f64::max);
        if diameter < DIAMETER_TOL {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|x| x[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let f_best = values[0];
        let f_second_worst = values[n - 1];
        let f_worst = values[n];

        let reflected: Vec<f64> = (0..n)
            .map(|j| centroid[j] + alpha * (centroid[j] - worst[j]))
            .collect();
        let f_reflected = f(&reflected);

        if f_reflected < f_best {
            let expanded: Vec<f64> = (0..n)
                .map(|j| centroid[j] + gamma * (reflected[j] - centroid[j]))
                .collect();
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[n] = expanded;
                values[n] = f_expanded;
            } else {
                simplex[n] = reflected;
                values[n] = f_reflected;
            }
        } else if f_reflected < f_second_worst {
            simplex[n] = reflected;
            values[n] = f_reflected;
        } else {
            let (pivot, f_pivot) = if f_reflected < f_worst {
                (&reflected, f_reflected)
            } else {
                (&worst, f_worst)
            };
            let contracted: Vec<f64> = (0..n)
                .map(|j| centroid[j] + rho * (pivot[j] - centroid[j]))
                .collect();
            let f_contracted = f(&contracted);
            if f_contracted < f_pivot {
                simplex[n] = contracted;
                values[n] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                for i in 1..=n {
                    for j in 0..n {
                        simplex[i][j] = simplex[0][j] + sigma * (simplex[i][j] - simplex[0][j]);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }

    let mut best_idx = 0;
    for i in 1..=n {
        if values[i] < values[best_idx] {
            best_idx = i;
        }
    }
    (simplex[best_idx].clone(), values[best_idx])
}
