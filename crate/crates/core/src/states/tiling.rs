//! Generator for the tiling families on `C^(3lA+1) x C^(3lB+1)`.
//!
//! Four families of orthogonal product states tile the computational grid:
//! two domino families (a three-level window `(1/2, +-1/sqrt2, 1/2)` on one
//! side against a computational ket on the other) and two stopper families of
//! computational product states along the column `|3lA-1>` and the row
//! `|3lB-1>`. The generated count is `4 lA lB + 7 lA + 3 lB - 3`.
//!
//! Emission order is deterministic: family 1 (Bob-side windows, sub-ranges
//! t=1 then t=2), family 2 (Alice-side windows, r=1 then r=2), family 3,
//! family 4; within a sub-range the printed index progressions, with `+`
//! before `-` for each window.

use crate::error::{Error, Result};
use crate::numerics::{basis_vector, cr, CVector};

use super::{ProductState, State, StateSet};

/// Tiling sizes `1 <= lA <= lB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilingParams {
    pub l_a: usize,
    pub l_b: usize,
}

impl TilingParams {
    pub fn new(l_a: usize, l_b: usize) -> Result<Self> {
        if l_a < 1 || l_a > l_b {
            return Err(Error::InvalidParams(format!(
                "tiling requires 1 <= lA <= lB, got lA={l_a}, lB={l_b}"
            )));
        }
        Ok(TilingParams { l_a, l_b })
    }

    /// Closed-form number of generated states.
    pub fn expected_count(&self) -> usize {
        4 * self.l_a * self.l_b + 7 * self.l_a + 3 * self.l_b - 3
    }
}

/// Three-level window `1/2 |start> + sign/sqrt(2) |start+1> + 1/2 |start+2>`
/// in dimension `dim`.
fn window(dim: usize, start: usize, plus: bool) -> CVector {
    let mut v = CVector::zeros(dim);
    let mid = if plus { 1.0 } else { -1.0 } / 2.0_f64.sqrt();
    v[start] = cr(0.5);
    v[start + 1] = cr(mid);
    v[start + 2] = cr(0.5);
    v
}

/// Generate the tiling set for the given sizes.
pub fn make_tiling(p: TilingParams) -> Result<StateSet> {
    let TilingParams { l_a, l_b } = TilingParams::new(p.l_a, p.l_b)?;
    let d_a = 3 * l_a + 1;
    let d_b = 3 * l_b + 1;
    let mut states = Vec::new();
    let mut labels = Vec::new();

    // Any window index escaping the grid is flagged in the label rather than
    // silently adjusted; the range arithmetic below keeps everything inside
    // for all valid (lA, lB).
    let flag = |ok: bool| if ok { "" } else { "[OOR]" };

    let mut push = |a: CVector, b: CVector, label: String| -> Result<()> {
        states.push(State::Product(ProductState::new(a, b)?));
        labels.push(label);
        Ok(())
    };

    // Family 1, t = 1: a = 0..lA-1; b = a, a+3, ..., 3lB - 2a - 3.
    for a in 0..l_a {
        let b_max = 3 * l_b - 2 * a - 3;
        let mut b = a;
        while b <= b_max {
            for plus in [true, false] {
                let sign = if plus { "+" } else { "-" };
                let ok = b + 2 < d_b;
                push(
                    basis_vector(d_a, a),
                    window(d_b, b, plus),
                    format!("F1{sign}:a={a},b={b}{}", flag(ok)),
                )?;
            }
            b += 3;
        }
    }
    // Family 1, t = 2: a = 3lA - 2m for m = 0..lA-1;
    // b = m+1, m+4, ..., 3lB - 2m - 2.
    for m in 0..l_a {
        let a = 3 * l_a - 2 * m;
        let b_max = 3 * l_b - 2 * m - 2;
        let mut b = m + 1;
        while b <= b_max {
            for plus in [true, false] {
                let sign = if plus { "+" } else { "-" };
                let ok = b + 2 < d_b;
                push(
                    basis_vector(d_a, a),
                    window(d_b, b, plus),
                    format!("F1{sign}:a={a},b={b}{}", flag(ok)),
                )?;
            }
            b += 3;
        }
    }
    // Family 2, r = 1: b = 0..lA-1; a = b+1, b+4, ..., 3lA - 2b - 2.
    for b in 0..l_a {
        let a_max = 3 * l_a - 2 * b - 2;
        let mut a = b + 1;
        while a <= a_max {
            for plus in [true, false] {
                let sign = if plus { "+" } else { "-" };
                let ok = a + 2 < d_a;
                push(
                    window(d_a, a, plus),
                    basis_vector(d_b, b),
                    format!("F2{sign}:a={a},b={b}{}", flag(ok)),
                )?;
            }
            a += 3;
        }
    }
    // Family 2, r = 2: b = 3lB - 2m for m = 0..lA-1;
    // a = m, m+3, ..., 3lA - 2m - 3.
    for m in 0..l_a {
        let b = 3 * l_b - 2 * m;
        let a_max = 3 * l_a - 2 * m - 3;
        let mut a = m;
        while a <= a_max {
            for plus in [true, false] {
                let sign = if plus { "+" } else { "-" };
                let ok = a + 2 < d_a;
                push(
                    window(d_a, a, plus),
                    basis_vector(d_b, b),
                    format!("F2{sign}:a={a},b={b}{}", flag(ok)),
                )?;
            }
            a += 3;
        }
    }
    // Family 3: |3lA - 1>_A |c>_B for c = 1..3lB-1.
    for c in 1..=(3 * l_b - 1) {
        push(
            basis_vector(d_a, 3 * l_a - 1),
            basis_vector(d_b, c),
            format!("F3:c={c}"),
        )?;
    }
    // Family 4: |q>_A |3lB - 1>_B for q = 1..3lA-2.
    for q in 1..=(3 * l_a - 2) {
        push(
            basis_vector(d_a, q),
            basis_vector(d_b, 3 * l_b - 1),
            format!("F4:q={q}"),
        )?;
    }

    StateSet::new(d_a, d_b, states, labels)
}
