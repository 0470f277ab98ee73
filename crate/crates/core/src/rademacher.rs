//! Stopping rule for progressive sampling.
//!
//! The empirical Rademacher average of the pair indicators is bounded by
//! `min_s w(s)` with
//!
//! ```text
//! w(s) = (1/s) ln Σ_t exp(s² t / (2 r²))
//! ```
//!
//! summed over the distinct tree counts `t` (each counted once), and the
//! deviation bound `η` follows from that minimum. Pairs never covered by the
//! sample have an all-zero indicator vector; `include_zero` adds their
//! `exp(0) = 1` term.
//!
//! Summing over distinct count values, rather than distinct indicator
//! vectors, can undercount the family when pairs share a count but are
//! covered by different trees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest `s` the minimizer will consider.
pub const S_MIN: f64 = 1e-6;
/// Default relative tolerance on the minimizing `s`.
pub const DEFAULT_TOL: f64 = 1e-6;

const GROWTH: f64 = 2.0;
const S_MAX: f64 = 1e150;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// `w(s)` over the distinct count values, in log-sum-exp form.
pub fn massart_w(s: f64, values: &[u32], r: usize, include_zero: bool) -> Result<f64> {
    if s.is_nan() || s <= 0.0 {
        return Err(Error::InvalidConfig(format!("s must be positive, got {s}")));
    }
    if r == 0 {
        return Err(Error::InvalidConfig(
            "sample size must be at least 1".into(),
        ));
    }
    Ok(w_unchecked(s, values, r, include_zero))
}

fn w_unchecked(s: f64, values: &[u32], r: usize, include_zero: bool) -> f64 {
    let scale = s * s / (2.0 * (r as f64) * (r as f64));
    let top = values.iter().copied().max().map(|t| scale * t as f64);
    let peak = match (top, include_zero) {
        (Some(x), true) => x.max(0.0),
        (Some(x), false) => x,
        (None, true) => 0.0,
        // empty family
        (None, false) => return 0.0,
    };
    let mut sum: f64 = values
        .iter()
        .map(|&t| (scale * t as f64 - peak).exp())
        .sum();
    if include_zero {
        sum += (-peak).exp();
    }
    (peak + sum.ln()) / s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub s_star: f64,
    pub w_s: f64,
}

/// Minimizes `w` over `s > 0`: doubling/halving from `s = 1` until the
/// value rises on both sides, then golden-section search on the bracket.
/// The search never goes below [`S_MIN`].
pub fn minimize_w(values: &[u32], r: usize, tol: f64, include_zero: bool) -> Minimum {
    assert!(r >= 1, "minimize_w needs a non-empty sample");
    let f = |s: f64| w_unchecked(s, values, r, include_zero);
    let terms = values.len() + usize::from(include_zero);
    if terms == 0 || values.is_empty() {
        // w is identically 0
        return Minimum {
            s_star: 1.0,
            w_s: 0.0,
        };
    }

    let (mut lo, mut hi) = bracket(&f);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol * 0.5 * (lo + hi) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mut best = if f1 <= f2 {
        Minimum {
            s_star: x1,
            w_s: f1,
        }
    } else {
        Minimum {
            s_star: x2,
            w_s: f2,
        }
    };
    for edge in [lo, hi] {
        let fe = f(edge);
        if fe < best.w_s {
            best = Minimum {
                s_star: edge,
                w_s: fe,
            };
        }
    }
    best
}

/// Bracket `[lo, hi]` around the minimum of a convex `f` on `[S_MIN, ∞)`.
fn bracket(f: &impl Fn(f64) -> f64) -> (f64, f64) {
    let mut s = 1.0;
    let mut fs = f(s);
    let up = f(s * GROWTH);
    if up < fs {
        s *= GROWTH;
        fs = up;
        while s < S_MAX {
            let next = f(s * GROWTH);
            if next >= fs {
                break;
            }
            s *= GROWTH;
            fs = next;
        }
        return (s / GROWTH, s * GROWTH);
    }
    while s / GROWTH >= S_MIN {
        let next = f(s / GROWTH);
        if next >= fs {
            return (s / GROWTH, s * GROWTH);
        }
        s /= GROWTH;
        fs = next;
    }
    (S_MIN, s * GROWTH)
}

/// Upper bound on the largest deviation between empirical and true
/// centrality, holding with probability `1 - δ_i`:
///
/// ```text
/// 2w + (ℓ + sqrt((ℓ + 4 r w) ℓ)) / r + sqrt(ℓ / 2r),   ℓ = ln(3/δ_i)
/// ```
pub fn eta_bound(w_s: f64, r: usize, delta_i: f64) -> f64 {
    let r = r as f64;
    let l = (3.0 / delta_i).ln();
    2.0 * w_s + (l + ((l + 4.0 * r * w_s) * l).sqrt()) / r + (l / (2.0 * r)).sqrt()
}

/// Confidence budget of iteration `i` (1-based): `δ / 2^i`.
pub fn iteration_delta(delta: f64, i: usize) -> f64 {
    delta / 2f64.powi(i as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StopEvaluation {
    pub w_s: f64,
    pub s_star: f64,
    pub eta: f64,
    pub delta_i: f64,
    pub r: usize,
}

/// Evaluates the stopping rule for iteration `i` on a snapshot of the
/// distinct count values.
pub fn evaluate_stop(
    values: &[u32],
    r: usize,
    iteration: usize,
    delta: f64,
    include_zero: bool,
) -> StopEvaluation {
    let Minimum { s_star, w_s } = minimize_w(values, r, DEFAULT_TOL, include_zero);
    let delta_i = iteration_delta(delta, iteration);
    StopEvaluation {
        w_s,
        s_star,
        eta: eta_bound(w_s, r, delta_i),
        delta_i,
        r,
    }
}
