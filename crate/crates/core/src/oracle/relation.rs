//! How the closed-form concurrence expression relates to the Wootters
//! concurrence of the same evolved state.

use std::f64::consts::PI;

use serde::Serialize;

use super::checks::linspace;
use crate::closed_forms::{angles, concurrence_closed_form, HamiltonianKind, SystemParams};
use crate::entanglement::{density_from_state, wootters_detail};
use crate::error::Result;

pub const RELATION_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisFit {
    /// `closed = f(wootters)`
    pub hypothesis: String,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcurrenceRelation {
    pub theta_steps: usize,
    pub alpha_steps: usize,
    pub fits: Vec<HypothesisFit>,
    pub best: String,
    pub best_residual: f64,
    pub certified: bool,
    /// Spread of `closed / wootters^2` over points with `wootters > 1e-3`.
    pub ratio_to_square_spread: f64,
    pub max_clamp: f64,
}

/// Scans `theta in [0, pi]`, `alpha in [0, 2]`. Each grid angle is turned
/// into a time with `omega_A = 1`, so both sides see the angle the library
/// itself recomputes from that time.
pub fn concurrence_relation(theta_steps: usize, alpha_steps: usize) -> Result<ConcurrenceRelation> {
    let mut pairs = Vec::with_capacity(theta_steps * alpha_steps);
    let mut max_clamp = 0.0f64;
    for alpha in linspace(0.0, 2.0, alpha_steps) {
        let p = SystemParams {
            nu_ratio: 0.0,
            omega_a_ratio: 1.0,
            rabi_ratio: 0.0,
            eta: 0.0,
            alpha,
            fock_dim: 1,
        };
        for theta in linspace(0.0, PI, theta_steps) {
            let t = theta * (2.0 * alpha * alpha).exp();
            let th = angles(HamiltonianKind::Full, &p, t, 0).theta;
            let closed = concurrence_closed_form(HamiltonianKind::Full, &p, t, 0);
            let detail = wootters_detail(&density_from_state(th, alpha)?)?;
            max_clamp = max_clamp.max(detail.clamp);
            pairs.push((closed, detail.concurrence));
        }
    }
    type Hypothesis = (&'static str, fn(f64) -> f64);
    let hypotheses: [Hypothesis; 2] = [("closed = wootters", |w| w), ("closed = wootters^2", |w| w * w)];
    let fits: Vec<HypothesisFit> = hypotheses
        .iter()
        .map(|(name, f)| HypothesisFit {
            hypothesis: (*name).to_string(),
            max_residual: pairs.iter().map(|&(c, w)| (c - f(w)).abs()).fold(0.0, f64::max),
        })
        .collect();
    let best_fit = fits
        .iter()
        .min_by(|a, b| a.max_residual.total_cmp(&b.max_residual))
        .expect("two hypotheses");
    let ratios: Vec<f64> = pairs
        .iter()
        .filter(|&&(_, w)| w > 1e-3)
        .map(|&(c, w)| c / (w * w))
        .collect();
    let spread = if ratios.is_empty() {
        0.0
    } else {
        let hi = ratios.iter().copied().fold(f64::MIN, f64::max);
        let lo = ratios.iter().copied().fold(f64::MAX, f64::min);
        hi - lo
    };
    Ok(ConcurrenceRelation {
        theta_steps,
        alpha_steps,
        best: best_fit.hypothesis.clone(),
        best_residual: best_fit.max_residual,
        certified: best_fit.max_residual < RELATION_TOL,
        fits,
        ratio_to_square_spread: spread,
        max_clamp,
    })
}
