use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::hamiltonian::{excited_coherent, rotate_back, HamiltonianBuilder, Rotation};
use crate::closed_forms::{concurrence_closed_form, diag_time, ground_probability, HamiltonianKind, SystemParams};
use crate::error::{Error, Result};
use crate::fock::{evolve, ComplexVector, FockSpace};

/// Norm drift beyond this aborts the propagation.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;
/// Uniform output samples per laser period, on top of the diagonalization times.
pub const SAMPLES_PER_PERIOD: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DynamicsRow {
    pub t: f64,
    /// Latest diagonalization index with `t_k <= t` (0 before the first one).
    pub k: u32,
    pub at_diag_time: bool,
    /// Ground population of the propagated rotated-frame state.
    pub p_g_numeric: f64,
    /// Same state mapped back to the lab frame.
    pub p_g_numeric_lab: f64,
    /// `sin^2(theta)`: ground population of the closed-form rotated-frame state.
    pub p_g_analytic_rotated: f64,
    /// `cos^2(theta)`: the closed-form ground-state probability.
    pub p_g_analytic_lab: f64,
    /// `sqrt(2 (1 - Tr rho_q^2))` of the reduced internal state.
    pub c_numeric: f64,
    pub c_closed_form: f64,
    pub norm_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DynamicsSeries {
    pub kind: HamiltonianKind,
    pub periods: usize,
    pub steps_per_period: usize,
    pub rows: Vec<DynamicsRow>,
    /// `max |p_g_numeric - p_g_analytic_rotated|`
    pub max_deviation_rotated: f64,
    /// `max |p_g_numeric_lab - p_g_analytic_lab|`
    pub max_deviation_lab: f64,
    pub max_norm_drift: f64,
}

fn latest_index(kind: HamiltonianKind, t: f64) -> u32 {
    let offset = diag_time(kind, 0);
    if t < offset {
        return 0;
    }
    // Snap to the grid so t == t_k picks k rather than k - 1.
    let x = (t - offset) / PI;
    let r = x.round();
    let k = if (x - r).abs() < 1e-9 { r } else { x.floor() };
    k as u32
}

fn sample_times(kind: HamiltonianKind, horizon: f64, periods: usize) -> Vec<(f64, bool)> {
    let mut times: Vec<(f64, bool)> = (0..=periods * SAMPLES_PER_PERIOD)
        .map(|j| (horizon * j as f64 / (periods * SAMPLES_PER_PERIOD) as f64, false))
        .collect();
    let mut k = 0;
    loop {
        let t = diag_time(kind, k);
        if t > horizon * (1.0 + 1e-12) {
            break;
        }
        times.push((t, true));
        k += 1;
    }
    times.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, bool)> = Vec::with_capacity(times.len());
    for (t, diag) in times {
        match merged.last_mut() {
            Some(last) if (t - last.0).abs() <= 1e-9 => {
                // Keep the exact diagonalization time when the two coincide.
                if diag {
                    *last = (t, true);
                }
            }
            _ => merged.push((t, diag)),
        }
    }
    merged
}

fn internal_populations(psi: &ComplexVector) -> (f64, f64, Complex64) {
    let d = psi.dim() / 2;
    let s = psi.as_slice();
    let pg: f64 = s[..d].iter().map(|z| z.norm_sqr()).sum();
    let pe: f64 = s[d..].iter().map(|z| z.norm_sqr()).sum();
    let coherence = s[..d].iter().zip(&s[d..]).map(|(g, e)| g * e.conj()).sum();
    (pg, pe, coherence)
}

/// Pure-state bipartite concurrence from the reduced internal density matrix.
fn reduced_concurrence(psi: &ComplexVector) -> f64 {
    let (pg, pe, coh) = internal_populations(psi);
    let n = pg + pe;
    let (pg, pe, coh) = (pg / n, pe / n, coh / n);
    let purity = pg * pg + pe * pe + 2.0 * coh.norm_sqr();
    (2.0 * (1.0 - purity)).max(0.0).sqrt().min(1.0)
}

/// Propagates `|e, alpha>` under the rotated Hamiltonian of `kind` over
/// `periods` laser periods and compares with the closed forms.
pub fn evolve_and_compare(
    kind: HamiltonianKind,
    params: &SystemParams,
    periods: usize,
    steps_per_period: usize,
    space: FockSpace,
) -> Result<DynamicsSeries> {
    if periods == 0 || steps_per_period == 0 {
        return Err(Error::Domain("periods and steps_per_period must be >= 1".into()));
    }
    params.validate()?;
    space.check_alpha(params.alpha)?;
    let builder = HamiltonianBuilder::new(params, space)?;
    let horizon = TAU * periods as f64;
    let dt_nominal = TAU / steps_per_period as f64;
    let back = Rotation::QuarterTurn.matrix();

    let mut psi = excited_coherent(params.alpha, space)?.vector().clone();
    let mut t_now = 0.0;
    let mut rows = Vec::new();
    for (t, at_diag_time) in sample_times(kind, horizon, periods) {
        if t > t_now {
            let steps = ((t - t_now) / dt_nominal).round().max(1.0) as usize;
            psi = evolve(|s| builder.rotated(kind, s), &psi, t_now, t, steps)?;
            t_now = t;
        }
        let norm_drift = (psi.norm() - 1.0).abs();
        if norm_drift > NORM_DRIFT_LIMIT {
            return Err(Error::Propagation(format!(
                "norm drift {norm_drift:e} at t = {t} exceeds {NORM_DRIFT_LIMIT:e}"
            )));
        }
        let k = latest_index(kind, t);
        let (pg, _, _) = internal_populations(&psi);
        let (pg_lab, _, _) = internal_populations(&rotate_back(back, &psi));
        let analytic = ground_probability(kind, params, t, k);
        rows.push(DynamicsRow {
            t,
            k,
            at_diag_time,
            p_g_numeric: pg,
            p_g_numeric_lab: pg_lab,
            p_g_analytic_rotated: 1.0 - analytic,
            p_g_analytic_lab: analytic,
            c_numeric: reduced_concurrence(&psi),
            c_closed_form: concurrence_closed_form(kind, params, t, k),
            norm_drift,
        });
    }
    let fold = |f: &dyn Fn(&DynamicsRow) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    let max_deviation_rotated = fold(&|r| (r.p_g_numeric - r.p_g_analytic_rotated).abs());
    let max_deviation_lab = fold(&|r| (r.p_g_numeric_lab - r.p_g_analytic_lab).abs());
    let max_norm_drift = fold(&|r| r.norm_drift);
    Ok(DynamicsSeries {
        kind,
        periods,
        steps_per_period,
        rows,
        max_deviation_rotated,
        max_deviation_lab,
        max_norm_drift,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub coarse_steps: usize,
    pub error_coarse: f64,
    pub error_fine: f64,
    pub ratio: f64,
}

/// Final-state error at `coarse_steps` and `2 coarse_steps` against a
/// `16 coarse_steps` reference over `periods` laser periods.
pub fn step_convergence(
    kind: HamiltonianKind,
    params: &SystemParams,
    periods: usize,
    coarse_steps: usize,
    space: FockSpace,
) -> Result<ConvergenceRecord> {
    params.validate()?;
    space.check_alpha(params.alpha)?;
    let builder = HamiltonianBuilder::new(params, space)?;
    let psi0 = excited_coherent(params.alpha, space)?.vector().clone();
    let horizon = TAU * periods as f64;
    let run = |steps: usize| evolve(|s| builder.rotated(kind, s), &psi0, 0.0, horizon, steps);
    let reference = run(16 * coarse_steps)?;
    let error_coarse = run(coarse_steps)?.sub(&reference).norm();
    let error_fine = run(2 * coarse_steps)?.sub(&reference).norm();
    Ok(ConvergenceRecord {
        coarse_steps,
        error_coarse,
        error_fine,
        ratio: error_coarse / error_fine,
    })
}
