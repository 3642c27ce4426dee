use rayon::prelude::*;

use super::config::RunConfig;
use super::table::{Cell, FigureTable};
use crate::closed_forms::{
    angles, concurrence_closed_form, cooling_advantage, diag_time, ground_probability_at_step, interaction_energy,
    HamiltonianKind, SystemParams,
};
use crate::entanglement::{density_from_state, wootters};
use crate::error::Result;
use crate::fock::FockSpace;
use crate::oracle::{count_local_extrema, evolve_and_compare, linspace, run_validation, ValidationReport};

fn header(table: &mut FigureTable, cfg: &RunConfig, formulas: &[&str]) {
    table
        .header
        .push(format!("tool = ionrwa {}", env!("CARGO_PKG_VERSION")));
    table.header.push(format!("table = {}", table.name));
    for f in formulas {
        table.header.push(format!("formula {f}"));
    }
    for (k, v) in cfg.echo() {
        table.header.push(format!("config {k} = {v}"));
    }
}

fn eta_grid(cfg: &RunConfig) -> Vec<f64> {
    linspace(cfg.eta_min, cfg.eta_max, cfg.eta_steps)
}

fn alpha_grid(cfg: &RunConfig) -> Vec<f64> {
    linspace(cfg.alpha_min, cfg.alpha_max, cfg.alpha_steps)
}

fn curve_grid(cfg: &RunConfig) -> Vec<f64> {
    linspace(cfg.alpha_min, cfg.alpha_max, cfg.alpha_curve_steps)
}

fn surface_params(cfg: &RunConfig, eta: f64, alpha: f64) -> SystemParams {
    SystemParams {
        eta,
        alpha,
        ..cfg.params()
    }
}

/// Interaction energies of both Hamiltonians over the `(eta, alpha)` surface.
pub fn cmd_energies(cfg: &RunConfig) -> Result<FigureTable> {
    let mut t = FigureTable::new("energies", &["eta", "alpha", "e_int_full", "e_int_rwa"]);
    header(
        &mut t,
        cfg,
        &[
            "e_int_full = 2 exp(-eta^2/2) sin(2 eta alpha)  [units of hbar Omega]",
            "e_int_rwa = (1/2) exp(-eta^2/2 - 2 alpha^2)  [units of hbar Omega]",
        ],
    );
    for eta in eta_grid(cfg) {
        for alpha in alpha_grid(cfg) {
            let p = surface_params(cfg, eta, alpha);
            t.push(vec![
                Cell::Real(eta),
                Cell::Real(alpha),
                Cell::Real(interaction_energy(HamiltonianKind::Full, &p)),
                Cell::Real(interaction_energy(HamiltonianKind::Rwa, &p)),
            ])?;
        }
    }
    Ok(t)
}

/// Mask transitions along one `eta` row of the region surface.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionRow {
    pub eta: f64,
    /// Indices `j` with `mask[j] != mask[j + 1]`.
    pub transitions: Vec<usize>,
    /// Sign changes of `2 sin(2 eta alpha) - (1/2) e^{-2 alpha^2}` between
    /// adjacent grid points, computed without the common `e^{-eta^2/2}`.
    pub boundary_changes: Vec<usize>,
    /// Boundary root inside each bracketing cell, by bisection.
    pub crossings: Vec<f64>,
}

/// `2 sin(2 eta alpha) - (1/2) e^{-2 alpha^2}`
pub fn boundary_function(eta: f64, alpha: f64) -> f64 {
    2.0 * (2.0 * eta * alpha).sin() - 0.5 * (-2.0 * alpha * alpha).exp()
}

fn bisect(eta: f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = boundary_function(eta, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = boundary_function(eta, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn region_rows(cfg: &RunConfig) -> Vec<RegionRow> {
    let alphas = alpha_grid(cfg);
    eta_grid(cfg)
        .into_iter()
        .map(|eta| {
            let mask: Vec<bool> = alphas
                .iter()
                .map(|&alpha| cooling_advantage(&surface_params(cfg, eta, alpha)) > 0.0)
                .collect();
            let g: Vec<f64> = alphas.iter().map(|&a| boundary_function(eta, a)).collect();
            let transitions = (0..mask.len() - 1).filter(|&j| mask[j] != mask[j + 1]).collect();
            let boundary_changes: Vec<usize> = (0..g.len() - 1).filter(|&j| (g[j] > 0.0) != (g[j + 1] > 0.0)).collect();
            let crossings = boundary_changes
                .iter()
                .map(|&j| bisect(eta, alphas[j], alphas[j + 1]))
                .collect();
            RegionRow {
                eta,
                transitions,
                boundary_changes,
                crossings,
            }
        })
        .collect()
}

/// Sign of `E_int - E'_int` over the `(eta, alpha)` surface.
pub fn cmd_regions(cfg: &RunConfig) -> Result<FigureTable> {
    let mut t = FigureTable::new("regions", &["eta", "alpha", "advantage", "in_gray_region"]);
    header(
        &mut t,
        cfg,
        &[
            "advantage = e_int_full - e_int_rwa  [units of hbar Omega]",
            "in_gray_region = advantage > 0",
        ],
    );
    let mut gray = 0usize;
    for eta in eta_grid(cfg) {
        for alpha in alpha_grid(cfg) {
            let adv = cooling_advantage(&surface_params(cfg, eta, alpha));
            gray += usize::from(adv > 0.0);
            t.push(vec![
                Cell::Real(eta),
                Cell::Real(alpha),
                Cell::Real(adv),
                Cell::Bool(adv > 0.0),
            ])?;
        }
    }
    let rows = region_rows(cfg);
    let single = rows.iter().filter(|r| r.transitions.len() == 1).count();
    let agree = rows.iter().filter(|r| r.transitions == r.boundary_changes).count();
    t.footer.push(format!("gray_cells = {gray}"));
    t.footer.push(format!("rows = {}", rows.len()));
    t.footer.push(format!("rows_with_one_transition = {single}"));
    t.footer.push(format!("rows_matching_boundary = {agree}"));
    Ok(t)
}

fn curve_params(cfg: &RunConfig, alpha: f64) -> SystemParams {
    SystemParams { alpha, ..cfg.params() }
}

fn extrema_on(values: &[f64], alphas: &[f64], lo: f64, hi: f64) -> usize {
    let window: Vec<f64> = values
        .iter()
        .zip(alphas)
        .filter(|(_, &a)| a >= lo && a <= hi)
        .map(|(&v, _)| v)
        .collect();
    count_local_extrema(&window)
}

/// Ground-state probabilities at the diagonalization times, per `k`.
pub fn cmd_prob(cfg: &RunConfig) -> Result<FigureTable> {
    let mut t = FigureTable::new("prob", &["k", "alpha", "p_full", "p_rwa"]);
    header(
        &mut t,
        cfg,
        &[
            "p_full = cos^2(omega_A (k pi + pi/2) e^{-2 alpha^2})",
            "p_rwa = cos^2(k pi (omega_A e^{-2 alpha^2} - Omega e^{-eta^2/2 - 2 alpha^2 (-1)^k}))",
        ],
    );
    let alphas = curve_grid(cfg);
    for &k in &cfg.k_list {
        let mut full = Vec::with_capacity(alphas.len());
        let mut rwa = Vec::with_capacity(alphas.len());
        for &alpha in &alphas {
            let p = curve_params(cfg, alpha);
            let pf = ground_probability_at_step(HamiltonianKind::Full, &p, k);
            let pr = ground_probability_at_step(HamiltonianKind::Rwa, &p, k);
            full.push(pf);
            rwa.push(pr);
            t.push(vec![
                Cell::Int(i64::from(k)),
                Cell::Real(alpha),
                Cell::Real(pf),
                Cell::Real(pr),
            ])?;
        }
        t.footer.push(format!(
            "k = {k}: extrema on alpha in [1.5, 2]: p_full {}, p_rwa {}",
            extrema_on(&full, &alphas, 1.5, 2.0),
            extrema_on(&rwa, &alphas, 1.5, 2.0)
        ));
    }
    Ok(t)
}

/// Closed-form concurrences next to the Wootters concurrence of the same state.
pub fn cmd_concurrence(cfg: &RunConfig) -> Result<FigureTable> {
    let mut t = FigureTable::new(
        "concurrence",
        &["k", "alpha", "c_full", "c_rwa", "c_wootters_full", "c_wootters_rwa"],
    );
    header(
        &mut t,
        cfg,
        &[
            "c_full = (1/2)(1 - e^{-4 alpha^2})(1 - cos(4 omega_A t_k e^{-2 alpha^2})), t_k = k pi + pi/2",
            "c_rwa = (1/2)(1 - e^{-4 alpha^2})(1 - cos(4 omega_A t_k e^{-2 alpha^2} - 4 Omega t_k e^{-eta^2/2 - 2 alpha^2 (-1)^k})), t_k = k pi",
            "c_wootters_* = Wootters concurrence of the two-qubit density at the same mixing angle",
        ],
    );
    let alphas = curve_grid(cfg);
    for &k in &cfg.k_list {
        let rows: Vec<Result<[f64; 4]>> = alphas
            .par_iter()
            .map(|&alpha| {
                let p = curve_params(cfg, alpha);
                let mut out = [0.0; 4];
                for (i, kind) in HamiltonianKind::ALL.into_iter().enumerate() {
                    let tk = diag_time(kind, k);
                    out[i] = concurrence_closed_form(kind, &p, tk, k);
                    out[2 + i] = wootters(&density_from_state(angles(kind, &p, tk, k).theta, alpha)?)?;
                }
                Ok(out)
            })
            .collect();
        let mut closed_rwa = Vec::with_capacity(alphas.len());
        let mut gap_square = 0.0f64;
        for (&alpha, row) in alphas.iter().zip(rows) {
            let [cf, cr, wf, wr] = row?;
            closed_rwa.push(cr);
            gap_square = gap_square.max((cf - wf * wf).abs()).max((cr - wr * wr).abs());
            t.push(vec![
                Cell::Int(i64::from(k)),
                Cell::Real(alpha),
                Cell::Real(cf),
                Cell::Real(cr),
                Cell::Real(wf),
                Cell::Real(wr),
            ])?;
        }
        t.footer.push(format!(
            "k = {k}: extrema of c_rwa on alpha in [1.5, 2]: {}; max |c_closed - c_wootters^2| = {gap_square:.3e}",
            extrema_on(&closed_rwa, &alphas, 1.5, 2.0)
        ));
    }
    Ok(t)
}

/// Propagated ground population and concurrence against the closed forms.
pub fn cmd_evolve(cfg: &RunConfig) -> Result<FigureTable> {
    let space = FockSpace::new(cfg.fock_dim)?;
    let series = evolve_and_compare(
        HamiltonianKind::Full,
        &cfg.params(),
        cfg.periods,
        cfg.steps_per_period,
        space,
    )?;
    let mut t = FigureTable::new(
        "evolve",
        &[
            "t",
            "k",
            "at_diag_time",
            "p_g_numeric",
            "p_g_analytic_rotated",
            "p_g_analytic_lab",
            "c_numeric",
            "c_closed_form",
            "p_g_numeric_lab",
            "norm_drift",
        ],
    );
    header(
        &mut t,
        cfg,
        &[
            "p_g_numeric = ground population of the propagated rotated-frame state from |e, alpha>",
            "p_g_analytic_rotated = sin^2(omega_A t e^{-2 alpha^2})",
            "p_g_analytic_lab = cos^2(omega_A t e^{-2 alpha^2})",
            "c_numeric = sqrt(2 (1 - Tr rho_internal^2))",
            "p_g_numeric_lab = ground population after mapping back with exp(i (pi/4) sigma_y)",
        ],
    );
    for r in &series.rows {
        t.push(vec![
            Cell::Real(r.t),
            Cell::Int(i64::from(r.k)),
            Cell::Bool(r.at_diag_time),
            Cell::Real(r.p_g_numeric),
            Cell::Real(r.p_g_analytic_rotated),
            Cell::Real(r.p_g_analytic_lab),
            Cell::Real(r.c_numeric),
            Cell::Real(r.c_closed_form),
            Cell::Real(r.p_g_numeric_lab),
            Cell::Real(r.norm_drift),
        ])?;
    }
    t.footer
        .push(format!("max_deviation_rotated = {:.16e}", series.max_deviation_rotated));
    t.footer
        .push(format!("max_deviation_lab = {:.16e}", series.max_deviation_lab));
    t.footer
        .push(format!("max_norm_drift = {:.16e}", series.max_norm_drift));
    Ok(t)
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<ValidationReport> {
    run_validation(&cfg.validation())
}
