//! Closed-form energies, diagonalization schedules, probabilities and
//! concurrences for the full and rotating-wave Hamiltonians.
//!
//! Units: `hbar = 1`, laser frequency = 1. Energies come out in units of
//! `hbar * omega_L`, except [`interaction_energy`] and [`cooling_advantage`]
//! which are in units of `hbar * Omega`.
//!
//! The formulas are evaluated exactly as written, with no range reduction
//! and no half-angle rewrites, so results are bit-stable against the
//! reference expressions used in the tests.

mod params;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use params::{minimal_cutoff, HamiltonianKind, SystemParams};

/// Reduced Planck constant in J s.
pub const HBAR: f64 = 1.054571817e-34;

/// Diagonal elements of the rotated Hamiltonian at the `k`-th diagonalization time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnergyPair {
    pub h11: f64,
    pub h22: f64,
    pub k: u32,
}

/// Global-phase rate `delta` and mixing angle `theta` of the evolved state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Angles {
    pub delta: f64,
    pub theta: f64,
    pub k: u32,
}

/// Lab-frame amplitudes on `|g, alpha>` and `|e, -alpha>`, global phase included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateAmplitudes {
    pub amp_g_alpha: Complex64,
    pub amp_e_minus_alpha: Complex64,
}

impl StateAmplitudes {
    pub fn norm_sqr(&self) -> f64 {
        self.amp_g_alpha.norm_sqr() + self.amp_e_minus_alpha.norm_sqr()
    }
}

/// `(-1)^k`
#[inline]
pub fn parity(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `eta = k_L sqrt(hbar / (2 m nu))` from SI inputs.
pub fn lamb_dicke_parameter(wave_number: f64, mass: f64, trap_freq: f64) -> Result<f64> {
    for (name, v) in [("wave_number", wave_number), ("mass", mass), ("trap_freq", trap_freq)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Domain(format!("{name} must be finite and > 0, got {v}")));
        }
    }
    Ok(wave_number * (HBAR / (2.0 * mass * trap_freq)).sqrt())
}

/// Time (in units of `1/omega_L`) at which the projected 2x2 Hamiltonian is diagonal.
pub fn diag_time(kind: HamiltonianKind, k: u32) -> f64 {
    let k = f64::from(k);
    match kind {
        HamiltonianKind::Full => k * PI + FRAC_PI_2,
        HamiltonianKind::Rwa => k * PI,
    }
}

/// Signed-index variant of [`diag_time`] for callers that cannot express `k >= 0` in a type.
pub fn diag_time_checked(kind: HamiltonianKind, k: i64) -> Result<f64> {
    let k = u32::try_from(k).map_err(|_| Error::Domain(format!("step index must be >= 0, got {k}")))?;
    Ok(diag_time(kind, k))
}

/// `e^{-eta^2/2}`, the Debye-Waller-like factor of the normal-ordered displacement.
#[inline]
fn debye_waller(eta: f64) -> f64 {
    (-eta * eta / 2.0).exp()
}

/// `e^{-eta^2/2 - 2 alpha^2}`
#[inline]
fn rwa_envelope(eta: f64, alpha: f64) -> f64 {
    (-eta * eta / 2.0 - 2.0 * alpha * alpha).exp()
}

/// `e^{-eta^2/2 - 2 alpha^2 (-1)^k}`: the exponent sign flips with `k`.
#[inline]
fn rwa_envelope_signed(eta: f64, alpha: f64, k: u32) -> f64 {
    (-eta * eta / 2.0 - 2.0 * alpha * alpha * parity(k)).exp()
}

pub fn energies(kind: HamiltonianKind, p: &SystemParams, k: u32) -> EnergyPair {
    let a2 = p.alpha * p.alpha;
    let vib = p.nu_ratio * a2;
    let internal = p.omega_a_ratio * (-2.0 * a2).exp();
    match kind {
        HamiltonianKind::Full => {
            let inter = 2.0 * parity(k) * p.rabi_ratio * debye_waller(p.eta) * (2.0 * p.eta * p.alpha).sin();
            EnergyPair {
                h11: vib - internal + inter,
                h22: vib + internal + inter,
                k,
            }
        }
        HamiltonianKind::Rwa => {
            let inter = parity(k) * (p.rabi_ratio / 2.0) * rwa_envelope(p.eta, p.alpha);
            EnergyPair {
                h11: vib - internal + inter,
                h22: vib + internal - inter,
                k,
            }
        }
    }
}

/// Interaction energy in units of `hbar * Omega`.
pub fn interaction_energy(kind: HamiltonianKind, p: &SystemParams) -> f64 {
    match kind {
        HamiltonianKind::Full => 2.0 * debye_waller(p.eta) * (2.0 * p.eta * p.alpha).sin(),
        HamiltonianKind::Rwa => 0.5 * rwa_envelope(p.eta, p.alpha),
    }
}

/// `E_int - E'_int` in units of `hbar * Omega`. Positive means the full
/// Hamiltonian predicts the lower minimum energy.
pub fn cooling_advantage(p: &SystemParams) -> f64 {
    interaction_energy(HamiltonianKind::Full, p) - interaction_energy(HamiltonianKind::Rwa, p)
}

pub fn angles(kind: HamiltonianKind, p: &SystemParams, t: f64, k: u32) -> Angles {
    let a2 = p.alpha * p.alpha;
    match kind {
        HamiltonianKind::Full => Angles {
            delta: p.nu_ratio * a2
                + 2.0 * parity(k) * p.rabi_ratio * debye_waller(p.eta) * (2.0 * p.eta * p.alpha).sin(),
            theta: p.omega_a_ratio * t * (-2.0 * a2).exp(),
            k,
        },
        HamiltonianKind::Rwa => Angles {
            delta: -p.nu_ratio * a2,
            theta: p.omega_a_ratio * t * (-2.0 * a2).exp() - p.rabi_ratio * t * rwa_envelope_signed(p.eta, p.alpha, k),
            k,
        },
    }
}

/// Alternative RWA mixing angle `t (H'22 - H'11) / 2`, derived from the
/// diagonal elements instead of the printed angle. Kept for the consistency ledger.
pub fn theta_prime_from_energies(p: &SystemParams, t: f64, k: u32) -> f64 {
    t * (p.omega_a_ratio * (-2.0 * p.alpha * p.alpha).exp()
        - parity(k) * (p.rabi_ratio / 2.0) * rwa_envelope(p.eta, p.alpha))
}

pub fn state_at(kind: HamiltonianKind, p: &SystemParams, t: f64, k: u32) -> StateAmplitudes {
    let Angles { delta, theta, .. } = angles(kind, p, t, k);
    let phase = Complex64::from_polar(1.0, -delta * t);
    StateAmplitudes {
        amp_g_alpha: phase * theta.cos(),
        amp_e_minus_alpha: phase * Complex64::new(0.0, -theta.sin()),
    }
}

/// `cos^2(theta)` (full) or `cos^2(theta')` (RWA).
pub fn ground_probability(kind: HamiltonianKind, p: &SystemParams, t: f64, k: u32) -> f64 {
    let c = angles(kind, p, t, k).theta.cos();
    c * c
}

/// Ground-state probability evaluated at the `k`-th diagonalization time.
pub fn ground_probability_at_step(kind: HamiltonianKind, p: &SystemParams, k: u32) -> f64 {
    let a2 = p.alpha * p.alpha;
    let kf = f64::from(k);
    let arg = match kind {
        HamiltonianKind::Full => p.omega_a_ratio * (kf * PI + FRAC_PI_2) * (-2.0 * a2).exp(),
        HamiltonianKind::Rwa => {
            kf * PI * (p.omega_a_ratio * (-2.0 * a2).exp() - p.rabi_ratio * rwa_envelope_signed(p.eta, p.alpha, k))
        }
    };
    let c = arg.cos();
    c * c
}

/// Closed-form concurrence expression for the evolved state.
///
/// This is `(1 - e^{-4 alpha^2}) sin^2(2 theta)`, which is the square of the
/// pure-state concurrence of that state (see `entanglement::wootters`).
pub fn concurrence_closed_form(kind: HamiltonianKind, p: &SystemParams, t: f64, k: u32) -> f64 {
    let a2 = p.alpha * p.alpha;
    let prefactor = 1.0 - (-4.0 * a2).exp();
    let arg = match kind {
        HamiltonianKind::Full => 4.0 * p.omega_a_ratio * t * (-2.0 * a2).exp(),
        HamiltonianKind::Rwa => {
            4.0 * p.omega_a_ratio * t * (-2.0 * a2).exp()
                - 4.0 * p.rabi_ratio * t * rwa_envelope_signed(p.eta, p.alpha, k)
        }
    };
    0.5 * prefactor * (1.0 - arg.cos())
}
