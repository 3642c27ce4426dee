use std::f64::consts::PI;

use serde::Serialize;

use super::hamiltonian::{basis_vectors, project_2x2, HamiltonianBuilder};
use crate::closed_forms::{
    angles, diag_time, energies, theta_prime_from_energies, EnergyPair, HamiltonianKind, SystemParams,
};
use crate::error::Result;
use crate::fock::FockSpace;

/// `|H12| / max|H_ij|` of the projected 2x2 Hamiltonian at time `t`, for
/// the basis built on the builder's `alpha`.
pub fn offdiagonal_residual_at(builder: &HamiltonianBuilder, kind: HamiltonianKind, t: f64) -> Result<f64> {
    let h = builder.rotated(kind, t)?;
    let (plus, minus) = basis_vectors(builder.params().alpha, builder.space())?;
    let m = project_2x2(&h, &plus, &minus)?;
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(m[0][1].norm().max(m[1][0].norm()) / scale)
}

pub fn verify_offdiagonal(kind: HamiltonianKind, params: &SystemParams, k: u32, space: FockSpace) -> Result<f64> {
    space.check_alpha(params.alpha)?;
    let b = HamiltonianBuilder::new(params, space)?;
    offdiagonal_residual_at(&b, kind, diag_time(kind, k))
}

/// Midpoint between consecutive diagonalization times, where the
/// off-diagonal element is largest.
pub fn mid_interval_time(kind: HamiltonianKind, k: u32) -> f64 {
    diag_time(kind, k) + PI / 2.0
}

/// How the projected diagonal pair lines up with the closed-form pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalMapping {
    /// `psi_+ -> H11`, `psi_- -> H22`.
    Direct,
    Swapped,
    /// Direct assignment with the `(-1)^k` factor inverted.
    SignFlipped,
    SwappedSignFlipped,
    None,
}

impl DiagonalMapping {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagonalMapping::Direct => "direct",
            DiagonalMapping::Swapped => "swapped",
            DiagonalMapping::SignFlipped => "sign_flipped",
            DiagonalMapping::SwappedSignFlipped => "swapped_sign_flipped",
            DiagonalMapping::None => "none",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiagonalCheck {
    /// Deviation under the primary (direct) hypothesis.
    pub deviation: f64,
    /// Smallest deviation over all candidate mappings.
    pub best_deviation: f64,
    pub mapping: DiagonalMapping,
    pub numeric: [f64; 2],
    pub closed: EnergyPair,
    /// Numeric interaction shift divided by the closed-form one, when the
    /// latter is nonzero.
    pub interaction_ratio: Option<f64>,
}

/// `max_i |n_i - c_i| / max(|c_11|, |c_22|)`
fn pair_deviation(numeric: [f64; 2], closed: [f64; 2]) -> f64 {
    let scale = closed[0].abs().max(closed[1].abs());
    let diff = (numeric[0] - closed[0]).abs().max((numeric[1] - closed[1]).abs());
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

pub fn diagonal_check_with(
    builder: &HamiltonianBuilder,
    kind: HamiltonianKind,
    k: u32,
    tol: f64,
) -> Result<DiagonalCheck> {
    let p = builder.params();
    let h = builder.rotated(kind, diag_time(kind, k))?;
    let (plus, minus) = basis_vectors(p.alpha, builder.space())?;
    let m = project_2x2(&h, &plus, &minus)?;
    let numeric = [m[0][0].re, m[1][1].re];
    let closed = energies(kind, p, k);
    let flipped = energies(kind, p, k + 1);

    let candidates = [
        (DiagonalMapping::Direct, [closed.h11, closed.h22]),
        (DiagonalMapping::Swapped, [closed.h22, closed.h11]),
        (DiagonalMapping::SignFlipped, [flipped.h11, flipped.h22]),
        (DiagonalMapping::SwappedSignFlipped, [flipped.h22, flipped.h11]),
    ];
    let deviation = pair_deviation(numeric, candidates[0].1);
    let mut best = (DiagonalMapping::None, f64::INFINITY);
    for (mapping, pair) in candidates {
        let d = pair_deviation(numeric, pair);
        if d < best.1 {
            best = (mapping, d);
        }
    }
    let mapping = if best.1 <= tol { best.0 } else { DiagonalMapping::None };

    let a2 = p.alpha * p.alpha;
    let vib = p.nu_ratio * a2;
    let internal = p.omega_a_ratio * (-2.0 * a2).exp();
    let (num_inter, closed_inter) = match kind {
        HamiltonianKind::Full => (0.5 * (numeric[0] + numeric[1]) - vib, closed.h11 - vib + internal),
        HamiltonianKind::Rwa => (0.5 * (numeric[0] - numeric[1]) + internal, closed.h11 - vib + internal),
    };
    let interaction_ratio = (closed_inter.abs() > 1e-300).then(|| num_inter / closed_inter);

    Ok(DiagonalCheck {
        deviation,
        best_deviation: best.1,
        mapping,
        numeric,
        closed,
        interaction_ratio,
    })
}

/// Relative deviation of `{<psi_+|H|psi_+>, <psi_-|H|psi_->}` from the
/// closed-form pair at `diag_time(kind, k)` under the direct mapping.
pub fn verify_diagonal(kind: HamiltonianKind, params: &SystemParams, k: u32, space: FockSpace) -> Result<f64> {
    space.check_alpha(params.alpha)?;
    let b = HamiltonianBuilder::new(params, space)?;
    Ok(diagonal_check_with(&b, kind, k, 1e-6)?.deviation)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaPrimeRecord {
    pub k: u32,
    pub t: f64,
    /// Mixing angle as printed, sign inside the exponent.
    pub theta_literal: f64,
    /// `t (H'22 - H'11) / 2` from the diagonal elements.
    pub theta_from_energies: f64,
    pub gap: f64,
}

pub fn theta_prime_consistency(params: &SystemParams, k: u32) -> ThetaPrimeRecord {
    let t = diag_time(HamiltonianKind::Rwa, k);
    let theta_literal = angles(HamiltonianKind::Rwa, params, t, k).theta;
    let theta_from_energies = theta_prime_from_energies(params, t, k);
    ThetaPrimeRecord {
        k,
        t,
        theta_literal,
        theta_from_energies,
        gap: (theta_literal - theta_from_energies).abs(),
    }
}

/// Number of interior local extrema: sign changes of the forward
/// differences, ignoring flat steps.
pub fn count_local_extrema(values: &[f64]) -> usize {
    let mut count = 0;
    let mut last = 0.0f64;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        if d == 0.0 {
            continue;
        }
        if last != 0.0 && d.signum() != last.signum() {
            count += 1;
        }
        last = d;
    }
    count
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaPrimeReading {
    pub k: u32,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub samples: usize,
    pub extrema_literal: usize,
    pub extrema_from_energies: usize,
    /// Reading whose ground-state curve shows the high-frequency odd-k
    /// oscillation (>= 3 extrema), or "both"/"neither".
    pub oscillating_reading: String,
}

/// Counts extrema of `cos^2(theta')` over `alpha in [lo, hi]` at the odd
/// step `k` under both readings of the RWA mixing angle.
pub fn theta_prime_reading(params: &SystemParams, k: u32, lo: f64, hi: f64, samples: usize) -> ThetaPrimeReading {
    let t = diag_time(HamiltonianKind::Rwa, k);
    let curve = |literal: bool| -> Vec<f64> {
        linspace(lo, hi, samples)
            .into_iter()
            .map(|alpha| {
                let p = params.with_alpha(alpha);
                let th = if literal {
                    angles(HamiltonianKind::Rwa, &p, t, k).theta
                } else {
                    theta_prime_from_energies(&p, t, k)
                };
                th.cos().powi(2)
            })
            .collect()
    };
    let extrema_literal = count_local_extrema(&curve(true));
    let extrema_from_energies = count_local_extrema(&curve(false));
    let oscillating_reading = match (extrema_literal >= 3, extrema_from_energies >= 3) {
        (true, false) => "literal",
        (false, true) => "from_energies",
        (true, true) => "both",
        (false, false) => "neither",
    }
    .to_string();
    ThetaPrimeReading {
        k,
        alpha_min: lo,
        alpha_max: hi,
        samples,
        extrema_literal,
        extrema_from_energies,
        oscillating_reading,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FockSpace {
        FockSpace::new(n).unwrap()
    }

    fn point(eta: f64, alpha: f64) -> SystemParams {
        SystemParams {
            nu_ratio: 0.01,
            omega_a_ratio: 1.0,
            rabi_ratio: 1e-3,
            eta,
            alpha,
            fock_dim: 96,
        }
    }

    #[test]
    fn offdiagonal_vanishes_at_full_times() {
        let s = space(96);
        let b = HamiltonianBuilder::new(&point(0.5, 1.0), s).unwrap();
        for k in 0..=5 {
            let r = offdiagonal_residual_at(&b, HamiltonianKind::Full, diag_time(HamiltonianKind::Full, k)).unwrap();
            assert!(r < 1e-8, "k = {k}: {r:e}");
        }
        assert!(verify_offdiagonal(HamiltonianKind::Rwa, &point(0.5, 1.0), 0, s).unwrap() < 1e-8);
    }

    #[test]
    fn offdiagonal_at_t0_tracks_the_amplitude() {
        let s = space(96);
        for &(eta, alpha) in &[(0.5, 1.0), (1.0, 0.5), (0.25, 2.0)] {
            let p = point(eta, alpha);
            let b = HamiltonianBuilder::new(&p, s).unwrap();
            let (plus, minus) = basis_vectors(alpha, s).unwrap();
            let m = project_2x2(&b.rotated(HamiltonianKind::Full, 0.0).unwrap(), &plus, &minus).unwrap();
            let want = p.rabi_ratio * (-eta * eta / 2.0f64).exp() * (2.0 * eta * alpha).cos();
            assert!((m[0][1].norm() - want.abs()).abs() < 1e-12, "{eta} {alpha}");
        }
    }

    #[test]
    fn negative_control_large_coupling() {
        let s = space(96);
        let p = SystemParams {
            rabi_ratio: 0.1,
            ..point(0.1, 0.5)
        };
        let b = HamiltonianBuilder::new(&p, s).unwrap();
        let r = offdiagonal_residual_at(&b, HamiltonianKind::Full, 0.0).unwrap();
        assert!(r > 1e-3, "{r}");
    }

    #[test]
    fn decoupled_diagonal() {
        let p = SystemParams {
            rabi_ratio: 0.0,
            ..point(0.3, 0.0)
        };
        let s = space(30);
        for kind in HamiltonianKind::ALL {
            let b = HamiltonianBuilder::new(&p, s).unwrap();
            let d = diagonal_check_with(&b, kind, 0, 1e-6).unwrap();
            assert!((d.numeric[0] + 1.0).abs() < 1e-14 && (d.numeric[1] - 1.0).abs() < 1e-14);
            assert_eq!(d.mapping, DiagonalMapping::Direct);
            assert!(d.deviation < 1e-15);
        }
    }

    #[test]
    fn rwa_diagonal_matches_at_odd_step() {
        assert!(verify_diagonal(HamiltonianKind::Rwa, &point(0.5, 1.0), 1, space(96)).unwrap() < 1e-6);
    }

    #[test]
    fn full_diagonal_interaction_is_half_the_printed_value() {
        let b = HamiltonianBuilder::new(&point(0.5, 1.0), space(96)).unwrap();
        for k in 0..3 {
            let d = diagonal_check_with(&b, HamiltonianKind::Full, k, 1e-6).unwrap();
            let ratio = d.interaction_ratio.unwrap();
            assert!((ratio - 0.5).abs() < 1e-9, "k = {k}: {ratio}");
            assert_eq!(d.mapping, DiagonalMapping::None);
        }
    }

    #[test]
    fn theta_prime_examples() {
        let p = SystemParams {
            rabi_ratio: 0.0,
            ..point(0.3, 0.7)
        };
        let r = theta_prime_consistency(&p, 3);
        assert_eq!(r.gap, 0.0);

        let p = SystemParams {
            nu_ratio: 0.0,
            ..point(0.0, 1.0)
        };
        let r = theta_prime_consistency(&p, 1);
        let want = PI * (1e-3 * 2.0f64.exp() + 0.5e-3 * (-2.0f64).exp());
        assert!((r.gap - want).abs() < 1e-12);
        assert!((r.gap - 0.023_425_988_523_157_205).abs() < 1e-12);

        for k in [2, 4] {
            let r = theta_prime_consistency(&p, k);
            let want = r.t * 1e-3 * (-2.0f64).exp() / 2.0;
            assert!((r.gap - want).abs() < 1e-15);
        }
    }

    #[test]
    fn extrema_counter() {
        assert_eq!(count_local_extrema(&[0.0, 1.0, 2.0]), 0);
        assert_eq!(count_local_extrema(&[0.0, 1.0, 0.0, 1.0]), 2);
        assert_eq!(count_local_extrema(&[0.0, 1.0, 1.0, 0.0]), 1);
        assert_eq!(count_local_extrema(&[]), 0);
        let xs = linspace(0.0, 1.0, 5);
        assert_eq!(xs, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
