//! Effective two-qubit picture of the evolved ion state.
//!
//! The motional pair `{|alpha>, |-alpha>}` is orthogonalized into
//! `|0̄> = |alpha>` and its Gram-Schmidt complement `|1̄>`, giving the
//! ordered basis `{|g,0̄>, |g,1̄>, |e,0̄>, |e,1̄>}`. Pauli matrices use rows and
//! columns `(g, e)` with `<g|sigma_y|e> = -i`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{hermitian_eig, ComplexMatrix};

const DENSITY_TOL: f64 = 1e-12;
const EIGEN_FLOOR: f64 = -1e-10;
/// Density eigenvalues below `-NEGATIVE_LIMIT` are rejected by [`wootters`].
const NEGATIVE_LIMIT: f64 = 1e-8;
/// Eigenvalues of rho smaller than this multiple of `eps * lambda_max` are
/// treated as exact zeros before the square root.
const CLAMP_ULPS: f64 = 64.0;
const CONSTRUCTION_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Coefficients of `|-alpha> = P|0̄> + M|1̄>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitMap {
    pub p: f64,
    pub m: f64,
}

pub fn orthogonalize(alpha: f64) -> Result<QubitMap> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Domain(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    let a2 = alpha * alpha;
    Ok(QubitMap {
        p: (-2.0 * a2).exp(),
        m: (1.0 - (-4.0 * a2).exp()).sqrt(),
    })
}

/// Hermitian, unit-trace, positive 4x4 density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitDensity {
    matrix: ComplexMatrix,
}

impl TwoQubitDensity {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() != 4 {
            return Err(Error::Contract(format!(
                "two-qubit density must be 4x4, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > DENSITY_TOL {
            return Err(Error::Contract(format!("density not Hermitian (defect {defect:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::Contract(format!("density trace {tr} is not 1")));
        }
        let eig = hermitian_eig(&matrix)?;
        if eig.values[0] < EIGEN_FLOOR {
            return Err(Error::Contract(format!(
                "density has negative eigenvalue {:e}",
                eig.values[0]
            )));
        }
        Ok(Self { matrix })
    }

    /// `|psi><psi|` for normalized amplitudes.
    pub fn from_pure(amps: [Complex64; 4]) -> Result<Self> {
        check_normalized(&amps)?;
        Self::new(outer(&amps))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }
}

fn outer(amps: &[Complex64; 4]) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |i, j| amps[i] * amps[j].conj())
}

fn check_normalized(amps: &[Complex64]) -> Result<()> {
    let n: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::Contract(format!("amplitudes have squared norm {n}, expected 1")));
    }
    Ok(())
}

/// Amplitudes of `cos(theta)|g,alpha> - i sin(theta)|e,-alpha>` in the
/// orthogonalized basis.
pub fn state_amplitudes(theta: f64, alpha: f64) -> Result<[Complex64; 4]> {
    let QubitMap { p, m } = orthogonalize(alpha)?;
    let (s, co) = theta.sin_cos();
    Ok([c(co, 0.0), c(0.0, 0.0), c(0.0, -s * p), c(0.0, -s * m)])
}

/// Density matrix of the evolved state, assembled block by block from the
/// coherent-state expansion and cross-checked against the direct outer product.
pub fn density_from_state(theta: f64, alpha: f64) -> Result<TwoQubitDensity> {
    let QubitMap { p, m } = orthogonalize(alpha)?;
    let (s, co) = theta.sin_cos();
    let s2 = s * s;
    let half_sin = 0.5 * (2.0 * theta).sin();

    // Motional 2x2 blocks over {0̄, 1̄}.
    let gg = [[c(co * co, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
    let ee = [
        [c(s2 * p * p, 0.0), c(s2 * p * m, 0.0)],
        [c(s2 * p * m, 0.0), c(s2 * m * m, 0.0)],
    ];
    // <e|rho|g> = -(i/2) sin(2 theta) (M|1̄><0̄| + P|0̄><0̄|)
    let eg = [
        [c(0.0, -half_sin * p), c(0.0, 0.0)],
        [c(0.0, -half_sin * m), c(0.0, 0.0)],
    ];
    // <g|rho|e> = (i/2) sin(2 theta) (M|0̄><1̄| + P|0̄><0̄|)
    let ge = [[c(0.0, half_sin * p), c(0.0, half_sin * m)], [c(0.0, 0.0), c(0.0, 0.0)]];

    let blocks = ComplexMatrix::from_fn(4, 4, |i, j| {
        let (bi, bj) = (i / 2, j / 2);
        let (mi, mj) = (i % 2, j % 2);
        match (bi, bj) {
            (0, 0) => gg[mi][mj],
            (0, 1) => ge[mi][mj],
            (1, 0) => eg[mi][mj],
            _ => ee[mi][mj],
        }
    });

    let direct = outer(&state_amplitudes(theta, alpha)?);
    let gap = blocks.max_abs_diff(&direct);
    if gap > CONSTRUCTION_TOL {
        return Err(Error::Internal(format!(
            "block and outer-product densities disagree by {gap:e} at theta = {theta}, alpha = {alpha}"
        )));
    }
    TwoQubitDensity::new(blocks)
}

fn sigma_y_pair() -> ComplexMatrix {
    let sy = ComplexMatrix::from_rows(&[&[c(0.0, 0.0), c(0.0, -1.0)], &[c(0.0, 1.0), c(0.0, 0.0)]]);
    sy.kron(&sy)
}

/// `(sigma_y ⊗ sigma_y) rho^* (sigma_y ⊗ sigma_y)`
pub fn spin_flip(rho: &TwoQubitDensity) -> ComplexMatrix {
    let yy = sigma_y_pair();
    yy.matmul(&rho.matrix.conj()).matmul(&yy)
}

/// Wootters concurrence with its intermediate spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WoottersDetail {
    pub concurrence: f64,
    /// Square roots of the eigenvalues of `rho rho~`, descending.
    pub lambdas: [f64; 4],
    /// Largest magnitude of a density eigenvalue clamped to zero before
    /// taking the matrix square root.
    pub clamp: f64,
}

pub fn wootters(rho: &TwoQubitDensity) -> Result<f64> {
    wootters_detail(rho).map(|d| d.concurrence)
}

/// `max(l1 - l2 - l3 - l4, 0)`, where `l_i` are the square roots of the
/// eigenvalues of `rho rho~`.
///
/// The `l_i` are the singular values of `X = sqrt(rho) Y sqrt(rho)^*`
/// (`X X^† = sqrt(rho) rho~ sqrt(rho)`), read off the Hermitian dilation
/// `[[0, X], [X^†, 0]]` so no square root of a tiny eigenvalue is ever taken.
pub fn wootters_detail(rho: &TwoQubitDensity) -> Result<WoottersDetail> {
    let eig = hermitian_eig(&rho.matrix)?;
    if eig.values[0] < -NEGATIVE_LIMIT {
        return Err(Error::Contract(format!(
            "density eigenvalue {:e} is below -{NEGATIVE_LIMIT:e}",
            eig.values[0]
        )));
    }
    let top = eig.values.iter().copied().fold(0.0, f64::max);
    let floor = CLAMP_ULPS * f64::EPSILON * top;
    let mut clamp = 0.0f64;
    let sqrt_rho = eig.map_spectrum(|l| if l <= floor { c(0.0, 0.0) } else { c(l.sqrt(), 0.0) });
    for &l in &eig.values {
        if l <= floor {
            clamp = clamp.max(l.abs());
        }
    }

    let x = sqrt_rho.matmul(&sigma_y_pair()).matmul(&sqrt_rho.conj());
    let xh = x.adjoint();
    let dilation = ComplexMatrix::from_fn(8, 8, |i, j| match (i < 4, j < 4) {
        (true, false) => x[(i, j - 4)],
        (false, true) => xh[(i - 4, j)],
        _ => c(0.0, 0.0),
    });
    let spectrum = hermitian_eig(&dilation)?;
    let mut lambdas = [0.0; 4];
    for (slot, &v) in lambdas.iter_mut().zip(spectrum.values.iter().rev()) {
        *slot = v.max(0.0);
    }
    let concurrence = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(WoottersDetail {
        concurrence,
        lambdas,
        clamp,
    })
}

/// `2|ad - bc|` for a normalized pure state over `{g0̄, g1̄, e0̄, e1̄}`.
pub fn pure_concurrence(a: Complex64, b: Complex64, c_: Complex64, d: Complex64) -> Result<f64> {
    check_normalized(&[a, b, c_, d])?;
    Ok(2.0 * (a * d - b * c_).norm())
}
