use num_complex::Complex64;

use super::eig::hermitian_eig;
use super::matrix::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};

/// Initial states must be normalized to this tolerance.
pub const NORM_TOL: f64 = 1e-10;

/// Largest `||H||_1 dt` handled by a single Taylor sub-step.
const TAYLOR_SUBSTEP: f64 = 0.5;
const TAYLOR_MAX_TERMS: usize = 60;

/// `exp(-i H dt) = V diag(e^{-i lambda dt}) V^†`.
pub fn unitary_step(h: &ComplexMatrix, dt: f64) -> Result<ComplexMatrix> {
    if !dt.is_finite() {
        return Err(Error::Domain(format!("time step must be finite, got {dt}")));
    }
    let eig = hermitian_eig(h)?;
    Ok(eig.map_spectrum(|l| Complex64::from_polar(1.0, -l * dt)))
}

/// `exp(-i H dt) psi` by a sub-stepped Taylor series, accurate to double
/// precision without forming the exponential. Cost is a handful of
/// matrix-vector products per call.
pub fn expm_action(h: &ComplexMatrix, dt: f64, psi: &ComplexVector) -> Result<ComplexVector> {
    if !dt.is_finite() {
        return Err(Error::Domain(format!("time step must be finite, got {dt}")));
    }
    let n = h.rows();
    let substeps = ((h.norm_one() * dt.abs()) / TAYLOR_SUBSTEP).ceil().max(1.0) as usize;
    let h_dt = dt / substeps as f64;
    let mut state = psi.clone().into_vec();
    let mut term = vec![Complex64::new(0.0, 0.0); n];
    let mut next = vec![Complex64::new(0.0, 0.0); n];
    for _ in 0..substeps {
        term.copy_from_slice(&state);
        let scale = state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for k in 1..=TAYLOR_MAX_TERMS {
            h.matvec_into(&term, &mut next);
            let factor = Complex64::new(0.0, -h_dt / k as f64);
            let mut size = 0.0;
            for (t, x) in term.iter_mut().zip(&next) {
                *t = x * factor;
                size += t.norm_sqr();
            }
            for (s, t) in state.iter_mut().zip(&term) {
                *s += t;
            }
            if size.sqrt() <= 1e-18 * scale {
                break;
            }
        }
    }
    Ok(ComplexVector::from_vec(state))
}

/// How each midpoint step applies `exp(-i H dt)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StepMethod {
    /// Taylor action on the state vector.
    #[default]
    TaylorAction,
    /// Full [`unitary_step`] through the Jacobi eigendecomposition.
    Eigen,
}

/// Midpoint piecewise-constant propagation over `steps` uniform intervals:
/// `psi <- exp(-i H((t_j + t_{j+1})/2) dt) psi`.
pub fn evolve<F>(hamiltonian_at: F, psi0: &ComplexVector, t0: f64, t1: f64, steps: usize) -> Result<ComplexVector>
where
    F: FnMut(f64) -> Result<ComplexMatrix>,
{
    evolve_with(hamiltonian_at, psi0, t0, t1, steps, StepMethod::default())
}

pub fn evolve_with<F>(
    mut hamiltonian_at: F,
    psi0: &ComplexVector,
    t0: f64,
    t1: f64,
    steps: usize,
    method: StepMethod,
) -> Result<ComplexVector>
where
    F: FnMut(f64) -> Result<ComplexMatrix>,
{
    if steps == 0 {
        return Err(Error::Contract("evolve needs at least one step".into()));
    }
    if !(t0.is_finite() && t1.is_finite()) {
        return Err(Error::Domain(format!("non-finite time interval [{t0}, {t1}]")));
    }
    let norm = psi0.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Contract(format!("initial state norm {norm} is not 1")));
    }
    let dt = (t1 - t0) / steps as f64;
    let mut psi = psi0.clone();
    for j in 0..steps {
        let mid = t0 + (j as f64 + 0.5) * dt;
        let h = hamiltonian_at(mid)?;
        psi = match method {
            StepMethod::TaylorAction => expm_action(&h, dt, &psi)?,
            StepMethod::Eigen => unitary_step(&h, dt)?.matvec(&psi),
        };
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    fn random_state(n: usize, seed: u64) -> ComplexVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = ComplexVector::from_vec(
            (0..n)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        );
        let norm = v.norm();
        v.scale(c(1.0 / norm, 0.0))
    }

    #[test]
    fn zero_step_is_identity() {
        let h = random_hermitian(6, 1);
        let u = unitary_step(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(6)) < 1e-13);
    }

    #[test]
    fn diagonal_generator() {
        let vals = [0.3, -1.2, 2.0];
        let h = ComplexMatrix::diagonal(&vals.map(|x| c(x, 0.0)));
        let u = unitary_step(&h, 0.7).unwrap();
        for (i, &l) in vals.iter().enumerate() {
            assert!((u[(i, i)] - Complex64::from_polar(1.0, -l * 0.7)).norm() < 1e-15);
        }
    }

    #[test]
    fn group_inverse_and_unitarity() {
        let h = random_hermitian(12, 2);
        let u = unitary_step(&h, 0.9).unwrap();
        let back = unitary_step(&h, -0.9).unwrap();
        assert!(u.matmul(&back).max_abs_diff(&ComplexMatrix::identity(12)) < 1e-10);
        assert!(u.adjoint().matmul(&u).max_abs_diff(&ComplexMatrix::identity(12)) < 1e-10);
    }

    #[test]
    fn taylor_action_matches_eigen_route() {
        let h = random_hermitian(16, 3).scale_real(3.0);
        let psi = random_state(16, 4);
        for dt in [0.01, 0.4, 2.5, -1.3] {
            let a = expm_action(&h, dt, &psi).unwrap();
            let b = unitary_step(&h, dt).unwrap().matvec(&psi);
            assert!(a.max_abs_diff(&b) < 1e-12, "dt = {dt}");
        }
    }

    #[test]
    fn constant_generator_any_step_count() {
        let h = random_hermitian(8, 5);
        let psi = random_state(8, 6);
        let exact = unitary_step(&h, 1.7).unwrap().matvec(&psi);
        for steps in [1, 3, 40] {
            for method in [StepMethod::TaylorAction, StepMethod::Eigen] {
                let got = evolve_with(|_| Ok(h.clone()), &psi, 0.0, 1.7, steps, method).unwrap();
                assert!(got.max_abs_diff(&exact) < 1e-10);
            }
        }
    }

    #[test]
    fn zero_generator_leaves_state() {
        let psi = random_state(5, 8);
        let got = evolve(|_| Ok(ComplexMatrix::zeros(5, 5)), &psi, 0.0, 3.0, 10).unwrap();
        assert!(got.max_abs_diff(&psi) < 1e-15);
    }

    #[test]
    fn contract_errors() {
        let psi = ComplexVector::from_real(&[1.0, 1.0]);
        assert!(matches!(
            evolve(|_| Ok(ComplexMatrix::zeros(2, 2)), &psi, 0.0, 1.0, 4),
            Err(Error::Contract(_))
        ));
        let psi = ComplexVector::from_real(&[1.0, 0.0]);
        assert!(evolve(|_| Ok(ComplexMatrix::zeros(2, 2)), &psi, 0.0, 1.0, 0).is_err());
        let bad = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(unitary_step(&bad, 0.1), Err(Error::Contract(_))));
    }

    /// Driven two-level system: second-order midpoint convergence against a
    /// fine-step self reference.
    #[test]
    fn midpoint_is_second_order() {
        let drive = |t: f64| -> Result<ComplexMatrix> {
            Ok(ComplexMatrix::from_rows(&[
                &[c(0.5, 0.0), c(0.8 * t.cos(), 0.3 * t.sin())],
                &[c(0.8 * t.cos(), -0.3 * t.sin()), c(-0.5, 0.0)],
            ]))
        };
        let psi = ComplexVector::from_real(&[1.0, 0.0]);
        let period = std::f64::consts::TAU;
        let reference = evolve(drive, &psi, 0.0, period, 6400).unwrap();
        let e400 = evolve(drive, &psi, 0.0, period, 400).unwrap().sub(&reference).norm();
        let e800 = evolve(drive, &psi, 0.0, period, 800).unwrap().sub(&reference).norm();
        let ratio = e400 / e800;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }
}
