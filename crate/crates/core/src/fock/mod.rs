//! Truncated harmonic-oscillator numerics: ladder operators, coherent
//! states, normal-ordered displacement factors, Hermitian
//! eigendecomposition and time-ordered propagation.

mod eig;
mod matrix;
mod propagate;

use num_complex::Complex64;

use crate::closed_forms::minimal_cutoff;
use crate::error::{Error, Result};

pub use eig::{hermitian_eig, HermitianEigen};
pub use matrix::{ComplexMatrix, ComplexVector, HERMITIAN_TOL};
pub use propagate::{evolve, evolve_with, expm_action, unitary_step, StepMethod, NORM_TOL};

/// Oscillator truncated at occupation `cutoff`; the dimension is `cutoff + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FockSpace {
    cutoff: usize,
}

impl FockSpace {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return Err(Error::Domain("Fock cutoff must be >= 1".into()));
        }
        Ok(Self { cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }

    /// Errors unless the cutoff satisfies `N >= alpha^2 + 10 alpha + 20`.
    pub fn check_alpha(&self, alpha: f64) -> Result<()> {
        let minimal = minimal_cutoff(alpha);
        if self.cutoff < minimal {
            return Err(Error::Cutoff {
                alpha,
                cutoff: self.cutoff,
                minimal,
            });
        }
        Ok(())
    }
}

/// Annihilation and creation matrices, `a|n> = sqrt(n)|n-1>`.
pub fn ladder(space: FockSpace) -> (ComplexMatrix, ComplexMatrix) {
    let d = space.dim();
    let mut a = ComplexMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let adag = a.adjoint();
    (a, adag)
}

/// Number operator `a^† a` as a diagonal matrix.
pub fn number_operator(space: FockSpace) -> ComplexMatrix {
    let values: Vec<Complex64> = (0..space.dim()).map(|n| Complex64::new(n as f64, 0.0)).collect();
    ComplexMatrix::diagonal(&values)
}

/// Fock amplitudes of the real coherent state `|alpha>`.
///
/// Uses `c_{n+1} = c_n alpha / sqrt(n+1)` so large cutoffs never touch `n!`.
pub fn coherent_vector(alpha: f64, space: FockSpace) -> Result<ComplexVector> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
    }
    space.check_alpha(alpha.abs())?;
    Ok(coherent_vector_unchecked(alpha, space))
}

/// Same as [`coherent_vector`] but allows negative amplitudes through
/// the guard, which is evaluated on `|alpha|`.
pub(crate) fn coherent_vector_unchecked(alpha: f64, space: FockSpace) -> ComplexVector {
    let d = space.dim();
    let mut c = Vec::with_capacity(d);
    let mut amp = (-alpha * alpha / 2.0).exp();
    c.push(Complex64::new(amp, 0.0));
    for n in 0..space.cutoff() {
        amp *= alpha / ((n + 1) as f64).sqrt();
        c.push(Complex64::new(amp, 0.0));
    }
    ComplexVector::from_vec(c)
}

/// `sum_k M^k / k!` for a nilpotent `M`, summed up to the nilpotency bound
/// (the matrix dimension) or until the running power vanishes exactly.
pub fn exp_nilpotent(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=n {
        term = term.matmul(m).scale_real(1.0 / k as f64);
        if term.max_abs() == 0.0 {
            break;
        }
        sum.add_scaled(Complex64::new(1.0, 0.0), &term);
    }
    sum
}

/// Normal-ordered displacement factor `e^{i s eta a^†} e^{i s eta a}` and the
/// scalar `e^{-eta^2/2}` that completes `e^{i s eta (a + a^†)}`.
#[derive(Clone, Debug)]
pub struct NormalOrderedShift {
    pub matrix: ComplexMatrix,
    pub scalar: f64,
}

pub fn normal_ordered_shift(eta: f64, sign: i8, space: FockSpace) -> Result<NormalOrderedShift> {
    if !eta.is_finite() || eta < 0.0 {
        return Err(Error::Domain(format!("eta must be finite and >= 0, got {eta}")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("sign must be +1 or -1, got {sign}")));
    }
    let scalar = (-eta * eta / 2.0).exp();
    if eta == 0.0 {
        return Ok(NormalOrderedShift {
            matrix: ComplexMatrix::identity(space.dim()),
            scalar,
        });
    }
    let (a, adag) = ladder(space);
    let coeff = Complex64::new(0.0, f64::from(sign) * eta);
    let creation = exp_nilpotent(&adag.scale(coeff));
    let annihilation = exp_nilpotent(&a.scale(coeff));
    Ok(NormalOrderedShift {
        matrix: creation.matmul(&annihilation),
        scalar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FockSpace {
        FockSpace::new(n).unwrap()
    }

    #[test]
    fn ladder_n1() {
        let (a, adag) = ladder(space(1));
        assert_eq!(a, ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]));
        assert_eq!(adag, a.adjoint());
    }

    #[test]
    fn truncated_commutator() {
        let s = space(7);
        let (a, adag) = ladder(s);
        let comm = a.matmul(&adag).sub(&adag.matmul(&a));
        for n in 0..s.dim() {
            let want = if n == s.cutoff() { -(s.cutoff() as f64) } else { 1.0 };
            assert!((comm[(n, n)].re - want).abs() < 1e-14);
        }
        assert!(comm.sub(&ComplexMatrix::diagonal(&comm.diag())).max_abs() < 1e-14);
        let num = adag.matmul(&a);
        for n in 0..s.dim() {
            assert!((num[(n, n)].re - n as f64).abs() < 1e-13);
        }
        assert!(num.max_abs_diff(&number_operator(s)) < 1e-13);
    }

    #[test]
    fn vacuum_and_normalization() {
        let v = coherent_vector(0.0, space(30)).unwrap();
        assert_eq!(v[0], Complex64::new(1.0, 0.0));
        assert!(v.as_slice()[1..].iter().all(|z| *z == Complex64::new(0.0, 0.0)));
        let v = coherent_vector(2.0, space(64)).unwrap();
        assert!((v.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn opposite_amplitude_overlap() {
        let s = space(64);
        let plus = coherent_vector(1.0, s).unwrap();
        let minus = coherent_vector(-1.0, s).unwrap();
        // Analytic overlap <alpha|-alpha> = e^{-2 alpha^2}.
        assert!((plus.inner(&minus).re - (-2.0f64).exp()).abs() < 1e-12);
        assert!(plus.inner(&minus).im.abs() < 1e-15);
    }

    #[test]
    fn cutoff_guard() {
        let err = coherent_vector(2.0, space(40)).unwrap_err();
        assert!(matches!(err, Error::Cutoff { minimal: 44, .. }), "{err}");
        assert!(err.to_string().contains("44"));
    }

    #[test]
    fn eigenvector_of_annihilation() {
        let s = space(60);
        let alpha = 1.5;
        let (a, _) = ladder(s);
        let v = coherent_vector(alpha, s).unwrap();
        let av = a.matvec(&v);
        for n in 0..s.cutoff() - 5 {
            assert!((av[n] - v[n] * alpha).norm() < 1e-10);
        }
    }

    #[test]
    fn shift_identity_at_zero() {
        let s = space(10);
        for sign in [1, -1] {
            let sh = normal_ordered_shift(0.0, sign, s).unwrap();
            assert_eq!(sh.matrix, ComplexMatrix::identity(11));
            assert_eq!(sh.scalar, 1.0);
        }
        assert!(normal_ordered_shift(-0.1, 1, s).is_err());
        assert!(normal_ordered_shift(0.1, 0, s).is_err());
    }

    #[test]
    fn shift_scalar() {
        let sh = normal_ordered_shift(1.0, 1, space(8)).unwrap();
        assert!((sh.scalar - 0.606_530_659_712_633_4).abs() < 1e-15);
    }

    /// Analytic matrix element `<a|e^{i s eta a^†} e^{i s eta a}|b>
    /// = e^{i s eta (a + b)} e^{-(a^2 + b^2)/2 + a b}` for real `a`, `b`.
    fn analytic_element(eta: f64, sign: f64, a: f64, b: f64) -> Complex64 {
        Complex64::from_polar((-(a * a + b * b) / 2.0 + a * b).exp(), sign * eta * (a + b))
    }

    #[test]
    fn shift_matrix_elements() {
        let s = space(64);
        for (eta, sign, a, b) in [
            (0.5, 1, 1.0, 1.0),
            (0.5, -1, 1.0, -1.0),
            (1.0, 1, 2.0, 0.5),
            (0.25, -1, 0.0, 1.5),
        ] {
            let sh = normal_ordered_shift(eta, sign, s).unwrap();
            let va = coherent_vector(a, s).unwrap();
            let vb = coherent_vector(b, s).unwrap();
            let got = va.inner(&sh.matrix.matvec(&vb));
            let want = analytic_element(eta, f64::from(sign), a, b);
            assert!((got - want).norm() < 1e-12, "{eta} {sign} {a} {b}: {got} vs {want}");
        }
        // Frozen example: scalar * <1|D|1> at eta = 0.5.
        let sh = normal_ordered_shift(0.5, 1, s).unwrap();
        let v = coherent_vector(1.0, s).unwrap();
        let z = v.inner(&sh.matrix.matvec(&v)) * sh.scalar;
        let want = Complex64::from_polar(0.882_496_902_584_595_4, 1.0);
        assert!((z - want).norm() < 1e-12);
    }

    #[test]
    fn shift_adjoint_pairs() {
        let s = space(40);
        let plus = normal_ordered_shift(0.7, 1, s).unwrap();
        let minus = normal_ordered_shift(0.7, -1, s).unwrap();
        assert!(plus.matrix.adjoint().max_abs_diff(&minus.matrix) < 1e-12);
    }

    #[test]
    fn exp_nilpotent_closed_entries() {
        // (e^{c a})_{n, n+k} = c^k / k! sqrt((n+k)!/n!)
        let s = space(12);
        let (a, _) = ladder(s);
        let c = 0.3;
        let e = exp_nilpotent(&a.scale_real(c));
        for n in 0..s.dim() {
            for k in 0..(s.dim() - n) {
                let mut want = 1.0;
                for j in 1..=k {
                    want *= c / j as f64 * ((n + j) as f64).sqrt();
                }
                assert!((e[(n, n + k)].re - want).abs() < 1e-14 * want.max(1.0));
            }
        }
    }

    #[test]
    fn truncation_convergence_of_elements() {
        for &(eta, alpha) in &[(1.0, 2.0), (0.5, 1.0), (0.0, 2.0)] {
            let vals: Vec<Complex64> = [48usize, 96]
                .iter()
                .map(|&n| {
                    let s = space(n);
                    let sh = normal_ordered_shift(eta, -1, s).unwrap();
                    let v = coherent_vector(alpha, s).unwrap();
                    let w = coherent_vector(-alpha, s).unwrap();
                    v.inner(&sh.matrix.matvec(&w))
                })
                .collect();
            assert!((vals[0] - vals[1]).norm() < 1e-9);
        }
    }
}
