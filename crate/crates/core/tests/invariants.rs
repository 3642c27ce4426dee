use ionrwa::closed_forms::{concurrence_closed_form, diag_time, ground_probability, minimal_cutoff};
use ionrwa::entanglement::{density_from_state, orthogonalize, pure_concurrence, wootters, TwoQubitDensity};
use ionrwa::fock::{coherent_vector, FockSpace};
use ionrwa::oracle::{offdiagonal_residual_at, HamiltonianBuilder};
use ionrwa::{Complex64, HamiltonianKind, SystemParams};
use proptest::prelude::*;

fn params(eta: f64, alpha: f64) -> SystemParams {
    SystemParams {
        eta,
        alpha,
        ..SystemParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coherent_states_are_normalized(alpha in -3.0f64..3.0) {
        let space = FockSpace::new(minimal_cutoff(alpha.abs())).unwrap();
        let v = coherent_vector(alpha, space).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        let w = coherent_vector(-alpha, space).unwrap();
        let overlap = v.inner(&w).re;
        prop_assert!((overlap - (-2.0 * alpha * alpha).exp()).abs() < 1e-12);
    }

    #[test]
    fn probabilities_and_concurrence_in_range(
        eta in 0.0f64..1.0, alpha in 0.0f64..2.0, t in 0.0f64..50.0, k in 0u32..8,
    ) {
        let p = params(eta, alpha);
        for kind in HamiltonianKind::ALL {
            let pg = ground_probability(kind, &p, t, k);
            let c = concurrence_closed_form(kind, &p, t, k);
            prop_assert!((0.0..=1.0).contains(&pg));
            prop_assert!((-1e-15..=1.0).contains(&c));
        }
    }

    #[test]
    fn family_concurrence_is_square_of_wootters(theta in 0.0f64..3.2, alpha in 0.0f64..2.0) {
        let rho = density_from_state(theta, alpha).unwrap();
        let w = wootters(&rho).unwrap();
        let q = orthogonalize(alpha).unwrap();
        let c = Complex64::new(0.0, 0.0);
        let s = theta.sin();
        let pure = pure_concurrence(
            Complex64::new(theta.cos(), 0.0), c, Complex64::new(0.0, -s * q.p), Complex64::new(0.0, -s * q.m),
        ).unwrap();
        prop_assert!((w - pure).abs() < 1e-10);
        let expected = (1.0 - (-4.0 * alpha * alpha).exp()) * (2.0 * theta).sin().powi(2);
        prop_assert!((w * w - expected).abs() < 1e-10);
        prop_assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wootters_bounded_on_mixtures(a in prop::array::uniform4(-1.0f64..1.0), b in prop::array::uniform4(-1.0f64..1.0), w in 0.0f64..1.0) {
        let norm = |x: [f64; 4]| {
            let n = x.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-3);
            x.map(|v| Complex64::new(v / n, 0.0))
        };
        let (x, y) = (norm(a), norm(b));
        prop_assume!(x.iter().map(|z| z.norm_sqr()).sum::<f64>() > 0.99);
        prop_assume!(y.iter().map(|z| z.norm_sqr()).sum::<f64>() > 0.99);
        let rx = TwoQubitDensity::from_pure(x).unwrap();
        let ry = TwoQubitDensity::from_pure(y).unwrap();
        let mixed = TwoQubitDensity::new(rx.matrix().scale_real(w).add(&ry.matrix().scale_real(1.0 - w))).unwrap();
        let c = wootters(&mixed).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
        // Convexity of the concurrence.
        let bound = w * wootters(&rx).unwrap() + (1.0 - w) * wootters(&ry).unwrap();
        prop_assert!(c <= bound + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn projected_hamiltonian_diagonal_at_every_step(eta in 0.0f64..1.0, alpha in 0.0f64..2.0, k in 0u32..6) {
        let space = FockSpace::new(minimal_cutoff(alpha)).unwrap();
        let b = HamiltonianBuilder::new(&params(eta, alpha), space).unwrap();
        for kind in HamiltonianKind::ALL {
            let r = offdiagonal_residual_at(&b, kind, diag_time(kind, k)).unwrap();
            prop_assert!(r < 1e-8, "{kind} residual {r}");
        }
    }
}
