use std::ffi::{CStr, CString};
use std::ptr;

use ionrwa_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ionrwa_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn params(eta: f64, alpha: f64, fock: usize) -> *mut IonrwaParams {
    let mut p = ptr::null_mut();
    let s = unsafe { ionrwa_params_new(0.01, 1.0, 1e-3, eta, alpha, fock, &mut p) };
    assert_eq!(s, IonrwaStatus::Ok, "{}", last_error());
    assert!(!p.is_null());
    p
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(ionrwa_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn closed_forms_through_handles() {
    let p = params(0.5, 1.0, 96);
    unsafe {
        let mut v = 0.0;
        assert_eq!(ionrwa_interaction_energy(p, IonrwaKind::Full, &mut v), IonrwaStatus::Ok);
        assert!((v - 1.4851910754155556).abs() < 1e-12);
        assert_eq!(ionrwa_interaction_energy(p, IonrwaKind::Rwa, &mut v), IonrwaStatus::Ok);
        assert!((v - 0.05971648413335981).abs() < 1e-12);

        assert_eq!(ionrwa_params_set_eta(p, 0.1), IonrwaStatus::Ok);
        assert_eq!(
            ionrwa_ground_probability_at_step(p, IonrwaKind::Full, 1, &mut v),
            IonrwaStatus::Ok
        );
        assert!((v - 0.6455092924469269).abs() < 1e-12);

        let mut t = 0.0;
        assert_eq!(ionrwa_diag_time(IonrwaKind::Rwa, 3, &mut t), IonrwaStatus::Ok);
        assert!((t - 3.0 * std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(ionrwa_diag_time(IonrwaKind::Full, -1, &mut t), IonrwaStatus::Domain);

        let (mut h11, mut h22) = (0.0, 0.0);
        assert_eq!(
            ionrwa_energies(p, IonrwaKind::Rwa, 0, &mut h11, &mut h22),
            IonrwaStatus::Ok
        );
        assert!(h22 > h11);
        ionrwa_params_free(p);
    }
}

#[test]
fn invalid_inputs_report_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            ionrwa_params_new(0.01, 1.0, 1e-3, -0.1, 1.0, 96, &mut p),
            IonrwaStatus::Domain
        );
        assert!(p.is_null());
        assert!(last_error().contains("eta"));

        assert_eq!(
            ionrwa_params_new(0.01, 1.0, 1e-3, 0.1, 1.0, 96, ptr::null_mut()),
            IonrwaStatus::NullPointer
        );
        let mut v = 0.0;
        assert_eq!(ionrwa_cooling_advantage(ptr::null(), &mut v), IonrwaStatus::NullPointer);
        assert!(!last_error().is_empty());

        let p = params(0.1, 1.0, 96);
        assert_eq!(ionrwa_cooling_advantage(p, ptr::null_mut()), IonrwaStatus::NullPointer);
        assert_eq!(ionrwa_params_set_alpha(p, f64::NAN), IonrwaStatus::Domain);
        assert_eq!(ionrwa_cooling_advantage(p, &mut v), IonrwaStatus::Ok);
        assert_eq!(last_error(), "");
        ionrwa_params_free(p);
        ionrwa_params_free(ptr::null_mut());
    }
}

#[test]
fn oracle_cutoff_and_checks() {
    unsafe {
        let small = params(0.25, 2.0, 30);
        let mut o = ptr::null_mut();
        assert_eq!(ionrwa_oracle_new(small, &mut o), IonrwaStatus::Cutoff);
        assert!(o.is_null());
        assert!(last_error().contains("44"), "{}", last_error());
        ionrwa_params_free(small);

        let p = params(0.25, 1.0, 96);
        assert_eq!(ionrwa_oracle_new(p, &mut o), IonrwaStatus::Ok);
        let mut r = 1.0;
        for k in 0..4 {
            assert_eq!(
                ionrwa_oracle_offdiagonal_residual(o, IonrwaKind::Full, k, &mut r),
                IonrwaStatus::Ok
            );
            assert!(r < 1e-8);
            assert_eq!(
                ionrwa_oracle_diagonal_deviation(o, IonrwaKind::Rwa, k, &mut r),
                IonrwaStatus::Ok
            );
            assert!(r < 1e-6);
        }
        // Full diagonal interaction comes out at half the closed form.
        assert_eq!(
            ionrwa_oracle_diagonal_deviation(o, IonrwaKind::Full, 0, &mut r),
            IonrwaStatus::Ok
        );
        assert!(r > 1e-3);
        ionrwa_oracle_free(o);
        ionrwa_oracle_free(ptr::null_mut());
        ionrwa_params_free(p);
    }
}

#[test]
fn entanglement_entry_points() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    unsafe {
        let (re, im) = ([h, 0.0, 0.0, h], [0.0; 4]);
        let mut c = 0.0;
        assert_eq!(
            ionrwa_pure_concurrence(re.as_ptr(), im.as_ptr(), &mut c),
            IonrwaStatus::Ok
        );
        assert!((c - 1.0).abs() < 1e-15);

        let mut rho_re = [0.0; 16];
        let rho_im = [0.0; 16];
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            rho_re[4 * i + j] = 0.5;
        }
        assert_eq!(
            ionrwa_wootters(rho_re.as_ptr(), rho_im.as_ptr(), &mut c),
            IonrwaStatus::Ok
        );
        assert!((c - 1.0).abs() < 1e-14);

        rho_re[1] = 0.3;
        assert_eq!(
            ionrwa_wootters(rho_re.as_ptr(), rho_im.as_ptr(), &mut c),
            IonrwaStatus::Contract
        );
        assert_eq!(
            ionrwa_wootters(ptr::null(), rho_im.as_ptr(), &mut c),
            IonrwaStatus::NullPointer
        );

        let (mut dre, mut dim) = ([0.0; 16], [0.0; 16]);
        assert_eq!(
            ionrwa_density_from_state(0.7, 1.0, dre.as_mut_ptr(), dim.as_mut_ptr()),
            IonrwaStatus::Ok
        );
        let trace: f64 = (0..4).map(|i| dre[5 * i]).sum();
        assert!((trace - 1.0).abs() < 1e-12);
        assert_eq!(ionrwa_wootters(dre.as_ptr(), dim.as_ptr(), &mut c), IonrwaStatus::Ok);
        let p = params(0.0, 1.0, 96);
        let mut closed = 0.0;
        assert_eq!(
            ionrwa_concurrence_closed_form(p, IonrwaKind::Full, 0.7 * 2f64.exp(), 0, &mut closed),
            IonrwaStatus::Ok
        );
        assert!((closed - c * c).abs() < 1e-9, "{closed} vs {c}^2");
        ionrwa_params_free(p);
    }
}

#[test]
fn validate_returns_owned_json() {
    let cfg = CString::new(
        "validate_etas = 0\nvalidate_alphas = 0,1\nvalidate_ks = 0,1\nperiods = 1\nsteps_per_period = 200\n\
         convergence_steps = 100\nrelation_steps = 10\n",
    )
    .unwrap();
    unsafe {
        let mut json = ptr::null_mut();
        let mut passed = false;
        assert_eq!(
            ionrwa_validate(cfg.as_ptr(), &mut json, &mut passed),
            IonrwaStatus::Ok,
            "{}",
            last_error()
        );
        assert!(passed);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        ionrwa_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["summary"]["hard_failed"], 0);

        let bad = CString::new("bogus = 1\n").unwrap();
        assert_eq!(
            ionrwa_validate(bad.as_ptr(), &mut json, &mut passed),
            IonrwaStatus::Config
        );
        assert!(last_error().contains("bogus"));
        ionrwa_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_thread_local() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(ionrwa_cooling_advantage(ptr::null(), &mut v), IonrwaStatus::NullPointer);
    }
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert!(!last_error().is_empty());
}
