//! C ABI over the `ionrwa` library.
//!
//! Every function returns an [`IonrwaStatus`] and writes results through
//! out-pointers. On failure the message is available from
//! [`ionrwa_last_error`] on the same thread until the next call. Parameter
//! sets and oracles are opaque handles released with their `_free` function.
//! Strings returned by the library are released with [`ionrwa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ionrwa::cli::RunConfig;
use ionrwa::closed_forms as cf;
use ionrwa::entanglement;
use ionrwa::fock::{ComplexMatrix, FockSpace};
use ionrwa::oracle::{self, HamiltonianBuilder};
use ionrwa::{Complex64 as C64, Error, HamiltonianKind, SystemParams};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IonrwaStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Cutoff = 3,
    Contract = 4,
    Internal = 5,
    Propagation = 6,
    Config = 7,
    Io = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IonrwaKind {
    Full = 0,
    Rwa = 1,
}

impl From<IonrwaKind> for HamiltonianKind {
    fn from(k: IonrwaKind) -> Self {
        match k {
            IonrwaKind::Full => HamiltonianKind::Full,
            IonrwaKind::Rwa => HamiltonianKind::Rwa,
        }
    }
}

/// Opaque parameter set.
pub struct IonrwaParams {
    inner: SystemParams,
}

/// Opaque oracle bound to one parameter set and Fock cutoff.
pub struct IonrwaOracle {
    builder: HamiltonianBuilder,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> IonrwaStatus {
    match e {
        Error::Domain(_) => IonrwaStatus::Domain,
        Error::Cutoff { .. } => IonrwaStatus::Cutoff,
        Error::Contract(_) => IonrwaStatus::Contract,
        Error::Internal(_) => IonrwaStatus::Internal,
        Error::Propagation(_) => IonrwaStatus::Propagation,
        Error::Config(_) => IonrwaStatus::Config,
        Error::Io { .. } => IonrwaStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> IonrwaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            IonrwaStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            IonrwaStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside ionrwa");
            IonrwaStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn inp<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn slice<'a>(p: *const f64, n: usize, what: &'static str) -> Result<&'a [f64], Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

fn step(k: i64) -> Result<u32, Fail> {
    u32::try_from(k).map_err(|_| Fail::Lib(Error::Domain(format!("step index must be >= 0, got {k}"))))
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ionrwa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ionrwa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a validated parameter set. `fock_dim` is the highest retained
/// Fock occupation.
///
/// # Safety
/// `out_params` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_params_new(
    nu_ratio: f64,
    omega_a_ratio: f64,
    rabi_ratio: f64,
    eta: f64,
    alpha: f64,
    fock_dim: usize,
    out_params: *mut *mut IonrwaParams,
) -> IonrwaStatus {
    guard(|| {
        let slot = out(out_params, "out_params")?;
        let inner = SystemParams {
            nu_ratio,
            omega_a_ratio,
            rabi_ratio,
            eta,
            alpha,
            fock_dim,
        };
        inner.validate()?;
        *slot = Box::into_raw(Box::new(IonrwaParams { inner }));
        Ok(())
    })
}

/// # Safety
/// `params` must come from [`ionrwa_params_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_params_free(params: *mut IonrwaParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_params_set_alpha(params: *mut IonrwaParams, alpha: f64) -> IonrwaStatus {
    guard(|| {
        let p = out(params, "params")?;
        let next = p.inner.with_alpha(alpha);
        next.validate()?;
        p.inner = next;
        Ok(())
    })
}

/// # Safety
/// `params` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_params_set_eta(params: *mut IonrwaParams, eta: f64) -> IonrwaStatus {
    guard(|| {
        let p = out(params, "params")?;
        let next = p.inner.with_eta(eta);
        next.validate()?;
        p.inner = next;
        Ok(())
    })
}

/// Diagonalization time `t_k` in units of the inverse laser frequency.
///
/// # Safety
/// `out_t` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_diag_time(kind: IonrwaKind, k: i64, out_t: *mut f64) -> IonrwaStatus {
    guard(|| {
        let slot = out(out_t, "out_t")?;
        *slot = cf::diag_time_checked(kind.into(), k)?;
        Ok(())
    })
}

/// Diagonal elements of the rotated Hamiltonian at `t_k`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_energies(
    params: *const IonrwaParams,
    kind: IonrwaKind,
    k: i64,
    out_h11: *mut f64,
    out_h22: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        let p = inp(params, "params")?;
        let k = step(k)?;
        let e = cf::energies(kind.into(), &p.inner, k);
        *out(out_h11, "out_h11")? = e.h11;
        *out(out_h22, "out_h22")? = e.h22;
        Ok(())
    })
}

/// Interaction energy in units of `hbar * Omega`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_interaction_energy(
    params: *const IonrwaParams,
    kind: IonrwaKind,
    out_value: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        let p = inp(params, "params")?;
        *out(out_value, "out_value")? = cf::interaction_energy(kind.into(), &p.inner);
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_cooling_advantage(params: *const IonrwaParams, out_value: *mut f64) -> IonrwaStatus {
    guard(|| {
        let p = inp(params, "params")?;
        *out(out_value, "out_value")? = cf::cooling_advantage(&p.inner);
        Ok(())
    })
}

/// Global-phase rate and mixing angle at time `t` for step `k`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_angles(
    params: *const IonrwaParams,
    kind: IonrwaKind,
    t: f64,
    k: i64,
    out_delta: *mut f64,
    out_theta: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        let p = inp(params, "params")?;
        let a = cf::angles(kind.into(), &p.inner, t, step(k)?);
        *out(out_delta, "out_delta")? = a.delta;
        *out(out_theta, "out_theta")? = a.theta;
        Ok(())
    })
}

/// Ground-state probability at time `t` for step `k`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_ground_probability(
    params: *const IonrwaParams,
    kind: IonrwaKind,
    t: f64,
    k: i64,
    out_value: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        let p = inp(params, "params")?;
        *out(out_value, "out_value")? = cf::ground_probability(kind.into(), &p.inner, t, step(k)?);
        Ok(())
    })
}

/// Ground-state probability evaluated at `t_k`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_ground_probability_at_step(
    params: *const IonrwaParams,
    kind: IonrwaKind,
    k: i64,
    out_value: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        let p = inp(params, "params")?;
        *out(out_value, "out_value")? = cf::ground_probability_at_step(kind.into(), &p.inner, step(k)?);
        Ok(())
    })
}

/// Closed-form concurrence expression at time `t` for step `k`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_concurrence_closed_form(
    params: *const IonrwaParams,
    kind: IonrwaKind,
    t: f64,
    k: i64,
    out_value: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        let p = inp(params, "params")?;
        *out(out_value, "out_value")? = cf::concurrence_closed_form(kind.into(), &p.inner, t, step(k)?);
        Ok(())
    })
}

fn density_from_parts(re: &[f64], im: &[f64]) -> Result<entanglement::TwoQubitDensity, Fail> {
    let m = ComplexMatrix::from_fn(4, 4, |i, j| C64::new(re[4 * i + j], im[4 * i + j]));
    Ok(entanglement::TwoQubitDensity::new(m)?)
}

/// Wootters concurrence of a 4x4 density matrix given as row-major real and
/// imaginary parts (16 doubles each) in the basis `{g0, g1, e0, e1}`.
///
/// # Safety
/// `re` and `im` must point to 16 doubles; `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_wootters(re: *const f64, im: *const f64, out_value: *mut f64) -> IonrwaStatus {
    guard(|| {
        let rho = density_from_parts(slice(re, 16, "re")?, slice(im, 16, "im")?)?;
        *out(out_value, "out_value")? = entanglement::wootters(&rho)?;
        Ok(())
    })
}

/// `2|ad - bc|` for normalized amplitudes given as real and imaginary parts
/// (4 doubles each).
///
/// # Safety
/// `re` and `im` must point to 4 doubles; `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_pure_concurrence(re: *const f64, im: *const f64, out_value: *mut f64) -> IonrwaStatus {
    guard(|| {
        let (re, im) = (slice(re, 4, "re")?, slice(im, 4, "im")?);
        let z = |i: usize| C64::new(re[i], im[i]);
        *out(out_value, "out_value")? = entanglement::pure_concurrence(z(0), z(1), z(2), z(3))?;
        Ok(())
    })
}

/// Two-qubit density of the evolved state at mixing angle `theta`, written
/// row-major into `out_re` and `out_im` (16 doubles each).
///
/// # Safety
/// `out_re` and `out_im` must point to writable storage for 16 doubles.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_density_from_state(
    theta: f64,
    alpha: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(Fail::Null("out_re/out_im"));
        }
        let rho = entanglement::density_from_state(theta, alpha)?;
        let re = std::slice::from_raw_parts_mut(out_re, 16);
        let im = std::slice::from_raw_parts_mut(out_im, 16);
        for (idx, z) in rho.matrix().as_slice().iter().enumerate() {
            re[idx] = z.re;
            im[idx] = z.im;
        }
        Ok(())
    })
}

/// Builds an oracle on the parameter set's Fock cutoff. Fails with
/// `IONRWA_STATUS_CUTOFF` when the cutoff cannot represent `alpha`.
///
/// # Safety
/// `params` must be a live handle and `out_oracle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_oracle_new(
    params: *const IonrwaParams,
    out_oracle: *mut *mut IonrwaOracle,
) -> IonrwaStatus {
    guard(|| {
        let p = inp(params, "params")?;
        let slot = out(out_oracle, "out_oracle")?;
        let space = FockSpace::new(p.inner.fock_dim)?;
        space.check_alpha(p.inner.alpha)?;
        let builder = HamiltonianBuilder::new(&p.inner, space)?;
        *slot = Box::into_raw(Box::new(IonrwaOracle { builder }));
        Ok(())
    })
}

/// # Safety
/// `oracle` must come from [`ionrwa_oracle_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_oracle_free(oracle: *mut IonrwaOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}

/// Normalized off-diagonal element of the projected 2x2 Hamiltonian at `t_k`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_oracle_offdiagonal_residual(
    oracle: *const IonrwaOracle,
    kind: IonrwaKind,
    k: i64,
    out_value: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        let o = inp(oracle, "oracle")?;
        let kind = HamiltonianKind::from(kind);
        let t = cf::diag_time(kind, step(k)?);
        *out(out_value, "out_value")? = oracle::offdiagonal_residual_at(&o.builder, kind, t)?;
        Ok(())
    })
}

/// Relative deviation of the projected diagonal elements from the closed
/// forms at `t_k` (direct mapping).
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_oracle_diagonal_deviation(
    oracle: *const IonrwaOracle,
    kind: IonrwaKind,
    k: i64,
    out_value: *mut f64,
) -> IonrwaStatus {
    guard(|| {
        let o = inp(oracle, "oracle")?;
        let d = oracle::diagonal_check_with(&o.builder, kind.into(), step(k)?, oracle::DIAGONAL_TOL)?;
        *out(out_value, "out_value")? = d.deviation;
        Ok(())
    })
}

/// Runs the validation suite for a configuration given as `key = value`
/// text (empty text means defaults). Writes the JSON report to
/// `out_json` (release with [`ionrwa_string_free`]) and whether every hard
/// check passed to `out_all_passed`.
///
/// # Safety
/// `config_text` must be NUL-terminated; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_validate(
    config_text: *const c_char,
    out_json: *mut *mut c_char,
    out_all_passed: *mut bool,
) -> IonrwaStatus {
    guard(|| {
        if config_text.is_null() {
            return Err(Fail::Null("config_text"));
        }
        let slot = out(out_json, "out_json")?;
        let passed = out(out_all_passed, "out_all_passed")?;
        let text = CStr::from_ptr(config_text)
            .to_str()
            .map_err(|_| Error::Config("config text is not UTF-8".into()))?;
        let cfg = RunConfig::parse(text)?;
        let report = oracle::run_validation(&cfg.validation())?;
        *passed = report.all_hard_passed();
        *slot = CString::new(report.to_json())
            .map_err(|_| Error::Internal("report contains NUL".into()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ionrwa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
