//! C ABI for the polybasis library.
//!
//! Conventions:
//! - every fallible call returns a [`PbStatus`]; outputs go through pointers;
//! - handles ([`PbRule`], [`PbSpectrum`], [`PbCoefficients`]) are opaque,
//!   created by `pb_*_new` style constructors and released by `pb_*_free`;
//! - null pointers are rejected with `PB_STATUS_NULL_ARGUMENT`, never
//!   dereferenced;
//! - panics never unwind across the boundary; they surface as
//!   `PB_STATUS_PANIC`;
//! - complex values are returned as separate re/im doubles.
//!
//! The generated header lives at `include/polybasis.h` and is refreshed by
//! the build script.

use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use polybasis::basis::{c_multipolar, c_planewave, BasisIndex, ScaleConfig, WaveVector};
use polybasis::error::Error;
use polybasis::hilbert::{
    energy, gauss_laguerre_rule, inner_product, photon_number, QuadratureRule, SpectralChannel,
};
use polybasis::projection::{project, residual, CoefficientVector};
use polybasis::timedomain::{radial_kernel, wavelet_scan, KernelKind, KernelSpec};

/// Result of every fallible call in this ABI.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbStatus {
    /// Success.
    Ok = 0,
    /// An argument lies outside the function's domain.
    Domain = 1,
    /// Arguments are individually valid but mutually inconsistent.
    Contract = 2,
    /// A size or order cap was exceeded.
    CapExceeded = 3,
    /// An iteration failed to converge.
    Numerical = 4,
    /// A required pointer was null.
    NullArgument = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
    /// Any other error.
    Other = 7,
}

/// Kernel kinds accepted by `pb_kernel_eval` and `pb_kernel_scan`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbKernelKind {
    /// Standing kernel, regular at the origin.
    Regular = 0,
    /// Kernel converging toward the origin.
    Incoming = 1,
    /// Kernel diverging from the origin.
    Outgoing = 2,
}

/// Opaque Gauss quadrature rule for the ∫dk k measure.
pub struct PbRule {
    inner: QuadratureRule,
}

/// Opaque spectrum: a set of per-(j, m, λ) sample vectors on a rule's nodes.
pub struct PbSpectrum {
    channels: Vec<SpectralChannel>,
}

/// Opaque truncated expansion {f_njmλ}.
pub struct PbCoefficients {
    inner: CoefficientVector,
}

fn status_of(e: &Error) -> PbStatus {
    match e {
        Error::Domain(_) => PbStatus::Domain,
        Error::Contract(_) => PbStatus::Contract,
        Error::CapExceeded { .. } => PbStatus::CapExceeded,
        Error::Numerical(_) => PbStatus::Numerical,
        _ => PbStatus::Other,
    }
}

/// Runs `f`, converting panics into a status instead of unwinding into C.
fn guarded(f: impl FnOnce() -> PbStatus) -> PbStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PbStatus::Panic)
}

fn scale_for(k0: f64) -> Result<ScaleConfig, PbStatus> {
    ScaleConfig::with_k0(k0).map_err(|e| status_of(&e))
}

fn lambda_from(lambda: i32) -> Result<i8, PbStatus> {
    match lambda {
        1 => Ok(1),
        -1 => Ok(-1),
        _ => Err(PbStatus::Domain),
    }
}

fn kind_from(kind: i32) -> Result<KernelKind, PbStatus> {
    match kind {
        0 => Ok(KernelKind::Regular),
        1 => Ok(KernelKind::Incoming),
        2 => Ok(KernelKind::Outgoing),
        _ => Err(PbStatus::Domain),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! try_core {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return status_of(&e),
        }
    };
}

/// Dereferences an out-pointer or bails with `NullArgument`.
macro_rules! out_ref {
    ($p:expr) => {
        match unsafe { $p.as_mut() } {
            Some(r) => r,
            None => return PbStatus::NullArgument,
        }
    };
}

/// Dereferences a handle or bails with `NullArgument`.
macro_rules! handle_ref {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(r) => r,
            None => return PbStatus::NullArgument,
        }
    };
}

static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");

/// Returns the library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pb_version() -> *const c_char {
    VERSION.as_ptr() as *const c_char
}

/// Evaluates the multipolar radial coefficient c_nj(k) at scale k0.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn pb_multipolar_coefficient(
    n: u32,
    j: u32,
    k: f64,
    k0: f64,
    out: *mut f64,
) -> PbStatus {
    guarded(|| {
        let out = out_ref!(out);
        let scale = try_status!(scale_for(k0));
        *out = try_core!(c_multipolar(n, j, k, &scale));
        PbStatus::Ok
    })
}

/// Evaluates the plane-wave expansion coefficient of |n j m λ⟩ at the wave
/// vector (k, θ, φ). `lambda` must be +1 or -1.
///
/// # Safety
/// `out_re` and `out_im` must be valid pointers to doubles.
#[no_mangle]
pub unsafe extern "C" fn pb_planewave_coefficient(
    n: u32,
    j: u32,
    m: i32,
    lambda: i32,
    k: f64,
    theta: f64,
    phi: f64,
    k0: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PbStatus {
    guarded(|| {
        let out_re = out_ref!(out_re);
        let out_im = out_ref!(out_im);
        let scale = try_status!(scale_for(k0));
        let lambda = try_status!(lambda_from(lambda));
        let index = try_core!(BasisIndex::new(n, j, m, lambda));
        let p = try_core!(WaveVector::new(k, theta, phi));
        let v = try_core!(c_planewave(&index, &p, &scale));
        *out_re = v.re;
        *out_im = v.im;
        PbStatus::Ok
    })
}

/// Builds a quadrature rule of the given order for scale k0 and writes the
/// new handle to `out`. Release with `pb_rule_free`.
///
/// # Safety
/// `out` must be a valid pointer to a `PbRule*`.
#[no_mangle]
pub unsafe extern "C" fn pb_rule_new(order: usize, k0: f64, out: *mut *mut PbRule) -> PbStatus {
    guarded(|| {
        let out = out_ref!(out);
        let inner = try_core!(gauss_laguerre_rule(order, k0));
        *out = Box::into_raw(Box::new(PbRule { inner }));
        PbStatus::Ok
    })
}

/// Releases a rule handle. Null is a no-op; the handle must not be used
/// afterwards.
///
/// # Safety
/// `rule` must be null or a pointer obtained from `pb_rule_new` that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn pb_rule_free(rule: *mut PbRule) {
    if !rule.is_null() {
        drop(unsafe { Box::from_raw(rule) });
    }
}

/// Writes the rule's order (its node count).
///
/// # Safety
/// `rule` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pb_rule_order(rule: *const PbRule, out: *mut usize) -> PbStatus {
    guarded(|| {
        let rule = handle_ref!(rule);
        let out = out_ref!(out);
        *out = rule.inner.order();
        PbStatus::Ok
    })
}

/// Copies the rule's nodes (wavenumbers, ascending) into `out`, which must
/// hold `len` doubles; `len` must equal the rule's order.
///
/// # Safety
/// `rule` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pb_rule_nodes(
    rule: *const PbRule,
    out: *mut f64,
    len: usize,
) -> PbStatus {
    guarded(|| {
        let rule = handle_ref!(rule);
        if out.is_null() {
            return PbStatus::NullArgument;
        }
        if len != rule.inner.order() {
            return PbStatus::Contract;
        }
        unsafe { std::ptr::copy_nonoverlapping(rule.inner.nodes().as_ptr(), out, len) };
        PbStatus::Ok
    })
}

/// Copies the rule's weights (for the ∫dk k measure) into `out`, which must
/// hold `len` doubles; `len` must equal the rule's order.
///
/// # Safety
/// `rule` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pb_rule_weights(
    rule: *const PbRule,
    out: *mut f64,
    len: usize,
) -> PbStatus {
    guarded(|| {
        let rule = handle_ref!(rule);
        if out.is_null() {
            return PbStatus::NullArgument;
        }
        if len != rule.inner.order() {
            return PbStatus::Contract;
        }
        unsafe { std::ptr::copy_nonoverlapping(rule.inner.weights().as_ptr(), out, len) };
        PbStatus::Ok
    })
}

/// Creates an empty spectrum and writes the new handle to `out`. Release
/// with `pb_spectrum_free`.
///
/// # Safety
/// `out` must be a valid pointer to a `PbSpectrum*`.
#[no_mangle]
pub unsafe extern "C" fn pb_spectrum_new(out: *mut *mut PbSpectrum) -> PbStatus {
    guarded(|| {
        let out = out_ref!(out);
        *out = Box::into_raw(Box::new(PbSpectrum { channels: Vec::new() }));
        PbStatus::Ok
    })
}

/// Releases a spectrum handle. Null is a no-op.
///
/// # Safety
/// `spectrum` must be null or a pointer obtained from `pb_spectrum_new` that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn pb_spectrum_free(spectrum: *mut PbSpectrum) {
    if !spectrum.is_null() {
        drop(unsafe { Box::from_raw(spectrum) });
    }
}

/// Appends one (j, m, λ) channel sampled on a rule's nodes: `len` values
/// with real parts `re[i]` and imaginary parts `im[i]`. A channel with the
/// same labels must not already be present if the spectrum is later fed to a
/// functional.
///
/// # Safety
/// `spectrum` must be a live handle; `re` and `im` must point to `len`
/// readable doubles.
#[no_mangle]
pub unsafe extern "C" fn pb_spectrum_add_channel(
    spectrum: *mut PbSpectrum,
    j: u32,
    m: i32,
    lambda: i32,
    re: *const f64,
    im: *const f64,
    len: usize,
) -> PbStatus {
    guarded(|| {
        let spectrum = match unsafe { spectrum.as_mut() } {
            Some(s) => s,
            None => return PbStatus::NullArgument,
        };
        if re.is_null() || im.is_null() {
            return PbStatus::NullArgument;
        }
        let lambda = try_status!(lambda_from(lambda));
        let res = unsafe { std::slice::from_raw_parts(re, len) };
        let ims = unsafe { std::slice::from_raw_parts(im, len) };
        let samples: Vec<Complex64> = res
            .iter()
            .zip(ims)
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        let channel = try_core!(SpectralChannel::new(j, m, lambda, samples));
        spectrum.channels.push(channel);
        PbStatus::Ok
    })
}

/// Appends the spectrum of the basis vector |n j m λ⟩ sampled on the rule's
/// nodes at scale k0.
///
/// # Safety
/// `spectrum` and `rule` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn pb_spectrum_add_basis_state(
    spectrum: *mut PbSpectrum,
    n: u32,
    j: u32,
    m: i32,
    lambda: i32,
    rule: *const PbRule,
    k0: f64,
) -> PbStatus {
    guarded(|| {
        let rule = handle_ref!(rule);
        let spectrum = match unsafe { spectrum.as_mut() } {
            Some(s) => s,
            None => return PbStatus::NullArgument,
        };
        let lambda = try_status!(lambda_from(lambda));
        let scale = try_status!(scale_for(k0));
        try_core!(BasisIndex::new(n, j, m, lambda));
        let samples: Vec<Complex64> = {
            let mut v = Vec::with_capacity(rule.inner.order());
            for &k in rule.inner.nodes() {
                let c = try_core!(c_multipolar(n, j, k, &scale));
                v.push(Complex64::new(c, 0.0));
            }
            v
        };
        let channel = try_core!(SpectralChannel::new(j, m, lambda, samples));
        spectrum.channels.push(channel);
        PbStatus::Ok
    })
}

/// Writes the photon number ⟨f|f⟩ of the spectrum under the rule.
///
/// # Safety
/// `spectrum` and `rule` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pb_photon_number(
    spectrum: *const PbSpectrum,
    rule: *const PbRule,
    out: *mut f64,
) -> PbStatus {
    guarded(|| {
        let spectrum = handle_ref!(spectrum);
        let rule = handle_ref!(rule);
        let out = out_ref!(out);
        *out = try_core!(photon_number(&spectrum.channels, &rule.inner));
        PbStatus::Ok
    })
}

/// Writes the field energy in joules for the spectrum at scale k0.
///
/// # Safety
/// `spectrum` and `rule` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pb_energy(
    spectrum: *const PbSpectrum,
    rule: *const PbRule,
    k0: f64,
    out: *mut f64,
) -> PbStatus {
    guarded(|| {
        let spectrum = handle_ref!(spectrum);
        let rule = handle_ref!(rule);
        let out = out_ref!(out);
        let scale = try_status!(scale_for(k0));
        *out = try_core!(energy(&spectrum.channels, &rule.inner, &scale));
        PbStatus::Ok
    })
}

/// Writes the scalar product ⟨f|g⟩ (antilinear in `f`) under the rule.
///
/// # Safety
/// `f`, `g`, and `rule` must be live handles; `out_re`/`out_im` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn pb_inner_product(
    f: *const PbSpectrum,
    g: *const PbSpectrum,
    rule: *const PbRule,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PbStatus {
    guarded(|| {
        let f = handle_ref!(f);
        let g = handle_ref!(g);
        let rule = handle_ref!(rule);
        let out_re = out_ref!(out_re);
        let out_im = out_ref!(out_im);
        let v = try_core!(inner_product(&f.channels, &g.channels, &rule.inner));
        *out_re = v.re;
        *out_im = v.im;
        PbStatus::Ok
    })
}

/// Expands the spectrum in the basis up to n_max at scale k0 and writes the
/// new coefficient handle to `out`. The rule must have been built for the
/// same k0. Release with `pb_coefficients_free`.
///
/// # Safety
/// `spectrum` and `rule` must be live handles; `out` must be a valid pointer
/// to a `PbCoefficients*`.
#[no_mangle]
pub unsafe extern "C" fn pb_project(
    spectrum: *const PbSpectrum,
    n_max: u32,
    rule: *const PbRule,
    k0: f64,
    out: *mut *mut PbCoefficients,
) -> PbStatus {
    guarded(|| {
        let spectrum = handle_ref!(spectrum);
        let rule = handle_ref!(rule);
        let out = out_ref!(out);
        let scale = try_status!(scale_for(k0));
        let inner = try_core!(project(&spectrum.channels, n_max, &rule.inner, &scale));
        *out = Box::into_raw(Box::new(PbCoefficients { inner }));
        PbStatus::Ok
    })
}

/// Releases a coefficient handle. Null is a no-op.
///
/// # Safety
/// `coeffs` must be null or a pointer obtained from `pb_project` that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn pb_coefficients_free(coeffs: *mut PbCoefficients) {
    if !coeffs.is_null() {
        drop(unsafe { Box::from_raw(coeffs) });
    }
}

/// Writes the number of stored coefficients.
///
/// # Safety
/// `coeffs` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pb_coefficients_len(
    coeffs: *const PbCoefficients,
    out: *mut usize,
) -> PbStatus {
    guarded(|| {
        let coeffs = handle_ref!(coeffs);
        let out = out_ref!(out);
        *out = coeffs.inner.len();
        PbStatus::Ok
    })
}

/// Writes the coefficient at (n, j, m, λ); an admissible index that was not
/// populated reads as zero.
///
/// # Safety
/// `coeffs` must be a live handle; `out_re`/`out_im` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pb_coefficients_get(
    coeffs: *const PbCoefficients,
    n: u32,
    j: u32,
    m: i32,
    lambda: i32,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PbStatus {
    guarded(|| {
        let coeffs = handle_ref!(coeffs);
        let out_re = out_ref!(out_re);
        let out_im = out_ref!(out_im);
        let lambda = try_status!(lambda_from(lambda));
        let index = try_core!(BasisIndex::new(n, j, m, lambda));
        let v = coeffs.inner.get(&index);
        *out_re = v.re;
        *out_im = v.im;
        PbStatus::Ok
    })
}

/// Writes the truncation residual ⟨f|f⟩ − Σ|f_njmλ|²: `out_raw` keeps the
/// (possibly tiny negative) difference, `out_clamped` floors it at zero.
///
/// # Safety
/// `spectrum`, `coeffs`, and `rule` must be live handles; `out_raw` and
/// `out_clamped` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pb_residual(
    spectrum: *const PbSpectrum,
    coeffs: *const PbCoefficients,
    rule: *const PbRule,
    out_raw: *mut f64,
    out_clamped: *mut f64,
) -> PbStatus {
    guarded(|| {
        let spectrum = handle_ref!(spectrum);
        let coeffs = handle_ref!(coeffs);
        let rule = handle_ref!(rule);
        let out_raw = out_ref!(out_raw);
        let out_clamped = out_ref!(out_clamped);
        let r = try_core!(residual(&spectrum.channels, &coeffs.inner, &rule.inner));
        *out_raw = r.raw;
        *out_clamped = r.clamped;
        PbStatus::Ok
    })
}

/// Evaluates the (n, j) kernel of the given kind in partial wave l at radius
/// r and time ct (both in meters; the scale is fixed at k0 = 1). `kind` is
/// one of the `PbKernelKind` values.
///
/// # Safety
/// `out_re` and `out_im` must be valid pointers to doubles.
#[no_mangle]
pub unsafe extern "C" fn pb_kernel_eval(
    n: u32,
    j: u32,
    l: u32,
    kind: i32,
    r: f64,
    ct: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PbStatus {
    guarded(|| {
        let out_re = out_ref!(out_re);
        let out_im = out_ref!(out_im);
        let kind = try_status!(kind_from(kind));
        let spec = try_core!(KernelSpec::new(n, j, l, kind, r, ScaleConfig::default()));
        let v = try_core!(radial_kernel(&spec, ct));
        *out_re = v.re;
        *out_im = v.im;
        PbStatus::Ok
    })
}

/// Evaluates the kernel on an ascending ct grid of `len` points, writing
/// real and imaginary parts to `out_re` and `out_im`.
///
/// # Safety
/// `ct` must point to `len` readable doubles; `out_re` and `out_im` must
/// point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pb_kernel_scan(
    n: u32,
    j: u32,
    l: u32,
    kind: i32,
    r: f64,
    ct: *const f64,
    len: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> PbStatus {
    guarded(|| {
        if ct.is_null() || out_re.is_null() || out_im.is_null() {
            return PbStatus::NullArgument;
        }
        let kind = try_status!(kind_from(kind));
        let spec = try_core!(KernelSpec::new(n, j, l, kind, r, ScaleConfig::default()));
        let grid = unsafe { std::slice::from_raw_parts(ct, len) };
        let trace = try_core!(wavelet_scan(&spec, grid));
        for (i, v) in trace.values.iter().enumerate() {
            unsafe {
                *out_re.add(i) = v.re;
                *out_im.add(i) = v.im;
            }
        }
        PbStatus::Ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn version_is_nul_terminated() {
        let p = pb_version();
        let s = unsafe { std::ffi::CStr::from_ptr(p) };
        assert_eq!(s.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn scalar_coefficient_round_trip() {
        let mut v = 0.0;
        let st = unsafe { pb_multipolar_coefficient(2, 1, 1.0, 1.0, &mut v) };
        assert_eq!(st, PbStatus::Ok);
        assert!((v - 0.6007446118201704).abs() < 1e-15);

        // inadmissible pair
        let st = unsafe { pb_multipolar_coefficient(2, 2, 1.0, 1.0, &mut v) };
        assert_eq!(st, PbStatus::Domain);

        // null out-pointer
        let st = unsafe { pb_multipolar_coefficient(2, 1, 1.0, 1.0, ptr::null_mut()) };
        assert_eq!(st, PbStatus::NullArgument);
    }

    #[test]
    fn planewave_reduces_on_axis() {
        let (mut re, mut im) = (0.0, 0.0);
        let st = unsafe {
            pb_planewave_coefficient(2, 1, 1, 1, 1.0, 0.0, 0.0, 1.0, &mut re, &mut im)
        };
        assert_eq!(st, PbStatus::Ok);
        assert!(re > 0.0);
        assert_eq!(im, 0.0);

        let st = unsafe {
            pb_planewave_coefficient(2, 1, 1, 3, 1.0, 0.0, 0.0, 1.0, &mut re, &mut im)
        };
        assert_eq!(st, PbStatus::Domain, "lambda must be +1 or -1");
    }

    #[test]
    fn rule_lifecycle_and_moment() {
        let mut rule: *mut PbRule = ptr::null_mut();
        assert_eq!(unsafe { pb_rule_new(64, 1.0, &mut rule) }, PbStatus::Ok);
        let mut order = 0usize;
        assert_eq!(unsafe { pb_rule_order(rule, &mut order) }, PbStatus::Ok);
        assert_eq!(order, 64);

        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        assert_eq!(
            unsafe { pb_rule_nodes(rule, nodes.as_mut_ptr(), order) },
            PbStatus::Ok
        );
        assert_eq!(
            unsafe { pb_rule_weights(rule, weights.as_mut_ptr(), order) },
            PbStatus::Ok
        );
        // ∫ dk k e^{-2k} = 1/4
        let m: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&k, &w)| w * (-2.0 * k).exp())
            .sum();
        assert!((m - 0.25).abs() < 1e-14, "moment {m}");

        // wrong buffer length is a contract breach
        assert_eq!(
            unsafe { pb_rule_nodes(rule, nodes.as_mut_ptr(), order - 1) },
            PbStatus::Contract
        );

        unsafe { pb_rule_free(rule) };
        unsafe { pb_rule_free(ptr::null_mut()) };

        // invalid order surfaces as a domain error
        let mut bad: *mut PbRule = ptr::null_mut();
        assert_eq!(unsafe { pb_rule_new(1, 1.0, &mut bad) }, PbStatus::Domain);
        assert!(bad.is_null());
    }

    #[test]
    fn spectrum_functionals_and_projection() {
        let mut rule: *mut PbRule = ptr::null_mut();
        assert_eq!(unsafe { pb_rule_new(120, 1.0, &mut rule) }, PbStatus::Ok);

        let mut f: *mut PbSpectrum = ptr::null_mut();
        assert_eq!(unsafe { pb_spectrum_new(&mut f) }, PbStatus::Ok);
        assert_eq!(
            unsafe { pb_spectrum_add_basis_state(f, 3, 1, 0, 1, rule, 1.0) },
            PbStatus::Ok
        );

        let mut pn = 0.0;
        assert_eq!(unsafe { pb_photon_number(f, rule, &mut pn) }, PbStatus::Ok);
        assert!((pn - 1.0).abs() < 1e-12, "photon number {pn}");

        let mut en = 0.0;
        assert_eq!(unsafe { pb_energy(f, rule, 1.0, &mut en) }, PbStatus::Ok);
        let expect = 3.0 * polybasis::basis::HBAR * polybasis::basis::C0;
        assert!((en / expect - 1.0).abs() < 1e-12, "energy {en}");

        // distinct basis states are orthogonal
        let mut g: *mut PbSpectrum = ptr::null_mut();
        assert_eq!(unsafe { pb_spectrum_new(&mut g) }, PbStatus::Ok);
        assert_eq!(
            unsafe { pb_spectrum_add_basis_state(g, 5, 1, 0, 1, rule, 1.0) },
            PbStatus::Ok
        );
        let (mut re, mut im) = (1.0, 1.0);
        assert_eq!(
            unsafe { pb_inner_product(f, g, rule, &mut re, &mut im) },
            PbStatus::Ok
        );
        assert!(re.abs() < 1e-10 && im == 0.0, "({re}, {im})");

        let mut coeffs: *mut PbCoefficients = ptr::null_mut();
        assert_eq!(
            unsafe { pb_project(f, 6, rule, 1.0, &mut coeffs) },
            PbStatus::Ok
        );
        let mut len = 0usize;
        assert_eq!(unsafe { pb_coefficients_len(coeffs, &mut len) }, PbStatus::Ok);
        assert_eq!(len, 5, "n runs over 2..=6 on the (1, 0, +1) channel");

        assert_eq!(
            unsafe { pb_coefficients_get(coeffs, 3, 1, 0, 1, &mut re, &mut im) },
            PbStatus::Ok
        );
        assert!((re - 1.0).abs() < 1e-10 && im == 0.0, "({re}, {im})");
        assert_eq!(
            unsafe { pb_coefficients_get(coeffs, 4, 1, 0, 1, &mut re, &mut im) },
            PbStatus::Ok
        );
        assert!(re.abs() < 1e-10, "{re}");

        let (mut raw, mut clamped) = (1.0, 1.0);
        assert_eq!(
            unsafe { pb_residual(f, coeffs, rule, &mut raw, &mut clamped) },
            PbStatus::Ok
        );
        assert!(clamped < 1e-10 && raw.abs() < 1e-10, "({raw}, {clamped})");

        // scale mismatch between projection request and rule
        let mut bad: *mut PbCoefficients = ptr::null_mut();
        assert_eq!(
            unsafe { pb_project(f, 6, rule, 2.0, &mut bad) },
            PbStatus::Contract
        );

        unsafe { pb_coefficients_free(coeffs) };
        unsafe { pb_spectrum_free(g) };
        unsafe { pb_spectrum_free(f) };
        unsafe { pb_rule_free(rule) };
    }

    #[test]
    fn kernel_eval_matches_origin_value() {
        let (mut re, mut im) = (0.0, 0.0);
        // at the origin and ct = 0 the (2, 1, l=0) standing kernel equals 12
        let st = unsafe { pb_kernel_eval(2, 1, 0, 0, 0.0, 0.0, &mut re, &mut im) };
        assert_eq!(st, PbStatus::Ok);
        assert!((re - 12.0).abs() < 1e-9 && im.abs() < 1e-12, "({re}, {im})");

        let st = unsafe { pb_kernel_eval(2, 1, 0, 9, 0.0, 0.0, &mut re, &mut im) };
        assert_eq!(st, PbStatus::Domain, "unknown kind id");

        // outgoing kernels need r > 0
        let st = unsafe { pb_kernel_eval(2, 1, 0, 2, 0.0, 0.0, &mut re, &mut im) };
        assert_eq!(st, PbStatus::Domain);
    }

    #[test]
    fn kernel_scan_fills_buffers() {
        let grid = [-2.0, 0.0, 2.0];
        let mut re = [0.0; 3];
        let mut im = [0.0; 3];
        let st = unsafe {
            pb_kernel_scan(
                2,
                1,
                1,
                0,
                5.0,
                grid.as_ptr(),
                grid.len(),
                re.as_mut_ptr(),
                im.as_mut_ptr(),
            )
        };
        assert_eq!(st, PbStatus::Ok);
        // time reversal conjugates the standing kernel
        assert!((re[0] - re[2]).abs() < 1e-12);
        assert!((im[0] + im[2]).abs() < 1e-12);
        assert!(re.iter().chain(&im).all(|v| v.is_finite()));
    }
}
