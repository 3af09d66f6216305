//! Radial-temporal kernels of the basis fields: the k-integral of the
//! spectral profile against a spherical Bessel or Hankel factor and the
//! phase e^{−ik·ct}. The regular kernel splits exactly into incoming plus
//! outgoing halves; along the light cone the magnitudes form two wavelets
//! centered near ct = ∓r.
//!
//! This module fixes k0 = 1 (lengths in meters, times as ct in meters);
//! other scales are reachable through the dilatation covariance of the
//! projection module.

use std::f64::consts::PI;
use std::str::FromStr;
use std::sync::LazyLock;

use num_complex::Complex64;

use crate::basis::{check_nj, ScaleConfig};
use crate::error::{Error, Result};
use crate::numeric::gauss_legendre;
use crate::specfun::{laguerre, spherical_bessel_j, spherical_hankel, HankelKind};

/// Largest |ct| and r accepted, in meters (k0 = 1).
pub const WINDOW: f64 = 100.0;

/// Panel degree of the composite Gauss rule over k.
const PANEL_POINTS: usize = 16;
/// Quadrature nodes per oscillation period of the integrand.
const POINTS_PER_PERIOD: f64 = 10.0;
/// Envelope scan resolution and reach for the truncation point.
const ENVELOPE_STEP: f64 = 0.01;
const ENVELOPE_REACH: f64 = 400.0;
/// Envelope values below peak·10⁻¹⁶ are treated as negligible.
const ENVELOPE_CUTOFF: f64 = 1e-16;

static GL_PANEL: LazyLock<Vec<(f64, f64)>> = LazyLock::new(|| gauss_legendre(PANEL_POINTS));

/// Which radial factor enters the kernel: j_l (regular), h²_l/2 (incoming),
/// or h¹_l/2 (outgoing).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Regular,
    Incoming,
    Outgoing,
}

impl KernelKind {
    pub fn name(&self) -> &'static str {
        match self {
            KernelKind::Regular => "regular",
            KernelKind::Incoming => "incoming",
            KernelKind::Outgoing => "outgoing",
        }
    }
}

impl std::fmt::Display for KernelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(KernelKind::Regular),
            "incoming" => Ok(KernelKind::Incoming),
            "outgoing" => Ok(KernelKind::Outgoing),
            other => Err(Error::domain(format!(
                "unknown kernel kind {other:?}; expected regular, incoming, or outgoing"
            ))),
        }
    }
}

/// Full description of one kernel: basis labels (n, j), partial wave
/// l ∈ {j−1, j, j+1}, kind, and the fixed radius r [m].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub n: u32,
    pub j: u32,
    pub l: u32,
    pub kind: KernelKind,
    pub r: f64,
    pub scale: ScaleConfig,
}

impl KernelSpec {
    pub fn new(n: u32, j: u32, l: u32, kind: KernelKind, r: f64, scale: ScaleConfig) -> Result<Self> {
        let spec = KernelSpec {
            n,
            j,
            l,
            kind,
            r,
            scale,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_nj(self.n, self.j)?;
        if self.l + 1 < self.j || self.l > self.j + 1 {
            return Err(Error::domain(format!(
                "kernel requires l in {{j-1, j, j+1}}, got j={}, l={}",
                self.j, self.l
            )));
        }
        self.scale.validate()?;
        if self.scale.k0 != 1.0 {
            return Err(Error::domain(format!(
                "time-domain kernels fix k0 = 1 1/m (got k0 = {}); rescale fields by \
                 dilatation instead",
                self.scale.k0
            )));
        }
        if !self.r.is_finite() || self.r < 0.0 || self.r > WINDOW {
            return Err(Error::domain(format!(
                "kernel radius must lie in [0, {WINDOW}] m, got {}",
                self.r
            )));
        }
        if self.kind != KernelKind::Regular && self.r == 0.0 {
            return Err(Error::domain(
                "incoming and outgoing kernels are singular at r = 0; use kind = regular there"
                    .to_string(),
            ));
        }
        Ok(())
    }
}

/// Kernel values over a grid of ct times [m].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTemporalTrace {
    pub spec: KernelSpec,
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl RadialTemporalTrace {
    /// Interior local maxima of |value|, sorted by magnitude descending;
    /// each entry is (ct, |value|).
    pub fn local_maxima(&self) -> Vec<(f64, f64)> {
        let mag: Vec<f64> = self.values.iter().map(|v| v.norm()).collect();
        let mut peaks = Vec::new();
        for i in 1..mag.len().saturating_sub(1) {
            if mag[i] > mag[i - 1] && mag[i] >= mag[i + 1] {
                peaks.push((self.times[i], mag[i]));
            }
        }
        peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
        peaks
    }
}

/// What to place under the integral besides the kernel integrand itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    /// d-th derivative with respect to ct, realized as (−ik)^d; d ≤ 4.
    TimeDerivative(u32),
    /// First derivative with respect to r, via the partial-wave recursion
    /// (2l+1) B_l'(x) = l B_{l−1}(x) − (l+1) B_{l+1}(x).
    RadialDerivative,
}

#[derive(Clone, Copy)]
enum Weight {
    Plain,
    TimeDeriv(u32),
    RadialDeriv,
}

impl Weight {
    /// Extra powers of k the weight contributes to the envelope.
    fn extra_power(&self) -> u32 {
        match self {
            Weight::Plain => 0,
            Weight::TimeDeriv(d) => *d,
            Weight::RadialDeriv => 1,
        }
    }
}

fn b_l(kind: KernelKind, l: u32, x: f64) -> Result<Complex64> {
    match kind {
        KernelKind::Regular => Ok(Complex64::new(spherical_bessel_j(l, x)?, 0.0)),
        KernelKind::Outgoing => Ok(0.5 * spherical_hankel(HankelKind::First, l, x)?),
        KernelKind::Incoming => Ok(0.5 * spherical_hankel(HankelKind::Second, l, x)?),
    }
}

/// ∂_r B_l(kr) = k [l B_{l−1}(kr) − (l+1) B_{l+1}(kr)] / (2l+1); the l term
/// is absent for l = 0.
fn b_l_radial_derivative(kind: KernelKind, l: u32, k: f64, r: f64) -> Result<Complex64> {
    let x = k * r;
    let upper = b_l(kind, l + 1, x)?;
    let mut num = -((l + 1) as f64) * upper;
    if l > 0 {
        num += l as f64 * b_l(kind, l - 1, x)?;
    }
    Ok(k / (2 * l + 1) as f64 * num)
}

/// Integrand k² e^{−k} (2k)^j L^{2j+1}_{n−j−1}(2k) B_l(kr) e^{−ik·ct},
/// optionally with a probe weight. The damping factor multiplies first so
/// the far tail underflows to an exact zero.
fn integrand(spec: &KernelSpec, k: f64, ct: f64, weight: Weight) -> Result<Complex64> {
    let x = 2.0 * k;
    let lag = laguerre(spec.n - spec.j - 1, 2 * spec.j + 1, x)?;
    let radial = (-k).exp() * k * k * x.powi(spec.j as i32) * lag;
    let b = match weight {
        Weight::RadialDeriv => b_l_radial_derivative(spec.kind, spec.l, k, spec.r)?,
        _ => b_l(spec.kind, spec.l, k * spec.r)?,
    };
    let phase = Complex64::new(0.0, -k * ct).exp();
    let mut value = radial * b * phase;
    if let Weight::TimeDeriv(d) = weight {
        let kd = k.powi(d as i32);
        // (−i)^d cycles through 1, −i, −1, i
        value *= match d % 4 {
            0 => Complex64::new(kd, 0.0),
            1 => Complex64::new(0.0, -kd),
            2 => Complex64::new(-kd, 0.0),
            _ => Complex64::new(0.0, kd),
        };
    }
    Ok(value)
}

/// Exposed for boundedness checks near k = 0.
#[cfg(test)]
pub(crate) fn kernel_integrand(spec: &KernelSpec, k: f64, ct: f64) -> Result<Complex64> {
    integrand(spec, k, ct, Weight::Plain)
}

/// Truncation point: the last k at which the envelope e^{−k} k^{j+2+extra}
/// |L^{2j+1}_{n−j−1}(2k)| still reaches 10⁻¹⁶ of its peak. The oscillatory
/// factors are bounded, so the tail beyond contributes below the target
/// accuracy.
fn envelope_kmax(n: u32, j: u32, extra_power: u32) -> Result<f64> {
    let degree = n - j - 1;
    let order = 2 * j + 1;
    let power = (j + 2 + extra_power) as i32;
    let mut peak = 0.0f64;
    let mut last = ENVELOPE_REACH;
    let steps = (ENVELOPE_REACH / ENVELOPE_STEP) as usize;
    for i in 1..=steps {
        let k = i as f64 * ENVELOPE_STEP;
        let env = (-k).exp() * k.powi(power) * laguerre(degree, order, 2.0 * k)?.abs();
        if env > peak {
            peak = env;
        }
        if env >= ENVELOPE_CUTOFF * peak {
            last = k;
        }
    }
    Ok((last + 1.0).min(ENVELOPE_REACH))
}

fn check_ct(ct: f64) -> Result<()> {
    if !ct.is_finite() || ct.abs() > WINDOW {
        return Err(Error::domain(format!(
            "time offset must satisfy |ct| <= {WINDOW} m, got {ct}"
        )));
    }
    Ok(())
}

/// Composite fixed-order Gauss integration over [0, kmax] with at least
/// ten nodes per oscillation period 2π/(r + |ct|).
fn integrate(spec: &KernelSpec, ct: f64, kmax: f64, weight: Weight) -> Result<Complex64> {
    let span = spec.r + ct.abs();
    let periods = kmax * span / (2.0 * PI);
    let panels = ((POINTS_PER_PERIOD * periods / PANEL_POINTS as f64).ceil() as usize).max(4);
    let h = kmax / panels as f64;
    let mut acc = Complex64::ZERO;
    for p in 0..panels {
        let a = p as f64 * h;
        let mut panel = Complex64::ZERO;
        for &(u, w) in GL_PANEL.iter() {
            let k = a + 0.5 * h * (u + 1.0);
            panel += w * integrand(spec, k, ct, weight)?;
        }
        acc += 0.5 * h * panel;
    }
    Ok(acc)
}

/// Kernel value at one ct [m]; absolute quadrature error target 1e−8.
pub fn radial_kernel(spec: &KernelSpec, ct: f64) -> Result<Complex64> {
    spec.validate()?;
    check_ct(ct)?;
    let kmax = envelope_kmax(spec.n, spec.j, 0)?;
    integrate(spec, ct, kmax, Weight::Plain)
}

/// Kernel values over an ascending ct grid; empty grid gives an empty trace.
pub fn wavelet_scan(spec: &KernelSpec, ct_grid: &[f64]) -> Result<RadialTemporalTrace> {
    spec.validate()?;
    for pair in ct_grid.windows(2) {
        if pair[0] > pair[1] || pair[0].is_nan() || pair[1].is_nan() {
            return Err(Error::domain(
                "time grid must be sorted in ascending order".to_string(),
            ));
        }
    }
    let kmax = envelope_kmax(spec.n, spec.j, 0)?;
    let mut values = Vec::with_capacity(ct_grid.len());
    for &ct in ct_grid {
        check_ct(ct)?;
        values.push(integrate(spec, ct, kmax, Weight::Plain)?);
    }
    Ok(RadialTemporalTrace {
        spec: *spec,
        times: ct_grid.to_vec(),
        values,
    })
}

/// Differentiated kernel value: d-th ct-derivative (d ≤ 4) or first radial
/// derivative. Multiply a ct-derivative by c0^d to convert to ∂_t^d.
pub fn smoothness_probe(spec: &KernelSpec, ct: f64, probe: Probe) -> Result<Complex64> {
    spec.validate()?;
    check_ct(ct)?;
    let weight = match probe {
        Probe::TimeDerivative(d) => {
            if d > 4 {
                return Err(Error::domain(format!(
                    "time-derivative order is limited to 4, got {d}"
                )));
            }
            Weight::TimeDeriv(d)
        }
        Probe::RadialDerivative => Weight::RadialDeriv,
    };
    let kmax = envelope_kmax(spec.n, spec.j, weight.extra_power())?;
    integrate(spec, ct, kmax, weight)
}
