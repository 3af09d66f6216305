//! Expansion of arbitrary spectra in the countable basis and back: the ℓ²
//! side of the isomorphism. Projection integrates each channel against the
//! real radial profiles; reconstruction sums them; the residual measures
//! truncation; dilatation acts on callable spectra as f̄(q) = α f(αq).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::basis::{c_multipolar, BasisIndex, ScaleConfig};
use crate::error::{Error, Result};
use crate::hilbert::{photon_number, QuadratureRule, SpectralChannel};

/// Truncated expansion coefficients f_{njmλ} = ⟨njmλ|f⟩ (dimensionless).
///
/// Holds every admissible index with n ≤ n_max for the channels it was
/// built from; indices of absent channels are implied zero. Entries are
/// ordered by (λ, n, j, m).
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    entries: BTreeMap<BasisIndex, Complex64>,
    n_max: u32,
    scale: ScaleConfig,
}

impl CoefficientVector {
    pub fn new(
        entries: BTreeMap<BasisIndex, Complex64>,
        n_max: u32,
        scale: ScaleConfig,
    ) -> Result<Self> {
        scale.validate()?;
        if n_max < 2 {
            return Err(Error::domain(format!(
                "coefficient vector requires n_max >= 2, got {n_max}"
            )));
        }
        for (idx, v) in &entries {
            idx.validate()?;
            if idx.n > n_max {
                return Err(Error::domain(format!(
                    "coefficient index n={} exceeds n_max={n_max}",
                    idx.n
                )));
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::domain(format!(
                    "coefficient at (n={}, j={}, m={}, lambda={}) is not finite",
                    idx.n, idx.j, idx.m, idx.lambda
                )));
            }
        }
        Ok(CoefficientVector {
            entries,
            n_max,
            scale,
        })
    }

    pub fn empty(n_max: u32, scale: ScaleConfig) -> Result<Self> {
        Self::new(BTreeMap::new(), n_max, scale)
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn scale(&self) -> &ScaleConfig {
        &self.scale
    }

    /// Entries in (λ, n, j, m) order.
    pub fn entries(&self) -> impl Iterator<Item = (&BasisIndex, &Complex64)> {
        self.entries.iter()
    }

    /// Coefficient at `idx`, zero when absent.
    pub fn get(&self, idx: &BasisIndex) -> Complex64 {
        self.entries.get(idx).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Σ |f_η|² in entry order.
    pub fn norm_sqr(&self) -> f64 {
        self.entries.values().map(|v| v.norm_sqr()).sum()
    }
}

/// Projects sampled channels onto all admissible indices with n ≤ n_max:
/// f_{njmλ} = ∫ dk k c_{nj}(k) f_{jmλ}(k) (the radial profile is real).
///
/// The rule and scale must agree on k0, since the quadrature encodes the
/// decay of the profiles. Channels absent from `f` get (implied) zero
/// coefficients.
pub fn project(
    f: &[SpectralChannel],
    n_max: u32,
    rule: &QuadratureRule,
    scale: &ScaleConfig,
) -> Result<CoefficientVector> {
    scale.validate()?;
    if n_max < 2 {
        return Err(Error::domain(format!(
            "projection requires n_max >= 2, got {n_max}"
        )));
    }
    if scale.k0 != rule.k0() {
        return Err(Error::contract(format!(
            "projection scale has k0 = {} but the rule was built for k0 = {}",
            scale.k0,
            rule.k0()
        )));
    }

    let mut seen = BTreeMap::new();
    for ch in f {
        SpectralChannel::new(ch.j, ch.m, ch.lambda, Vec::new())?;
        if ch.samples.len() != rule.order() {
            return Err(Error::contract(format!(
                "channel (j={}, m={}, lambda={}) holds {} samples but the rule has order {}",
                ch.j,
                ch.m,
                ch.lambda,
                ch.samples.len(),
                rule.order()
            )));
        }
        if seen.insert(ch.key(), &ch.samples).is_some() {
            return Err(Error::contract(format!(
                "spectrum contains channel (j={}, m={}, lambda={}) twice",
                ch.j, ch.m, ch.lambda
            )));
        }
    }

    let mut entries = BTreeMap::new();
    for ((lambda, j, m), samples) in &seen {
        for n in (j + 1)..=n_max {
            let mut acc = Complex64::ZERO;
            for ((&a, &k), &fv) in rule.weights().iter().zip(rule.nodes()).zip(*samples) {
                acc += a * c_multipolar(n, *j, k, scale)? * fv;
            }
            entries.insert(
                BasisIndex {
                    n,
                    j: *j,
                    m: *m,
                    lambda: *lambda,
                },
                acc,
            );
        }
    }
    CoefficientVector::new(entries, n_max, *scale)
}

/// Synthesizes f_{jmλ}(k) = Σ_n f_{njmλ} c_{nj}(k) on the grid, one channel
/// per (j, m, λ) present in the coefficients, in (λ, j, m) order. An empty
/// coefficient vector yields no channels; every channel vanishes exactly at
/// k = 0.
pub fn reconstruct(coeffs: &CoefficientVector, k_grid: &[f64]) -> Result<Vec<SpectralChannel>> {
    for &k in k_grid {
        if !k.is_finite() || k < 0.0 {
            return Err(Error::domain(format!(
                "reconstruction grid requires k >= 0, got {k}"
            )));
        }
    }
    // group by channel; n stays ascending within each group
    let mut groups: BTreeMap<(i8, u32, i32), Vec<(u32, Complex64)>> = BTreeMap::new();
    for (idx, &v) in coeffs.entries() {
        groups
            .entry((idx.lambda, idx.j, idx.m))
            .or_default()
            .push((idx.n, v));
    }
    let mut out = Vec::with_capacity(groups.len());
    for ((lambda, j, m), terms) in groups {
        let mut samples = Vec::with_capacity(k_grid.len());
        for &k in k_grid {
            let mut acc = Complex64::ZERO;
            for &(n, v) in &terms {
                acc += v * c_multipolar(n, j, k, coeffs.scale())?;
            }
            samples.push(acc);
        }
        out.push(SpectralChannel::new(j, m, lambda, samples)?);
    }
    Ok(out)
}

/// Truncation residual ⟨f|f⟩ − Σ|f_η|².
///
/// Exact arithmetic keeps this ≥ 0 (Bessel); quadrature may undershoot by
/// roundoff, so `clamped` floors the value at zero while `raw` records the
/// signed result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub raw: f64,
    pub clamped: f64,
}

pub fn residual(
    f: &[SpectralChannel],
    coeffs: &CoefficientVector,
    rule: &QuadratureRule,
) -> Result<Residual> {
    if coeffs.scale().k0 != rule.k0() {
        return Err(Error::contract(format!(
            "coefficients carry k0 = {} but the rule was built for k0 = {}",
            coeffs.scale().k0,
            rule.k0()
        )));
    }
    let raw = photon_number(f, rule)? - coeffs.norm_sqr();
    Ok(Residual {
        raw,
        clamped: raw.max(0.0),
    })
}

/// One channel of a spectrum in callable form: labels plus k ↦ f_{jmλ}(k).
///
/// Dilatation needs values at rescaled arguments that leave any fixed grid,
/// so these channels carry the profile as a function; [`AnalyticChannel::sample`]
/// turns one into a [`SpectralChannel`] on a rule's nodes.
#[derive(Clone)]
pub struct AnalyticChannel {
    pub j: u32,
    pub m: i32,
    pub lambda: i8,
    profile: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl std::fmt::Debug for AnalyticChannel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticChannel")
            .field("j", &self.j)
            .field("m", &self.m)
            .field("lambda", &self.lambda)
            .finish_non_exhaustive()
    }
}

impl AnalyticChannel {
    pub fn new(
        j: u32,
        m: i32,
        lambda: i8,
        profile: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        SpectralChannel::new(j, m, lambda, Vec::new())?;
        Ok(AnalyticChannel {
            j,
            m,
            lambda,
            profile: Arc::new(profile),
        })
    }

    pub fn eval(&self, k: f64) -> Complex64 {
        (self.profile)(k)
    }

    /// Evaluates the profile at the rule's nodes.
    pub fn sample(&self, rule: &QuadratureRule) -> SpectralChannel {
        SpectralChannel {
            j: self.j,
            m: self.m,
            lambda: self.lambda,
            samples: rule.nodes().iter().map(|&k| self.eval(k)).collect(),
        }
    }
}

/// Dilatation by α > 0: each channel becomes q ↦ α·f(α·q). Unitary for the
/// ∫ dk k measure, so photon number is preserved; spectral weight moves to
/// q = k/α.
pub fn dilate(f: &[AnalyticChannel], alpha: f64) -> Result<Vec<AnalyticChannel>> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::domain(format!(
            "dilatation requires alpha > 0, got {alpha}"
        )));
    }
    Ok(f.iter()
        .map(|ch| {
            let inner = Arc::clone(&ch.profile);
            AnalyticChannel {
                j: ch.j,
                m: ch.m,
                lambda: ch.lambda,
                profile: Arc::new(move |q: f64| alpha * inner(alpha * q)),
            }
        })
        .collect())
}
