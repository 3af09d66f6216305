//! Expansion functions of the countable basis in multipolar and plane-wave
//! representations, plus enumeration of admissible index quadruples.
//!
//! Every basis vector is labeled by (n, j, m, λ) with n ≥ 2, 1 ≤ j ≤ n−1,
//! −j ≤ m ≤ j, λ = ±1. The radial profile is an exponentially weighted
//! generalized Laguerre polynomial; the plane-wave form adds the angular
//! factor e^{imφ} d^j_{mλ}(θ) and a 1/√π normalization shift.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{laguerre, table, wigner_small_d};

/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum speed of light [m/s].
pub const C0: f64 = 299_792_458.0;
/// Vacuum permittivity [F/m].
pub const EPS0: f64 = 8.854_187_812_8e-12;

/// Reference scale and physical constants.
///
/// k0 fixes the length scale of the basis (profiles peak near k ~ k0); the
/// constants feed the energy functional. All fields must be positive and
/// finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleConfig {
    /// Reference wavenumber [1/m].
    pub k0: f64,
    /// Reduced Planck constant [J s].
    pub hbar: f64,
    /// Speed of light [m/s].
    pub c0: f64,
    /// Vacuum permittivity [F/m].
    pub eps0: f64,
}

impl Default for ScaleConfig {
    fn default() -> Self {
        ScaleConfig {
            k0: 1.0,
            hbar: HBAR,
            c0: C0,
            eps0: EPS0,
        }
    }
}

impl ScaleConfig {
    /// Physical constants at their standard values, k0 as given.
    pub fn with_k0(k0: f64) -> Result<Self> {
        let cfg = ScaleConfig {
            k0,
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("k0", self.k0),
            ("hbar", self.hbar),
            ("c0", self.c0),
            ("eps0", self.eps0),
        ] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::domain(format!(
                    "ScaleConfig.{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Index quadruple (n, j, m, λ) of one basis vector.
///
/// Admissibility: n ≥ 2, 1 ≤ j ≤ n−1, −j ≤ m ≤ j, λ ∈ {−1, +1}. The ordering
/// is lexicographic in (λ, n, j, m), matching [`enumerate_basis`] and every
/// serialized output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub n: u32,
    pub j: u32,
    pub m: i32,
    pub lambda: i8,
}

impl BasisIndex {
    pub fn new(n: u32, j: u32, m: i32, lambda: i8) -> Result<Self> {
        let idx = BasisIndex { n, j, m, lambda };
        idx.validate()?;
        Ok(idx)
    }

    pub fn validate(&self) -> Result<()> {
        check_nj(self.n, self.j)?;
        if self.m.abs() > self.j as i32 {
            return Err(Error::domain(format!(
                "index requires -j <= m <= j, got j={}, m={}",
                self.j, self.m
            )));
        }
        check_lambda(self.lambda)
    }
}

impl Ord for BasisIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lambda, self.n, self.j, self.m).cmp(&(other.lambda, other.n, other.j, other.m))
    }
}

impl PartialOrd for BasisIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Wavevector in spherical coordinates: magnitude k ≥ 0 [1/m], polar angle θ,
/// azimuth φ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    pub k: f64,
    pub theta: f64,
    pub phi: f64,
}

impl WaveVector {
    pub fn new(k: f64, theta: f64, phi: f64) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(Error::domain(format!(
                "wavevector magnitude must satisfy k >= 0, got {k}"
            )));
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::domain("wavevector angles must be finite".to_string()));
        }
        Ok(WaveVector { k, theta, phi })
    }

    /// Cartesian components [k sinθ cosφ, k sinθ sinφ, k cosθ].
    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        [
            self.k * st * self.phi.cos(),
            self.k * st * self.phi.sin(),
            self.k * ct,
        ]
    }
}

pub(crate) fn check_nj(n: u32, j: u32) -> Result<()> {
    if n < 2 || j < 1 || j > n - 1 {
        return Err(Error::domain(format!(
            "index requires n >= 2 and 1 <= j <= n-1, got n={n}, j={j}"
        )));
    }
    Ok(())
}

fn check_lambda(lambda: i8) -> Result<()> {
    if lambda != 1 && lambda != -1 {
        return Err(Error::domain(format!(
            "helicity must be +1 or -1, got {lambda}"
        )));
    }
    Ok(())
}

/// Multipolar normalization √(4 (n−j−1)! / (n+j)!), strictly positive.
pub fn multipolar_norm(n: u32, j: u32) -> Result<f64> {
    check_nj(n, j)?;
    let lf = table();
    let ln = lf.ln_factorial((n - j - 1) as usize)? - lf.ln_factorial((n + j) as usize)?;
    Ok(2.0 * (0.5 * ln).exp())
}

/// Plane-wave normalization √((2j+1) (n−j−1)! / (π (n+j)!)); differs from the
/// multipolar one by the factor √((2j+1)/(4π)).
pub fn planewave_norm(n: u32, j: u32) -> Result<f64> {
    check_nj(n, j)?;
    let lf = table();
    let ln = lf.ln_factorial((n - j - 1) as usize)? - lf.ln_factorial((n + j) as usize)?;
    Ok(((2.0 * j as f64 + 1.0) / std::f64::consts::PI).sqrt() * (0.5 * ln).exp())
}

/// Radial profile shared by both representations:
/// exp(−k/k0)/k0 · (2k/k0)^j · L^{2j+1}_{n−j−1}(2k/k0).
///
/// The damping factor is applied first so that far-tail underflow yields an
/// exact 0 instead of 0·∞. Vanishes identically at k = 0 (j ≥ 1).
fn radial_profile(n: u32, j: u32, k: f64, k0: f64) -> Result<f64> {
    let x = 2.0 * k / k0;
    let lag = laguerre(n - j - 1, 2 * j + 1, x)?;
    Ok((-k / k0).exp() / k0 * x.powi(j as i32) * lag)
}

/// Multipolar expansion function c_nj(k) [m]: the spectral profile of the
/// basis vector |n j m λ⟩ over spherical waves. Independent of m and λ.
pub fn c_multipolar(n: u32, j: u32, k: f64, scale: &ScaleConfig) -> Result<f64> {
    check_nj(n, j)?;
    scale.validate()?;
    if !k.is_finite() || k < 0.0 {
        return Err(Error::domain(format!(
            "wavenumber must satisfy k >= 0, got {k}"
        )));
    }
    Ok(multipolar_norm(n, j)? * radial_profile(n, j, k, scale.k0)?)
}

/// Plane-wave expansion function c_{njmλ}(p) [m]: multipolar radial profile
/// with the plane-wave normalization and angular factor e^{imφ} d^j_{mλ}(θ).
pub fn c_planewave(index: &BasisIndex, p: &WaveVector, scale: &ScaleConfig) -> Result<Complex64> {
    index.validate()?;
    scale.validate()?;
    WaveVector::new(p.k, p.theta, p.phi)?;
    let radial = planewave_norm(index.n, index.j)? * radial_profile(index.n, index.j, p.k, scale.k0)?;
    let d = wigner_small_d(index.j, index.m, index.lambda as i32, p.theta)?;
    let phase = Complex64::new(0.0, index.m as f64 * p.phi).exp();
    Ok(radial * d * phase)
}

/// All admissible indices with n ≤ n_max, in lexicographic (λ, n, j, m) order.
///
/// `lambdas` selects helicities (deduplicated, values other than ±1 ignored);
/// the optional filters keep only matching j or m. n_max < 2 yields an empty
/// list, not an error. Per helicity the count is Σ_{n=2}^{n_max} (n² − 1).
pub fn enumerate_basis(
    n_max: u32,
    lambdas: &[i8],
    j_filter: Option<u32>,
    m_filter: Option<i32>,
) -> Vec<BasisIndex> {
    let mut ls: Vec<i8> = lambdas
        .iter()
        .copied()
        .filter(|&l| l == 1 || l == -1)
        .collect();
    ls.sort_unstable();
    ls.dedup();

    let mut out = Vec::new();
    for &lambda in &ls {
        for n in 2..=n_max.max(1) {
            for j in 1..n {
                if j_filter.is_some_and(|jf| jf != j) {
                    continue;
                }
                for m in -(j as i32)..=j as i32 {
                    if m_filter.is_some_and(|mf| mf != m) {
                        continue;
                    }
                    out.push(BasisIndex { n, j, m, lambda });
                }
            }
        }
    }
    out
}
