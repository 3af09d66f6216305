use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::table;

/// Hard cap on j. The explicit factorial sum loses roughly one bit per unit of
/// j to cancellation near θ = π/2, so full double precision holds to j ≈ 20
/// and ≥ 10 significant digits through j ≈ 30; the cap bounds the worst case.
pub const WIGNER_J_CAP: u32 = 50;

/// Wigner small-d matrix element d^j_{mλ}(θ).
///
/// Explicit factorial sum with log-factorial stabilization:
///   d^j_{mλ}(θ) = Σ_s (−1)^{m−λ+s} √[(j+m)!(j−m)!(j+λ)!(j−λ)!]
///                 / [(j+λ−s)! s! (m−λ+s)! (j−m−s)!]
///                 · cos(θ/2)^{2j+λ−m−2s} · sin(θ/2)^{m−λ+2s},
/// summed over all s with nonnegative factorial arguments. Row/column
/// convention: d^j_{mλ}(0) = δ_{mλ} and d^1_{10}(π/2) = −1/√2.
pub fn wigner_small_d(j: u32, m: i32, lambda: i32, theta: f64) -> Result<f64> {
    if j > WIGNER_J_CAP {
        return Err(Error::CapExceeded {
            what: "Wigner-d order j",
            limit: WIGNER_J_CAP as usize,
            got: j as usize,
        });
    }
    let ji = j as i32;
    if m.abs() > ji || lambda.abs() > ji {
        return Err(Error::domain(format!(
            "Wigner-d indices require |m| <= j and |lambda| <= j, got j={j}, m={m}, lambda={lambda}"
        )));
    }
    if !theta.is_finite() {
        return Err(Error::domain(format!("angle must be finite, got {theta}")));
    }

    let lf = table();
    let half = 0.5 * theta;
    let (c, s) = (half.cos(), half.sin());

    let pre = 0.5
        * (lf.lf((ji + m) as usize)
            + lf.lf((ji - m) as usize)
            + lf.lf((ji + lambda) as usize)
            + lf.lf((ji - lambda) as usize));

    let s_lo = 0.max(lambda - m);
    let s_hi = (ji + lambda).min(ji - m);
    let mut total = 0.0;
    for sv in s_lo..=s_hi {
        let den = lf.lf((ji + lambda - sv) as usize)
            + lf.lf(sv as usize)
            + lf.lf((m - lambda + sv) as usize)
            + lf.lf((ji - m - sv) as usize);
        let sign = if (m - lambda + sv).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        let cos_pow = 2 * ji + lambda - m - 2 * sv;
        let sin_pow = m - lambda + 2 * sv;
        total += sign * (pre - den).exp() * c.powi(cos_pow) * s.powi(sin_pow);
    }
    Ok(total)
}

/// Scalar spherical harmonic Y_{jm}(θ, φ) = √((2j+1)/4π) e^{imφ} d^j_{m0}(θ).
pub fn scalar_spherical_harmonic(j: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    let d = wigner_small_d(j, m, 0, theta)?;
    let norm = ((2.0 * j as f64 + 1.0) / (4.0 * std::f64::consts::PI)).sqrt();
    Ok(norm * d * Complex64::new(0.0, m as f64 * phi).exp())
}
