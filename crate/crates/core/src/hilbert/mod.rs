//! Scalar products and quadratic functionals (photon number, energy) over
//! the radial measure ∫₀^∞ dk k, channel by channel in (j, m, λ), plus the
//! closed-form Laguerre integrals used as cross-checks of the quadrature.

mod quadrature;

pub use quadrature::{gauss_laguerre_rule, QuadratureRule, MAX_ORDER, MIN_ORDER};

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::basis::ScaleConfig;
use crate::error::{Error, Result};
use crate::specfun::exact_factorial_ratio;

/// Default rule order for products of basis vectors: their integrands are
/// the weight times polynomials of degree ≤ 2n, so 200 points are exact in
/// exact arithmetic for n ≤ 99.
pub const DEFAULT_ORDER: usize = 200;

/// One angular channel of a spectrum: labels (j, m, λ) and the complex
/// samples of f_{jmλ}(k) [m] at the nodes of a quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralChannel {
    pub j: u32,
    pub m: i32,
    pub lambda: i8,
    pub samples: Vec<Complex64>,
}

impl SpectralChannel {
    /// Validates the labels: j ≥ 1, |m| ≤ j, λ = ±1.
    pub fn new(j: u32, m: i32, lambda: i8, samples: Vec<Complex64>) -> Result<Self> {
        if j < 1 {
            return Err(Error::domain("channel requires j >= 1".to_string()));
        }
        if m.abs() > j as i32 {
            return Err(Error::domain(format!(
                "channel requires -j <= m <= j, got j={j}, m={m}"
            )));
        }
        if lambda != 1 && lambda != -1 {
            return Err(Error::domain(format!(
                "channel helicity must be +1 or -1, got {lambda}"
            )));
        }
        Ok(SpectralChannel {
            j,
            m,
            lambda,
            samples,
        })
    }

    pub fn key(&self) -> (i8, u32, i32) {
        (self.lambda, self.j, self.m)
    }
}

type ChannelKey = (i8, u32, i32);

/// Indexes channels by (λ, j, m), rejecting duplicates and sample counts
/// that do not match the rule order.
fn channel_map<'a>(
    set: &'a [SpectralChannel],
    rule: &QuadratureRule,
    side: &str,
) -> Result<BTreeMap<ChannelKey, &'a [Complex64]>> {
    let mut map = BTreeMap::new();
    for ch in set {
        SpectralChannel::new(ch.j, ch.m, ch.lambda, Vec::new())?;
        if ch.samples.len() != rule.order() {
            return Err(Error::contract(format!(
                "{side} channel (j={}, m={}, lambda={}) holds {} samples but the rule \
                 has order {}; channels must be sampled on the rule's nodes",
                ch.j,
                ch.m,
                ch.lambda,
                ch.samples.len(),
                rule.order()
            )));
        }
        if map.insert(ch.key(), ch.samples.as_slice()).is_some() {
            return Err(Error::contract(format!(
                "{side} contains channel (j={}, m={}, lambda={}) twice",
                ch.j, ch.m, ch.lambda
            )));
        }
    }
    Ok(map)
}

/// ⟨f|g⟩ = Σ_{jmλ} ∫ dk k conj(f_{jmλ}) g_{jmλ}.
///
/// Channels are matched by (j, m, λ); a label present on only one side
/// contributes exactly zero. Conjugate-symmetric: ⟨f|g⟩ = conj(⟨g|f⟩)
/// bitwise. Summation order is fixed by the (λ, j, m) channel order and the
/// node order, so results do not depend on input arrangement.
pub fn inner_product(
    f: &[SpectralChannel],
    g: &[SpectralChannel],
    rule: &QuadratureRule,
) -> Result<Complex64> {
    let fm = channel_map(f, rule, "left")?;
    let gm = channel_map(g, rule, "right")?;
    let mut total = Complex64::new(0.0, 0.0);
    for (key, fs) in &fm {
        let Some(gs) = gm.get(key) else { continue };
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&a, &fv), &gv) in rule.weights().iter().zip(*fs).zip(*gs) {
            // complex product first, scalar last: keeps ⟨f|g⟩ = conj(⟨g|f⟩)
            // bitwise, since fl(B−A) = −fl(A−B) and negation is exact
            acc += a * (fv.conj() * gv);
        }
        total += acc;
    }
    Ok(total)
}

/// Photon number ⟨f|f⟩ = Σ_{jmλ} ∫ dk k |f_{jmλ}|², real and nonnegative.
pub fn photon_number(f: &[SpectralChannel], rule: &QuadratureRule) -> Result<f64> {
    let fm = channel_map(f, rule, "spectrum")?;
    let mut total = 0.0f64;
    for fs in fm.values() {
        let mut acc = 0.0f64;
        for (&a, &fv) in rule.weights().iter().zip(*fs) {
            acc += a * fv.norm_sqr();
        }
        total += acc;
    }
    Ok(total)
}

/// Field energy Σ_{jmλ} ∫ dk k (ħ c0 k) |f_{jmλ}|² [J].
///
/// The rule fixes the measure (including its k0); `scale` supplies ħ and c0.
pub fn energy(f: &[SpectralChannel], rule: &QuadratureRule, scale: &ScaleConfig) -> Result<f64> {
    scale.validate()?;
    let fm = channel_map(f, rule, "spectrum")?;
    let mut total = 0.0f64;
    for fs in fm.values() {
        let mut acc = 0.0f64;
        for ((&a, &k), &fv) in rule.weights().iter().zip(rule.nodes()).zip(*fs) {
            acc += a * k * fv.norm_sqr();
        }
        total += acc;
    }
    Ok(scale.hbar * scale.c0 * total)
}

/// Closed form of ∫₀^∞ e^{−x} x^α L^α_s(x) L^α_{s̄}(x) dx:
/// (s+α)!/s! · δ_{s s̄}, evaluated in integer arithmetic.
pub fn laguerre_overlap_oracle(alpha: u32, s: u32, s_bar: u32) -> Result<f64> {
    if s != s_bar {
        return Ok(0.0);
    }
    exact_factorial_ratio((s + alpha) as u64, s as u64)
}

/// Closed form of ∫₀^∞ e^{−x} x^{α+1} [L^α_s(x)]² dx:
/// (s+α)!/s! · (2s+α+1), evaluated in integer arithmetic.
pub fn laguerre_energy_oracle(alpha: u32, s: u32) -> Result<f64> {
    let ratio = exact_factorial_ratio((s + alpha) as u64, s as u64)?;
    Ok(ratio * (2 * s + alpha + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{c_multipolar, BasisIndex};
    use crate::specfun::laguerre;
    use proptest::prelude::*;

    fn basis_channel(n: u32, j: u32, m: i32, lambda: i8, rule: &QuadratureRule) -> SpectralChannel {
        let scale = ScaleConfig::with_k0(rule.k0()).unwrap();
        BasisIndex::new(n, j, m, lambda).unwrap();
        let samples = rule
            .nodes()
            .iter()
            .map(|&k| Complex64::new(c_multipolar(n, j, k, &scale).unwrap(), 0.0))
            .collect();
        SpectralChannel::new(j, m, lambda, samples).unwrap()
    }

    #[test]
    fn basis_vectors_are_orthonormal() {
        let rule = gauss_laguerre_rule(DEFAULT_ORDER, 1.0).unwrap();
        let f = [basis_channel(3, 1, 0, 1, &rule)];
        let n = inner_product(&f, &f, &rule).unwrap();
        assert!((n.re - 1.0).abs() < 1e-10 && n.im == 0.0, "{n}");

        let g = [basis_channel(2, 1, 0, 1, &rule)];
        let h = [basis_channel(4, 1, 0, 1, &rule)];
        let z = inner_product(&g, &h, &rule).unwrap();
        assert!(z.norm() < 1e-10, "{z}");
    }

    #[test]
    fn gram_matrix_on_matching_channels() {
        // ⟨n|n̄⟩ = δ over n, n̄ ≤ 8 for a fixed channel, both helicities
        let rule = gauss_laguerre_rule(DEFAULT_ORDER, 1.0).unwrap();
        for lambda in [-1i8, 1] {
            for j in [1u32, 3] {
                let vecs: Vec<_> = ((j + 1)..=8)
                    .map(|n| [basis_channel(n, j, 1, lambda, &rule)])
                    .collect();
                for (a, fa) in vecs.iter().enumerate() {
                    for (b, fb) in vecs.iter().enumerate() {
                        let p = inner_product(fa, fb, &rule).unwrap();
                        let want = if a == b { 1.0 } else { 0.0 };
                        assert!(
                            (p.re - want).abs() < 1e-10 && p.im.abs() < 1e-15,
                            "j={j} a={a} b={b}: {p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_channels_give_exact_zero() {
        let rule = gauss_laguerre_rule(32, 1.0).unwrap();
        let f = [basis_channel(3, 1, 0, 1, &rule)];
        let g = [basis_channel(3, 1, 1, 1, &rule)];
        let h = [basis_channel(3, 1, 0, -1, &rule)];
        assert_eq!(inner_product(&f, &g, &rule).unwrap(), Complex64::ZERO);
        assert_eq!(inner_product(&f, &h, &rule).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn photon_number_scales_quadratically() {
        let rule = gauss_laguerre_rule(DEFAULT_ORDER, 1.0).unwrap();
        let one = basis_channel(4, 2, -1, 1, &rule);
        assert!((photon_number(std::slice::from_ref(&one), &rule).unwrap() - 1.0).abs() < 1e-10);

        let mut twice = one.clone();
        for s in twice.samples.iter_mut() {
            *s *= 2.0;
        }
        assert!((photon_number(&[twice], &rule).unwrap() - 4.0).abs() < 1e-10);

        // Pythagoras across two orthogonal channels
        let other = basis_channel(4, 2, 0, 1, &rule);
        assert!((photon_number(&[one, other], &rule).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn energy_is_quantized() {
        let rule = gauss_laguerre_rule(DEFAULT_ORDER, 1.0).unwrap();
        let scale = ScaleConfig::default();
        let unit = scale.hbar * scale.c0 * scale.k0;
        for (n, j) in [(2u32, 1u32), (7, 3), (8, 1), (8, 7)] {
            let f = [basis_channel(n, j, 0.min(j as i32), 1, &rule)];
            let e = energy(&f, &rule, &scale).unwrap();
            assert!(
                (e / unit - n as f64).abs() < 1e-10 * n as f64,
                "n={n} j={j}: {}",
                e / unit
            );
        }
        assert_eq!(energy(&[], &rule, &scale).unwrap(), 0.0);
    }

    #[test]
    fn energy_tracks_rule_scale() {
        // same basis vector expressed at k0 = 3: energy must become 3× larger
        let scale3 = ScaleConfig::with_k0(3.0).unwrap();
        let rule3 = gauss_laguerre_rule(DEFAULT_ORDER, 3.0).unwrap();
        let f = [basis_channel(2, 1, 0, 1, &rule3)];
        let e = energy(&f, &rule3, &scale3).unwrap();
        let unit = scale3.hbar * scale3.c0 * scale3.k0;
        assert!((e / unit - 2.0).abs() < 1e-10);
    }

    #[test]
    fn oracle_reference_values() {
        assert_eq!(laguerre_overlap_oracle(3, 0, 1).unwrap(), 0.0);
        assert_eq!(laguerre_overlap_oracle(3, 0, 0).unwrap(), 6.0);
        assert_eq!(laguerre_overlap_oracle(5, 2, 2).unwrap(), 2520.0);
        assert_eq!(laguerre_energy_oracle(3, 0).unwrap(), 24.0);
        // combining the energy integral with the squared norm and the
        // change of variables x = 2k/k0 yields the level number
        let n2 = crate::basis::multipolar_norm(2, 1).unwrap().powi(2);
        assert!((0.125 * n2 * laguerre_energy_oracle(3, 0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_closed_forms() {
        // raw-rule integrals of e^{−x}x^α L^α_s L^α_{s̄} over α ≤ 15, s ≤ 10
        let rule = gauss_laguerre_rule(DEFAULT_ORDER, 1.0).unwrap();
        for alpha in 0..=15u32 {
            for s in 0..=10u32 {
                let diag = laguerre_overlap_oracle(alpha, s, s).unwrap();
                let mut got_diag = 0.0f64;
                let mut got_off = 0.0f64;
                let mut got_energy = 0.0f64;
                for (&x, &lw) in rule.x_nodes.iter().zip(&rule.ln_weights) {
                    let w = (lw + alpha as f64 * x.ln()).exp();
                    let ls = laguerre(s, alpha, x).unwrap();
                    let ls1 = laguerre(s + 1, alpha, x).unwrap();
                    got_diag += w * ls * ls;
                    got_off += w * ls * ls1;
                    got_energy += w * x * ls * ls;
                }
                assert!(
                    ((got_diag - diag) / diag).abs() < 1e-12,
                    "diag alpha={alpha} s={s}: {got_diag} vs {diag}"
                );
                let off_scale =
                    (diag * laguerre_overlap_oracle(alpha, s + 1, s + 1).unwrap()).sqrt();
                assert!(
                    (got_off / off_scale).abs() < 1e-12,
                    "off alpha={alpha} s={s}: {got_off}"
                );
                let en = laguerre_energy_oracle(alpha, s).unwrap();
                assert!(
                    ((got_energy - en) / en).abs() < 1e-12,
                    "energy alpha={alpha} s={s}: {got_energy} vs {en}"
                );
            }
        }
    }

    #[test]
    fn contract_violations_are_reported() {
        let rule = gauss_laguerre_rule(16, 1.0).unwrap();
        let short = SpectralChannel::new(1, 0, 1, vec![Complex64::ZERO; 8]).unwrap();
        assert!(matches!(
            inner_product(std::slice::from_ref(&short), &[], &rule),
            Err(Error::Contract(_))
        ));
        let ok = SpectralChannel::new(1, 0, 1, vec![Complex64::ZERO; 16]).unwrap();
        assert!(matches!(
            inner_product(&[ok.clone(), ok.clone()], &[], &rule),
            Err(Error::Contract(_))
        ));
        assert!(SpectralChannel::new(0, 0, 1, vec![]).is_err());
        assert!(SpectralChannel::new(2, 3, 1, vec![]).is_err());
        assert!(SpectralChannel::new(2, 0, 2, vec![]).is_err());
    }

    fn arb_samples(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
            .prop_map(|v| v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect())
    }

    proptest! {
        #[test]
        fn conjugate_symmetry_is_exact(
            fs in arb_samples(16), gs in arb_samples(16),
        ) {
            let rule = gauss_laguerre_rule(16, 1.0).unwrap();
            let f = [SpectralChannel::new(2, 1, -1, fs).unwrap()];
            let g = [SpectralChannel::new(2, 1, -1, gs).unwrap()];
            let fg = inner_product(&f, &g, &rule).unwrap();
            let gf = inner_product(&g, &f, &rule).unwrap();
            prop_assert_eq!(fg, gf.conj());
        }

        #[test]
        fn cauchy_schwarz_holds(
            fs in arb_samples(16), gs in arb_samples(16),
            f2 in arb_samples(16), g2 in arb_samples(16),
        ) {
            let rule = gauss_laguerre_rule(16, 1.0).unwrap();
            let f = [
                SpectralChannel::new(1, 0, 1, fs).unwrap(),
                SpectralChannel::new(2, -2, -1, f2).unwrap(),
            ];
            let g = [
                SpectralChannel::new(1, 0, 1, gs).unwrap(),
                SpectralChannel::new(2, -2, -1, g2).unwrap(),
            ];
            let fg = inner_product(&f, &g, &rule).unwrap().norm_sqr();
            let ff = photon_number(&f, &rule).unwrap();
            let gg = photon_number(&g, &rule).unwrap();
            prop_assert!(fg <= ff * gg * (1.0 + 1e-10) + 1e-300);
        }

        #[test]
        fn photon_number_is_nonnegative(fs in arb_samples(16)) {
            let rule = gauss_laguerre_rule(16, 1.0).unwrap();
            let f = [SpectralChannel::new(3, 2, 1, fs).unwrap()];
            prop_assert!(photon_number(&f, &rule).unwrap() >= 0.0);
        }
    }
}
