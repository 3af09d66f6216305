//! Gauss-Laguerre quadrature for the radial measure ∫₀^∞ dk k.
//!
//! Nodes and weights come from the Golub-Welsch eigenproblem of the Jacobi
//! matrix for the e^{−x} weight, polished by Newton iterations on the scaled
//! Laguerre recurrence. Christoffel weights are carried in log space so that
//! high orders (up to 512, nodes beyond x = 2000) stay finite; the rule is
//! then folded through x = 2k/k0 so callers integrate ∫ dk k F(k) directly
//! for integrands F that decay like e^{−2k/k0}.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Inclusive order bounds accepted by [`gauss_laguerre_rule`].
pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 512;

const RESCALE_THRESHOLD: f64 = 1e140;
const RESCALE_FACTOR: f64 = 1e-140;
const RESCALE_LOG: f64 = 140.0 * std::f64::consts::LN_10;

/// Quadrature rule for ∫₀^∞ dk k F(k), F carrying e^{−2k/k0} decay.
///
/// `sum(weights[i] * F(nodes[i]))` approximates the integral; it is exact
/// (up to roundoff) when F = e^{−2k/k0} P(2k/k0) with P a polynomial of
/// degree ≤ 2·order − 2. Nodes are strictly increasing and positive, k = 0
/// is never a node. Immutable after construction and deterministic for a
/// fixed (order, k0).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    k0: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    // raw substitution variables x = 2k/k0 and ln of the e^{-x}-convention
    // Christoffel weights, kept for log-space moment checks
    pub(crate) x_nodes: Vec<f64>,
    pub(crate) ln_weights: Vec<f64>,
    convention: &'static str,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// Wavenumber nodes k_i [1/m], strictly increasing, all positive.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Folded weights A_i such that Σ A_i F(k_i) ≈ ∫ dk k F(k).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Human-readable statement of the weight convention.
    pub fn convention(&self) -> &'static str {
        self.convention
    }

    /// Σ A_i F(k_i).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&k, &a)| a * f(k))
            .sum()
    }
}

/// State of the scaled Laguerre recurrence at one abscissa: L_{n−1}, L_n,
/// the accumulated log of the common scale factor, and Σ_{k<n} L_k² at the
/// current scale (true sum = ssum·e^{2·logscale}).
struct ScaledEval {
    lnm1: f64,
    ln: f64,
    logscale: f64,
    ssum: f64,
}

fn eval_scaled(n: usize, x: f64) -> ScaledEval {
    let mut prev = 1.0f64;
    let mut curr = 1.0 - x;
    let mut logscale = 0.0f64;
    let mut ssum = 1.0f64;
    for k in 1..n {
        ssum += curr * curr;
        let next = (((2 * k + 1) as f64 - x) * curr - k as f64 * prev) / (k + 1) as f64;
        prev = curr;
        curr = next;
        if curr.abs() > RESCALE_THRESHOLD || prev.abs() > RESCALE_THRESHOLD {
            prev *= RESCALE_FACTOR;
            curr *= RESCALE_FACTOR;
            ssum *= RESCALE_FACTOR * RESCALE_FACTOR;
            logscale += RESCALE_LOG;
        }
    }
    ScaledEval {
        lnm1: prev,
        ln: curr,
        logscale,
        ssum,
    }
}

/// Builds the order-point rule folded to the scale k0.
///
/// Requires 2 ≤ order ≤ 512 and k0 > 0 finite.
pub fn gauss_laguerre_rule(order: usize, k0: f64) -> Result<QuadratureRule> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::domain(format!(
            "quadrature order must lie in [{MIN_ORDER}, {MAX_ORDER}], got {order}"
        )));
    }
    if !k0.is_finite() || k0 <= 0.0 {
        return Err(Error::domain(format!(
            "quadrature scale must satisfy k0 > 0, got {k0}"
        )));
    }

    // Jacobi matrix of the monic-orthonormal e^{-x} Laguerre family:
    // diagonal 2i+1, off-diagonal i.
    let jacobi = DMatrix::<f64>::from_fn(order, order, |r, c| {
        if r == c {
            (2 * r + 1) as f64
        } else if r.abs_diff(c) == 1 {
            r.max(c) as f64
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut x: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    x.sort_by(|a, b| a.total_cmp(b));

    // Newton polish: the scale factor cancels in L_n / L_n', so the update
    // is well conditioned even where the unscaled values overflow.
    let n = order;
    for xi in x.iter_mut() {
        for _ in 0..100 {
            let e = eval_scaled(n, *xi);
            let deriv = n as f64 * (e.ln - e.lnm1) / *xi;
            if deriv == 0.0 || !deriv.is_finite() {
                return Err(Error::Numerical(format!(
                    "degenerate derivative while polishing quadrature node near x = {xi}"
                )));
            }
            let dx = e.ln / deriv;
            *xi -= dx;
            if dx.abs() <= 1e-15 * xi.abs() {
                break;
            }
        }
    }

    let mut ln_weights = Vec::with_capacity(n);
    for &xi in &x {
        if xi.is_nan() || xi <= 0.0 {
            return Err(Error::Numerical(format!(
                "quadrature node is not positive: {xi}"
            )));
        }
        let e = eval_scaled(n, xi);
        // Christoffel weight 1/Σ_{k<n} L_k(x)², in log space
        let lw = -(e.ssum.ln() + 2.0 * e.logscale);
        if !lw.is_finite() {
            return Err(Error::Numerical(format!(
                "quadrature weight is not finite at node x = {xi}"
            )));
        }
        ln_weights.push(lw);
    }
    if x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Numerical(
            "quadrature nodes failed to separate".to_string(),
        ));
    }

    // fold: k = k0 x / 2, A = (k0²/4) x e^{x} w so that Σ A F(k) ≈ ∫ dk k F
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (&xi, &lw) in x.iter().zip(&ln_weights) {
        let sw = (lw + xi).exp();
        if !sw.is_finite() || sw <= 0.0 {
            return Err(Error::Numerical(format!(
                "folded quadrature weight degenerate at x = {xi}"
            )));
        }
        nodes.push(0.5 * k0 * xi);
        weights.push(0.25 * k0 * k0 * xi * sw);
    }

    Ok(QuadratureRule {
        order,
        k0,
        nodes,
        weights,
        x_nodes: x,
        ln_weights,
        convention: "sum_i weight_i * F(node_i) approximates integral_0^inf dk k F(k) \
                     for F decaying like exp(-2k/k0)",
    })
}
