use crate::error::{Error, Result};

/// Hard cap on the polynomial degree. Together with the argument ranges the
/// quadrature module produces (ρ ≲ 2100), degree-200 values stay inside f64
/// range and keep ≥ 10 significant digits through the recurrence.
pub const LAGUERRE_DEGREE_CAP: usize = 200;

/// Generalized Laguerre polynomial L^s_l(ρ) for integer superscript s ≥ 0.
///
/// Main path is the three-term recurrence in the degree,
///   (k+1) L^s_{k+1} = (2k + 1 + s − ρ) L^s_k − (k + s) L^s_{k−1},
/// which is forward-stable here; the binomial-sum definition suffers
/// cancellation for moderate ρ and is kept only as a small-degree test oracle.
pub fn laguerre(l: u32, s: u32, rho: f64) -> Result<f64> {
    if l as usize > LAGUERRE_DEGREE_CAP {
        return Err(Error::CapExceeded {
            what: "Laguerre degree l",
            limit: LAGUERRE_DEGREE_CAP,
            got: l as usize,
        });
    }
    if !rho.is_finite() {
        return Err(Error::domain(format!(
            "Laguerre argument must be finite, got {rho}"
        )));
    }
    let s = s as f64;
    let mut prev = 1.0; // L^s_0
    if l == 0 {
        return Ok(prev);
    }
    let mut curr = 1.0 + s - rho; // L^s_1
    for k in 1..l as u64 {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + s - rho) * curr - (k + s) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    Ok(curr)
}
