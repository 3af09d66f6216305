use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the order of the spherical Bessel family.
pub const BESSEL_L_CAP: u32 = 200;

/// Extra downward-recurrence headroom. Each step from above suppresses the
/// contaminating regular solution by at least a factor ~2 in the l > x regime,
/// so 64 steps clear double precision with margin.
const MILLER_MARGIN: u32 = 64;

/// Spherical Bessel function of the first kind, j_l(x), for x ≥ 0.
///
/// Upward recurrence is used where it is stable (l ≤ x); for l > x the
/// regular solution is subdominant and a Miller-type downward recurrence with
/// rescaling is normalized against j_0 = sin x / x. At the origin
/// j_l(0) = δ_{l0} exactly.
pub fn spherical_bessel_j(l: u32, x: f64) -> Result<f64> {
    check_order(l)?;
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!(
            "spherical_bessel_j requires finite x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(if l == 0 { 1.0 } else { 0.0 });
    }
    let j0 = x.sin() / x;
    if l == 0 {
        return Ok(j0);
    }

    if (l as f64) <= x {
        // upward: j_{k+1} = (2k+1)/x j_k − j_{k−1}. The closed form for j_1
        // only enters here (x ≥ 1), where its subtraction is harmless; for
        // small x it cancels catastrophically and the Miller branch applies.
        let mut prev = j0;
        let mut curr = x.sin() / (x * x) - x.cos() / x;
        if l == 1 {
            return Ok(curr);
        }
        for k in 1..l {
            let next = (2.0 * k as f64 + 1.0) / x * curr - prev;
            prev = curr;
            curr = next;
        }
        Ok(curr)
    } else {
        // downward from a seed far above l, rescaling to dodge overflow, then
        // normalize so the computed j_0 matches sin x / x
        let start = l + MILLER_MARGIN;
        let mut above = 0.0f64; // j_{k+1}
        let mut curr = 1e-300; // j_k, arbitrary seed scale
        let mut target = 0.0f64;
        for k in (1..=start).rev() {
            let below = (2.0 * k as f64 + 1.0) / x * curr - above;
            above = curr;
            curr = below; // now holds j_{k−1}
            if k - 1 == l {
                target = curr;
            }
            if curr.abs() > 1e250 {
                let scale = 1e-250;
                curr *= scale;
                above *= scale;
                target *= scale;
            }
        }
        // curr now holds the unnormalized j_0
        Ok(target * (j0 / curr))
    }
}

/// Spherical Bessel function of the second kind, y_l(x), for x > 0. Upward
/// recurrence from y_0 = −cos x / x is stable: the irregular solution
/// dominates in every regime. Values overflow to ±∞ for extreme (l, small x);
/// callers probing near the origin keep l small by construction.
pub fn spherical_bessel_y(l: u32, x: f64) -> Result<f64> {
    check_order(l)?;
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "spherical_bessel_y requires finite x > 0, got {x} (irregular at the origin)"
        )));
    }
    let y0 = -x.cos() / x;
    if l == 0 {
        return Ok(y0);
    }
    let y1 = -x.cos() / (x * x) - x.sin() / x;
    let mut prev = y0;
    let mut curr = y1;
    for k in 1..l {
        let next = (2.0 * k as f64 + 1.0) / x * curr - prev;
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// Which spherical Hankel function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    /// h¹_l = j_l + i y_l (outgoing convention e^{ix}/x at l = 0)
    First,
    /// h²_l = j_l − i y_l
    Second,
}

impl TryFrom<u8> for HankelKind {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(HankelKind::First),
            2 => Ok(HankelKind::Second),
            _ => Err(Error::domain(format!("Hankel kind must be 1 or 2, got {v}"))),
        }
    }
}

/// Spherical Hankel function h¹_l(x) or h²_l(x) for x > 0.
///
/// Assembled as j_l ± i y_l with each part produced by its own stable
/// recurrence: upward recursion is stable for the dominant irregular part
/// (y_l), while the regular part reuses [`spherical_bessel_j`]. This makes the
/// split identity h¹_l + h²_l = 2 j_l hold to the last bit by construction; a
/// literal upward recurrence on the complex combination would wash out the
/// tiny regular component for l ≫ x.
pub fn spherical_hankel(kind: HankelKind, l: u32, x: f64) -> Result<Complex64> {
    check_order(l)?;
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!(
            "spherical_hankel requires finite x > 0, got {x} (irregular at the origin)"
        )));
    }
    let j = spherical_bessel_j(l, x)?;
    let y = spherical_bessel_y(l, x)?;
    let sign = match kind {
        HankelKind::First => 1.0,
        HankelKind::Second => -1.0,
    };
    Ok(Complex64::new(j, sign * y))
}

fn check_order(l: u32) -> Result<()> {
    if l > BESSEL_L_CAP {
        return Err(Error::CapExceeded {
            what: "spherical Bessel order l",
            limit: BESSEL_L_CAP as usize,
            got: l as usize,
        });
    }
    Ok(())
}
