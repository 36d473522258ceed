//! Closed-form quantities: `g`, `g⁻¹`, `h`, Chernoff tail bounds and the
//! tree lower-bound probability.

use serde::Serialize;

use crate::error::{Error, Result};

fn nonnegative(x: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("argument must be >= 0, got {x}")));
    }
    Ok(())
}

/// `g(x) = (1+x) ln(1+x) − x`.
pub fn g_fn(x: f64) -> Result<f64> {
    nonnegative(x)?;
    Ok(g_raw(x))
}

fn g_raw(x: f64) -> f64 {
    (1.0 + x) * x.ln_1p() - x
}

/// Inverse of `g` on `[0, ∞)`, by bracketing and bisection to full double
/// precision.
pub fn g_inv(x: f64) -> Result<f64> {
    nonnegative(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut lo = 0.0f64;
    let mut hi = (2.0 * x).sqrt().max(1.0);
    while g_raw(hi) < x {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g_raw(mid) < x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `h(x) = 2x / ln(1 + √x)`, with `h(0) = 0`.
pub fn h_fn(x: f64) -> Result<f64> {
    nonnegative(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * x / x.sqrt().ln_1p())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChernoffBounds {
    /// `Pr[|X − μ| ≥ δμ] ≤ 2 exp(−δ²μ / (2(1 + δ/3)U))`
    pub two_sided: f64,
    /// `Pr[X − μ ≥ δμ] ≤ exp(−g(δ)μ / U)`
    pub upper_g: f64,
}

/// Tail bounds for a weighted sum of independent `[0,1]` trials with weights
/// in `[0, U]` and mean `μ`.
pub fn chernoff_bounds(mu: f64, delta: f64, u_max: f64) -> Result<ChernoffBounds> {
    if !(mu > 0.0 && delta > 0.0 && u_max > 0.0) {
        return Err(Error::domain("chernoff bounds need mu, delta, U > 0"));
    }
    Ok(ChernoffBounds {
        two_sided: 2.0 * (-delta * delta * mu / (2.0 * (1.0 + delta / 3.0) * u_max)).exp(),
        upper_g: (-g_raw(delta) * mu / u_max).exp(),
    })
}

/// `1 − (1 − (2k+1)^{−ρ})^n`: probability that some position of the
/// tree lower-bound graph is light in all `ρ` trees.
pub fn tree_lb_probability(n: f64, k: f64, rho: f64) -> Result<f64> {
    if !(n >= 1.0 && k >= 1.0 && rho >= 0.0) {
        return Err(Error::domain(
            "tree_lb_probability needs n >= 1, k >= 1, rho >= 0",
        ));
    }
    let light = (2.0 * k + 1.0).powf(-rho);
    Ok(-(n * (-light).ln_1p()).exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_and_inverse_at_known_points() {
        assert_eq!(g_fn(0.0).unwrap(), 0.0);
        assert_eq!(g_inv(0.0).unwrap(), 0.0);
        // g(e − 1) = e·1 − (e − 1) = 1
        let e = std::f64::consts::E;
        assert!((g_fn(e - 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((g_inv(1.0).unwrap() - (e - 1.0)).abs() < 1e-12);
        assert!(g_fn(-1.0).is_err() && g_inv(-0.1).is_err() && h_fn(-2.0).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        for i in 0..=1000 {
            let y = i as f64;
            assert!((g_inv(g_fn(y).unwrap()).unwrap() - y).abs() < 1e-9);
        }
    }

    #[test]
    fn h_at_zero() {
        assert_eq!(h_fn(0.0).unwrap(), 0.0);
        assert!(h_fn(1e-12).unwrap() < 1e-5);
    }

    #[test]
    fn chernoff_reference_value() {
        let b = chernoff_bounds(10.0, 1.0, 1.0).unwrap();
        assert!((b.two_sided - 2.0 * (-3.75f64).exp()).abs() < 1e-15);
        assert!((b.two_sided - 0.04704).abs() < 1e-5);
        let tiny = chernoff_bounds(10.0, 1e-9, 1.0).unwrap();
        assert!(tiny.two_sided > 1.99 && tiny.upper_g > 0.99);
        assert!(chernoff_bounds(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn tree_probability_values() {
        assert!((tree_lb_probability(1.0, 1.0, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((tree_lb_probability(2.0, 1.0, 2.0).unwrap() - 17.0 / 81.0).abs() < 1e-15);
    }
}
