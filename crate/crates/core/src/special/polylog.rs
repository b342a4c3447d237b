//! Fourth-order polylogarithm on the closed unit disk.
//!
//! Two evaluation routes are used:
//!
//! * `|z| <= 1/2`: the defining series `Σ z^k / k⁴`, which converges like `2^-k`.
//! * `1/2 < |z| <= 1`: the expansion in `μ = ln z`,
//!   `Li₄(e^μ) = Σ_{k≠3} ζ(4-k) μ^k / k! + μ³/6 (H₃ - ln(-μ))`,
//!   convergent for `|μ| < 2π`. On this annulus `|μ| <= 3.22`, so the odd
//!   Bernoulli tail shrinks by about `(|μ|/2π)² < 0.27` per term.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ZETA2: f64 = PI * PI / 6.0;
pub const ZETA3: f64 = 1.202_056_903_159_594_3;
pub const ZETA4: f64 = PI * PI * PI * PI / 90.0;

/// Overshoot of `|z|` beyond 1 that is tolerated and projected back onto the circle.
pub const UNIT_DISK_SLACK: f64 = 1e-12;

const SERIES_RADIUS: f64 = 0.5;
const LOG_SERIES_TERMS: usize = 40;
const HARMONIC3: f64 = 11.0 / 6.0;

/// `ζ(1-2n) / (2n+3)!` for `n = 1, 2, …`, the coefficients of `μ^{2n+3}`.
///
/// Using `B_{2n} = (-1)^{n+1} 2 (2n)! ζ(2n) / (2π)^{2n}` this is
/// `(-1)^n ζ(2n) / (n (2π)^{2n} (2n+1)(2n+2)(2n+3))`.
fn odd_coefficients() -> &'static [f64; LOG_SERIES_TERMS] {
    static TABLE: OnceLock<[f64; LOG_SERIES_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; LOG_SERIES_TERMS];
        let two_pi_sq = 4.0 * PI * PI;
        let mut scale = 1.0;
        for (idx, slot) in out.iter_mut().enumerate() {
            let n = (idx + 1) as f64;
            scale /= two_pi_sq;
            let sign = if idx % 2 == 0 { -1.0 } else { 1.0 };
            let denom = n * (2.0 * n + 1.0) * (2.0 * n + 2.0) * (2.0 * n + 3.0);
            *slot = sign * zeta_even(idx + 1) * scale / denom;
        }
        out
    })
}

/// `ζ(2n)` for `n >= 1`.
fn zeta_even(n: usize) -> f64 {
    match n {
        1 => ZETA2,
        2 => ZETA4,
        _ => {
            let p = 2 * n as i32;
            // direct sum, then the midpoint tail integral ∫_{K+1/2}^∞ x^{-p} dx
            let k_max = 1000;
            let head: f64 = (1..=k_max).rev().map(|k| (k as f64).powi(-p)).sum();
            head + (k_max as f64 + 0.5).powi(1 - p) / (p as f64 - 1.0)
        }
    }
}

/// Partial sum `Σ_{k=1}^{terms} z^k / k⁴` of the defining series.
pub fn li4_series(z: Complex64, terms: usize) -> Complex64 {
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=terms {
        power *= z;
        let k2 = (k * k) as f64;
        sum += power / (k2 * k2);
    }
    sum
}

/// Upper bound on `|Li₄(z) - li4_series(z, terms)|` for `|z| = modulus <= 1`.
pub fn li4_series_remainder_bound(modulus: f64, terms: usize) -> f64 {
    let k = terms as f64;
    if modulus < 1.0 {
        modulus.powf(k + 1.0) / (k + 1.0).powi(4) / (1.0 - modulus)
    } else {
        1.0 / (3.0 * k * k * k)
    }
}

fn li4_small(z: Complex64) -> Complex64 {
    let mut power = z;
    let mut sum = z;
    for k in 2..200usize {
        power *= z;
        let k2 = (k * k) as f64;
        let term = power / (k2 * k2);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

fn li4_log_series(z: Complex64) -> Complex64 {
    let mu = z.ln();
    if mu == Complex64::new(0.0, 0.0) {
        return Complex64::new(ZETA4, 0.0);
    }
    let mu2 = mu * mu;
    let mu3 = mu2 * mu;
    let mu4 = mu2 * mu2;
    let mut sum = ZETA4 + ZETA3 * mu + ZETA2 * mu2 / 2.0 + mu3 / 6.0 * (HARMONIC3 - (-mu).ln())
        - mu4 / 48.0;
    // odd powers μ^{2n+3}, n >= 1
    let mut power = mu4 * mu;
    for &c in odd_coefficients() {
        let term = power * c;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        power *= mu2;
    }
    sum
}

/// `Li₄(z) = Σ_{k>=1} z^k / k⁴` for `|z| <= 1` (plus a tolerated overshoot of
/// [`UNIT_DISK_SLACK`], projected back onto the unit circle).
pub fn li4(z: Complex64) -> Result<Complex64> {
    let modulus = z.norm();
    if !modulus.is_finite() || modulus > 1.0 + UNIT_DISK_SLACK {
        return Err(Error::Li4Domain(modulus));
    }
    let z = if modulus > 1.0 { z / modulus } else { z };
    let value = if modulus <= SERIES_RADIUS {
        li4_small(z)
    } else {
        li4_log_series(z)
    };
    if z.im == 0.0 {
        Ok(Complex64::new(value.re, 0.0))
    } else {
        Ok(value)
    }
}

/// `Li₄(x)` for real `x ∈ [-1, 1]`.
pub fn li4_real(x: f64) -> Result<f64> {
    li4(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// `∫₀^∞ s² ln(1 - c e^{-s}) ds = -2 Li₄(c)`.
pub fn s_integral(c: Complex64) -> Result<Complex64> {
    li4(c).map(|v| -2.0 * v)
}
