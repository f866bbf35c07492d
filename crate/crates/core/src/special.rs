//! Complex gamma-function machinery.
//!
//! `log_gamma` is a shifted Stirling series: the argument is pushed right by
//! the recurrence until `Re w >= STIRLING_SHIFT`, where ten Bernoulli terms
//! leave a truncation error below 1e-17. The left half-plane is reached by
//! reflection for `gamma` and `reciprocal_gamma`, and by the same upward
//! recurrence for `log_gamma` (which keeps the principal branch with no
//! 2πi bookkeeping).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The universal value type.
pub type ComplexScalar = Complex64;

/// Arguments within this distance of a nonpositive integer are poles of Γ.
pub const POLE_TOLERANCE: f64 = 1e-14;

const STIRLING_SHIFT: f64 = 8.0;

/// ½·ln(2π)
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k} / (2k (2k - 1))` for k = 1..=10.
const STIRLING_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// `B_{2k} / (2k)` for k = 1..=10, used by the digamma asymptotic series.
const DIGAMMA_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43_867.0 / 14_364.0,
    -174_611.0 / 6600.0,
];

/// Spatial dimension `n >= 3`, carrying the Riesz exponent `λ = (n - 2)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimensionSpec(u32);

impl DimensionSpec {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("dimension n = {n} must be at least 3")));
        }
        Ok(Self(n))
    }

    pub fn n(self) -> u32 {
        self.0
    }

    /// `λ = (n - 2) / 2`
    pub fn lambda(self) -> f64 {
        (self.0 as f64 - 2.0) / 2.0
    }
}

/// Distance from `z` to the nearest nonpositive integer, or `None` when the
/// nearest integer is positive.
pub(crate) fn distance_to_nonpositive_integer(z: Complex64) -> Option<f64> {
    let k = z.re.round();
    if k > 0.0 {
        return None;
    }
    Some((z - k).norm())
}

fn check_pole(function: &'static str, z: Complex64) -> Result<()> {
    match distance_to_nonpositive_integer(z) {
        Some(d) if d < POLE_TOLERANCE => Err(Error::Pole {
            function,
            at: format_complex(z),
        }),
        _ => Ok(()),
    }
}

/// Fails when `z` lies within `radius` of a nonpositive integer.
pub(crate) fn guard_pole(function: &'static str, z: Complex64, radius: f64) -> Result<()> {
    match distance_to_nonpositive_integer(z) {
        Some(d) if d < radius => Err(Error::PoleProximity {
            function,
            at: format_complex(z),
            radius,
        }),
        _ => Ok(()),
    }
}

pub(crate) fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// `sin(πz)` with the real part reduced to `[-½, ½]` first, so the zeros at
/// integers are exact.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let v = (r * PI).sin();
    if (n as i64) % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `cos(πz)` with the same argument reduction as [`sin_pi`].
pub fn cos_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let v = (r * PI).cos();
    if (n as i64) % 2 == 0 {
        v
    } else {
        -v
    }
}

fn stirling_log_gamma(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING_COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series * inv
}

fn shift_count(z: Complex64) -> usize {
    if z.re >= STIRLING_SHIFT {
        0
    } else {
        (STIRLING_SHIFT - z.re).ceil() as usize
    }
}

/// `Γ(n) = (n-1)!` for the integers `1..=23`, where it is exact in `f64`.
fn exact_factorial(z: Complex64) -> Option<f64> {
    let n = z.re;
    (z.im == 0.0 && n == n.round() && (1.0..=23.0).contains(&n))
        .then(|| (1..n as u32).map(f64::from).product())
}

/// Principal branch of `ln Γ(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_pole("log_gamma", z)?;
    if let Some(f) = exact_factorial(z) {
        return Ok(Complex64::new(f.ln(), 0.0));
    }
    let n = shift_count(z);
    let mut acc = stirling_log_gamma(z + n as f64);
    for k in 0..n {
        acc -= (z + k as f64).ln();
    }
    Ok(acc)
}

fn gamma_right(z: Complex64) -> Complex64 {
    if let Some(f) = exact_factorial(z) {
        return Complex64::new(f, 0.0);
    }
    let n = shift_count(z);
    let mut denom = Complex64::new(1.0, 0.0);
    for k in 0..n {
        denom *= z + k as f64;
    }
    stirling_log_gamma(z + n as f64).exp() / denom
}

/// `Γ(z)`; reflection `Γ(z) = π / (sin(πz) Γ(1 - z))` for `Re z < ½`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    check_pole("gamma", z)?;
    if z.re >= 0.5 {
        Ok(gamma_right(z))
    } else {
        Ok(PI / (sin_pi(z) * gamma_right(1.0 - z)))
    }
}

/// `1/Γ(z)`, entire: exactly zero at the nonpositive integers.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        gamma_right(z).inv()
    } else {
        sin_pi(z) * gamma_right(1.0 - z) / PI
    }
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)` by upward recurrence and the asymptotic series.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole("digamma", z)?;
    let n = shift_count(z);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc -= (z + k as f64).inv();
    }
    let w = z + n as f64;
    let inv2 = (w * w).inv();
    let mut series = Complex64::new(0.0, 0.0);
    for c in DIGAMMA_COEFFS.iter().rev() {
        series = series * inv2 + c;
    }
    Ok(acc + w.ln() - 0.5 / w - series * inv2)
}

/// Relative residual of the duplication formula
/// `Γ(2z) = 2^{2z-1} π^{-1/2} Γ(z) Γ(z + ½)`.
pub fn duplication_residual(z: Complex64) -> Result<f64> {
    const RADIUS: f64 = 1e-6;
    guard_pole("gamma", 2.0 * z, RADIUS)?;
    guard_pole("gamma", z, RADIUS)?;
    guard_pole("gamma", z + 0.5, RADIUS)?;
    let lhs = gamma(2.0 * z)?;
    let pow = ((2.0 * z - 1.0) * std::f64::consts::LN_2).exp();
    let rhs = pow / PI.sqrt() * gamma(z)? * gamma(z + 0.5)?;
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE))
}

/// Relative residual of `√π (n-3)! = 2^{n-3} Γ((n-1)/2) Γ((n-2)/2)`.
pub fn half_integer_gamma_residual(n: DimensionSpec) -> f64 {
    let m = n.n() - 3;
    let factorial: f64 = (1..=m).map(f64::from).product();
    let lhs = PI.sqrt() * factorial;
    let nf = n.n() as f64;
    let g1 = gamma(Complex64::new((nf - 1.0) / 2.0, 0.0)).expect("positive argument");
    let g2 = gamma(Complex64::new((nf - 2.0) / 2.0, 0.0)).expect("positive argument");
    let rhs = 2f64.powi(m as i32) * (g1 * g2).re;
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs())
}
