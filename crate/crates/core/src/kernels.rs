//! Riesz kernel `k_λ(u, ξ) = (1 + u² + 2uξ)^{-λ}`, the genus-`q` modified
//! kernel
//!
//! ```text
//! h(u) = -k_λ(u, ξ) + Σ_{j=0}^{q} (-u)^j C^λ_j(ξ)
//! ```
//!
//! the geometric Weierstrass kernel `K_q(r, t, ψ)`, and closed forms for the
//! `u`-derivatives of `k_λ`.
//!
//! The kernel base is strictly positive for `|ξ| < 1`, so every complex power
//! is `exp(-λ ln base)` with the real logarithm. The `*_weighted` functions
//! return `f(e^y) e^{sy}` assembled in the log domain; they are what the Mellin
//! quadrature integrates.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gegenbauer::{gegenbauer_sequence, GegenbauerRecurrence};
use crate::special::DimensionSpec;

/// Below this `u`, `h` is summed from the Gegenbauer tail instead of the
/// cancelling difference `-k + Σ`.
pub const H_SERIES_SWITCH: f64 = 0.25;

/// Largest derivative order accepted by [`riesz_derivative`].
pub const MAX_DERIVATIVE_ORDER: usize = 12;

const TAIL_TERM_CAP: usize = 5000;

/// A point `ξ` of `[-1, 1]`, optionally remembered as an angle `ψ` with
/// `ξ = cos ψ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPoint {
    xi: f64,
    psi: Option<f64>,
}

impl CutPoint {
    pub fn new(xi: f64) -> Result<Self> {
        if !xi.is_finite() || xi.abs() > 1.0 {
            return Err(Error::Domain(format!("xi = {xi} must lie in [-1, 1]")));
        }
        Ok(Self { xi, psi: None })
    }

    pub fn from_angle(psi: f64) -> Result<Self> {
        if !psi.is_finite() || psi.abs() > PI {
            return Err(Error::Domain(format!("psi = {psi} must lie in [-pi, pi]")));
        }
        Ok(Self {
            xi: psi.cos(),
            psi: Some(psi),
        })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn psi(&self) -> Option<f64> {
        self.psi
    }

    pub fn is_interior(&self) -> bool {
        self.xi.abs() < 1.0
    }

    /// The same point with `ξ → -ξ` (and `ψ → ψ ∓ π`).
    pub fn reflected(&self) -> Self {
        Self {
            xi: -self.xi,
            psi: self.psi.map(|p| if p > 0.0 { p - PI } else { p + PI }),
        }
    }

    /// Fails unless `-1 < ξ < 1`.
    pub fn require_interior(self) -> Result<Self> {
        if self.is_interior() {
            Ok(self)
        } else {
            Err(Error::Domain(format!(
                "xi = {} must lie strictly inside (-1, 1)",
                self.xi
            )))
        }
    }
}

/// `(λ, q, ξ)` defining the modified kernel `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HKernelSpec {
    lambda: Complex64,
    q: usize,
    xi: CutPoint,
}

impl HKernelSpec {
    pub fn new(lambda: Complex64, q: usize, xi: CutPoint) -> Result<Self> {
        if !(lambda.re > 0.0) || !lambda.im.is_finite() {
            return Err(Error::Domain(format!(
                "Re lambda must be positive, got lambda = {lambda}"
            )));
        }
        Ok(Self { lambda, q, xi })
    }

    /// The spec for which `K_q(r, t, ψ) = t^{2-n} h(r/t)`: `λ = (n-2)/2` and
    /// `ξ = -cos ψ`, reconciling the `-2tr cos ψ` of `K_q` with the `+2uξ`
    /// of `h`.
    pub fn for_weierstrass(n: DimensionSpec, q: usize, psi: f64) -> Result<Self> {
        let xi = CutPoint::from_angle(psi)?.reflected();
        Self::new(Complex64::new(n.lambda(), 0.0), q, xi)
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn xi(&self) -> CutPoint {
        self.xi
    }
}

/// `ln(1 + u² + 2uξ)` at `u = e^y`, arranged to stay accurate for small and
/// large `u` and for `ξ` near `-1`.
pub(crate) fn ln_kernel_base(y: f64, xi: f64) -> Result<f64> {
    if y < -0.7 {
        let u = y.exp();
        Ok((u * (2.0 * xi + u)).ln_1p())
    } else if y > 0.7 {
        let w = (-y).exp();
        Ok(2.0 * y + (w * (2.0 * xi + w)).ln_1p())
    } else {
        let u = y.exp();
        let base = (u + xi) * (u + xi) + (1.0 - xi) * (1.0 + xi);
        if base <= 1e-300 {
            return Err(Error::SingularBase { u, xi, base });
        }
        Ok(base.ln())
    }
}

fn ln_u(u: f64) -> Result<f64> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!("u = {u} must be finite and nonnegative")));
    }
    Ok(u.ln())
}

/// `k_λ(u, ξ) = (1 + u² + 2uξ)^{-λ}`.
pub fn riesz_kernel(u: f64, xi: CutPoint, lambda: Complex64) -> Result<Complex64> {
    let y = ln_u(u)?;
    if u == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok((-lambda * ln_kernel_base(y, xi.xi())?).exp())
}

/// `k_λ(e^y, ξ) e^{sy}`.
pub fn riesz_weighted(lambda: Complex64, xi: CutPoint, y: f64, s: Complex64) -> Result<Complex64> {
    Ok((s * y - lambda * ln_kernel_base(y, xi.xi())?).exp())
}

/// `Σ_{j>q} (-1)^j C^λ_j(ξ) u^{j-q-1}`, i.e. the tail `Σ_{j>q} (-u)^j C_j`
/// divided by `u^{q+1}`. Requires `0 <= u < 1`.
fn scaled_tail(q: usize, lambda: Complex64, u: f64, xi: f64) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = if (q + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mut small_run = 0;
    for (k, c) in GegenbauerRecurrence::new(lambda, xi)
        .skip(q + 1)
        .take(TAIL_TERM_CAP)
        .enumerate()
    {
        let term = power * c;
        sum += term;
        power *= -u;
        let tiny = term.norm() <= 1e-18 * sum.norm() || term.norm() < 1e-300;
        small_run = if tiny { small_run + 1 } else { 0 };
        if (small_run >= 2 && k >= 2) || power == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        what: "h kernel tail series",
        iterations: TAIL_TERM_CAP,
        estimate: sum.norm(),
    })
}

/// `h(λ, q, ξ; u)`.
pub fn h_kernel(spec: &HKernelSpec, u: f64) -> Result<Complex64> {
    ln_u(u)?;
    if u == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let q = spec.q as i32;
    if u <= H_SERIES_SWITCH {
        let tail = scaled_tail(spec.q, spec.lambda, u, spec.xi.xi())?;
        return Ok(-tail * u.powi(q + 1));
    }
    let k = riesz_kernel(u, spec.xi, spec.lambda)?;
    Ok(-k + crate::gegenbauer::gegenbauer_partial_sum(spec.q, spec.lambda, u, spec.xi))
}

/// `h(e^y) e^{sy}`, with `u^{q+1}` (small `u`) or `u^q` (large `u`) folded into
/// the exponential so nothing overflows at extreme `y`.
pub fn h_weighted(spec: &HKernelSpec, y: f64, s: Complex64) -> Result<Complex64> {
    let u = y.exp();
    let q = spec.q as f64;
    if u <= H_SERIES_SWITCH {
        let tail = scaled_tail(spec.q, spec.lambda, u, spec.xi.xi())?;
        return Ok(-tail * ((s + q + 1.0) * y).exp());
    }
    // h / u^q = Σ_{j<=q} (-1)^j C_j u^{j-q} - k / u^q
    let w = (-y).exp();
    let coeffs = gegenbauer_sequence(spec.q, spec.lambda, spec.xi);
    let poly = coeffs
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (j, &c)| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc * w + sign * c
        });
    let k_scaled = (-spec.lambda * ln_kernel_base(y, spec.xi.xi())? - q * y).exp();
    Ok((poly - k_scaled) * ((s + q) * y).exp())
}

/// Empirical content of `|h| <= C min(u^q, u^{q+1})` over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HBoundCertificate {
    /// `sup |h(u)| / min(u^q, u^{q+1})` over the grid.
    pub c_estimate: f64,
    /// Log-log slope of `|h|` over the first decade of the grid.
    pub slope_at_zero: f64,
    /// Log-log slope of `|h|` over the last decade of the grid.
    pub slope_at_infinity: f64,
}

/// `points_per_decade` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points_per_decade: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    let n = ((b - a) * points_per_decade as f64).round().max(1.0) as usize;
    (0..=n)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / n as f64))
        .collect()
}

fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(sx, sy), &(x, y)| (sx + x, sy + y));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(x, y)| {
        (num + (x - mx) * (y - my), den + (x - mx) * (x - mx))
    });
    num / den
}

/// Estimates `C` and the asymptotic growth exponents of `h` on `u_grid`.
///
/// The grid must be sorted, log-spaced and cover at least `[1e-6, 1e6]`;
/// `λ` must be real.
pub fn h_bound_certificate(spec: &HKernelSpec, u_grid: &[f64]) -> Result<HBoundCertificate> {
    if spec.lambda.im != 0.0 {
        return Err(Error::Domain("h bound certificate needs real lambda".into()));
    }
    let (Some(&lo), Some(&hi)) = (u_grid.first(), u_grid.last()) else {
        return Err(Error::Domain("empty u grid".into()));
    };
    if lo > 1e-6 || hi < 1e6 || lo <= 0.0 {
        return Err(Error::Domain(format!(
            "u grid [{lo:e}, {hi:e}] must span at least [1e-6, 1e6]"
        )));
    }
    let q = spec.q as i32;
    let mut c_estimate: f64 = 0.0;
    let mut logs = Vec::with_capacity(u_grid.len());
    for &u in u_grid {
        let h = h_kernel(spec, u)?.norm();
        let envelope = if u < 1.0 { u.powi(q + 1) } else { u.powi(q) };
        let ratio = h / envelope;
        c_estimate = if ratio.is_finite() { c_estimate.max(ratio) } else { f64::INFINITY };
        logs.push((u.ln(), h.ln()));
    }
    let head: Vec<_> = logs
        .iter()
        .copied()
        .filter(|&(x, _)| x <= lo.ln() + std::f64::consts::LN_10)
        .collect();
    let tail: Vec<_> = logs
        .iter()
        .copied()
        .filter(|&(x, _)| x >= hi.ln() - std::f64::consts::LN_10)
        .collect();
    Ok(HBoundCertificate {
        c_estimate,
        slope_at_zero: loglog_slope(&head),
        slope_at_infinity: loglog_slope(&tail),
    })
}

/// Weierstrass primary kernel of genus `q`,
///
/// ```text
/// K_q = -(r² + t² - 2tr cos ψ)^{(2-n)/2} + t^{2-n} Σ_{j=0}^{q} (r/t)^j C^{(n-2)/2}_j(cos ψ)
/// ```
///
/// evaluated in the geometric variables. For `r/t <= 0.25` the two terms
/// cancel to `O((r/t)^{q+1})` and the value is summed from the tail
/// `-t^{2-n} Σ_{j>q} (r/t)^j C_j(cos ψ)` instead.
pub fn weierstrass_kernel(r: f64, t: f64, psi: f64, n: DimensionSpec, q: usize) -> Result<f64> {
    if !(t > 0.0) || !(r >= 0.0) || !r.is_finite() || !t.is_finite() {
        return Err(Error::Domain(format!("need r >= 0 and t > 0, got r = {r}, t = {t}")));
    }
    let cos_psi = CutPoint::from_angle(psi)?.xi();
    let lambda = n.lambda();
    let scale = t.powf(-2.0 * lambda);
    let x = r / t;
    let coeffs = GegenbauerRecurrence::new(Complex64::new(lambda, 0.0), cos_psi);
    if x <= H_SERIES_SWITCH {
        let mut tail = 0.0;
        let mut power = x.powi(q as i32 + 1);
        let mut small_run = 0;
        for c in coeffs.skip(q + 1).take(TAIL_TERM_CAP) {
            let term = power * c.re;
            tail += term;
            power *= x;
            let tiny = term.abs() <= 1e-18 * tail.abs() || term.abs() < 1e-300;
            small_run = if tiny { small_run + 1 } else { 0 };
            if small_run >= 3 || power == 0.0 {
                break;
            }
        }
        return Ok(-scale * tail);
    }
    let d = r - t * cos_psi;
    let dist2 = d * d + (t * psi.sin()).powi(2);
    if dist2 <= 1e-300 * t * t {
        return Err(Error::CoincidentPoints { r });
    }
    let partial: f64 = coeffs
        .take(q + 1)
        .enumerate()
        .map(|(j, c)| x.powi(j as i32) * c.re)
        .sum();
    Ok(-dist2.powf(-lambda) + scale * partial)
}

/// One term `p(u) k_{λ+shift}(u, ξ)` of a derivative form.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTerm {
    /// Coefficients of `p` in ascending powers of `u`.
    pub poly: Vec<Complex64>,
    pub shift: usize,
}

/// `∂^m_u k_λ(u, ξ) = Σ_i p_i(u) k_{λ + shift_i}(u, ξ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RieszDerivativeForm {
    order: usize,
    lambda: Complex64,
    xi: CutPoint,
    terms: Vec<DerivativeTerm>,
}

impl RieszDerivativeForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn xi(&self) -> CutPoint {
        self.xi
    }

    pub fn terms(&self) -> &[DerivativeTerm] {
        &self.terms
    }

    pub fn evaluate(&self, u: f64) -> Result<Complex64> {
        let y = ln_u(u)?;
        if u == 0.0 {
            return Ok(self
                .terms
                .iter()
                .map(|t| t.poly.first().copied().unwrap_or_default())
                .sum());
        }
        let ln_base = ln_kernel_base(y, self.xi.xi())?;
        let k = (-self.lambda * ln_base).exp();
        let mut total = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let p = term
                .poly
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c);
            total += p * (-(term.shift as f64) * ln_base).exp();
        }
        Ok(total * k)
    }

    /// `∂^m k_λ(e^y) e^{sy}`, every monomial combined with the weight inside a
    /// single exponential.
    pub fn weighted(&self, y: f64, s: Complex64) -> Result<Complex64> {
        let ln_base = ln_kernel_base(y, self.xi.xi())?;
        let mut total = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let a = -(self.lambda + term.shift as f64) * ln_base + s * y;
            for (i, &c) in term.poly.iter().enumerate() {
                if c != Complex64::new(0.0, 0.0) {
                    total += c * (a + i as f64 * y).exp();
                }
            }
        }
        Ok(total)
    }
}

fn poly_derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

fn poly_add_into(acc: &mut Vec<Complex64>, p: &[Complex64]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Complex64::new(0.0, 0.0));
    }
    for (a, &c) in acc.iter_mut().zip(p) {
        *a += c;
    }
}

/// Builds `∂^m_u k_λ` symbolically from `∂_u k_μ = -2μ (u + ξ) k_{μ+1}` and
/// the product rule.
pub fn riesz_derivative(m: usize, lambda: Complex64, xi: CutPoint) -> Result<RieszDerivativeForm> {
    if m > MAX_DERIVATIVE_ORDER {
        return Err(Error::CapExceeded {
            order: m,
            cap: MAX_DERIVATIVE_ORDER,
        });
    }
    // indexed by shift
    let mut polys: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0)]];
    for _ in 0..m {
        let mut next: Vec<Vec<Complex64>> = vec![Vec::new(); polys.len() + 1];
        for (shift, p) in polys.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            poly_add_into(&mut next[shift], &poly_derivative(p));
            // -2(λ + shift)(u + ξ) p(u)
            let factor = -2.0 * (lambda + shift as f64);
            let mut lifted = vec![Complex64::new(0.0, 0.0); p.len() + 1];
            for (i, &c) in p.iter().enumerate() {
                lifted[i] += factor * c * xi.xi();
                lifted[i + 1] += factor * c;
            }
            poly_add_into(&mut next[shift + 1], &lifted);
        }
        polys = next;
    }
    let terms = polys
        .into_iter()
        .enumerate()
        .filter(|(_, p)| p.iter().any(|c| c.norm() != 0.0))
        .map(|(shift, poly)| DerivativeTerm { poly, shift })
        .collect();
    Ok(RieszDerivativeForm {
        order: m,
        lambda,
        xi,
        terms,
    })
}
