//! Mellin transforms `M(f, s) = ∫₀^∞ f(u) u^{s-1} du` of the Riesz kernel and
//! of the modified kernel `h`, computed numerically (directly and through
//! `q + 1` integrations by parts) and in closed form through Ferrers
//! functions.
//!
//! Numerically the integral is split at `u = split_point`. The head
//! `(0, split]` and the tail, mapped by `u → 1/v` onto `(0, 1/split]`, are both
//! integrated in the logarithmic variable `y = ln u`, where the algebraic
//! endpoint behaviour `u^{α-1}` becomes exponential decay `e^{-α|y|}`. Each
//! half-line is then folded onto a finite interval by `y = ±(1 - |x|)/|x|`
//! and handed to the adaptive Gauss-Kronrod rule as one integral, so the
//! error is controlled relative to the full transform.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{
    h_weighted, riesz_derivative, riesz_weighted, CutPoint, HKernelSpec, RieszDerivativeForm,
};
use crate::legendre::{ferrers_p, LegendreOrder};
use crate::quadrature::integrate;
use crate::special::{guard_pole, log_gamma, sin_pi, DimensionSpec};

/// Guard radius around the poles of the closed forms.
pub const POLE_GUARD: f64 = 1e-6;

/// Largest `|Im s|` accepted by the numerical transforms.
pub const MAX_IMAG_S: f64 = 10.0;

/// Distance kept from the edges of the widened strip in [`mellin_by_parts`].
pub const BY_PARTS_EDGE_MARGIN: f64 = 1e-3;

/// A transform variable `s` inside its admissible strip `lo < Re s < hi`,
/// optionally remembered as `ρ = -s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinPoint {
    s: Complex64,
    strip: (f64, f64),
    rho: Option<Complex64>,
}

impl MellinPoint {
    pub fn new(s: Complex64, strip_lo: f64, strip_hi: f64) -> Result<Self> {
        if !(strip_lo < strip_hi) {
            return Err(Error::Domain(format!(
                "empty strip ({strip_lo}, {strip_hi})"
            )));
        }
        if !(s.re > strip_lo && s.re < strip_hi) || !s.im.is_finite() {
            return Err(Error::StripViolation {
                what: "Mellin point",
                re_s: s.re,
                lo: strip_lo,
                hi: strip_hi,
            });
        }
        Ok(Self {
            s,
            strip: (strip_lo, strip_hi),
            rho: None,
        })
    }

    /// Strip `0 < Re s < 2 Re λ` of `M(k_λ, s)`.
    pub fn for_riesz(lambda: Complex64, s: Complex64) -> Result<Self> {
        Self::new(s, 0.0, 2.0 * lambda.re)
    }

    /// Strip `-q-1 < Re s < -q` of `M(h, s)`.
    pub fn for_h(spec: &HKernelSpec, s: Complex64) -> Result<Self> {
        let q = spec.q() as f64;
        Self::new(s, -q - 1.0, -q)
    }

    /// Widened strip `-q-1 < Re s < 2 Re λ` reached by integrating by parts.
    pub fn for_by_parts(spec: &HKernelSpec, s: Complex64) -> Result<Self> {
        Self::new(s, -(spec.q() as f64) - 1.0, 2.0 * spec.lambda().re)
    }

    /// `s = -ρ` with `q < Re ρ < q + 1`.
    pub fn from_rho(q: usize, rho: Complex64) -> Result<Self> {
        let q = q as f64;
        let mut point = Self::new(-rho, -q - 1.0, -q)?;
        point.rho = Some(rho);
        Ok(point)
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn strip(&self) -> (f64, f64) {
        self.strip
    }

    pub fn rho(&self) -> Option<Complex64> {
        self.rho
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: usize,
    pub split_point: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_depth: 60,
            split_point: 1.0,
        }
    }
}

impl QuadratureConfig {
    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.split_point > 0.0) || !(self.abs_tol >= 0.0) {
            return Err(Error::Domain(format!("invalid quadrature config {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinResult {
    pub value: Complex64,
    pub est_error: f64,
    /// `∫₀^∞ |f(u) u^{s-1}| du`; a `value` within rounding of this scale is
    /// numerically zero.
    pub magnitude: f64,
    pub evaluations: usize,
}

/// Something whose Mellin transform can be integrated.
pub trait MellinIntegrand: Sync {
    /// Open interval of `Re s` on which the transform converges.
    fn strip(&self) -> (f64, f64);

    /// `f(e^y) e^{sy}`.
    fn weighted(&self, y: f64, s: Complex64) -> Result<Complex64>;
}

/// `k_λ(·, ξ)` as a Mellin integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RieszIntegrand {
    pub lambda: Complex64,
    pub xi: CutPoint,
}

impl MellinIntegrand for RieszIntegrand {
    fn strip(&self) -> (f64, f64) {
        (0.0, 2.0 * self.lambda.re)
    }

    fn weighted(&self, y: f64, s: Complex64) -> Result<Complex64> {
        riesz_weighted(self.lambda, self.xi, y, s)
    }
}

impl MellinIntegrand for HKernelSpec {
    fn strip(&self) -> (f64, f64) {
        let q = self.q() as f64;
        (-q - 1.0, -q)
    }

    fn weighted(&self, y: f64, s: Complex64) -> Result<Complex64> {
        h_weighted(self, y, s)
    }
}

impl MellinIntegrand for RieszDerivativeForm {
    fn strip(&self) -> (f64, f64) {
        (0.0, 2.0 * self.lambda().re + self.order() as f64)
    }

    fn weighted(&self, y: f64, s: Complex64) -> Result<Complex64> {
        RieszDerivativeForm::weighted(self, y, s)
    }
}

/// An arbitrary `u ↦ f(u)` with a caller-declared convergence strip.
///
/// Where `e^y` under- or overflows the weighted value is taken to be zero,
/// so the declared strip must really hold.
pub struct FnIntegrand<F> {
    pub f: F,
    pub strip: (f64, f64),
}

impl<F> MellinIntegrand for FnIntegrand<F>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    fn strip(&self) -> (f64, f64) {
        self.strip
    }

    fn weighted(&self, y: f64, s: Complex64) -> Result<Complex64> {
        let u = y.exp();
        if u == 0.0 || !u.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let v = (self.f)(u)? * (s * y).exp();
        Ok(if v.re.is_finite() && v.im.is_finite() {
            v
        } else {
            Complex64::new(0.0, 0.0)
        })
    }
}

/// `∫₀^∞ f(u) u^{s-1} du` by adaptive quadrature.
pub fn mellin_numeric<I>(integrand: &I, point: &MellinPoint, cfg: &QuadratureConfig) -> Result<MellinResult>
where
    I: MellinIntegrand + ?Sized,
{
    cfg.validate()?;
    let s = point.s();
    let (lo, hi) = integrand.strip();
    if !(s.re > lo && s.re < hi) {
        return Err(Error::StripViolation {
            what: "Mellin integrand",
            re_s: s.re,
            lo,
            hi,
        });
    }
    if s.im.abs() > MAX_IMAG_S {
        return Err(Error::Domain(format!(
            "|Im s| = {} exceeds the supported {MAX_IMAG_S}",
            s.im.abs()
        )));
    }
    let y_split = cfg.split_point.ln();
    // x in (-1, 0]: head, y = y_split - (1 + x)/(-x) ... written symmetrically
    let g = |x: f64| -> Result<Complex64> {
        let r = 1.0 - x.abs();
        let offset = x / r;
        let jacobian = 1.0 / (r * r);
        if !offset.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(integrand.weighted(y_split + offset, s)? * jacobian)
    };
    let r = integrate(&g, -1.0, 1.0, &[0.0], cfg.rel_tol, cfg.abs_tol, cfg.max_depth)?;
    Ok(MellinResult {
        value: r.value,
        est_error: r.error,
        magnitude: r.magnitude,
        evaluations: r.evaluations,
    })
}

fn ln_one_minus_xi_sq(xi: f64) -> f64 {
    xi.ln_1p() + (-xi).ln_1p()
}

/// `M(k_λ, s)` from the Ferrers-function closed form with `μ = ½ - λ`,
/// `ν = s - λ - ½`:
///
/// ```text
/// Γ(1-μ) Γ(ν-μ+1) Γ(-μ-ν) / (2^μ Γ(1-2μ)) · (1-ξ²)^{μ/2} P^μ_ν(ξ)
/// ```
///
/// valid for `Re μ - Re ν < 1` and `Re μ + Re ν < 0`, i.e. `0 < Re s < 2 Re λ`.
pub fn mellin_riesz_closed(lambda: Complex64, point: &MellinPoint, xi: CutPoint) -> Result<Complex64> {
    let xi = xi.require_interior()?;
    let s = point.s();
    let mu = 0.5 - lambda;
    let nu = s - lambda - 0.5;
    if !((mu.re - nu.re) < 1.0 && (mu.re + nu.re) < 0.0) {
        return Err(Error::StripViolation {
            what: "Riesz closed form",
            re_s: s.re,
            lo: 0.0,
            hi: 2.0 * lambda.re,
        });
    }
    guard_pole("gamma", nu - mu + 1.0, POLE_GUARD)?;
    guard_pole("gamma", -mu - nu, POLE_GUARD)?;
    let log_factor = log_gamma(1.0 - mu)? + log_gamma(nu - mu + 1.0)? + log_gamma(-mu - nu)?
        - mu * LN_2
        - log_gamma(1.0 - 2.0 * mu)?
        + mu * 0.5 * ln_one_minus_xi_sq(xi.xi());
    Ok(log_factor.exp() * ferrers_p(LegendreOrder::new(mu, nu), xi)?)
}

/// Closed form of `M(h, s)`:
///
/// ```text
/// -√π Γ(s) Γ(2λ-s) / (2^{λ-½} Γ(λ)) · (1-ξ²)^{(1-2λ)/4} P^{½-λ}_{s-λ-½}(ξ)
/// ```
///
/// On `-q-1 < Re s < -q` this is the transform itself; elsewhere it is its
/// meromorphic continuation, with poles at `s = 0, -1, ...` and
/// `s = 2λ, 2λ+1, ...`.
pub fn mellin_h_closed(spec: &HKernelSpec, point: &MellinPoint) -> Result<Complex64> {
    let xi = spec.xi().require_interior()?;
    let lambda = spec.lambda();
    let s = point.s();
    guard_pole("gamma", s, POLE_GUARD)?;
    guard_pole("gamma", 2.0 * lambda - s, POLE_GUARD)?;
    let log_factor = 0.5 * PI.ln() + log_gamma(s)? + log_gamma(2.0 * lambda - s)?
        - (lambda - 0.5) * LN_2
        - log_gamma(lambda)?
        + (1.0 - 2.0 * lambda) / 4.0 * ln_one_minus_xi_sq(xi.xi());
    let p = ferrers_p(LegendreOrder::new(0.5 - lambda, s - lambda - 0.5), xi)?;
    Ok(-log_factor.exp() * p)
}

/// `M(h, s)` by quadrature of the direct integral.
pub fn mellin_h_numeric(spec: &HKernelSpec, point: &MellinPoint, cfg: &QuadratureConfig) -> Result<MellinResult> {
    mellin_numeric(spec, point, cfg)
}

/// `M(h, s)` through `q + 1` integrations by parts:
///
/// ```text
/// M(h, s) = (-1)^q / Π_{k=0}^{q} (s + k) · ∫₀^∞ u^{s+q} ∂^{q+1}_u k_λ(u, ξ) du
/// ```
///
/// The integral converges on `-q-1 < Re s < 2 Re λ`, which continues the
/// transform past `Re s = -q`.
pub fn mellin_by_parts(spec: &HKernelSpec, point: &MellinPoint, cfg: &QuadratureConfig) -> Result<MellinResult> {
    let xi = spec.xi().require_interior()?;
    let q = spec.q();
    let s = point.s();
    let lo = -(q as f64) - 1.0;
    let hi = 2.0 * spec.lambda().re;
    if !(s.re > lo + BY_PARTS_EDGE_MARGIN && s.re < hi - BY_PARTS_EDGE_MARGIN) {
        return Err(Error::StripViolation {
            what: "integration-by-parts transform",
            re_s: s.re,
            lo: lo + BY_PARTS_EDGE_MARGIN,
            hi: hi - BY_PARTS_EDGE_MARGIN,
        });
    }
    let mut prefactor = Complex64::new(if q % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    for k in 0..=q {
        let factor = s + k as f64;
        if factor.norm() < POLE_GUARD {
            return Err(Error::PoleProximity {
                function: "by-parts prefactor",
                at: format!("{s}"),
                radius: POLE_GUARD,
            });
        }
        prefactor /= factor;
    }
    let form = riesz_derivative(q + 1, spec.lambda(), xi)?;
    let shifted = MellinPoint::new(s + (q as f64 + 1.0), 0.0, hi + q as f64 + 1.0)?;
    let r = mellin_numeric(&form, &shifted, cfg)?;
    Ok(MellinResult {
        value: prefactor * r.value,
        est_error: prefactor.norm() * r.est_error,
        magnitude: prefactor.norm() * r.magnitude,
        evaluations: r.evaluations,
    })
}

/// The two printed forms of the transform at `λ = (n-2)/2`, `s = -ρ`. They
/// differ by an overall sign; [`CorollaryForm::VALIDATED`] is the one that
/// matches quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CorollaryForm {
    /// `-π√π 2^{(3-n)/2} Π(ρ+k) (1-ξ²)^{(3-n)/4} P / (sin πρ Γ((n-2)/2))`
    First,
    /// `π 2^{(n-3)/2} Π(ρ+k) Γ((n-1)/2) (1-ξ²)^{(3-n)/4} P / ((n-3)! sin πρ)`
    Second,
}

impl CorollaryForm {
    /// Confirmed against `M(h, -ρ)` by quadrature; the first form carries the
    /// wrong overall sign.
    pub const VALIDATED: CorollaryForm = CorollaryForm::Second;

    pub fn name(self) -> &'static str {
        match self {
            CorollaryForm::First => "first",
            CorollaryForm::Second => "second",
        }
    }
}

/// `M(h, ρ)` for `λ = (n-2)/2`, `s = -ρ`, `q < Re ρ < q + 1`, in the chosen
/// printed form, with `P = P^{(3-n)/2}_{-ρ-(n-1)/2}(ξ)`.
pub fn corollary_closed(
    n: DimensionSpec,
    q: usize,
    rho: Complex64,
    xi: CutPoint,
    form: CorollaryForm,
) -> Result<Complex64> {
    let xi = xi.require_interior()?;
    let qf = q as f64;
    if !(rho.re > qf && rho.re < qf + 1.0) {
        return Err(Error::StripViolation {
            what: "corollary (Re rho)",
            re_s: rho.re,
            lo: qf,
            hi: qf + 1.0,
        });
    }
    let nearest = rho.re.round();
    if (rho - nearest).norm() < POLE_GUARD {
        return Err(Error::PoleProximity {
            function: "sin(pi rho)",
            at: format!("{rho}"),
            radius: POLE_GUARD,
        });
    }
    let nf = n.n() as f64;
    let mut log_factor = (3.0 - nf) / 4.0 * ln_one_minus_xi_sq(xi.xi()) - sin_pi(rho).ln();
    for k in 1..=(n.n() - 3) {
        log_factor += (rho + k as f64).ln();
    }
    let (sign, log_factor) = match form {
        CorollaryForm::First => (
            -1.0,
            log_factor + 1.5 * PI.ln() + (3.0 - nf) / 2.0 * LN_2
                - log_gamma(Complex64::new((nf - 2.0) / 2.0, 0.0))?,
        ),
        CorollaryForm::Second => (
            1.0,
            log_factor + PI.ln() + (nf - 3.0) / 2.0 * LN_2
                + log_gamma(Complex64::new((nf - 1.0) / 2.0, 0.0))?
                - log_gamma(Complex64::new(nf - 2.0, 0.0))?,
        ),
    };
    let order = LegendreOrder::new(
        Complex64::new((3.0 - nf) / 2.0, 0.0),
        -rho - (nf - 1.0) / 2.0,
    );
    Ok(sign * log_factor.exp() * ferrers_p(order, xi)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cut(x: f64) -> CutPoint {
        CutPoint::new(x).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm())
    }

    #[test]
    fn point_strip_checks() {
        assert!(MellinPoint::new(c(0.5, 0.0), 0.0, 1.0).is_ok());
        assert!(matches!(
            MellinPoint::new(c(1.5, 0.0), 0.0, 1.0),
            Err(Error::StripViolation { .. })
        ));
        let p = MellinPoint::from_rho(2, c(2.5, 1.0)).unwrap();
        assert_eq!(p.s() + p.rho().unwrap(), c(0.0, 0.0));
        assert!(MellinPoint::from_rho(2, c(1.5, 0.0)).is_err());
    }

    #[test]
    fn riesz_beta_examples() {
        let cfg = QuadratureConfig::default();
        let k = RieszIntegrand { lambda: c(1.0, 0.0), xi: cut(0.0) };
        let r = mellin_numeric(&k, &MellinPoint::for_riesz(k.lambda, c(1.0, 0.0)).unwrap(), &cfg).unwrap();
        assert!((r.value - c(PI / 2.0, 0.0)).norm() < 1e-10 * PI);
        assert!(r.est_error <= cfg.rel_tol * r.value.norm());
        let r = mellin_numeric(&k, &MellinPoint::for_riesz(k.lambda, c(0.5, 0.0)).unwrap(), &cfg).unwrap();
        let want = PI / (2.0 * (PI / 4.0).sin());
        assert!((r.value.re - want).abs() < 1e-9 * want);
    }

    #[test]
    fn numeric_rejects_points_outside_integrand_strip() {
        let cfg = QuadratureConfig::default();
        let spec = HKernelSpec::new(c(1.0, 0.0), 1, cut(0.2)).unwrap();
        let wrong = MellinPoint::new(c(-0.5, 0.0), -1.0, 0.0).unwrap();
        assert!(matches!(
            mellin_numeric(&spec, &wrong, &cfg),
            Err(Error::StripViolation { .. })
        ));
        let too_oscillatory = MellinPoint::for_h(&spec, c(-1.5, 11.0)).unwrap();
        assert!(mellin_numeric(&spec, &too_oscillatory, &cfg).is_err());
    }

    // mpmath quad / closed form at 30 digits
    #[test]
    fn riesz_closed_reference_values() {
        let cfg = QuadratureConfig::default();
        for (lambda, x, s, want) in [
            (c(1.0, 0.0), 0.0, c(1.0, 0.0), c(PI / 2.0, 0.0)),
            (c(0.75, 0.0), 0.5, c(0.6, 0.0), c(2.030_384_179_185_605_6, 0.0)),
            (c(1.5, 0.0), -0.3, c(1.0, 2.0), c(0.278_042_406_466_669_52, -0.157_835_366_888_303_74)),
        ] {
            let point = MellinPoint::for_riesz(lambda, s).unwrap();
            let closed = mellin_riesz_closed(lambda, &point, cut(x)).unwrap();
            assert!(rel(closed, want) < 1e-12, "{closed} vs {want}");
            let numeric = mellin_numeric(&RieszIntegrand { lambda, xi: cut(x) }, &point, &cfg).unwrap();
            assert!(rel(numeric.value, want) < 1e-9);
        }
    }

    #[test]
    fn h_closed_matches_quadrature() {
        let cfg = QuadratureConfig::default();
        for (lambda, q, x, s) in [
            (1.0, 0, 0.0, c(-0.5, 0.0)),
            (0.75, 1, 0.4, c(-1.5, 1.0)),
            (2.3, 3, -0.9, c(-3.5, 3.0)),
        ] {
            let spec = HKernelSpec::new(c(lambda, 0.0), q, cut(x)).unwrap();
            let point = MellinPoint::for_h(&spec, s).unwrap();
            let closed = mellin_h_closed(&spec, &point).unwrap();
            let numeric = mellin_h_numeric(&spec, &point, &cfg).unwrap();
            assert!(rel(closed, numeric.value) < 1e-8, "{closed} vs {}", numeric.value);
        }
        // mpmath: λ = 2.3, q = 3, ξ = -0.9, s = -3.5 + 3i
        let spec = HKernelSpec::new(c(2.3, 0.0), 3, cut(-0.9)).unwrap();
        let closed = mellin_h_closed(&spec, &MellinPoint::for_h(&spec, c(-3.5, 3.0)).unwrap()).unwrap();
        assert!(rel(closed, c(-0.439_880_613_163_906_23, 28.042_859_140_201_42)) < 1e-12);
    }

    #[test]
    fn by_parts_on_and_off_the_strip() {
        let cfg = QuadratureConfig::default();
        let spec = HKernelSpec::new(c(1.0, 0.0), 0, cut(0.0)).unwrap();
        let inside = MellinPoint::for_by_parts(&spec, c(-0.5, 0.0)).unwrap();
        let bp = mellin_by_parts(&spec, &inside, &cfg).unwrap();
        let direct = mellin_h_numeric(&spec, &MellinPoint::for_h(&spec, c(-0.5, 0.0)).unwrap(), &cfg).unwrap();
        assert!(rel(bp.value, direct.value) < 1e-7);

        let outside = MellinPoint::for_by_parts(&spec, c(0.7, 0.0)).unwrap();
        let bp = mellin_by_parts(&spec, &outside, &cfg).unwrap();
        let closed = mellin_h_closed(&spec, &outside).unwrap();
        assert!(rel(bp.value, closed) < 1e-7);

        let spec = HKernelSpec::new(c(2.0, 0.0), 2, cut(0.4)).unwrap();
        let s = c(-1.5, 0.0);
        let bp = mellin_by_parts(&spec, &MellinPoint::for_by_parts(&spec, s).unwrap(), &cfg).unwrap();
        let direct = mellin_h_numeric(&spec, &MellinPoint::for_h(&spec, c(-2.5, 0.0)).unwrap(), &cfg);
        assert!(direct.is_ok());
        let closed = mellin_h_closed(&spec, &MellinPoint::for_by_parts(&spec, s).unwrap()).unwrap();
        assert!(rel(bp.value, closed) < 1e-6);

        assert!(matches!(
            mellin_by_parts(&spec, &MellinPoint::for_by_parts(&spec, c(-1.0 + 1e-8, 0.0)).unwrap(), &cfg),
            Err(Error::PoleProximity { .. })
        ));
        assert!(matches!(
            mellin_by_parts(&spec, &MellinPoint::for_by_parts(&spec, c(3.9995, 0.0)).unwrap(), &cfg),
            Err(Error::StripViolation { .. })
        ));
    }

    #[test]
    fn corollary_forms() {
        let n = DimensionSpec::new(5).unwrap();
        for (q, rho, x) in [(0, c(0.3, 0.0), 0.2), (2, c(2.5, 1.0), -0.8)] {
            let first = corollary_closed(n, q, rho, cut(x), CorollaryForm::First).unwrap();
            let second = corollary_closed(n, q, rho, cut(x), CorollaryForm::Second).unwrap();
            assert!((first / second + 1.0).norm() < 1e-12);
        }
        // n = 3, q = 0, ρ = ½: π P_{-3/2}(ξ) = π P_{1/2}(ξ)
        let n3 = DimensionSpec::new(3).unwrap();
        let x = 0.3;
        let v = corollary_closed(n3, 0, c(0.5, 0.0), cut(x), CorollaryForm::Second).unwrap();
        let p = ferrers_p(LegendreOrder::new(c(0.0, 0.0), c(0.5, 0.0)), cut(x)).unwrap();
        assert!(rel(v, PI * p) < 1e-13);
        // mpmath: n = 4, q = 1, ρ = 1.5, ξ = 0.2
        let n4 = DimensionSpec::new(4).unwrap();
        let v = corollary_closed(n4, 1, c(1.5, 0.0), cut(0.2), CorollaryForm::VALIDATED).unwrap();
        assert!(rel(v, c(0.892_271_308_714_194_5, 0.0)) < 1e-12);

        assert!(corollary_closed(n4, 1, c(0.5, 0.0), cut(0.2), CorollaryForm::First).is_err());
    }
}
