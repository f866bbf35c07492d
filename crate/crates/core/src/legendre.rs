//! Ferrers functions of the first kind `P^μ_ν(ξ)`, `-1 < ξ < 1`, for complex
//! order and degree:
//!
//! ```text
//! P^μ_ν(ξ) = ((1 + ξ)/(1 - ξ))^{μ/2} · 2F1(-ν, ν + 1; 1 - μ; (1 - ξ)/2) / Γ(1 - μ)
//! ```
//!
//! The regularized hypergeometric function keeps the whole expression entire
//! in `μ` and `ν`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::CutPoint;
use crate::special::{digamma, reciprocal_gamma, sin_pi};

const SERIES_TERM_CAP: usize = 100_000;
const SERIES_CUTOFF: f64 = 1e-17;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `c - a - b` closer than this to an integer is treated as exactly integer.
const DEGENERATE_EXACT: f64 = 1e-13;
/// Below this distance the connection formula loses digits to `1/sin`.
const DEGENERATE_NEAR: f64 = 1e-3;
/// Largest `z` for which the direct series replaces a near-degenerate
/// connection formula.
const DIRECT_SERIES_LIMIT: f64 = 0.97;

/// Order `μ` and degree `ν` of a Ferrers function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreOrder {
    pub mu: Complex64,
    pub nu: Complex64,
}

impl LegendreOrder {
    pub fn new(mu: Complex64, nu: Complex64) -> Self {
        Self { mu, nu }
    }
}

/// Arguments of `2F1(a, b; c; z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Args {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub z: Complex64,
}

fn is_nonpositive_integer(x: Complex64) -> Option<usize> {
    (x.im == 0.0 && x.re <= 0.0 && x.re == x.re.round()).then(|| (-x.re) as usize)
}

/// `Σ_k (a)_k (b)_k z^k / (k! Γ(c + k))`, summed until three consecutive terms
/// fall below `1e-17` of the partial sum.
fn regularized_series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    // 1/Γ(c + k) vanishes for k <= m when c = -m; start after the zeros.
    let start = is_nonpositive_integer(c).map_or(0, |m| m + 1);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..start {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) * z / (kf + 1.0);
    }
    term *= reciprocal_gamma(c + start as f64);

    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_run = 0;
    for k in start..start + SERIES_TERM_CAP {
        sum += term;
        let tiny = term.norm() <= SERIES_CUTOFF * sum.norm();
        small_run = if tiny { small_run + 1 } else { 0 };
        if small_run >= 3 {
            return Ok(sum);
        }
        let kf = k as f64;
        term *= (a + kf) * (b + kf) * z / ((kf + 1.0) * (c + kf));
    }
    Err(Error::Convergence {
        what: "hypergeometric series",
        iterations: SERIES_TERM_CAP,
        estimate: sum.norm(),
    })
}

/// Connection formula to `1 - z` for non-integer `c - a - b`.
fn connection_generic(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    w: f64,
) -> Result<Complex64> {
    let d = c - a - b;
    let first = regularized_series(a, b, 1.0 - d, w)? * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    let second = (d * w.ln()).exp()
        * regularized_series(c - a, c - b, 1.0 + d, w)?
        * reciprocal_gamma(a)
        * reciprocal_gamma(b);
    Ok(PI / sin_pi(d) * (first - second))
}

/// Logarithmic limit of the connection formula when `c = a + b + m`, `m >= 0`.
fn connection_degenerate(a: Complex64, b: Complex64, m: usize, w: f64) -> Result<Complex64> {
    let mf = m as f64;
    let zm1 = -w;

    let mut finite = Complex64::new(0.0, 0.0);
    if m > 0 {
        let mut poch = Complex64::new(1.0, 0.0);
        let mut power = 1.0;
        let mut k_fact = 1.0;
        for k in 0..m {
            let fact_rest: f64 = (1..(m - k)).map(|v| v as f64).product();
            finite += poch * fact_rest / k_fact * power;
            let kf = k as f64;
            poch *= (a + kf) * (b + kf);
            power *= zm1;
            k_fact *= kf + 1.0;
        }
        finite *= reciprocal_gamma(a + mf) * reciprocal_gamma(b + mf);
    }

    let weight = reciprocal_gamma(a) * reciprocal_gamma(b);
    if weight == Complex64::new(0.0, 0.0) {
        return Ok(finite);
    }

    let ln_w = w.ln();
    let mut psi_k1 = -EULER_GAMMA; // ψ(k + 1)
    let mut psi_km1: f64 = -EULER_GAMMA + (1..=m).map(|v| 1.0 / v as f64).sum::<f64>(); // ψ(k + m + 1)
    let mut psi_a = digamma(a + mf)?;
    let mut psi_b = digamma(b + mf)?;
    let m_fact: f64 = (1..=m).map(|v| v as f64).product();
    // (a+m)_k (b+m)_k / (k! (k+m)!) w^k
    let mut coeff = Complex64::new(1.0 / m_fact, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_run = 0;
    for k in 0..SERIES_TERM_CAP {
        let kf = k as f64;
        let term = coeff * (ln_w - psi_k1 - psi_km1 + psi_a + psi_b);
        sum += term;
        let tiny = term.norm() <= SERIES_CUTOFF * sum.norm();
        small_run = if tiny { small_run + 1 } else { 0 };
        if small_run >= 3 {
            return Ok(finite - zm1.powi(m as i32) * weight * sum);
        }
        psi_k1 += 1.0 / (kf + 1.0);
        psi_km1 += 1.0 / (kf + mf + 1.0);
        psi_a += (a + mf + kf).inv();
        psi_b += (b + mf + kf).inv();
        coeff *= (a + mf + kf) * (b + mf + kf) * w / ((kf + 1.0) * (kf + mf + 1.0));
    }
    Err(Error::Convergence {
        what: "degenerate hypergeometric connection series",
        iterations: SERIES_TERM_CAP,
        estimate: sum.norm(),
    })
}

/// `F̃(-m, b; c; z)` for `z > 1/2`, summed in powers of `w = 1 - z`:
/// `F̃(-m, b; c; z) = (c - b)_m / Γ(c + m) · F(-m, b; b - c - m + 1; w)`.
/// Summing in `z` instead cancels badly near `z = 1`. Falls back to the
/// `z` series when the new lower parameter is a nonpositive integer that
/// would vanish inside the sum.
fn terminating_at_one(m: usize, b: Complex64, c: Complex64, z: f64, w: f64) -> Complex64 {
    let lower = b - c - m as f64 + 1.0;
    if is_nonpositive_integer(lower).is_some_and(|k| k < m) {
        return regularized_series(-Complex64::new(m as f64, 0.0), b, c, z)
            .expect("terminating series converges");
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prefactor = reciprocal_gamma(c + m as f64);
    for j in 0..m {
        let jf = j as f64;
        term *= (jf - m as f64) * (b + jf) * w / ((lower + jf) * (jf + 1.0));
        sum += term;
        prefactor *= c - b + jf;
    }
    prefactor * sum
}

/// `2F1(a, b; c; z) / Γ(c)` with `w = 1 - z` supplied separately so that it
/// carries full relative precision near `z = 1`.
fn hyp2f1_regularized_split(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: f64,
    w: f64,
) -> Result<Complex64> {
    // a terminating series is a polynomial in z and needs no connection
    let degree = match (is_nonpositive_integer(a), is_nonpositive_integer(b)) {
        (Some(m), Some(n)) => Some((m.min(n), if m <= n { b } else { a })),
        (Some(m), None) => Some((m, b)),
        (None, Some(n)) => Some((n, a)),
        (None, None) => None,
    };
    if z <= 0.5 {
        return regularized_series(a, b, c, z);
    }
    if let Some((m, other)) = degree {
        return Ok(terminating_at_one(m, other, c, z, w));
    }
    let d = c - a - b;
    let nearest = d.re.round();
    let dist = (d - nearest).norm();
    if dist < DEGENERATE_EXACT {
        if nearest >= 0.0 {
            return connection_degenerate(a, b, nearest as usize, w);
        }
        // Euler: F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z)
        let m = (-nearest) as usize;
        let inner = connection_degenerate(c - a, c - b, m, w)?;
        return Ok(inner * w.powi(-(m as i32)));
    }
    if dist < DEGENERATE_NEAR && z <= DIRECT_SERIES_LIMIT {
        return regularized_series(a, b, c, z);
    }
    connection_generic(a, b, c, w)
}

/// Regularized Gauss hypergeometric function `2F1(a, b; c; z) / Γ(c)`, for
/// real `0 <= z < 1`. Entire in `c`.
pub fn hyp2f1_regularized(args: Hyp2F1Args) -> Result<Complex64> {
    let z = args.z;
    if z.im != 0.0 || !(0.0..1.0).contains(&z.re) {
        return Err(Error::Domain(format!(
            "hypergeometric argument z = {z} must be real in [0, 1)"
        )));
    }
    hyp2f1_regularized_split(args.a, args.b, args.c, z.re, 1.0 - z.re)
}

/// Ferrers function of the first kind `P^μ_ν(ξ)` on the cut.
///
/// Rejects `1 - |ξ| < 1e-10`.
pub fn ferrers_p(order: LegendreOrder, xi: CutPoint) -> Result<Complex64> {
    let x = xi.xi();
    if 1.0 - x.abs() < 1e-10 {
        return Err(Error::Domain(format!(
            "xi = {x} is within 1e-10 of the end of the cut"
        )));
    }
    let LegendreOrder { mu, nu } = order;
    let log_ratio = x.ln_1p() - (-x).ln_1p();
    let prefactor = (mu * 0.5 * log_ratio).exp();
    let f = hyp2f1_regularized_split(-nu, nu + 1.0, 1.0 - mu, (1.0 - x) / 2.0, (1.0 + x) / 2.0)?;
    Ok(prefactor * f)
}

/// Relative residual of
/// `(ν - μ + 1) P^μ_{ν+1}(cos θ) - (ν + μ + 1) cos θ P^μ_ν(cos θ) = sin θ P^{μ+1}_ν(cos θ)`.
///
/// The denominator is `|LHS| + |RHS| + |(ν + μ + 1) P^μ_ν|`: near `θ = π/2`
/// both sides vanish while `P^μ_ν` does not, and rounding in `cos θ` would
/// otherwise read as an O(1) residual.
pub fn remark_recurrence_residual(order: LegendreOrder, theta: f64) -> Result<f64> {
    if !(1e-3..=PI - 1e-3).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta = {theta} must stay 1e-3 away from 0 and pi"
        )));
    }
    let LegendreOrder { mu, nu } = order;
    let xi = CutPoint::new(theta.cos())?;
    let p = ferrers_p(order, xi)?;
    let lhs = (nu - mu + 1.0) * ferrers_p(LegendreOrder::new(mu, nu + 1.0), xi)?
        - (nu + mu + 1.0) * xi.xi() * p;
    let rhs = theta.sin() * ferrers_p(LegendreOrder::new(mu + 1.0, nu), xi)?;
    let scale = lhs.norm() + rhs.norm() + ((nu + mu + 1.0) * p).norm() + 1e-300;
    Ok((lhs - rhs).norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn hyp(a: Complex64, b: Complex64, cc: Complex64, z: f64) -> Complex64 {
        hyp2f1_regularized(Hyp2F1Args { a, b, c: cc, z: re(z) }).unwrap()
    }

    fn assert_close(a: Complex64, b: Complex64, rel: f64) {
        let err = (a - b).norm() / b.norm();
        assert!(err < rel, "{a} vs {b}: rel err {err:e}");
    }

    #[test]
    fn series_truncates_at_zero_parameter() {
        let cc = c(1.3, 0.4);
        for z in [0.2, 0.7, 0.95] {
            assert_close(hyp(re(0.0), c(2.0, 1.0), cc, z), reciprocal_gamma(cc), 1e-14);
        }
    }

    #[test]
    fn log_closed_form() {
        for z in [0.1, 0.5, 0.8, 0.99] {
            let want = -(1.0_f64 - z).ln() / z;
            assert_close(hyp(re(1.0), re(1.0), re(2.0), z), re(want), 1e-13);
        }
    }

    #[test]
    fn terminating_polynomial() {
        // 1 + (-2)(3)/1.5 z + (-2)(-1)(3)(4)/(1.5·2.5·2) z² at z = 0.3
        let z: f64 = 0.3;
        let poly = 1.0 - 4.0 * z + 3.2 * z * z;
        let want = poly / gamma(re(1.5)).unwrap().re;
        assert_close(hyp(re(-2.0), re(3.0), re(1.5), 0.3), re(want), 1e-14);
    }

    #[test]
    fn nonpositive_integer_c_is_regular() {
        // F̃(a,b;-m;z) = (a)_{m+1}(b)_{m+1}/(m+1)! z^{m+1} F(a+m+1, b+m+1; m+2; z)
        let (a, b, z) = (c(0.4, 0.1), re(1.3), 0.35);
        let m = 2.0;
        let lhs = hyp(a, b, re(-m), z);
        let poch = |x: Complex64| x * (x + 1.0) * (x + 2.0);
        let rhs = poch(a) * poch(b) / 6.0 * z.powi(3) * hyp(a + 3.0, b + 3.0, re(m + 2.0), z) * gamma(re(4.0)).unwrap();
        assert_close(lhs, rhs, 1e-13);
    }

    // mpmath hyp2f1(...)/gamma(c), 30 digits
    #[test]
    fn connection_formulas_against_reference() {
        let a = c(0.3, 0.2);
        // c - a - b = 0 and 2: logarithmic cases
        assert_close(
            hyp(a, re(1.7), a + 1.7, 0.9),
            c(1.743_635_167_802_627_6, 0.312_168_280_774_914_83),
            1e-13,
        );
        assert_close(
            hyp(a, re(1.7), a + 3.7, 0.93),
            c(0.199_842_859_598_337_15, -0.027_968_376_099_148_844),
            1e-13,
        );
        // c - a - b = -3 through Euler's transformation
        assert_close(
            hyp(a, re(1.7), c(-1.0, 0.2), 0.8),
            c(60.188_566_820_771_87, 45.819_756_501_212_49),
            1e-12,
        );
        // generic
        assert_close(
            hyp(a, c(-1.1, 0.5), c(0.4, -0.3), 0.85),
            c(0.132_220_200_083_591_86, -0.483_222_585_479_991_2),
            1e-13,
        );
    }

    #[test]
    fn ferrers_low_order() {
        for x in [-0.95, -0.3, 0.0, 0.25, 0.8] {
            let xi = CutPoint::new(x).unwrap();
            let p00 = ferrers_p(LegendreOrder::new(re(0.0), re(0.0)), xi).unwrap();
            assert!((p00 - re(1.0)).norm() < 1e-14);
            let p01 = ferrers_p(LegendreOrder::new(re(0.0), re(1.0)), xi).unwrap();
            assert!((p01 - re(x)).norm() < 1e-14);
        }
        let theta: f64 = 0.7;
        let xi = CutPoint::new(theta.cos()).unwrap();
        let p11 = ferrers_p(LegendreOrder::new(re(1.0), re(1.0)), xi).unwrap();
        assert!((p11 - re(-theta.sin())).norm() < 1e-14, "{p11}");
    }

    // mpmath legenp(nu, mu, x, type=2)
    #[test]
    fn ferrers_against_reference() {
        let cases = [
            (c(0.3, 0.2), re(-0.7), 0.45, c(1.022_487_002_893_048_3, -0.115_320_989_335_459_77)),
            (re(-1.0), c(-2.5, 1.0), -0.9, c(-3.005_487_272_185_984_7, -1.351_623_246_299_765_3)),
            (re(-0.5), c(1.2, -2.0), -0.95, c(-44.591_827_000_791_254, -62.988_748_227_791_03)),
            (re(2.0), c(3.3, 0.4), 0.6, c(7.062_458_054_741_810_2, 1.157_857_793_783_690_1)),
            (re(0.0), c(-4.5, -3.0), -0.8, c(-402.413_687_952_302_8, 50.487_651_380_782_11)),
        ];
        for (mu, nu, x, want) in cases {
            let got = ferrers_p(LegendreOrder::new(mu, nu), CutPoint::new(x).unwrap()).unwrap();
            assert_close(got, want, 1e-12);
        }
    }

    #[test]
    fn ferrers_rejects_cut_ends() {
        let order = LegendreOrder::new(re(0.5), re(0.3));
        assert!(ferrers_p(order, CutPoint::new(1.0 - 1e-12).unwrap()).is_err());
        assert!(ferrers_p(order, CutPoint::new(-1.0).unwrap()).is_err());
    }

    #[test]
    fn recurrence_examples() {
        use std::f64::consts::FRAC_PI_2;
        let r = remark_recurrence_residual(LegendreOrder::new(re(0.0), re(1.0)), PI / 3.0).unwrap();
        assert!(r < 1e-10);
        let r = remark_recurrence_residual(LegendreOrder::new(c(0.3, 0.2), re(-0.7)), 1.1).unwrap();
        assert!(r < 1e-9);
        let r = remark_recurrence_residual(LegendreOrder::new(re(0.0), re(0.0)), FRAC_PI_2).unwrap();
        assert!(r < 1e-12);
        assert!(remark_recurrence_residual(LegendreOrder::new(re(0.0), re(0.0)), 1e-4).is_err());
    }
}
