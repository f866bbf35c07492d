//! Gegenbauer (ultraspherical) polynomials `C^λ_j(ξ)`, defined through
//!
//! ```text
//! (1 + 2tξ + t²)^{-λ} = Σ_j (-t)^j C^λ_j(ξ)
//! ```
//!
//! and evaluated with the three-term recurrence
//! `j C_j = 2(j + λ - 1) ξ C_{j-1} - (j + 2λ - 2) C_{j-2}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::CutPoint;

const TAIL_TERM_CAP: usize = 5000;
const TAIL_REL_CUTOFF: f64 = 1e-18;

/// Degree and superscript of a Gegenbauer polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerIndex {
    pub j: usize,
    pub lambda: Complex64,
}

impl GegenbauerIndex {
    pub fn eval(&self, xi: CutPoint) -> Complex64 {
        gegenbauer(self.j, self.lambda, xi)
    }
}

/// Iterator over `C^λ_0(ξ), C^λ_1(ξ), ...`.
#[derive(Debug, Clone)]
pub struct GegenbauerRecurrence {
    lambda: Complex64,
    xi: f64,
    j: usize,
    prev: Complex64,
    curr: Complex64,
}

impl GegenbauerRecurrence {
    pub fn new(lambda: Complex64, xi: f64) -> Self {
        Self {
            lambda,
            xi,
            j: 0,
            prev: Complex64::new(0.0, 0.0),
            curr: Complex64::new(1.0, 0.0),
        }
    }
}

impl Iterator for GegenbauerRecurrence {
    type Item = Complex64;

    fn next(&mut self) -> Option<Complex64> {
        let out = self.curr;
        let j = (self.j + 1) as f64;
        let next = if self.j == 0 {
            2.0 * self.lambda * self.xi
        } else {
            (2.0 * (j + self.lambda - 1.0) * self.xi * self.curr
                - (j + 2.0 * self.lambda - 2.0) * self.prev)
                / j
        };
        self.prev = self.curr;
        self.curr = next;
        self.j += 1;
        Some(out)
    }
}

/// `C^λ_0(ξ), ..., C^λ_{max_degree}(ξ)`.
pub fn gegenbauer_sequence(max_degree: usize, lambda: Complex64, xi: CutPoint) -> Vec<Complex64> {
    GegenbauerRecurrence::new(lambda, xi.xi())
        .take(max_degree + 1)
        .collect()
}

/// `C^λ_j(ξ)`: the coefficient of `(-t)^j` in `(1 + 2tξ + t²)^{-λ}`.
pub fn gegenbauer(j: usize, lambda: Complex64, xi: CutPoint) -> Complex64 {
    GegenbauerRecurrence::new(lambda, xi.xi())
        .nth(j)
        .expect("recurrence is infinite")
}

/// `Σ_{j=0}^{q} (-u)^j C^λ_j(ξ)`, accumulated by Horner's rule in `-u`.
pub fn gegenbauer_partial_sum(q: usize, lambda: Complex64, u: f64, xi: CutPoint) -> Complex64 {
    let coeffs = gegenbauer_sequence(q, lambda, xi);
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * (-u) + c)
}

/// `Σ_{j>q} (-u)^j C^λ_j(ξ)` for `0 <= u < 1`, truncated once two consecutive
/// terms fall below `1e-18` of the running sum.
pub fn gegenbauer_tail(q: usize, lambda: Complex64, u: f64, xi: CutPoint) -> Result<Complex64> {
    if !(0.0..1.0).contains(&u) {
        return Err(Error::Domain(format!(
            "Gegenbauer tail series needs 0 <= u < 1, got {u}"
        )));
    }
    if u == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = (-u).powi(q as i32 + 1);
    let mut small_run = 0;
    for (k, c) in GegenbauerRecurrence::new(lambda, xi.xi())
        .skip(q + 1)
        .take(TAIL_TERM_CAP)
        .enumerate()
    {
        let term = power * c;
        sum += term;
        power *= -u;
        let tiny = term.norm() <= TAIL_REL_CUTOFF * sum.norm() || term.norm() < 1e-300;
        small_run = if tiny { small_run + 1 } else { 0 };
        if small_run >= 2 && k >= 2 {
            return Ok(sum);
        }
        if power == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        what: "Gegenbauer tail series",
        iterations: TAIL_TERM_CAP,
        estimate: sum.norm(),
    })
}
