//! Verification sweeps: each identity is evaluated on a parameter grid, both
//! sides are compared, and the results are written as CSV.
//!
//! Records are produced in grid order regardless of how many threads
//! evaluate them, so two runs with the same spec and seed write identical
//! files.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gegenbauer::{gegenbauer, gegenbauer_partial_sum};
use crate::kernels::{
    h_bound_certificate, h_kernel, log_grid, riesz_kernel, weierstrass_kernel, CutPoint,
    HKernelSpec,
};
use crate::legendre::{ferrers_p, LegendreOrder};
use crate::mellin::{
    corollary_closed, mellin_by_parts, mellin_h_closed, mellin_numeric, mellin_riesz_closed,
    CorollaryForm, MellinPoint, QuadratureConfig, RieszIntegrand,
};
use crate::special::{distance_to_nonpositive_integer, gamma, DimensionSpec};

/// Environment variable selecting sweep log output.
pub const LOG_ENV: &str = "MELLIN_VERIFY_LOG";

/// Exact CSV header.
pub const CSV_HEADER: [&str; 14] = [
    "identity",
    "n_or_lambda",
    "q",
    "xi",
    "re_s",
    "im_s",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "abs_err",
    "rel_err",
    "oracle",
    "pass",
];

/// Tolerance of the first/second corollary form ratio against `-1`.
pub const COROLLARY_RATIO_TOL: f64 = 1e-12;
/// Tolerance of the validated corollary form against the closed form of `M(h)`.
pub const COROLLARY_CLOSED_TOL: f64 = 1e-10;
/// Tolerance of the Gegenbauer parity records.
pub const PARITY_TOL: f64 = 1e-12;
/// Tolerance of the half-integer gamma (induction) records.
pub const INDUCTION_TOL: f64 = 1e-13;
/// Tolerance of the Ferrers degree-symmetry records.
pub const DEGREE_SYMMETRY_TOL: f64 = 1e-11;
/// Tolerance of the Ferrers finite-difference records in `μ`.
pub const MU_SMOOTHNESS_TOL: f64 = 1e-5;
/// Tolerance of the `C` stability records of the `h` bound.
pub const BOUND_STABILITY_TOL: f64 = 0.01;
/// Allowed deviation of a log-log slope from its predicted value.
pub const SLOPE_TOL: f64 = 0.05;

/// Truncation order of the generating-function check.
pub const GF_TRUNCATION: usize = 80;
/// Evaluation point of the generating-function check.
pub const GF_POINT: f64 = 0.5;
/// Largest degree in the Gegenbauer parity records.
pub const PARITY_MAX_DEGREE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// Mellin transform of `k_λ` against its Ferrers closed form.
    Eq1,
    /// Mellin transform of `h` against its Ferrers closed form.
    Eq2,
    /// Integration-by-parts form on and beyond the original strip.
    ByParts,
    /// Both printed corollary forms against quadrature.
    Corollary,
    /// Gegenbauer generating function and parity.
    GegenbauerGf,
    /// Gamma duplication and the half-integer induction identity.
    Duplication,
    /// Ferrers recurrence, degree symmetry and smoothness in the order.
    Recurrence,
    /// Growth exponents and constant of `|h| <= C min(u^q, u^{q+1})`.
    HBound,
    /// Weierstrass kernel against the scaled `h` kernel.
    KqReduction,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Eq1,
        Identity::Eq2,
        Identity::ByParts,
        Identity::Corollary,
        Identity::GegenbauerGf,
        Identity::Duplication,
        Identity::Recurrence,
        Identity::HBound,
        Identity::KqReduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Eq1 => "eq1",
            Identity::Eq2 => "eq2",
            Identity::ByParts => "by_parts",
            Identity::Corollary => "corollary",
            Identity::GegenbauerGf => "gegenbauer_gf",
            Identity::Duplication => "duplication",
            Identity::Recurrence => "recurrence",
            Identity::HBound => "h_bound",
            Identity::KqReduction => "kq_reduction",
        }
    }

    /// Tolerance of the identity's main comparison.
    pub fn default_tol(self) -> f64 {
        match self {
            Identity::Eq1 | Identity::Eq2 | Identity::Corollary => 1e-7,
            Identity::ByParts => 1e-6,
            Identity::GegenbauerGf => 1e-10,
            Identity::Duplication => 1e-12,
            Identity::Recurrence => 1e-9,
            Identity::HBound => slope_tol_as_rel(SLOPE_TOL),
            Identity::KqReduction => 1e-12,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown identity '{s}'")))
    }
}

/// Slopes are recorded as growth factors `e^{slope}`, so a slope deviation
/// `d` shows up as the relative error `1 - e^{-|d|}`.
pub fn slope_tol_as_rel(slope_tol: f64) -> f64 {
    -(-slope_tol).exp_m1()
}

/// Parameter lists of a sweep. How each list is read depends on the identity;
/// see [`default_grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub lambdas: Vec<f64>,
    pub ns: Vec<u32>,
    pub qs: Vec<usize>,
    pub xis: Vec<f64>,
    /// Strip fractions in `(0, 1)`, or `Re z` for `duplication`.
    pub re_s: Vec<f64>,
    /// Imaginary parts of `s`, `ρ` or `z`.
    pub im_s: Vec<f64>,
    /// Number of random points for `recurrence` and `kq_reduction`.
    pub points: usize,
}

/// JSON grid file: any subset of the [`Grid`] fields.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridOverrides {
    pub lambdas: Option<Vec<f64>>,
    pub ns: Option<Vec<u32>>,
    pub qs: Option<Vec<usize>>,
    pub xis: Option<Vec<f64>>,
    pub re_s: Option<Vec<f64>>,
    pub im_s: Option<Vec<f64>>,
    pub points: Option<usize>,
}

impl GridOverrides {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("grid file: {e}")))
    }
}

impl Grid {
    pub fn apply(mut self, o: GridOverrides) -> Self {
        if let Some(v) = o.lambdas {
            self.lambdas = v;
        }
        if let Some(v) = o.ns {
            self.ns = v;
        }
        if let Some(v) = o.qs {
            self.qs = v;
        }
        if let Some(v) = o.xis {
            self.xis = v;
        }
        if let Some(v) = o.re_s {
            self.re_s = v;
        }
        if let Some(v) = o.im_s {
            self.im_s = v;
        }
        if let Some(v) = o.points {
            self.points = v;
        }
        self
    }
}

const LAMBDAS: [f64; 5] = [0.5, 0.75, 1.0, 1.5, 2.3];
const XIS: [f64; 5] = [-0.9, -0.5, 0.0, 0.5, 0.9];

/// Compiled-in grid of each identity.
///
/// | identity | grid |
/// |---|---|
/// | `eq1` | `λ × ξ × Re s = 2λ·f × Im s` |
/// | `eq2` | `λ × q × ξ × Re s = -q-1+f × Im s` |
/// | `by_parts` | `q × λ × ξ × Re s = -q-1+f × Im s`, plus fixed continuation points |
/// | `corollary` | `n × q × Re ρ = q+f × Im ρ × ξ` |
/// | `gegenbauer_gf` | `λ × ξ` |
/// | `duplication` | `Re z × Im z`, plus `n = 3..=25` |
/// | `recurrence` | `points` seeded random `(μ, ν, θ)` |
/// | `h_bound` | `λ × q × ξ` |
/// | `kq_reduction` | `points` seeded random `(n, q, r, t, ψ)` |
pub fn default_grid(identity: Identity) -> Grid {
    let empty = Grid {
        lambdas: vec![],
        ns: vec![],
        qs: vec![],
        xis: vec![],
        re_s: vec![],
        im_s: vec![],
        points: 0,
    };
    match identity {
        Identity::Eq1 => Grid {
            lambdas: LAMBDAS.to_vec(),
            xis: XIS.to_vec(),
            re_s: vec![0.25, 0.5, 0.75],
            im_s: vec![0.0, 2.0, -2.0],
            ..empty
        },
        Identity::Eq2 => Grid {
            lambdas: LAMBDAS.to_vec(),
            qs: vec![0, 1, 2, 3],
            xis: XIS.to_vec(),
            re_s: vec![0.5],
            im_s: vec![0.0, 1.0, 3.0],
            ..empty
        },
        Identity::ByParts => Grid {
            lambdas: vec![0.5, 1.0, 2.3],
            qs: vec![0, 1, 2],
            xis: vec![-0.5, 0.0, 0.5],
            re_s: vec![0.25, 0.75],
            im_s: vec![0.0, 1.0],
            ..empty
        },
        Identity::Corollary => Grid {
            ns: vec![3, 4, 5, 6],
            qs: vec![0, 1, 2, 3],
            xis: vec![-0.8, 0.0, 0.8],
            re_s: vec![0.5],
            im_s: vec![0.0, 1.0],
            ..empty
        },
        Identity::GegenbauerGf => Grid {
            lambdas: vec![0.5, 1.0, 2.5],
            xis: vec![-0.9, 0.0, 0.9],
            ..empty
        },
        Identity::Duplication => Grid {
            ns: (3..=25).collect(),
            re_s: (0..10).map(|i| 0.3 + 5.7 * i as f64 / 9.0).collect(),
            im_s: (0..10).map(|i| -5.0 + 10.0 * i as f64 / 9.0).collect(),
            ..empty
        },
        Identity::Recurrence => Grid {
            points: 100,
            ..empty
        },
        Identity::HBound => Grid {
            lambdas: vec![0.5, 1.0, 2.0],
            qs: vec![0, 1, 2, 3],
            xis: vec![-0.8, 0.0, 0.8],
            ..empty
        },
        Identity::KqReduction => Grid {
            points: 200,
            ..empty
        },
    }
}

/// `(λ, q, ξ, s)` points beyond `Re s = -q` where the integration-by-parts
/// form is compared with the continued closed form.
pub const CONTINUATION_POINTS: [(f64, usize, f64, f64, f64); 20] = [
    (1.0, 0, 0.3, 0.5, 0.0),
    (1.0, 0, 0.3, 0.5, 1.0),
    (1.0, 0, -0.6, 1.3, 0.0),
    (1.0, 0, -0.6, 1.3, -2.0),
    (1.5, 1, 0.0, -0.5, 0.0),
    (1.5, 1, 0.4, 0.5, 1.0),
    (1.5, 1, 0.4, 1.5, 0.0),
    (1.5, 1, -0.8, 2.2, 0.5),
    (0.75, 2, 0.2, -1.5, 0.0),
    (0.75, 2, 0.2, -0.5, 1.0),
    (0.75, 2, -0.5, 0.4, 0.0),
    (0.75, 2, -0.5, 1.2, 0.0),
    (2.3, 2, 0.6, -1.3, 2.0),
    (2.3, 2, 0.6, 0.5, 0.0),
    (2.3, 2, -0.3, 3.1, 0.0),
    (2.3, 2, -0.3, -0.5, 0.0),
    (0.5, 1, 0.1, -0.5, 0.0),
    (0.5, 1, 0.1, 0.5, 0.0),
    (0.5, 1, 0.7, -0.3, 1.0),
    (0.5, 1, 0.7, 0.7, -1.0),
];

/// A validated sweep: every grid point satisfies its identity's preconditions.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    identity: Identity,
    grid: Grid,
    rel_tol: f64,
    seed: u64,
    tasks: Vec<Task>,
}

impl SweepSpec {
    /// Checks every grid point, naming the first one that violates a
    /// precondition.
    pub fn new(identity: Identity, grid: Grid, rel_tol: f64, seed: u64) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {rel_tol}")));
        }
        let tasks = build_tasks(identity, &grid, seed)?;
        if tasks.is_empty() {
            return Err(Error::Domain(format!("{identity}: grid is empty")));
        }
        Ok(Self {
            identity,
            grid,
            rel_tol,
            seed,
            tasks,
        })
    }

    /// Default grid and tolerance.
    pub fn with_defaults(identity: Identity, seed: u64) -> Result<Self> {
        Self::new(identity, default_grid(identity), identity.default_tol(), seed)
    }

    pub fn identity(&self) -> Identity {
        self.identity
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of grid points (one point can yield several records).
    pub fn len(&self) -> usize {
        self.tasks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tasks.is_empty()
    }
}

/// Parameters shown in a record. Columns an identity does not use are empty.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PointParams {
    pub n_or_lambda: Option<f64>,
    pub q: Option<usize>,
    pub xi: Option<f64>,
    pub s: Option<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRecord {
    pub identity: Identity,
    pub params: PointParams,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub oracle: String,
    pub pass: bool,
}

impl VerificationRecord {
    pub fn compare(
        identity: Identity,
        params: PointParams,
        lhs: Complex64,
        rhs: Complex64,
        oracle: impl Into<String>,
        tol: f64,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = abs_err / lhs.norm().max(rhs.norm()).max(1e-300);
        Self {
            identity,
            params,
            lhs,
            rhs,
            abs_err,
            rel_err,
            oracle: oracle.into(),
            pass: rel_err <= tol,
        }
    }

    /// A point whose evaluation failed.
    pub fn failed(identity: Identity, params: PointParams, oracle: &str, err: &Error) -> Self {
        let nan = Complex64::new(f64::NAN, f64::NAN);
        Self {
            identity,
            params,
            lhs: nan,
            rhs: nan,
            abs_err: f64::NAN,
            rel_err: f64::INFINITY,
            oracle: format!("{oracle}: error: {err}"),
            pass: false,
        }
    }

    fn csv_row(&self) -> [String; 14] {
        let p = &self.params;
        let opt = |v: Option<f64>| v.map_or_else(String::new, fmt_float);
        [
            self.identity.name().to_string(),
            opt(p.n_or_lambda),
            p.q.map_or_else(String::new, |q| q.to_string()),
            opt(p.xi),
            opt(p.s.map(|s| s.re)),
            opt(p.s.map(|s| s.im)),
            fmt_float(self.lhs.re),
            fmt_float(self.lhs.im),
            fmt_float(self.rhs.re),
            fmt_float(self.rhs.im),
            fmt_float(self.abs_err),
            fmt_float(self.rel_err),
            self.oracle.clone(),
            self.pass.to_string(),
        ]
    }
}

/// 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub identity: Identity,
    pub records: usize,
    pub passed: usize,
    pub max_rel_err: f64,
    pub wall_time: Duration,
    /// Whether the identity as a whole holds on the grid.
    pub pass: bool,
    /// Adjudication outcome for identities that have one.
    pub verdict: Option<String>,
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} records pass, max rel_err {:.3e}, {:.2}s, {}",
            self.identity,
            self.passed,
            self.records,
            self.max_rel_err,
            self.wall_time.as_secs_f64(),
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        if let Some(v) = &self.verdict {
            write!(f, " ({v})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub records: Vec<VerificationRecord>,
    pub summary: SweepSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogLevel {
    Silent,
    Summary,
    PerPoint,
}

impl LogLevel {
    /// Reads [`LOG_ENV`]; unset means `summary`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LOG_ENV) {
            Err(_) => Ok(LogLevel::Summary),
            Ok(v) => v.parse(),
        }
    }
}

impl FromStr for LogLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "silent" => Ok(LogLevel::Silent),
            "summary" => Ok(LogLevel::Summary),
            "per-point" => Ok(LogLevel::PerPoint),
            other => Err(Error::Domain(format!(
                "{LOG_ENV}={other}: expected silent, summary or per-point"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Eq1 { lambda: f64, xi: f64, s: Complex64 },
    Eq2 { lambda: f64, q: usize, xi: f64, s: Complex64 },
    ByPartsOverlap { lambda: f64, q: usize, xi: f64, s: Complex64 },
    ByPartsContinuation { lambda: f64, q: usize, xi: f64, s: Complex64 },
    Corollary { n: u32, q: usize, xi: f64, rho: Complex64 },
    GeneratingFunction { lambda: f64, xi: f64 },
    Duplication { z: Complex64 },
    Induction { n: u32 },
    Recurrence { mu: f64, nu: Complex64, theta: f64 },
    MuSmoothness { mu: f64, nu: Complex64, xi: f64 },
    HBound { lambda: f64, q: usize, xi: f64 },
    KqReduction { n: u32, q: usize, r: f64, t: f64, psi: f64 },
}

fn violation(identity: Identity, point: String, reason: &str) -> Error {
    Error::Domain(format!("{identity}: point {point} rejected: {reason}"))
}

fn check_fraction(identity: Identity, f: f64, point: impl Fn() -> String) -> Result<()> {
    if f > 0.0 && f < 1.0 {
        Ok(())
    } else {
        Err(violation(identity, point(), "strip fraction must lie in (0, 1)"))
    }
}

fn check_xi(identity: Identity, xi: f64, point: impl Fn() -> String) -> Result<()> {
    if xi > -1.0 && xi < 1.0 {
        Ok(())
    } else {
        Err(violation(identity, point(), "xi must lie in (-1, 1)"))
    }
}

fn check_lambda(identity: Identity, lambda: f64, point: impl Fn() -> String) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(violation(identity, point(), "lambda must be positive"))
    }
}

fn check_im(identity: Identity, im: f64, point: impl Fn() -> String) -> Result<()> {
    if im.abs() <= crate::mellin::MAX_IMAG_S {
        Ok(())
    } else {
        Err(violation(identity, point(), "|Im s| must not exceed 10"))
    }
}

fn build_tasks(identity: Identity, g: &Grid, seed: u64) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    let id = identity;
    match identity {
        Identity::Eq1 => {
            for &lambda in &g.lambdas {
                for &xi in &g.xis {
                    for &f in &g.re_s {
                        for &im in &g.im_s {
                            let pt = || format!("(lambda={lambda}, xi={xi}, f={f}, im={im})");
                            check_lambda(id, lambda, pt)?;
                            check_xi(id, xi, pt)?;
                            check_fraction(id, f, pt)?;
                            check_im(id, im, pt)?;
                            let s = Complex64::new(2.0 * lambda * f, im);
                            tasks.push(Task::Eq1 { lambda, xi, s });
                        }
                    }
                }
            }
        }
        Identity::Eq2 | Identity::ByParts => {
            let (outer, inner): (&[f64], &[usize]) = (&g.lambdas, &g.qs);
            // eq2 runs lambda-major, by_parts q-major
            let mut pairs = Vec::new();
            if identity == Identity::Eq2 {
                for &l in outer {
                    for &q in inner {
                        pairs.push((l, q));
                    }
                }
            } else {
                for &q in inner {
                    for &l in outer {
                        pairs.push((l, q));
                    }
                }
            }
            for (lambda, q) in pairs {
                for &xi in &g.xis {
                    for &f in &g.re_s {
                        for &im in &g.im_s {
                            let pt = || format!("(lambda={lambda}, q={q}, xi={xi}, f={f}, im={im})");
                            check_lambda(id, lambda, pt)?;
                            check_xi(id, xi, pt)?;
                            check_fraction(id, f, pt)?;
                            check_im(id, im, pt)?;
                            let s = Complex64::new(-(q as f64) - 1.0 + f, im);
                            if identity == Identity::Eq2 {
                                tasks.push(Task::Eq2 { lambda, q, xi, s });
                            } else {
                                let edge = crate::mellin::BY_PARTS_EDGE_MARGIN;
                                if !(f > edge && f < 1.0 - edge) {
                                    return Err(violation(id, pt(), "within 1e-3 of a strip edge"));
                                }
                                tasks.push(Task::ByPartsOverlap { lambda, q, xi, s });
                            }
                        }
                    }
                }
            }
            if identity == Identity::ByParts {
                for (lambda, q, xi, re, im) in CONTINUATION_POINTS {
                    tasks.push(Task::ByPartsContinuation {
                        lambda,
                        q,
                        xi,
                        s: Complex64::new(re, im),
                    });
                }
            }
        }
        Identity::Corollary => {
            for &n in &g.ns {
                for &q in &g.qs {
                    for &f in &g.re_s {
                        for &im in &g.im_s {
                            for &xi in &g.xis {
                                let pt = || format!("(n={n}, q={q}, f={f}, im={im}, xi={xi})");
                                if n < 3 {
                                    return Err(violation(id, pt(), "n must be at least 3"));
                                }
                                check_xi(id, xi, pt)?;
                                check_fraction(id, f, pt)?;
                                check_im(id, im, pt)?;
                                let rho = Complex64::new(q as f64 + f, im);
                                if (rho - rho.re.round()).norm() < crate::mellin::POLE_GUARD {
                                    return Err(violation(id, pt(), "rho within 1e-6 of an integer"));
                                }
                                tasks.push(Task::Corollary { n, q, xi, rho });
                            }
                        }
                    }
                }
            }
        }
        Identity::GegenbauerGf => {
            for &lambda in &g.lambdas {
                for &xi in &g.xis {
                    let pt = || format!("(lambda={lambda}, xi={xi})");
                    check_lambda(id, lambda, pt)?;
                    check_xi(id, xi, pt)?;
                    tasks.push(Task::GeneratingFunction { lambda, xi });
                }
            }
        }
        Identity::Duplication => {
            for &re in &g.re_s {
                for &im in &g.im_s {
                    let z = Complex64::new(re, im);
                    for w in [2.0 * z, z, z + 0.5] {
                        if distance_to_nonpositive_integer(w).is_some_and(|d| d < 1e-6) {
                            return Err(violation(id, format!("z={z}"), "gamma pole within 1e-6"));
                        }
                    }
                    tasks.push(Task::Duplication { z });
                }
            }
            for &n in &g.ns {
                if n < 3 {
                    return Err(violation(id, format!("n={n}"), "n must be at least 3"));
                }
                tasks.push(Task::Induction { n });
            }
        }
        Identity::Recurrence => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..g.points {
                let mu = rng.gen_range(-2.0..2.0);
                let nu = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0));
                let theta = rng.gen_range(0.05..PI - 0.05);
                tasks.push(Task::Recurrence { mu, nu, theta });
            }
            for mu in [0.0, 1.0, 2.0] {
                for nu in [Complex64::new(0.3, 0.2), Complex64::new(-1.7, 0.0), Complex64::new(2.5, -1.0)] {
                    for xi in [-0.6, 0.2, 0.7] {
                        tasks.push(Task::MuSmoothness { mu, nu, xi });
                    }
                }
            }
        }
        Identity::HBound => {
            for &lambda in &g.lambdas {
                for &q in &g.qs {
                    for &xi in &g.xis {
                        let pt = || format!("(lambda={lambda}, q={q}, xi={xi})");
                        check_lambda(id, lambda, pt)?;
                        check_xi(id, xi, pt)?;
                        tasks.push(Task::HBound { lambda, q, xi });
                    }
                }
            }
        }
        Identity::KqReduction => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..g.points {
                let n = rng.gen_range(3..=6u32);
                let q = rng.gen_range(0..=3usize);
                let ratio = 10f64.powf(rng.gen_range(-3.0..3.0));
                let t = rng.gen_range(0.5..2.0);
                // keep clear of the coincident point r = t, ψ = 0
                let psi = rng.gen_range(-PI + 1e-3..PI - 1e-3);
                tasks.push(Task::KqReduction { n, q, r: ratio * t, t, psi });
            }
        }
    }
    Ok(tasks)
}

fn cut(xi: f64) -> Result<CutPoint> {
    CutPoint::new(xi)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Runs `f` and turns an error into one failed record.
fn guarded(
    identity: Identity,
    params: PointParams,
    oracle: &str,
    f: impl FnOnce() -> Result<Vec<VerificationRecord>>,
) -> Vec<VerificationRecord> {
    f().unwrap_or_else(|e| vec![VerificationRecord::failed(identity, params, oracle, &e)])
}

fn eval_task(identity: Identity, task: Task, tol: f64) -> Vec<VerificationRecord> {
    let cfg = QuadratureConfig::default();
    let cmp = VerificationRecord::compare;
    match task {
        Task::Eq1 { lambda, xi, s } => {
            let p = PointParams { n_or_lambda: Some(lambda), q: None, xi: Some(xi), s: Some(s) };
            guarded(identity, p, "quadrature", || {
                let lam = real(lambda);
                let point = MellinPoint::for_riesz(lam, s)?;
                let numeric = mellin_numeric(&RieszIntegrand { lambda: lam, xi: cut(xi)? }, &point, &cfg)?;
                let closed = mellin_riesz_closed(lam, &point, cut(xi)?)?;
                Ok(vec![cmp(identity, p, numeric.value, closed, "quadrature", tol)])
            })
        }
        Task::Eq2 { lambda, q, xi, s } => {
            let p = PointParams { n_or_lambda: Some(lambda), q: Some(q), xi: Some(xi), s: Some(s) };
            guarded(identity, p, "quadrature", || {
                let spec = HKernelSpec::new(real(lambda), q, cut(xi)?)?;
                let point = MellinPoint::for_h(&spec, s)?;
                let numeric = mellin_numeric(&spec, &point, &cfg)?;
                let closed = mellin_h_closed(&spec, &point)?;
                Ok(vec![cmp(identity, p, numeric.value, closed, "quadrature", tol)])
            })
        }
        Task::ByPartsOverlap { lambda, q, xi, s } => {
            let p = PointParams { n_or_lambda: Some(lambda), q: Some(q), xi: Some(xi), s: Some(s) };
            guarded(identity, p, "quadrature:overlap", || {
                let spec = HKernelSpec::new(real(lambda), q, cut(xi)?)?;
                let by_parts = mellin_by_parts(&spec, &MellinPoint::for_by_parts(&spec, s)?, &cfg)?;
                let direct = mellin_numeric(&spec, &MellinPoint::for_h(&spec, s)?, &cfg)?;
                Ok(vec![cmp(identity, p, by_parts.value, direct.value, "quadrature:overlap", tol)])
            })
        }
        Task::ByPartsContinuation { lambda, q, xi, s } => {
            let p = PointParams { n_or_lambda: Some(lambda), q: Some(q), xi: Some(xi), s: Some(s) };
            guarded(identity, p, "closed:continuation", || {
                let spec = HKernelSpec::new(real(lambda), q, cut(xi)?)?;
                let point = MellinPoint::for_by_parts(&spec, s)?;
                let by_parts = mellin_by_parts(&spec, &point, &cfg)?;
                let closed = mellin_h_closed(&spec, &point)?;
                Ok(vec![cmp(identity, p, by_parts.value, closed, "closed:continuation", tol)])
            })
        }
        Task::Corollary { n, q, xi, rho } => {
            let p = PointParams { n_or_lambda: Some(n as f64), q: Some(q), xi: Some(xi), s: Some(-rho) };
            guarded(identity, p, "quadrature", || {
                let dim = DimensionSpec::new(n)?;
                let spec = HKernelSpec::new(real(dim.lambda()), q, cut(xi)?)?;
                let point = MellinPoint::from_rho(q, rho)?;
                let numeric = mellin_numeric(&spec, &point, &cfg)?.value;
                let first = corollary_closed(dim, q, rho, cut(xi)?, CorollaryForm::First)?;
                let second = corollary_closed(dim, q, rho, cut(xi)?, CorollaryForm::Second)?;
                let validated = corollary_closed(dim, q, rho, cut(xi)?, CorollaryForm::VALIDATED)?;
                let closed = mellin_h_closed(&spec, &point)?;
                Ok(vec![
                    cmp(identity, p, first, numeric, "quadrature:first_form", tol),
                    cmp(identity, p, second, numeric, "quadrature:second_form", tol),
                    cmp(identity, p, first / second, real(-1.0), "ratio:first/second", COROLLARY_RATIO_TOL),
                    cmp(identity, p, validated, closed, "closed:proposition", COROLLARY_CLOSED_TOL),
                ])
            })
        }
        Task::GeneratingFunction { lambda, xi } => {
            let p = PointParams { n_or_lambda: Some(lambda), q: Some(GF_TRUNCATION), xi: Some(xi), s: None };
            guarded(identity, p, "generating_function", || {
                let lam = real(lambda);
                let x = cut(xi)?;
                let partial = gegenbauer_partial_sum(GF_TRUNCATION, lam, GF_POINT, x);
                let kernel = riesz_kernel(GF_POINT, x, lam)?;
                let mut out = vec![cmp(identity, p, partial, kernel, "generating_function", tol)];
                for j in 0..=PARITY_MAX_DEGREE {
                    let pj = PointParams { q: Some(j), ..p };
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    out.push(cmp(
                        identity,
                        pj,
                        gegenbauer(j, lam, x.reflected()),
                        sign * gegenbauer(j, lam, x),
                        "parity",
                        PARITY_TOL,
                    ));
                }
                Ok(out)
            })
        }
        Task::Duplication { z } => {
            let p = PointParams { s: Some(z), ..PointParams::default() };
            guarded(identity, p, "duplication", || {
                let lhs = gamma(2.0 * z)?;
                let pow = ((2.0 * z - 1.0) * std::f64::consts::LN_2).exp();
                let rhs = pow / PI.sqrt() * gamma(z)? * gamma(z + 0.5)?;
                Ok(vec![cmp(identity, p, lhs, rhs, "duplication", tol)])
            })
        }
        Task::Induction { n } => {
            let p = PointParams { n_or_lambda: Some(n as f64), ..PointParams::default() };
            guarded(identity, p, "induction", || {
                DimensionSpec::new(n)?;
                let nf = n as f64;
                let factorial: f64 = (1..=n - 3).map(f64::from).product();
                let lhs = real(PI.sqrt() * factorial);
                let rhs = 2f64.powi(n as i32 - 3) * gamma(real((nf - 1.0) / 2.0))? * gamma(real((nf - 2.0) / 2.0))?;
                Ok(vec![cmp(identity, p, lhs, rhs, "induction", INDUCTION_TOL)])
            })
        }
        Task::Recurrence { mu, nu, theta } => {
            let xi = theta.cos();
            let p = PointParams { n_or_lambda: Some(mu), q: None, xi: Some(xi), s: Some(nu) };
            guarded(identity, p, "ferrers_recurrence", || {
                let x = cut(xi)?;
                let m = real(mu);
                let p_nu = ferrers_p(LegendreOrder::new(m, nu), x)?;
                let p_next = ferrers_p(LegendreOrder::new(m, nu + 1.0), x)?;
                let p_up = ferrers_p(LegendreOrder::new(m + 1.0, nu), x)?;
                let lhs = (nu - m + 1.0) * p_next - (nu + m + 1.0) * xi * p_nu;
                let rhs = theta.sin() * p_up;
                let mirrored = ferrers_p(LegendreOrder::new(m, -nu - 1.0), x)?;
                Ok(vec![
                    cmp(identity, p, lhs, rhs, "ferrers_recurrence", tol),
                    cmp(identity, p, p_nu, mirrored, "degree_symmetry", DEGREE_SYMMETRY_TOL),
                ])
            })
        }
        Task::MuSmoothness { mu, nu, xi } => {
            let p = PointParams { n_or_lambda: Some(mu), q: None, xi: Some(xi), s: Some(nu) };
            guarded(identity, p, "mu_smoothness", || {
                let x = cut(xi)?;
                let at = |d: f64| ferrers_p(LegendreOrder::new(real(mu + d), nu), x);
                // central differences with steps 1e-4 and 2e-4 must agree
                let h = 1e-4;
                let d1 = (at(h)? - at(-h)?) / (2.0 * h);
                let d2 = (at(2.0 * h)? - at(-2.0 * h)?) / (4.0 * h);
                Ok(vec![cmp(identity, p, d1, d2, "mu_smoothness", MU_SMOOTHNESS_TOL)])
            })
        }
        Task::HBound { lambda, q, xi } => {
            let p = PointParams { n_or_lambda: Some(lambda), q: Some(q), xi: Some(xi), s: None };
            guarded(identity, p, "h_bound", || {
                let spec = HKernelSpec::new(real(lambda), q, cut(xi)?)?;
                let base = h_bound_certificate(&spec, &log_grid(1e-6, 1e6, 10))?;
                let wide = h_bound_certificate(&spec, &log_grid(1e-12, 1e12, 10))?;
                let qf = q as f64;
                let growth = |x: f64| real(x.exp());
                let finite = if base.c_estimate.is_finite() { base.c_estimate } else { f64::NAN };
                Ok(vec![
                    cmp(identity, p, growth(base.slope_at_zero), growth(qf + 1.0), "slope_at_zero", tol),
                    cmp(identity, p, growth(base.slope_at_infinity), growth(qf), "slope_at_infinity", tol),
                    cmp(identity, p, real(finite), real(wide.c_estimate), "c_stability", BOUND_STABILITY_TOL),
                ])
            })
        }
        Task::KqReduction { n, q, r, t, psi } => {
            let p = PointParams {
                n_or_lambda: Some(n as f64),
                q: Some(q),
                xi: Some(psi.cos()),
                s: Some(Complex64::new(r, t)),
            };
            guarded(identity, p, "h_kernel", || {
                let dim = DimensionSpec::new(n)?;
                let lhs = weierstrass_kernel(r, t, psi, dim, q)?;
                let spec = HKernelSpec::for_weierstrass(dim, q, psi)?;
                let rhs = t.powf(2.0 - n as f64) * h_kernel(&spec, r / t)?;
                Ok(vec![cmp(identity, p, real(lhs), rhs, "h_kernel", tol)])
            })
        }
    }
}

/// Evaluates every grid point (in parallel) and returns the records in grid
/// order with a summary.
pub fn run_sweep(spec: &SweepSpec) -> SweepReport {
    let start = Instant::now();
    let records: Vec<VerificationRecord> = spec
        .tasks
        .par_iter()
        .map(|&task| eval_task(spec.identity, task, spec.rel_tol))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let summary = summarize(spec.identity, &records, start.elapsed());
    SweepReport { records, summary }
}

/// Outcome of the corollary sign adjudication over a set of records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adjudication {
    /// The form that matched quadrature at every point, if any.
    pub validated: Option<CorollaryForm>,
    /// Points where both or neither form matched.
    pub ambiguous_points: usize,
    /// Points whose verdict disagrees with the majority.
    pub inconsistent_points: usize,
}

/// Per point, exactly one form must match; the matching form must be the
/// same everywhere.
pub fn adjudicate_corollary(records: &[VerificationRecord]) -> Adjudication {
    let mut verdicts: Vec<Option<CorollaryForm>> = Vec::new();
    let mut by_point: BTreeMap<usize, (Option<bool>, Option<bool>)> = BTreeMap::new();
    let mut index = 0;
    for r in records {
        match r.oracle.as_str() {
            "quadrature:first_form" => {
                by_point.entry(index).or_default().0 = Some(r.pass);
            }
            "quadrature:second_form" => {
                by_point.entry(index).or_default().1 = Some(r.pass);
                index += 1;
            }
            o if o.contains("error") => {
                by_point.insert(index, (None, None));
                index += 1;
            }
            _ => {}
        }
    }
    for (first, second) in by_point.values() {
        verdicts.push(match (first, second) {
            (Some(true), Some(false)) => Some(CorollaryForm::First),
            (Some(false), Some(true)) => Some(CorollaryForm::Second),
            _ => None,
        });
    }
    let ambiguous_points = verdicts.iter().filter(|v| v.is_none()).count();
    let firsts = verdicts.iter().filter(|v| **v == Some(CorollaryForm::First)).count();
    let seconds = verdicts.iter().filter(|v| **v == Some(CorollaryForm::Second)).count();
    let (majority, inconsistent_points) = if seconds >= firsts {
        (CorollaryForm::Second, firsts)
    } else {
        (CorollaryForm::First, seconds)
    };
    let validated = (ambiguous_points == 0 && inconsistent_points == 0 && !verdicts.is_empty())
        .then_some(majority);
    Adjudication {
        validated,
        ambiguous_points,
        inconsistent_points,
    }
}

pub fn summarize(identity: Identity, records: &[VerificationRecord], wall_time: Duration) -> SweepSummary {
    let passed = records.iter().filter(|r| r.pass).count();
    let max_rel_err = records.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    let (pass, verdict) = if identity == Identity::Corollary {
        let adj = adjudicate_corollary(records);
        let aux_ok = records
            .iter()
            .filter(|r| !r.oracle.starts_with("quadrature:"))
            .all(|r| r.pass);
        let verdict = match adj.validated {
            Some(form) => format!("validated form: {}", form.name()),
            None => format!(
                "no consistent form: {} ambiguous, {} inconsistent points",
                adj.ambiguous_points, adj.inconsistent_points
            ),
        };
        (adj.validated.is_some() && aux_ok, Some(verdict))
    } else {
        (!records.is_empty() && passed == records.len(), None)
    };
    SweepSummary {
        identity,
        records: records.len(),
        passed,
        max_rel_err,
        wall_time,
        pass,
        verdict,
    }
}

/// Writes the CSV report (header first) to any writer.
pub fn write_report<W: Write>(records: &[VerificationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Domain(format!("CSV write failed: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        w.write_record(r.csv_row()).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Domain(format!("CSV write failed: {e}")))
}

/// Writes the CSV report to `path`, replacing any existing file.
pub fn emit_report(records: &[VerificationRecord], path: &Path) -> std::io::Result<()> {
    let file = std::fs::File::create(path)?;
    write_report(records, std::io::BufWriter::new(file))
        .map_err(|e| std::io::Error::other(e.to_string()))
}

/// Functions reachable through `eval`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalFunction {
    Riesz,
    H,
    Kq,
    Gegenbauer,
    Ferrers,
    MellinHNumeric,
    MellinHClosed,
    Corollary,
}

impl EvalFunction {
    pub const ALL: [EvalFunction; 8] = [
        EvalFunction::Riesz,
        EvalFunction::H,
        EvalFunction::Kq,
        EvalFunction::Gegenbauer,
        EvalFunction::Ferrers,
        EvalFunction::MellinHNumeric,
        EvalFunction::MellinHClosed,
        EvalFunction::Corollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EvalFunction::Riesz => "riesz",
            EvalFunction::H => "h",
            EvalFunction::Kq => "kq",
            EvalFunction::Gegenbauer => "gegenbauer",
            EvalFunction::Ferrers => "ferrers",
            EvalFunction::MellinHNumeric => "mellin_h_numeric",
            EvalFunction::MellinHClosed => "mellin_h_closed",
            EvalFunction::Corollary => "corollary",
        }
    }

    /// Parameter names, in the order they are documented.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            EvalFunction::Riesz => &["u", "xi", "lambda"],
            EvalFunction::H => &["u", "xi", "lambda", "q"],
            EvalFunction::Kq => &["r", "t", "psi", "n", "q"],
            EvalFunction::Gegenbauer => &["j", "lambda", "xi"],
            EvalFunction::Ferrers => &["mu", "nu", "xi"],
            EvalFunction::MellinHNumeric | EvalFunction::MellinHClosed => &["lambda", "q", "xi", "s"],
            EvalFunction::Corollary => &["n", "q", "rho", "xi", "form"],
        }
    }
}

impl FromStr for EvalFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EvalFunction::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown function '{s}'")))
    }
}

/// Parses `1.5`, `-2i`, `0.3+0.2i`, `1e-3-4.5i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim();
    let bad = || Error::Domain(format!("cannot parse '{text}' as a complex number"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}

/// Value printed by `eval`; quadrature paths also report their error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOutput {
    pub value: Complex64,
    pub est_error: Option<f64>,
    pub evaluations: Option<usize>,
}

impl fmt::Display for EvalOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "re = {}\nim = {}", fmt_float(self.value.re), fmt_float(self.value.im))?;
        if let (Some(e), Some(n)) = (self.est_error, self.evaluations) {
            write!(f, "\nest_error = {}\nevaluations = {n}", fmt_float(e))?;
        }
        Ok(())
    }
}

fn plain(value: Complex64) -> EvalOutput {
    EvalOutput {
        value,
        est_error: None,
        evaluations: None,
    }
}

/// Evaluates one function at named parameters. Unknown or missing
/// parameters are errors.
pub fn eval_point(function: EvalFunction, params: &BTreeMap<String, String>) -> Result<EvalOutput> {
    let allowed = function.params();
    if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::Domain(format!(
            "{}: unknown parameter --{extra} (expected {})",
            function.name(),
            allowed.iter().map(|p| format!("--{p}")).collect::<Vec<_>>().join(", ")
        )));
    }
    let raw = |name: &str| -> Result<&str> {
        params
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::Domain(format!("{}: missing parameter --{name}", function.name())))
    };
    let real_param = |name: &str| -> Result<f64> {
        raw(name)?
            .parse()
            .map_err(|_| Error::Domain(format!("--{name}: expected a real number")))
    };
    let int_param = |name: &str| -> Result<usize> {
        raw(name)?
            .parse()
            .map_err(|_| Error::Domain(format!("--{name}: expected a nonnegative integer")))
    };
    let complex_param = |name: &str| -> Result<Complex64> { parse_complex(raw(name)?) };
    let dim = |name: &str| -> Result<DimensionSpec> { DimensionSpec::new(int_param(name)? as u32) };

    let cfg = QuadratureConfig::default();
    match function {
        EvalFunction::Riesz => Ok(plain(riesz_kernel(
            real_param("u")?,
            cut(real_param("xi")?)?,
            complex_param("lambda")?,
        )?)),
        EvalFunction::H => {
            let spec = HKernelSpec::new(complex_param("lambda")?, int_param("q")?, cut(real_param("xi")?)?)?;
            Ok(plain(h_kernel(&spec, real_param("u")?)?))
        }
        EvalFunction::Kq => Ok(plain(real(weierstrass_kernel(
            real_param("r")?,
            real_param("t")?,
            real_param("psi")?,
            dim("n")?,
            int_param("q")?,
        )?))),
        EvalFunction::Gegenbauer => Ok(plain(gegenbauer(
            int_param("j")?,
            complex_param("lambda")?,
            cut(real_param("xi")?)?,
        ))),
        EvalFunction::Ferrers => Ok(plain(ferrers_p(
            LegendreOrder::new(complex_param("mu")?, complex_param("nu")?),
            cut(real_param("xi")?)?,
        )?)),
        EvalFunction::MellinHNumeric | EvalFunction::MellinHClosed => {
            let spec = HKernelSpec::new(complex_param("lambda")?, int_param("q")?, cut(real_param("xi")?)?)?;
            let s = complex_param("s")?;
            if function == EvalFunction::MellinHClosed {
                let (lo, hi) = (-(spec.q() as f64) - 1.0, 2.0 * spec.lambda().re);
                return Ok(plain(mellin_h_closed(&spec, &MellinPoint::new(s, lo.min(s.re - 1.0), hi.max(s.re + 1.0))?)?));
            }
            let r = mellin_numeric(&spec, &MellinPoint::for_h(&spec, s)?, &cfg)?;
            Ok(EvalOutput {
                value: r.value,
                est_error: Some(r.est_error),
                evaluations: Some(r.evaluations),
            })
        }
        EvalFunction::Corollary => {
            let form = match params.get("form").map(String::as_str) {
                None | Some("validated") => CorollaryForm::VALIDATED,
                Some("first") => CorollaryForm::First,
                Some("second") => CorollaryForm::Second,
                Some(other) => {
                    return Err(Error::Domain(format!(
                        "--form={other}: expected first, second or validated"
                    )))
                }
            };
            Ok(plain(corollary_closed(
                dim("n")?,
                int_param("q")?,
                complex_param("rho")?,
                cut(real_param("xi")?)?,
                form,
            )?))
        }
    }
}
