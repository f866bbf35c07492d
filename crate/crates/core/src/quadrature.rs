//! Global adaptive Gauss-Kronrod (10, 21) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_289_932_940,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], ..., XGK[9]`.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Hard cap on the number of panels, independent of `max_depth`.
const MAX_PANELS: usize = 50_000;

/// Once the error estimate is this many ulps of `∫|f|` it is rounding noise:
/// every panel's estimate is already floored at `50 ε ∫|f|` over the panel.
const ROUNDOFF_ULPS: f64 = 200.0;

#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    /// `∫|f|`, the scale below which `value` is indistinguishable from zero.
    pub magnitude: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    magnitude: f64,
    depth: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 21-point Kronrod panel: value, QUADPACK-style error estimate and
/// `∫|f|`.
fn kronrod_panel<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut values = [Complex64::new(0.0, 0.0); 21];
    values[10] = f(center)?;
    for i in 0..10 {
        let dx = half * XGK[i];
        values[i] = f(center - dx)?;
        values[20 - i] = f(center + dx)?;
    }
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Domain(format!(
            "integrand is not finite on [{a:e}, {b:e}]"
        )));
    }

    let mut kronrod = values[10] * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut abs_sum = values[10].norm() * WGK[10];
    for i in 0..10 {
        let pair = values[i] + values[20 - i];
        kronrod += pair * WGK[i];
        abs_sum += (values[i].norm() + values[20 - i].norm()) * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[10] * (values[10] - mean).norm();
    for i in 0..10 {
        asc += WGK[i] * ((values[i] - mean).norm() + (values[20 - i] - mean).norm());
    }

    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, err, res_abs))
}

/// Integrates `f` over `[a, b]` with initial breakpoints `breaks` (interior
/// points), bisecting the panel with the largest error until the total error
/// is below `max(abs_tol, rel_tol |I|)` or has reached the rounding level of
/// `∫|f|` (which is what stops an integral that is exactly zero).
pub fn integrate<F>(
    f: &F,
    a: f64,
    b: f64,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_depth: usize,
) -> Result<Integral>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut edges = vec![a];
    edges.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    edges.push(b);

    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_error = 0.0;
    let mut total_magnitude = 0.0;
    let mut evaluations = 0;
    for w in edges.windows(2) {
        let (value, error, magnitude) = kronrod_panel(f, w[0], w[1])?;
        evaluations += 21;
        total += value;
        total_error += error;
        total_magnitude += magnitude;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
            magnitude,
            depth: 0,
        });
    }
    let target = |value: Complex64, magnitude: f64| {
        abs_tol
            .max(rel_tol * value.norm())
            .max(ROUNDOFF_ULPS * f64::EPSILON * magnitude)
    };
    // panels that hit max_depth stay in the totals but are never split again
    let mut frozen = Vec::new();

    loop {
        if total_error <= target(total, total_magnitude) {
            // resum to shed drift from the running updates
            let panels = heap.iter().chain(frozen.iter());
            let (value, error, magnitude) = panels.fold(
                (Complex64::new(0.0, 0.0), 0.0, 0.0),
                |(v, e, m), p: &Panel| (v + p.value, e + p.error, m + p.magnitude),
            );
            if error <= target(value, magnitude) {
                return Ok(Integral {
                    value,
                    error,
                    magnitude,
                    evaluations,
                });
            }
            total = value;
            total_error = error;
            total_magnitude = magnitude;
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::Convergence {
                what: "adaptive quadrature (max depth)",
                iterations: evaluations,
                estimate: total_error,
            });
        };
        if worst.depth >= max_depth || heap.len() + frozen.len() >= MAX_PANELS {
            frozen.push(worst);
            continue;
        }
        total -= worst.value;
        total_error -= worst.error;
        total_magnitude -= worst.magnitude;
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error, magnitude) = kronrod_panel(f, lo, hi)?;
            evaluations += 21;
            total += value;
            total_error += error;
            total_magnitude += magnitude;
            heap.push(Panel {
                a: lo,
                b: hi,
                value,
                error,
                magnitude,
                depth: worst.depth + 1,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real<G: Fn(f64) -> f64>(g: G) -> impl Fn(f64) -> Result<Complex64> {
        move |x| Ok(Complex64::new(g(x), 0.0))
    }

    #[test]
    fn kronrod_weights_sum_to_two() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_panel_exactness() {
        // Kronrod 21 integrates degree <= 31 exactly, Gauss 10 degree <= 19
        for deg in 0..=31 {
            let f = real(|x: f64| x.powi(deg));
            let (v, _, _) = kronrod_panel(&f, 0.0, 1.0).unwrap();
            let want = 1.0 / (deg as f64 + 1.0);
            assert!((v.re - want).abs() < 2e-15, "degree {deg}: {}", v.re);
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let f = real(|x: f64| x.powf(-0.5));
        let r = integrate(&f, 0.0, 1.0, &[], 1e-8, 1e-300, 60).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-8);
        assert!(r.error <= 1e-8 * 2.0);
    }

    #[test]
    fn adaptive_oscillatory() {
        let f = |x: f64| Ok(Complex64::new(0.0, 20.0 * x).exp());
        let r = integrate(&f, 0.0, 3.0, &[1.0], 1e-12, 1e-300, 60).unwrap();
        let want = (Complex64::new(0.0, 60.0).exp() - 1.0) / Complex64::new(0.0, 20.0);
        assert!((r.value - want).norm() < 1e-11);
    }

    #[test]
    fn zero_integral_stops_at_rounding_level() {
        let f = real(|x: f64| (3.0 * x).sin() * (1.0 + x * x));
        let r = integrate(&f, -2.0, 2.0, &[0.0], 1e-10, 0.0, 60).unwrap();
        assert!(r.value.norm() <= 1e-13 * r.magnitude);
        assert!(r.error <= ROUNDOFF_ULPS * f64::EPSILON * r.magnitude);
    }

    #[test]
    fn reports_failure_when_depth_is_exhausted() {
        let f = real(|x: f64| x.powf(-0.999));
        let r = integrate(&f, 0.0, 1.0, &[], 1e-14, 1e-300, 3);
        assert!(matches!(r, Err(Error::Convergence { .. })));
    }
}
