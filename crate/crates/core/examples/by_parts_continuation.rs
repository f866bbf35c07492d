// Integrating by parts `q + 1` times widens the strip of `M(h, s)` to
// `-q-1 < Re s < 2 Re λ`. Beyond `Re s = -q` the by-parts integral agrees
// with the closed form's continuation, and near `s = -k` it exposes the
// simple poles with residue `-(-1)^k C^λ_k(ξ)`.

use legendre_mellin::gegenbauer::gegenbauer;
use legendre_mellin::mellin::{mellin_by_parts, mellin_h_closed};
use legendre_mellin::{ComplexScalar, CutPoint, HKernelSpec, MellinPoint, QuadratureConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadratureConfig::default();
    let spec = HKernelSpec::new(ComplexScalar::new(1.5, 0.0), 1, CutPoint::new(0.4)?)?;
    for re in [-1.5, -0.5, 0.5, 1.5, 2.5] {
        let point = MellinPoint::for_by_parts(&spec, ComplexScalar::new(re, 0.5))?;
        let by_parts = mellin_by_parts(&spec, &point, &cfg)?;
        let closed = mellin_h_closed(&spec, &point)?;
        println!(
            "s = {}: by parts {:.12}, closed {:.12}",
            point.s(),
            by_parts.value,
            closed
        );
    }

    for k in 0..=spec.q() {
        let eps = 1e-3;
        let point = MellinPoint::for_by_parts(&spec, ComplexScalar::new(-(k as f64) + eps, 0.0))?;
        let limit = mellin_by_parts(&spec, &point, &cfg)?.value * eps;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let residue = -sign * gegenbauer(k, spec.lambda(), spec.xi());
        println!("s -> {}: (s + k) M(h, s) = {:.6}, residue {:.6}", -(k as f64), limit.re, residue.re);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("by-parts example");
}
