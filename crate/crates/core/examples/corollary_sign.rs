// The two printed forms of the transform at `λ = (n-2)/2`, `s = -ρ` differ
// by an overall sign. Quadrature decides which one is right.

use legendre_mellin::mellin::{corollary_closed, mellin_numeric, CorollaryForm};
use legendre_mellin::{ComplexScalar, CutPoint, DimensionSpec, HKernelSpec, MellinPoint, QuadratureConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadratureConfig::default();
    for (n, q, rho, x) in [(3, 0, ComplexScalar::new(0.5, 0.0), 0.3), (4, 1, ComplexScalar::new(1.5, 0.0), 0.2), (6, 2, ComplexScalar::new(2.5, 1.0), -0.8)] {
        let dim = DimensionSpec::new(n)?;
        let xi = CutPoint::new(x)?;
        let spec = HKernelSpec::new(ComplexScalar::new(dim.lambda(), 0.0), q, xi)?;
        let numeric = mellin_numeric(&spec, &MellinPoint::from_rho(q, rho)?, &cfg)?.value;
        println!("n = {n}, q = {q}, ρ = {rho}, ξ = {x}: quadrature {numeric:.12}");
        for form in [CorollaryForm::First, CorollaryForm::Second] {
            let v = corollary_closed(dim, q, rho, xi, form)?;
            let rel = (v - numeric).norm() / numeric.norm();
            println!("  {:>6} form {v:.12}  rel diff {rel:.1e}", form.name());
        }
    }
    println!("validated form: {}", CorollaryForm::VALIDATED.name());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("corollary example");
}
