// Empirical check of `|h| <= C min(u^q, u^{q+1})`: the constant and the
// log-log slopes at both ends of a wide grid. At `ξ = 0` every other
// Gegenbauer coefficient vanishes and one slope moves by one.

use legendre_mellin::kernels::{h_bound_certificate, log_grid};
use legendre_mellin::{ComplexScalar, CutPoint, HKernelSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = log_grid(1e-6, 1e6, 10);
    println!("{:>4} {:>2} {:>5} {:>12} {:>9} {:>9}", "λ", "q", "ξ", "C", "slope 0", "slope ∞");
    for (lambda, q, x) in [(0.5, 2, 0.6), (1.0, 0, 0.0), (1.0, 1, 0.0), (2.0, 3, -0.8)] {
        let spec = HKernelSpec::new(ComplexScalar::new(lambda, 0.0), q, CutPoint::new(x)?)?;
        let cert = h_bound_certificate(&spec, &grid)?;
        println!(
            "{lambda:>4} {q:>2} {x:>5} {:>12.5e} {:>9.4} {:>9.4}",
            cert.c_estimate, cert.slope_at_zero, cert.slope_at_infinity
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("h bound example");
}
