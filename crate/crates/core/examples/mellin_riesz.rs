// `M(k_λ, s)` three ways: adaptive quadrature, the Ferrers closed form, and
// at `ξ = 0` the beta function `½ B(s/2, λ - s/2)`.

use legendre_mellin::mellin::{mellin_numeric, mellin_riesz_closed, RieszIntegrand};
use legendre_mellin::special::gamma;
use legendre_mellin::{ComplexScalar, CutPoint, MellinPoint, QuadratureConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadratureConfig::default();
    let lambda = ComplexScalar::new(1.5, 0.0);
    for (x, s) in [(0.0, ComplexScalar::new(1.0, 0.0)), (-0.9, ComplexScalar::new(0.5, 2.0)), (0.5, ComplexScalar::new(2.5, -2.0))] {
        let xi = CutPoint::new(x)?;
        let point = MellinPoint::for_riesz(lambda, s)?;
        let numeric = mellin_numeric(&RieszIntegrand { lambda, xi }, &point, &cfg)?;
        let closed = mellin_riesz_closed(lambda, &point, xi)?;
        let rel = (numeric.value - closed).norm() / closed.norm();
        println!(
            "ξ = {x:>4}, s = {s}: quadrature {} ({} evaluations), closed {closed}, rel diff {rel:.2e}",
            numeric.value, numeric.evaluations
        );
        if x == 0.0 {
            let half = ComplexScalar::new(0.5, 0.0);
            let beta = gamma(s * half)? * gamma(lambda - s * half)? / gamma(lambda)? * half;
            println!("         beta oracle {beta}");
        }
    }

    // outside 0 < Re s < 2 Re λ the integral diverges and is refused
    assert!(MellinPoint::for_riesz(lambda, ComplexScalar::new(3.2, 0.0)).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("Riesz transform example");
}
