// Complex gamma machinery and the two gamma identities behind the closed
// forms: Legendre duplication and `√π (n-3)! = 2^{n-3} Γ((n-1)/2) Γ((n-2)/2)`.

use legendre_mellin::special::{
    duplication_residual, gamma, half_integer_gamma_residual, log_gamma, reciprocal_gamma,
};
use legendre_mellin::{ComplexScalar, DimensionSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let z = ComplexScalar::new(3.7, 2.1);
    println!("ln Γ({z}) = {}", log_gamma(z)?);
    println!("Γ(-1/2) = {} (expected -2√π = {})", gamma(ComplexScalar::new(-0.5, 0.0))?, -2.0 * std::f64::consts::PI.sqrt());

    // 1/Γ is entire: exact zeros, no error at the poles of Γ
    for k in 0..3 {
        println!("1/Γ({}) = {}", -k, reciprocal_gamma(ComplexScalar::new(-k as f64, 0.0)));
    }
    assert!(gamma(ComplexScalar::new(-3.0, 0.0)).is_err());

    for z in [ComplexScalar::new(0.75, 0.0), ComplexScalar::new(2.5, 1.0)] {
        let r = duplication_residual(z)?;
        println!("duplication residual at {z}: {r:.2e}");
        assert!(r < 1e-12);
    }
    let worst = (3..=25)
        .map(|n| half_integer_gamma_residual(DimensionSpec::new(n).unwrap()))
        .fold(0.0, f64::max);
    println!("induction identity, worst residual for n = 3..=25: {worst:.2e}");
    assert!(worst < 1e-13);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("gamma identities example");
}
