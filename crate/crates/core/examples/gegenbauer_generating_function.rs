// Partial sums `Σ_{j<=J} (-t)^j C^λ_j(ξ)` converge geometrically to the
// Riesz kernel `(1 + 2tξ + t²)^{-λ}`.

use legendre_mellin::gegenbauer::{gegenbauer, gegenbauer_partial_sum};
use legendre_mellin::kernels::riesz_kernel;
use legendre_mellin::{ComplexScalar, CutPoint};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lambda = ComplexScalar::new(1.5, 0.0);
    let xi = CutPoint::new(0.3)?;
    println!("C^1.5_4(0.3) = {}", gegenbauer(4, lambda, xi).re);

    let t = 0.5;
    let kernel = riesz_kernel(t, xi, lambda)?;
    println!("k_λ({t}, ξ) = {}", kernel.re);
    for j in [5, 10, 20, 40, 80] {
        let partial = gegenbauer_partial_sum(j, lambda, t, xi);
        println!("  J = {j:>2}: relative error {:.2e}", (partial - kernel).norm() / kernel.norm());
    }

    // parity C_j(-ξ) = (-1)^j C_j(ξ)
    for j in 0..6 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let gap = (gegenbauer(j, lambda, xi.reflected()) - sign * gegenbauer(j, lambda, xi)).norm();
        assert!(gap < 1e-14);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("generating function example");
}
