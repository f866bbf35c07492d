// Ferrers functions `P^μ_ν(ξ)` on `-1 < ξ < 1` with complex order and
// degree, with the three checks that pin the convention: low-order closed
// forms, the recurrence in `ν` and `μ`, and the degree symmetry `ν ↔ -ν-1`.

use legendre_mellin::legendre::{ferrers_p, remark_recurrence_residual, LegendreOrder};
use legendre_mellin::{ComplexScalar, CutPoint};

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let theta: f64 = 0.7;
    let xi = CutPoint::new(theta.cos())?;
    let p11 = ferrers_p(LegendreOrder::new(c(1.0, 0.0), c(1.0, 0.0)), xi)?;
    println!("P^1_1(cos 0.7) = {} (expected -sin 0.7 = {})", p11.re, -theta.sin());

    let order = LegendreOrder::new(c(0.3, 0.2), c(-2.5, 1.0));
    let xi = CutPoint::new(-0.9)?;
    let p = ferrers_p(order, xi)?;
    let mirrored = ferrers_p(LegendreOrder::new(order.mu, -order.nu - 1.0), xi)?;
    println!("P^μ_ν(-0.9) = {p}");
    println!("degree symmetry gap: {:.2e}", (p - mirrored).norm() / p.norm());

    for theta in [0.3, 1.1, 2.9] {
        let r = remark_recurrence_residual(order, theta)?;
        println!("recurrence residual at θ = {theta}: {r:.2e}");
        assert!(r < 1e-9);
    }

    // positive integer order: Γ(1-μ) has a pole but P stays finite
    let p2 = ferrers_p(LegendreOrder::new(c(2.0, 0.0), c(3.3, 0.4)), CutPoint::new(0.6)?)?;
    println!("P^2_(3.3+0.4i)(0.6) = {p2}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("Ferrers example");
}
