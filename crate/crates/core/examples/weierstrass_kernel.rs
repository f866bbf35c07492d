// The genus-q Weierstrass kernel `K_q` in geometric variables, and its
// reduction `K_q = t^{2-n} h((n-2)/2, q, -cos ψ; r/t)`. Note the sign flip
// of `ξ`: `K_q` carries `-2tr cos ψ` while `h` carries `+2uξ`.

use legendre_mellin::kernels::{h_kernel, weierstrass_kernel};
use legendre_mellin::{DimensionSpec, HKernelSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = DimensionSpec::new(3)?;
    let k = weierstrass_kernel(1.0, 2.0, std::f64::consts::FRAC_PI_2, n, 0)?;
    println!("K_0(r=1, t=2, ψ=π/2) = {k} (expected 1/2 - 5^(-1/2) = {})", 0.5 - 5f64.powf(-0.5));

    println!("{:>5} {:>3} {:>8} {:>8} {:>24} {:>10}", "n", "q", "r/t", "ψ", "K_q", "rel gap");
    for (n, q, r, t, psi) in [(3, 0, 0.3, 2.0, 0.4), (4, 2, 7.0, 1.5, -2.9), (6, 3, 1e-3, 1.0, 1.0), (5, 1, 0.9, 1.0, 0.05)] {
        let dim = DimensionSpec::new(n)?;
        let kq = weierstrass_kernel(r, t, psi, dim, q)?;
        let spec = HKernelSpec::for_weierstrass(dim, q, psi)?;
        let via_h = t.powf(2.0 - n as f64) * h_kernel(&spec, r / t)?.re;
        let gap = (kq - via_h).abs() / kq.abs();
        println!("{n:>5} {q:>3} {:>8.3} {psi:>8.3} {kq:>24.16e} {gap:>10.2e}", r / t);
        assert!(gap < 1e-12);
    }

    // coincident points are a genuine singularity
    assert!(weierstrass_kernel(1.0, 1.0, 0.0, n, 1).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("Weierstrass kernel example");
}
