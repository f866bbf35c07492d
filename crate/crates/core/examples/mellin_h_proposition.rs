// The Mellin transform of the genus-q kernel `h` on its strip
// `-q-1 < Re s < -q`, by quadrature and in closed form.

use legendre_mellin::mellin::{mellin_h_closed, mellin_h_numeric};
use legendre_mellin::{ComplexScalar, CutPoint, HKernelSpec, MellinPoint, QuadratureConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = QuadratureConfig::default();
    println!("{:>5} {:>2} {:>5} {:>10} {:>46} {:>9}", "λ", "q", "ξ", "s", "M(h, s)", "rel diff");
    for (lambda, q, x) in [(0.5, 0, -0.9), (1.0, 1, 0.0), (2.3, 3, 0.5), (0.75, 2, 0.9)] {
        let spec = HKernelSpec::new(ComplexScalar::new(lambda, 0.0), q, CutPoint::new(x)?)?;
        for im in [0.0, 3.0] {
            let s = ComplexScalar::new(-(q as f64) - 0.5, im);
            let point = MellinPoint::for_h(&spec, s)?;
            let numeric = mellin_h_numeric(&spec, &point, &cfg)?;
            let closed = mellin_h_closed(&spec, &point)?;
            let rel = (numeric.value - closed).norm() / closed.norm();
            println!("{lambda:>5} {q:>2} {x:>5} {:>10} {:>46} {rel:>9.2e}", format!("{s}"), format!("{closed:.15}"));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("Mellin h example");
}
