//! The numerical building blocks: Bessel K, adaptive quadrature and the
//! Gamma-fading distribution functions.

use noma_perf::fading::{gamma_cdf, ordered_cdf, FadingParams, OrderedIndex};
use noma_perf::numerics::{bessel_k, integrate_semi_infinite, QuadratureOptions};

fn main() -> noma_perf::Result<()> {
    for x in [0.01, 0.5, 1.0, 2.0, 10.0] {
        println!("K0({x}) = {:.15e}  K1 = {:.15e}  K3 = {:.15e}", bessel_k(0, x)?, bessel_k(1, x)?, bessel_k(3, x)?);
    }

    // ∫_0^∞ x^2 e^{-x} dx = 2
    let q = integrate_semi_infinite(|x| x * x * (-x).exp(), 0.0, &QuadratureOptions::default())?;
    println!("quadrature {:.15} (error {:.1e}, {} intervals)", q.value, q.error, q.intervals);

    let p = FadingParams::new(2, 1.0)?;
    for rank in 1..=5 {
        let idx = OrderedIndex::new(rank, 5)?;
        println!("F_({rank}:5)(0.5) = {:.6e}   F(0.5) = {:.6e}", ordered_cdf(&p, idx, 0.5), gamma_cdf(&p, 0.5));
    }
    Ok(())
}
