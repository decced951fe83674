//! Exponential generating functions and Ξ(z) = Σ z^n/ξ(n).

use binconv::series::{capital_xi, egf_convolution_check, egf_outer_sum, egf_partial, SeriesFn};
use binconv::Result;
use num::complex::Complex64;

fn main() -> Result<()> {
    for x in [0.1, 0.5, 0.9] {
        let xi = capital_xi(Complex64::new(x, 0.0), 2000)?.re();
        println!(
            "Ξ({x}) = {:.12}  in ({:.6}, {:.6}]",
            xi.value,
            x + x * x + x * x * x,
            x / (1.0 - x)
        );
    }

    // Σ λ(n)/ξ(n) Ξ(z^n) = z
    let z = Complex64::new(0.3, 0.2);
    let r = egf_outer_sum(&SeriesFn::liouville(), &SeriesFn::one(), z, 60, 200)?;
    println!(
        "Σ λ/ξ Ξ(z^n) at {z} = {:.15} ± {:.1e}",
        r.value, r.error_bound
    );

    let rep = egf_convolution_check(
        &SeriesFn::one(),
        &SeriesFn::one(),
        Complex64::new(0.4, 0.0),
        60,
        200,
    )?;
    let direct = egf_partial(&SeriesFn::r_omega(2.0), Complex64::new(0.4, 0.0), 200)?;
    println!(
        "P~(2^Ω, 0.4): outer sum {:.12}, direct {:.12}, agree {}",
        rep.rhs.value.re, direct.value.re, rep.agree
    );
    Ok(())
}
