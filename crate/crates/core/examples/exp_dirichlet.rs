//! Exponential Dirichlet series, the prime zeta function and Euler products.
//! Every value carries a rigorous error bound.

use binconv::series::{
    euler_product_exp_dirichlet, exp_dirichlet_partial, exp_dirichlet_product_check, prime_zeta,
    prime_zeta_direct, riemann_zeta_real, zeta_tilde, zeta_tilde_routes, SeriesApprox, SeriesFn,
    DEFAULT_EXPONENT_CUTOFF,
};
use binconv::Result;

fn show(label: &str, a: SeriesApprox) {
    println!(
        "{label:<34} {:.15} ± {:.1e}  ({} terms)",
        a.value, a.error_bound, a.terms_used
    );
}

fn main() -> Result<()> {
    show("zeta(2)", riemann_zeta_real(2.0)?);
    show("zeta_P(2), Glaisher", prime_zeta(2.0)?);
    show(
        "zeta_P(2), primes <= 10^6",
        prime_zeta_direct(2.0, 1_000_000)?,
    );
    show("zeta~(2) = exp(zeta_P(2))", zeta_tilde(2.0)?);

    let routes = zeta_tilde_routes(2.0, 1_000_000)?;
    show("zeta~(2), partial series", routes.via_series);
    show("zeta~(2), zeta product", routes.via_zeta_product);

    // D~(lambda, s) = exp(-zeta_P(s))
    show(
        "D~(lambda, 3)",
        exp_dirichlet_partial(&SeriesFn::liouville(), 3.0, 100_000)?,
    );
    show(
        "exp(-zeta_P(3))",
        SeriesApprox {
            value: -prime_zeta(3.0)?.value,
            ..prime_zeta(3.0)?
        }
        .exp(),
    );

    // D~(2^Omega, 2) by its Euler product
    show(
        "D~(2^Omega, 2), Euler product",
        euler_product_exp_dirichlet(
            &SeriesFn::r_omega(2.0),
            2.0,
            1_000_000,
            DEFAULT_EXPONENT_CUTOFF,
        )?,
    );

    let c = exp_dirichlet_product_check(
        &SeriesFn::one(),
        &SeriesFn::one(),
        &SeriesFn::r_omega(2.0),
        3.0,
        100_000,
    )?;
    println!(
        "D~(I,3)^2 = D~(2^Omega,3): {} (difference {:.1e})",
        c.holds,
        c.difference()
    );
    Ok(())
}
