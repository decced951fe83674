//! The binomial von Mangoldt function in exact log-linear arithmetic.

use binconv::series::{
    chebyshev_psi, chebyshev_psi_direct, chebyshev_theta, chebyshev_theta_direct,
    log_derivative_check, mangoldt, mangoldt_tilde, verify_log_identities,
};
use binconv::Result;

fn main() -> Result<()> {
    for n in [1, 2, 4, 12, 30] {
        println!(
            "n = {n:>2}: Λ = {:<8} Λ~ = {}",
            mangoldt(n)?.to_string(),
            mangoldt_tilde(n)?
        );
    }
    let r = verify_log_identities(360)?;
    println!("(Λ~ ∘ I)(360) = {} (log 360 = {})", r.convolution, r.log_n);
    println!(
        "zero sums at 360: {:?} {:?}",
        r.zero_sum_quotient.map(|z| z.to_string()),
        r.zero_sum_divisor.map(|z| z.to_string())
    );

    let all = (1..=1000)
        .map(verify_log_identities)
        .collect::<Result<Vec<_>>>()?;
    println!(
        "identities hold for n <= 1000: {}",
        all.iter().all(|r| r.holds())
    );

    let x = 100;
    println!(
        "theta({x}) = {:.6}, same by sieve: {}",
        chebyshev_theta(x)?.to_f64(),
        chebyshev_theta(x)? == chebyshev_theta_direct(x)?
    );
    println!(
        "psi({x})   = {:.6}, same by sieve: {}",
        chebyshev_psi(x)?.to_f64(),
        chebyshev_psi(x)? == chebyshev_psi_direct(x)?
    );

    let d = log_derivative_check(2.0, 1e-5, 1_000_000)?;
    println!(
        "D~(Λ~, 2) = {:.8}, -zeta~'/zeta~ = {:.8}",
        d.series.value, d.finite_difference.value
    );
    Ok(())
}
