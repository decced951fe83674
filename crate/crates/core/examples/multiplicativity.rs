//! Classification, the multiplicative multinomial theorem, and the
//! characterizations of complete multiplicativity.

use binconv::algebra::{builtins, q, ratio};
use binconv::multiplicativity::{
    check_distributivity, check_power_characterization, classify,
    closed_form_inverse_prime_supported, is_liouville_self_inverse, lambda_self_inverse_family,
    multinomial_identity_lhs, InverseMode,
};
use binconv::Result;

fn main() -> Result<()> {
    let bound = 200;
    for f in [
        builtins::liouville(),
        builtins::xi(),
        builtins::tau(),
        builtins::r_omega(ratio(3, 2)),
    ] {
        let r = classify(&f, bound)?;
        println!(
            "{:<10} multiplicative={} completely={} first violation={:?}",
            f.name(),
            r.is_multiplicative,
            r.is_completely_multiplicative,
            r.first_violation
        );
    }

    // Σ over d1 d2 d3 = 360 of Π multinomials · x^Ω(d1) y^Ω(d2) z^Ω(d3) = (x+y+z)^Ω(360)
    let xs = [q(2), ratio(-1, 3), q(5)];
    println!(
        "multinomial sum at 360: {}",
        multinomial_identity_lhs(360, &xs)?
    );

    // f^{k∘} = k^Ω f
    for k in [2, 3, -2] {
        let out = check_power_characterization(&builtins::liouville(), k, bound)?;
        println!("lambda, k = {k:>2}: holds = {}", out.holds);
    }
    let out = check_power_characterization(&builtins::xi(), 2, bound)?;
    println!(
        "xi, k = 2: holds = {}, witness = {:?}",
        out.holds, out.witness
    );

    // λ f is the inverse, yet f is not completely multiplicative
    let fam = lambda_self_inverse_family(|e| q(e as i64), 8)?;
    println!(
        "family: f^-1∘ = λf is {}, completely multiplicative is {}",
        is_liouville_self_inverse(&fam, bound)?.holds,
        classify(&fam, bound)?.is_completely_multiplicative
    );

    let d = check_distributivity(
        &builtins::xi(),
        &[(builtins::moebius(), builtins::xi())],
        bound,
    )?;
    println!("xi distributes over (mu, xi): {} {:?}", d.holds, d.witness);

    let inv = closed_form_inverse_prime_supported(&builtins::moebius(), InverseMode::Binomial, 30)?;
    println!(
        "closed-form mu^-1∘ on 1..12: {:?}",
        inv.values(12)?
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
    );
    Ok(())
}
