//! Dirichlet and binomial convolutions, the ξ-isomorphism, and inverses.
//!
//! ```text
//! cargo run --example convolutions
//! ```

use binconv::algebra::{
    binomial_convolve, binomial_inverse, binomial_inverse_via_isomorphism, builtins,
    dirichlet_convolve, dirichlet_inverse, from_dirichlet_side, ratio, to_dirichlet_side, ArithFn,
};
use binconv::Result;

fn show(label: &str, f: &ArithFn, n: u64) -> Result<()> {
    let vals: Vec<String> = f.values(n)?.iter().map(|v| v.to_string()).collect();
    println!("{label:<24} {}", vals.join(" "));
    Ok(())
}

fn main() -> Result<()> {
    let one = builtins::one();
    let n = 16;

    show("I * I  (tau)", &dirichlet_convolve(&one, &one), n)?;
    show("I ∘ I  (2^Omega)", &binomial_convolve(&one, &one), n)?;
    show("I^-1*  (mu)", &dirichlet_inverse(&one)?, n)?;
    show("I^-1∘  (lambda)", &binomial_inverse(&one)?, n)?;
    show("xi^-1∘ (mu)", &binomial_inverse(&builtins::xi())?, n)?;

    // f ∘ g = ξ (f/ξ * g/ξ)
    let f = ArithFn::from_table(
        "f",
        (1..=n as i64)
            .map(|k| ratio(k % 5 - 2, k % 3 + 1))
            .collect(),
    )?;
    let g = builtins::tau();
    let direct = binomial_convolve(&f, &g);
    let via = from_dirichlet_side(&dirichlet_convolve(
        &to_dirichlet_side(&f),
        &to_dirichlet_side(&g),
    ));
    println!(
        "isomorphism holds on 1..={n}: {}",
        direct.values(n)? == via.values(n)?
    );

    // two independent routes to the binomial inverse
    let (a, b) = (binomial_inverse(&f)?, binomial_inverse_via_isomorphism(&f)?);
    show("f^-1∘", &a, 8)?;
    println!("recursive == isomorphism: {}", a.values(n)? == b.values(n)?);
    Ok(())
}
