//! Semimultiplicative functions: decomposition and convolution parameters.

use binconv::algebra::{binomial_convolve, builtins, ratio};
use binconv::semimult::{
    binomial_convolve_semimult_params, decompose, is_semimultiplicative, selberg_expand,
    SemimultDecomposition,
};
use binconv::Result;

fn main() -> Result<()> {
    let f = SemimultDecomposition::new(4, ratio(3, 2), builtins::liouville())?;
    let g = SemimultDecomposition::new(6, ratio(-1, 5), builtins::tau())?;
    let (ff, gf) = (f.to_fn(), g.to_fn());
    println!(
        "F on 1..12: {:?}",
        ff.values(12)?
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
    );
    println!(
        "F semimultiplicative up to 200: {}",
        is_semimultiplicative(&ff, 200)?.holds
    );

    let conv = binomial_convolve(&ff, &gf);
    let direct = decompose(&conv, 300)?;
    let predicted = binomial_convolve_semimult_params(&f, &g)?;
    println!("a: direct {} predicted {}", direct.a, predicted.a);
    println!("c: direct {} predicted {}", direct.c, predicted.c);
    let m = 300 / direct.a;
    println!(
        "F' agree on 1..={m}: {}",
        direct.f_prime.values(m)? == predicted.f_prime.values(m)?
    );

    let s = selberg_expand(&direct)?;
    println!(
        "exceptional primes {:?}; F∘G(96) = {} = {}",
        s.exceptional_primes(),
        s.eval(96)?,
        conv.eval(96)?
    );
    Ok(())
}
