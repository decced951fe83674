//! Flows, the ⊡ operator, and three Möbius-type inversions.

use binconv::algebra::{builtins, q, ratio, ArithFn};
use binconv::inversion::{
    arithmetic_invert, arithmetic_transform_fn, boxdot, downward_transform_fn,
    finite_downward_invert, inverse_certificate, invert_boxdot, DecayingFn, DomainFn, DownwardFn,
    Flow, OrbitDecay,
};
use binconv::series::{GrowthCertificate, SeriesFn};
use binconv::{Rational, Result};

fn main() -> Result<()> {
    // along x ↦ x^n: α = I ⊡ id is Ξ, and inverting with λ recovers id
    let flow = Flow::power();
    let x = 0.4;
    let alpha = boxdot(
        &SeriesFn::one(),
        &DomainFn::identity(),
        &flow,
        x,
        OrbitDecay::power_flow(x, 1.0),
        200,
    )?;
    println!(
        "(I ⊡ id)({x}) = {:.15} ± {:.1e}",
        alpha.value, alpha.error_bound
    );
    let f = ArithFn::finite_support("f", vec![q(1), ratio(1, 2), q(-1)]);
    let cert = inverse_certificate(&f, 3)?;
    let fs = SeriesFn::from_arith(&f, GrowthCertificate::new(1.0, 0.0)?, 3)?;
    let a_fn = binconv::inversion::boxdot_fn(
        &fs,
        &DomainFn::monomial(2),
        &flow,
        |y| OrbitDecay::power_flow(y, 1.0),
        3,
    );
    let back = invert_boxdot(
        &f,
        cert,
        &a_fn,
        &flow,
        x,
        OrbitDecay::power_flow(x, 2.5),
        300,
    )?;
    println!(
        "recovered β({x}) = {:.15} ± {:.1e} (x² = {})",
        back.value,
        back.error_bound,
        x * x
    );

    // along x ↦ x/n, exactly
    let beta = DownwardFn::new("β", |x: &Rational| Ok(x * x - q(1)));
    let alpha = downward_transform_fn(&builtins::tau(), &beta);
    let x = ratio(77, 4);
    println!(
        "β({x}) = {}, recovered {}",
        beta.eval(&x)?,
        finite_downward_invert(&builtins::tau(), &alpha, &x)?
    );

    // on integers: f(n) = Σ_m g(mn)/ξ(m) and back with λ
    let g = DecayingFn::power(4.0);
    let fd = arithmetic_transform_fn(&SeriesFn::one(), &g, 2000)?;
    for n in [1, 2, 3] {
        let r = arithmetic_invert(
            &builtins::one(),
            GrowthCertificate::new(1.0, 0.0)?,
            &fd,
            n,
            2000,
        )?;
        println!(
            "g({n}) = {:.12} recovered {:.12} ± {:.1e}",
            (n as f64).powi(-4),
            r.value,
            r.error_bound
        );
    }
    Ok(())
}
