//! The operator `(f ⊡ α)(x) = Σ f(n)/ξ(n) · α(φ_n(x))` and its inversion.

use std::fmt;
use std::sync::Arc;

use num::complex::Complex64;
use num::{BigRational, Zero};

use super::flow::Flow;
use crate::algebra::{binomial_inverse, ArithFn};
use crate::error::{invalid, Error, Result};
use crate::numeric::{xi, Rational};
use crate::series::{capital_xi, egf_tail_bound, GrowthCertificate, SeriesApprox, SeriesFn};

const EPS: f64 = f64::EPSILON;

/// Truncated `f ⊡ α` with an error bound.
pub type BoxdotEvaluation = SeriesApprox;

/// A real function on a flow's domain whose values may carry error.
#[derive(Clone)]
pub struct DomainFn {
    name: String,
    eval: Arc<dyn Fn(f64) -> Result<SeriesApprox> + Send + Sync>,
}

impl fmt::Debug for DomainFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DomainFn({})", self.name)
    }
}

impl DomainFn {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(f64) -> Result<SeriesApprox> + Send + Sync + 'static,
    ) -> Self {
        DomainFn {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    /// A function computed exactly up to one rounding.
    pub fn exact(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        DomainFn::new(name, move |x| {
            let v = f(x);
            Ok(SeriesApprox {
                value: v,
                error_bound: EPS * v.abs(),
                terms_used: 1,
            })
        })
    }

    pub fn identity() -> Self {
        DomainFn::new("id", |x| Ok(SeriesApprox::exact(x)))
    }

    /// `x ↦ x^k`.
    pub fn monomial(k: i32) -> Self {
        DomainFn::exact(format!("x^{k}"), move |x| x.powi(k))
    }

    /// `Ξ` on `(0, 1)`, summed until its tail falls below `1e-17`.
    pub fn capital_xi() -> Self {
        DomainFn::new("Xi", |x| {
            let n = terms_for(x.abs(), 1e-17)?;
            Ok(capital_xi(Complex64::new(x, 0.0), n)?.re())
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> Result<SeriesApprox> {
        (self.eval)(x)
    }
}

fn terms_for(t: f64, tol: f64) -> Result<u64> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Domain {
            value: format!("{t}"),
            reason: "needs |x| < 1".into(),
        });
    }
    if t == 0.0 {
        return Ok(1);
    }
    Ok(((tol * (1.0 - t)).ln() / t.ln()).ceil().max(1.0) as u64 + 1)
}

/// Decay of `|α(φ_n(x))|` along the orbit of a fixed `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitDecay {
    /// `|α(φ_n(x))| <= a ρ^n` with `0 <= ρ < 1`.
    Geometric { a: f64, rho: f64 },
    /// `|α(φ_n(x))| <= a n^{-q}`.
    Power { a: f64, q: f64 },
    /// `α(φ_n(x)) = 0` for `n > last`.
    Finite { last: u64 },
}

impl OrbitDecay {
    /// For `φ_n(x) = x^n` and `|α(y)| <= a|y|` on `(0, x]`.
    pub fn power_flow(x: f64, a: f64) -> Self {
        OrbitDecay::Geometric { a, rho: x.abs() }
    }

    fn bound(&self, n: u64) -> f64 {
        match *self {
            OrbitDecay::Geometric { a, rho } => a * rho.powf(n as f64),
            OrbitDecay::Power { a, q } => a * (n as f64).powf(-q),
            OrbitDecay::Finite { last } => {
                if n <= last {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
        }
    }

    /// `Σ_{n > N} C n^r · bound(n)`.
    fn tail(&self, cert: &GrowthCertificate, n: u64) -> Result<f64> {
        match *self {
            OrbitDecay::Geometric { a, rho } => Ok(a * egf_tail_bound(cert, rho, n)?),
            OrbitDecay::Power { a, q } => {
                if q <= cert.r + 1.0 {
                    return Err(Error::Certificate(format!(
                        "orbit decay n^-{q} too slow for weights growing like n^{}",
                        cert.r
                    )));
                }
                Ok(cert.c * a * (n as f64).powf(cert.r - q + 1.0) / (q - cert.r - 1.0))
            }
            OrbitDecay::Finite { last } => {
                if n >= last {
                    Ok(0.0)
                } else {
                    Err(invalid(format!(
                        "cutoff {n} below the orbit support {last}"
                    )))
                }
            }
        }
    }
}

/// `(f ⊡ α)(x)` through `n_max`, with the tail bounded from the growth
/// certificate of `f` and the orbit decay of `α`.
pub fn boxdot(
    f: &SeriesFn,
    alpha: &DomainFn,
    flow: &Flow,
    x: f64,
    decay: OrbitDecay,
    n_max: u64,
) -> Result<BoxdotEvaluation> {
    flow.require_point(x)?;
    if n_max == 0 {
        return Err(invalid("cutoff must be positive"));
    }
    let mut hi = f.support().map_or(n_max, |b| b.min(n_max));
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut err = 0.0;
    for n in 1..=hi {
        let w = f.weight(n)?;
        f.check_weight(n, w)?;
        if w == 0.0 {
            continue;
        }
        let y = flow.apply(n, x);
        if !flow.domain().contains(y) {
            // the orbit underflowed; the decay tail covers the rest
            hi = n - 1;
            break;
        }
        let a = alpha.eval(y)?;
        if a.value.abs() > decay.bound(n) * (1.0 + 1e-9) + a.error_bound {
            return Err(Error::Certificate(format!(
                "|{}(φ_{n}({x}))| = {} exceeds the declared orbit decay",
                alpha.name(),
                a.value.abs()
            )));
        }
        let t = w * a.value;
        // Neumaier step
        let s = sum + t;
        comp += if sum.abs() >= t.abs() {
            (sum - s) + t
        } else {
            (t - s) + sum
        };
        sum = s;
        err += w.abs() * a.error_bound;
        if w.abs() != 1.0 {
            err += 16.0 * EPS * t.abs();
        }
        if n > 1 {
            err += 2.0 * EPS * s.abs();
        }
    }
    let tail = if f.support().is_some_and(|b| b <= hi) {
        0.0
    } else {
        decay.tail(&f.growth(), hi)?
    };
    Ok(SeriesApprox {
        value: sum + comp,
        error_bound: err + tail,
        terms_used: hi,
    })
}

/// `f ⊡ α` as a [`DomainFn`], with the orbit decay chosen per point.
pub fn boxdot_fn(
    f: &SeriesFn,
    alpha: &DomainFn,
    flow: &Flow,
    decay: impl Fn(f64) -> OrbitDecay + Send + Sync + 'static,
    n_max: u64,
) -> DomainFn {
    let (f, alpha, flow) = (f.clone(), alpha.clone(), flow.clone());
    DomainFn::new(format!("{}⊡{}", f.name(), alpha.name()), move |x| {
        boxdot(&f, &alpha, &flow, x, decay(x), n_max)
    })
}

/// `C Σ_{m >= 1} m^r t^{m-1}`: if `|α(y)| <= a|y|` then
/// `|(g ⊡ α)(y)| <= a · linear_majorant(g, t) · |y|` for `|y| <= t`
/// under the power flow.
pub fn linear_majorant(cert: &GrowthCertificate, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(cert.c);
    }
    let unit = GrowthCertificate::new(1.0, cert.r)?;
    Ok(cert.c * (1.0 + egf_tail_bound(&unit, t, 1)? / t))
}

/// One sample of the composition law `f ⊡ (g ⊡ α) = (f∘g) ⊡ α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComposeSample {
    pub x: f64,
    pub nested: SeriesApprox,
    pub composed: SeriesApprox,
    pub agree: bool,
}

/// Composition law under the power flow for `α` with `|α(y)| <= a|y|`.
pub fn boxdot_compose_check(
    f: &SeriesFn,
    g: &SeriesFn,
    alpha: &DomainFn,
    a: f64,
    xs: &[f64],
    n_max: u64,
) -> Result<Vec<ComposeSample>> {
    let flow = Flow::power();
    let inner = boxdot_fn(
        g,
        alpha,
        &flow,
        move |y| OrbitDecay::power_flow(y, a),
        n_max,
    );
    let fg = f.binomial_product(g);
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        flow.require_point(x)?;
        let a_inner = a * linear_majorant(&g.growth(), x)?;
        let nested = boxdot(
            f,
            &inner,
            &flow,
            x,
            OrbitDecay::power_flow(x, a_inner),
            n_max,
        )?;
        let composed = boxdot(&fg, alpha, &flow, x, OrbitDecay::power_flow(x, a), n_max)?;
        out.push(ComposeSample {
            x,
            nested,
            composed,
            agree: nested.overlaps(&composed),
        });
    }
    Ok(out)
}

/// `Σ_{n <= N} f(n)/ξ(n) · α(φ_n(x))` in exact rational arithmetic.
pub fn boxdot_truncated_exact(
    f: &ArithFn,
    alpha: &dyn Fn(&Rational) -> Result<Rational>,
    flow: &Flow,
    x: &Rational,
    n_max: u64,
) -> Result<Rational> {
    let mut acc = Rational::zero();
    for n in 1..=n_max {
        let fv = f.eval(n)?;
        if fv.is_zero() {
            continue;
        }
        let y = flow
            .apply_exact(n, x)
            .ok_or_else(|| invalid(format!("flow {} has no exact action", flow.name())))?;
        acc += fv / BigRational::from_integer(xi(n)?) * alpha(&y)?;
    }
    Ok(acc)
}

/// Parts 1, 2 and 4 of the algebraic laws of `⊡` on exact truncations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearityReport {
    /// `f ⊡ (α + β) = f ⊡ α + f ⊡ β`.
    pub additive_in_alpha: bool,
    /// `(f + g) ⊡ α = f ⊡ α + g ⊡ α`.
    pub additive_in_f: bool,
    /// `δ ⊡ α = α`.
    pub delta_identity: bool,
}

impl LinearityReport {
    pub fn holds(&self) -> bool {
        self.additive_in_alpha && self.additive_in_f && self.delta_identity
    }
}

pub fn boxdot_linearity_exact(
    f: &ArithFn,
    g: &ArithFn,
    alpha: &dyn Fn(&Rational) -> Result<Rational>,
    beta: &dyn Fn(&Rational) -> Result<Rational>,
    flow: &Flow,
    x: &Rational,
    n_max: u64,
) -> Result<LinearityReport> {
    let sum_ab = |y: &Rational| -> Result<Rational> { Ok(alpha(y)? + beta(y)?) };
    let t = |h: &ArithFn, a: &dyn Fn(&Rational) -> Result<Rational>| {
        boxdot_truncated_exact(h, a, flow, x, n_max)
    };
    let fg = crate::algebra::pointwise_sum(f, g);
    Ok(LinearityReport {
        additive_in_alpha: t(f, &sum_ab)? == t(f, alpha)? + t(f, beta)?,
        additive_in_f: t(&fg, alpha)? == t(f, alpha)? + t(g, alpha)?,
        delta_identity: t(&crate::algebra::builtins::delta(), alpha)? == alpha(x)?,
    })
}

/// Growth certificate for `f^{-1∘}/ξ` when `f` vanishes beyond `support`.
///
/// With `q(σ) = Σ_{2 <= n <= support} |f(n)/ξ(n)| n^{-σ} / |f(1)|`, the
/// inverse satisfies `|f^{-1∘}(n)/ξ(n)| <= n^σ / (|f(1)| (1 - q(σ)))`. The
/// smallest `σ` on a grid of step 1/20 with `q(σ) <= 1/2` is used.
pub fn inverse_certificate(f: &ArithFn, support: u64) -> Result<GrowthCertificate> {
    let f1 = f.eval(1)?;
    if f1.is_zero() {
        return Err(Error::NotInvertible);
    }
    let f1 = num::ToPrimitive::to_f64(&f1).unwrap_or(f64::NAN).abs();
    let mut weights = Vec::new();
    for n in 2..=support {
        let v = f.eval(n)? / BigRational::from_integer(xi(n)?);
        let v = num::ToPrimitive::to_f64(&v).unwrap_or(f64::NAN).abs();
        if v != 0.0 {
            weights.push((n as f64, v / f1));
        }
    }
    for step in 0..=400 {
        let sigma = step as f64 / 20.0;
        let q: f64 = weights.iter().map(|&(n, v)| v * n.powf(-sigma)).sum();
        if q <= 0.5 {
            let c = (1.0 + 1e-9) / (f1 * (1.0 - q));
            return GrowthCertificate::new(c, sigma);
        }
    }
    Err(Error::Certificate(
        "no σ <= 20 makes the inverse series converge".into(),
    ))
}

/// Recovers `β(x) = Σ f^{-1∘}(n)/ξ(n) · α(φ_n(x))` from `α = f ⊡ β`.
///
/// `inverse_growth` certifies `f^{-1∘}/ξ`; it is checked on `1..=n_max`.
pub fn invert_boxdot(
    f: &ArithFn,
    inverse_growth: GrowthCertificate,
    alpha: &DomainFn,
    flow: &Flow,
    x: f64,
    decay: OrbitDecay,
    n_max: u64,
) -> Result<BoxdotEvaluation> {
    if f.eval(1)?.is_zero() {
        return Err(Error::NotInvertible);
    }
    let inv = binomial_inverse(f)?;
    let inv = SeriesFn::from_arith(&inv, inverse_growth, n_max)?;
    boxdot(&inv, alpha, flow, x, decay, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtins, q, ratio};
    use rand::{Rng, SeedableRng};

    #[test]
    fn delta_gives_alpha() {
        let alpha = DomainFn::monomial(3);
        for flow in [Flow::power(), Flow::divide(), Flow::multiply()] {
            let x = 0.37;
            let v = boxdot(
                &SeriesFn::delta(),
                &alpha,
                &flow,
                x,
                OrbitDecay::Finite { last: 1 },
                5,
            )
            .unwrap();
            assert_eq!(v.value, x.powi(3));
        }
    }

    #[test]
    fn power_flow_reproduces_xi() {
        let x = 0.5;
        let b = boxdot(
            &SeriesFn::one(),
            &DomainFn::identity(),
            &Flow::power(),
            x,
            OrbitDecay::power_flow(x, 1.0),
            80,
        )
        .unwrap();
        let xi = DomainFn::capital_xi().eval(x).unwrap();
        assert!(b.overlaps(&xi));
        assert!((b.value - xi.value).abs() < 1e-14);
    }

    #[test]
    fn liouville_of_xi_is_identity() {
        let x = 0.3;
        let v = boxdot(
            &SeriesFn::liouville(),
            &DomainFn::capital_xi(),
            &Flow::power(),
            x,
            OrbitDecay::power_flow(x, 1.0 / (1.0 - x)),
            60,
        )
        .unwrap();
        assert!(v.contains(x));
        assert!(v.error_bound < 1e-12);
    }

    #[test]
    fn composition_law() {
        let lam = SeriesFn::liouville();
        let r = boxdot_compose_check(&lam, &lam, &DomainFn::identity(), 1.0, &[0.4], 100).unwrap();
        assert!(r[0].agree);
        assert!((r[0].nested.value - r[0].composed.value).abs() < 1e-8);
        let d = boxdot_compose_check(
            &SeriesFn::delta(),
            &lam,
            &DomainFn::identity(),
            1.0,
            &[0.2, 0.6],
            100,
        )
        .unwrap();
        assert!(d
            .iter()
            .all(|s| s.agree && s.nested.value == s.composed.value));
    }

    #[test]
    fn exact_linearity() {
        let alpha = |y: &Rational| -> Result<Rational> { Ok(y * y) };
        let beta = |y: &Rational| -> Result<Rational> { Ok(y + q(1)) };
        for flow in [Flow::power(), Flow::divide(), Flow::multiply()] {
            let r = boxdot_linearity_exact(
                &builtins::tau(),
                &builtins::liouville(),
                &alpha,
                &beta,
                &flow,
                &ratio(2, 7),
                40,
            )
            .unwrap();
            assert!(r.holds());
        }
    }

    #[test]
    fn inverse_certificates() {
        let f = ArithFn::finite_support("f", vec![q(1), q(1), ratio(1, 2)]);
        let c = inverse_certificate(&f, 3).unwrap();
        let inv = binomial_inverse(&f).unwrap();
        let s = SeriesFn::from_arith(&inv, c, 3000);
        assert!(s.is_ok());
        let zero = ArithFn::finite_support("z", vec![q(0), q(1)]);
        assert_eq!(inverse_certificate(&zero, 2), Err(Error::NotInvertible));
    }

    #[test]
    fn xi_example_inversion() {
        // Ξ = I ⊡ id, so inverting with I recovers x
        for x in [0.2, 0.3, 0.5] {
            let v = invert_boxdot(
                &builtins::one(),
                GrowthCertificate::new(1.0, 0.0).unwrap(),
                &DomainFn::capital_xi(),
                &Flow::power(),
                x,
                OrbitDecay::power_flow(x, 1.0 / (1.0 - x)),
                80,
            )
            .unwrap();
            assert!(v.contains(x), "x = {x}: {v:?}");
        }
    }

    #[test]
    fn random_round_trips() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let mut vals = vec![q(1)];
            for _ in 0..7 {
                vals.push(ratio(rng.gen_range(-3..=3), rng.gen_range(1..=4)));
            }
            let f = ArithFn::finite_support("f", vals);
            let k = rng.gen_range(1..=3);
            let x = rng.gen_range(0.05..0.6);
            let fs =
                SeriesFn::from_arith(&f, GrowthCertificate::new(4.0, 0.0).unwrap(), 8).unwrap();
            let beta = DomainFn::monomial(k);
            let a_const: f64 = (1..=8).map(|n| fs.weight(n).unwrap().abs()).sum();
            let alpha = boxdot_fn(
                &fs,
                &beta,
                &Flow::power(),
                |y| OrbitDecay::power_flow(y, 1.0),
                8,
            );
            let cert = inverse_certificate(&f, 8).unwrap();
            let v = invert_boxdot(
                &f,
                cert,
                &alpha,
                &Flow::power(),
                x,
                OrbitDecay::power_flow(x, a_const),
                400,
            )
            .unwrap();
            assert!(v.contains(x.powi(k)), "{v:?} vs {}", x.powi(k));
        }
    }
}
