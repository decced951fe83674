//! Exhaustive classification up to a bound, closed-form inverses of
//! prime-supported functions, and the characterizations of complete
//! multiplicativity through binomial powers and distributivity.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num::{BigInt, One, Zero};

use crate::algebra::{
    binomial_convolve, binomial_inverse, binomial_power, pointwise_product, q, ArithFn, Claim,
    Flags,
};
use crate::error::{invalid, Error, Result};
use num::integer::gcd;

use crate::numeric::{binomial, factorial, factorize, Rational};

/// Outcome of an exhaustive check on `1..=bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub bound: u64,
    pub is_multiplicative: bool,
    pub is_completely_multiplicative: bool,
    /// Lexicographically smallest `(m, n)` breaking the strongest property
    /// that fails: multiplicativity if it fails, else complete multiplicativity.
    pub first_violation: Option<(u64, u64)>,
}

/// Checks `f(1) = 1` and `f(mn) = f(m) f(n)` for all `mn <= bound`
/// (coprime pairs only for plain multiplicativity).
pub fn classify(f: &ArithFn, bound: u64) -> Result<ClassificationReport> {
    if bound < 2 {
        return Err(invalid("classify: bound must be at least 2"));
    }
    let v = f.values(bound)?;
    let at = |n: u64| &v[(n - 1) as usize];
    if !at(1).is_one() {
        return Ok(ClassificationReport {
            bound,
            is_multiplicative: false,
            is_completely_multiplicative: false,
            first_violation: Some((1, 1)),
        });
    }
    let mut mult_witness = None;
    let mut complete_witness = None;
    let mut m = 2;
    while m * m <= bound && mult_witness.is_none() {
        for n in m..=bound / m {
            if at(m * n) != &(at(m) * at(n)) {
                if complete_witness.is_none() {
                    complete_witness = Some((m, n));
                }
                if gcd(m, n) == 1 {
                    mult_witness = Some((m, n));
                    break;
                }
            }
        }
        m += 1;
    }
    Ok(ClassificationReport {
        bound,
        is_multiplicative: mult_witness.is_none(),
        is_completely_multiplicative: complete_witness.is_none(),
        first_violation: mult_witness.or(complete_witness),
    })
}

/// Confirms every `Yes` claim of `f` up to `bound`.
pub fn verify_flags(f: &ArithFn, bound: u64) -> Result<()> {
    let flags = f.flags();
    let report = classify(f, bound)?;
    let fail = |what: &str| {
        Err(Error::Inconsistency(format!(
            "{} claims {what} but fails at {:?}",
            f.name(),
            report.first_violation
        )))
    };
    if flags.multiplicative.is_yes() && !report.is_multiplicative {
        return fail("multiplicativity");
    }
    if flags.completely_multiplicative.is_yes() && !report.is_completely_multiplicative {
        return fail("complete multiplicativity");
    }
    if flags.prime_independent.is_yes() {
        for a in 1..64u32 {
            if 2u64.checked_pow(a).is_none_or(|x| x > bound) {
                break;
            }
            let reference = f.eval(2u64.pow(a))?;
            for p in crate::numeric::primes_up_to(bound)? {
                match p.checked_pow(a) {
                    Some(pa) if pa <= bound => {
                        if f.eval(pa)? != reference {
                            return Err(Error::Inconsistency(format!(
                                "{} claims prime independence but f({p}^{a}) != f(2^{a})",
                                f.name()
                            )));
                        }
                    }
                    _ => break,
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseMode {
    Binomial,
    Dirichlet,
}

/// Closed-form inverse of a multiplicative `f` vanishing on `p^a`, `a >= 2`:
/// `λ(n) ξ(n) Π_p f(p)^{ν_p(n)}` (binomial) or `λ(n) Π_p f(p)^{ν_p(n)}`
/// (Dirichlet). The hypotheses are verified on `1..=bound`.
pub fn closed_form_inverse_prime_supported(
    f: &ArithFn,
    mode: InverseMode,
    bound: u64,
) -> Result<ArithFn> {
    let report = classify(f, bound)?;
    if !report.is_multiplicative {
        let (m, n) = report.first_violation.unwrap_or((1, 1));
        return Err(Error::Precondition {
            witness: m * n,
            reason: format!("not multiplicative at ({m}, {n})"),
        });
    }
    for n in 2..=bound {
        let fac = factorize(n)?;
        if let [(_, a)] = fac.factors() {
            if *a >= 2 && !f.eval(n)?.is_zero() {
                return Err(Error::Precondition {
                    witness: n,
                    reason: "nonzero at a prime power with exponent >= 2".into(),
                });
            }
        }
    }
    let g = f.clone();
    let (name, with_xi) = match mode {
        InverseMode::Binomial => (format!("λξ·{}(p)^ν", f.name()), true),
        InverseMode::Dirichlet => (format!("λ·{}(p)^ν", f.name()), false),
    };
    let mut flags = Flags::multiplicative();
    if !with_xi {
        flags.completely_multiplicative = Claim::Yes;
    }
    Ok(ArithFn::multiplicative(
        name,
        move |p, a| {
            let fp = g.eval_prime_power(p, 1)?;
            let mut v = num::pow::Pow::pow(&(-fp), a as u64);
            if with_xi {
                v *= factorial(a);
            }
            Ok(v)
        },
        flags,
    ))
}

/// Left side of the multiplicative multinomial theorem:
/// `Σ_{d_1⋯d_k = n} Π_p (ν_p(n); ν_p(d_1), …) x_1^{Ω(d_1)}⋯x_k^{Ω(d_k)}`,
/// computed by splitting off one factor at a time with memoization on
/// `(remaining n, position)`.
pub fn multinomial_identity_lhs(n: u64, xs: &[Rational]) -> Result<Rational> {
    if xs.is_empty() {
        return Err(invalid("multinomial_identity_lhs: xs must be nonempty"));
    }
    crate::numeric::require_positive(n, "multinomial_identity_lhs")?;
    let mut memo = HashMap::new();
    split_sum(n, 0, xs, &mut memo)
}

fn split_sum(
    m: u64,
    j: usize,
    xs: &[Rational],
    memo: &mut HashMap<(u64, usize), Rational>,
) -> Result<Rational> {
    let fac = factorize(m)?;
    if j + 1 == xs.len() {
        return Ok(num::pow::Pow::pow(&xs[j], fac.big_omega() as u64));
    }
    if let Some(v) = memo.get(&(m, j)) {
        return Ok(v.clone());
    }
    let mut parts = Vec::new();
    fac.for_each_divisor(|d, exps| {
        let w: u64 = fac
            .factors()
            .iter()
            .zip(exps)
            .map(|(&(_, a), &e)| crate::numeric::binomial_u64(a, e))
            .product();
        let omega_d: u32 = exps.iter().sum();
        parts.push((d, w, omega_d));
    });
    let mut acc = Rational::zero();
    for (d, w, omega_d) in parts {
        let x = num::pow::Pow::pow(&xs[j], omega_d as u64);
        if x.is_zero() {
            continue;
        }
        acc += x * BigInt::from(w) * split_sum(m / d, j + 1, xs, memo)?;
    }
    memo.insert((m, j), acc.clone());
    Ok(acc)
}

/// Outcome of a pointwise identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub holds: bool,
    /// Smallest `n` where the identity fails.
    pub witness: Option<u64>,
}

/// Tests `f^{k∘}(n) = k^Ω(n) f(n)` for `n <= bound`, `|k| >= 2`.
///
/// A multiplicative `f` passing must also classify as completely
/// multiplicative; if not, the library itself is inconsistent and an
/// [`Error::Inconsistency`] is returned.
pub fn check_power_characterization(f: &ArithFn, k: i64, bound: u64) -> Result<CheckOutcome> {
    if k.abs() < 2 {
        return Err(invalid("power characterization needs |k| >= 2"));
    }
    let report = classify(f, bound)?;
    if !report.is_multiplicative {
        return Err(Error::Precondition {
            witness: report.first_violation.map_or(1, |(m, n)| m * n),
            reason: format!("{} is not multiplicative", f.name()),
        });
    }
    let power = binomial_power(f, k)?;
    let kq = q(k);
    let mut witness = None;
    for n in 1..=bound {
        let omega = factorize(n)?.big_omega();
        let rhs = num::pow::Pow::pow(&kq, omega as u64) * f.eval(n)?;
        if power.eval(n)? != rhs {
            witness = Some(n);
            break;
        }
    }
    let holds = witness.is_none();
    if holds && !report.is_completely_multiplicative {
        return Err(Error::Inconsistency(format!(
            "{} satisfies the power law for k = {k} up to {bound} but is not completely \
             multiplicative (violation at {:?})",
            f.name(),
            report.first_violation
        )));
    }
    Ok(CheckOutcome { holds, witness })
}

/// Outcome of [`check_distributivity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributivityOutcome {
    pub holds: bool,
    /// `(index of the failing pair, n)`.
    pub witness: Option<(usize, u64)>,
}

/// Tests `f·(g∘h) = (f·g)∘(f·h)` pointwise on `1..=bound` for every pair.
pub fn check_distributivity(
    f: &ArithFn,
    pairs: &[(ArithFn, ArithFn)],
    bound: u64,
) -> Result<DistributivityOutcome> {
    for (i, (g, h)) in pairs.iter().enumerate() {
        let lhs = pointwise_product(f, &binomial_convolve(g, h));
        let rhs = binomial_convolve(&pointwise_product(f, g), &pointwise_product(f, h));
        for n in 1..=bound {
            if lhs.eval(n)? != rhs.eval(n)? {
                return Ok(DistributivityOutcome {
                    holds: false,
                    witness: Some((i, n)),
                });
            }
        }
    }
    Ok(DistributivityOutcome {
        holds: true,
        witness: None,
    })
}

/// The multiplicative, prime-independent functions with `f^{-1∘} = λf`:
/// odd exponents take arbitrary values, even ones follow
/// `f(p^{2n}) = -Σ_{k=1}^{n-1} C(2n,k)(-1)^k f(p^k) f(p^{2n-k}) - ½ C(2n,n)(-1)^n f(p^n)²`.
///
/// Exponents up to `depth` are tabulated eagerly; larger ones are filled on
/// demand by the same recursion.
pub fn lambda_self_inverse_family(
    odd_values: impl Fn(u32) -> Rational + Send + Sync + 'static,
    depth: u32,
) -> Result<ArithFn> {
    if depth == 0 {
        return Err(invalid("depth must be at least 1"));
    }
    let table = Arc::new(SelfInverseTable {
        odd: Box::new(odd_values),
        values: RwLock::new(vec![Rational::one()]),
    });
    table.get(depth);
    let t = table.clone();
    Ok(ArithFn::prime_independent(
        "λ-self-inverse",
        move |a| Ok(t.get(a)),
        Flags::multiplicative(),
    ))
}

type OddRule = Box<dyn Fn(u32) -> Rational + Send + Sync>;

struct SelfInverseTable {
    odd: OddRule,
    values: RwLock<Vec<Rational>>,
}

impl SelfInverseTable {
    fn get(&self, a: u32) -> Rational {
        if let Some(v) = self.values.read().expect("poisoned").get(a as usize) {
            return v.clone();
        }
        let mut values = self.values.write().expect("poisoned");
        while values.len() <= a as usize {
            let e = values.len() as u32;
            let v = if e % 2 == 1 {
                (self.odd)(e)
            } else {
                let n = e / 2;
                let sign = |k: u32| if k.is_multiple_of(2) { q(1) } else { q(-1) };
                let mut acc = Rational::zero();
                for k in 1..n {
                    acc -= Rational::from_integer(binomial(e, k))
                        * sign(k)
                        * &values[k as usize]
                        * &values[(e - k) as usize];
                }
                let fnn = &values[n as usize];
                acc -= Rational::new(binomial(e, n), BigInt::from(2)) * sign(n) * fnn * fnn;
                acc
            };
            values.push(v);
        }
        values[a as usize].clone()
    }
}

/// `λ·f`, the candidate inverse in the self-inverse family.
pub fn liouville_twist(f: &ArithFn) -> ArithFn {
    pointwise_product(&crate::algebra::builtins::liouville(), f)
}

/// Convenience: `f^{-1∘} = λf` on `1..=bound`.
pub fn is_liouville_self_inverse(f: &ArithFn, bound: u64) -> Result<CheckOutcome> {
    let inv = binomial_inverse(f)?;
    let twist = liouville_twist(f);
    for n in 1..=bound {
        if inv.eval(n)? != twist.eval(n)? {
            return Ok(CheckOutcome {
                holds: false,
                witness: Some(n),
            });
        }
    }
    Ok(CheckOutcome {
        holds: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtins::*;
    use crate::algebra::{binomial_inverse, dirichlet_inverse, ratio};
    use crate::numeric::{big_omega, xi as xi_value};

    #[test]
    fn classify_examples() {
        let r = classify(&xi(), 100).unwrap();
        assert!(r.is_multiplicative);
        assert!(!r.is_completely_multiplicative);
        assert_eq!(r.first_violation, Some((2, 2)));
        let r = classify(&liouville(), 500).unwrap();
        assert!(r.is_completely_multiplicative);
        assert!(classify(&delta(), 100).unwrap().is_multiplicative);
        let bad = ArithFn::from_fn("n+1", |n| Ok(q(n as i64 + 1)));
        let r = classify(&bad, 50).unwrap();
        assert_eq!(r.first_violation, Some((1, 1)));
        let r = classify(
            &ArithFn::from_fn("f", |n| Ok(q(if n == 6 { 5 } else { 1 }))),
            50,
        )
        .unwrap();
        assert!(!r.is_multiplicative);
        assert_eq!(r.first_violation, Some((2, 3)));
        assert!(classify(&one(), 1).is_err());
    }

    #[test]
    fn witness_reproduces() {
        let r = classify(&tau(), 200).unwrap();
        let (m, n) = r.first_violation.unwrap();
        assert_ne!(
            tau().eval(m * n).unwrap(),
            tau().eval(m).unwrap() * tau().eval(n).unwrap()
        );
    }

    #[test]
    fn builtin_claims_hold() {
        for f in [
            delta(),
            one(),
            moebius(),
            liouville(),
            xi(),
            tau(),
            mu_squared(),
            power(2),
        ] {
            verify_flags(&f, 300).unwrap();
        }
        let liar = one().with_flags(Flags::completely_multiplicative());
        verify_flags(&liar, 100).unwrap();
        let liar = tau().with_flags(Flags::completely_multiplicative());
        assert!(matches!(
            verify_flags(&liar, 100),
            Err(Error::Inconsistency(_))
        ));
    }

    #[test]
    fn closed_forms_match_generic_inverses() {
        let r_const = |r: Rational| {
            ArithFn::prime_independent(
                "r",
                move |a| Ok(if a == 1 { r.clone() } else { Rational::zero() }),
                Flags::multiplicative(),
            )
        };
        for f in [moebius(), mu_squared(), r_const(q(2)), r_const(ratio(5, 2))] {
            let cb = closed_form_inverse_prime_supported(&f, InverseMode::Binomial, 300).unwrap();
            let cd = closed_form_inverse_prime_supported(&f, InverseMode::Dirichlet, 300).unwrap();
            let gb = binomial_inverse(&f).unwrap();
            let gd = dirichlet_inverse(&f).unwrap();
            for n in 1..=300 {
                assert_eq!(cb.eval(n).unwrap(), gb.eval(n).unwrap());
                assert_eq!(cd.eval(n).unwrap(), gd.eval(n).unwrap());
            }
        }
        let inv =
            closed_form_inverse_prime_supported(&mu_squared(), InverseMode::Binomial, 100).unwrap();
        for n in 1..=100u64 {
            let lx = q(crate::numeric::liouville(n).unwrap() as i64) * xi_value(n).unwrap();
            assert_eq!(inv.eval(n).unwrap(), lx);
        }
        let inv = closed_form_inverse_prime_supported(&r_const(q(2)), InverseMode::Binomial, 200)
            .unwrap();
        for n in 1..=200u64 {
            let v = q((-2i64).pow(big_omega(n).unwrap())) * xi_value(n).unwrap();
            assert_eq!(inv.eval(n).unwrap(), v);
        }
    }

    #[test]
    fn closed_form_rejects_bad_input() {
        let err =
            closed_form_inverse_prime_supported(&one(), InverseMode::Binomial, 50).unwrap_err();
        assert_eq!(
            err,
            Error::Precondition {
                witness: 4,
                reason: "nonzero at a prime power with exponent >= 2".into()
            }
        );
        let tau_err = closed_form_inverse_prime_supported(&tau(), InverseMode::Dirichlet, 50);
        assert!(matches!(
            tau_err,
            Err(Error::Precondition { witness: 4, .. })
        ));
        let not_mult = ArithFn::from_fn("f", |n| Ok(q(if n == 6 { 2 } else { 1 })));
        let err = closed_form_inverse_prime_supported(&not_mult, InverseMode::Dirichlet, 50);
        assert!(matches!(err, Err(Error::Precondition { witness: 6, .. })));
    }

    #[test]
    fn multinomial_lhs_examples() {
        assert_eq!(multinomial_identity_lhs(12, &[q(1), q(1)]).unwrap(), q(8));
        assert_eq!(
            multinomial_identity_lhs(12, &[q(1), q(1), q(1)]).unwrap(),
            q(27)
        );
        let (x, y) = (ratio(3, 7), ratio(-5, 2));
        assert_eq!(
            multinomial_identity_lhs(13, &[x.clone(), y.clone()]).unwrap(),
            x + y
        );
        assert!(multinomial_identity_lhs(12, &[]).is_err());
    }

    #[test]
    fn power_characterization() {
        for k in [2, 3, -2] {
            assert!(
                check_power_characterization(&liouville(), k, 200)
                    .unwrap()
                    .holds
            );
            assert!(check_power_characterization(&one(), k, 200).unwrap().holds);
        }
        let out = check_power_characterization(&xi(), 2, 100).unwrap();
        assert!(!out.holds);
        assert_eq!(out.witness, Some(4));
        assert!(check_power_characterization(&one(), 1, 10).is_err());
        assert!(check_power_characterization(&one(), -1, 10).is_err());
    }

    #[test]
    fn distributivity() {
        let pairs = vec![(moebius(), xi()), (tau(), one())];
        assert!(
            check_distributivity(&liouville(), &pairs, 200)
                .unwrap()
                .holds
        );
        assert!(check_distributivity(&one(), &pairs, 100).unwrap().holds);
        let out = check_distributivity(&xi(), &pairs[..1], 50).unwrap();
        assert!(!out.holds);
        assert_eq!(out.witness, Some((0, 4)));
    }

    #[test]
    fn self_inverse_family() {
        let f = lambda_self_inverse_family(|_| q(1), 6).unwrap();
        assert!(is_liouville_self_inverse(&f, 64).unwrap().holds);
        let zero_odd = lambda_self_inverse_family(|_| Rational::zero(), 4).unwrap();
        // only the n = 1 term: -(1/2) C(2,1) (-1) f(p)^2 = f(p)^2 = 0
        assert_eq!(zero_odd.eval(4).unwrap(), q(0));
        assert!(is_liouville_self_inverse(&zero_odd, 300).unwrap().holds);
        let odd = |a: u32| if a == 3 { q(5) } else { q(2) };
        let g = lambda_self_inverse_family(odd, 8).unwrap();
        assert!(is_liouville_self_inverse(&g, 300).unwrap().holds);
        assert!(!classify(&g, 300).unwrap().is_completely_multiplicative);
        assert!(lambda_self_inverse_family(|_| q(1), 0).is_err());
    }
}
