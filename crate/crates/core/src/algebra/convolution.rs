//! Dirichlet and binomial convolutions, the k-fold binomial product, and the
//! transport `f ↦ f/ξ` between the two algebras.

use std::sync::Arc;

use num::{BigInt, One, Zero};

use super::arith_fn::{ArithFn, Claim, Flags};
use crate::error::{invalid, Result};
use crate::numeric::{binomial_u64, factorial, factorize, multinomial, weight_from_exps, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Dirichlet,
    Binomial,
}

impl Kind {
    fn symbol(self) -> &'static str {
        match self {
            Kind::Dirichlet => "*",
            Kind::Binomial => "∘",
        }
    }
}

fn convolve(f: &ArithFn, g: &ArithFn, kind: Kind) -> ArithFn {
    let name = format!("({} {} {})", f.name(), kind.symbol(), g.name());
    let (ff, gf) = (f.flags(), g.flags());
    let completely = match kind {
        // ∘ keeps complete multiplicativity, * does not
        Kind::Binomial => Claim::both(ff.completely_multiplicative, gf.completely_multiplicative),
        Kind::Dirichlet => Claim::Unknown,
    };
    let flags = Flags {
        multiplicative: Claim::both(ff.multiplicative, gf.multiplicative),
        completely_multiplicative: completely,
        prime_independent: Claim::both(ff.prime_independent, gf.prime_independent),
    };
    let (f, g) = (f.clone(), g.clone());
    if flags.multiplicative.is_yes() {
        // local convolution on prime powers
        return ArithFn::multiplicative(
            name,
            move |p, a| {
                let mut acc = Rational::zero();
                for i in 0..=a {
                    let term = f.eval_prime_power(p, i)? * g.eval_prime_power(p, a - i)?;
                    acc += match kind {
                        Kind::Dirichlet => term,
                        Kind::Binomial => term * BigInt::from(binomial_u64(a, i)),
                    };
                }
                Ok(acc)
            },
            flags,
        );
    }
    let mut out = ArithFn::from_fn(name, move |n| {
        let fac = factorize(n)?;
        let mut acc = Rational::zero();
        let mut err = None;
        fac.for_each_divisor(|d, exps| {
            if err.is_some() {
                return;
            }
            let term = f.eval(d).and_then(|a| Ok(a * g.eval(n / d)?));
            match term {
                Ok(t) if t.is_zero() => {}
                Ok(t) => {
                    acc += match kind {
                        Kind::Dirichlet => t,
                        Kind::Binomial => t * BigInt::from(weight_from_exps(&fac, exps)),
                    }
                }
                Err(e) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(acc),
        }
    });
    out = out.with_flags(flags);
    out
}

/// `(f * g)(n) = Σ_{d|n} f(d) g(n/d)`.
pub fn dirichlet_convolve(f: &ArithFn, g: &ArithFn) -> ArithFn {
    convolve(f, g, Kind::Dirichlet)
}

/// `(f ∘ g)(n) = Σ_{d|n} Π_p C(ν_p(n), ν_p(d)) f(d) g(n/d)`.
pub fn binomial_convolve(f: &ArithFn, g: &ArithFn) -> ArithFn {
    convolve(f, g, Kind::Binomial)
}

pub fn convolve_with(kind: Kind, f: &ArithFn, g: &ArithFn) -> ArithFn {
    convolve(f, g, kind)
}

/// `f_1 ∘ ⋯ ∘ f_k`, summed directly over ordered factorizations
/// `d_1⋯d_k = n` with multinomial weights `Π_p (ν_p(n); ν_p(d_1), …, ν_p(d_k))`.
pub fn binomial_convolve_k(fs: &[ArithFn]) -> Result<ArithFn> {
    match fs {
        [] => Err(invalid("binomial_convolve_k: empty list")),
        [f] => Ok(f.clone()),
        _ => {
            let flags = fs.iter().skip(1).fold(fs[0].flags(), |acc, f| Flags {
                multiplicative: Claim::both(acc.multiplicative, f.flags().multiplicative),
                completely_multiplicative: Claim::both(
                    acc.completely_multiplicative,
                    f.flags().completely_multiplicative,
                ),
                prime_independent: Claim::both(acc.prime_independent, f.flags().prime_independent),
            });
            let name = format!(
                "∘({})",
                fs.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
            );
            let fs: Arc<Vec<ArithFn>> = Arc::new(fs.to_vec());
            let out = ArithFn::from_fn(name, move |n| {
                let fac = factorize(n)?;
                let exps: Vec<u32> = fac.factors().iter().map(|&(_, a)| a).collect();
                let primes: Vec<u64> = fac.factors().iter().map(|&(p, _)| p).collect();
                let mut parts: Vec<Vec<u32>> = vec![vec![0; exps.len()]; fs.len()];
                ordered_factorizations(&fs, &primes, &exps, 0, &mut parts)
            });
            Ok(out.with_flags(flags))
        }
    }
}

/// Sum over all ways to split the exponent vector `remaining` among
/// `fs[j..]`, with `parts[i]` holding the exponents already given to `fs[i]`.
fn ordered_factorizations(
    fs: &[ArithFn],
    primes: &[u64],
    remaining: &[u32],
    j: usize,
    parts: &mut Vec<Vec<u32>>,
) -> Result<Rational> {
    if j + 1 == fs.len() {
        parts[j].copy_from_slice(remaining);
        let mut value = Rational::one();
        for (f, exps) in fs.iter().zip(parts.iter()) {
            let d: u64 = primes.iter().zip(exps).map(|(&p, &e)| p.pow(e)).product();
            value *= f.eval(d)?;
            if value.is_zero() {
                return Ok(value);
            }
        }
        let mut weight = BigInt::one();
        for (i, &total) in remaining_total(parts).iter().enumerate() {
            let split: Vec<u32> = parts.iter().map(|e| e[i]).collect();
            weight *= multinomial(total, &split)?;
        }
        return Ok(value * weight);
    }
    let mut acc = Rational::zero();
    let mut choice = vec![0u32; remaining.len()];
    loop {
        parts[j].copy_from_slice(&choice);
        let rest: Vec<u32> = remaining.iter().zip(&choice).map(|(r, c)| r - c).collect();
        acc += ordered_factorizations(fs, primes, &rest, j + 1, parts)?;
        // odometer over 0..=remaining[i]
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(acc);
            }
            if choice[i] < remaining[i] {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn remaining_total(parts: &[Vec<u32>]) -> Vec<u32> {
    let width = parts.first().map_or(0, Vec::len);
    (0..width)
        .map(|i| parts.iter().map(|e| e[i]).sum())
        .collect()
}

/// Pointwise product `f·g`.
pub fn pointwise_product(f: &ArithFn, g: &ArithFn) -> ArithFn {
    let (ff, gf) = (f.flags(), g.flags());
    let flags = Flags {
        multiplicative: Claim::both(ff.multiplicative, gf.multiplicative),
        completely_multiplicative: Claim::both(
            ff.completely_multiplicative,
            gf.completely_multiplicative,
        ),
        prime_independent: Claim::both(ff.prime_independent, gf.prime_independent),
    };
    let name = format!("({}·{})", f.name(), g.name());
    let (f, g) = (f.clone(), g.clone());
    if flags.multiplicative.is_yes() {
        return ArithFn::multiplicative(
            name,
            move |p, a| Ok(f.eval_prime_power(p, a)? * g.eval_prime_power(p, a)?),
            flags,
        );
    }
    ArithFn::from_fn(name, move |n| Ok(f.eval(n)? * g.eval(n)?)).with_flags(flags)
}

/// Pointwise sum `f + g`.
pub fn pointwise_sum(f: &ArithFn, g: &ArithFn) -> ArithFn {
    let name = format!("({} + {})", f.name(), g.name());
    let (f, g) = (f.clone(), g.clone());
    ArithFn::from_fn(name, move |n| Ok(f.eval(n)? + g.eval(n)?))
}

/// Constant multiple `c·f`.
pub fn scale(f: &ArithFn, c: Rational) -> ArithFn {
    let name = format!("({}·{})", c, f.name());
    let f = f.clone();
    ArithFn::from_fn(name, move |n| Ok(f.eval(n)? * &c))
}

/// Multiplies (`up`) or divides by ξ, keeping multiplicativity.
fn xi_scaled(f: &ArithFn, up: bool, name: String) -> ArithFn {
    let mut flags = Flags {
        multiplicative: f.flags().multiplicative,
        ..Default::default()
    };
    flags.prime_independent = f.flags().prime_independent;
    let f = f.clone();
    if flags.multiplicative.is_yes() {
        return ArithFn::multiplicative(
            name,
            move |p, a| {
                let v = f.eval_prime_power(p, a)?;
                let x = Rational::from_integer(factorial(a));
                Ok(if up { v * x } else { v / x })
            },
            flags,
        );
    }
    ArithFn::from_fn(name, move |n| {
        let v = f.eval(n)?;
        let x = Rational::from_integer(crate::numeric::xi_of(&factorize(n)?));
        Ok(if up { v * x } else { v / x })
    })
    .with_flags(flags)
}

/// `f ↦ f/ξ`: carries `∘` to `*`.
pub fn to_dirichlet_side(f: &ArithFn) -> ArithFn {
    xi_scaled(f, false, format!("({}/ξ)", f.name()))
}

/// `g ↦ g·ξ`: inverse of [`to_dirichlet_side`].
pub fn from_dirichlet_side(g: &ArithFn) -> ArithFn {
    xi_scaled(g, true, format!("(ξ·{})", g.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith_fn::q;
    use crate::algebra::builtins::*;

    fn same(a: &ArithFn, b: &ArithFn, bound: u64) {
        for n in 1..=bound {
            assert_eq!(a.eval(n).unwrap(), b.eval(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn divisor_count_and_identity() {
        assert_eq!(dirichlet_convolve(&one(), &one()).eval(12).unwrap(), q(6));
        let f = ArithFn::from_fn("f", |n| Ok(q((n * n % 7) as i64 - 3)));
        same(&dirichlet_convolve(&f, &delta()), &f, 100);
        same(&binomial_convolve(&f, &delta()), &f, 100);
        same(&binomial_convolve(&delta(), &f), &f, 100);
        same(&dirichlet_convolve(&moebius(), &one()), &delta(), 100);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_convolve(&one(), &one()).eval(12).unwrap(), q(8));
        same(&binomial_convolve(&moebius(), &xi()), &delta(), 200);
    }

    #[test]
    fn generic_and_multiplicative_paths_agree() {
        // strip flags to force the divisor-sum path
        let i_plain = ArithFn::from_fn("I", |_| Ok(q(1)));
        let l_plain = ArithFn::from_fn("λ", |n| Ok(q(crate::numeric::liouville(n)? as i64)));
        for kind in [Kind::Dirichlet, Kind::Binomial] {
            same(
                &convolve_with(kind, &i_plain, &l_plain),
                &convolve_with(kind, &one(), &liouville()),
                300,
            );
        }
    }

    #[test]
    fn k_fold_examples() {
        let f = ArithFn::from_fn("f", |n| Ok(q(n as i64 % 5)));
        same(
            &binomial_convolve_k(std::slice::from_ref(&f)).unwrap(),
            &f,
            50,
        );
        let three = binomial_convolve_k(&[one(), one(), one()]).unwrap();
        for n in 1..=200u64 {
            let omega = crate::numeric::big_omega(n).unwrap();
            assert_eq!(three.eval(n).unwrap(), q(3i64.pow(omega)));
        }
        let two = binomial_convolve_k(&[one(), one()]).unwrap();
        assert_eq!(two.eval(12).unwrap(), q(8));
        assert!(binomial_convolve_k(&[]).is_err());
    }

    #[test]
    fn k_fold_equals_left_fold() {
        let f = ArithFn::from_fn("f", |n| Ok(q((n % 3) as i64 - 1)));
        let g = ArithFn::from_fn("g", |n| Ok(q((n % 4) as i64)));
        let h = liouville();
        let direct = binomial_convolve_k(&[f.clone(), g.clone(), h.clone()]).unwrap();
        let folded = binomial_convolve(&binomial_convolve(&f, &g), &h);
        same(&direct, &folded, 200);
    }

    #[test]
    fn xi_transport() {
        same(&to_dirichlet_side(&xi()), &one(), 200);
        let f = ArithFn::from_fn("f", |n| Ok(q(n as i64 * 3 - 7)));
        same(&from_dirichlet_side(&to_dirichlet_side(&f)), &f, 200);
        let g = liouville();
        let lhs = from_dirichlet_side(&dirichlet_convolve(
            &to_dirichlet_side(&f),
            &to_dirichlet_side(&g),
        ));
        same(&lhs, &binomial_convolve(&f, &g), 200);
    }

    #[test]
    fn flag_propagation() {
        let b = binomial_convolve(&one(), &liouville());
        assert!(b.is_completely_multiplicative());
        let d = dirichlet_convolve(&one(), &liouville());
        assert!(d.is_multiplicative());
        assert!(!d.is_completely_multiplicative());
    }
}
