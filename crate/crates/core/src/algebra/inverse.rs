//! Inverses and powers under `*` and `∘`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num::{BigInt, One, Zero};

use super::arith_fn::{ArithFn, Claim, Flags};
use super::builtins::delta;
use super::convolution::{binomial_convolve, from_dirichlet_side, to_dirichlet_side, Kind};
use crate::error::{Error, Result};
use crate::numeric::{binomial_u64, factorize, weight_from_exps, Rational};

/// Memoized solution of `(f ⋆ g)(n) = δ(n)` by recursion on divisors.
struct DivisorRecursion {
    f: ArithFn,
    kind: Kind,
    inv_f1: Rational,
    memo: RwLock<HashMap<u64, Rational>>,
}

impl DivisorRecursion {
    fn value(&self, n: u64) -> Result<Rational> {
        if n == 1 {
            return Ok(self.inv_f1.clone());
        }
        if let Some(v) = self.memo.read().expect("memo poisoned").get(&n) {
            return Ok(v.clone());
        }
        // g(n) = -(1/f(1)) Σ_{d|n, d>1} w(n,d) f(d) g(n/d)
        let fac = factorize(n)?;
        let mut terms = Vec::new();
        fac.for_each_divisor(|d, exps| {
            if d > 1 {
                let w = match self.kind {
                    Kind::Dirichlet => 1,
                    Kind::Binomial => weight_from_exps(&fac, exps),
                };
                terms.push((d, w));
            }
        });
        let mut acc = Rational::zero();
        for (d, w) in terms {
            let fd = self.f.eval(d)?;
            if fd.is_zero() {
                continue;
            }
            acc += fd * self.value(n / d)? * BigInt::from(w);
        }
        let v = -acc * &self.inv_f1;
        self.memo
            .write()
            .expect("memo poisoned")
            .entry(n)
            .or_insert_with(|| v.clone());
        Ok(v)
    }
}

/// Prime-power recursion for the inverse of a multiplicative function.
struct LocalRecursion {
    f: ArithFn,
    kind: Kind,
    memo: RwLock<HashMap<u64, Vec<Rational>>>,
}

impl LocalRecursion {
    fn value(&self, p: u64, a: u32) -> Result<Rational> {
        if let Some(v) = self
            .memo
            .read()
            .expect("memo poisoned")
            .get(&p)
            .and_then(|row| row.get(a as usize))
        {
            return Ok(v.clone());
        }
        let mut row = self
            .memo
            .read()
            .expect("memo poisoned")
            .get(&p)
            .cloned()
            .unwrap_or_else(|| vec![Rational::one()]);
        // g(p^k) = -Σ_{i=1}^{k} w(k,i) f(p^i) g(p^{k-i}), using f(1) = 1
        for k in row.len() as u32..=a {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let fi = self.f.eval_prime_power(p, i)?;
                if fi.is_zero() {
                    continue;
                }
                let w = match self.kind {
                    Kind::Dirichlet => 1,
                    Kind::Binomial => binomial_u64(k, i),
                };
                acc += fi * &row[(k - i) as usize] * BigInt::from(w);
            }
            row.push(-acc);
        }
        let v = row[a as usize].clone();
        let mut memo = self.memo.write().expect("memo poisoned");
        let slot = memo.entry(p).or_default();
        if slot.len() < row.len() {
            *slot = row;
        }
        Ok(v)
    }
}

fn inverse(f: &ArithFn, kind: Kind, name: String) -> Result<ArithFn> {
    let f1 = f.eval(1)?;
    if f1.is_zero() {
        return Err(Error::NotInvertible);
    }
    let flags = Flags {
        multiplicative: f.flags().multiplicative,
        completely_multiplicative: match kind {
            Kind::Binomial => f.flags().completely_multiplicative,
            Kind::Dirichlet => Claim::Unknown,
        },
        prime_independent: f.flags().prime_independent,
    };
    if f.is_multiplicative() {
        let rec = Arc::new(LocalRecursion {
            f: f.clone(),
            kind,
            memo: RwLock::new(HashMap::new()),
        });
        return Ok(ArithFn::multiplicative(
            name,
            move |p, a| rec.value(p, a),
            flags,
        ));
    }
    let rec = Arc::new(DivisorRecursion {
        f: f.clone(),
        kind,
        inv_f1: f1.recip(),
        memo: RwLock::new(HashMap::new()),
    });
    Ok(ArithFn::from_fn(name, move |n| rec.value(n)).with_flags(flags))
}

/// `f^{-1*}` by direct recursion (prime-power recursion when `f` is
/// flagged multiplicative).
pub fn dirichlet_inverse(f: &ArithFn) -> Result<ArithFn> {
    inverse(f, Kind::Dirichlet, format!("{}^(-1*)", f.name()))
}

/// `f^{-1∘}` by direct recursion on `(f ∘ g)(n) = δ(n)`.
pub fn binomial_inverse(f: &ArithFn) -> Result<ArithFn> {
    inverse(f, Kind::Binomial, format!("{}^(-1∘)", f.name()))
}

/// `f^{-1∘} = ξ·(f/ξ)^{-1*}`.
pub fn binomial_inverse_via_isomorphism(f: &ArithFn) -> Result<ArithFn> {
    Ok(from_dirichlet_side(&dirichlet_inverse(
        &to_dirichlet_side(f),
    )?))
}

/// `f^{-1*} = (ξf)^{-1∘}/ξ`.
pub fn dirichlet_inverse_via_isomorphism(f: &ArithFn) -> Result<ArithFn> {
    Ok(to_dirichlet_side(&binomial_inverse(&from_dirichlet_side(
        f,
    ))?))
}

/// `f^{k∘}` for any integer `k`; `k = 0` gives `δ`, negative `k` powers the
/// inverse.
pub fn binomial_power(f: &ArithFn, k: i64) -> Result<ArithFn> {
    if k == 0 {
        return Ok(delta());
    }
    let base = if k < 0 {
        binomial_inverse(f)?
    } else {
        f.clone()
    };
    // square-and-multiply
    let mut e = k.unsigned_abs();
    let mut sq = base;
    let mut acc: Option<ArithFn> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => binomial_convolve(&a, &sq),
            });
        }
        e >>= 1;
        if e > 0 {
            sq = binomial_convolve(&sq, &sq);
        }
    }
    let out = acc.expect("k != 0");
    Ok(out.renamed(format!("{}^({k}∘)", f.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::arith_fn::q;
    use crate::algebra::builtins::*;
    use crate::algebra::convolution::dirichlet_convolve;
    use crate::numeric::big_omega;

    fn same(a: &ArithFn, b: &ArithFn, bound: u64) {
        for n in 1..=bound {
            assert_eq!(a.eval(n).unwrap(), b.eval(n).unwrap(), "n = {n}");
        }
    }

    fn unflagged(f: &ArithFn) -> ArithFn {
        let g = f.clone();
        ArithFn::from_fn(f.name(), move |n| g.eval(n))
    }

    #[test]
    fn classical_inverses() {
        same(&binomial_inverse(&one()).unwrap(), &liouville(), 500);
        same(&binomial_inverse(&xi()).unwrap(), &moebius(), 500);
        same(&binomial_inverse(&moebius()).unwrap(), &xi(), 500);
        same(&dirichlet_inverse(&one()).unwrap(), &moebius(), 500);
        // generic recursion path
        same(
            &binomial_inverse(&unflagged(&one())).unwrap(),
            &liouville(),
            300,
        );
        same(
            &dirichlet_inverse(&unflagged(&one())).unwrap(),
            &moebius(),
            300,
        );
    }

    #[test]
    fn inverse_paths_agree() {
        let f = ArithFn::from_fn("f", |n| Ok(q((n * 7 % 11) as i64 - 4)));
        let direct = binomial_inverse(&f).unwrap();
        let iso = binomial_inverse_via_isomorphism(&f).unwrap();
        same(&direct, &iso, 300);
        same(&binomial_convolve(&f, &direct), &delta(), 300);
        let d1 = dirichlet_inverse(&f).unwrap();
        let d2 = dirichlet_inverse_via_isomorphism(&f).unwrap();
        same(&d1, &d2, 200);
        same(&dirichlet_convolve(&f, &d1), &delta(), 200);
    }

    #[test]
    fn non_invertible() {
        let f = ArithFn::from_fn("f", |n| Ok(q(n as i64 - 1)));
        assert!(matches!(binomial_inverse(&f), Err(Error::NotInvertible)));
        assert!(matches!(dirichlet_inverse(&f), Err(Error::NotInvertible)));
        assert!(matches!(binomial_power(&f, -2), Err(Error::NotInvertible)));
    }

    #[test]
    fn powers() {
        let cube = binomial_power(&one(), 3).unwrap();
        for n in 1..=200u64 {
            let w = big_omega(n).unwrap();
            assert_eq!(cube.eval(n).unwrap(), q(3i64.pow(w)));
        }
        same(&binomial_power(&liouville(), 0).unwrap(), &delta(), 50);
        let l2 = binomial_power(&liouville(), 2).unwrap();
        for n in 1..=200u64 {
            let w = big_omega(n).unwrap();
            assert_eq!(l2.eval(n).unwrap(), q((-2i64).pow(w)));
        }
        let neg = binomial_power(&one(), -3).unwrap();
        for n in 1..=200u64 {
            let w = big_omega(n).unwrap();
            assert_eq!(neg.eval(n).unwrap(), q((-3i64).pow(w)));
        }
    }
}
