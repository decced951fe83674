//! Semimultiplicative functions `F(n) = c_F · F'(n / a_F)`: detection,
//! decomposition, Selberg expansion, and the parameter formulas for
//! convolutions and multiplicative scalings.

use std::sync::Arc;

use num::integer::{gcd, lcm};
use num::{One, Zero};

use crate::algebra::{binomial_convolve, dirichlet_convolve, ArithFn, Kind};
use crate::error::{invalid, Error, Result};
use crate::numeric::{binomial, factorize, xi, Factorization, Rational};

/// The triple `(a_F, c_F, F')` with `F(n) = c_F F'(n/a_F)` when `a_F | n`
/// and `F(n) = 0` otherwise.
#[derive(Debug, Clone)]
pub struct SemimultDecomposition {
    /// Smallest argument where `F` does not vanish.
    pub a: u64,
    /// `F(a)`, never zero.
    pub c: Rational,
    /// Multiplicative part; `F'(1) = 1`.
    pub f_prime: ArithFn,
}

impl SemimultDecomposition {
    pub fn new(a: u64, c: Rational, f_prime: ArithFn) -> Result<Self> {
        if a == 0 {
            return Err(invalid("a_F must be positive"));
        }
        if c.is_zero() {
            return Err(invalid("c_F must be nonzero"));
        }
        Ok(SemimultDecomposition { a, c, f_prime })
    }

    /// `F(n)` rebuilt from the triple.
    pub fn reconstruct(&self, n: u64) -> Result<Rational> {
        if !n.is_multiple_of(self.a) {
            return Ok(Rational::zero());
        }
        Ok(&self.c * self.f_prime.eval(n / self.a)?)
    }

    /// `F` as a function.
    pub fn to_fn(&self) -> ArithFn {
        let d = self.clone();
        ArithFn::from_fn(
            format!("{}·{}(n/{})", self.c, self.f_prime.name(), self.a),
            move |n| d.reconstruct(n),
        )
    }
}

/// Outcome of [`is_semimultiplicative`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemimultCheck {
    pub holds: bool,
    /// Lexicographically smallest `(m, n)`, `m <= n`, breaking
    /// `F(m)F(n) = F(gcd)F(lcm)`.
    pub witness: Option<(u64, u64)>,
}

/// Exhaustive gcd–lcm check over all `m, n` with `lcm(m, n) <= bound`.
pub fn is_semimultiplicative(f: &ArithFn, bound: u64) -> Result<SemimultCheck> {
    let v = f.values(bound)?;
    if v.iter().all(Zero::is_zero) {
        return Err(Error::IdenticallyZero { bound });
    }
    let at = |n: u64| &v[(n - 1) as usize];
    for m in 1..=bound {
        for n in m..=bound {
            let l = lcm(m, n);
            if l > bound {
                continue;
            }
            if at(m) * at(n) != at(gcd(m, n)) * at(l) {
                return Ok(SemimultCheck {
                    holds: false,
                    witness: Some((m, n)),
                });
            }
        }
    }
    Ok(SemimultCheck {
        holds: true,
        witness: None,
    })
}

/// Decomposition of `F`, checked to be semimultiplicative on `1..=bound`.
///
/// `F'(n) = F(a n) / F(a)`, so `F'` is defined wherever `F(a n)` is.
pub fn decompose(f: &ArithFn, bound: u64) -> Result<SemimultDecomposition> {
    let check = is_semimultiplicative(f, bound)?;
    if let Some((m, n)) = check.witness {
        return Err(Error::Precondition {
            witness: lcm(m, n),
            reason: format!("not semimultiplicative at ({m}, {n})"),
        });
    }
    let mut a = None;
    for n in 1..=bound {
        let v = f.eval(n)?;
        if !v.is_zero() {
            a = Some((n, v));
            break;
        }
    }
    let (a, c) = a.ok_or(Error::IdenticallyZero { bound })?;
    let g = f.clone();
    let inv_c = c.recip();
    let f_prime = ArithFn::from_fn(format!("{}'", f.name()), move |n| {
        let an = a
            .checked_mul(n)
            .ok_or_else(|| invalid("a_F * n overflows"))?;
        Ok(g.eval(an)? * &inv_c)
    });
    SemimultDecomposition::new(a, c, f_prime)
}

/// Prime-local factors `f_p` with `F(n) = c_F Π_p f_p(ν_p(n))`.
#[derive(Debug, Clone)]
pub struct SelbergExpansion {
    pub c: Rational,
    a: Factorization,
    f_prime: ArithFn,
}

impl SelbergExpansion {
    /// `f_p(e) = F'(p^{e - ν_p(a_F)})`, zero when `e < ν_p(a_F)`.
    pub fn local(&self, p: u64, e: u32) -> Result<Rational> {
        let base = self.a.nu(p);
        if e < base {
            return Ok(Rational::zero());
        }
        self.f_prime.eval_prime_power(p, e - base)
    }

    /// Primes where the local factor at exponent 0 differs from 1.
    pub fn exceptional_primes(&self) -> Vec<u64> {
        self.a.factors().iter().map(|&(p, _)| p).collect()
    }

    /// `c_F Π_{p | n a_F} f_p(ν_p(n))`.
    pub fn eval(&self, n: u64) -> Result<Rational> {
        let fac = factorize(n)?;
        let mut primes: Vec<u64> = fac.factors().iter().map(|&(p, _)| p).collect();
        primes.extend(self.exceptional_primes());
        primes.sort_unstable();
        primes.dedup();
        let mut acc = self.c.clone();
        for p in primes {
            acc *= self.local(p, fac.nu(p))?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

pub fn selberg_expand(dec: &SemimultDecomposition) -> Result<SelbergExpansion> {
    Ok(SelbergExpansion {
        c: dec.c.clone(),
        a: factorize(dec.a)?,
        f_prime: dec.f_prime.clone(),
    })
}

fn xi_q(n: u64) -> Result<Rational> {
    Ok(Rational::from_integer(xi(n)?))
}

/// `ξ_a(n) = ξ(a n)`.
pub fn xi_shift(a: u64) -> ArithFn {
    ArithFn::from_fn(format!("ξ_{a}"), move |n| xi_q(a * n))
}

/// Parameters of `F ∘ G`: `a = a_F a_G`,
/// `c = c_F c_G ξ(a)/(ξ(a_F)ξ(a_G))`, and
/// `(F∘G)' = ξ_a/(ξ(a)ξ) · ((ξ(a_F)ξ/ξ_{a_F}) F' ∘ (ξ(a_G)ξ/ξ_{a_G}) G')`.
pub fn binomial_convolve_semimult_params(
    f: &SemimultDecomposition,
    g: &SemimultDecomposition,
) -> Result<SemimultDecomposition> {
    let a = f.a * g.a;
    let (xa, xf, xg) = (xi_q(a)?, xi_q(f.a)?, xi_q(g.a)?);
    let c = &f.c * &g.c * &xa / (&xf * &xg);
    let adjust = |dec: &SemimultDecomposition, xd: Rational| {
        let (inner, ad) = (dec.f_prime.clone(), dec.a);
        ArithFn::from_fn(format!("adj({})", dec.f_prime.name()), move |n| {
            Ok(&xd * xi_q(n)? / xi_q(ad * n)? * inner.eval(n)?)
        })
    };
    let conv = binomial_convolve(&adjust(f, xf), &adjust(g, xg));
    let f_prime = ArithFn::from_fn(
        format!("({}∘{})'", f.f_prime.name(), g.f_prime.name()),
        move |n| Ok(xi_q(a * n)? / (&xa * xi_q(n)?) * conv.eval(n)?),
    );
    SemimultDecomposition::new(a, c, f_prime)
}

/// Parameters of `F * G`: `a_F a_G`, `c_F c_G`, `F' * G'`.
pub fn dirichlet_convolve_semimult_params(
    f: &SemimultDecomposition,
    g: &SemimultDecomposition,
) -> Result<SemimultDecomposition> {
    SemimultDecomposition::new(
        f.a * g.a,
        &f.c * &g.c,
        dirichlet_convolve(&f.f_prime, &g.f_prime),
    )
}

/// Parameters of the pointwise product `f·F` for multiplicative `f` with
/// `f(a_F) != 0`: `a_F`, `f(a_F) c_F`, `f_{a_F}/f(a_F) · F'` where
/// `f_a(n) = f(a n)`.
pub fn scale_by_multiplicative(
    dec: &SemimultDecomposition,
    f: &ArithFn,
) -> Result<SemimultDecomposition> {
    let fa = f.eval(dec.a)?;
    if fa.is_zero() {
        return Err(Error::Precondition {
            witness: dec.a,
            reason: "f(a_F) = 0".into(),
        });
    }
    let (g, inner, a) = (f.clone(), dec.f_prime.clone(), dec.a);
    let inv = fa.recip();
    let c = &fa * &dec.c;
    let f_prime = ArithFn::from_fn(
        format!("({}·{})'", f.name(), dec.f_prime.name()),
        move |n| Ok(g.eval(a * n)? * &inv * inner.eval(n)?),
    );
    SemimultDecomposition::new(a, c, f_prime)
}

/// Exponent rule of a prime-independent multiplicative function, `r ↦ h(r)`.
pub type ExponentFn = Arc<dyn Fn(u32) -> Result<Rational> + Send + Sync>;

/// The exponent rule of the convolution of two members of the class `S`:
/// `h(r) = Σ_i C(r,i) f(i) g(r-i)` for `∘`, without the binomial for `*`.
pub fn class_s_convolve(f: ExponentFn, g: ExponentFn, kind: Kind) -> Result<ExponentFn> {
    if !f(0)?.is_one() || !g(0)?.is_one() {
        return Err(invalid("class S rules must equal 1 at exponent 0"));
    }
    Ok(Arc::new(move |r| {
        let mut acc = Rational::zero();
        for i in 0..=r {
            let term = f(i)? * g(r - i)?;
            acc += match kind {
                Kind::Binomial => term * binomial(r, i),
                Kind::Dirichlet => term,
            };
        }
        Ok(acc)
    }))
}

/// The member of `S` with exponent rule `h`.
pub fn class_s_function(name: impl Into<String>, h: ExponentFn) -> ArithFn {
    ArithFn::prime_independent(name, move |a| h(a), Default::default())
}

/// `F(n) = c · F'(n/a)` from a multiplicative `F'`.
pub fn shifted(f_prime: &ArithFn, a: u64, c: Rational) -> Result<ArithFn> {
    Ok(SemimultDecomposition::new(a, c, f_prime.clone())?.to_fn())
}
