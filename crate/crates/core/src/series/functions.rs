//! Real-valued arithmetical functions prepared for series evaluation.

use std::fmt;
use std::sync::Arc;

use num::ToPrimitive;

use crate::algebra::ArithFn;
use crate::error::{invalid, Error, Result};
use crate::numeric::{eratosthenes, factorize, xi};

/// `n ↦ f(n)/ξ(n)` given `n` and its factorization.
pub type WeightFn = Arc<dyn Fn(u64, &[(u64, u32)]) -> f64 + Send + Sync>;
/// `(p, ν) ↦ f(p^ν)/ν!`.
pub type LocalFn = Arc<dyn Fn(u64, u32) -> f64 + Send + Sync>;

/// `|f(n)/ξ(n)| <= c · n^r` for all `n >= 1`.
///
/// Bounding `f/ξ` rather than `f` lets ξ-like functions carry certificates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthCertificate {
    pub c: f64,
    pub r: f64,
    /// `f(n) >= 0` for all `n`, which lets tails be centered.
    pub nonnegative: bool,
}

impl GrowthCertificate {
    pub fn new(c: f64, r: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0 && r.is_finite()) {
            return Err(invalid(
                "growth certificate needs finite c >= 0 and finite r",
            ));
        }
        Ok(GrowthCertificate {
            c,
            r,
            nonnegative: false,
        })
    }

    pub fn nonnegative(mut self) -> Self {
        self.nonnegative = true;
        self
    }

    pub fn bound(&self, n: u64) -> f64 {
        if self.r == 0.0 {
            self.c
        } else {
            self.c * (n as f64).powf(self.r)
        }
    }

    /// Certificate for the Dirichlet product of two weights, i.e. for
    /// `(f∘g)/ξ = (f/ξ) * (g/ξ)`, using `τ(n) <= C(ε) n^ε` with `ε = 1/4`.
    pub fn dirichlet_product(&self, other: &GrowthCertificate) -> GrowthCertificate {
        const EPSILON: f64 = 0.25;
        GrowthCertificate {
            c: self.c * other.c * divisor_bound_constant(EPSILON),
            r: self.r.max(other.r).max(0.0) + EPSILON,
            nonnegative: self.nonnegative && other.nonnegative,
        }
    }
}

/// Smallest `C` with `τ(n) <= C n^ε` for all `n`: the product over primes
/// `p < 2^{1/ε}` of `max_ν (ν+1) p^{-εν}`, rounded up.
pub fn divisor_bound_constant(eps: f64) -> f64 {
    multiplicative_sup(eps, |nu| nu as f64 + 1.0, 2.0)
}

/// `sup_n Π_{p^ν || n} g(ν) / n^ε` for `g(0) = 1` and `g(ν) <= γ^ν`.
fn multiplicative_sup(eps: f64, g: impl Fn(u32) -> f64, gamma: f64) -> f64 {
    assert!(eps > 0.0);
    if gamma <= 1.0 {
        return 1.0;
    }
    let limit = gamma.powf(1.0 / eps).ceil() as u64;
    let mut c = 1.0;
    for p in eratosthenes(limit.max(2)) {
        let q = (p as f64).powf(-eps);
        let best = (0..=400u32)
            .map(|nu| g(nu) * q.powi(nu as i32))
            .fold(1.0, f64::max);
        c *= best;
    }
    c * (1.0 + 1e-12)
}

/// `|f(p^ν)/ν!| <= (k p^ρ)^ν`, divided by `ν!` when `factorial` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalCertificate {
    pub k: f64,
    pub rho: f64,
    pub factorial: bool,
}

/// An arithmetical function with the data series evaluation needs.
#[derive(Clone)]
pub struct SeriesFn {
    name: String,
    weight: WeightFn,
    growth: GrowthCertificate,
    support: Option<u64>,
    exact_power: Option<(f64, f64)>,
    local: Option<(LocalFn, LocalCertificate)>,
    prime_values: Option<(f64, f64)>,
}

impl fmt::Debug for SeriesFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesFn")
            .field("name", &self.name)
            .field("growth", &self.growth)
            .finish_non_exhaustive()
    }
}

const FACTORIALS: [f64; 171] = {
    let mut out = [1.0; 171];
    let mut i = 1;
    while i < 171 {
        out[i] = out[i - 1] * i as f64;
        i += 1;
    }
    out
};

pub(crate) fn factorial_f64(k: u32) -> f64 {
    FACTORIALS.get(k as usize).copied().unwrap_or(f64::INFINITY)
}

fn xi_f64(factors: &[(u64, u32)]) -> f64 {
    factors.iter().map(|&(_, a)| factorial_f64(a)).product()
}

fn big_omega(factors: &[(u64, u32)]) -> u32 {
    factors.iter().map(|&(_, a)| a).sum()
}

impl SeriesFn {
    pub fn new(
        name: impl Into<String>,
        growth: GrowthCertificate,
        weight: impl Fn(u64, &[(u64, u32)]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SeriesFn {
            name: name.into(),
            weight: Arc::new(weight),
            growth,
            support: None,
            exact_power: None,
            local: None,
            prime_values: None,
        }
    }

    /// Declares `f(n) = 0` for `n > bound`.
    pub fn with_support(mut self, bound: u64) -> Self {
        self.support = Some(bound);
        self
    }

    /// Declares `f(n)/ξ(n) = c n^r` for every `n`, so tails are summed exactly.
    pub fn with_exact_power(mut self, c: f64, r: f64) -> Self {
        self.exact_power = Some((c, r));
        self
    }

    /// Declares `f` multiplicative with the given prime-power weights.
    pub fn with_local(
        mut self,
        cert: LocalCertificate,
        local: impl Fn(u64, u32) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.local = Some((Arc::new(local), cert));
        self
    }

    /// Declares `f` completely multiplicative with `f(p) = c p^ρ`.
    pub fn with_prime_values(mut self, c: f64, rho: f64) -> Self {
        self.prime_values = Some((c, rho));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn growth(&self) -> GrowthCertificate {
        self.growth
    }

    pub fn support(&self) -> Option<u64> {
        self.support
    }

    pub fn exact_power(&self) -> Option<(f64, f64)> {
        self.exact_power
    }

    pub fn local(&self) -> Option<(&LocalFn, LocalCertificate)> {
        self.local.as_ref().map(|(f, c)| (f, *c))
    }

    pub fn prime_values(&self) -> Option<(f64, f64)> {
        self.prime_values
    }

    /// `f(n)/ξ(n)` from a precomputed factorization.
    pub fn weight_factored(&self, n: u64, factors: &[(u64, u32)]) -> f64 {
        (self.weight)(n, factors)
    }

    /// `f(n)/ξ(n)`.
    pub fn weight(&self, n: u64) -> Result<f64> {
        let fac = factorize(n)?;
        Ok((self.weight)(n, fac.factors()))
    }

    /// Checks the growth certificate at `n` against a computed weight.
    pub(crate) fn check_weight(&self, n: u64, w: f64) -> Result<()> {
        if !w.is_finite() {
            return Err(Error::Certificate(format!(
                "{}: weight at n = {n} is not finite",
                self.name
            )));
        }
        if w.abs() > self.growth.bound(n) * (1.0 + 1e-12) {
            return Err(Error::Certificate(format!(
                "{}: |f({n})/ξ({n})| = {} exceeds {}·{n}^{}",
                self.name,
                w.abs(),
                self.growth.c,
                self.growth.r
            )));
        }
        if self.growth.nonnegative && w < 0.0 {
            return Err(Error::Certificate(format!(
                "{}: negative value at n = {n}",
                self.name
            )));
        }
        Ok(())
    }

    /// `I`, the constant function 1.
    pub fn one() -> Self {
        SeriesFn::new(
            "I",
            GrowthCertificate::new(1.0, 0.0).unwrap().nonnegative(),
            |_, f| 1.0 / xi_f64(f),
        )
        .with_local(
            LocalCertificate {
                k: 1.0,
                rho: 0.0,
                factorial: true,
            },
            |_, nu| 1.0 / factorial_f64(nu),
        )
        .with_prime_values(1.0, 0.0)
    }

    /// `λ(n) = (-1)^{Ω(n)}`.
    pub fn liouville() -> Self {
        SeriesFn::new(
            "lambda",
            GrowthCertificate::new(1.0, 0.0).unwrap(),
            |_, f| {
                let sign = if big_omega(f).is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                sign / xi_f64(f)
            },
        )
        .with_local(
            LocalCertificate {
                k: 1.0,
                rho: 0.0,
                factorial: true,
            },
            |_, nu| if nu % 2 == 0 { 1.0 } else { -1.0 } / factorial_f64(nu),
        )
        .with_prime_values(-1.0, 0.0)
    }

    /// `ξ`; its weight is identically 1.
    pub fn xi() -> Self {
        SeriesFn::new(
            "xi",
            GrowthCertificate::new(1.0, 0.0).unwrap().nonnegative(),
            |_, _| 1.0,
        )
        .with_exact_power(1.0, 0.0)
        .with_local(
            LocalCertificate {
                k: 1.0,
                rho: 0.0,
                factorial: false,
            },
            |_, _| 1.0,
        )
    }

    pub fn delta() -> Self {
        SeriesFn::new(
            "delta",
            GrowthCertificate::new(1.0, 0.0).unwrap().nonnegative(),
            |n, _| if n == 1 { 1.0 } else { 0.0 },
        )
        .with_support(1)
        .with_local(
            LocalCertificate {
                k: 0.0,
                rho: 0.0,
                factorial: true,
            },
            |_, nu| if nu == 0 { 1.0 } else { 0.0 },
        )
        .with_prime_values(0.0, 0.0)
    }

    pub fn moebius() -> Self {
        SeriesFn::new("mu", GrowthCertificate::new(1.0, 0.0).unwrap(), |_, f| {
            if f.iter().any(|&(_, a)| a > 1) {
                0.0
            } else if f.len() % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        })
        .with_local(
            LocalCertificate {
                k: 1.0,
                rho: 0.0,
                factorial: false,
            },
            |_, nu| match nu {
                0 => 1.0,
                1 => -1.0,
                _ => 0.0,
            },
        )
    }

    /// `n^r`.
    pub fn power(r: f64) -> Self {
        SeriesFn::new(
            format!("n^{r}"),
            GrowthCertificate::new(1.0, r).unwrap().nonnegative(),
            move |n, f| (n as f64).powf(r) / xi_f64(f),
        )
        .with_local(
            LocalCertificate {
                k: 1.0,
                rho: r,
                factorial: true,
            },
            move |p, nu| (p as f64).powf(r * nu as f64) / factorial_f64(nu),
        )
        .with_prime_values(1.0, r)
    }

    /// `x^{Ω(n)}`. For `|x| > 1` the growth certificate uses `n^{1/2}`.
    pub fn r_omega(x: f64) -> Self {
        let ax = x.abs();
        let growth = if ax <= 1.0 {
            GrowthCertificate::new(1.0, 0.0).unwrap()
        } else {
            let c = multiplicative_sup(0.5, |nu| ax.powi(nu as i32) / factorial_f64(nu), ax);
            GrowthCertificate::new(c, 0.5).unwrap()
        };
        let growth = if x >= 0.0 {
            growth.nonnegative()
        } else {
            growth
        };
        SeriesFn::new(format!("{x}^Omega"), growth, move |_, f| {
            x.powi(big_omega(f) as i32) / xi_f64(f)
        })
        .with_local(
            LocalCertificate {
                k: ax,
                rho: 0.0,
                factorial: true,
            },
            move |_, nu| x.powi(nu as i32) / factorial_f64(nu),
        )
        .with_prime_values(x, 0.0)
    }

    /// `log n`, using `log n <= n^{1/10} / (e/10)`.
    pub fn log() -> Self {
        SeriesFn::new("log", log_certificate(), |n, f| (n as f64).ln() / xi_f64(f))
    }

    /// `Λ̃(n)`: `log p` at primes, 0 elsewhere.
    pub fn mangoldt_tilde() -> Self {
        SeriesFn::new("mangoldt_tilde", log_certificate(), |_, f| match f {
            [(p, 1)] => (*p as f64).ln(),
            _ => 0.0,
        })
    }

    /// Classical `Λ(n)`: `log p` at prime powers.
    pub fn mangoldt() -> Self {
        SeriesFn::new("mangoldt", log_certificate(), |_, f| match f {
            [(p, a)] => (*p as f64).ln() / factorial_f64(*a),
            _ => 0.0,
        })
    }

    /// Wraps an exact function; the certificate is checked on `1..=check_to`
    /// and again at every term a series touches.
    pub fn from_arith(f: &ArithFn, growth: GrowthCertificate, check_to: u64) -> Result<Self> {
        let g = f.clone();
        let out = SeriesFn::new(f.name().to_string(), growth, move |n, _| {
            match (g.eval(n), xi(n)) {
                (Ok(v), Ok(x)) => (v / num::BigRational::from_integer(x))
                    .to_f64()
                    .unwrap_or(f64::NAN),
                _ => f64::NAN,
            }
        });
        let out = match f.table_bound() {
            Some(b) if matches!(f.definition(), crate::algebra::Definition::Table(_)) => {
                out.with_support(b)
            }
            _ => out,
        };
        for n in 1..=check_to.min(out.support.unwrap_or(u64::MAX)) {
            out.check_weight(n, out.weight(n)?)?;
        }
        Ok(out)
    }

    /// Weights of `f∘g`, i.e. the Dirichlet product of the two weights.
    pub fn binomial_product(&self, other: &SeriesFn) -> SeriesFn {
        let (a, b) = (self.clone(), other.clone());
        let mut out = SeriesFn::new(
            format!("{}∘{}", self.name, other.name),
            self.growth.dirichlet_product(&other.growth),
            move |n, factors| {
                let mut total = super::accum::Sum::default();
                for_each_split(factors, |d, fd, fc| {
                    total.add(a.weight_factored(d, fd) * b.weight_factored(n / d, fc));
                });
                total.value()
            },
        );
        if let (Some(x), Some(y)) = (self.support, other.support) {
            out.support = x.checked_mul(y);
        }
        if let (Some((cf, rf)), Some((cg, rg))) = (self.prime_values, other.prime_values) {
            if let (true, Some((lf, cert_f)), Some((lg, cert_g))) =
                (rf == rg, self.local.clone(), other.local.clone())
            {
                if !(cert_f.factorial && cert_g.factorial) {
                    return out;
                }
                out = out
                    .with_local(
                        LocalCertificate {
                            k: cert_f.k + cert_g.k,
                            rho: rf,
                            factorial: true,
                        },
                        move |p, nu| (0..=nu).map(|i| lf(p, i) * lg(p, nu - i)).sum(),
                    )
                    .with_prime_values(cf + cg, rf);
            }
        }
        out
    }
}

/// Visits each divisor `d` of `n` with the factorizations of `d` and `n/d`.
fn for_each_split(
    factors: &[(u64, u32)],
    mut visit: impl FnMut(u64, &[(u64, u32)], &[(u64, u32)]),
) {
    let mut exps = vec![0u32; factors.len()];
    let mut fd = Vec::with_capacity(factors.len());
    let mut fc = Vec::with_capacity(factors.len());
    loop {
        fd.clear();
        fc.clear();
        let mut d = 1u64;
        for (&(p, a), &e) in factors.iter().zip(&exps) {
            if e > 0 {
                fd.push((p, e));
                d *= p.pow(e);
            }
            if a > e {
                fc.push((p, a - e));
            }
        }
        visit(d, &fd, &fc);
        let mut i = 0;
        loop {
            if i == factors.len() {
                return;
            }
            if exps[i] < factors[i].1 {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

fn log_certificate() -> GrowthCertificate {
    GrowthCertificate::new(10.0 / std::f64::consts::E * (1.0 + 1e-12), 0.1)
        .unwrap()
        .nonnegative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtins;

    #[test]
    fn divisor_constant_bounds_tau() {
        for eps in [0.25, 0.5, 1.0 / 3.0] {
            let c = divisor_bound_constant(eps);
            for n in 1..20_000u64 {
                let tau = factorize(n).unwrap().divisor_count() as f64;
                assert!(tau <= c * (n as f64).powf(eps), "eps {eps}, n {n}");
            }
        }
        // attained at 2^5 3^3 5^2 7 11 13 for ε = 1/4
        let c = divisor_bound_constant(0.25);
        assert!((8.0..9.0).contains(&c));
    }

    #[test]
    fn builtin_weights() {
        let fac = factorize(72).unwrap();
        let f = fac.factors();
        assert_eq!(SeriesFn::one().weight_factored(72, f), 1.0 / 12.0);
        assert_eq!(SeriesFn::liouville().weight_factored(72, f), -1.0 / 12.0);
        assert_eq!(SeriesFn::xi().weight_factored(72, f), 1.0);
        assert_eq!(SeriesFn::moebius().weight(30).unwrap(), -1.0);
        assert_eq!(SeriesFn::r_omega(2.0).weight(12).unwrap(), 4.0);
        assert_eq!(SeriesFn::mangoldt_tilde().weight(8).unwrap(), 0.0);
        assert!((SeriesFn::mangoldt().weight(8).unwrap() - 2f64.ln() / 6.0).abs() < 1e-16);
    }

    #[test]
    fn builtin_certificates_hold() {
        for f in [
            SeriesFn::one(),
            SeriesFn::liouville(),
            SeriesFn::xi(),
            SeriesFn::delta(),
            SeriesFn::moebius(),
            SeriesFn::power(1.5),
            SeriesFn::r_omega(3.0),
            SeriesFn::r_omega(-2.0),
            SeriesFn::log(),
            SeriesFn::mangoldt_tilde(),
        ] {
            for n in 1..5000 {
                f.check_weight(n, f.weight(n).unwrap()).unwrap();
            }
            if let Some((local, cert)) = f.local() {
                for p in [2u64, 3, 5, 97] {
                    for nu in 0..30 {
                        let b = (cert.k * (p as f64).powf(cert.rho)).powi(nu as i32)
                            / if cert.factorial {
                                factorial_f64(nu)
                            } else {
                                1.0
                            };
                        assert!(local(p, nu).abs() <= b * (1.0 + 1e-12), "{}", f.name());
                    }
                }
            }
        }
    }

    #[test]
    fn from_arith_checks_certificate() {
        let tight = GrowthCertificate::new(1.0, 0.0).unwrap();
        assert!(SeriesFn::from_arith(&builtins::xi(), tight, 200).is_ok());
        assert!(matches!(
            SeriesFn::from_arith(
                &builtins::tau(),
                GrowthCertificate::new(1.5, 0.0).unwrap(),
                100
            ),
            Err(Error::Certificate(_))
        ));
        let f = SeriesFn::from_arith(&builtins::liouville(), tight, 100).unwrap();
        assert_eq!(f.weight(12).unwrap(), -0.5);
    }

    #[test]
    fn binomial_product_weights() {
        let two = SeriesFn::one().binomial_product(&SeriesFn::one());
        let direct = SeriesFn::r_omega(2.0);
        for n in 1..500 {
            assert!((two.weight(n).unwrap() - direct.weight(n).unwrap()).abs() < 1e-14);
        }
        assert_eq!(two.prime_values(), Some((2.0, 0.0)));
        let d = SeriesFn::liouville().binomial_product(&SeriesFn::one());
        for n in 2..500 {
            assert!(d.weight(n).unwrap().abs() < 1e-14);
        }
    }
}
