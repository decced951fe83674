//! The binomial von Mangoldt function `Λ̃` and exact log-linear identities.

use num::{BigRational, One};

use crate::error::Result;
use crate::numeric::{eratosthenes, factorize, require_positive, weight_from_exps, LogLinear};

/// `Λ̃(n) = log p` if `n = p` is prime, else 0.
pub fn mangoldt_tilde(n: u64) -> Result<LogLinear> {
    require_positive(n, "mangoldt_tilde")?;
    Ok(match factorize(n)?.factors() {
        [(p, 1)] => LogLinear::log_prime(*p),
        _ => LogLinear::zero(),
    })
}

/// `Λ(n) = log p` if `n = p^ν`, else 0.
pub fn mangoldt(n: u64) -> Result<LogLinear> {
    require_positive(n, "mangoldt")?;
    Ok(match factorize(n)?.factors() {
        [(p, _)] => LogLinear::log_prime(*p),
        _ => LogLinear::zero(),
    })
}

/// Exact evaluation of the `Λ̃` identities at one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogIdentityReport {
    pub n: u64,
    /// `(Λ̃ ∘ I)(n)`.
    pub convolution: LogLinear,
    pub log_n: LogLinear,
    /// `Σ_{d|n} w(n,d) (-1)^{Ω(n/d)} log d`; only evaluated when `Ω(n) > 1`.
    pub zero_sum_quotient: Option<LogLinear>,
    /// `Σ_{d|n} w(n,d) (-1)^{Ω(d)} log d`; only evaluated when `Ω(n) > 1`.
    pub zero_sum_divisor: Option<LogLinear>,
}

impl LogIdentityReport {
    pub fn holds(&self) -> bool {
        self.convolution == self.log_n
            && self
                .zero_sum_quotient
                .as_ref()
                .is_none_or(LogLinear::is_zero)
            && self
                .zero_sum_divisor
                .as_ref()
                .is_none_or(LogLinear::is_zero)
    }
}

/// Evaluates `Λ̃ ∘ I = log` and the two composite zero-sums at `n`, all in
/// exact log-linear arithmetic.
pub fn verify_log_identities(n: u64) -> Result<LogIdentityReport> {
    require_positive(n, "verify_log_identities")?;
    let fac = factorize(n)?;
    let omega = fac.big_omega();
    let composite = omega > 1;
    let mut convolution = LogLinear::zero();
    let mut quotient = LogLinear::zero();
    let mut divisor = LogLinear::zero();
    let primes: Vec<u64> = fac.factors().iter().map(|&(p, _)| p).collect();
    fac.for_each_divisor(|_, exps| {
        let w = BigRational::from_integer(weight_from_exps(&fac, exps).into());
        let omega_d: u32 = exps.iter().sum();
        // log d and Λ̃(d)
        let mut log_d = LogLinear::zero();
        for (&p, &e) in primes.iter().zip(exps) {
            if e > 0 {
                log_d.add_term(p, BigRational::from_integer(e.into()));
            }
        }
        if omega_d == 1 {
            convolution += &log_d.scale(&w);
        }
        if composite {
            let sign = |k: u32| {
                if k.is_multiple_of(2) {
                    BigRational::one()
                } else {
                    -BigRational::one()
                }
            };
            quotient += &log_d.scale(&(&w * sign(omega - omega_d)));
            divisor += &log_d.scale(&(&w * sign(omega_d)));
        }
    });
    Ok(LogIdentityReport {
        n,
        convolution,
        log_n: LogLinear::log_of(n)?,
        zero_sum_quotient: composite.then_some(quotient),
        zero_sum_divisor: composite.then_some(divisor),
    })
}

fn sum_of(x: u64, f: impl Fn(u64) -> Result<LogLinear>) -> Result<LogLinear> {
    let mut acc = LogLinear::zero();
    for n in 1..=x {
        acc += &f(n)?;
    }
    Ok(acc)
}

/// `θ(x) = Σ_{n <= x} Λ̃(n)`.
pub fn chebyshev_theta(x: u64) -> Result<LogLinear> {
    require_positive(x, "chebyshev_theta")?;
    sum_of(x, mangoldt_tilde)
}

/// `θ(x) = Σ_{p <= x} log p` over a prime sieve.
pub fn chebyshev_theta_direct(x: u64) -> Result<LogLinear> {
    require_positive(x, "chebyshev_theta_direct")?;
    let mut acc = LogLinear::zero();
    for p in eratosthenes(x) {
        acc.add_term(p, BigRational::one());
    }
    Ok(acc)
}

/// `ψ(x) = Σ_{n <= x} Λ(n)`.
pub fn chebyshev_psi(x: u64) -> Result<LogLinear> {
    require_positive(x, "chebyshev_psi")?;
    sum_of(x, mangoldt)
}

/// `ψ(x) = Σ_{p^ν <= x} log p` counted over prime powers.
pub fn chebyshev_psi_direct(x: u64) -> Result<LogLinear> {
    require_positive(x, "chebyshev_psi_direct")?;
    let mut acc = LogLinear::zero();
    for p in eratosthenes(x) {
        let mut count = 0u64;
        let mut q = p;
        loop {
            count += 1;
            match q.checked_mul(p) {
                Some(next) if next <= x => q = next,
                _ => break,
            }
        }
        acc.add_term(p, BigRational::from_integer(count.into()));
    }
    Ok(acc)
}
