//! Prime sieves, canonical factorizations and divisor enumeration.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::error::{invalid, Error, Result};

/// Default bound of the smallest-prime-factor table.
pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

static SIEVE_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_SIEVE_BOUND);
static SIEVE: OnceLock<SpfSieve> = OnceLock::new();

/// Smallest-prime-factor table over `0..=bound`, built once and shared.
struct SpfSieve {
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl SpfSieve {
    fn build(bound: u64) -> Self {
        let bound = bound.max(2) as usize;
        let mut spf = vec![0u32; bound + 1];
        let mut primes = Vec::new();
        for i in 2..=bound {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p as u32 > si || m > bound {
                    break;
                }
                spf[m] = p as u32;
            }
        }
        SpfSieve { spf, primes }
    }

    fn bound(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }
}

fn sieve() -> &'static SpfSieve {
    SIEVE.get_or_init(|| SpfSieve::build(SIEVE_BOUND.load(Ordering::Acquire)))
}

/// Sets the bound of the shared smallest-prime-factor table.
///
/// Must be called before the first factorization; afterwards only the bound
/// already in use is accepted.
pub fn configure_sieve_bound(bound: u64) -> Result<()> {
    if bound < 2 {
        return Err(invalid("sieve bound must be at least 2"));
    }
    match SIEVE.get() {
        Some(s) if s.bound() != bound.max(2) => Err(invalid(format!(
            "sieve already initialized with bound {}",
            s.bound()
        ))),
        Some(_) => Ok(()),
        None => {
            SIEVE_BOUND.store(bound, Ordering::Release);
            Ok(())
        }
    }
}

/// Bound of the shared sieve (builds it if needed).
pub fn sieve_bound() -> u64 {
    sieve().bound()
}

/// Canonical prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from prime-exponent pairs, checking the invariants.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        let mut prev = 1;
        for &(p, a) in &factors {
            if p <= prev || a == 0 || !is_prime(p) {
                return Err(invalid(format!("bad factor ({p}, {a})")));
            }
            prev = p;
            for _ in 0..a {
                n = n
                    .checked_mul(p)
                    .ok_or_else(|| invalid("factorization overflows u64"))?;
            }
        }
        Ok(Factorization { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Exponent of `p` in `n`.
    pub fn nu(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, a)| a)
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, a)| a).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a == 1)
    }

    /// Sorted divisors, generated from the exponents.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.divisor_count());
        self.for_each_divisor(|d, _| out.push(d));
        out.sort_unstable();
        out
    }

    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|&(_, a)| a as usize + 1).product()
    }

    /// Calls `visit(d, exps)` for every divisor `d`, where `exps[i]` is the
    /// exponent of the `i`-th prime of `self` in `d`. Order is unspecified.
    pub fn for_each_divisor(&self, mut visit: impl FnMut(u64, &[u32])) {
        let mut exps = vec![0u32; self.factors.len()];
        let mut d = 1u64;
        loop {
            visit(d, &exps);
            // odometer increment
            let mut i = 0;
            loop {
                if i == exps.len() {
                    return;
                }
                let (p, a) = self.factors[i];
                if exps[i] < a {
                    exps[i] += 1;
                    d *= p;
                    break;
                }
                d /= p.pow(exps[i]);
                exps[i] = 0;
                i += 1;
            }
        }
    }
}

/// Canonical factorization of `n >= 1`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(invalid("factorize: n must be positive"));
    }
    let s = sieve();
    let mut factors = Vec::new();
    let mut m = n;
    if m <= s.bound() {
        while m > 1 {
            let p = s.spf[m as usize] as u64;
            let mut a = 0;
            while m.is_multiple_of(p) {
                m /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        return Ok(Factorization { n, factors });
    }
    let mut push = |m: &mut u64, p: u64| {
        let mut a = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            a += 1;
        }
        if a > 0 {
            factors.push((p, a));
        }
    };
    let mut last = 1;
    for &p in &s.primes {
        if p.saturating_mul(p) > m {
            break;
        }
        push(&mut m, p);
        last = p;
    }
    // Beyond the sieved primes fall back to odd trial divisors.
    if last == *s.primes.last().unwrap_or(&2) {
        let mut q = last + 2;
        while q.saturating_mul(q) <= m {
            push(&mut m, q);
            q += 2;
        }
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).is_ok_and(|f| f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// Primes `<= x` by the sieve of Eratosthenes.
pub fn primes_up_to(x: u64) -> Result<Vec<u64>> {
    if x == 0 {
        return Err(invalid("primes_up_to: x must be positive"));
    }
    let s = sieve();
    if x <= s.bound() {
        let end = s.primes.partition_point(|&p| p <= x);
        return Ok(s.primes[..end].to_vec());
    }
    Ok(eratosthenes(x))
}

/// Plain odd-only sieve; used for prime sums far beyond the shared table.
pub(crate) fn eratosthenes(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    let x = x as usize;
    // index i represents 2i+1
    let half = x.div_ceil(2);
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= x {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(x / 10 + 8);
    primes.push(2);
    primes.extend(
        composite
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| !c)
            .map(|(i, _)| (2 * i + 1) as u64),
    );
    primes
}

/// Sorted divisors of `n`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

pub(crate) fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(format!(
            "{what}: n must be positive"
        )))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            if a > 0 {
                out.push((p, a));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn small_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).unwrap().factors(), &[(97, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 1..5000u64 {
            assert_eq!(
                factorize(n).unwrap().factors(),
                trial_division(n).as_slice()
            );
        }
        // above the sieve bound
        for n in [
            1_000_003u64,
            999_983 * 999_979,
            2u64.pow(40) * 3,
            600_851_475_143,
        ] {
            assert_eq!(
                factorize(n).unwrap().factors(),
                trial_division(n).as_slice(),
                "{n}"
            );
        }
    }

    #[test]
    fn reassembles_up_to_a_million() {
        for n in 1..=1_000_000u64 {
            let f = factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, a)| p.pow(a)).product();
            assert_eq!(prod, n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        for n in 1..500u64 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n).unwrap(), brute);
        }
    }

    #[test]
    fn prime_lists() {
        assert_eq!(primes_up_to(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(1).unwrap(), Vec::<u64>::new());
        assert_eq!(eratosthenes(100), primes_up_to(100).unwrap());
        assert_eq!(eratosthenes(2_000_000).len(), 148_933);
    }

    #[test]
    fn from_factors_checks_invariants() {
        assert_eq!(
            Factorization::from_factors(vec![(2, 2), (3, 1)])
                .unwrap()
                .n(),
            12
        );
        assert!(Factorization::from_factors(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_factors(vec![(4, 1)]).is_err());
        assert!(Factorization::from_factors(vec![(2, 0)]).is_err());
    }
}
