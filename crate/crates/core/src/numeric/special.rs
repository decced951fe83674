//! Exact special functions: ξ, μ, λ, Ω, factorials, binomial and multinomial
//! coefficients.

use num::{BigInt, One};

use super::factor::{factorize, Factorization};
use crate::error::{invalid, Result};

pub fn factorial(k: u32) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)` as a `u64`; exact for every `n <= 62`.
pub(crate) fn binomial_u64(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let mut c: u64 = 1;
    for i in 0..k {
        // c * (n - i) is divisible by (i + 1); u128 keeps it exact
        c = ((c as u128 * (n as u64 - i) as u128) / (i as u128 + 1)) as u64;
    }
    c
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `ξ(n) = Π_p ν_p(n)!`.
pub fn xi(n: u64) -> Result<BigInt> {
    Ok(xi_of(&factorize(n)?))
}

pub fn xi_of(f: &Factorization) -> BigInt {
    f.factors()
        .iter()
        .fold(BigInt::one(), |acc, &(_, a)| acc * factorial(a))
}

pub fn moebius(n: u64) -> Result<i8> {
    Ok(moebius_of(&factorize(n)?))
}

pub fn moebius_of(f: &Factorization) -> i8 {
    if !f.is_squarefree() {
        0
    } else if f.factors().len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn liouville(n: u64) -> Result<i8> {
    Ok(if factorize(n)?.big_omega() % 2 == 0 {
        1
    } else {
        -1
    })
}

pub fn big_omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.big_omega())
}

/// `total! / Π parts_i!`.
pub fn multinomial(total: u32, parts: &[u32]) -> Result<BigInt> {
    let sum: u64 = parts.iter().map(|&p| p as u64).sum();
    if sum != total as u64 {
        return Err(invalid(format!(
            "multinomial: parts sum to {sum}, expected {total}"
        )));
    }
    // product of binomials C(remaining, part) avoids the big division
    let mut remaining = total;
    let mut out = BigInt::one();
    for &p in parts {
        out *= binomial(remaining, p);
        remaining -= p;
    }
    Ok(out)
}

/// The binomial-convolution weight `Π_p C(ν_p(n), ν_p(d))` for `d | n`.
pub fn binomial_weight(n: u64, d: u64) -> Result<BigInt> {
    if n == 0 || d == 0 || !n.is_multiple_of(d) {
        return Err(invalid(format!("binomial_weight: {d} does not divide {n}")));
    }
    let fac = factorize(n)?;
    let mut out = BigInt::one();
    let mut rest = d;
    for &(p, a) in fac.factors() {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        out *= binomial(a, e);
    }
    Ok(out)
}

/// Weight for a divisor given by its exponent vector against `n`'s factors.
///
/// The weight never exceeds `2^Ω(n) <= n`, so it always fits a `u64`.
pub(crate) fn weight_from_exps(n: &Factorization, exps: &[u32]) -> u64 {
    n.factors()
        .iter()
        .zip(exps)
        .map(|(&(_, a), &e)| binomial_u64(a, e))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_examples() {
        assert_eq!(xi(1).unwrap(), BigInt::from(1));
        assert_eq!(xi(8).unwrap(), BigInt::from(6));
        assert_eq!(xi(12).unwrap(), BigInt::from(2));
        // 2^25 needs 25! which overflows u64
        assert_eq!(xi(1 << 25).unwrap(), factorial(25));
        assert!(xi(0).is_err());
    }

    #[test]
    fn sign_functions() {
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(liouville(12).unwrap(), -1);
        assert_eq!(big_omega(1).unwrap(), 0);
        assert_eq!(big_omega(360).unwrap(), 6);
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(5, &[0, 5]).unwrap(), BigInt::from(1));
        assert!(multinomial(5, &[1, 2]).is_err());
        assert_eq!(
            multinomial(10, &[3, 3, 4]).unwrap(),
            factorial(10) / (factorial(3) * factorial(3) * factorial(4))
        );
    }

    #[test]
    fn weight_examples() {
        assert_eq!(binomial_weight(12, 2).unwrap(), BigInt::from(2));
        assert_eq!(binomial_weight(12, 6).unwrap(), BigInt::from(2));
        assert_eq!(binomial_weight(360, 1).unwrap(), BigInt::from(1));
        assert!(binomial_weight(12, 5).is_err());
    }

    #[test]
    fn binomial_u64_matches_bigint() {
        for n in 0..=62 {
            for k in 0..=n {
                assert_eq!(BigInt::from(binomial_u64(n, k)), binomial(n, k));
            }
        }
    }

    #[test]
    fn xi_is_supermultiplicative_by_divisibility() {
        for m in 1..=300u64 {
            for n in 1..=300u64 {
                let prod = xi(m).unwrap() * xi(n).unwrap();
                assert_eq!(xi(m * n).unwrap() % prod, BigInt::from(0));
            }
        }
    }

    #[test]
    fn xi_one_iff_squarefree() {
        for n in 1..=100_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(xi_of(&f) == BigInt::one(), moebius_of(&f) != 0, "{n}");
        }
    }

    #[test]
    fn weight_row_sums_to_two_pow_omega() {
        for n in 1..=3000u64 {
            let f = factorize(n).unwrap();
            let mut total = 0u64;
            f.for_each_divisor(|_, e| total += weight_from_exps(&f, e));
            assert_eq!(total, 1 << f.big_omega());
        }
    }
}
