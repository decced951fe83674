//! Segmented factorization sieve for long numeric sums.

use super::factor::eratosthenes;

const SEGMENT: usize = 1 << 14;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Calls `visit(n, factors)` for every `n` in `lo..=hi` in increasing order,
/// with `factors` the canonical factorization of `n`.
pub fn for_each_factored(lo: u64, hi: u64, visit: impl FnMut(u64, &[(u64, u32)])) {
    let lo = lo.max(1);
    if lo > hi {
        return;
    }
    // 32-bit division is markedly faster; most sums stay below 2^32
    if hi <= u32::MAX as u64 {
        sieve_segments::<u32>(lo, hi, visit)
    } else {
        sieve_segments::<u64>(lo, hi, visit)
    }
}

trait Residual: Copy + Default {
    /// Bound on the number of distinct prime factors.
    const MAX_DISTINCT: usize;
    fn from_u64(n: u64) -> Self;
    fn to_u64(self) -> u64;
    /// Divides out every factor `p`, returning the multiplicity.
    fn strip(&mut self, p: u64) -> u32;
}

impl Residual for u32 {
    const MAX_DISTINCT: usize = 10;
    fn from_u64(n: u64) -> Self {
        n as u32
    }
    fn to_u64(self) -> u64 {
        self as u64
    }
    #[inline]
    fn strip(&mut self, p: u64) -> u32 {
        let p = p as u32;
        let mut e = 0;
        while (*self).is_multiple_of(p) {
            *self /= p;
            e += 1;
        }
        e
    }
}

impl Residual for u64 {
    const MAX_DISTINCT: usize = 16;
    fn from_u64(n: u64) -> Self {
        n
    }
    fn to_u64(self) -> u64 {
        self
    }
    #[inline]
    fn strip(&mut self, p: u64) -> u32 {
        let mut e = 0;
        while (*self).is_multiple_of(p) {
            *self /= p;
            e += 1;
        }
        e
    }
}

fn sieve_segments<R: Residual>(lo: u64, hi: u64, mut visit: impl FnMut(u64, &[(u64, u32)])) {
    let stride = R::MAX_DISTINCT;
    let primes = eratosthenes(isqrt(hi));
    let mut residual = [R::default(); SEGMENT];
    let mut counts = vec![0u8; SEGMENT];
    let mut slots = vec![(0u64, 0u32); SEGMENT * stride];
    let mut start = lo;
    loop {
        let end = hi.min(start + SEGMENT as u64 - 1);
        let len = (end - start + 1) as usize;
        for (i, r) in residual[..len].iter_mut().enumerate() {
            *r = R::from_u64(start + i as u64);
        }
        counts[..len].fill(0);
        for &p in &primes {
            if p * p > end {
                break;
            }
            let first = start.div_ceil(p) * p;
            let mut j = (first - start) as usize;
            while j < len {
                let e = residual[j].strip(p);
                let c = counts[j] as usize;
                slots[j * stride + c] = (p, e);
                counts[j] += 1;
                j += p as usize;
            }
        }
        for j in 0..len {
            let r = residual[j].to_u64();
            if r > 1 {
                let c = counts[j] as usize;
                slots[j * stride + c] = (r, 1);
                counts[j] += 1;
            }
            let c = counts[j] as usize;
            visit(start + j as u64, &slots[j * stride..j * stride + c]);
        }
        if end == hi {
            break;
        }
        start = end + 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::factorize;

    #[test]
    fn matches_direct_factorization() {
        let mut expected = 1;
        for_each_factored(1, 200_000, |n, fac| {
            assert_eq!(n, expected);
            expected += 1;
            assert_eq!(fac, factorize(n).unwrap().factors(), "{n}");
        });
        assert_eq!(expected, 200_001);
    }

    #[test]
    fn offset_ranges() {
        let lo = 10_000_000_000u64;
        for_each_factored(lo, lo + 5000, |n, fac| {
            assert_eq!(fac, factorize(n).unwrap().factors(), "{n}");
        });
    }
}
