//! Riemann and prime zeta functions on the real axis.

use super::accum::Sum;
use super::{require_gt, SeriesApprox};
use crate::error::{invalid, Result};
use crate::numeric::{eratosthenes, moebius};

const EPS: f64 = f64::EPSILON;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default prime cutoff for direct prime sums and Euler products.
pub const DEFAULT_PRIME_CUTOFF: u64 = 10_000_000;

/// `B_2k / (2k)!` for `k = 1..=12`.
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = {
    const B: [(f64, f64); 12] = [
        (1.0, 6.0),
        (-1.0, 30.0),
        (1.0, 42.0),
        (-1.0, 30.0),
        (5.0, 66.0),
        (-691.0, 2730.0),
        (7.0, 6.0),
        (-3617.0, 510.0),
        (43867.0, 798.0),
        (-174611.0, 330.0),
        (854513.0, 138.0),
        (-236364091.0, 2730.0),
    ];
    let mut out = [0.0; 12];
    let mut fact = 1.0;
    let mut k = 0;
    while k < 12 {
        let m = 2 * k + 2;
        fact *= ((m - 1) * m) as f64;
        out[k] = B[k].0 / B[k].1 / fact;
        k += 1;
    }
    out
};

const EM_BASE: u64 = 20;
const EM_TERMS: usize = 10;

/// `Σ_{n >= a} n^{-s}` for real `s > 1` and integer `a >= 1`, via a direct
/// sum up to 20 followed by Euler–Maclaurin with ten Bernoulli terms.
pub fn hurwitz_tail(s: f64, a: u64) -> Result<SeriesApprox> {
    require_gt(s, 1.0, "s")?;
    if a == 0 {
        return Err(invalid("hurwitz_tail: a must be positive"));
    }
    let m = a.max(EM_BASE);
    let mut sum = Sum::default();
    for n in a..m {
        sum.add((n as f64).powf(-s));
    }
    let mf = m as f64;
    let m_s = mf.powf(-s);
    sum.add(mf * m_s / (s - 1.0));
    sum.add(m_s / 2.0);
    let inv_m2 = 1.0 / (mf * mf);
    let mut rising = s;
    let mut power = m_s / mf;
    let mut last = 0.0;
    for (k, &b) in BERNOULLI_OVER_FACTORIAL
        .iter()
        .enumerate()
        .take(EM_TERMS + 1)
    {
        if k > 0 {
            let j = 2.0 * k as f64;
            rising *= (s + j - 1.0) * (s + j);
            power *= inv_m2;
        }
        let term = b * rising * power;
        if k == EM_TERMS {
            last = term;
        } else {
            sum.add(term);
        }
    }
    Ok(SeriesApprox {
        value: sum.value(),
        error_bound: 2.0 * last.abs() + sum.rounding(8.0),
        terms_used: m - a + EM_TERMS as u64,
    })
}

/// `ζ(s) - 1`, accurate in relative terms even for large `s`.
pub fn zeta_minus_one(s: f64) -> Result<SeriesApprox> {
    hurwitz_tail(s, 2)
}

/// `ζ(s)` for real `s > 1`.
pub fn riemann_zeta_real(s: f64) -> Result<SeriesApprox> {
    let t = zeta_minus_one(s)?;
    let value = 1.0 + t.value;
    Ok(SeriesApprox {
        value,
        error_bound: t.error_bound + EPS * value,
        terms_used: t.terms_used,
    })
}

/// Generalized exponential integral `E_n(x) = ∫_1^∞ e^{-xt} t^{-n} dt`
/// for `n >= 1`, `x > 0`.
pub fn expint(n: u32, x: f64) -> f64 {
    const MAXIT: u32 = 1000;
    const TINY: f64 = 1e-300;
    assert!(n >= 1 && x > 0.0, "expint needs n >= 1 and x > 0");
    let nm1 = n - 1;
    if x > 1.0 {
        let mut b = x + n as f64;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=MAXIT {
            let an = -(i as f64) * (nm1 + i) as f64;
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        h * (-x).exp()
    } else {
        let mut ans = if nm1 != 0 {
            1.0 / nm1 as f64
        } else {
            -x.ln() - EULER_GAMMA
        };
        let mut fact = 1.0;
        for i in 1..=MAXIT {
            fact *= -x / i as f64;
            let del = if i != nm1 {
                -fact / (i as f64 - nm1 as f64)
            } else {
                let psi = -EULER_GAMMA + (1..=nm1).map(|k| 1.0 / k as f64).sum::<f64>();
                fact * (-x.ln() + psi)
            };
            ans += del;
            if del.abs() < ans.abs() * EPS {
                break;
            }
        }
        ans
    }
}

/// Enclosure `[lo, hi]` of `Σ_{p > P} p^{-s}` given `π(P)`.
///
/// Partial summation turns the tail into `-π(P)P^{-s} + s∫_P^∞ π(t)t^{-s-1}dt`,
/// and explicit bounds `x/ln x · Σ a_k/ln^k x` on `π(x)` reduce the
/// integral to exponential integrals. Lower bounds: `π(x) > x/ln x`
/// (`x >= 17`), `π(x) >= x/ln x (1 + 1/ln x)` (`x >= 599`). Upper bounds:
/// `π(x) < 1.25506 x/ln x` (`x > 1`), `π(x) <= x/ln x (1 + 1/ln x +
/// 2.51/ln² x)` (`x >= 355991`).
pub fn prime_tail_enclosure(s: f64, p_cut: u64, pi_p: u64) -> Result<(f64, f64)> {
    require_gt(s, 1.0, "s")?;
    if p_cut < 17 {
        return Err(invalid("prime cutoff must be at least 17"));
    }
    let lower: &[f64] = if p_cut >= 599 { &[1.0, 1.0] } else { &[1.0] };
    let upper: &[f64] = if p_cut >= 355_991 {
        &[1.0, 1.0, 2.51]
    } else {
        &[1.25506]
    };
    let pf = p_cut as f64;
    let ln_p = pf.ln();
    let u0 = (s - 1.0) * ln_p;
    let j = |k: usize| ln_p.powi(1 - k as i32) * expint(k as u32, u0);
    let integral = |coeffs: &[f64]| -> f64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * j(i + 1))
            .sum::<f64>()
            * s
    };
    let boundary = pi_p as f64 * pf.powf(-s);
    let (il, iu) = (integral(lower), integral(upper));
    let slack = 1e-12 * (boundary + iu);
    let lo = (il - boundary - slack).max(0.0);
    let hi = iu - boundary + slack;
    Ok((lo, hi))
}

/// `ζ_P(s) = Σ_{p <= P} p^{-s}` plus an enclosure of the tail.
pub fn prime_zeta_direct(s: f64, p_cut: u64) -> Result<SeriesApprox> {
    require_gt(s, 1.0, "s")?;
    let primes = eratosthenes(p_cut);
    let mut sum = Sum::default();
    for &p in &primes {
        sum.add((p as f64).powf(-s));
    }
    let (lo, hi) = prime_tail_enclosure(s, p_cut, primes.len() as u64)?;
    Ok(SeriesApprox {
        value: sum.value() + (lo + hi) / 2.0,
        error_bound: (hi - lo) / 2.0 + sum.rounding(4.0) + 2.0 * EPS * sum.value(),
        terms_used: primes.len() as u64,
    })
}

/// Glaisher terms `n = 1..=M` with `M s <= 60 < (M+1) s`, plus the tail
/// bound `Σ_{n > M} |log ζ(ns)|/n <= 2·2^{-(M+1)s} / ((M+1)(1 - 2^{-s}))`.
fn glaisher_terms(s: f64) -> Result<(Vec<(u64, f64, f64)>, f64)> {
    require_gt(s, 1.0, "s")?;
    let m = ((60.0 / s).floor() as u64).max(1);
    let mut terms = Vec::new();
    for n in 1..=m {
        let mu = moebius(n)?;
        if mu == 0 {
            continue;
        }
        let z = zeta_minus_one(n as f64 * s)?;
        let log = z.value.ln_1p();
        let err = z.error_bound / (1.0 + z.value - z.error_bound) + 2.0 * EPS * log.abs();
        terms.push((n, mu as f64 * log / n as f64, err / n as f64));
    }
    let next = (m + 1) as f64;
    let tail = 2.0 * (-next * s).exp2() / (next * (1.0 - (-s).exp2()));
    Ok((terms, tail))
}

/// `ζ_P(s)` by the Glaisher formula `Σ μ(n)/n · log ζ(ns)`.
pub fn prime_zeta(s: f64) -> Result<SeriesApprox> {
    let (terms, tail) = glaisher_terms(s)?;
    let mut sum = Sum::default();
    let mut err = tail;
    for &(_, t, e) in &terms {
        sum.add(t);
        err += e;
    }
    Ok(SeriesApprox {
        value: sum.value(),
        error_bound: err + sum.rounding(4.0),
        terms_used: terms.len() as u64,
    })
}

/// `ζ̃(s) = exp(ζ_P(s))`.
pub fn zeta_tilde(s: f64) -> Result<SeriesApprox> {
    Ok(prime_zeta(s)?.exp())
}

/// `ζ̃(s)` as the truncated product `Π_n ζ(ns)^{μ(n)/n}`.
pub fn zeta_tilde_product(s: f64) -> Result<SeriesApprox> {
    let (terms, tail) = glaisher_terms(s)?;
    let mut value = 1.0;
    let mut log_err = tail;
    for &(n, _, e) in &terms {
        let mu = moebius(n)? as f64;
        let z = 1.0 + zeta_minus_one(n as f64 * s)?.value;
        value *= z.powf(mu / n as f64);
        log_err += e;
    }
    let rounding = 4.0 * (terms.len() as f64 + 1.0) * EPS;
    Ok(SeriesApprox {
        value,
        error_bound: value * (log_err.exp_m1() + rounding),
        terms_used: terms.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_classical_values() {
        let z2 = riemann_zeta_real(2.0).unwrap();
        assert!((z2.value - PI * PI / 6.0).abs() < 1e-12);
        assert!(z2.error_bound <= 1e-14);
        let z4 = riemann_zeta_real(4.0).unwrap();
        assert!((z4.value - PI.powi(4) / 90.0).abs() < 1e-12);
        assert!(z4.error_bound <= 1e-14);
        let z40 = riemann_zeta_real(40.0).unwrap();
        assert!((z40.value - (1.0 + 2f64.powi(-40))).abs() < 1e-14);
        assert!(riemann_zeta_real(1.0).is_err());
        assert!(riemann_zeta_real(0.5).is_err());
        // ζ(3) to 16 digits
        let z3 = riemann_zeta_real(3.0).unwrap();
        assert!((z3.value - 1.202_056_903_159_594_3).abs() < 1e-15);
        let z = riemann_zeta_real(1.1).unwrap();
        assert!((z.value - 10.584_448_464_950_81).abs() < 1e-12);
    }

    #[test]
    fn tails_match_direct_sums() {
        let t = hurwitz_tail(2.0, 1001).unwrap();
        let partial: f64 = (1..=1000).map(|n| (n as f64).powi(-2)).sum();
        assert!((partial + t.value - PI * PI / 6.0).abs() < 1e-13);
        let t3 = hurwitz_tail(3.0, 5).unwrap();
        let direct = riemann_zeta_real(3.0).unwrap().value - 1.0 - 0.125 - 1.0 / 27.0 - 1.0 / 64.0;
        assert!((t3.value - direct).abs() < 1e-14);
    }

    #[test]
    fn expint_values() {
        // E1(1) = 0.21938393439552..., E1(0.5) = 0.55977359477616..., E2(2) = 0.03753426182049...
        assert!((expint(1, 1.0) - 0.219_383_934_395_520_3).abs() < 1e-14);
        assert!((expint(1, 0.5) - 0.559_773_594_776_160_8).abs() < 1e-14);
        assert!((expint(2, 2.0) - 0.037_534_261_820_49).abs() < 1e-13);
        let x: f64 = 16.0;
        let e3 = expint(3, x);
        let e2 = expint(2, x);
        assert!(((e3 * 2.0 + x * e2) - (-x).exp()).abs() < 1e-20);
    }

    #[test]
    fn explicit_prime_count_bounds_hold_near_cutoffs() {
        let primes = eratosthenes(2_000_000);
        for (i, &p) in primes.iter().enumerate().skip(1) {
            let x = p as f64;
            let l = x.ln();
            let pi = (i + 1) as f64;
            let pi_before = i as f64;
            if p >= 17 {
                assert!(pi > x / l);
            }
            if p >= 599 {
                assert!(pi >= x / l * (1.0 + 1.0 / l));
            }
            // just below p the count is i
            let y = x - 0.5;
            let ly = y.ln();
            assert!(pi_before < 1.25506 * y / ly);
            if y >= 355_991.0 {
                assert!(pi_before <= y / ly * (1.0 + 1.0 / ly + 2.51 / (ly * ly)));
            }
        }
    }

    #[test]
    fn prime_tail_enclosure_is_consistent() {
        let primes = eratosthenes(4_000_000);
        let cut = 1_000_000u64;
        let pi = primes.partition_point(|&p| p <= cut) as u64;
        let (lo, hi) = prime_tail_enclosure(2.0, cut, pi).unwrap();
        let known: f64 = primes
            .iter()
            .filter(|&&p| p > cut)
            .map(|&p| (p as f64).powi(-2))
            .sum();
        assert!(known <= hi);
        assert!(hi - lo < 1e-8);
        assert!(lo > 0.5 * known);
    }

    #[test]
    fn prime_zeta_two_ways() {
        let g = prime_zeta(2.0).unwrap();
        let d = prime_zeta_direct(2.0, 1_000_000).unwrap();
        assert!((g.value - 0.452_247_420_041_065_5).abs() < 1e-12);
        assert!(g.overlaps(&d));
        assert!((g.value - d.value).abs() < 1e-8);
        let big = prime_zeta(40.0).unwrap();
        let dom = 2f64.powi(-40) + 3f64.powi(-40);
        assert!((big.value - dom).abs() < 1e-20);
        assert!(prime_zeta(1.0).is_err());
    }

    #[test]
    fn zeta_tilde_product_matches_exp() {
        let a = zeta_tilde(2.0).unwrap();
        let b = zeta_tilde_product(2.0).unwrap();
        assert!(a.overlaps(&b));
        assert!((a.value - b.value).abs() < 1e-12);
    }
}
