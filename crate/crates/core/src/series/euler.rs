//! Truncated Euler products of exponential Dirichlet series.

use super::accum::Sum;
use super::functions::{factorial_f64, SeriesFn};
use super::zeta::prime_tail_enclosure;
use super::{require_gt, SeriesApprox};
use crate::error::{invalid, Error, Result};
use crate::numeric::eratosthenes;

const EPS: f64 = f64::EPSILON;

/// Default cap on the exponent in each local factor.
pub const DEFAULT_EXPONENT_CUTOFF: u32 = 100;

/// `Π_{p <= P} Σ_{ν <= A} f(p^ν)/(ν! p^{νs})` for multiplicative `f`, with
/// bounds for the dropped exponents and primes taken from the local
/// certificate. Local sums stop early once the remainder is below `ε²`.
///
/// When `f` is completely multiplicative with `f(p) = c p^ρ`, the primes
/// beyond `P` contribute exactly `exp(c Σ_{p>P} p^{ρ-s})`, which is
/// enclosed using explicit prime-counting bounds.
pub fn euler_product_exp_dirichlet(
    f: &SeriesFn,
    s: f64,
    p_cut: u64,
    a_cut: u32,
) -> Result<SeriesApprox> {
    let (local, cert) = f
        .local()
        .ok_or_else(|| invalid(format!("{} has no multiplicative structure", f.name())))?;
    require_gt(s - cert.rho, 1.0, "s - ρ")?;
    if a_cut == 0 {
        return Err(invalid("exponent cutoff must be positive"));
    }
    let primes = eratosthenes(p_cut);
    if primes.is_empty() {
        return Err(invalid("prime cutoff must be at least 2"));
    }
    let log_fact: Vec<f64> = (0..=a_cut + 1).map(|k| factorial_f64(k).ln()).collect();
    let mut log_sum = Sum::default();
    let mut negative = false;
    let mut rel_trunc = 0.0;
    let mut log_rounding = 0.0;
    for &p in &primes {
        let pf = p as f64;
        let ps = pf.powf(-s);
        let x = cert.k * pf.powf(cert.rho - s);
        let bound_at = |nu: u32| -> f64 {
            // remainder Σ_{μ > ν} of the certificate majorant
            if x == 0.0 {
                0.0
            } else if cert.factorial {
                ((nu + 1) as f64 * x.ln() - log_fact[(nu + 1) as usize]).exp() * x.exp()
            } else if x < 1.0 {
                x.powi(nu as i32 + 1) / (1.0 - x)
            } else {
                f64::INFINITY
            }
        };
        let mut excess = Sum::default();
        let mut pw = 1.0;
        let mut last = a_cut;
        for nu in 1..=a_cut {
            pw *= ps;
            let w = local(p, nu);
            let majorant = (cert.k * pf.powf(cert.rho)).powi(nu as i32)
                / if cert.factorial {
                    factorial_f64(nu)
                } else {
                    1.0
                };
            if !w.is_finite() || w.abs() > majorant * (1.0 + 1e-12) {
                return Err(Error::Certificate(format!(
                    "{}: local weight at p = {p}, ν = {nu} exceeds its certificate",
                    f.name()
                )));
            }
            excess.add(w * pw);
            if bound_at(nu) <= EPS * EPS {
                last = nu;
                break;
            }
        }
        let delta = bound_at(last);
        let l_minus_one = excess.value();
        let l = 1.0 + l_minus_one;
        if !(l.abs() > delta) {
            return Err(Error::Domain {
                value: format!("{s}"),
                reason: format!("local factor at p = {p} is not bounded away from zero"),
            });
        }
        if l < 0.0 {
            negative = !negative;
        }
        let ln_l = if l > 0.0 {
            l_minus_one.ln_1p()
        } else {
            (-l).ln()
        };
        log_sum.add(ln_l);
        rel_trunc += delta / (l.abs() - delta);
        log_rounding +=
            (last as f64 + 8.0) * EPS * excess.abs_total() / l.abs() + 2.0 * EPS * ln_l.abs();
    }
    let pi = primes.len() as u64;
    let (tail_mid, tail_half) = if cert.k == 0.0 {
        (0.0, 0.0)
    } else if let Some((c, rho)) = f.prime_values().filter(|&(_, r)| r == cert.rho) {
        let (lo, hi) = prime_tail_enclosure(s - rho, p_cut, pi)?;
        (c * (lo + hi) / 2.0, c.abs() * (hi - lo) / 2.0)
    } else {
        let (_, hi) = prime_tail_enclosure(s - cert.rho, p_cut, pi)?;
        let x_p = cert.k * (p_cut as f64).powf(cert.rho - s);
        let g = if cert.factorial {
            x_p.exp_m1()
        } else if x_p < 1.0 {
            x_p / (1.0 - x_p)
        } else {
            f64::INFINITY
        };
        if !(g < 1.0) {
            return Err(Error::Domain {
                value: format!("{s}"),
                reason: "prime cutoff too small for the local certificate".into(),
            });
        }
        let kappa = g / ((1.0 - g) * x_p);
        (0.0, kappa * cert.k * hi)
    };
    let log_value = log_sum.value() + tail_mid;
    let magnitude = log_value.exp();
    let value = if negative { -magnitude } else { magnitude };
    let log_err = tail_half + log_rounding + log_sum.rounding(2.0);
    let error_bound = magnitude * ((1.0 + rel_trunc) * log_err.exp() - 1.0) + 2.0 * EPS * magnitude;
    Ok(SeriesApprox {
        value,
        error_bound,
        terms_used: pi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::zeta::{prime_zeta, riemann_zeta_real, zeta_tilde};
    use crate::series::{exp_dirichlet_partial, LocalCertificate};

    const P: u64 = 1_000_000;

    #[test]
    fn euler_product_of_one_is_zeta_tilde() {
        let e =
            euler_product_exp_dirichlet(&SeriesFn::one(), 2.0, P, DEFAULT_EXPONENT_CUTOFF).unwrap();
        let z = zeta_tilde(2.0).unwrap();
        assert!(e.overlaps(&z));
        assert!((e.value - z.value).abs() < 1e-8);
        assert!(e.error_bound < 1e-8);
    }

    #[test]
    fn liouville_and_r_omega() {
        let zp = prime_zeta(2.0).unwrap();
        for r in [-1.0, 2.0, 3.0] {
            let f = SeriesFn::r_omega(r);
            let e = euler_product_exp_dirichlet(&f, 2.0, P, DEFAULT_EXPONENT_CUTOFF).unwrap();
            let expected = (r * zp.value).exp();
            assert!(
                (e.value - expected).abs() < 1e-8,
                "r = {r}: {} vs {expected}",
                e.value
            );
        }
    }

    #[test]
    fn xi_product_is_zeta() {
        // geometric local certificate, generic prime tail
        let e =
            euler_product_exp_dirichlet(&SeriesFn::xi(), 2.0, P, DEFAULT_EXPONENT_CUTOFF).unwrap();
        let z = riemann_zeta_real(2.0).unwrap();
        assert!(e.overlaps(&z));
        assert!(e.error_bound < 1e-5);
    }

    #[test]
    fn delta_and_errors() {
        let e = euler_product_exp_dirichlet(&SeriesFn::delta(), 2.0, 100, 5).unwrap();
        assert_eq!(e.value, 1.0);
        assert!(euler_product_exp_dirichlet(&SeriesFn::log(), 2.0, 100, 5).is_err());
        assert!(euler_product_exp_dirichlet(&SeriesFn::one(), 1.0, 100, 5).is_err());
        let liar = SeriesFn::one().with_local(
            LocalCertificate {
                k: 0.5,
                rho: 0.0,
                factorial: true,
            },
            |_, nu| 1.0 / factorial_f64(nu),
        );
        assert!(matches!(
            euler_product_exp_dirichlet(&liar, 2.0, 100, 5),
            Err(Error::Certificate(_))
        ));
    }

    #[test]
    fn power_shift() {
        // D̃(n, 3) = ζ̃(2)
        let e = euler_product_exp_dirichlet(&SeriesFn::power(1.0), 3.0, P, DEFAULT_EXPONENT_CUTOFF)
            .unwrap();
        let z = zeta_tilde(2.0).unwrap();
        assert!((e.value - z.value).abs() < 1e-8);
        let d = exp_dirichlet_partial(&SeriesFn::moebius(), 2.0, 10_000).unwrap();
        let m = euler_product_exp_dirichlet(&SeriesFn::moebius(), 2.0, P, DEFAULT_EXPONENT_CUTOFF)
            .unwrap();
        assert!(d.overlaps(&m));
    }
}
