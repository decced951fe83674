//! Partial sums of exponential Dirichlet series and the checks built on them.

use super::accum::Sum;
use super::functions::SeriesFn;
use super::zeta::{hurwitz_tail, zeta_tilde, zeta_tilde_product};
use super::{require_gt, SeriesApprox};
use crate::error::{invalid, Error, Result};
use crate::numeric::{for_each_factored, primes_up_to};

/// `D̃(f, s) = Σ f(n)/(ξ(n) n^s)` summed through `n_max`, with the tail
/// bounded by `C N^{r-s+1}/(s-r-1)` from the growth certificate.
pub fn exp_dirichlet_partial(f: &SeriesFn, s: f64, n_max: u64) -> Result<SeriesApprox> {
    if n_max == 0 {
        return Err(invalid("cutoff must be positive"));
    }
    let g = f.growth();
    let finite = f.support().is_some_and(|b| b <= n_max);
    if !finite {
        require_gt(s, g.r + 1.0, "s - r")?;
    }
    let hi = f.support().map_or(n_max, |b| b.min(n_max));
    let mut sum = Sum::default();
    let mut failure: Option<Error> = None;
    for_each_factored(1, hi, |n, factors| {
        if failure.is_some() {
            return;
        }
        let w = f.weight_factored(n, factors);
        if let Err(e) = f.check_weight(n, w) {
            failure = Some(e);
            return;
        }
        if w != 0.0 {
            sum.add(if n == 1 { w } else { w * (n as f64).powf(-s) });
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (shift, tail_err) = if finite {
        (0.0, 0.0)
    } else if let Some((c, rho)) = f.exact_power() {
        let t = hurwitz_tail(s - rho, n_max + 1)?;
        (c * t.value, c.abs() * t.error_bound)
    } else {
        let b = g.c * (n_max as f64).powf(g.r - s + 1.0) / (s - g.r - 1.0);
        if g.nonnegative {
            (b / 2.0, b / 2.0)
        } else {
            (0.0, b)
        }
    };
    let value = sum.value() + shift;
    Ok(SeriesApprox {
        value,
        error_bound: tail_err
            + sum.rounding(16.0)
            + if shift != 0.0 {
                2.0 * f64::EPSILON * value.abs()
            } else {
                0.0
            },
        terms_used: hi,
    })
}

/// Two evaluations of the same quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductCheck {
    pub lhs: SeriesApprox,
    pub rhs: SeriesApprox,
    /// `|lhs - rhs| <= lhs.error_bound + rhs.error_bound`.
    pub holds: bool,
}

impl ProductCheck {
    fn new(lhs: SeriesApprox, rhs: SeriesApprox) -> Self {
        ProductCheck {
            lhs,
            rhs,
            holds: lhs.overlaps(&rhs),
        }
    }

    pub fn difference(&self) -> f64 {
        (self.lhs.value - self.rhs.value).abs()
    }
}

/// `D̃(f,s)·D̃(g,s)` against `D̃(f∘g,s)`; `fg` carries the weights of `f∘g`.
pub fn exp_dirichlet_product_check(
    f: &SeriesFn,
    g: &SeriesFn,
    fg: &SeriesFn,
    s: f64,
    n_max: u64,
) -> Result<ProductCheck> {
    let lhs = exp_dirichlet_partial(f, s, n_max)?.mul(&exp_dirichlet_partial(g, s, n_max)?);
    Ok(ProductCheck::new(lhs, exp_dirichlet_partial(fg, s, n_max)?))
}

/// `D̃(Λ̃,s)` against `D̃(λ,s)·D̃(log,s)`.
pub fn mangoldt_factorization_check(s: f64, n_max: u64) -> Result<ProductCheck> {
    let lhs = exp_dirichlet_partial(&SeriesFn::liouville(), s, n_max)?.mul(&exp_dirichlet_partial(
        &SeriesFn::log(),
        s,
        n_max,
    )?);
    let rhs = exp_dirichlet_partial(&SeriesFn::mangoldt_tilde(), s, n_max)?;
    Ok(ProductCheck::new(lhs, rhs))
}

/// `ζ̃(s)` computed three ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaTildeRoutes {
    /// `exp(ζ_P(s))` with `ζ_P` from the Glaisher formula.
    pub via_prime_zeta: SeriesApprox,
    /// Partial sum of `D̃(I, s)`.
    pub via_series: SeriesApprox,
    /// `Π_n ζ(ns)^{μ(n)/n}`.
    pub via_zeta_product: SeriesApprox,
}

impl ZetaTildeRoutes {
    pub fn max_discrepancy(&self) -> f64 {
        let v = [
            self.via_prime_zeta.value,
            self.via_series.value,
            self.via_zeta_product.value,
        ];
        let hi = v.iter().copied().fold(f64::MIN, f64::max);
        let lo = v.iter().copied().fold(f64::MAX, f64::min);
        hi - lo
    }

    /// Pairwise overlap of the three enclosures.
    pub fn consistent(&self) -> bool {
        let r = [self.via_prime_zeta, self.via_series, self.via_zeta_product];
        (0..3).all(|i| (0..3).all(|j| r[i].overlaps(&r[j])))
    }
}

pub fn zeta_tilde_routes(s: f64, n_series: u64) -> Result<ZetaTildeRoutes> {
    Ok(ZetaTildeRoutes {
        via_prime_zeta: zeta_tilde(s)?,
        via_series: exp_dirichlet_partial(&SeriesFn::one(), s, n_series)?,
        via_zeta_product: zeta_tilde_product(s)?,
    })
}

/// `D̃(Λ̃,s)` against `-ζ̃'(s)/ζ̃(s)` by a central difference with step `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivativeCheck {
    pub series: SeriesApprox,
    /// The difference quotient; its bound covers evaluation error only,
    /// not the `O(h²)` discretization error.
    pub finite_difference: SeriesApprox,
}

impl LogDerivativeCheck {
    pub fn difference(&self) -> f64 {
        (self.series.value - self.finite_difference.value).abs()
    }
}

pub fn log_derivative_check(s: f64, h: f64, n_series: u64) -> Result<LogDerivativeCheck> {
    if !(h > 0.0 && h < s - 1.0) {
        return Err(invalid("step must satisfy 0 < h < s - 1"));
    }
    let (plus, minus, mid) = (zeta_tilde(s + h)?, zeta_tilde(s - h)?, zeta_tilde(s)?);
    let value = -(plus.value - minus.value) / (2.0 * h * mid.value);
    let error_bound = (plus.error_bound + minus.error_bound) / (2.0 * h * mid.lower())
        + value.abs() * mid.error_bound / mid.lower()
        + 8.0 * f64::EPSILON * plus.value / (h * mid.value);
    Ok(LogDerivativeCheck {
        series: exp_dirichlet_partial(&SeriesFn::mangoldt_tilde(), s, n_series)?,
        finite_difference: SeriesApprox {
            value,
            error_bound,
            terms_used: 3,
        },
    })
}

/// `(Σ_{n<=N} 1/ξ(n), π(N))`; the first exceeds the second for `N >= 1`.
pub fn xi_reciprocal_sum(n_max: u64) -> Result<(f64, u64)> {
    if n_max == 0 {
        return Err(invalid("cutoff must be positive"));
    }
    let w = SeriesFn::one();
    let mut sum = Sum::default();
    for_each_factored(1, n_max, |n, f| sum.add(w.weight_factored(n, f)));
    let pi = if n_max >= 2 {
        primes_up_to(n_max)?.len() as u64
    } else {
        0
    };
    Ok((sum.value(), pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::zeta::riemann_zeta_real;
    use crate::series::GrowthCertificate;

    #[test]
    fn xi_series_is_zeta() {
        let z = riemann_zeta_real(2.0).unwrap();
        let d = exp_dirichlet_partial(&SeriesFn::xi(), 2.0, 1000).unwrap();
        assert!((d.value - z.value).abs() < 1e-10);
        assert!(d.overlaps(&z));
        // plain certificate bound, no exact tail
        let plain = SeriesFn::new(
            "xi'",
            GrowthCertificate::new(1.0, 0.0).unwrap().nonnegative(),
            |_, _| 1.0,
        );
        let p = exp_dirichlet_partial(&plain, 2.0, 100_000).unwrap();
        assert!(p.contains(z.value));
        assert!(p.error_bound < 1e-5);
    }

    #[test]
    fn delta_is_exact() {
        let d = exp_dirichlet_partial(&SeriesFn::delta(), 1.5, 10).unwrap();
        assert_eq!((d.value, d.error_bound), (1.0, 0.0));
        let d = exp_dirichlet_partial(&SeriesFn::delta(), 0.5, 10).unwrap();
        assert_eq!(d.value, 1.0);
    }

    #[test]
    fn divergent_region_rejected() {
        assert!(matches!(
            exp_dirichlet_partial(&SeriesFn::one(), 1.0, 100),
            Err(Error::Domain { .. })
        ));
        assert!(exp_dirichlet_partial(&SeriesFn::power(1.0), 1.9, 100).is_err());
        assert!(exp_dirichlet_partial(&SeriesFn::one(), 2.0, 0).is_err());
    }

    #[test]
    fn certificate_violation_detected() {
        let liar = SeriesFn::new("liar", GrowthCertificate::new(1.0, 0.0).unwrap(), |n, _| {
            n as f64
        });
        assert!(matches!(
            exp_dirichlet_partial(&liar, 3.0, 10),
            Err(Error::Certificate(_))
        ));
    }

    #[test]
    fn product_of_series() {
        let (f, g) = (SeriesFn::one(), SeriesFn::liouville());
        let c = exp_dirichlet_product_check(&f, &g, &f.binomial_product(&g), 3.0, 20_000).unwrap();
        assert!(c.holds);
        assert!((c.lhs.value - 1.0).abs() < 1e-4);
    }

    #[test]
    fn reciprocal_xi_sum_beats_prime_count() {
        let (s, pi) = xi_reciprocal_sum(1000).unwrap();
        assert!(s > pi as f64);
        assert_eq!(pi, 168);
    }
}
