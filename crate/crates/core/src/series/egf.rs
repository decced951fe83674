//! Exponential generating functions `P̃(f, z) = Σ f(n)/ξ(n) · z^n` for `|z| < 1`.

use num::complex::Complex64;

use super::accum::ComplexSum;
use super::functions::{GrowthCertificate, SeriesFn};
use super::ComplexApprox;
use crate::error::{invalid, Error, Result};
use crate::numeric::factorize;

const EPS: f64 = f64::EPSILON;

fn require_unit_disk(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            value: format!("{z}"),
            reason: "|z| must be below the radius of convergence 1".into(),
        })
    }
}

/// Bound on `Σ_{m > n} C m^r t^m` for `0 <= t < 1`.
pub fn egf_tail_bound(cert: &GrowthCertificate, t: f64, n: u64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(invalid("tail bound needs 0 <= t < 1"));
    }
    if t == 0.0 || cert.c == 0.0 {
        return Ok(0.0);
    }
    let next = (n + 1) as f64;
    let lead = t.powf(next);
    if cert.r <= 0.0 {
        return Ok(cert.c * lead / (1.0 - t));
    }
    let rho = (1.0 + 1.0 / next).powf(cert.r) * t;
    if rho >= 1.0 {
        return Err(Error::Domain {
            value: format!("{n}"),
            reason: "cutoff too small for a geometric tail bound".into(),
        });
    }
    Ok(cert.c * next.powf(cert.r) * lead / (1.0 - rho))
}

/// `P̃(f, z)` summed through `n_max` with a certificate-based tail bound.
pub fn egf_partial(f: &SeriesFn, z: Complex64, n_max: u64) -> Result<ComplexApprox> {
    require_unit_disk(z)?;
    if n_max == 0 {
        return Err(invalid("cutoff must be positive"));
    }
    let hi = f.support().map_or(n_max, |b| b.min(n_max));
    let mut sum = ComplexSum::default();
    let mut rounding = 0.0;
    let mut zn = Complex64::new(1.0, 0.0);
    for n in 1..=hi {
        zn *= z;
        let fac = factorize(n)?;
        let w = f.weight_factored(n, fac.factors());
        f.check_weight(n, w)?;
        if w == 0.0 {
            continue;
        }
        let t = zn * w;
        let ulps = if n == 1 { 1.0 } else { 16.0 + n as f64 };
        rounding += ulps * EPS * t.norm();
        sum.add(t);
    }
    let tail = if f.support().is_some_and(|b| b <= n_max) {
        0.0
    } else {
        egf_tail_bound(&f.growth(), z.norm(), n_max)?
    };
    Ok(ComplexApprox {
        value: sum.value(),
        error_bound: tail + rounding + sum.rounding(0.0),
        terms_used: hi,
    })
}

/// `Ξ(z) = P̃(I, z)`.
pub fn capital_xi(z: Complex64, n_max: u64) -> Result<ComplexApprox> {
    egf_partial(&SeriesFn::one(), z, n_max)
}

/// `Σ_{k <= K} f(k)/ξ(k) · P̃(g, z^k)` with inner sums through `n_inner`.
///
/// The outer tail uses `|P̃(g, y)| <= |y| · S` for `|y| <= |z|^{K+1}`, where
/// `S` bounds `Σ C_g n^{r_g} |z|^{(K+1)(n-1)}`.
pub fn egf_outer_sum(
    f: &SeriesFn,
    g: &SeriesFn,
    z: Complex64,
    k_outer: u64,
    n_inner: u64,
) -> Result<ComplexApprox> {
    require_unit_disk(z)?;
    if k_outer == 0 {
        return Err(invalid("outer cutoff must be positive"));
    }
    let hi = f.support().map_or(k_outer, |b| b.min(k_outer));
    let mut sum = ComplexSum::default();
    let mut err = 0.0;
    let mut zk = Complex64::new(1.0, 0.0);
    let mut terms = 0;
    for k in 1..=hi {
        zk *= z;
        let w = f.weight(k)?;
        f.check_weight(k, w)?;
        if w == 0.0 {
            continue;
        }
        let inner = egf_partial(g, zk, n_inner)?;
        let t = inner.value * w;
        sum.add(t);
        err += w.abs() * inner.error_bound + (4.0 + k as f64) * EPS * t.norm();
        terms += inner.terms_used;
    }
    let tail = if f.support().is_some_and(|b| b <= k_outer) {
        0.0
    } else {
        let t1 = z.norm().powf((k_outer + 1) as f64);
        let gc = g.growth();
        let unit = GrowthCertificate::new(1.0, gc.r)?;
        let s = gc.c
            * (1.0
                + if t1 > 0.0 {
                    egf_tail_bound(&unit, t1, 1)? / t1
                } else {
                    0.0
                });
        s * egf_tail_bound(&f.growth(), z.norm(), k_outer)?
    };
    Ok(ComplexApprox {
        value: sum.value(),
        error_bound: err + tail + sum.rounding(0.0),
        terms_used: terms,
    })
}

/// Both sides of `P̃(f∘g, z) = Σ_k f(k)/ξ(k) · P̃(g, z^k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EgfConvolutionReport {
    pub lhs: ComplexApprox,
    pub rhs: ComplexApprox,
    pub agree: bool,
}

pub fn egf_convolution_check(
    f: &SeriesFn,
    g: &SeriesFn,
    z: Complex64,
    k_outer: u64,
    n_terms: u64,
) -> Result<EgfConvolutionReport> {
    let lhs = egf_partial(&f.binomial_product(g), z, n_terms)?;
    let rhs = egf_outer_sum(f, g, z, k_outer, n_terms)?;
    Ok(EgfConvolutionReport {
        lhs,
        rhs,
        agree: lhs.overlaps(&rhs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn geometric_series_from_xi() {
        let p = egf_partial(&SeriesFn::xi(), re(0.5), 80).unwrap();
        assert!(p.contains(re(1.0)));
        assert!(p.error_bound < 1e-14);
        let z = Complex64::new(0.3, 0.4);
        let q = egf_partial(&SeriesFn::xi(), z, 120).unwrap();
        assert!(q.contains(z / (1.0 - z)));
    }

    #[test]
    fn delta_is_z() {
        let z = Complex64::new(0.25, -0.5);
        assert_eq!(egf_partial(&SeriesFn::delta(), z, 10).unwrap().value, z);
    }

    #[test]
    fn xi_sandwich() {
        for i in 1..=9 {
            let x = i as f64 / 10.0;
            let v = capital_xi(re(x), 2000).unwrap().re();
            assert!(v.lower() > x + x * x + x * x * x, "x = {x}");
            assert!(v.upper() <= x / (1.0 - x), "x = {x}");
        }
        let half = capital_xi(re(0.5), 100).unwrap().re();
        assert!(half.lower() > 0.875 && half.upper() <= 1.0);
    }

    #[test]
    fn radius_enforced() {
        assert!(matches!(capital_xi(re(1.0), 10), Err(Error::Domain { .. })));
        assert!(capital_xi(Complex64::new(0.8, 0.8), 10).is_err());
        let g = GrowthCertificate::new(1.0, 3.0).unwrap();
        assert!(egf_tail_bound(&g, 0.9, 5).is_err());
        assert!(egf_tail_bound(&g, 0.9, 100).is_ok());
    }

    #[test]
    fn liouville_identity() {
        for z in [0.2, 0.3, 0.5] {
            let r =
                egf_outer_sum(&SeriesFn::liouville(), &SeriesFn::one(), re(z), 60, 200).unwrap();
            assert!(r.contains(re(z)), "z = {z}: {:?}", r);
            assert!(r.error_bound < 1e-10);
        }
    }

    #[test]
    fn convolution_checks() {
        let (one, lam) = (SeriesFn::one(), SeriesFn::liouville());
        for z in [re(0.3), Complex64::new(0.1, 0.5)] {
            assert!(egf_convolution_check(&one, &one, z, 60, 200).unwrap().agree);
            assert!(egf_convolution_check(&lam, &one, z, 60, 200).unwrap().agree);
            let two = SeriesFn::r_omega(2.0);
            let rep = egf_convolution_check(&two, &one, z, 60, 200).unwrap();
            assert!(rep.agree);
            let three = egf_partial(&SeriesFn::r_omega(3.0), z, 200).unwrap();
            assert!(three.overlaps(&rep.rhs));
        }
    }
}
