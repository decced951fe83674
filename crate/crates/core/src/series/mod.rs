//! Exponential Dirichlet series, the prime zeta function, Euler products,
//! the binomial von Mangoldt function and exponential generating functions.
//!
//! Values are `f64`. Every result carries an error bound covering both
//! truncation and floating-point rounding.

mod accum;
mod dirichlet;
mod egf;
mod euler;
mod functions;
mod mangoldt;
mod zeta;

use num::complex::Complex64;

pub use dirichlet::{
    exp_dirichlet_partial, exp_dirichlet_product_check, log_derivative_check,
    mangoldt_factorization_check, xi_reciprocal_sum, zeta_tilde_routes, LogDerivativeCheck,
    ProductCheck, ZetaTildeRoutes,
};
pub use egf::{
    capital_xi, egf_convolution_check, egf_outer_sum, egf_partial, egf_tail_bound,
    EgfConvolutionReport,
};
pub use euler::{euler_product_exp_dirichlet, DEFAULT_EXPONENT_CUTOFF};
pub use functions::{
    divisor_bound_constant, GrowthCertificate, LocalCertificate, LocalFn, SeriesFn, WeightFn,
};
pub use mangoldt::{
    chebyshev_psi, chebyshev_psi_direct, chebyshev_theta, chebyshev_theta_direct, mangoldt,
    mangoldt_tilde, verify_log_identities, LogIdentityReport,
};
pub use zeta::{
    expint, hurwitz_tail, prime_tail_enclosure, prime_zeta, prime_zeta_direct, riemann_zeta_real,
    zeta_minus_one, zeta_tilde, zeta_tilde_product, DEFAULT_PRIME_CUTOFF,
};

/// A real value with a rigorous bound on its distance from the limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesApprox {
    pub value: f64,
    pub error_bound: f64,
    pub terms_used: u64,
}

impl SeriesApprox {
    pub fn exact(value: f64) -> Self {
        SeriesApprox {
            value,
            error_bound: 0.0,
            terms_used: 0,
        }
    }

    /// Whether `x` lies in `[value - error_bound, value + error_bound]`.
    pub fn contains(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.error_bound
    }

    /// Whether the two enclosures intersect.
    pub fn overlaps(&self, other: &SeriesApprox) -> bool {
        (self.value - other.value).abs() <= self.error_bound + other.error_bound
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    /// Product with propagated error.
    pub fn mul(&self, other: &SeriesApprox) -> SeriesApprox {
        let value = self.value * other.value;
        SeriesApprox {
            value,
            error_bound: self.value.abs() * other.error_bound
                + other.value.abs() * self.error_bound
                + self.error_bound * other.error_bound
                + 2.0 * f64::EPSILON * value.abs(),
            terms_used: self.terms_used.max(other.terms_used),
        }
    }

    /// `exp` with propagated error.
    pub fn exp(&self) -> SeriesApprox {
        let value = self.value.exp();
        SeriesApprox {
            value,
            error_bound: value * self.error_bound.exp_m1() + 2.0 * f64::EPSILON * value,
            terms_used: self.terms_used,
        }
    }
}

/// A complex value with a rigorous bound on its distance from the limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexApprox {
    pub value: Complex64,
    pub error_bound: f64,
    pub terms_used: u64,
}

impl ComplexApprox {
    pub fn overlaps(&self, other: &ComplexApprox) -> bool {
        (self.value - other.value).norm() <= self.error_bound + other.error_bound
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.value - z).norm() <= self.error_bound
    }

    /// Real part as a [`SeriesApprox`].
    pub fn re(&self) -> SeriesApprox {
        SeriesApprox {
            value: self.value.re,
            error_bound: self.error_bound,
            terms_used: self.terms_used,
        }
    }
}

pub(crate) fn require_gt(s: f64, bound: f64, what: &str) -> crate::Result<()> {
    if s.is_finite() && s > bound {
        Ok(())
    } else {
        Err(crate::Error::Domain {
            value: format!("{s}"),
            reason: format!("{what} must exceed {bound}"),
        })
    }
}
