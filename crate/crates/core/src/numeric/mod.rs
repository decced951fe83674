//! Exact integer and rational primitives.

mod factor;
mod loglinear;
mod segmented;
mod special;

pub use factor::{
    configure_sieve_bound, divisors, factorize, is_prime, primes_up_to, sieve_bound, Factorization,
    DEFAULT_SIEVE_BOUND,
};
pub(crate) use factor::{eratosthenes, require_positive};
pub use loglinear::LogLinear;
pub use segmented::for_each_factored;
pub use special::{
    big_omega, binomial, binomial_weight, factorial, liouville, moebius, moebius_of, multinomial,
    xi, xi_of,
};
pub(crate) use special::{binomial_u64, weight_from_exps};

/// Arbitrary-precision integer.
pub type BigInt = num::BigInt;
/// Normalized arbitrary-precision rational.
pub type Rational = num::BigRational;
