//! Arithmetical functions and the two convolution algebras.

mod arith_fn;
pub mod builtins;
mod convolution;
mod inverse;

pub use arith_fn::{
    q, ratio, ArithFn, Claim, ClosureRule, ConvolutionTable, Definition, ExponentRule, Flags,
    PrimePowerRule,
};
pub use convolution::{
    binomial_convolve, binomial_convolve_k, convolve_with, dirichlet_convolve, from_dirichlet_side,
    pointwise_product, pointwise_sum, scale, to_dirichlet_side, Kind,
};
pub use inverse::{
    binomial_inverse, binomial_inverse_via_isomorphism, binomial_power, dirichlet_inverse,
    dirichlet_inverse_via_isomorphism,
};
