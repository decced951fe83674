//! Flows, the generalized binomial operator `⊡`, and Möbius-type inversion.
//!
//! Flows act on real domains; exact rational actions are available for the
//! built-in flows and back the exact checks.

mod arithmetic;
mod boxdot;
mod downward;
mod flow;

pub use arithmetic::{
    arithmetic_invert, arithmetic_transform, arithmetic_transform_fn, summability_side_condition,
    DecayingFn, SideCondition,
};
pub use boxdot::{
    boxdot, boxdot_compose_check, boxdot_fn, boxdot_linearity_exact, boxdot_truncated_exact,
    inverse_certificate, invert_boxdot, linear_majorant, BoxdotEvaluation, ComposeSample, DomainFn,
    LinearityReport, OrbitDecay,
};
pub use downward::{downward_transform, downward_transform_fn, finite_downward_invert, DownwardFn};
pub use flow::{Domain, ExactAction, Flow, RealAction};
