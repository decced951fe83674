//! Flows `φ: N × X → X` with `φ_m ∘ φ_n = φ_{mn}` and `φ_1 = id`.

use std::fmt;
use std::sync::Arc;

use num::One;

use crate::error::{invalid, Error, Result};
use crate::numeric::Rational;

/// Real action `(n, x) ↦ φ_n(x)`.
pub type RealAction = Arc<dyn Fn(u64, f64) -> f64 + Send + Sync>;
/// Exact action on rationals, for flows that preserve them.
pub type ExactAction = Arc<dyn Fn(u64, &Rational) -> Rational + Send + Sync>;

/// Real domains a flow acts on.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// `(0, 1)`.
    OpenUnitInterval,
    /// `(0, ∞)`.
    PositiveReals,
    /// An interval `(lo, hi)` with explicit sample points.
    Custom {
        description: String,
        lo: f64,
        hi: f64,
    },
}

impl Domain {
    pub fn contains(&self, x: f64) -> bool {
        match self {
            Domain::OpenUnitInterval => x > 0.0 && x < 1.0,
            Domain::PositiveReals => x > 0.0 && x.is_finite(),
            Domain::Custom { lo, hi, .. } => x > *lo && x < *hi,
        }
    }

    /// Sixteen deterministic sample points.
    pub fn samples(&self) -> Vec<f64> {
        match self {
            Domain::OpenUnitInterval => (1..=16).map(|i| i as f64 / 17.0).collect(),
            Domain::PositiveReals => (0..16).map(|i| 0.05 * 1.9f64.powi(i)).collect(),
            Domain::Custom { lo, hi, .. } => {
                let (a, b) = (lo.max(-1e6), hi.min(1e6));
                (1..=16).map(|i| a + (b - a) * i as f64 / 17.0).collect()
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::OpenUnitInterval => write!(f, "(0, 1)"),
            Domain::PositiveReals => write!(f, "(0, ∞)"),
            Domain::Custom { description, .. } => write!(f, "{description}"),
        }
    }
}

/// A validated flow.
#[derive(Clone)]
pub struct Flow {
    name: String,
    domain: Domain,
    action: RealAction,
    exact: Option<ExactAction>,
}

impl fmt::Debug for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Flow")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

const AXIOM_RANGE: u64 = 30;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()) + 1e-300
}

impl Flow {
    /// Builds a flow after checking `φ_1 = id` and `φ_m(φ_n(x)) = φ_{mn}(x)`
    /// for all `m, n <= 30` on sixteen domain samples, and that orbits stay
    /// in the domain.
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        action: impl Fn(u64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let flow = Flow {
            name: name.into(),
            domain,
            action: Arc::new(action),
            exact: None,
        };
        flow.check_axioms()?;
        Ok(flow)
    }

    /// Adds an exact rational action, checked against the same axioms on
    /// rational samples and against the real action.
    pub fn with_exact(
        mut self,
        exact: impl Fn(u64, &Rational) -> Rational + Send + Sync + 'static,
    ) -> Result<Self> {
        let exact: ExactAction = Arc::new(exact);
        for x in self.domain.samples() {
            let q = Rational::from_float(x).ok_or_else(|| invalid("non-finite sample"))?;
            if exact(1, &q) != q {
                return Err(axiom_error(&self.name, "exact φ_1 is not the identity", x));
            }
            for m in 1..=6 {
                for n in 1..=6 {
                    if exact(m, &exact(n, &q)) != exact(m * n, &q) {
                        return Err(axiom_error(&self.name, "exact composition law fails", x));
                    }
                }
                let approx = num::ToPrimitive::to_f64(&exact(m, &q)).unwrap_or(f64::NAN);
                if !close(approx, (self.action)(m, x)) {
                    return Err(axiom_error(
                        &self.name,
                        "exact and real actions disagree",
                        x,
                    ));
                }
            }
        }
        self.exact = Some(exact);
        Ok(self)
    }

    /// Re-runs the axiom checks performed by [`Flow::new`].
    pub fn check_axioms(&self) -> Result<()> {
        for x in self.domain.samples() {
            if !close((self.action)(1, x), x) {
                return Err(axiom_error(&self.name, "φ_1 is not the identity", x));
            }
            for m in 1..=AXIOM_RANGE {
                let ym = (self.action)(m, x);
                if !self.domain.contains(ym) && ym != 0.0 {
                    return Err(axiom_error(&self.name, "orbit leaves the domain", x));
                }
                for n in 1..=AXIOM_RANGE {
                    let lhs = (self.action)(m, (self.action)(n, x));
                    if !close(lhs, (self.action)(m * n, x)) {
                        return Err(axiom_error(
                            &self.name,
                            &format!("φ_{m}∘φ_{n} differs from φ_{}", m * n),
                            x,
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `x ↦ x^n` on `(0, 1)`.
    pub fn power() -> Self {
        Flow::new("power", Domain::OpenUnitInterval, |n, x| x.powf(n as f64))
            .and_then(|f| f.with_exact(|n, x| num::pow::Pow::pow(x, n as u32)))
            .expect("power flow satisfies the axioms")
    }

    /// `x ↦ x/n` on `(0, ∞)`.
    pub fn divide() -> Self {
        Flow::new("divide", Domain::PositiveReals, |n, x| x / n as f64)
            .and_then(|f| f.with_exact(|n, x| x / Rational::from_integer(n.into())))
            .expect("divide flow satisfies the axioms")
    }

    /// `x ↦ n x` on `(0, ∞)`.
    pub fn multiply() -> Self {
        Flow::new("multiply", Domain::PositiveReals, |n, x| x * n as f64)
            .and_then(|f| f.with_exact(|n, x| x * Rational::from_integer(n.into())))
            .expect("multiply flow satisfies the axioms")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn apply(&self, n: u64, x: f64) -> f64 {
        (self.action)(n, x)
    }

    pub fn apply_exact(&self, n: u64, x: &Rational) -> Option<Rational> {
        self.exact.as_ref().map(|e| e(n, x))
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub(crate) fn require_point(&self, x: f64) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain {
                value: format!("{x}"),
                reason: format!("outside the domain {} of flow {}", self.domain, self.name),
            })
        }
    }
}

fn axiom_error(name: &str, what: &str, x: f64) -> Error {
    Error::InvalidArgument(format!("flow {name}: {what} at x = {x}"))
}

/// Whether `x >= 1` for an exact rational.
pub(crate) fn at_least_one(x: &Rational) -> bool {
    *x >= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn builtin_flows_validate() {
        for f in [Flow::power(), Flow::divide(), Flow::multiply()] {
            assert!(f.is_exact());
            assert_eq!(f.apply(1, 0.3), 0.3);
        }
        assert_eq!(
            Flow::power().apply_exact(3, &ratio(1, 2)),
            Some(ratio(1, 8))
        );
        assert_eq!(
            Flow::divide().apply_exact(4, &ratio(6, 1)),
            Some(ratio(3, 2))
        );
    }

    #[test]
    fn bad_flows_rejected() {
        assert!(Flow::new("shift", Domain::PositiveReals, |n, x| x + n as f64 - 1.0).is_err());
        assert!(Flow::new("not-id", Domain::PositiveReals, |n, x| x * (n + 1) as f64).is_err());
        assert!(Flow::new("escape", Domain::OpenUnitInterval, |n, x| x * n as f64).is_err());
        let ok = Flow::new("sqrt-power", Domain::OpenUnitInterval, |n, x| {
            x.powf(n as f64)
        })
        .unwrap();
        assert!(ok
            .with_exact(|n, x| x * Rational::from_integer(n.into()))
            .is_err());
    }

    #[test]
    fn point_checks() {
        assert!(Flow::power().require_point(1.0).is_err());
        assert!(Flow::divide().require_point(7.5).is_ok());
    }
}
