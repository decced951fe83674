//! Finite inversion for `φ_n(x) = x/n` with functions vanishing on `(0, 1)`.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, ToPrimitive, Zero};

use super::flow::at_least_one;
use crate::algebra::{binomial_inverse, ArithFn};
use crate::error::{Error, Result};
use crate::numeric::{xi, Rational};

type RationalMap = Arc<dyn Fn(&Rational) -> Result<Rational> + Send + Sync>;

/// A rational function on `(0, ∞)` forced to vanish on `(0, 1)`.
#[derive(Clone)]
pub struct DownwardFn {
    name: String,
    f: RationalMap,
}

impl fmt::Debug for DownwardFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DownwardFn({})", self.name)
    }
}

impl DownwardFn {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&Rational) -> Result<Rational> + Send + Sync + 'static,
    ) -> Self {
        DownwardFn {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// The indicator of `[1, ∞)`.
    pub fn indicator() -> Self {
        DownwardFn::new("1", |_| Ok(Rational::one()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        require_positive_point(x)?;
        if at_least_one(x) {
            (self.f)(x)
        } else {
            Ok(Rational::zero())
        }
    }
}

fn require_positive_point(x: &Rational) -> Result<()> {
    if *x > Rational::zero() {
        Ok(())
    } else {
        Err(Error::Domain {
            value: x.to_string(),
            reason: "the divide flow acts on (0, ∞)".into(),
        })
    }
}

fn floor_u64(x: &Rational) -> Result<u64> {
    x.floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Domain {
            value: x.to_string(),
            reason: "too large".into(),
        })
}

/// `Σ_{n <= x} f(n)/ξ(n) · β(x/n)`, exactly.
pub fn downward_transform(f: &ArithFn, beta: &DownwardFn, x: &Rational) -> Result<Rational> {
    require_positive_point(x)?;
    let mut acc = Rational::zero();
    for n in 1..=floor_u64(x)? {
        let fv = f.eval(n)?;
        if fv.is_zero() {
            continue;
        }
        let y = x / BigRational::from_integer(n.into());
        acc += fv / BigRational::from_integer(xi(n)?) * beta.eval(&y)?;
    }
    Ok(acc)
}

/// `α = f ⊡ β` as a [`DownwardFn`].
pub fn downward_transform_fn(f: &ArithFn, beta: &DownwardFn) -> DownwardFn {
    let (f, beta) = (f.clone(), beta.clone());
    DownwardFn::new(format!("{}⊡{}", f.name(), beta.name()), move |x| {
        downward_transform(&f, &beta, x)
    })
}

/// `β(x) = Σ_{n <= x} f^{-1∘}(n)/ξ(n) · α(x/n)`, exactly.
pub fn finite_downward_invert(f: &ArithFn, alpha: &DownwardFn, x: &Rational) -> Result<Rational> {
    if f.eval(1)?.is_zero() {
        return Err(Error::NotInvertible);
    }
    downward_transform(&binomial_inverse(f)?, alpha, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtins, q, ratio};

    #[test]
    fn below_one_is_zero() {
        let b = DownwardFn::indicator();
        assert_eq!(b.eval(&ratio(1, 2)).unwrap(), q(0));
        assert_eq!(b.eval(&q(1)).unwrap(), q(1));
        assert!(b.eval(&q(0)).is_err());
        assert_eq!(
            finite_downward_invert(&builtins::one(), &b, &ratio(1, 3)).unwrap(),
            q(0)
        );
    }

    #[test]
    fn classical_moebius_case() {
        // f = ξ: forward is Σ_{n<=x} β(x/n), inverse weights are μ
        let beta = DownwardFn::new("floor-ish", |x: &Rational| Ok(x * x + q(3)));
        let alpha = downward_transform_fn(&builtins::xi(), &beta);
        for x in [q(1), ratio(7, 2), q(12), ratio(101, 3)] {
            let direct: Rational = (1..=x.floor().to_integer().to_u64().unwrap())
                .map(|n| {
                    let mu = crate::numeric::moebius(n).unwrap();
                    alpha.eval(&(&x / q(n as i64))).unwrap() * q(mu as i64)
                })
                .sum();
            assert_eq!(direct, beta.eval(&x).unwrap());
            assert_eq!(
                finite_downward_invert(&builtins::xi(), &alpha, &x).unwrap(),
                direct
            );
        }
    }

    #[test]
    fn indicator_round_trip() {
        let f = ArithFn::finite_support("f", vec![q(2), q(-1), ratio(1, 3), q(5)]);
        let alpha = downward_transform_fn(&f, &DownwardFn::indicator());
        let x = ratio(53, 2);
        let expected: Rational = (1..=26)
            .map(|n| f.eval(n).unwrap() / BigRational::from_integer(xi(n).unwrap()))
            .sum();
        assert_eq!(alpha.eval(&x).unwrap(), expected);
        assert_eq!(finite_downward_invert(&f, &alpha, &x).unwrap(), q(1));
        let bad = ArithFn::finite_support("g", vec![q(0), q(1)]);
        assert_eq!(
            finite_downward_invert(&bad, &alpha, &x),
            Err(Error::NotInvertible)
        );
    }
}
