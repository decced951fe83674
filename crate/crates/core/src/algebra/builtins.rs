//! Standard arithmetical functions.

use num::{BigInt, One, Zero};

use super::arith_fn::{q, ArithFn, Flags};
use crate::numeric::{factorial, Rational};

/// Identity of both convolutions: `δ(1) = 1`, `δ(n) = 0` otherwise.
pub fn delta() -> ArithFn {
    ArithFn::prime_independent(
        "δ",
        |_| Ok(Rational::zero()),
        Flags::completely_multiplicative(),
    )
}

/// The constant function `I(n) = 1`.
pub fn one() -> ArithFn {
    ArithFn::prime_independent(
        "I",
        |_| Ok(Rational::one()),
        Flags::completely_multiplicative(),
    )
}

pub fn moebius() -> ArithFn {
    ArithFn::prime_independent(
        "μ",
        |a| Ok(if a == 1 { q(-1) } else { Rational::zero() }),
        Flags::multiplicative().not_completely(),
    )
}

/// `λ(n) = (-1)^Ω(n)`.
pub fn liouville() -> ArithFn {
    ArithFn::prime_independent(
        "λ",
        |a| Ok(if a % 2 == 0 { q(1) } else { q(-1) }),
        Flags::completely_multiplicative(),
    )
}

/// `ξ(n) = Π_p ν_p(n)!`.
pub fn xi() -> ArithFn {
    ArithFn::prime_independent(
        "ξ",
        |a| Ok(Rational::from_integer(factorial(a))),
        Flags::multiplicative().not_completely(),
    )
}

/// Number of divisors.
pub fn tau() -> ArithFn {
    ArithFn::prime_independent(
        "τ",
        |a| Ok(q(a as i64 + 1)),
        Flags::multiplicative().not_completely(),
    )
}

/// Indicator of squarefree numbers, `μ²`.
pub fn mu_squared() -> ArithFn {
    ArithFn::prime_independent(
        "μ²",
        |a| Ok(if a == 1 { q(1) } else { Rational::zero() }),
        Flags::multiplicative().not_completely(),
    )
}

/// `n ↦ n^r` for an integer exponent.
pub fn power(r: i32) -> ArithFn {
    ArithFn::multiplicative(
        format!("n^{r}"),
        move |p, a| {
            let base = Rational::from_integer(BigInt::from(p));
            Ok(num::pow::Pow::pow(&base, r as i64 * a as i64))
        },
        Flags::completely_multiplicative(),
    )
}

/// `n ↦ r^Ω(n)`, with `0^0 = 1` at `n = 1`.
pub fn r_omega(r: Rational) -> ArithFn {
    let name = format!("({r})^Ω");
    ArithFn::prime_independent(
        name,
        move |a| Ok(num::pow::Pow::pow(&r, a as u64)),
        Flags::completely_multiplicative().prime_independent(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric;

    #[test]
    fn values_match_numeric_core() {
        for n in 1..=500u64 {
            assert_eq!(
                moebius().eval(n).unwrap(),
                q(numeric::moebius(n).unwrap() as i64)
            );
            assert_eq!(
                liouville().eval(n).unwrap(),
                q(numeric::liouville(n).unwrap() as i64)
            );
            assert_eq!(
                xi().eval(n).unwrap(),
                Rational::from_integer(numeric::xi(n).unwrap())
            );
            assert_eq!(
                tau().eval(n).unwrap(),
                q(numeric::divisors(n).unwrap().len() as i64)
            );
        }
    }

    #[test]
    fn spot_values() {
        assert_eq!(delta().eval(1).unwrap(), q(1));
        assert_eq!(delta().eval(5).unwrap(), q(0));
        assert_eq!(one().eval(12).unwrap(), q(1));
        assert_eq!(xi().eval(12).unwrap(), q(2));
        assert_eq!(power(2).eval(12).unwrap(), q(144));
        assert_eq!(
            power(-1).eval(4).unwrap(),
            Rational::new(1.into(), 4.into())
        );
        assert_eq!(r_omega(q(0)).eval(1).unwrap(), q(1));
        assert_eq!(r_omega(q(0)).eval(2).unwrap(), q(0));
        assert_eq!(r_omega(q(-2)).eval(12).unwrap(), q(-8));
    }
}
