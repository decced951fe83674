//! Exact rational combinations of logarithms of primes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num::{BigRational, Signed, ToPrimitive, Zero};

use super::factor::factorize;
use crate::error::Result;

/// `Σ c_p · log p` with exact rational coefficients. Zero coefficients are
/// never stored, so structural equality is value equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LogLinear {
    coeffs: BTreeMap<u64, BigRational>,
}

impl LogLinear {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `log p` for a prime `p`.
    pub fn log_prime(p: u64) -> Self {
        Self::zero().with_term(p, BigRational::from_integer(1.into()))
    }

    /// `log n = Σ ν_p(n) log p`.
    pub fn log_of(n: u64) -> Result<Self> {
        let mut out = Self::zero();
        for &(p, a) in factorize(n)?.factors() {
            out.add_term(p, BigRational::from_integer(a.into()));
        }
        Ok(out)
    }

    pub fn with_term(mut self, p: u64, c: BigRational) -> Self {
        self.add_term(p, c);
        self
    }

    pub fn add_term(&mut self, p: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(p).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: u64) -> BigRational {
        self.coeffs
            .get(&p)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&p, c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LogLinear {
            coeffs: self.coeffs.iter().map(|(&p, v)| (p, v * c)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(&p, c)| c.to_f64().unwrap_or(f64::NAN) * (p as f64).ln())
            .sum()
    }
}

impl AddAssign<&LogLinear> for LogLinear {
    fn add_assign(&mut self, rhs: &LogLinear) {
        for (&p, c) in &rhs.coeffs {
            self.add_term(p, c.clone());
        }
    }
}

impl Add for &LogLinear {
    type Output = LogLinear;
    fn add(self, rhs: &LogLinear) -> LogLinear {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &LogLinear {
    type Output = LogLinear;
    fn neg(self) -> LogLinear {
        LogLinear {
            coeffs: self.coeffs.iter().map(|(&p, c)| (p, -c)).collect(),
        }
    }
}

impl Sub for &LogLinear {
    type Output = LogLinear;
    fn sub(self, rhs: &LogLinear) -> LogLinear {
        self + &(-rhs)
    }
}

impl fmt::Display for LogLinear {
    /// Renders as `2*log(2)+log(3)`; the empty combination prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            let one = BigRational::from_integer(1.into());
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if mag == one {
                write!(f, "log({p})")?;
            } else {
                write!(f, "{mag}*log({p})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn log_of_products_adds() {
        let l12 = LogLinear::log_of(12).unwrap();
        assert_eq!(l12, LogLinear::zero().with_term(2, q(2)).with_term(3, q(1)));
        let sum = &LogLinear::log_of(4).unwrap() + &LogLinear::log_of(3).unwrap();
        assert_eq!(sum, l12);
        assert!(LogLinear::log_of(1).unwrap().is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = LogLinear::log_prime(5);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a), LogLinear::zero());
    }

    #[test]
    fn display_and_float() {
        let l = LogLinear::log_of(12).unwrap();
        assert_eq!(l.to_string(), "2*log(2)+log(3)");
        assert!((l.to_f64() - 12f64.ln()).abs() < 1e-12);
        assert_eq!((-&LogLinear::log_prime(7)).to_string(), "-log(7)");
    }
}
