//! Compensated summation with a running absolute sum for error bounds.

use num::complex::Complex64;

const EPS: f64 = f64::EPSILON;

/// Neumaier summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Sum {
    s: f64,
    c: f64,
    abs: f64,
    count: u64,
}

impl Sum {
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
        self.abs += x.abs();
        self.count += 1;
    }

    pub fn value(&self) -> f64 {
        self.s + self.c
    }

    pub fn abs_total(&self) -> f64 {
        self.abs
    }

    /// Rounding bound when each summand carries relative error at most
    /// `term_ulps · ε`. A single summand is taken as exact.
    pub fn rounding(&self, term_ulps: f64) -> f64 {
        if self.count <= 1 {
            return 0.0;
        }
        let n = self.count as f64;
        EPS * (term_ulps * self.abs + 2.0 * self.value().abs()) + 4.0 * n * EPS * EPS * self.abs
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct ComplexSum {
    re: Sum,
    im: Sum,
}

impl ComplexSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn rounding(&self, term_ulps: f64) -> f64 {
        self.re.rounding(term_ulps) + self.im.rounding(term_ulps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensates_cancellation() {
        let mut s = Sum::default();
        for x in [1e16, 1.0, -1e16, 1.0] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
        let mut one = Sum::default();
        one.add(0.1);
        assert_eq!(one.rounding(16.0), 0.0);
    }
}
