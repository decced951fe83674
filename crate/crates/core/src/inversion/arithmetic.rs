//! Inversion for `φ_n(x) = n x` on the positive integers:
//! `f(n) = Σ_m h(m)/ξ(m) g(mn)` and `g(n) = Σ_m h^{-1∘}(m)/ξ(m) f(mn)`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{binomial_inverse, ArithFn};
use crate::error::{invalid, Error, Result};
use crate::series::{
    divisor_bound_constant, riemann_zeta_real, GrowthCertificate, SeriesApprox, SeriesFn,
};

const EPS: f64 = f64::EPSILON;

type DecayEval = Arc<dyn Fn(u64) -> Result<SeriesApprox> + Send + Sync>;

/// A real arithmetical function with `|g(n)| <= c n^{-q}`.
#[derive(Clone)]
pub struct DecayingFn {
    name: String,
    c: f64,
    q: f64,
    eval: DecayEval,
}

impl fmt::Debug for DecayingFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DecayingFn({}, |g(n)| <= {} n^-{})",
            self.name, self.c, self.q
        )
    }
}

impl DecayingFn {
    pub fn new(
        name: impl Into<String>,
        c: f64,
        q: f64,
        eval: impl Fn(u64) -> Result<SeriesApprox> + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite() && q.is_finite()) {
            return Err(invalid(
                "decay certificate needs finite c >= 0 and finite q",
            ));
        }
        Ok(DecayingFn {
            name: name.into(),
            c,
            q,
            eval: Arc::new(eval),
        })
    }

    /// `n ↦ n^{-q}`.
    pub fn power(q: f64) -> Self {
        DecayingFn::new(format!("n^-{q}"), 1.0, q, move |n| {
            let v = (n as f64).powf(-q);
            Ok(SeriesApprox {
                value: v,
                error_bound: EPS * v,
                terms_used: 1,
            })
        })
        .expect("valid certificate")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn decay(&self) -> (f64, f64) {
        (self.c, self.q)
    }

    /// `g(n)`, checked against the certificate.
    pub fn eval(&self, n: u64) -> Result<SeriesApprox> {
        if n == 0 {
            return Err(invalid("argument must be positive"));
        }
        let v = (self.eval)(n)?;
        let bound = self.c * (n as f64).powf(-self.q);
        if v.value.abs() > bound * (1.0 + 1e-9) + v.error_bound {
            return Err(Error::Certificate(format!(
                "|{}({n})| = {} exceeds {}·{n}^-{}",
                self.name,
                v.value.abs(),
                self.c,
                self.q
            )));
        }
        Ok(v)
    }
}

/// `Σ_{m <= M} h(m)/ξ(m) g(mn)` with tail
/// `C_h c_g n^{-q} M^{r_h-q+1}/(q-r_h-1)`.
pub fn arithmetic_transform(
    h: &SeriesFn,
    g: &DecayingFn,
    n: u64,
    m_max: u64,
) -> Result<SeriesApprox> {
    if n == 0 || m_max == 0 {
        return Err(invalid("n and the cutoff must be positive"));
    }
    let hc = h.growth();
    let finite = h.support().is_some_and(|b| b <= m_max);
    if !finite && g.q <= hc.r + 1.0 {
        return Err(Error::Certificate(format!(
            "decay n^-{} too slow for weights growing like n^{}",
            g.q, hc.r
        )));
    }
    let hi = h.support().map_or(m_max, |b| b.min(m_max));
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut err = 0.0;
    for m in 1..=hi {
        let w = h.weight(m)?;
        h.check_weight(m, w)?;
        if w == 0.0 {
            continue;
        }
        let arg = m.checked_mul(n).ok_or_else(|| invalid("m·n overflows"))?;
        let gv = g.eval(arg)?;
        let t = w * gv.value;
        let s = sum + t;
        comp += if sum.abs() >= t.abs() {
            (sum - s) + t
        } else {
            (t - s) + sum
        };
        sum = s;
        err += w.abs() * gv.error_bound + 4.0 * EPS * (t.abs() + s.abs());
    }
    let tail = if finite {
        0.0
    } else {
        hc.c * g.c * (n as f64).powf(-g.q) * (m_max as f64).powf(hc.r - g.q + 1.0)
            / (g.q - hc.r - 1.0)
    };
    Ok(SeriesApprox {
        value: sum + comp,
        error_bound: err + tail,
        terms_used: hi,
    })
}

/// `n ↦ Σ_m h(m)/ξ(m) g(mn)` as a [`DecayingFn`] with
/// `|f(n)| <= c_g C_h ζ(q - r_h) n^{-q}`.
pub fn arithmetic_transform_fn(h: &SeriesFn, g: &DecayingFn, m_max: u64) -> Result<DecayingFn> {
    let hc = h.growth();
    let c = match h.support() {
        Some(b) => {
            let mut s = 0.0;
            for m in 1..=b {
                s += h.weight(m)?.abs() * (m as f64).powf(-g.q);
            }
            g.c * s * (1.0 + 1e-12)
        }
        None => g.c * hc.c * riemann_zeta_real(g.q - hc.r)?.upper(),
    };
    let (h, g2) = (h.clone(), g.clone());
    DecayingFn::new(format!("{}⊡{}", h.name(), g.name()), c, g.q, move |n| {
        arithmetic_transform(&h, &g2, n, m_max)
    })
}

/// Recovers `g(n) = Σ_m h^{-1∘}(m)/ξ(m) f(mn)`; `inverse_growth`
/// certifies `h^{-1∘}/ξ` and is checked on `1..=m_max`.
pub fn arithmetic_invert(
    h: &ArithFn,
    inverse_growth: GrowthCertificate,
    f: &DecayingFn,
    n: u64,
    m_max: u64,
) -> Result<SeriesApprox> {
    if num::Zero::is_zero(&h.eval(1)?) {
        return Err(Error::NotInvertible);
    }
    let inv = SeriesFn::from_arith(&binomial_inverse(h)?, inverse_growth, m_max)?;
    arithmetic_transform(&inv, f, n, m_max)
}

/// The summability hypothesis `Σ n^ε |g(n)| < ∞` checked from a decay
/// certificate, with the divisor bound `τ(n) <= C(ε) n^ε` used to
/// justify the rearrangement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideCondition {
    pub epsilon: f64,
    pub divisor_constant: f64,
    /// Upper bound on `Σ n^ε |g(n)|`.
    pub weighted_sum_bound: f64,
}

pub fn summability_side_condition(g: &DecayingFn) -> Result<SideCondition> {
    if g.q <= 1.0 {
        return Err(Error::Certificate(format!(
            "decay n^-{} does not give Σ n^ε |g(n)| < ∞ for any ε > 0",
            g.q
        )));
    }
    let epsilon = ((g.q - 1.0) / 2.0).min(1.0);
    Ok(SideCondition {
        epsilon,
        divisor_constant: divisor_bound_constant(epsilon),
        weighted_sum_bound: g.c * riemann_zeta_real(g.q - epsilon)?.upper(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtins;

    #[test]
    fn n_minus_four_round_trip() {
        let g = DecayingFn::power(4.0);
        summability_side_condition(&g).unwrap();
        let f = arithmetic_transform_fn(&SeriesFn::one(), &g, 2000).unwrap();
        for n in [1u64, 2, 5] {
            let back = arithmetic_invert(
                &builtins::one(),
                GrowthCertificate::new(1.0, 0.0).unwrap(),
                &f,
                n,
                2000,
            )
            .unwrap();
            let truth = (n as f64).powi(-4);
            assert!(back.contains(truth), "n = {n}: {back:?}");
            assert!((back.value - truth).abs() < 1e-8);
        }
    }

    #[test]
    fn delta_is_identity() {
        let g = DecayingFn::power(3.0);
        let f = arithmetic_transform(&SeriesFn::delta(), &g, 7, 10).unwrap();
        assert_eq!(f.value, 7f64.powi(-3));
        assert_eq!(f.terms_used, 1);
    }

    #[test]
    fn side_conditions() {
        assert!(matches!(
            summability_side_condition(&DecayingFn::power(1.0)),
            Err(Error::Certificate(_))
        ));
        let c = summability_side_condition(&DecayingFn::power(2.0)).unwrap();
        assert_eq!(c.epsilon, 0.5);
        assert!(arithmetic_transform(&SeriesFn::one(), &DecayingFn::power(0.5), 1, 10).is_err());
    }

    #[test]
    fn symmetric_pair() {
        // h = λ, h^{-1} = I
        let g = DecayingFn::power(3.0);
        let f = arithmetic_transform_fn(&SeriesFn::liouville(), &g, 3000).unwrap();
        let back = arithmetic_invert(
            &builtins::liouville(),
            GrowthCertificate::new(1.0, 0.0).unwrap(),
            &f,
            3,
            3000,
        )
        .unwrap();
        assert!(back.contains(1.0 / 27.0));
    }
}
