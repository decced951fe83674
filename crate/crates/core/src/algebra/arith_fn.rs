use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{factorize, require_positive, Rational};

/// Value of `f` at a prime power `p^a`, `a >= 1`.
pub type PrimePowerRule = Arc<dyn Fn(u64, u32) -> Result<Rational> + Send + Sync>;
/// Common value of `f(p^a)` over all primes `p`, `a >= 1`.
pub type ExponentRule = Arc<dyn Fn(u32) -> Result<Rational> + Send + Sync>;
/// Arbitrary rule `n -> f(n)`.
pub type ClosureRule = Arc<dyn Fn(u64) -> Result<Rational> + Send + Sync>;

/// Tri-state property claim carried by an [`ArithFn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Claim {
    Yes,
    No,
    #[default]
    Unknown,
}

impl Claim {
    pub fn is_yes(self) -> bool {
        self == Claim::Yes
    }

    pub(crate) fn both(a: Claim, b: Claim) -> Claim {
        if a.is_yes() && b.is_yes() {
            Claim::Yes
        } else {
            Claim::Unknown
        }
    }
}

/// Declared structural properties. A `Yes` must be a true statement; the
/// multiplicativity module verifies claims up to a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub multiplicative: Claim,
    pub completely_multiplicative: Claim,
    pub prime_independent: Claim,
}

impl Flags {
    pub fn multiplicative() -> Self {
        Flags {
            multiplicative: Claim::Yes,
            ..Default::default()
        }
    }

    pub fn completely_multiplicative() -> Self {
        Flags {
            multiplicative: Claim::Yes,
            completely_multiplicative: Claim::Yes,
            ..Default::default()
        }
    }

    pub fn prime_independent(mut self) -> Self {
        self.prime_independent = Claim::Yes;
        self
    }

    pub fn not_completely(mut self) -> Self {
        self.completely_multiplicative = Claim::No;
        self
    }
}

/// How the values of an [`ArithFn`] are produced.
#[derive(Clone)]
pub enum Definition {
    /// Explicit values for `1..=table.len()`; anything beyond is an error.
    Table(Arc<Vec<Rational>>),
    /// Multiplicative function given on prime powers.
    Multiplicative(PrimePowerRule),
    /// Multiplicative function whose prime-power values depend only on the exponent.
    PrimeIndependent(ExponentRule),
    Closure(ClosureRule),
}

struct Inner {
    name: String,
    definition: Definition,
    flags: Flags,
    memo: RwLock<HashMap<u64, Rational>>,
}

/// An arithmetical function with exact rational values.
///
/// Cloning is cheap and shares the memo cache. Evaluation may happen from
/// several threads; the cache only ever receives the value the definition
/// produces, so concurrent fills agree with sequential ones.
#[derive(Clone)]
pub struct ArithFn(Arc<Inner>);

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithFn")
            .field("name", &self.0.name)
            .field("flags", &self.0.flags)
            .finish()
    }
}

impl ArithFn {
    pub fn new(name: impl Into<String>, definition: Definition, flags: Flags) -> Self {
        let mut flags = flags;
        if matches!(
            definition,
            Definition::Multiplicative(_) | Definition::PrimeIndependent(_)
        ) {
            flags.multiplicative = Claim::Yes;
        }
        if matches!(definition, Definition::PrimeIndependent(_)) {
            flags.prime_independent = Claim::Yes;
        }
        ArithFn(Arc::new(Inner {
            name: name.into(),
            definition,
            flags,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    /// Table of values `f(1), ..., f(N)`.
    pub fn from_table(name: impl Into<String>, values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty table".into()));
        }
        Ok(Self::new(
            name,
            Definition::Table(Arc::new(values)),
            Flags::default(),
        ))
    }

    pub fn from_fn(
        name: impl Into<String>,
        rule: impl Fn(u64) -> Result<Rational> + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, Definition::Closure(Arc::new(rule)), Flags::default())
    }

    /// Function equal to `values[n - 1]` on the table and zero beyond it.
    pub fn finite_support(name: impl Into<String>, values: Vec<Rational>) -> Self {
        Self::from_fn(name, move |n| {
            Ok(values
                .get((n - 1) as usize)
                .cloned()
                .unwrap_or_else(Rational::zero))
        })
    }

    pub fn multiplicative(
        name: impl Into<String>,
        rule: impl Fn(u64, u32) -> Result<Rational> + Send + Sync + 'static,
        flags: Flags,
    ) -> Self {
        Self::new(name, Definition::Multiplicative(Arc::new(rule)), flags)
    }

    pub fn prime_independent(
        name: impl Into<String>,
        rule: impl Fn(u32) -> Result<Rational> + Send + Sync + 'static,
        flags: Flags,
    ) -> Self {
        Self::new(name, Definition::PrimeIndependent(Arc::new(rule)), flags)
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn flags(&self) -> Flags {
        self.0.flags
    }

    pub fn definition(&self) -> &Definition {
        &self.0.definition
    }

    /// Same definition under a new name and claims; the memo is not shared.
    pub fn with_flags(&self, flags: Flags) -> Self {
        Self::new(self.0.name.clone(), self.0.definition.clone(), flags)
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self::new(name, self.0.definition.clone(), self.0.flags)
    }

    pub fn is_multiplicative(&self) -> bool {
        self.0.flags.multiplicative.is_yes()
    }

    pub fn is_completely_multiplicative(&self) -> bool {
        self.0.flags.completely_multiplicative.is_yes()
    }

    pub fn is_prime_independent(&self) -> bool {
        self.0.flags.prime_independent.is_yes()
    }

    /// Largest `n` with a defined value, for tables.
    pub fn table_bound(&self) -> Option<u64> {
        match &self.0.definition {
            Definition::Table(t) => Some(t.len() as u64),
            _ => None,
        }
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        require_positive(n, "eval")?;
        if let Some(v) = self.0.memo.read().expect("memo poisoned").get(&n) {
            return Ok(v.clone());
        }
        let v = self.compute(n)?;
        self.0
            .memo
            .write()
            .expect("memo poisoned")
            .entry(n)
            .or_insert_with(|| v.clone());
        Ok(v)
    }

    fn compute(&self, n: u64) -> Result<Rational> {
        match &self.0.definition {
            Definition::Table(t) => t.get((n - 1) as usize).cloned().ok_or(Error::OutOfTable {
                value: n,
                bound: t.len() as u64,
            }),
            Definition::Multiplicative(rule) => {
                let mut acc = Rational::one();
                for &(p, a) in factorize(n)?.factors() {
                    acc *= rule(p, a)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            Definition::PrimeIndependent(rule) => {
                let mut acc = Rational::one();
                for &(_, a) in factorize(n)?.factors() {
                    acc *= rule(a)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc)
            }
            Definition::Closure(rule) => rule(n),
        }
    }

    /// `f(p^a)` for a prime `p`, without going through the memo for rules.
    pub fn eval_prime_power(&self, p: u64, a: u32) -> Result<Rational> {
        if a == 0 {
            return self.eval(1);
        }
        match &self.0.definition {
            Definition::Multiplicative(rule) => rule(p, a),
            Definition::PrimeIndependent(rule) => rule(a),
            _ => {
                let n = p
                    .checked_pow(a)
                    .ok_or_else(|| Error::InvalidArgument(format!("{p}^{a} overflows")))?;
                self.eval(n)
            }
        }
    }

    /// Values on `1..=bound`.
    pub fn values(&self, bound: u64) -> Result<Vec<Rational>> {
        (1..=bound).map(|n| self.eval(n)).collect()
    }

    pub fn table(&self, bound: u64) -> Result<ConvolutionTable> {
        if bound == 0 {
            return Err(Error::InvalidArgument(
                "table bound must be positive".into(),
            ));
        }
        Ok(ConvolutionTable {
            bound,
            values: self.values(bound)?,
            provenance: self.0.name.clone(),
        })
    }
}

/// Dense values of a function on `1..=bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionTable {
    pub bound: u64,
    pub values: Vec<Rational>,
    /// Expression that produced the values.
    pub provenance: String,
}

impl ConvolutionTable {
    pub fn get(&self, n: u64) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.values.get(i as usize))
    }

    pub fn into_fn(self) -> ArithFn {
        ArithFn::new(
            self.provenance,
            Definition::Table(Arc::new(self.values)),
            Flags::default(),
        )
    }
}

/// Integer as a rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `a / b` as a rational.
pub fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}
