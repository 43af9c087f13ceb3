use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of a generalized continued fraction whose partial numerators
/// `a_ν` and partial denominators `b_ν` are periodic with period `d` for
/// `ν ≥ 1`, together with the leading term `b₀`.
///
/// ```text
/// b₀ + a₁/(b₁ + a₂/(b₂ + …))
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct PeriodicSystem {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
    b0: BigInt,
    strict: bool,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    d: usize,
    #[serde(with = "crate::serde_int::vec")]
    a: Vec<BigInt>,
    #[serde(with = "crate::serde_int::vec")]
    b: Vec<BigInt>,
    #[serde(with = "crate::serde_int")]
    b0: BigInt,
    #[serde(default)]
    strict: bool,
}

impl TryFrom<RawSystem> for PeriodicSystem {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        if raw.a.len() != raw.d || raw.b.len() != raw.d {
            return Err(Error::InvalidSystem(format!(
                "d = {} but a has {} and b has {} entries",
                raw.d,
                raw.a.len(),
                raw.b.len()
            )));
        }
        PeriodicSystem::new(raw.a, raw.b, raw.b0, raw.strict)
    }
}

impl From<PeriodicSystem> for RawSystem {
    fn from(s: PeriodicSystem) -> Self {
        RawSystem {
            d: s.a.len(),
            a: s.a,
            b: s.b,
            b0: s.b0,
            strict: s.strict,
        }
    }
}

impl PeriodicSystem {
    pub fn new(a: Vec<BigInt>, b: Vec<BigInt>, b0: BigInt, strict: bool) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidSystem("period must be at least 1".into()));
        }
        if a.len() != b.len() {
            return Err(Error::InvalidSystem(format!(
                "a has {} entries but b has {}",
                a.len(),
                b.len()
            )));
        }
        if let Some(i) = a.iter().position(Zero::is_zero) {
            return Err(Error::InvalidSystem(format!("a_{} is zero", i + 1)));
        }
        if strict {
            let one = BigInt::one();
            if let Some(i) = a.iter().position(|x| x < &one) {
                return Err(Error::InvalidSystem(format!("strict system has a_{} < 1", i + 1)));
            }
            if let Some(i) = b.iter().position(|x| x < &one) {
                return Err(Error::InvalidSystem(format!("strict system has b_{} < 1", i + 1)));
            }
        }
        Ok(Self { a, b, b0, strict })
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(a: &[i64], b: &[i64], b0: i64, strict: bool) -> Result<Self> {
        Self::new(
            a.iter().copied().map(BigInt::from).collect(),
            b.iter().copied().map(BigInt::from).collect(),
            BigInt::from(b0),
            strict,
        )
    }

    /// `a = b = (1)`, whose denominators are the shifted Fibonacci numbers.
    pub fn fibonacci() -> Self {
        Self::from_ints(&[1], &[1], 1, true).expect("valid")
    }

    /// Strict when every coefficient is positive, non-strict otherwise.
    pub fn inferred(a: &[i64], b: &[i64], b0: i64) -> Result<Self> {
        let strict = a.iter().chain(b).all(|&x| x >= 1);
        Self::from_ints(a, b, b0, strict)
    }

    pub fn period(&self) -> usize {
        self.a.len()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.a
    }

    pub fn denominators(&self) -> &[BigInt] {
        &self.b
    }

    pub fn b0(&self) -> &BigInt {
        &self.b0
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn with_b0(&self, b0: BigInt) -> Self {
        Self { b0, ..self.clone() }
    }

    fn slot(&self, nu: i64) -> usize {
        (nu - 1).rem_euclid(self.a.len() as i64) as usize
    }

    /// `a_ν`, extended periodically to every integer `ν`.
    pub fn a(&self, nu: i64) -> &BigInt {
        &self.a[self.slot(nu)]
    }

    /// `b_ν`, extended periodically to every integer `ν`. Note `b(0)` is
    /// `b_d`, not the leading term; see [`Self::head`].
    pub fn b(&self, nu: i64) -> &BigInt {
        &self.b[self.slot(nu)]
    }

    /// `b_λ` as the head of the tail fraction starting at `λ`: the leading
    /// term `b₀` when `λ = 0`, the periodic value otherwise.
    pub fn head(&self, lambda: i64) -> &BigInt {
        if lambda == 0 {
            &self.b0
        } else {
            self.b(lambda)
        }
    }

    /// `a₁a₂⋯a_d`.
    pub fn numerator_product(&self) -> BigInt {
        self.a.iter().product()
    }

    /// Product `a_lo ⋯ a_hi` of partial numerators (empty product is 1).
    pub fn numerator_range_product(&self, lo: i64, hi: i64) -> BigInt {
        (lo..=hi).map(|i| self.a(i)).product()
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.a
            .iter()
            .chain(&self.b)
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }
}

impl std::fmt::Display for PeriodicSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "d={} a=({}) b=({}) b0={}",
            self.period(),
            join(&self.a),
            join(&self.b),
            self.b0
        )
    }
}
