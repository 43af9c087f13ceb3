//! Software floating point for the transcendental side of series checks.

use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadratic::QuadraticNumber;

pub use astro_float::BigFloat as Real;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_DIGITS: u32 = 10;

/// Decimal working precision and a cap on the number of series terms.
/// Comparisons use the tolerance `10^-(digits-5)`; arithmetic runs with ten
/// guard digits on top of `digits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub digits: u32,
    pub max_terms: usize,
}

impl PrecisionContext {
    pub fn new(digits: u32, max_terms: usize) -> Result<Self> {
        if digits < 20 {
            return Err(Error::InvalidParameters(format!("digits = {digits} is below 20")));
        }
        if max_terms == 0 {
            return Err(Error::InvalidParameters("max_terms must be positive".into()));
        }
        Ok(Self { digits, max_terms })
    }

    /// Decimal exponent `k` of the tolerance `10^-k`.
    pub fn tolerance_exponent(&self) -> u32 {
        self.digits - 5
    }

    pub fn arith(&self) -> Arith {
        Arith::with_digits(self.digits + GUARD_DIGITS)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            digits: 50,
            max_terms: 60,
        }
    }
}

/// Binary precision plus the constants cache needed by `π`, `ln` and the
/// inverse trigonometric functions.
pub struct Arith {
    p: usize,
    digits: u32,
    cc: Consts,
}

impl Arith {
    pub fn with_digits(digits: u32) -> Self {
        // log2(10) < 3.33; one extra word absorbs rounding in long sums.
        let p = (digits as usize * 333).div_ceil(100) + 64;
        Self {
            p,
            digits,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    pub fn int(&self, n: &BigInt) -> Real {
        if n.is_zero() {
            return BigFloat::from_i64(0, self.p);
        }
        let bits = n.bits() as usize;
        let shift = (64 - bits % 64) % 64;
        let mag: BigInt = n.abs() << shift;
        let words: Vec<Word> = mag.to_u64_digits().1;
        let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
        BigFloat::from_words(&words, sign, bits as i32)
    }

    pub fn small(&self, n: i64) -> Real {
        BigFloat::from_i64(n, self.p)
    }

    pub fn rational(&self, r: &BigRational) -> Real {
        self.div(&self.int(r.numer()), &self.int(r.denom()))
    }

    /// Value of `p + q√Δ`; fails for a negative radicand with a `√Δ` part.
    pub fn quadratic(&self, x: &QuadraticNumber) -> Result<Real> {
        if x.is_rational() {
            return Ok(self.rational(x.p()));
        }
        if x.delta().is_negative() {
            return Err(Error::DegenerateDiscriminant("complex value"));
        }
        let root = self.sqrt(&self.int(x.delta()));
        Ok(self.add(&self.rational(x.p()), &self.mul(&self.rational(x.q()), &root)))
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        a.div(b, self.p, RM)
    }

    pub fn neg(&self, a: &Real) -> Real {
        a.neg()
    }

    pub fn abs(&self, a: &Real) -> Real {
        a.abs()
    }

    pub fn sqrt(&self, a: &Real) -> Real {
        a.sqrt(self.p, RM)
    }

    pub fn powi(&self, a: &Real, n: usize) -> Real {
        a.powi(n, self.p, RM)
    }

    pub fn pi(&mut self) -> Real {
        self.cc.pi(self.p, RM)
    }

    pub fn ln(&mut self, a: &Real) -> Real {
        a.ln(self.p, RM, &mut self.cc)
    }

    pub fn atan(&mut self, a: &Real) -> Real {
        a.atan(self.p, RM, &mut self.cc)
    }

    pub fn atanh(&mut self, a: &Real) -> Real {
        a.atanh(self.p, RM, &mut self.cc)
    }

    /// `10^-k`.
    pub fn ten_to_minus(&self, k: u32) -> Real {
        self.div(&self.small(1), &self.powi(&self.small(10), k as usize))
    }

    pub fn cmp(&self, a: &Real, b: &Real) -> Ordering {
        match a.cmp(b) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            Some(_) => Ordering::Greater,
            None => Ordering::Greater,
        }
    }

    pub fn is_finite(&self, a: &Real) -> bool {
        !a.is_nan() && !a.is_inf()
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn decimal(&mut self, a: &Real, sig: usize) -> String {
        if a.is_nan() {
            return "NaN".into();
        }
        if a.is_inf() {
            return if a.is_negative() { "-inf" } else { "inf" }.into();
        }
        let raw = a.format(Radix::Dec, RM, &mut self.cc).unwrap_or_else(|_| "NaN".into());
        render_decimal(&raw, sig.max(1))
    }

    /// Double-precision approximation, for diagnostics.
    pub fn to_f64(&mut self, a: &Real) -> f64 {
        self.decimal(a, 20).parse().unwrap_or(f64::NAN)
    }
}

/// Rewrites astro-float's `d.ddd…e±x` as a rounded decimal: positional when
/// the exponent is moderate, scientific otherwise.
fn render_decimal(raw: &str, sig: usize) -> String {
    let (negative, body) = match raw.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, raw),
    };
    let (mantissa, exp) = match body.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let mut digits: Vec<u8> = int_part.bytes().chain(frac_part.bytes()).map(|b| b - b'0').collect();
    // Position of the decimal point relative to the first digit.
    let mut point = int_part.len() as i64 + exp;
    while digits.len() > 1 && digits[0] == 0 {
        digits.remove(0);
        point -= 1;
    }
    if digits.iter().all(|&d| d == 0) {
        return "0".into();
    }
    if digits.len() > sig {
        let round_up = digits[sig] >= 5;
        digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.truncate(sig);
                    point += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    while digits.len() > 1 && digits.last() == Some(&0) {
        digits.pop();
    }
    let text: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let sign = if negative { "-" } else { "" };
    let sci_exp = point - 1;
    if (-6..21).contains(&sci_exp) {
        if point <= 0 {
            format!("{sign}0.{}{text}", "0".repeat((-point) as usize))
        } else if point as usize >= text.len() {
            format!("{sign}{text}{}", "0".repeat(point as usize - text.len()))
        } else {
            let (a, b) = text.split_at(point as usize);
            format!("{sign}{a}.{b}")
        }
    } else {
        let (a, b) = text.split_at(1);
        let frac = if b.is_empty() { String::new() } else { format!(".{b}") };
        format!("{sign}{a}{frac}e{sci_exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        assert_eq!(render_decimal("1.4142135623e+0", 5), "1.4142");
        assert_eq!(render_decimal("9.9996e+0", 4), "10");
        assert_eq!(render_decimal("-1.2e+2", 10), "-120");
        assert_eq!(render_decimal("3.3333e-7", 3), "3.33e-7");
        assert_eq!(render_decimal("1.25e-3", 2), "0.0013");
        assert_eq!(render_decimal("0.0", 10), "0");
    }

    #[test]
    fn integer_conversion_is_exact() {
        let mut a = Arith::with_digits(60);
        let big: BigInt = "641614773393652358999201580".parse().unwrap();
        assert_eq!(a.decimal(&a.int(&big), 40), "6.4161477339365235899920158e26");
        assert_eq!(a.decimal(&a.int(&BigInt::from(-5)), 10), "-5");
        assert_eq!(a.decimal(&a.int(&BigInt::from(0)), 10), "0");
    }

    #[test]
    fn constants_and_functions() {
        let mut a = Arith::with_digits(40);
        let pi = a.pi();
        assert_eq!(a.decimal(&pi, 30), "3.14159265358979323846264338328");
        let half = a.rational(&BigRational::new(1.into(), 2.into()));
        let t = a.atanh(&half);
        let lhs = a.mul(&a.small(2), &t);
        let rhs = a.ln(&a.small(3));
        let diff = a.abs(&a.sub(&lhs, &rhs));
        assert_eq!(a.cmp(&diff, &a.ten_to_minus(40)), Ordering::Less);
        let q = QuadraticNumber::new(BigRational::from_integer(3.into()), BigRational::from_integer((-2).into()), 2.into());
        let v = a.quadratic(&q).unwrap();
        assert_eq!(a.decimal(&v, 12), "0.171572875254");
    }

    #[test]
    fn context_validation() {
        assert!(PrecisionContext::new(19, 10).is_err());
        assert!(PrecisionContext::new(20, 0).is_err());
        let ctx = PrecisionContext::new(50, 40).unwrap();
        assert_eq!(ctx.tolerance_exponent(), 45);
    }
}
