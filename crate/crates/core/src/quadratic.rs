//! Exact elements `p + q√Δ` of ℚ(√Δ). The radicand is kept as given, without
//! extracting square factors.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: BigRational,
    q: BigRational,
    delta: BigInt,
}

impl QuadraticNumber {
    pub fn new(p: BigRational, q: BigRational, delta: BigInt) -> Self {
        Self { p, q, delta }
    }

    pub fn rational(p: BigRational, delta: BigInt) -> Self {
        Self::new(p, BigRational::zero(), delta)
    }

    pub fn integer(n: impl Into<BigInt>, delta: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n.into()), delta)
    }

    /// `√Δ` itself.
    pub fn sqrt_delta(delta: BigInt) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), delta)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// The rational value, if the `√Δ` part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.q.is_zero().then_some(&self.p)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.p.clone(), -self.q.clone(), self.delta.clone())
    }

    /// `p² − q²Δ`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(self.delta.clone())
    }

    /// Radicand shared by `self` and `other`. A purely rational operand
    /// adopts the other's radicand.
    pub fn common_delta(&self, other: &Self) -> Result<BigInt> {
        if self.delta == other.delta || other.q.is_zero() {
            Ok(self.delta.clone())
        } else if self.q.is_zero() {
            Ok(other.delta.clone())
        } else {
            Err(Error::RadicandMismatch(self.delta.to_string(), other.delta.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let delta = self.common_delta(other)?;
        Ok(Self::new(&self.p + &other.p, &self.q + &other.q, delta))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let delta = self.common_delta(other)?;
        Ok(Self::new(&self.p - &other.p, &self.q - &other.q, delta))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let delta = self.common_delta(other)?;
        let d = BigRational::from_integer(delta.clone());
        Ok(Self::new(
            &self.p * &other.p + &self.q * &other.q * d,
            &self.p * &other.q + &self.q * &other.p,
            delta,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let norm = other.norm();
        if norm.is_zero() {
            return Err(Error::DivisionByZero("quadratic divisor has zero norm"));
        }
        let num = self.checked_mul(&other.conj())?;
        Ok(Self::new(num.p / &norm, num.q / &norm, num.delta))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.p * k, &self.q * k, self.delta.clone())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::integer(1, self.delta.clone());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign of the real number `p + q√Δ`; requires `Δ ≥ 0`.
    pub fn signum(&self) -> Result<Ordering> {
        if self.delta.is_negative() && !self.q.is_zero() {
            return Err(Error::DegenerateDiscriminant("sign is undefined for a negative radicand"));
        }
        let zero = BigRational::zero();
        let sp = self.p.cmp(&zero);
        let sq = self.q.cmp(&zero);
        Ok(match (sp, sq) {
            (a, Ordering::Equal) => a,
            (Ordering::Equal, b) => b,
            (a, b) if a == b => a,
            // Opposite signs: compare p² with q²Δ.
            (a, _) => {
                let p2 = &self.p * &self.p;
                let q2d = &self.q * &self.q * BigRational::from_integer(self.delta.clone());
                match p2.cmp(&q2d) {
                    Ordering::Greater => a,
                    Ordering::Less => a.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        })
    }

    pub fn abs(&self) -> Result<Self> {
        Ok(if self.signum()? == Ordering::Less { -self } else { self.clone() })
    }

    /// Exact comparison of real values; requires a common non-negative radicand.
    pub fn cmp_value(&self, other: &Self) -> Result<Ordering> {
        self.checked_sub(other)?.signum()
    }

    /// Exact comparison of absolute values.
    pub fn cmp_abs(&self, other: &Self) -> Result<Ordering> {
        self.abs()?.cmp_value(&other.abs()?)
    }

    /// Double-precision approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * self.delta.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &QuadraticNumber {
            type Output = QuadraticNumber;

            /// Panics if both operands carry `√Δ` parts with different radicands.
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs).expect("operands live in different quadratic fields")
            }
        }

        impl $trait for QuadraticNumber {
            type Output = QuadraticNumber;

            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        QuadraticNumber::new(-self.p.clone(), -self.q.clone(), self.delta.clone())
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("√{}", self.delta);
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.p)),
            (true, false) => write!(f, "{}", coefficient(&self.q, &root, true)),
            (false, false) => {
                let sign = if self.q.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}", fmt_rational(&self.p), sign, coefficient(&self.q.abs(), &root, false))
            }
        }
    }
}

fn coefficient(q: &BigRational, root: &str, leading: bool) -> String {
    if q.is_one() {
        root.to_string()
    } else if leading && (-q).is_one() {
        format!("-{root}")
    } else if q.denom().is_one() {
        format!("{}{root}", q.numer())
    } else {
        format!("({}){root}", fmt_rational(q))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    p: String,
    q: String,
    delta: String,
}

fn wire_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            p: wire_rational(&self.p),
            q: wire_rational(&self.q),
            delta: self.delta.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(deserializer)?;
        let p = parse_rational(&w.p).map_err(D::Error::custom)?;
        let q = parse_rational(&w.q).map_err(D::Error::custom)?;
        let delta = w.delta.trim().parse::<BigInt>().map_err(|_| D::Error::custom("bad radicand"))?;
        Ok(Self::new(p, q, delta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qn(p: (i64, i64), q: (i64, i64), delta: i64) -> QuadraticNumber {
        QuadraticNumber::new(rat(p.0, p.1), rat(q.0, q.1), delta.into())
    }

    #[test]
    fn field_operations() {
        let a = qn((3, 1), (-1, 2), 32);
        let b = qn((3, 1), (1, 2), 32);
        assert_eq!((&a * &b).as_rational(), Some(&rat(1, 1)));
        assert_eq!(&a + &b, QuadraticNumber::integer(6, 32.into()));
        let q = a.checked_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert_eq!(a.norm(), rat(1, 1));
    }

    #[test]
    fn division_by_zero_norm() {
        let z = qn((2, 1), (1, 1), 4);
        assert!(QuadraticNumber::integer(1, 4.into()).checked_div(&z).is_err());
    }

    #[test]
    fn radicand_mismatch() {
        let a = qn((0, 1), (1, 1), 2);
        let b = qn((0, 1), (1, 1), 3);
        assert!(a.checked_add(&b).is_err());
        let r = QuadraticNumber::integer(5, 7.into());
        assert_eq!(a.checked_add(&r).unwrap().delta(), &BigInt::from(2));
    }

    #[test]
    fn exact_sign() {
        assert_eq!(qn((3, 1), (-1, 2), 32).signum().unwrap(), Ordering::Greater);
        assert_eq!(qn((-3, 1), (1, 2), 32).signum().unwrap(), Ordering::Less);
        assert_eq!(qn((2, 1), (-1, 1), 4).signum().unwrap(), Ordering::Equal);
        assert!(qn((0, 1), (1, 1), -3).signum().is_err());
        let small = qn((3, 1), (-1, 2), 32);
        let big = qn((3, 1), (1, 2), 32);
        assert_eq!(small.cmp_abs(&big).unwrap(), Ordering::Less);
    }

    #[test]
    fn display() {
        assert_eq!(qn((3, 1), (-1, 2), 32).to_string(), "3 - (1/2)√32");
        assert_eq!(qn((0, 1), (-1, 1), 5).to_string(), "-√5");
        assert_eq!(qn((1, 2), (0, 1), 5).to_string(), "1/2");
    }

    #[test]
    fn json_uses_fraction_strings() {
        let a = qn((3, 1), (-1, 2), 32);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"p":"3/1","q":"-1/2","delta":"32"}"#);
        assert_eq!(serde_json::from_str::<QuadraticNumber>(&s).unwrap(), a);
        assert!(serde_json::from_str::<QuadraticNumber>(r#"{"p":"1/0","q":"0/1","delta":"2"}"#).is_err());
    }
}
