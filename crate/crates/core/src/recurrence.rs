//! The single recurrence `B_{ν+2d} = C·B_{ν+d} + D·B_ν` obeyed by the
//! denominators of a `d`-periodic system, and everything derived from it:
//! characteristic roots, Binet's formula, the generating function, limits
//! and the extension to negative indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::continuant::{continuant_pair, ContinuantSequence};
use crate::error::{Error, Result};
use crate::quadratic::QuadraticNumber;
use crate::system::PeriodicSystem;

/// `(C, D, Δ)` with `Δ = C² + 4D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedRecurrence {
    #[serde(with = "crate::serde_int::string")]
    pub c: BigInt,
    #[serde(with = "crate::serde_int::string")]
    pub d: BigInt,
    #[serde(with = "crate::serde_int::string")]
    pub delta: BigInt,
}

impl ReducedRecurrence {
    pub fn new(c: BigInt, d: BigInt) -> Self {
        let delta = &c * &c + BigInt::from(4) * &d;
        Self { c, d, delta }
    }

    /// `-D`, the base of the scaling powers in Binet's formula.
    pub fn neg_d(&self) -> BigInt {
        -self.d.clone()
    }

    fn c_rat(&self) -> BigRational {
        BigRational::from_integer(self.c.clone())
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(self.d.clone())
    }
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

fn period(system: &PeriodicSystem) -> i64 {
    system.period() as i64
}

/// `B_ν` for `ν ≥ -1`.
pub fn term(system: &PeriodicSystem, nu: i64) -> Result<BigInt> {
    Ok(continuant_pair(system, nu, 0)?.1)
}

/// `C = B_{2d-1}/B_{d-1}` and `D = (-1)^{d-1}·a₁⋯a_d`, with `C` cross-checked
/// against `B_d + a₁·B_{d-2,1}`.
pub fn reduce(system: &PeriodicSystem) -> Result<ReducedRecurrence> {
    let d = period(system);
    let seq = ContinuantSequence::new(system, 0, 2 * d - 1)?;
    let b_short = seq.denominator(d - 1);
    if b_short.is_zero() {
        return Err(Error::DivisionByZero("B_{d-1} = 0"));
    }
    let (c, rem) = seq.denominator(2 * d - 1).div_rem(b_short);
    if !rem.is_zero() {
        return Err(Error::HypothesisViolated(format!(
            "B_{{d-1}} = {b_short} does not divide B_{{2d-1}} = {}",
            seq.denominator(2 * d - 1)
        )));
    }
    let alt = seq.denominator(d) + system.a(1) * continuant_pair(system, d - 2, 1)?.1;
    if alt != c {
        return Err(Error::HypothesisViolated(format!(
            "C = {c} but B_d + a_1 B_{{d-2,1}} = {alt}"
        )));
    }
    if system.is_strict() && c.is_negative() {
        return Err(Error::HypothesisViolated(format!("strict system gave C = {c} < 0")));
    }
    let mut dd = system.numerator_product();
    if d % 2 == 0 {
        dd = -dd;
    }
    Ok(ReducedRecurrence::new(c, dd))
}

/// Checks the reduced recurrence against the piecewise one for
/// `-1 ≤ ν ≤ bound`.
pub fn verify_reduction(system: &PeriodicSystem, reduced: &ReducedRecurrence, bound: i64) -> Result<bool> {
    let d = period(system);
    let seq = ContinuantSequence::new(system, 0, bound + 2 * d)?;
    Ok((-1..=bound).all(|nu| {
        *seq.denominator(nu + 2 * d) == &reduced.c * seq.denominator(nu + d) + &reduced.d * seq.denominator(nu)
    }))
}

/// `B_{-1}, …, B_upto` generated by the reduced recurrence from the first
/// `2d` values of the piecewise recurrence.
pub fn reduced_terms(system: &PeriodicSystem, reduced: &ReducedRecurrence, upto: i64) -> Result<Vec<BigInt>> {
    let d = period(system) as usize;
    let seeds = ContinuantSequence::new(system, 0, (2 * d as i64 - 2).min(upto))?;
    let mut out: Vec<BigInt> = seeds.denominators().to_vec();
    while (out.len() as i64) < upto + 2 {
        let k = out.len();
        let next = &reduced.c * &out[k - d] + &reduced.d * &out[k - 2 * d];
        out.push(next);
    }
    Ok(out)
}

/// `α = (-C + √Δ)/(2D)` and `β = (-C - √Δ)/(2D)`.
pub fn roots(reduced: &ReducedRecurrence) -> Result<(QuadraticNumber, QuadraticNumber)> {
    if reduced.delta.is_zero() {
        return Err(Error::DegenerateDiscriminant("Δ = 0"));
    }
    if reduced.d.is_zero() {
        return Err(Error::DivisionByZero("D = 0"));
    }
    let two_d = rat(&reduced.d) * BigRational::from_integer(2.into());
    let p = -reduced.c_rat() / &two_d;
    let q = BigRational::one() / &two_d;
    let alpha = QuadraticNumber::new(p.clone(), q.clone(), reduced.delta.clone());
    let beta = QuadraticNumber::new(p, -q, reduced.delta.clone());
    Ok((alpha, beta))
}

/// `(αⁿ - βⁿ)/(α - β)` for any integer `n`, as an exact rational.
///
/// Uses `U_{k+1} = (α+β)U_k - αβ·U_{k-1}` with `α+β = -C/D`, `αβ = -1/D`,
/// and `U_{-n} = -U_n/(αβ)ⁿ` for negative `n`.
pub fn lucas_u(reduced: &ReducedRecurrence, n: i64) -> Result<BigRational> {
    if reduced.d.is_zero() {
        return Err(Error::DivisionByZero("D = 0"));
    }
    let sum = -reduced.c_rat() / reduced.d_rat();
    let prod = -BigRational::one() / reduced.d_rat();
    let m = n.unsigned_abs();
    let (mut prev, mut cur) = (BigRational::zero(), BigRational::one());
    if m == 0 {
        return Ok(prev);
    }
    for _ in 1..m {
        let next = &sum * &cur - &prod * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    if n > 0 {
        Ok(cur)
    } else {
        Ok(-cur / num_traits::pow(prod, m as usize))
    }
}

fn pow_rational(base: &BigInt, exp: i64) -> Result<BigRational> {
    let b = rat(base);
    if exp >= 0 {
        Ok(num_traits::pow(b, exp as usize))
    } else if base.is_zero() {
        Err(Error::DivisionByZero("negative power of zero"))
    } else {
        Ok(num_traits::pow(BigRational::one() / b, exp.unsigned_abs() as usize))
    }
}

fn check_binet(reduced: &ReducedRecurrence, n: i64, r: i64) -> Result<()> {
    if reduced.delta.is_zero() {
        return Err(Error::DegenerateDiscriminant("Δ = 0"));
    }
    if n < 0 {
        return Err(Error::IndexOutOfRange { index: n, reason: "n must be non-negative" });
    }
    if r < -1 {
        return Err(Error::IndexOutOfRange { index: r, reason: "r must be at least -1" });
    }
    Ok(())
}

/// `B_{nd+r} = (-D)^{n-1}(U_n·B_{d+r} - U_{n-1}·B_r)`.
pub fn binet(system: &PeriodicSystem, n: i64, r: i64) -> Result<BigInt> {
    let reduced = reduce(system)?;
    binet_with(system, &reduced, n, r)
}

pub fn binet_with(system: &PeriodicSystem, reduced: &ReducedRecurrence, n: i64, r: i64) -> Result<BigInt> {
    check_binet(reduced, n, r)?;
    let d = period(system);
    let (b_dr, b_r) = (term(system, d + r)?, term(system, r)?);
    let value = pow_rational(&reduced.neg_d(), n - 1)?
        * (lucas_u(reduced, n)? * rat(&b_dr) - lucas_u(reduced, n - 1)? * rat(&b_r));
    if !value.is_integer() {
        return Err(Error::HypothesisViolated(format!("Binet value {value} is not an integer")));
    }
    Ok(value.to_integer())
}

/// `B_{-nd+r}` from Binet's formula with `n` replaced by `-n`:
/// `-(-D)^{n-1}(U_n/(-D)ⁿ·B_{d+r} - U_{n+1}/(-D)^{n-1}·B_r)`.
pub fn binet_negative(system: &PeriodicSystem, n: i64, r: i64) -> Result<BigRational> {
    let reduced = reduce(system)?;
    check_binet(&reduced, n, r)?;
    let d = period(system);
    let (b_dr, b_r) = (rat(&term(system, d + r)?), rat(&term(system, r)?));
    let neg_d = reduced.neg_d();
    let inner = lucas_u(&reduced, n)? / pow_rational(&neg_d, n)? * b_dr
        - lucas_u(&reduced, n + 1)? / pow_rational(&neg_d, n - 1)? * b_r;
    Ok(-pow_rational(&neg_d, n - 1)? * inner)
}

/// `B_ν` for any integer `ν`: forward from the initial values when
/// `ν ≥ -1`, otherwise backward through `B_{ν-2} = (B_ν - b_ν·B_{ν-1})/a_ν`
/// with the coefficients extended periodically.
pub fn piecewise_term(system: &PeriodicSystem, nu: i64) -> Result<BigRational> {
    if nu >= -1 {
        return Ok(rat(&term(system, nu)?));
    }
    let (mut hi, mut lo) = (BigRational::one(), BigRational::zero()); // B_0, B_{-1}
    let mut k = 0;
    while k - 2 >= nu {
        let below = (&hi - rat(system.b(k)) * &lo) / rat(system.a(k));
        hi = std::mem::replace(&mut lo, below);
        k -= 1;
    }
    Ok(lo)
}

/// Generating-function check: the product
/// `(1 - C·x^d - D·x^{2d})·Σ_{n≤N} B_n xⁿ` against the closed-form numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GfReport {
    /// Coefficients of the closed-form numerator, constant term first.
    #[serde(with = "crate::serde_int::vec")]
    pub numerator: Vec<BigInt>,
    /// Coefficients of the product up to degree `N`.
    #[serde(with = "crate::serde_int::vec")]
    pub product: Vec<BigInt>,
    pub degree: i64,
    pub matches: bool,
}

pub fn gf_verify(system: &PeriodicSystem, big_n: i64) -> Result<GfReport> {
    let d = period(system);
    if big_n < 2 * d {
        return Err(Error::InvalidParameters(format!("N = {big_n} is below 2d = {}", 2 * d)));
    }
    let reduced = reduce(system)?;
    let seq = ContinuantSequence::new(system, 0, big_n)?;
    let b = |n: i64| seq.denominator(n).clone();
    let len = (big_n + 1) as usize;
    let du = d as usize;

    let product: Vec<BigInt> = (0..len)
        .map(|n| {
            let mut v = b(n as i64);
            if n >= du {
                v -= &reduced.c * b((n - du) as i64);
            }
            if n >= 2 * du {
                v -= &reduced.d * b((n - 2 * du) as i64);
            }
            v
        })
        .collect();

    let mut numerator: Vec<BigInt> = (0..2 * d).map(b).collect();
    for n in 0..d {
        numerator[(n + d) as usize] -= &reduced.c * b(n);
    }
    while numerator.len() > 1 && numerator.last().is_some_and(Zero::is_zero) {
        numerator.pop();
    }

    let matches = (0..len).all(|k| product[k] == numerator.get(k).cloned().unwrap_or_default());
    Ok(GfReport {
        numerator,
        product,
        degree: big_n,
        matches,
    })
}

/// `B_{(n+1)d-1} = (C·B_{nd-1} + √(Δ·B²_{nd-1} + 4(-D)ⁿ·B²_{d-1}))/2`, with an
/// exact integer square root.
pub fn sqrt_step(system: &PeriodicSystem, n: i64) -> Result<BigInt> {
    if !system.is_strict() {
        return Err(Error::HypothesisViolated("square-root step needs a strict system".into()));
    }
    if n < 1 {
        return Err(Error::IndexOutOfRange { index: n, reason: "n must be at least 1" });
    }
    let d = period(system);
    let reduced = reduce(system)?;
    let seq = ContinuantSequence::new(system, 0, (n + 1) * d - 1)?;
    let (b_n, b_1) = (seq.denominator(n * d - 1), seq.denominator(d - 1));
    let radicand = &reduced.delta * b_n * b_n + BigInt::from(4) * num_traits::pow(reduced.neg_d(), n as usize) * b_1 * b_1;
    if radicand.is_negative() {
        return Err(Error::NotAPerfectSquare(radicand.to_string()));
    }
    let root = radicand.sqrt();
    if &root * &root != radicand {
        return Err(Error::NotAPerfectSquare(radicand.to_string()));
    }
    let twice = &reduced.c * b_n + root;
    if twice.is_odd() {
        return Err(Error::HypothesisViolated(format!("square-root step numerator {twice} is odd")));
    }
    let value = twice / 2;
    let expected = seq.denominator((n + 1) * d - 1);
    if &value != expected {
        return Err(Error::HypothesisViolated(format!(
            "square-root step gave {value}, recurrence gives {expected}"
        )));
    }
    Ok(value)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMode {
    /// `B_{nd+r}/B_{nd+r-1}`.
    ConsecutiveTerms,
    /// `B_{(n+1)d+r}/B_{nd+r}`.
    ConsecutivePeriods,
}

/// Requires `Δ > 0` and `|α| < |β|`, which for real roots is `C > 0`.
fn check_dominant(reduced: &ReducedRecurrence) -> Result<()> {
    if !reduced.delta.is_positive() {
        return Err(Error::DegenerateDiscriminant("limits need Δ > 0"));
    }
    if reduced.c.is_zero() {
        return Err(Error::DegenerateDiscriminant("|α| = |β| when C = 0"));
    }
    if reduced.c.is_negative() {
        return Err(Error::HypothesisViolated("|α| > |β| when C < 0".into()));
    }
    Ok(())
}

/// Exact limit of consecutive-term or consecutive-period ratios.
pub fn limit_ratio(system: &PeriodicSystem, mode: LimitMode, r: i64) -> Result<QuadraticNumber> {
    let reduced = reduce(system)?;
    check_dominant(&reduced)?;
    let (_, beta) = roots(&reduced)?;
    let d = period(system);
    match mode {
        LimitMode::ConsecutiveTerms => {
            if r < 0 {
                return Err(Error::IndexOutOfRange { index: r, reason: "consecutive terms need r ≥ 0" });
            }
            let delta = reduced.delta.clone();
            let lin = |hi: BigInt, lo: BigInt| beta.scale(&rat(&hi)) - QuadraticNumber::integer(lo, delta.clone());
            let num = lin(term(system, d + r)?, term(system, r)?);
            let den = lin(term(system, d + r - 1)?, term(system, r - 1)?);
            num.checked_div(&den)
        }
        LimitMode::ConsecutivePeriods => {
            if r < -1 {
                return Err(Error::IndexOutOfRange { index: r, reason: "consecutive periods need r ≥ -1" });
            }
            Ok(beta.scale(&rat(&reduced.neg_d())))
        }
    }
}

/// The ratio whose limit [`limit_ratio`] describes, at a finite `n`.
pub fn finite_ratio(system: &PeriodicSystem, mode: LimitMode, r: i64, n: i64) -> Result<BigRational> {
    let d = period(system);
    let (num, den) = match mode {
        LimitMode::ConsecutiveTerms => (term(system, n * d + r)?, term(system, n * d + r - 1)?),
        LimitMode::ConsecutivePeriods => (term(system, (n + 1) * d + r)?, term(system, n * d + r)?),
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero("ratio denominator vanished"));
    }
    Ok(BigRational::new(num, den))
}

/// Both sides of an identity, as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sides {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl Sides {
    fn new(lhs: BigRational, rhs: BigRational) -> Self {
        Self {
            holds: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// With `V = B_{2nd-1}/B_{nd-1}` and `U = B_{nd-1}/B_{d-1}`:
/// `V² - ΔU² = 4(-D)ⁿ`, and `V² + ΔU²` against both `2B²_{4nd-1}/B²_{2nd-1}`
/// and `2B_{4nd-1}/B_{2nd-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub n: i64,
    pub difference: Sides,
    pub sum_squared_rhs: Sides,
    pub sum_linear_rhs: Sides,
}

pub fn remark_identities(system: &PeriodicSystem, n: i64) -> Result<RemarkReport> {
    if n < 1 {
        return Err(Error::IndexOutOfRange { index: n, reason: "n must be at least 1" });
    }
    let d = period(system);
    let reduced = reduce(system)?;
    let seq = ContinuantSequence::new(system, 0, 4 * n * d - 1)?;
    let get = |k: i64| -> Result<BigRational> {
        let v = seq.denominator(k);
        if v.is_zero() {
            Err(Error::DivisionByZero("a denominator in the remark identities vanished"))
        } else {
            Ok(rat(v))
        }
    };
    let (b1, bn, b2n, b4n) = (get(d - 1)?, get(n * d - 1)?, get(2 * n * d - 1)?, get(4 * n * d - 1)?);
    let v = &b2n / &bn;
    let u = &bn / &b1;
    let delta = rat(&reduced.delta);
    let v2 = &v * &v;
    let du2 = &delta * &u * &u;
    let two = BigRational::from_integer(2.into());
    let four_q = BigRational::from_integer(4.into()) * pow_rational(&reduced.neg_d(), n)?;
    let ratio = &b4n / &b2n;
    Ok(RemarkReport {
        n,
        difference: Sides::new(&v2 - &du2, four_q),
        sum_squared_rhs: Sides::new(&v2 + &du2, &two * &ratio * &ratio),
        sum_linear_rhs: Sides::new(&v2 + &du2, &two * &ratio),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s8() -> PeriodicSystem {
        PeriodicSystem::from_ints(&[1, 1], &[1, 4], 2, true).unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn reduce_examples() {
        let red = reduce(&s8()).unwrap();
        assert_eq!((red.c.clone(), red.d.clone(), red.delta.clone()), (6.into(), (-1).into(), 32.into()));
        let generic = PeriodicSystem::from_ints(&[2, 3], &[1, 1], 1, true).unwrap();
        let red = reduce(&generic).unwrap();
        assert_eq!((red.c, red.d), (6.into(), (-6).into()));
        let red = reduce(&PeriodicSystem::fibonacci()).unwrap();
        assert_eq!((red.c, red.d), (1.into(), 1.into()));
    }

    #[test]
    fn reduce_rejects_vanishing_denominator() {
        let s = PeriodicSystem::from_ints(&[1, 1], &[0, 1], 0, false).unwrap();
        assert_eq!(reduce(&s), Err(Error::DivisionByZero("B_{d-1} = 0")));
    }

    #[test]
    fn reduction_and_reduced_terms() {
        let s = s8();
        let red = reduce(&s).unwrap();
        assert!(verify_reduction(&s, &red, 60).unwrap());
        let seq = reduced_terms(&s, &red, 8).unwrap();
        let expected: Vec<BigInt> = [0, 1, 1, 5, 6, 29, 35, 169, 204, 985].into_iter().map(BigInt::from).collect();
        assert_eq!(seq, expected);
    }

    #[test]
    fn root_examples() {
        let (a, b) = roots(&reduce(&s8()).unwrap()).unwrap();
        assert_eq!(a.to_string(), "3 - (1/2)√32");
        assert_eq!(b.to_string(), "3 + (1/2)√32");
        let (a, b) = roots(&reduce(&PeriodicSystem::fibonacci()).unwrap()).unwrap();
        assert_eq!((&a * &b).as_rational(), Some(&r(-1)));
        assert_eq!(a.p(), &BigRational::new((-1).into(), 2.into()));
        let degenerate = ReducedRecurrence::new(2.into(), (-1).into());
        assert!(matches!(roots(&degenerate), Err(Error::DegenerateDiscriminant(_))));
    }

    #[test]
    fn lucas_u_matches_quadratic_powers() {
        let red = reduce(&s8()).unwrap();
        let (a, b) = roots(&red).unwrap();
        let diff = &a - &b;
        for n in 0..10u32 {
            let q = (a.pow(n) - b.pow(n)).checked_div(&diff).unwrap();
            assert_eq!(q.as_rational(), Some(&lucas_u(&red, n as i64).unwrap()));
        }
        assert_eq!(lucas_u(&red, -1).unwrap(), r(-1));
        let fib = reduce(&PeriodicSystem::fibonacci()).unwrap();
        assert_eq!(lucas_u(&fib, -1).unwrap(), r(1));
    }

    #[test]
    fn binet_examples() {
        let s = s8();
        assert_eq!(binet(&s, 2, 0).unwrap(), BigInt::from(29));
        assert_eq!(binet(&s, 5, 1).unwrap(), BigInt::from(6930));
        for rr in -1..3 {
            assert_eq!(binet(&s, 0, rr).unwrap(), term(&s, rr).unwrap());
        }
    }

    #[test]
    fn negative_indices() {
        let s = s8();
        assert_eq!(binet_negative(&s, 1, -1).unwrap(), r(-1));
        assert_eq!(binet_negative(&s, 0, 0).unwrap(), r(1));
        assert_eq!(piecewise_term(&s, -2).unwrap(), r(1));
        assert_eq!(piecewise_term(&s, -3).unwrap(), r(-1));
        let fib = PeriodicSystem::fibonacci();
        assert_eq!(binet_negative(&fib, 2, -1).unwrap(), r(-1));
        let odd = PeriodicSystem::from_ints(&[2, 3], &[1, 1], 1, true).unwrap();
        for n in 0..6 {
            for rr in -1..3 {
                assert_eq!(
                    binet_negative(&odd, n, rr).unwrap(),
                    piecewise_term(&odd, -2 * n + rr).unwrap(),
                    "n={n} r={rr}"
                );
            }
        }
    }

    #[test]
    fn generating_function() {
        let rep = gf_verify(&s8(), 12).unwrap();
        assert!(rep.matches);
        assert_eq!(rep.numerator, vec![1.into(), 1.into(), (-1).into()]);
        let generic = PeriodicSystem::from_ints(&[2, 3], &[1, 1], 1, true).unwrap();
        let rep = gf_verify(&generic, 8).unwrap();
        assert!(rep.matches);
        // The quadratic coefficient is -a₁, not -a₂.
        assert_eq!(rep.numerator, vec![1.into(), 1.into(), (-2).into()]);
        let rep = gf_verify(&PeriodicSystem::fibonacci(), 10).unwrap();
        assert_eq!(rep.numerator, vec![BigInt::one()]);
        assert!(gf_verify(&s8(), 3).is_err());
    }

    #[test]
    fn sqrt_step_examples() {
        assert_eq!(sqrt_step(&s8(), 1).unwrap(), BigInt::from(6));
        assert_eq!(sqrt_step(&s8(), 2).unwrap(), BigInt::from(35));
        assert_eq!(sqrt_step(&PeriodicSystem::fibonacci(), 6).unwrap(), BigInt::from(13));
        let loose = PeriodicSystem::from_ints(&[1], &[1], 1, false).unwrap();
        assert!(sqrt_step(&loose, 1).is_err());
    }

    #[test]
    fn limits() {
        let s = s8();
        let per = limit_ratio(&s, LimitMode::ConsecutivePeriods, -1).unwrap();
        assert_eq!(per.to_string(), "3 + (1/2)√32");
        let terms = limit_ratio(&s, LimitMode::ConsecutiveTerms, 0).unwrap();
        assert_eq!(terms.to_string(), "2 + (1/2)√32");
        let golden = limit_ratio(&PeriodicSystem::fibonacci(), LimitMode::ConsecutivePeriods, -1).unwrap();
        assert_eq!(golden.to_string(), "1/2 + (1/2)√5");
        let ratio = finite_ratio(&s, LimitMode::ConsecutiveTerms, 0, 4).unwrap();
        assert_eq!(ratio, BigRational::new(985.into(), 204.into()));
    }

    #[test]
    fn remark_examples() {
        let rep = remark_identities(&s8(), 1).unwrap();
        assert!(rep.difference.holds);
        assert_eq!(rep.difference.lhs, "4");
        assert!(rep.sum_linear_rhs.holds);
        assert_eq!(rep.sum_linear_rhs.lhs, "68");
        assert!(!rep.sum_squared_rhs.holds);
        assert_eq!(rep.sum_squared_rhs.rhs, "2312");
        let rep = remark_identities(&s8(), 2).unwrap();
        assert_eq!(rep.sum_linear_rhs.lhs, "2308");
        assert!(rep.sum_linear_rhs.holds);
    }
}
