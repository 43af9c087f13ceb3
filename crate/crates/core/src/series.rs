//! Infinite series with closed forms in ℚ(√Δ) or in terms of `π` and `ln`,
//! and two exactly summable finite sums.
//!
//! Rational partial sums are accumulated exactly; only the final comparison
//! with the closed form is done in floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cfrac::{expand_sqrt, pell_solutions_from, PellSolution};
use crate::error::{Error, Result};
use crate::precision::{Arith, PrecisionContext, Real};
use crate::quadratic::QuadraticNumber;
use crate::recurrence::{reduce, roots, ReducedRecurrence};
use crate::system::PeriodicSystem;

/// Where a series gets its sequence from.
#[derive(Clone, Debug)]
pub enum SeriesInput {
    System(PeriodicSystem),
    /// Denominators of the convergents of `√N`.
    Sqrt(BigInt),
}

impl SeriesInput {
    fn system(&self) -> Result<PeriodicSystem> {
        match self {
            SeriesInput::System(s) => Ok(s.clone()),
            SeriesInput::Sqrt(n) => Ok(expand_sqrt(n)?.to_system()),
        }
    }
}

/// How many terms to sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    /// Until the tolerance is met or `max_terms` is reached.
    Converge,
    /// Exactly this many terms.
    Exactly(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TelescopingFamily {
    /// `Σ (a₁a₂)^{2^{n-1}}/B_{2^{n+1}-1} = 1/(b₁β)`, period 2 only.
    Millin,
    /// `Σ (-D)^{n-1}/(B_{nd-1}B_{(n+1)d-1}) = α/B²_{d-1}`.
    PeriodReciprocal,
    /// `Σ 1/(yₙyₙ₊₁) = (x₁ - √(x₁²-1))/y₁²`.
    PellY,
    /// `Σ 1/(xₙxₙ₊₁) = (x₁ - √(x₁²-1))/(x₁√(x₁²-1))`.
    PellX,
    /// `Σ y₂ₙ₊₁/(yₙ²yₙ₊₁²) = 1/y₁³`.
    PellY2,
    /// `Σ (-D)^{n-1}B_{(2n+1)d-1}/(B²_{nd-1}B²_{(n+1)d-1}) = 1/B³_{d-1}`.
    PeriodSquare,
    /// `Σ arctan(B_{2d-1}/B_{(2n+1)d-1}) = arctan(B_{d-1}/B_{2d-1})` when `D = 1`.
    Arctan,
    /// `Σ_{n≥2} artanh(B_{2d-1}/B_{2nd-1}) = ½ln((B_{3d-1}+B_{d-1})/(B_{3d-1}-B_{d-1}))`
    /// when `D = 1`.
    Artanh,
}

impl TelescopingFamily {
    pub const ALL: [TelescopingFamily; 8] = [
        TelescopingFamily::Millin,
        TelescopingFamily::PeriodReciprocal,
        TelescopingFamily::PellY,
        TelescopingFamily::PellX,
        TelescopingFamily::PellY2,
        TelescopingFamily::PeriodSquare,
        TelescopingFamily::Arctan,
        TelescopingFamily::Artanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TelescopingFamily::Millin => "millin",
            TelescopingFamily::PeriodReciprocal => "period_reciprocal",
            TelescopingFamily::PellY => "pell_y",
            TelescopingFamily::PellX => "pell_x",
            TelescopingFamily::PellY2 => "pell_y2",
            TelescopingFamily::PeriodSquare => "period_square",
            TelescopingFamily::Arctan => "arctan",
            TelescopingFamily::Artanh => "artanh",
        }
    }
}

impl fmt::Display for TelescopingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TelescopingFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown series family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaKind {
    PiOver6,
    PiOver8,
    Ln3,
    Ln2,
}

impl ZetaKind {
    pub const ALL: [ZetaKind; 4] = [ZetaKind::PiOver6, ZetaKind::PiOver8, ZetaKind::Ln3, ZetaKind::Ln2];

    pub fn name(self) -> &'static str {
        match self {
            ZetaKind::PiOver6 => "pi_over_6",
            ZetaKind::PiOver8 => "pi_over_8",
            ZetaKind::Ln3 => "ln3",
            ZetaKind::Ln2 => "ln2",
        }
    }

    fn is_circular(self) -> bool {
        matches!(self, ZetaKind::PiOver6 | ZetaKind::PiOver8)
    }

    /// `1/t` where `t` is the argument whose arctan or artanh is the target:
    /// `√3`, `√2 + 1`, `2`, `3`.
    fn inverse_argument(self, a: &Arith) -> Real {
        match self {
            ZetaKind::PiOver6 => a.sqrt(&a.small(3)),
            ZetaKind::PiOver8 => a.add(&a.sqrt(&a.small(2)), &a.small(1)),
            ZetaKind::Ln3 => a.small(2),
            ZetaKind::Ln2 => a.small(3),
        }
    }

    /// Human-readable form of the defining quadratic.
    pub fn quadratic_text(self) -> &'static str {
        match self {
            ZetaKind::PiOver6 => "D z^2 - sqrt(3 Delta) z - 1 = 0",
            ZetaKind::PiOver8 => "D z^2 - (sqrt(2) + 1) sqrt(Delta) z - 1 = 0",
            ZetaKind::Ln3 => "D z^2 + 2 sqrt(Delta) z + 1 = 0",
            ZetaKind::Ln2 => "D z^2 + 3 sqrt(Delta) z + 1 = 0",
        }
    }
}

impl fmt::Display for ZetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ZetaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown zeta kind {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub family: String,
    #[serde(rename = "partial_sum")]
    pub partial: String,
    #[serde(rename = "closed_form")]
    pub closed: String,
    pub closed_symbolic: String,
    pub abs_error: String,
    pub terms: usize,
    pub converged: bool,
    /// Exact partial sum, when every term is rational.
    #[serde(skip)]
    pub partial_exact: Option<BigRational>,
    #[serde(skip)]
    pub partial_value: Real,
    #[serde(skip)]
    pub closed_value: Real,
    #[serde(skip)]
    pub error: Real,
    #[serde(skip)]
    pub digits: u32,
}

impl SeriesReport {
    /// Whether `|partial - closed| < 10^-k`.
    pub fn error_below(&self, k: u32) -> bool {
        let a = Arith::with_digits(k + 10);
        a.cmp(&self.error, &a.ten_to_minus(k)) == Ordering::Less
    }

    /// `PrecisionExhausted` unless the report converged.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::PrecisionExhausted {
                terms: self.terms,
                abs_error: self.abs_error.clone(),
            })
        }
    }
}

/// Lazily extended `B_{-1}, B_0, …` for one system.
struct Denominators {
    system: PeriodicSystem,
    values: Vec<BigInt>,
}

impl Denominators {
    fn new(system: &PeriodicSystem) -> Self {
        Self {
            system: system.clone(),
            values: vec![BigInt::zero(), BigInt::one()],
        }
    }

    fn get(&mut self, nu: i64) -> BigInt {
        assert!(nu >= -1);
        while (self.values.len() as i64) < nu + 2 {
            let k = self.values.len() as i64 - 1;
            let n = self.values.len();
            let next = self.system.b(k) * &self.values[n - 1] + self.system.a(k) * &self.values[n - 2];
            self.values.push(next);
        }
        self.values[(nu + 1) as usize].clone()
    }
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

fn ratio(n: BigInt, d: BigInt) -> Result<BigRational> {
    if d.is_zero() {
        return Err(Error::DivisionByZero("series term denominator vanished"));
    }
    Ok(BigRational::new(n, d))
}

fn require_real_roots(reduced: &ReducedRecurrence) -> Result<()> {
    if !reduced.delta.is_positive() {
        return Err(Error::HypothesisViolated(format!("Δ = {} is not positive", reduced.delta)));
    }
    if !reduced.c.is_positive() {
        return Err(Error::HypothesisViolated(format!(
            "C = {} must be positive so that |α| < |β|",
            reduced.c
        )));
    }
    Ok(())
}

enum Closed {
    Quadratic(QuadraticNumber),
    Real(Real, String),
}

type RationalTerm = Box<dyn FnMut(usize) -> Result<BigRational>>;
type RealTerm = Box<dyn FnMut(usize, &mut Arith) -> Result<Real>>;

enum TermSource {
    Rational(RationalTerm),
    Real(RealTerm),
}

const MILLIN_INDEX_CAP: u32 = 22;

/// Sums a telescoping family and compares with its closed form.
pub fn telescoping_sum(input: &SeriesInput, family: TelescopingFamily, ctx: &PrecisionContext, stop: Stop) -> Result<SeriesReport> {
    let mut arith = ctx.arith();
    let system = input.system()?;
    let d = system.period() as i64;
    let reduced = reduce(&system)?;
    require_real_roots(&reduced)?;
    let (alpha, beta) = roots(&reduced)?;
    let neg_d = reduced.neg_d();
    let limit = match stop {
        Stop::Converge => ctx.max_terms,
        Stop::Exactly(n) => n,
    };

    let pell_needed = matches!(
        family,
        TelescopingFamily::PellY | TelescopingFamily::PellX | TelescopingFamily::PellY2
    );
    let pell: Vec<PellSolution> = if pell_needed {
        let SeriesInput::Sqrt(n) = input else {
            return Err(Error::HypothesisViolated(format!("{family} needs a square-root input N")));
        };
        let exp = expand_sqrt(n)?;
        if exp.d() % 2 != 0 {
            return Err(Error::HypothesisViolated(format!(
                "{family} needs an even period; √{n} has period {}",
                exp.d()
            )));
        }
        pell_solutions_from(&exp, 2 * limit + 2)?
    } else {
        Vec::new()
    };

    let mut seq = Denominators::new(&system);
    let b1 = seq.get(d - 1);
    let b2 = seq.get(2 * d - 1);
    let b3 = seq.get(3 * d - 1);

    let (closed, terms): (Closed, TermSource) = match family {
        TelescopingFamily::Millin => {
            if d != 2 {
                return Err(Error::HypothesisViolated(format!("millin needs d = 2, got d = {d}")));
            }
            let b_first = system.b(1).clone();
            let value = QuadraticNumber::integer(1, reduced.delta.clone()).checked_div(&beta.scale(&rat(&b_first)))?;
            let prod = system.numerator_product();
            let f = move |n: usize| -> Result<BigRational> {
                if n as u32 + 1 > MILLIN_INDEX_CAP {
                    return Err(Error::InvalidParameters("millin index beyond supported range".into()));
                }
                let num = num_traits::pow(prod.clone(), 1usize << (n - 1));
                ratio(num, seq.get((1i64 << (n + 1)) - 1))
            };
            (Closed::Quadratic(value), TermSource::Rational(Box::new(f)))
        }
        TelescopingFamily::PeriodReciprocal => {
            let value = alpha.scale(&(BigRational::one() / rat(&(&b1 * &b1))));
            let f = move |n: usize| -> Result<BigRational> {
                let n = n as i64;
                let num = num_traits::pow(neg_d.clone(), (n - 1) as usize);
                ratio(num, seq.get(n * d - 1) * seq.get((n + 1) * d - 1))
            };
            (Closed::Quadratic(value), TermSource::Rational(Box::new(f)))
        }
        TelescopingFamily::PeriodSquare => {
            let value = QuadraticNumber::rational(BigRational::one() / rat(&(&b1 * &b1 * &b1)), reduced.delta.clone());
            let f = move |n: usize| -> Result<BigRational> {
                let n = n as i64;
                let num = num_traits::pow(neg_d.clone(), (n - 1) as usize) * seq.get((2 * n + 1) * d - 1);
                let (p, q) = (seq.get(n * d - 1), seq.get((n + 1) * d - 1));
                ratio(num, &p * &p * &q * &q)
            };
            (Closed::Quadratic(value), TermSource::Rational(Box::new(f)))
        }
        TelescopingFamily::PellY | TelescopingFamily::PellX | TelescopingFamily::PellY2 => {
            let (x1, y1) = (pell[0].x.clone(), pell[0].y.clone());
            let rad = &x1 * &x1 - BigInt::one();
            let value = match family {
                TelescopingFamily::PellY => {
                    let y2 = rat(&(&y1 * &y1));
                    QuadraticNumber::new(rat(&x1) / &y2, -BigRational::one() / &y2, rad)
                }
                TelescopingFamily::PellX => {
                    QuadraticNumber::new(-BigRational::one() / rat(&x1), BigRational::one() / rat(&rad), rad)
                }
                _ => QuadraticNumber::rational(BigRational::one() / rat(&(&y1 * &y1 * &y1)), rad),
            };
            let f = move |n: usize| -> Result<BigRational> {
                let (s, t) = (&pell[n - 1], &pell[n]);
                match family {
                    TelescopingFamily::PellY => ratio(BigInt::one(), &s.y * &t.y),
                    TelescopingFamily::PellX => ratio(BigInt::one(), &s.x * &t.x),
                    _ => ratio(pell[2 * n].y.clone(), &s.y * &s.y * &t.y * &t.y),
                }
            };
            (Closed::Quadratic(value), TermSource::Rational(Box::new(f)))
        }
        TelescopingFamily::Arctan | TelescopingFamily::Artanh => {
            if !reduced.d.is_one() {
                return Err(Error::HypothesisViolated(format!("{family} needs D = 1, got D = {}", reduced.d)));
            }
            let (value, text) = if family == TelescopingFamily::Arctan {
                let arg = ratio(b1.clone(), b2.clone())?;
                (arith.atan(&arith.rational(&arg)), format!("arctan({arg})"))
            } else {
                let arg = ratio(&b3 + &b1, &b3 - &b1)?;
                let ln = arith.ln(&arith.rational(&arg));
                (arith.div(&ln, &arith.small(2)), format!("(1/2)*ln({arg})"))
            };
            let f = move |n: usize, a: &mut Arith| -> Result<Real> {
                let n = n as i64;
                if family == TelescopingFamily::Arctan {
                    let arg = ratio(b2.clone(), seq.get((2 * n + 1) * d - 1))?;
                    Ok(a.atan(&a.rational(&arg)))
                } else {
                    let arg = ratio(b2.clone(), seq.get(2 * (n + 1) * d - 1))?;
                    Ok(a.atanh(&a.rational(&arg)))
                }
            };
            (Closed::Real(value, text), TermSource::Real(Box::new(f)))
        }
    };

    let (closed_value, closed_symbolic) = match closed {
        Closed::Quadratic(q) => (arith.quadratic(&q)?, q.to_string()),
        Closed::Real(v, s) => (v, s),
    };
    let tol = arith.ten_to_minus(ctx.tolerance_exponent());

    let mut exact = BigRational::zero();
    let mut approx = arith.small(0);
    let mut count = 0;
    let mut error = arith.abs(&closed_value);
    let mut terms = terms;
    let millin_cap = if family == TelescopingFamily::Millin { MILLIN_INDEX_CAP as usize - 1 } else { usize::MAX };
    while count < limit.min(millin_cap) {
        count += 1;
        match &mut terms {
            TermSource::Rational(f) => {
                exact += f(count)?;
                approx = arith.rational(&exact);
            }
            TermSource::Real(f) => {
                let t = f(count, &mut arith)?;
                approx = arith.add(&approx, &t);
            }
        }
        error = arith.abs(&arith.sub(&approx, &closed_value));
        if stop == Stop::Converge && arith.cmp(&error, &tol) != Ordering::Greater {
            break;
        }
    }
    let partial_exact = matches!(terms, TermSource::Rational(_)).then_some(exact);
    Ok(finish(
        &mut arith,
        ctx,
        family.name().to_string(),
        approx,
        closed_value,
        closed_symbolic,
        error,
        count,
        partial_exact,
    ))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    arith: &mut Arith,
    ctx: &PrecisionContext,
    family: String,
    partial: Real,
    closed: Real,
    closed_symbolic: String,
    error: Real,
    terms: usize,
    partial_exact: Option<BigRational>,
) -> SeriesReport {
    let tol = arith.ten_to_minus(ctx.tolerance_exponent());
    let converged = arith.is_finite(&error) && arith.cmp(&error, &tol) != Ordering::Greater;
    let sig = ctx.digits as usize;
    SeriesReport {
        family,
        partial: arith.decimal(&partial, sig),
        closed: arith.decimal(&closed, sig),
        closed_symbolic,
        abs_error: arith.decimal(&error, 6),
        terms,
        converged,
        partial_exact,
        partial_value: partial,
        closed_value: closed,
        error,
        digits: ctx.digits,
    }
}

/// The admissible root of a ζ-quadratic together with the data needed to
/// sum the matching series.
pub struct ZetaSetup {
    pub kind: ZetaKind,
    pub zeta: Real,
    pub other_root: Real,
    pub alpha_abs: Real,
    pub target: Real,
    pub target_symbolic: String,
    /// Coefficients of `D z² + s z + c`.
    pub linear: Real,
    pub constant: Real,
}

/// Solves the kind's quadratic and picks the root with `|ζ| < |α|`.
pub fn zeta_setup(system: &PeriodicSystem, kind: ZetaKind, arith: &mut Arith) -> Result<ZetaSetup> {
    let reduced = reduce(system)?;
    if !reduced.delta.is_positive() {
        return Err(Error::DegenerateDiscriminant("ζ-series need Δ > 0"));
    }
    let (alpha, _) = roots(&reduced)?;
    let alpha_abs = arith.abs(&arith.quadratic(&alpha)?);
    let d = system.period() as i64;
    let b1 = crate::recurrence::term(system, d - 1)?;

    let sqrt_delta = arith.sqrt(&arith.int(&reduced.delta));
    let s = arith.mul(&kind.inverse_argument(arith), &sqrt_delta);
    let (linear, constant) = if kind.is_circular() {
        (arith.neg(&s), arith.small(-1))
    } else {
        (s, arith.small(1))
    };
    let dd = arith.int(&reduced.d);
    let disc = arith.sub(
        &arith.mul(&linear, &linear),
        &arith.mul(&arith.small(4), &arith.mul(&dd, &constant)),
    );
    if disc.is_negative() {
        return Err(Error::NoAdmissibleRoot(format!("{} has complex roots", kind.quadratic_text())));
    }
    let root = arith.sqrt(&disc);
    let two_d = arith.mul(&arith.small(2), &dd);
    let z1 = arith.div(&arith.add(&arith.neg(&linear), &root), &two_d);
    let z2 = arith.div(&arith.sub(&arith.neg(&linear), &root), &two_d);
    let admissible = |z: &Real, a: &Arith| a.cmp(&a.abs(z), &alpha_abs) == Ordering::Less;
    let (zeta, other_root) = match (admissible(&z1, arith), admissible(&z2, arith)) {
        (true, _) => (z1, z2),
        (false, true) => (z2, z1),
        (false, false) => {
            return Err(Error::NoAdmissibleRoot(format!(
                "neither root of {} is below |α| in absolute value",
                kind.quadratic_text()
            )))
        }
    };

    let scale = arith.div(&arith.int(&b1), &sqrt_delta);
    let (base, text) = match kind {
        ZetaKind::PiOver6 | ZetaKind::PiOver8 => {
            let pi = arith.pi();
            let (k, text) = if kind == ZetaKind::PiOver6 { (6, "pi/6") } else { (8, "pi/8") };
            (arith.div(&pi, &arith.small(k)), text)
        }
        ZetaKind::Ln3 => {
            let ln = arith.ln(&arith.small(3));
            (arith.div(&ln, &arith.small(2)), "ln(3)/2")
        }
        ZetaKind::Ln2 => {
            let ln = arith.ln(&arith.small(2));
            (arith.div(&ln, &arith.small(2)), "ln(2)/2")
        }
    };
    Ok(ZetaSetup {
        kind,
        zeta,
        other_root,
        alpha_abs,
        target: arith.mul(&scale, &base),
        target_symbolic: format!("{text} * {b1}/sqrt({})", reduced.delta),
        linear,
        constant,
    })
}

/// `Σ_{k<terms} ±B_{(2k+1)d-1} ζ^{2k+1}/(2k+1)` with the kind's sign
/// pattern: `(-1)^{k+1}` for the circular kinds, an overall minus for the
/// logarithmic ones.
pub fn zeta_partial(system: &PeriodicSystem, kind: ZetaKind, zeta: &Real, terms: usize, arith: &mut Arith) -> Result<Vec<Real>> {
    let d = system.period() as i64;
    let mut seq = Denominators::new(system);
    let z2 = arith.mul(zeta, zeta);
    let mut power = zeta.clone();
    let mut sum = arith.small(0);
    let mut partials = Vec::with_capacity(terms);
    for k in 0..terms as i64 {
        let b = arith.int(&seq.get((2 * k + 1) * d - 1));
        let mut term = arith.div(&arith.mul(&b, &power), &arith.small(2 * k + 1));
        let negative = if kind.is_circular() { k % 2 == 0 } else { true };
        if negative {
            term = arith.neg(&term);
        }
        sum = arith.add(&sum, &term);
        partials.push(sum.clone());
        power = arith.mul(&power, &z2);
    }
    Ok(partials)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    #[serde(flatten)]
    pub series: SeriesReport,
    pub zeta: String,
    pub quadratic: String,
}

/// Sums the ζ-series for `kind` and compares with its target.
pub fn zeta_series(system: &PeriodicSystem, kind: ZetaKind, ctx: &PrecisionContext, stop: Stop) -> Result<ZetaReport> {
    let mut arith = ctx.arith();
    let setup = zeta_setup(system, kind, &mut arith)?;
    let tol = arith.ten_to_minus(ctx.tolerance_exponent());
    let limit = match stop {
        Stop::Converge => ctx.max_terms,
        Stop::Exactly(n) => n,
    };
    let partials = zeta_partial(system, kind, &setup.zeta, limit, &mut arith)?;
    let mut used = partials.len();
    if stop == Stop::Converge {
        if let Some(i) = partials.iter().position(|p| {
            let e = arith.abs(&arith.sub(p, &setup.target));
            arith.cmp(&e, &tol) != Ordering::Greater
        }) {
            used = i + 1;
        }
    }
    let partial = if used == 0 { arith.small(0) } else { partials[used - 1].clone() };
    let error = arith.abs(&arith.sub(&partial, &setup.target));
    let zeta = arith.decimal(&setup.zeta, ctx.digits as usize);
    let series = finish(
        &mut arith,
        ctx,
        format!("zeta_{}", kind.name()),
        partial,
        setup.target,
        setup.target_symbolic,
        error,
        used,
        None,
    );
    Ok(ZetaReport {
        series,
        zeta,
        quadratic: kind.quadratic_text().to_string(),
    })
}

/// How far an arbitrary candidate `ζ` is from working: the value of the
/// kind's quadratic at `ζ`, and the gap between the `terms`-term partial sum
/// and the target.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaResidual {
    pub zeta: String,
    pub quadratic_residual: String,
    pub series_residual: String,
    #[serde(skip)]
    pub quadratic_value: Real,
    #[serde(skip)]
    pub series_value: Real,
}

pub fn zeta_residual(system: &PeriodicSystem, kind: ZetaKind, zeta: &Real, terms: usize, arith: &mut Arith) -> Result<ZetaResidual> {
    let setup = zeta_setup(system, kind, arith)?;
    let reduced = reduce(system)?;
    let dd = arith.int(&reduced.d);
    let q = arith.add(
        &arith.add(&arith.mul(&dd, &arith.mul(zeta, zeta)), &arith.mul(&setup.linear, zeta)),
        &setup.constant,
    );
    let partials = zeta_partial(system, kind, zeta, terms.max(1), arith)?;
    let last = partials.last().expect("at least one term");
    let gap = arith.abs(&arith.sub(last, &setup.target));
    let q = arith.abs(&q);
    Ok(ZetaResidual {
        zeta: arith.decimal(zeta, 20),
        quadratic_residual: arith.decimal(&q, 6),
        series_residual: arith.decimal(&gap, 6),
        quadratic_value: q,
        series_value: gap,
    })
}

/// Both sides of a finite-sum identity, exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSumReport {
    pub kind: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// `Σ_{n=1}^N xⁿB_{nd+r}` against
/// `(x^{N+1}(B_{(N+1)d+r}/D + xB_{Nd+r}) - x(B_{d+r}/D + xB_r))/((x-α)(x-β))`,
/// with `(x-α)(x-β) = x² + (C/D)x - 1/D`.
pub fn geometric_sum(system: &PeriodicSystem, x: &BigRational, big_n: i64, r: i64) -> Result<ExactSumReport> {
    if big_n < 1 {
        return Err(Error::InvalidParameters("N must be at least 1".into()));
    }
    if r < -1 {
        return Err(Error::IndexOutOfRange { index: r, reason: "r must be at least -1" });
    }
    let reduced = reduce(system)?;
    let (c, dd) = (rat(&reduced.c), rat(&reduced.d));
    if (&dd * x * x + &c * x - BigRational::one()).is_zero() {
        return Err(Error::PoleAtRoot);
    }
    let d = system.period() as i64;
    let mut seq = Denominators::new(system);
    let mut b = |k: i64| rat(&seq.get(k));
    let mut lhs = BigRational::zero();
    let mut power = BigRational::one();
    for n in 1..=big_n {
        power *= x;
        lhs += &power * b(n * d + r);
    }
    let x_n1 = num_traits::pow(x.clone(), (big_n + 1) as usize);
    let num = &x_n1 * (b((big_n + 1) * d + r) / &dd + x * b(big_n * d + r)) - x * (b(d + r) / &dd + x * b(r));
    let den = x * x + &c / &dd * x - BigRational::one() / &dd;
    let rhs = num / den;
    Ok(ExactSumReport {
        kind: "geometric",
        holds: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// `Σ_{n=1}^N C(N,n)(-(α+β))ⁿB_{nd-1}` against `B_{2Nd-1}/Dᴺ`, with
/// `α + β` taken from the exact roots.
pub fn binomial_sum(system: &PeriodicSystem, big_n: i64) -> Result<ExactSumReport> {
    if big_n < 1 {
        return Err(Error::InvalidParameters("N must be at least 1".into()));
    }
    let reduced = reduce(system)?;
    let (alpha, beta) = roots(&reduced)?;
    let sum = (&alpha + &beta)
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::HypothesisViolated("α + β is not rational".into()))?;
    let w = -sum;
    let d = system.period() as i64;
    let mut seq = Denominators::new(system);
    let mut lhs = BigRational::zero();
    let mut binom = BigInt::one();
    for n in 1..=big_n {
        binom = binom * (big_n - n + 1) / n;
        lhs += rat(&binom) * num_traits::pow(w.clone(), n as usize) * rat(&seq.get(n * d - 1));
    }
    let rhs = rat(&seq.get(2 * big_n * d - 1)) / num_traits::pow(rat(&reduced.d), big_n as usize);
    Ok(ExactSumReport {
        kind: "binomial",
        holds: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s8() -> PeriodicSystem {
        PeriodicSystem::from_ints(&[1, 1], &[1, 4], 2, true).unwrap()
    }

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50, 60).unwrap()
    }

    #[test]
    fn millin_worked_case() {
        let input = SeriesInput::System(s8());
        let rep = telescoping_sum(&input, TelescopingFamily::Millin, &ctx(), Stop::Exactly(3)).unwrap();
        let expected = BigRational::new(1.into(), 6.into())
            + BigRational::new(1.into(), 204.into())
            + BigRational::new(1.into(), 235416.into());
        assert_eq!(rep.partial_exact, Some(expected));
        assert_eq!(rep.closed_symbolic, "3 - (1/2)√32");
        let rep = telescoping_sum(&input, TelescopingFamily::Millin, &ctx(), Stop::Converge).unwrap();
        assert!(rep.converged, "{rep:?}");
    }

    #[test]
    fn pell_families_for_eight() {
        let input = SeriesInput::Sqrt(8.into());
        let y = telescoping_sum(&input, TelescopingFamily::PellY, &ctx(), Stop::Exactly(3)).unwrap();
        let expected = BigRational::new(1.into(), 6.into())
            + BigRational::new(1.into(), 210.into())
            + BigRational::new(1.into(), 7140.into());
        assert_eq!(y.partial_exact, Some(expected));
        assert_eq!(y.closed_symbolic, "3 - √8");
        let x = telescoping_sum(&input, TelescopingFamily::PellX, &ctx(), Stop::Exactly(2)).unwrap();
        let expected = BigRational::new(1.into(), 51.into()) + BigRational::new(1.into(), 1683.into());
        assert_eq!(x.partial_exact, Some(expected));
        let y2 = telescoping_sum(&input, TelescopingFamily::PellY2, &ctx(), Stop::Exactly(2)).unwrap();
        let expected = BigRational::new(35.into(), 36.into()) + BigRational::new(1189.into(), 44100.into());
        assert_eq!(y2.partial_exact, Some(expected));
        for fam in [TelescopingFamily::PellY, TelescopingFamily::PellX, TelescopingFamily::PellY2] {
            let rep = telescoping_sum(&input, fam, &ctx(), Stop::Converge).unwrap();
            assert!(rep.converged, "{fam}: {rep:?}");
        }
    }

    #[test]
    fn pell_families_need_even_period() {
        let input = SeriesInput::Sqrt(2.into());
        assert!(matches!(
            telescoping_sum(&input, TelescopingFamily::PellY, &ctx(), Stop::Converge),
            Err(Error::HypothesisViolated(_))
        ));
        let input = SeriesInput::System(s8());
        assert!(telescoping_sum(&input, TelescopingFamily::PellY, &ctx(), Stop::Converge).is_err());
    }

    #[test]
    fn circular_and_hyperbolic_for_two() {
        let input = SeriesInput::Sqrt(2.into());
        let at = telescoping_sum(&input, TelescopingFamily::Arctan, &ctx(), Stop::Converge).unwrap();
        assert_eq!(at.closed_symbolic, "arctan(1/2)");
        assert!(at.converged);
        let ah = telescoping_sum(&input, TelescopingFamily::Artanh, &ctx(), Stop::Converge).unwrap();
        assert_eq!(ah.closed_symbolic, "(1/2)*ln(3/2)");
        assert!(ah.converged);
        // D = -1 for √8.
        let bad = telescoping_sum(&SeriesInput::Sqrt(8.into()), TelescopingFamily::Arctan, &ctx(), Stop::Converge);
        assert!(matches!(bad, Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn exhausted_precision_is_reported() {
        let tight = PrecisionContext::new(50, 3).unwrap();
        let rep = telescoping_sum(&SeriesInput::System(s8()), TelescopingFamily::PeriodReciprocal, &tight, Stop::Converge).unwrap();
        assert!(!rep.converged);
        assert!(matches!(rep.require_converged(), Err(Error::PrecisionExhausted { terms: 3, .. })));
    }

    #[test]
    fn zeta_roots_for_eight() {
        let mut a = Arith::with_digits(60);
        let setup = zeta_setup(&s8(), ZetaKind::PiOver6, &mut a).unwrap();
        let expected = a.sub(&a.sqrt(&a.small(23)), &a.mul(&a.small(2), &a.sqrt(&a.small(6))));
        let diff = a.abs(&a.sub(&setup.zeta, &expected));
        assert_eq!(a.cmp(&diff, &a.ten_to_minus(50)), Ordering::Less);
        let setup = zeta_setup(&s8(), ZetaKind::Ln3, &mut a).unwrap();
        let expected = a.sub(&a.mul(&a.small(4), &a.sqrt(&a.small(2))), &a.sqrt(&a.small(33)));
        let diff = a.abs(&a.sub(&setup.zeta, &expected));
        assert_eq!(a.cmp(&diff, &a.ten_to_minus(50)), Ordering::Less);
    }

    #[test]
    fn zeta_series_fibonacci() {
        let rep = zeta_series(&PeriodicSystem::fibonacci(), ZetaKind::PiOver6, &ctx(), Stop::Exactly(40)).unwrap();
        assert!(rep.series.error_below(30));
        let rep = zeta_series(&PeriodicSystem::fibonacci(), ZetaKind::PiOver6, &PrecisionContext::new(50, 200).unwrap(), Stop::Converge).unwrap();
        assert!(rep.series.converged);
    }

    #[test]
    fn finite_sums_for_eight() {
        let rep = geometric_sum(&s8(), &BigRational::one(), 2, -1).unwrap();
        assert_eq!((rep.lhs.as_str(), rep.holds), ("7", true));
        let rep = binomial_sum(&s8(), 2).unwrap();
        assert_eq!((rep.lhs.as_str(), rep.rhs.as_str(), rep.holds), ("204", "204", true));
        let rep = binomial_sum(&s8(), 1).unwrap();
        assert_eq!((rep.lhs.as_str(), rep.holds), ("-6", true));
    }

    #[test]
    fn geometric_pole() {
        // Fibonacci: D x² + C x - 1 = x² + x - 1 has no rational root, so
        // build a system with C = 0, D = 1: d = 1, a = (1), b = (0).
        let s = PeriodicSystem::from_ints(&[1], &[0], 0, false).unwrap();
        assert_eq!(geometric_sum(&s, &BigRational::one(), 2, 0), Err(Error::PoleAtRoot));
    }
}
