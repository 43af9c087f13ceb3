//! Divisibility of `B_{nd-1}`, congruences modulo primes, Pisano periods,
//! the laws of apparition and repetition, and the Lucas-type pseudoprime test.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::modular::{inverse_mod_prime, jacobi, legendre, mul_mod, multiplicative_order, require_prime, residue, valuation};
use crate::recurrence::{reduce, term, ReducedRecurrence};
use crate::system::PeriodicSystem;

/// `B_{-1}, …, B_upto` reduced modulo `m`, using the defining recurrence.
pub fn residues(system: &PeriodicSystem, m: u64, upto: i64) -> Vec<u64> {
    let d = system.period();
    let a: Vec<u64> = (1..=d as i64).map(|i| residue(system.a(i), m)).collect();
    let b: Vec<u64> = (1..=d as i64).map(|i| residue(system.b(i), m)).collect();
    let mut out = vec![0, 1 % m];
    for k in 1..=upto.max(0) {
        let i = (k - 1).rem_euclid(d as i64) as usize;
        let n = out.len();
        out.push((mul_mod(b[i], out[n - 1], m) + mul_mod(a[i], out[n - 2], m)) % m);
    }
    out.truncate((upto + 2).max(1) as usize);
    out
}

/// Whether `B_{md-1} ∣ B_{nd-1}`; requires `m ∣ n`.
pub fn divisibility_check(system: &PeriodicSystem, m: i64, n: i64) -> Result<bool> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParameters("m and n must be positive".into()));
    }
    if n % m != 0 {
        return Err(Error::InvalidParameters(format!("{m} does not divide {n}")));
    }
    let d = system.period() as i64;
    let (bm, bn) = (term(system, m * d - 1)?, term(system, n * d - 1)?);
    if bm.is_zero() {
        return Ok(bn.is_zero());
    }
    Ok((bn % bm).is_zero())
}

/// Whether `gcd(B_{md-1}, B_{nd-1}) = |B_{gcd(m,n)d-1}|`.
pub fn strong_gcd_check(system: &PeriodicSystem, m: i64, n: i64) -> Result<bool> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidParameters("m and n must be positive".into()));
    }
    let d = system.period() as i64;
    let g = term(system, m.gcd(&n) * d - 1)?;
    let lhs = term(system, m * d - 1)?.gcd(&term(system, n * d - 1)?);
    Ok(lhs == num_traits::abs(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    DividesCAndD,
    DividesCOnly,
    DividesDOnly,
    DividesDelta,
    Residue,
    NonResidue,
}

impl CaseTag {
    /// Classification by `C mod p`, `D mod p` and `(Δ | p)`.
    pub fn classify(reduced: &ReducedRecurrence, p: u64) -> Result<Self> {
        let c0 = residue(&reduced.c, p) == 0;
        let d0 = residue(&reduced.d, p) == 0;
        Ok(match (c0, d0) {
            (true, true) => CaseTag::DividesCAndD,
            _ if p == 2 => {
                return Err(Error::InvalidParameters(
                    "for p = 2 only the case p ∣ C, p ∣ D has a congruence theorem".into(),
                ))
            }
            (true, false) => CaseTag::DividesCOnly,
            (false, true) => CaseTag::DividesDOnly,
            (false, false) => legendre_tag(reduced, p),
        })
    }
}

fn legendre_tag(reduced: &ReducedRecurrence, p: u64) -> CaseTag {
    match legendre(&reduced.delta, p) {
        0 => CaseTag::DividesDelta,
        1 => CaseTag::Residue,
        _ => CaseTag::NonResidue,
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::DividesCAndD => "p | C, p | D",
            CaseTag::DividesCOnly => "p | C, p ∤ D",
            CaseTag::DividesDOnly => "p ∤ C, p | D",
            CaseTag::DividesDelta => "p | Δ, p ∤ CD",
            CaseTag::Residue => "(Δ|p) = 1",
            CaseTag::NonResidue => "(Δ|p) = -1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub index: String,
    pub claim: String,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceCase {
    pub p: u64,
    pub case_tag: CaseTag,
    /// Every theorem whose hypotheses hold, starting with `case_tag`.
    pub theorems: Vec<CaseTag>,
    pub verified_congruences: Vec<Congruence>,
}

impl CongruenceCase {
    pub fn all_pass(&self) -> bool {
        self.verified_congruences.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Congruence> {
        self.verified_congruences.iter().filter(|c| !c.holds)
    }
}

/// Evaluates every congruence the theorem for `p`'s case asserts, for each
/// `r` in `r_range`.
pub fn congruence_suite(system: &PeriodicSystem, p: u64, r_range: RangeInclusive<i64>) -> Result<CongruenceCase> {
    require_prime(p)?;
    if *r_range.start() < -1 {
        return Err(Error::IndexOutOfRange {
            index: *r_range.start(),
            reason: "r must be at least -1",
        });
    }
    let reduced = reduce(system)?;
    let tag = CaseTag::classify(&reduced, p)?;
    let d = system.period() as i64;
    let pi = p as i64;
    let r_max = *r_range.end();
    let seq = residues(system, p, (pi + 1).max(5) * d + r_max.max(d));
    let b = |k: i64| seq[(k + 1) as usize];
    let c = residue(&reduced.c, p);
    let dd = residue(&reduced.d, p);
    let delta = residue(&reduced.delta, p);
    let neg = |x: u64| (p - x % p) % p;
    let add = |x: u64, y: u64| (x + y) % p;
    let mul = |x: u64, y: u64| mul_mod(x, y, p);
    let pow = |x: u64, e: i64| crate::modular::pow_mod(x, e as u64, p);

    // When p | C and p ∤ D we have Δ ≡ 4D, and the (Δ|p) theorems hold too.
    let mut theorems = vec![tag];
    if tag == CaseTag::DividesCOnly {
        theorems.push(legendre_tag(&reduced, p));
    }
    let mut out = Vec::new();
    let mut push = |index: String, claim: String, lhs: u64, rhs: u64| {
        out.push(Congruence {
            index,
            claim,
            lhs,
            rhs,
            holds: lhs == rhs,
        })
    };
    for theorem in &theorems {
        match theorem {
            CaseTag::DividesCAndD => {
                for n in 2..=4 {
                    for r in r_range.clone() {
                        push(format!("B_{}", n * d + r), "0".into(), b(n * d + r), 0);
                    }
                }
            }
            CaseTag::DividesCOnly => {
                let minus_half = neg(inverse_mod_prime(2, p).expect("odd p"));
                for n in 2..=5i64 {
                    for r in r_range.clone() {
                        let (rhs, claim) = if n % 2 == 0 {
                            let k = mul(mul(pow(minus_half, n - 2), dd), pow(delta, (n - 2) / 2));
                            (mul(k, b(r)), format!("(-1/2)^{} D Δ^{} B_{r}", n - 2, (n - 2) / 2))
                        } else {
                            let k = mul(pow(minus_half, n - 1), pow(delta, (n - 1) / 2));
                            (mul(k, b(d + r)), format!("(-1/2)^{} Δ^{} B_{}", n - 1, (n - 1) / 2, d + r))
                        };
                        push(format!("B_{}", n * d + r), claim, b(n * d + r), rhs);
                    }
                }
            }
            CaseTag::DividesDOnly => {
                for r in r_range.clone() {
                    let i = (pi - 1) * d + r;
                    push(format!("B_{i}"), format!("B_{r}"), b(i), b(r));
                }
                push(format!("B_{}", (pi - 1) * d - 1), "0".into(), b((pi - 1) * d - 1), 0);
            }
            CaseTag::DividesDelta => {
                for r in r_range.clone() {
                    let i = pi * d + r;
                    push(format!("2 B_{i}"), format!("C B_{r}"), mul(2, b(i)), mul(c, b(r)));
                }
                push(format!("B_{}", pi * d - 1), "0".into(), b(pi * d - 1), 0);
            }
            CaseTag::Residue => {
                for r in r_range.clone() {
                    let i = (pi + 1) * d + r;
                    let rhs = add(mul(c, b(d + r)), mul(dd, b(r)));
                    push(format!("B_{i}"), format!("C B_{} + D B_{r}", d + r), b(i), rhs);
                    let i = (pi - 1) * d + r;
                    push(format!("B_{i}"), format!("B_{r}"), b(i), b(r));
                }
                push(format!("B_{}", (pi + 1) * d - 1), format!("C B_{}", d - 1), b((pi + 1) * d - 1), mul(c, b(d - 1)));
                push(format!("B_{}", (pi - 1) * d - 1), "0".into(), b((pi - 1) * d - 1), 0);
            }
            CaseTag::NonResidue => {
                for r in r_range.clone() {
                    let i = (pi + 1) * d + r;
                    push(format!("B_{i}"), format!("-D B_{r}"), b(i), mul(neg(dd), b(r)));
                    let i = pi * d + r;
                    let rhs = add(mul(c, b(r)), neg(b(d + r)));
                    push(format!("B_{i}"), format!("C B_{r} - B_{}", d + r), b(i), rhs);
                }
                push(format!("B_{}", (pi + 1) * d - 1), "0".into(), b((pi + 1) * d - 1), 0);
                push(format!("B_{}", pi * d - 1), format!("-B_{}", d - 1), b(pi * d - 1), neg(b(d - 1)));
            }
        }
    }
    Ok(CongruenceCase {
        p,
        case_tag: tag,
        theorems,
        verified_congruences: out,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApparitionReport {
    pub p: u64,
    /// Least `k ≥ 1` with `p ∣ B_{kd-1}`, if one exists below the bound.
    pub omega: Option<u64>,
    pub clause: &'static str,
    /// `None` when `ω` was not found and the clause says nothing about
    /// that situation.
    pub holds: Option<bool>,
}

/// Rank of apparition of `p` and the matching clause of the law of
/// apparition.
pub fn rank_of_apparition(system: &PeriodicSystem, p: u64, bound: u64) -> Result<ApparitionReport> {
    require_prime(p)?;
    if bound < p + 1 {
        return Err(Error::InvalidParameters(format!("bound {bound} is below p + 1 = {}", p + 1)));
    }
    let reduced = reduce(system)?;
    let d = system.period() as i64;
    let seq = residues(system, p, bound as i64 * d - 1);
    let omega = (1..=bound).find(|&k| seq[(k as i64 * d) as usize] == 0);
    let c0 = residue(&reduced.c, p) == 0;
    let d0 = residue(&reduced.d, p) == 0;
    let in_set = |set: &[u64]| omega.map(|w| set.contains(&w));
    let (clause, holds) = if c0 && d0 {
        ("omega = 1", in_set(&[1]))
    } else if p == 2 {
        let delta0 = residue(&reduced.delta, 2) == 0;
        if d0 {
            let odd = seq[d as usize] == 1;
            if odd {
                ("omega does not exist (B_{d-1} odd)", Some(omega.is_none()))
            } else {
                ("omega = 1 (B_{d-1} even)", Some(omega == Some(1)))
            }
        } else if c0 || delta0 {
            ("omega = 1 or 2", in_set(&[1, 2]))
        } else {
            ("omega = 1 or 3", in_set(&[1, 3]))
        }
    } else if c0 {
        ("omega = 1 or 2", in_set(&[1, 2]))
    } else if d0 {
        ("omega | p - 1", omega.map(|w| (p - 1).is_multiple_of(w)))
    } else {
        match legendre(&reduced.delta, p) {
            0 => ("omega = 1 or p", in_set(&[1, p])),
            e => (
                "omega | p - (Δ|p)",
                omega.map(|w| ((p as i64 - e as i64) as u64).is_multiple_of(w)),
            ),
        }
    };
    Ok(ApparitionReport { p, omega, clause, holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PisanoReport {
    pub p: u64,
    pub case_tag: CaseTag,
    pub period: u64,
    pub bound: u64,
    pub divides: bool,
}

/// Least `π` with `B_{ν+π} ≡ B_ν (mod p)` for every `ν ≥ -1`, found by the
/// first recurrence of the opening window of `2d` residues, and the bound
/// it should divide.
pub fn pisano_period(system: &PeriodicSystem, p: u64) -> Result<PisanoReport> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidParameters("the period bound needs an odd prime".into()));
    }
    let reduced = reduce(system)?;
    let tag = CaseTag::classify(&reduced, p)?;
    let d = system.period() as u64;
    // p | C with p ∤ D still leaves an invertible recurrence, and the
    // (Δ|p) congruences behind the bound hold there as well.
    let bound_case = match tag {
        CaseTag::DividesCOnly => legendre_tag(&reduced, p),
        t => t,
    };
    let bound = match bound_case {
        CaseTag::DividesCAndD | CaseTag::DividesCOnly | CaseTag::DividesDOnly => {
            return Err(Error::HypothesisViolated(format!("p = {p} divides D")));
        }
        CaseTag::DividesDelta => {
            let half_c = mul_mod(residue(&reduced.c, p), inverse_mod_prime(2, p).expect("odd p"), p);
            p * d * multiplicative_order(half_c, p).expect("p ∤ C")
        }
        CaseTag::Residue => (p - 1) * d,
        CaseTag::NonResidue => (p + 1) * d * multiplicative_order(residue(&(-&reduced.d), p), p).expect("p ∤ D"),
    };
    // The state space has at most d·p² points, so the search terminates.
    let window = 2 * d as usize;
    let cap = d * p * p + 1;
    let seq = residues(system, p, (cap as usize + window) as i64);
    let period = (1..=cap)
        .find(|&t| seq[t as usize..t as usize + window] == seq[..window])
        .expect("residue sequence of an invertible recurrence is periodic");
    Ok(PisanoReport {
        p,
        case_tag: tag,
        period,
        bound,
        divides: bound % period == 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CompositeProven,
    ProbablePrime,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CompositeProven => "composite_proven",
            Verdict::ProbablePrime => "probable_prime",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoprimeVerdict {
    #[serde(with = "crate::serde_int::string")]
    pub n: BigInt,
    pub epsilon: i32,
    #[serde(with = "crate::serde_int::string")]
    pub index: BigInt,
    pub verdict: Verdict,
}

/// `B_{kd-1} mod n` by stepping the reduced recurrence from
/// `B_{-1} = 0` and `B_{d-1}`.
pub fn period_term_mod(system: &PeriodicSystem, reduced: &ReducedRecurrence, k: u64, n: u64) -> Result<u64> {
    let d = system.period() as i64;
    let c = residue(&reduced.c, n);
    let dd = residue(&reduced.d, n);
    let (mut s0, mut s1) = (0, residue(&term(system, d - 1)?, n));
    if k == 0 {
        return Ok(s0);
    }
    for _ in 1..k {
        let next = (mul_mod(c, s1, n) + mul_mod(dd, s0, n)) % n;
        s0 = s1;
        s1 = next;
    }
    Ok(s1)
}

/// Tests `B_{(n-ε)d-1} ≡ 0 (mod n)` with `ε = (Δ | n)`.
pub fn lucas_pseudoprime_test(system: &PeriodicSystem, n: u64) -> Result<PseudoprimeVerdict> {
    let reduced = reduce(system)?;
    pseudoprime_with(system, &reduced, n)
}

fn pseudoprime_with(system: &PeriodicSystem, reduced: &ReducedRecurrence, n: u64) -> Result<PseudoprimeVerdict> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("n = {n} must be at least 3")));
    }
    let d = system.period() as u64;
    let nb = BigInt::from(n);
    let epsilon = if n % 2 == 1 { jacobi(&reduced.delta, &nb)? } else { 0 };
    let k = (n as i64 - epsilon as i64) as u64;
    let index = BigInt::from(k) * d - 1;
    let product = &reduced.c * &reduced.d * &reduced.delta;
    let verdict = if n.is_multiple_of(2) || !product.gcd(&nb).is_one() {
        Verdict::Inapplicable
    } else if period_term_mod(system, reduced, k, n)? == 0 {
        Verdict::ProbablePrime
    } else {
        Verdict::CompositeProven
    };
    Ok(PseudoprimeVerdict {
        n: nb,
        epsilon,
        index,
        verdict,
    })
}

/// Verdicts for every odd `n` in `range` (and `n ≥ 3`), in increasing order.
pub fn pseudoprime_scan(system: &PeriodicSystem, range: RangeInclusive<u64>, exec: Execution) -> Result<Vec<PseudoprimeVerdict>> {
    let reduced = reduce(system)?;
    let start = (*range.start()).max(3) | 1;
    let end = *range.end();
    if start > end {
        return Ok(Vec::new());
    }
    let candidates: Vec<u64> = (start..=end).step_by(2).collect();
    exec.map(candidates, |n| pseudoprime_with(system, &reduced, n))
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepetitionReport {
    pub p: u64,
    pub n: u64,
    pub m: u64,
    pub f: u32,
    /// Exponent of `p` in `B_{nd-1}/B_{d-1}`.
    pub e: u32,
    /// Exponent of `p` in `B_{p^f mnd-1}/B_{d-1}`.
    pub observed: u32,
    pub divides: bool,
    /// Whether the power is exactly `e + f`; only claimed when `p ∤ D`.
    pub exact: Option<bool>,
}

impl RepetitionReport {
    pub fn holds(&self) -> bool {
        self.divides && self.exact != Some(false)
    }
}

pub fn law_of_repetition_check(system: &PeriodicSystem, p: u64, n: u64, m: u64, f: u32) -> Result<RepetitionReport> {
    require_prime(p)?;
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameters("n and m must be positive".into()));
    }
    if m.is_multiple_of(p) {
        return Err(Error::HypothesisViolated(format!("p = {p} divides m = {m}")));
    }
    let reduced = reduce(system)?;
    let d = system.period() as i64;
    let base = term(system, d - 1)?;
    if base.is_zero() {
        return Err(Error::DivisionByZero("B_{d-1} = 0"));
    }
    let quotient = |k: i64| -> Result<BigInt> {
        let (q, r) = term(system, k * d - 1)?.div_rem(&base);
        debug_assert!(r.is_zero());
        Ok(q)
    };
    let first = quotient(n as i64)?;
    let e = valuation(&first, p).ok_or(Error::DivisionByZero("B_{nd-1} = 0"))?;
    if e == 0 {
        return Err(Error::HypothesisViolated(format!("p = {p} does not divide B_{{nd-1}}/B_{{d-1}}")));
    }
    let k = p.pow(f) * m * n;
    let second = quotient(k as i64)?;
    let observed = valuation(&second, p).ok_or(Error::DivisionByZero("B_{kd-1} = 0"))?;
    let exact = (residue(&reduced.d, p) != 0).then_some(observed == e + f);
    Ok(RepetitionReport {
        p,
        n,
        m,
        f,
        e,
        observed,
        divides: observed >= e + f,
        exact,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FermatReport {
    pub base: i64,
    pub p: u64,
    /// `B_{p-2}(a₀ - 1) = a₀^{p-1} - 1` exactly.
    pub closed_form: bool,
    pub divisible: bool,
}

/// For `d = 1`, `a = (-a₀)`, `b = (a₀ + 1)`: checks the closed form of
/// `B_{p-2}` and that `p` divides it.
pub fn fermat_check(base: i64, p: u64) -> Result<FermatReport> {
    require_prime(p)?;
    if p < 3 {
        return Err(Error::InvalidParameters("p must be odd".into()));
    }
    let system = PeriodicSystem::from_ints(&[-base], &[base + 1], 0, false)?;
    let b = term(&system, p as i64 - 2)?;
    let a0 = BigInt::from(base);
    let closed_form = &b * (&a0 - 1) == num_traits::pow(a0.clone(), p as usize - 1) - 1;
    Ok(FermatReport {
        base,
        p,
        closed_form,
        divisible: (b % p).is_zero(),
    })
}
