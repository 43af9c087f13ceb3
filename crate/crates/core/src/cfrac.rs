//! Continued fractions of `√N` and solutions of `x² − Ny² = 1`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::continuant::ContinuantSequence;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::system::PeriodicSystem;

/// `√N = [a₀; b₁, …, b_d, b₁, …]` with the minimal repeating block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtExpansion {
    #[serde(rename = "N", with = "crate::serde_int")]
    pub n: BigInt,
    #[serde(with = "crate::serde_int")]
    pub a0: BigInt,
    #[serde(with = "crate::serde_int::vec")]
    pub period: Vec<BigInt>,
}

impl SqrtExpansion {
    pub fn d(&self) -> usize {
        self.period.len()
    }

    /// The system with unit partial numerators, `b = period` and `b₀ = a₀`.
    pub fn to_system(&self) -> PeriodicSystem {
        PeriodicSystem::new(vec![BigInt::one(); self.d()], self.period.clone(), self.a0.clone(), true)
            .expect("expansion terms are positive")
    }

    /// Number of continuant steps between consecutive Pell solutions.
    pub fn solution_stride(&self) -> i64 {
        let d = self.d() as i64;
        if d % 2 == 0 {
            d
        } else {
            2 * d
        }
    }
}

impl std::fmt::Display for SqrtExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let block: Vec<String> = self.period.iter().map(ToString::to_string).collect();
        write!(f, "sqrt({}) = [{}; ({})] period d={}", self.n, self.a0, block.join(","), self.d())
    }
}

/// Runs the `(m, q)` iteration `m' = a·q − m`, `q' = (N − m'²)/q`,
/// `a' = ⌊(a₀ + m')/q'⌋` until a state repeats.
pub fn expand_sqrt(n: &BigInt) -> Result<SqrtExpansion> {
    if n < &BigInt::from(2) {
        return Err(Error::InvalidParameters(format!("N = {n} must be at least 2")));
    }
    let a0 = n.sqrt();
    if &a0 * &a0 == *n {
        return Err(Error::PerfectSquare(n.to_string()));
    }
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        m = &a * &q - &m;
        q = (n - &m * &m) / &q;
        let state = (m.clone(), q.clone());
        if let Some(&start) = seen.get(&state) {
            let period = terms[start..].to_vec();
            let exp = SqrtExpansion { n: n.clone(), a0, period };
            debug_assert_eq!(exp.period.last(), Some(&(BigInt::from(2) * &exp.a0)));
            return Ok(exp);
        }
        seen.insert(state, terms.len());
        a = (&a0 + &m) / &q;
        terms.push(a.clone());
    }
}

/// A solution of `x² − Ny² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "crate::serde_int::string")]
    pub x: BigInt,
    #[serde(with = "crate::serde_int::string")]
    pub y: BigInt,
}

impl PellSolution {
    pub fn satisfies(&self, n: &BigInt) -> bool {
        &self.x * &self.x - n * &self.y * &self.y == BigInt::one()
    }
}

/// `(A_{k-1}, B_{k-1})` with `k = d` for even `d` and `k = 2d` for odd `d`.
pub fn pell_fundamental(n: &BigInt) -> Result<PellSolution> {
    Ok(pell_solutions(n, 1)?.remove(0))
}

/// The first `count` solutions `(A_{nk-1}, B_{nk-1})`, checked against the
/// equation and against the composition law
/// `(x_{n+1}, y_{n+1}) = (x₁xₙ + Ny₁yₙ, x₁yₙ + y₁xₙ)`.
pub fn pell_solutions(n: &BigInt, count: usize) -> Result<Vec<PellSolution>> {
    let exp = expand_sqrt(n)?;
    pell_solutions_from(&exp, count)
}

pub fn pell_solutions_from(exp: &SqrtExpansion, count: usize) -> Result<Vec<PellSolution>> {
    if count == 0 {
        return Err(Error::InvalidParameters("count must be positive".into()));
    }
    let stride = exp.solution_stride();
    let seq = ContinuantSequence::new(&exp.to_system(), 0, stride * count as i64 - 1)?;
    let sols: Vec<PellSolution> = (1..=count as i64)
        .map(|k| PellSolution {
            x: seq.numerator(k * stride - 1).clone(),
            y: seq.denominator(k * stride - 1).clone(),
        })
        .collect();
    let first = &sols[0];
    for (i, s) in sols.iter().enumerate() {
        if !s.satisfies(&exp.n) {
            return Err(Error::HypothesisViolated(format!(
                "({}, {}) does not satisfy x² − {}y² = 1",
                s.x, s.y, exp.n
            )));
        }
        if i > 0 {
            let prev = &sols[i - 1];
            let composed = PellSolution {
                x: &first.x * &prev.x + &exp.n * &first.y * &prev.y,
                y: &first.x * &prev.y + &first.y * &prev.x,
            };
            if &composed != s {
                return Err(Error::HypothesisViolated(format!(
                    "solution {} disagrees with the composition law",
                    i + 1
                )));
            }
        }
    }
    Ok(sols)
}

/// Serialized form: `{"N", "a0", "period", "solutions": [{"x","y"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellDocument {
    #[serde(flatten)]
    pub expansion: SqrtExpansion,
    pub solutions: Vec<PellSolution>,
}

pub fn pell_document(n: &BigInt, count: usize) -> Result<PellDocument> {
    let expansion = expand_sqrt(n)?;
    let solutions = pell_solutions_from(&expansion, count)?;
    Ok(PellDocument { expansion, solutions })
}

fn isqrt_u128(v: u128) -> u128 {
    let mut r = (v as f64).sqrt() as u128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// Smallest `y ≤ y_limit` with `1 + Ny²` a perfect square, by exhaustive
/// search. Independent of any continued-fraction machinery.
pub fn pell_brute_force(n: u64, y_limit: u64, exec: Execution) -> Option<(u64, u64)> {
    let nn = n as u128;
    let y = exec.find_first(1..y_limit.saturating_add(1), |y| {
        let v = 1 + nn * (y as u128) * (y as u128);
        let r = isqrt_u128(v);
        r * r == v
    })?;
    let x = isqrt_u128(1 + nn * (y as u128) * (y as u128));
    Some((x.to_u64()?, y))
}
