//! Checkable identities between continuants. Each check evaluates both sides
//! exactly and reports them; nothing is assumed to hold.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::continuant::ContinuantTable;
use crate::error::{Error, Result};
use crate::system::PeriodicSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    CassiniA,
    CassiniB,
    Catalan,
    DOcagne,
    IndexChanging,
    Telescoping,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::CassiniA,
        Identity::CassiniB,
        Identity::Catalan,
        Identity::DOcagne,
        Identity::IndexChanging,
        Identity::Telescoping,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::CassiniA => "cassini_a",
            Identity::CassiniB => "cassini_b",
            Identity::Catalan => "catalan",
            Identity::DOcagne => "docagne",
            Identity::IndexChanging => "index_changing",
            Identity::Telescoping => "telescoping",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['-', '\''], "_");
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == key || (key == "d_ocagne" && *id == Identity::DOcagne))
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// `(λ, ν, μ)`; `μ` is only read by the Cassini pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityParams {
    pub lambda: i64,
    pub nu: i64,
    pub mu: i64,
}

impl IdentityParams {
    pub fn new(lambda: i64, nu: i64, mu: i64) -> Self {
        Self { lambda, nu, mu }
    }

    /// Largest continuant index any identity touches for these parameters.
    pub fn max_index(&self) -> i64 {
        self.lambda + self.nu + self.mu
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityLine {
    pub label: &'static str,
    #[serde(with = "crate::serde_int::string")]
    pub lhs: BigInt,
    #[serde(with = "crate::serde_int::string")]
    pub rhs: BigInt,
}

impl IdentityLine {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub params: IdentityParams,
    pub lines: Vec<IdentityLine>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.lines.iter().all(IdentityLine::holds)
    }
}

fn sign(exp: i64) -> BigInt {
    if exp.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn validate(system: &PeriodicSystem, identity: Identity, p: IdentityParams) -> Result<()> {
    let IdentityParams { lambda, nu, mu } = p;
    if lambda < 0 || nu < 0 || mu < 0 {
        return Err(Error::InvalidParameters(format!(
            "{identity} needs non-negative (λ, ν, μ), got ({lambda}, {nu}, {mu})"
        )));
    }
    match identity {
        Identity::DOcagne if lambda < nu => Err(Error::InvalidParameters(format!(
            "docagne needs λ ≥ ν, got λ = {lambda}, ν = {nu}"
        ))),
        Identity::IndexChanging if nu < 1 => Err(Error::InvalidParameters(
            "index_changing needs ν ≥ 1 so that ν - 2 ≥ -1".into(),
        )),
        Identity::Telescoping if lambda < nu => Err(Error::InvalidParameters(format!(
            "telescoping needs λ ≥ ν, got λ = {lambda}, ν = {nu}"
        ))),
        Identity::Telescoping if (lambda - nu) % system.period() as i64 != 0 => {
            Err(Error::InvalidParameters(format!(
                "telescoping needs d | (λ - ν); d = {}, λ - ν = {}",
                system.period(),
                lambda - nu
            )))
        }
        _ => Ok(()),
    }
}

/// Checks `identity` against a precomputed table, which must reach
/// `params.max_index()`.
pub fn check_with_table(table: &ContinuantTable, identity: Identity, params: IdentityParams) -> Result<IdentityReport> {
    let sys = table.system();
    validate(sys, identity, params)?;
    let IdentityParams { lambda: l, nu: n, mu: m } = params;
    let a = |nu: i64, lambda: i64| table.a(nu, lambda).cloned();
    let b = |nu: i64, lambda: i64| table.b(nu, lambda).cloned();

    let lines = match identity {
        Identity::CassiniA | Identity::CassiniB => {
            let coeff = sign(n - 1) * sys.numerator_range_product(l + 1, l + n);
            let side = |nu: i64| if identity == Identity::CassiniA { a(nu, 0) } else { b(nu, 0) };
            let lhs = side(n + l + m - 1)? * b(n - 1, l)?;
            let rhs = side(n + l - 1)? * b(n + m - 1, l)? + coeff * side(l - 1)? * b(m - 1, n + l)?;
            let label = if identity == Identity::CassiniA { "A" } else { "B" };
            vec![IdentityLine { label, lhs, rhs }]
        }
        Identity::Catalan => {
            let a1 = sys.a(l + 1);
            vec![
                IdentityLine {
                    label: "A",
                    lhs: a(n + l, 0)?,
                    rhs: a(l, 0)? * b(n, l)? + a1 * a(l - 1, 0)? * b(n - 1, l + 1)?,
                },
                IdentityLine {
                    label: "B",
                    lhs: b(n + l, 0)?,
                    rhs: b(l, 0)? * b(n, l)? + a1 * b(l - 1, 0)? * b(n - 1, l + 1)?,
                },
            ]
        }
        Identity::DOcagne => {
            let coeff = sign(n - 1) * sys.numerator_range_product(l - n + 1, l);
            let shift = l - n;
            vec![
                IdentityLine {
                    label: "A",
                    lhs: a(l, 0)? * b(n - 1, shift)?,
                    rhs: a(l - 1, 0)? * b(n, shift)? + &coeff * a(shift - 1, 0)?,
                },
                IdentityLine {
                    label: "B",
                    lhs: b(l, 0)? * b(n - 1, shift)?,
                    rhs: b(l - 1, 0)? * b(n, shift)? + &coeff * b(shift - 1, 0)?,
                },
            ]
        }
        Identity::IndexChanging => vec![
            IdentityLine {
                label: "A",
                lhs: a(n, l)?,
                rhs: sys.head(l) * a(n - 1, l + 1)? + sys.a(l + 1) * a(n - 2, l + 2)?,
            },
            IdentityLine {
                label: "B",
                lhs: b(n, l)?,
                rhs: sys.b(l + 1) * b(n - 1, l + 1)? + sys.a(l + 2) * b(n - 2, l + 2)?,
            },
        ],
        Identity::Telescoping => {
            let coeff = sign(n) * sys.numerator_range_product(l - n + 1, l);
            vec![
                IdentityLine {
                    label: "A",
                    lhs: a(l - 1, 0)? * b(n, 0)? - a(l, 0)? * b(n - 1, 0)?,
                    rhs: &coeff * a(l - n - 1, 0)?,
                },
                IdentityLine {
                    label: "B",
                    lhs: b(l - 1, 0)? * b(n, 0)? - b(l, 0)? * b(n - 1, 0)?,
                    rhs: &coeff * b(l - n - 1, 0)?,
                },
            ]
        }
    };
    Ok(IdentityReport { identity, params, lines })
}

/// Evaluates both sides of `identity` at `params`.
pub fn verify_identity(system: &PeriodicSystem, identity: Identity, params: IdentityParams) -> Result<IdentityReport> {
    validate(system, identity, params)?;
    let table = ContinuantTable::new(system, params.max_index().max(0))?;
    check_with_table(&table, identity, params)
}

/// Every valid `(identity, λ, ν, μ)` with entries in `0..=bound`, checked
/// against one table. Returns the reports that fail.
pub fn sweep(system: &PeriodicSystem, bound: i64) -> Result<(usize, Vec<IdentityReport>)> {
    let table = ContinuantTable::new(system, 3 * bound)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for identity in Identity::ALL {
        let mus = if matches!(identity, Identity::CassiniA | Identity::CassiniB) {
            bound
        } else {
            0
        };
        for lambda in 0..=bound {
            for nu in 0..=bound {
                for mu in 0..=mus {
                    let params = IdentityParams::new(lambda, nu, mu);
                    if validate(system, identity, params).is_err() {
                        continue;
                    }
                    let report = check_with_table(&table, identity, params)?;
                    checked += 1;
                    if !report.holds() {
                        failures.push(report);
                    }
                }
            }
        }
    }
    Ok((checked, failures))
}
