//! Building a `PeriodicSystem` from command-line flags.

use std::path::PathBuf;

use clap::Args;
use num_bigint::BigInt;

use contikit::{expand_sqrt, Error, PeriodicSystem};

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// JSON file holding `{"d", "a", "b", "b0", "strict"}`.
    #[arg(long, conflicts_with_all = ["sqrt", "a", "b", "d", "b0"])]
    pub system: Option<PathBuf>,

    /// Use the continued fraction of √N.
    #[arg(long, value_name = "N", conflicts_with_all = ["a", "b", "d", "b0"])]
    pub sqrt: Option<BigInt>,

    /// Period length; inferred from `--a` when omitted.
    #[arg(long)]
    pub d: Option<usize>,

    /// Partial numerators a₁..a_d, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, requires = "b")]
    pub a: Vec<BigInt>,

    /// Partial denominators b₁..b_d, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, requires = "a")]
    pub b: Vec<BigInt>,

    /// Leading term b₀.
    #[arg(long, allow_negative_numbers = true)]
    pub b0: Option<BigInt>,

    /// Accept non-positive coefficients.
    #[arg(long)]
    pub lenient: bool,
}

impl SystemArgs {
    pub fn resolve(&self) -> Result<PeriodicSystem, Error> {
        if let Some(path) = &self.system {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())));
        }
        if let Some(n) = &self.sqrt {
            return Ok(expand_sqrt(n)?.to_system());
        }
        if self.a.is_empty() {
            return Err(Error::InvalidSystem("give --system, --sqrt or --a/--b".into()));
        }
        if let Some(d) = self.d {
            if d != self.a.len() || d != self.b.len() {
                return Err(Error::InvalidSystem(format!(
                    "d = {d} but a has {} and b has {} entries",
                    self.a.len(),
                    self.b.len()
                )));
            }
        }
        PeriodicSystem::new(self.a.clone(), self.b.clone(), self.b0.clone().unwrap_or_default(), !self.lenient)
    }
}
