mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use contikit::audit::{self, AuditConfig};
use contikit::cfrac::pell_document;
use contikit::divisibility::{
    congruence_suite, divisibility_check, law_of_repetition_check, lucas_pseudoprime_test, pisano_period,
    pseudoprime_scan, rank_of_apparition, strong_gcd_check,
};
use contikit::recurrence::{binet, binet_negative, gf_verify, piecewise_term, remark_identities, roots, term, verify_reduction};
use contikit::sample::DEFAULT_SEED;
use contikit::series::{binomial_sum, geometric_sum, telescoping_sum, zeta_series, ExactSumReport};
use contikit::{expand_sqrt, identity, reduce, Error, Execution, PrecisionContext, SeriesInput, Stop, TelescopingFamily, ZetaKind};

use input::SystemArgs;

#[derive(Parser, Debug)]
#[command(name = "contikit", version, about = "Continuants, periodic recurrences and their number theory")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,

    /// Maximum number of series terms.
    #[arg(long, global = true, default_value_t = 60)]
    terms: usize,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for range scans; 1 keeps everything sequential.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Continued fraction of √N.
    Expand {
        #[arg(long)]
        n: BigInt,
    },
    /// Solutions of x² − Ny² = 1.
    Pell {
        #[arg(long)]
        n: BigInt,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Reduce a system to B_{ν+2d} = C·B_{ν+d} + D·B_ν.
    Reduce {
        #[command(flatten)]
        system: SystemArgs,
        /// Largest index at which the reduction is checked.
        #[arg(long, default_value_t = 60)]
        bound: i64,
    },
    /// Evaluate B_{nd+r} through Binet's formula and compare with the recurrence.
    Binet {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        r: i64,
        /// Evaluate B_{-nd+r} instead.
        #[arg(long)]
        negative: bool,
    },
    /// Partial sums of a series against its closed form.
    Series(SeriesArgs),
    /// Verify an identity family or theorem on one system.
    Check(CheckArgs),
    /// Lucas-type pseudoprime test of one candidate or a range.
    Pseudoprime {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, conflicts_with_all = ["from", "to"], required_unless_present_any = ["from", "to"])]
        candidate: Option<u64>,
        #[arg(long, requires = "to")]
        from: Option<u64>,
        #[arg(long, requires = "from")]
        to: Option<u64>,
        /// In a range scan, print only composites that pass.
        #[arg(long)]
        pseudoprimes_only: bool,
    },
    /// Period of the sequence modulo a prime.
    Pisano {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        p: u64,
    },
    /// Run every acceptance check and print a pass/fail table.
    Paper {
        /// Number of random systems in the sweeps.
        #[arg(long, default_value_t = 100)]
        systems: usize,
    },
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// One of millin, period_reciprocal, pell_y, pell_x, pell_y2, period_square, arctan,
    /// artanh, pi_over_6, pi_over_8, ln3, ln2, geometric, binomial.
    #[arg(long)]
    family: String,
    /// Sum exactly this many terms instead of stopping at convergence.
    #[arg(long)]
    exact: Option<usize>,
    /// Point of the geometric sum, e.g. `1/3`.
    #[arg(long, allow_negative_numbers = true)]
    x: Option<BigRational>,
    /// Upper limit N of a finite sum.
    #[arg(long = "upper", default_value_t = 4)]
    upper: i64,
    /// Offset r of the geometric sum.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    r: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckKind {
    Identities,
    Reduction,
    GeneratingFunction,
    Remarks,
    Divisibility,
    StrongGcd,
    Congruence,
    Apparition,
    Repetition,
}

#[derive(Args, Debug)]
struct CheckArgs {
    kind: CheckKind,
    #[command(flatten)]
    system: SystemArgs,
    /// Index bound for sweeps and scans.
    #[arg(long, default_value_t = 8)]
    bound: i64,
    /// Prime modulus.
    #[arg(long)]
    p: Option<u64>,
    /// First multiplier, as in B_{md-1}.
    #[arg(long)]
    m: Option<u64>,
    /// Second multiplier, as in B_{nd-1}.
    #[arg(long)]
    n: Option<u64>,
    /// Power of p in the law of repetition.
    #[arg(long, default_value_t = 0)]
    f: u32,
    /// Offsets r checked by the congruence suite run from here...
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    r_from: i64,
    /// ...to here, inclusive.
    #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
    r_to: i64,
}

/// Exit status for a command that ran to completion.
enum Status {
    Verified,
    Failed,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Failed
        }
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        let line = if self.json {
            serde_json::to_string(value).expect("reports serialize")
        } else {
            text()
        };
        let mut out = std::io::stdout().lock();
        // A closed pipe is not an error worth reporting.
        let _ = writeln!(out, "{line}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Verified) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(Error::PrecisionExhausted { terms, abs_error }) => {
            eprintln!("contikit: not converged after {terms} terms (error {abs_error})");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("contikit: {e}");
            ExitCode::from(2)
        }
    }
}

fn need(value: Option<u64>, flag: &str) -> Result<u64, Error> {
    value.ok_or_else(|| Error::InvalidParameters(format!("--{flag} is required here")))
}

fn run(cli: &Cli) -> Result<Status, Error> {
    let out = Output { json: cli.json };
    match &cli.verb {
        Verb::Expand { n } => {
            let e = expand_sqrt(n)?;
            out.emit(&e, || e.to_string());
            Ok(Status::Verified)
        }
        Verb::Pell { n, count } => {
            let doc = pell_document(n, *count)?;
            out.emit(&doc, || {
                doc.solutions
                    .iter()
                    .map(|s| format!("x={} y={}", s.x, s.y))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            Ok(doc.solutions.iter().all(|s| s.satisfies(n)).into())
        }
        Verb::Reduce { system, bound } => {
            let sys = system.resolve()?;
            let reduced = reduce(&sys)?;
            let verified = verify_reduction(&sys, &reduced, *bound)?;
            let pair = roots(&reduced).ok();
            let doc = json!({
                "system": sys,
                "reduced": reduced,
                "alpha": pair.as_ref().map(|p| &p.0),
                "beta": pair.as_ref().map(|p| &p.1),
                "verified": verified,
            });
            out.emit(&doc, || {
                let mut s = format!("C = {}, D = {}, Delta = {}", reduced.c, reduced.d, reduced.delta);
                if let Some((a, b)) = &pair {
                    s += &format!("\nalpha = {a}\nbeta = {b}");
                }
                s + &format!("\nrecurrence checked to index {bound}: {}", if verified { "ok" } else { "MISMATCH" })
            });
            Ok(verified.into())
        }
        Verb::Binet { system, n, r, negative } => {
            let sys = system.resolve()?;
            let d = sys.period() as i64;
            let (index, formula, direct) = if *negative {
                (-n * d + r, binet_negative(&sys, *n, *r)?, piecewise_term(&sys, -n * d + r)?)
            } else {
                let v = BigRational::from_integer(binet(&sys, *n, *r)?);
                (n * d + r, v, BigRational::from_integer(term(&sys, n * d + r)?))
            };
            let agree = formula == direct;
            let doc = json!({
                "index": index,
                "binet": formula.to_string(),
                "recurrence": direct.to_string(),
                "agree": agree,
            });
            out.emit(&doc, || format!("B_{index} = {formula} (recurrence: {direct})"));
            Ok(agree.into())
        }
        Verb::Series(args) => series(cli, &out, args),
        Verb::Check(args) => check(&out, args),
        Verb::Pseudoprime { system, candidate, from, to, pseudoprimes_only } => {
            let sys = system.resolve()?;
            if let Some(n) = candidate {
                let v = lucas_pseudoprime_test(&sys, *n)?;
                out.emit(&v, || format!("n = {}: epsilon = {}, index = {}, {}", v.n, v.epsilon, v.index, v.verdict));
                return Ok(Status::Verified);
            }
            let (lo, hi) = (from.unwrap_or(3), to.unwrap_or(3));
            let verdicts = with_jobs(cli.jobs, |exec| pseudoprime_scan(&sys, lo..=hi, exec))?;
            for v in verdicts {
                let composite = u64::try_from(&v.n).is_ok_and(|n| n > 3 && !contikit::modular::is_prime(n));
                if *pseudoprimes_only && !(composite && v.verdict == contikit::divisibility::Verdict::ProbablePrime) {
                    continue;
                }
                out.emit(&v, || format!("{} {} {}", v.n, v.epsilon, v.verdict));
            }
            Ok(Status::Verified)
        }
        Verb::Pisano { system, p } => {
            let sys = system.resolve()?;
            let rep = pisano_period(&sys, *p)?;
            out.emit(&rep, || {
                format!("pi({}) = {} ({}), bound {}, divides: {}", rep.p, rep.period, rep.case_tag, rep.bound, rep.divides)
            });
            Ok(rep.divides.into())
        }
        Verb::Paper { systems } => {
            let config = AuditConfig {
                seed: cli.seed,
                systems: *systems,
                exec: Execution::Sequential,
            };
            let outcomes = with_jobs(cli.jobs, |exec| Ok(audit::run_all(&AuditConfig { exec, ..config })))?;
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let doc = json!({ "seed": cli.seed, "systems": systems, "criteria": outcomes });
            out.emit(&doc, || {
                let mut s = format!("seed {:#x}, {} random systems\n", cli.seed, systems);
                for o in &outcomes {
                    let mark = if o.passed { "PASS" } else { "FAIL" };
                    s += &format!("{mark} {:>2} {:<32} {}\n", o.id, o.topic, o.detail);
                }
                s + &format!("{passed}/{} passed", outcomes.len())
            });
            Ok((passed == outcomes.len()).into())
        }
    }
}

/// Runs `f` sequentially, or on a pool of `jobs` threads when that is available.
fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce(Execution) -> Result<T, Error> + Send) -> Result<T, Error> {
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
        return pool.install(|| f(Execution::Parallel));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    f(Execution::Sequential)
}

fn series(cli: &Cli, out: &Output, args: &SeriesArgs) -> Result<Status, Error> {
    let ctx = PrecisionContext::new(cli.digits, cli.terms)?;
    let stop = args.exact.map_or(Stop::Converge, Stop::Exactly);
    let finish = |converged: bool| -> Result<Status, Error> {
        Ok((converged || args.exact.is_some()).into())
    };
    if let Ok(family) = args.family.parse::<TelescopingFamily>() {
        let input = match &args.system.sqrt {
            Some(n) => SeriesInput::Sqrt(n.clone()),
            None => SeriesInput::System(args.system.resolve()?),
        };
        let rep = telescoping_sum(&input, family, &ctx, stop)?;
        out.emit(&rep, || series_text(&rep));
        return finish(rep.converged);
    }
    let sys = args.system.resolve()?;
    if let Ok(kind) = args.family.parse::<ZetaKind>() {
        let rep = zeta_series(&sys, kind, &ctx, stop)?;
        out.emit(&rep, || format!("zeta = {}\nquadratic: {}\n{}", rep.zeta, rep.quadratic, series_text(&rep.series)));
        return finish(rep.series.converged);
    }
    let rep = match args.family.as_str() {
        "geometric" => {
            let x = args.x.clone().ok_or_else(|| Error::InvalidParameters("--x is required for geometric".into()))?;
            geometric_sum(&sys, &x, args.upper, args.r)?
        }
        "binomial" => binomial_sum(&sys, args.upper)?,
        other => return Err(Error::Parse(format!("unknown series family {other:?}"))),
    };
    out.emit(&rep, || exact_text(&rep));
    Ok(rep.holds.into())
}

fn series_text(rep: &contikit::SeriesReport) -> String {
    format!(
        "{}: {} terms\npartial sum = {}\nclosed form = {} = {}\nerror = {}\nconverged: {}",
        rep.family, rep.terms, rep.partial, rep.closed_symbolic, rep.closed, rep.abs_error, rep.converged
    )
}

fn exact_text(rep: &ExactSumReport) -> String {
    format!("{}: {} = {} ({})", rep.kind, rep.lhs, rep.rhs, if rep.holds { "holds" } else { "FAILS" })
}

fn check(out: &Output, args: &CheckArgs) -> Result<Status, Error> {
    let sys = args.system.resolve()?;
    match args.kind {
        CheckKind::Identities => {
            let (checked, failures) = identity::sweep(&sys, args.bound)?;
            let doc = json!({ "checked": checked, "failures": failures });
            out.emit(&doc, || format!("{checked} identity instances checked, {} failed", failures.len()));
            Ok(failures.is_empty().into())
        }
        CheckKind::Reduction => {
            let reduced = reduce(&sys)?;
            let ok = verify_reduction(&sys, &reduced, args.bound)?;
            out.emit(&json!({ "reduced": reduced, "bound": args.bound, "holds": ok }), || {
                format!("C = {}, D = {} up to index {}: {}", reduced.c, reduced.d, args.bound, verdict(ok))
            });
            Ok(ok.into())
        }
        CheckKind::GeneratingFunction => {
            let rep = gf_verify(&sys, args.bound.max(2 * sys.period() as i64))?;
            out.emit(&rep, || {
                let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                format!("numerator [{}], product [{}]: {}", join(&rep.numerator), join(&rep.product), verdict(rep.matches))
            });
            Ok(rep.matches.into())
        }
        CheckKind::Remarks => {
            let rep = remark_identities(&sys, need(args.n, "n")? as i64)?;
            out.emit(&rep, || {
                format!(
                    "difference: {}\nsum vs squared form: {}\nsum vs linear form: {}",
                    verdict(rep.difference.holds),
                    verdict(rep.sum_squared_rhs.holds),
                    verdict(rep.sum_linear_rhs.holds)
                )
            });
            Ok((rep.difference.holds && (rep.sum_squared_rhs.holds || rep.sum_linear_rhs.holds)).into())
        }
        CheckKind::Divisibility => {
            let (m, n) = (need(args.m, "m")? as i64, need(args.n, "n")? as i64);
            let ok = divisibility_check(&sys, m, n)?;
            out.emit(&json!({ "m": m, "n": n, "holds": ok }), || format!("B_(md-1) | B_(nd-1) for m={m}, n={n}: {}", verdict(ok)));
            Ok(ok.into())
        }
        CheckKind::StrongGcd => {
            let (m, n) = (need(args.m, "m")? as i64, need(args.n, "n")? as i64);
            let ok = strong_gcd_check(&sys, m, n)?;
            out.emit(&json!({ "m": m, "n": n, "holds": ok }), || format!("gcd rule for m={m}, n={n}: {}", verdict(ok)));
            Ok(ok.into())
        }
        CheckKind::Congruence => {
            let rep = congruence_suite(&sys, need(args.p, "p")?, args.r_from..=args.r_to)?;
            out.emit(&rep, || {
                let mut s = format!("p = {} ({}), {} congruences", rep.p, rep.case_tag, rep.verified_congruences.len());
                for c in rep.failures() {
                    s += &format!("\nFAIL {}: {} vs {}", c.claim, c.lhs, c.rhs);
                }
                s
            });
            Ok(rep.all_pass().into())
        }
        CheckKind::Apparition => {
            let p = need(args.p, "p")?;
            let rep = rank_of_apparition(&sys, p, (args.bound.max(0) as u64).max(p + 1))?;
            out.emit(&rep, || {
                let omega = rep.omega.map_or("absent".to_string(), |w| w.to_string());
                let holds = rep.holds.map_or("not decided", verdict);
                format!("omega({}) = {omega}; clause {}: {holds}", rep.p, rep.clause)
            });
            Ok((rep.holds != Some(false)).into())
        }
        CheckKind::Repetition => {
            let rep = law_of_repetition_check(&sys, need(args.p, "p")?, need(args.n, "n")?, args.m.unwrap_or(1), args.f)?;
            out.emit(&rep, || {
                let exact = match rep.exact {
                    Some(true) => "exact",
                    Some(false) => "NOT exact",
                    None => "exactness not claimed",
                };
                format!(
                    "p={} at k={}: exponent {} vs e+f = {}+{}, {}",
                    rep.p,
                    rep.n * rep.m * rep.p.pow(rep.f),
                    rep.observed,
                    rep.e,
                    rep.f,
                    exact
                )
            });
            Ok(rep.holds().into())
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "FAILS"
    }
}
