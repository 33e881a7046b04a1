//! Command-line front end. Commands: psi, pi, table, verify suites,
//! witness, lfunc. Exit codes: 0 pass, 1 verification failure, 2 usage
//! error, 3 budget refusal. The brute-force budget (default q^n <= 2^26)
//! can be overridden with --budget, the FFPC_BUDGET environment
//! variable, or bypassed entirely with --force.

use std::path::PathBuf;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::characters::{Character, DEFAULT_GROUP_BUDGET};
use crate::coset::CosetClass;
use crate::counting::{
    run_suite, select_tuples, witness_nonperiodicity, Engine, SuiteOptions, TupleChoice,
    DEFAULT_SWEEP_MAX,
};
use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::poly::{brute_pi, brute_psi, DEFAULT_BRUTE_BUDGET};
use crate::report::{self, CheckEntry, CountReport, JobSpec};

#[derive(Parser, Debug)]
#[command(
    name = "ffpc",
    version,
    about = "Exact counts of monic irreducible polynomials over finite fields \
             with prescribed next-to-leading coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Prime-power-weighted count psi(n, t), by character formula and/or
    /// brute-force enumeration
    Psi(CountArgs),
    /// Irreducible count pi(n, t), by Möbius inversion and/or brute force
    Pi(CountArgs),
    /// CSV table of psi and pi over a degree range and tuple grid
    Table(TableArgs),
    /// Run a verification suite: period, symmetry, sym2, roots24,
    /// roots60, fomenko, cubicform, legendre, zeta
    Verify(VerifyArgs),
    /// Construct the explicit non-periodicity witness character
    Witness(WitnessArgs),
    /// Exact L-function report for a single character
    Lfunc(LfuncArgs),
}

#[derive(Args, Debug)]
struct CommonOut {
    /// Output format: text, json or csv
    #[arg(long, default_value = "text")]
    format: String,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for deterministic sampling (echoed in the report)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// Field spec "p^r" or "p^r:m" with m the modulus encoding
    #[arg(long)]
    field: String,
    /// Number of prescribed next-to-leading coefficients
    #[arg(long)]
    ell: Option<u32>,
    /// Degree n, or an inclusive range "a..b"
    #[arg(long)]
    n: String,
    /// Coefficient tuple "t1,t2,..." or "all" or "sample:k"
    #[arg(long, default_value = "")]
    t: String,
    /// formula, brute, or both (both asserts equality)
    #[arg(long, default_value = "both")]
    method: String,
    #[command(flatten)]
    output: CommonOut,
    /// Bypass the brute-force budget
    #[arg(long)]
    force: bool,
    /// Brute-force budget on q^n (default 2^26, or FFPC_BUDGET)
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    ell: u32,
    /// Degree n, or an inclusive range "a..b"
    #[arg(long)]
    n: String,
    /// "all", "sample:k", or an explicit tuple
    #[arg(long, default_value = "all")]
    t: String,
    #[command(flatten)]
    output: CommonOut,
    #[arg(long)]
    force: bool,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// period | symmetry | sym2 | roots24 | roots60 | fomenko |
    /// cubicform | legendre | zeta
    suite: String,
    #[arg(long)]
    field: String,
    /// Level for the zeta suite (default 3)
    #[arg(long)]
    ell: Option<u32>,
    /// Verification horizon in the degree n
    #[arg(long)]
    nmax: Option<u32>,
    /// Tuple selection for period/symmetry: all, sample:k, or a tuple
    #[arg(long, default_value = "auto")]
    t: String,
    /// Character selection for roots suites: all or sample:k
    #[arg(long, default_value = "auto")]
    chars: String,
    /// Scaling factors for the symmetry suite, comma separated
    #[arg(long)]
    lambdas: Option<String>,
    #[command(flatten)]
    output: CommonOut,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    /// Characteristic
    #[arg(long)]
    p: u64,
    /// Level (the witness is built at the smallest non-periodic level)
    #[arg(long)]
    ell: u32,
    /// Sweep bound for even root-of-unity orders
    #[arg(long, default_value_t = DEFAULT_SWEEP_MAX)]
    sweepmax: u64,
    #[command(flatten)]
    output: CommonOut,
}

#[derive(Args, Debug)]
struct LfuncArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    ell: u32,
    /// Character index in enumeration order
    #[arg(long)]
    index: Option<u64>,
    /// Lambda vector "l1,l2,..." (requires p > ell)
    #[arg(long)]
    lambdas: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SWEEP_MAX)]
    sweepmax: u64,
    #[command(flatten)]
    output: CommonOut,
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(Outcome { output, pass, out_path }) => {
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, &output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{output}");
            }
            if pass {
                0
            } else {
                1
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::BudgetExceeded { .. } => 3,
                _ => 2,
            }
        }
    }
}

struct Outcome {
    output: String,
    pass: bool,
    out_path: Option<PathBuf>,
}

fn resolve_budget(explicit: Option<u64>, force: bool) -> u64 {
    if force {
        return u64::MAX;
    }
    if let Some(b) = explicit {
        return b;
    }
    if let Ok(v) = std::env::var("FFPC_BUDGET") {
        if let Ok(b) = v.parse() {
            return b;
        }
    }
    DEFAULT_BRUTE_BUDGET
}

fn parse_degrees(spec: &str) -> Result<Vec<u32>> {
    if let Some((a, b)) = spec.split_once("..") {
        let a: u32 = a
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree range '{spec}'")))?;
        let b: u32 = b
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree range '{spec}'")))?;
        if a == 0 || b < a {
            return Err(Error::Parse(format!("bad degree range '{spec}'")));
        }
        Ok((a..=b).collect())
    } else {
        let n: u32 = spec
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree '{spec}'")))?;
        if n == 0 {
            return Err(Error::Parse("degree must be >= 1".into()));
        }
        Ok(vec![n])
    }
}

/// Tuple selection: explicit tuple, "all", "sample:k", or "auto"
/// (all when the grid is small, otherwise 64 seeded samples).
fn parse_tuple_choice(spec: &str, field: &FieldDesc, level: u32) -> Result<TupleChoice> {
    let count = field.q().pow(level);
    match spec {
        "all" => Ok(TupleChoice::All),
        "auto" => {
            if count <= 512 {
                Ok(TupleChoice::All)
            } else {
                Ok(TupleChoice::Sample(64))
            }
        }
        _ => {
            if let Some(k) = spec.strip_prefix("sample:") {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad sample count '{spec}'")))?;
                Ok(TupleChoice::Sample(k))
            } else {
                let t = CosetClass::parse(field, spec)?;
                if t.level() != level {
                    return Err(Error::Parse(format!(
                        "tuple '{spec}' has {} entries, expected {level}",
                        t.level()
                    )));
                }
                Ok(TupleChoice::One(t.index(field)))
            }
        }
    }
}

/// Resolve the level from --ell and --t together.
fn resolve_level(ell: Option<u32>, t: &str) -> Result<u32> {
    match ell {
        Some(l) => Ok(l),
        None => {
            if t.is_empty() {
                Ok(0)
            } else if t == "all" || t.starts_with("sample:") {
                Err(Error::Parse(
                    "--ell is required when --t is 'all' or 'sample:k'".into(),
                ))
            } else {
                Ok(t.split(',').count() as u32)
            }
        }
    }
}

fn count_one(
    engine: &mut Option<Engine>,
    field: &Arc<FieldDesc>,
    kind: &str,
    n: u32,
    t: &CosetClass,
    method: &str,
    budget: u64,
) -> Result<CountReport> {
    let formula_value = |engine: &mut Option<Engine>| -> Result<num_bigint::BigInt> {
        // the character engine is only built when a formula is requested,
        // so pure brute-force queries work at any level
        if engine.is_none() {
            *engine = Some(Engine::new(field, t.level(), DEFAULT_GROUP_BUDGET)?);
        }
        let engine = engine.as_mut().unwrap();
        match kind {
            "psi" => engine.psi_exact(n, t),
            _ => engine.pi_mobius(n, t),
        }
    };
    let brute_value = || -> Result<num_bigint::BigInt> {
        let v = match kind {
            "psi" => brute_psi(field, n, t, budget)?,
            _ => brute_pi(field, n, t, budget)?,
        };
        Ok(num_bigint::BigInt::from(v))
    };
    let mut checks = Vec::new();
    let value = match method {
        "formula" => formula_value(engine)?,
        "brute" => brute_value()?,
        "both" => {
            let f = formula_value(engine)?;
            let b = brute_value()?;
            assert_eq!(f, b, "formula and brute force disagree: internal error");
            checks.push(CheckEntry {
                name: "formula=brute".into(),
                pass: true,
            });
            f
        }
        other => return Err(Error::Parse(format!("unknown method '{other}'"))),
    };
    Ok(CountReport {
        field: field.spec_string(),
        p: field.p(),
        r: field.r(),
        n,
        ell: t.level(),
        t: t.display(),
        kind: kind.into(),
        value: report::big_to_string(&value),
        method: method.into(),
        checks,
    })
}

fn run_count(kind: &str, args: &CountArgs) -> Result<Outcome> {
    let field = FieldDesc::parse_spec(&args.field)?;
    let level = resolve_level(args.ell, &args.t)?;
    let choice = if args.t.is_empty() {
        TupleChoice::One(0)
    } else {
        parse_tuple_choice(&args.t, &field, level)?
    };
    let budget = resolve_budget(args.budget, args.force);
    let degrees = parse_degrees(&args.n)?;

    let mut jobspec = JobSpec::new(kind, &args.output.format, args.output.seed);
    jobspec.field = Some(field.spec_string());
    jobspec.ell = Some(level);
    jobspec.n = Some(args.n.clone());
    jobspec.t = Some(if args.t.is_empty() {
        String::new()
    } else {
        args.t.clone()
    });
    jobspec.method = Some(args.method.clone());
    jobspec.budget = Some(budget);

    let mut engine: Option<Engine> = None;
    let tuples = select_tuples(field.q().pow(level), &choice, args.output.seed);
    let mut results = Vec::new();
    for &n in &degrees {
        for &t_idx in &tuples {
            let t = CosetClass::from_index(&field, level, t_idx);
            results.push(count_one(
                &mut engine,
                &field,
                kind,
                n,
                &t,
                &args.method,
                budget,
            )?);
        }
    }
    let output = match args.output.format.as_str() {
        "json" => report::counts_to_json(&jobspec, &results),
        "csv" => report::counts_to_csv(&jobspec, &results),
        "text" => report::counts_to_text(&jobspec, &results),
        other => return Err(Error::Parse(format!("unknown format '{other}'"))),
    };
    Ok(Outcome {
        output,
        pass: true,
        out_path: args.output.out.clone(),
    })
}

fn run_table(args: &TableArgs) -> Result<Outcome> {
    let field = FieldDesc::parse_spec(&args.field)?;
    let level = args.ell;
    let choice = parse_tuple_choice(&args.t, &field, level)?;
    let budget = resolve_budget(args.budget, args.force);
    let degrees = parse_degrees(&args.n)?;

    let mut jobspec = JobSpec::new("table", &args.output.format, args.output.seed);
    jobspec.field = Some(field.spec_string());
    jobspec.ell = Some(level);
    jobspec.n = Some(args.n.clone());
    jobspec.t = Some(args.t.clone());
    jobspec.budget = Some(budget);

    let mut engine: Option<Engine> = None;
    let tuples = select_tuples(field.q().pow(level), &choice, args.output.seed);
    let mut rows = Vec::new();
    for &n in &degrees {
        for &t_idx in &tuples {
            let t = CosetClass::from_index(&field, level, t_idx);
            let psi = count_one(&mut engine, &field, "psi", n, &t, "formula", budget)?;
            let pi = count_one(&mut engine, &field, "pi", n, &t, "formula", budget)?;
            rows.push((psi, pi));
        }
    }
    let output = match args.output.format.as_str() {
        "csv" | "text" => report::table_to_csv(&jobspec, &rows),
        "json" => {
            let flat: Vec<CountReport> = rows
                .into_iter()
                .flat_map(|(a, b)| [a, b])
                .collect();
            report::counts_to_json(&jobspec, &flat)
        }
        other => return Err(Error::Parse(format!("unknown format '{other}'"))),
    };
    Ok(Outcome {
        output,
        pass: true,
        out_path: args.output.out.clone(),
    })
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome> {
    let field = FieldDesc::parse_spec(&args.field)?;
    let seed = args.output.seed;

    let mut jobspec = JobSpec::new("verify", &args.output.format, seed);
    jobspec.suite = Some(args.suite.clone());
    jobspec.field = Some(field.spec_string());
    jobspec.t = Some(args.t.clone());
    jobspec.n_max = args.nmax;
    jobspec.ell = args.ell;
    jobspec.lambdas = args.lambdas.clone();

    let lambdas: Option<Vec<u64>> = match &args.lambdas {
        Some(s) => Some(
            s.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad lambda list '{s}'")))
                })
                .collect::<Result<_>>()?,
        ),
        None => None,
    };
    let tuples = if args.t == "auto" {
        None
    } else {
        Some(parse_tuple_choice(&args.t, &field, 3)?)
    };
    let chars = match args.chars.as_str() {
        "auto" => None,
        "all" => Some(TupleChoice::All),
        other => {
            if let Some(k) = other.strip_prefix("sample:") {
                Some(TupleChoice::Sample(k.parse().map_err(|_| {
                    Error::Parse(format!("bad char selection '{other}'"))
                })?))
            } else {
                return Err(Error::Parse(format!("bad char selection '{other}'")));
            }
        }
    };
    let opts = SuiteOptions {
        n_max: args.nmax,
        level: args.ell,
        tuples,
        chars,
        lambdas,
        seed,
        budget: args.budget,
    };
    let tables = run_suite(&field, &args.suite, &opts)?;
    let pass = tables.iter().all(|t| t.all_pass());
    let output = match args.output.format.as_str() {
        "json" => report::verdicts_to_json(&jobspec, &tables),
        "text" => report::verdicts_to_text(&jobspec, &tables),
        other => return Err(Error::Parse(format!("unknown format '{other}'"))),
    };
    Ok(Outcome {
        output,
        pass,
        out_path: args.output.out.clone(),
    })
}

fn run_witness(args: &WitnessArgs) -> Result<Outcome> {
    let mut jobspec = JobSpec::new("witness", &args.output.format, args.output.seed);
    jobspec.p = Some(args.p);
    jobspec.ell = Some(args.ell);
    jobspec.sweep_max = Some(args.sweepmax);
    let witness = witness_nonperiodicity(args.p, args.ell, args.sweepmax)?;
    let output = match args.output.format.as_str() {
        "json" => report::witness_to_json(&jobspec, &witness),
        "text" => report::witness_to_text(&jobspec, &witness),
        other => return Err(Error::Parse(format!("unknown format '{other}'"))),
    };
    // the witness certifies non-periodicity: pass means the sweep found
    // no unity order and (when applicable) the closed forms matched
    let pass = witness.minimal_unity_order.is_none()
        && witness.coefficients_match_closed_form != Some(false);
    Ok(Outcome {
        output,
        pass,
        out_path: args.output.out.clone(),
    })
}

fn run_lfunc(args: &LfuncArgs) -> Result<Outcome> {
    let field = FieldDesc::parse_spec(&args.field)?;
    let level = args.ell;
    let group = crate::characters::ClassGroup::new(&field, level, DEFAULT_GROUP_BUDGET)?;

    let chi = match (&args.index, &args.lambdas) {
        (Some(idx), None) => Character::from_index(&group, *idx)?,
        (None, Some(ls)) => {
            let entries: Vec<u64> = ls
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad lambda vector '{ls}'")))
                })
                .collect::<Result<_>>()?;
            let lambdas: Vec<crate::field::FieldElement> = entries
                .iter()
                .map(|&e| field.el(e))
                .collect::<Result<_>>()?;
            crate::characters::character_from_lambdas(&group, &lambdas)?
        }
        _ => {
            return Err(Error::Parse(
                "exactly one of --index or --lambdas must be given".into(),
            ))
        }
    };

    let mut jobspec = JobSpec::new("lfunc", &args.output.format, args.output.seed);
    jobspec.field = Some(field.spec_string());
    jobspec.ell = Some(level);
    jobspec.index = Some(chi.index());
    jobspec.sweep_max = Some(args.sweepmax);
    if let Some(ls) = &args.lambdas {
        jobspec.lambdas = Some(ls.clone());
    }

    let rep = report::build_character_report(&chi, args.sweepmax)?;

    let output = match args.output.format.as_str() {
        "json" => report::character_to_json(&jobspec, &rep),
        "text" => report::character_to_text(&jobspec, &rep),
        other => return Err(Error::Parse(format!("unknown format '{other}'"))),
    };
    Ok(Outcome {
        output,
        pass: true,
        out_path: args.output.out.clone(),
    })
}

fn execute(cli: Cli) -> Result<Outcome> {
    match &cli.command {
        Cmd::Psi(args) => run_count("psi", args),
        Cmd::Pi(args) => run_count("pi", args),
        Cmd::Table(args) => run_table(args),
        Cmd::Verify(args) => run_verify(args),
        Cmd::Witness(args) => run_witness(args),
        Cmd::Lfunc(args) => run_lfunc(args),
    }
}
