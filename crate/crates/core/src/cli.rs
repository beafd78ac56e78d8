//! Command-line front end. Every number in a report comes from a library
//! call; this module only validates arguments and assembles JSON.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::base_curve::BaseCurveModel;
use crate::constructions::{
    build_bielliptic_g6, count_vanishing_g6, count_vanishing_generic_bielliptic,
    hyperelliptic_report,
};
use crate::error::Error;
use crate::etale::{etale_counts, EtaleCoverSpec};
use crate::gf2::Gf2Vector;
use crate::ramified::{self, counts};
use crate::report::{Check, Report, Timing};
use crate::verify::{self, ramified_cover};

/// Largest genus accepted by `count`.
pub const MAX_COUNT_GENUS: u64 = 46;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MODEL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "thetanull",
    version,
    about = "Invariant theta characteristics on double covers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Render a plain-text table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Also write the JSON report to FILE.
    #[arg(long = "json-out", value_name = "FILE", global = true)]
    pub json_out: Option<PathBuf>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Ramified,
    Etale,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Counts,
    Identities,
    Etale,
    Syzygetic,
    Oracle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    BiellipticG6,
    BiellipticGeneric,
    Hyperelliptic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form counts, enumerated when small enough.
    Count {
        #[arg(long = "case", value_enum)]
        case: Case,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        r: Option<u32>,
        /// Nonzero 2-torsion class for the étale case, as a bit string.
        #[arg(long)]
        rho: Option<String>,
        #[arg(long = "N", default_value_t = BaseCurveModel::DEFAULT_MODULUS)]
        modulus: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Enumeration and oracle suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long = "max-b")]
        max_b: Option<u32>,
        #[arg(long = "max-r")]
        max_r: Option<u32>,
        #[arg(long = "N", default_value_t = BaseCurveModel::DEFAULT_MODULUS)]
        modulus: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Concrete curves and their vanishing thetanulls.
    Construct {
        #[arg(value_enum)]
        target: Target,
        #[arg(long = "N", default_value_t = BaseCurveModel::DEFAULT_MODULUS)]
        modulus: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        g: Option<u32>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Model(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Model(_) => EXIT_MODEL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Model(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_model_error() {
            CliError::Model(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn parse_rho(text: &str, b: u32) -> CliResult<Gf2Vector> {
    let bits = text
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(usage(format!("--rho must be a bit string, got {text:?}"))),
        })
        .collect::<CliResult<Vec<bool>>>()?;
    if bits.len() != 2 * b as usize {
        return Err(usage(format!("--rho needs {} bits for b = {b}", 2 * b)));
    }
    Ok(Gf2Vector::from_bools(&bits)?)
}

fn count_ramified(b: u32, r: Option<u32>, modulus: u64, seed: u64) -> CliResult<Report> {
    let r = r.ok_or_else(|| usage("--r is required for --case ramified"))?;
    if r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    let g = counts::genus(b, r);
    if g > MAX_COUNT_GENUS {
        return Err(usage(format!(
            "genus {g} exceeds the supported maximum {MAX_COUNT_GENUS}"
        )));
    }
    let mut report = Report::new(
        "count",
        json!({"case": "ramified", "b": s(b), "r": s(r), "N": s(modulus), "seed": s(seed)}),
    );
    let (total, even, odd) = (
        counts::total(b, r)?,
        counts::count_even(b, r)?,
        counts::count_odd(b, r)?,
    );
    let lb = counts::count_vanishing_lb(b, r)?;
    let ratio = counts::asymptotic_ratio(b, r)?;

    let enumerable = g - b as u64 <= verify::MAX_ENUMERATED_SPAN as u64 && r <= ramified::MAX_R;
    let (enumerated, model) = if enumerable {
        let spec = ramified_cover(b, r, modulus, seed)?;
        let summary = ramified::summarize(&spec)?;
        report.checks.extend([
            Check::equal("enumerated total", &total, summary.total),
            Check::equal("enumerated even", &even, summary.even),
            Check::equal("enumerated odd", &odd, summary.odd),
            Check::equal("enumerated even with #E<r", &lb, summary.even_below_r),
        ]);
        let enumerated = json!({
            "total": s(summary.total),
            "even": s(summary.even),
            "odd": s(summary.odd),
            "even_below_r": s(summary.even_below_r),
            "vanishing": s(summary.vanishing),
            "vanishing_is_lower_bound": summary.vanishing_is_lower_bound,
        });
        let mut model = json!({"kind": spec.model().kind(), "genus": s(spec.model().genus())});
        if let BaseCurveModel::Elliptic { modulus } = spec.model() {
            model["N"] = s(modulus);
            model["seed"] = s(seed);
        }
        (enumerated, model)
    } else {
        (Value::Null, Value::Null)
    };

    report.results = json!({
        "b": s(b),
        "r": s(r),
        "g": s(g),
        "total": s(total),
        "even": s(even),
        "odd": s(odd),
        "vanishing_lb": s(&lb),
        "asymptotic_ratio": {
            "exact": s(&ratio),
            "decimal": ratio.to_f64(),
        },
        "enumerated": enumerated,
        "model": model,
    });
    Ok(report)
}

fn count_etale(b: u32, rho: Option<&str>) -> CliResult<Report> {
    let closed = etale_counts(b)?;
    let spec = match rho {
        Some(text) => EtaleCoverSpec::new(b, parse_rho(text, b)?)?,
        None => EtaleCoverSpec::standard(b)?,
    };
    let mut report = Report::new(
        "count",
        json!({"case": "etale", "b": s(b), "rho": s(spec.rho())}),
    );
    let enumerated = if b <= verify::MAX_ETALE_B {
        let t = verify::etale_tally(&spec)?;
        report.checks.extend([
            Check::equal("enumerated total", closed.total, t.total),
            Check::equal("enumerated even", closed.even, t.even),
            Check::equal("enumerated odd", closed.odd, t.odd),
            Check::equal(
                "enumerated T",
                closed.vanishing_set_size,
                t.vanishing_set_size,
            ),
        ]);
        json!({
            "total": s(t.total),
            "even": s(t.even),
            "odd": s(t.odd),
            "T_size": s(t.vanishing_set_size),
        })
    } else {
        Value::Null
    };
    let syzygetic = if b <= verify::MAX_SYZYGETIC_B {
        let sz = verify::syzygetic_summary(&spec)?;
        let ok = sz.odd_triples == 0 && sz.outside_subspace == 0 && sz.odd_in_subspace == 0;
        report
            .checks
            .push(Check::equal("odd triples in T", 0, sz.odd_triples));
        Value::Bool(ok)
    } else {
        Value::Null
    };
    report.results = json!({
        "b": s(b),
        "g": s(spec.genus()),
        "total": s(closed.total),
        "even": s(closed.even),
        "odd": s(closed.odd),
        "T_size": s(closed.vanishing_set_size),
        "subspace_dim": s(closed.subspace_dim),
        "syzygetic_ok": syzygetic,
        "enumerated": enumerated,
    });
    Ok(report)
}

fn run_verify(
    suite: Suite,
    max_b: Option<u32>,
    max_r: Option<u32>,
    modulus: u64,
    seed: u64,
) -> CliResult<Report> {
    let (checks, params) = match suite {
        Suite::Counts => {
            let (b, r) = (max_b.unwrap_or(3), max_r.unwrap_or(6));
            (
                verify::counts_suite(b, r, modulus, seed)?,
                json!({"max_b": s(b), "max_r": s(r), "N": s(modulus), "seed": s(seed)}),
            )
        }
        Suite::Identities => {
            let r = max_r.unwrap_or(30);
            (verify::identities_suite(r)?, json!({"max_r": s(r)}))
        }
        Suite::Etale => {
            let b = max_b.unwrap_or(6);
            (verify::etale_suite(b)?, json!({"max_b": s(b)}))
        }
        Suite::Syzygetic => {
            let b = max_b.unwrap_or(5);
            (verify::syzygetic_suite(b)?, json!({"max_b": s(b)}))
        }
        Suite::Oracle => {
            let b = max_b.unwrap_or(verify::MAX_ORACLE_HALF_DIM);
            (
                verify::oracle_suite(b, seed)?,
                json!({"max_b": s(b), "seed": s(seed)}),
            )
        }
    };
    let name = suite
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let mut params = params;
    params["suite"] = s(&name);
    let mut report = Report::new("verify", params);
    let passed = checks.iter().filter(|c| c.pass).count();
    report.results = json!({"checks_run": s(checks.len()), "checks_passed": s(passed)});
    report.checks = checks;
    Ok(report)
}

fn construct_g6(modulus: u64, seed: u64) -> CliResult<Report> {
    let config = build_bielliptic_g6(modulus, seed)?;
    let cert = count_vanishing_g6(&config)?;
    let mut report = Report::new(
        "construct",
        json!({"target": "bielliptic-g6", "N": s(modulus), "seed": s(seed)}),
    );
    for (name, ok) in config.check_invariants()? {
        report.checks.push(Check::holds(
            name,
            ok,
            "holds",
            if ok { "holds" } else { "fails" },
        ));
    }
    report
        .checks
        .push(Check::equal("vanishing with #E<r", 40, cert.generic.len()));
    report.checks.push(Check::holds(
        "count >= 43",
        cert.count >= 43,
        ">= 43",
        cert.count,
    ));
    for f in &cert.forced_extras {
        report.checks.push(Check::holds(
            format!("extra A{}+A{}+p with h0 = 2", f.pair[0], f.pair[1]),
            f.present,
            "present",
            if f.present { "present" } else { "missing" },
        ));
    }
    report.results = json!({
        "count": s(cert.count),
        "accidental_extras": s(cert.accidental_extras()),
        "config": to_value(&config),
        "certificate": to_value(&cert),
    });
    Ok(report)
}

fn construct_generic(modulus: u64, seed: u64, g: u32) -> CliResult<Report> {
    let c = count_vanishing_generic_bielliptic(g, modulus, seed)?;
    let mut report = Report::new(
        "construct",
        json!({"target": "bielliptic-generic", "N": s(modulus), "seed": s(seed), "g": s(g)}),
    );
    let lb = c.lower_bound.clone();
    report.checks.push(Check::holds(
        "count >= lower bound",
        num_bigint::BigUint::from(c.count) >= lb,
        format!(">= {lb}"),
        c.count,
    ));
    report.results = json!({
        "g": s(c.genus),
        "r": s(c.r),
        "count": s(c.count),
        "lower_bound": s(&c.lower_bound),
    });
    Ok(report)
}

fn construct_hyperelliptic(g: u32) -> CliResult<Report> {
    let rep = hyperelliptic_report(g)?;
    let mut report = Report::new("construct", json!({"target": "hyperelliptic", "g": s(g)}));
    let enumerated = match &rep.enumerated {
        Some(e) => {
            report.checks.extend([
                Check::equal("enumerated even", &rep.even, e.even),
                Check::equal("enumerated odd", &rep.odd, e.odd),
                Check::equal("enumerated vanishing", &rep.vanishing, e.vanishing),
            ]);
            json!({"even": s(e.even), "odd": s(e.odd), "vanishing": s(e.vanishing)})
        }
        None => Value::Null,
    };
    report.results = json!({
        "g": s(rep.genus),
        "r": s(rep.r),
        "even": s(&rep.even),
        "odd": s(&rep.odd),
        "vanishing": s(&rep.vanishing),
        "enumerated": enumerated,
    });
    Ok(report)
}

fn to_value(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("library types serialize to plain JSON")
}

/// Runs one command and returns its report (without timing).
pub fn execute(command: &Command) -> CliResult<Report> {
    match command {
        Command::Count {
            case: Case::Ramified,
            b,
            r,
            rho,
            modulus,
            seed,
        } => {
            if rho.is_some() {
                return Err(usage("--rho only applies to --case etale"));
            }
            count_ramified(*b, *r, *modulus, *seed)
        }
        Command::Count {
            case: Case::Etale,
            b,
            r,
            rho,
            ..
        } => {
            if r.is_some() {
                return Err(usage("--r does not apply to --case etale"));
            }
            count_etale(*b, rho.as_deref())
        }
        Command::Verify {
            suite,
            max_b,
            max_r,
            modulus,
            seed,
        } => run_verify(*suite, *max_b, *max_r, *modulus, *seed),
        Command::Construct {
            target: Target::BiellipticG6,
            modulus,
            seed,
            g,
        } => {
            if g.is_some_and(|g| g != 6) {
                return Err(usage("bielliptic-g6 has genus 6"));
            }
            construct_g6(*modulus, *seed)
        }
        Command::Construct {
            target: Target::BiellipticGeneric,
            modulus,
            seed,
            g,
        } => construct_generic(*modulus, *seed, g.unwrap_or(6)),
        Command::Construct {
            target: Target::Hyperelliptic,
            g,
            ..
        } => construct_hyperelliptic(g.ok_or_else(|| usage("--g is required for hyperelliptic"))?),
    }
}

/// Runs the parsed command line, prints the report and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let start = Instant::now();
    let result = match cli.threads {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(usage(format!("cannot start thread pool: {e}"))),
        },
        None => execute(&cli.command),
    };
    let mut report = match result {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    if cli.timing {
        report.timing = Some(Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    let json = report.to_json();
    if let Some(path) = &cli.json_out {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if cli.pretty {
        print!("{}", report.to_table());
    } else {
        println!("{json}");
    }
    if report.passed() {
        EXIT_OK
    } else {
        for c in report.failures() {
            eprintln!(
                "check failed: {} (expected {}, actual {})",
                c.name, c.expected, c.actual
            );
        }
        EXIT_CHECK_FAILED
    }
}
