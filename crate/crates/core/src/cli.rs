//! Command-line front end. [`run`] takes the argument list and output sinks so
//! it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::chartable::CharacterTable;
use crate::classes::ClassData;
use crate::cyclotomic::{parse_cyc, render_rational, Rational};
use crate::error::Error;
use crate::group::{PermGroup, DEFAULT_ELEMENT_CAP};
use crate::miller::{self, approx4, AuditOptions};

/// Generators of the perfect group of order 69120 (second in the library
/// numbering), acting on 402 points.
pub const COUNTEREXAMPLE_FIXTURE: &str = include_str!("../fixtures/perfect_69120_2.grp");

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "charaudit", version, about = "Exact character tables and value audits for permutation groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the character table of a group file.
    Table {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest group order to enumerate.
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
        /// Override the working prime (testing only).
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Compute the table and audit every character.
    Miller {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        no_siegel: bool,
        #[arg(long)]
        no_cassels: bool,
    },
    /// Check the order-69120 counterexample from the built-in generators.
    ReproduceCounterexample {
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Average traces of 4cos²(2π/p) for odd primes 5 <= p <= max-p.
    TraceSequence {
        #[arg(long = "max-p")]
        max_p: u64,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GroupTooLarge { .. } => EXIT_CAP,
        Error::MalformedCycle { .. }
        | Error::PointOutOfRange { .. }
        | Error::DuplicatePoint { .. }
        | Error::MalformedGroupFile { .. }
        | Error::InvalidPrime(..)
        | Error::Io(_) => EXIT_INPUT,
        _ => EXIT_ASSERTION,
    }
}

/// Parses, enumerates and tabulates a group.
pub fn compute_table(text: &str, cap: usize, prime: Option<u64>) -> Result<CharacterTable, Error> {
    let g = PermGroup::parse(text)?.enumerate(cap)?;
    let classes = ClassData::compute(&g);
    CharacterTable::compute(&g, &classes, prime)
}

/// One line of the reproduction summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

const CHECK_NAMES: [&str; 6] = [
    "order",
    "perfect",
    "degree-12 orbit",
    "lambda",
    "no roots of unity",
    "siegel equality",
];

/// The six facts about the order-69120 group. Facts that cannot be
/// evaluated because an earlier stage failed are reported as failures.
pub fn reproduce(group: &PermGroup, prime: Option<u64>) -> Vec<Check> {
    let mut checks = Vec::new();
    let order = group.order();
    checks.push(Check::new(CHECK_NAMES[0], order == 69120u32.into(), format!("|G| = {order}")));
    let perfect = group.is_perfect();
    checks.push(Check::new(CHECK_NAMES[1], perfect, format!("G = [G, G] is {perfect}")));

    let table = group
        .enumerate(DEFAULT_ELEMENT_CAP)
        .and_then(|g| CharacterTable::compute(&g, &ClassData::compute(&g), prime));
    let table = match table {
        Ok(t) => t,
        Err(e) => {
            for name in &CHECK_NAMES[2..] {
                checks.push(Check::new(name, false, format!("table unavailable: {e}")));
            }
            return checks;
        }
    };
    let rows: Vec<usize> = (0..table.values.len()).filter(|&r| table.degrees[r] == 12).collect();

    let orbit_check = match table.galois_orbits() {
        Ok(orbits) => {
            let ids: std::collections::BTreeSet<usize> = rows.iter().map(|&r| orbits[r]).collect();
            let orbit_size = ids
                .iter()
                .next()
                .map_or(0, |&id| orbits.iter().filter(|&&o| o == id).count());
            let ok = rows.len() == 8 && ids.len() == 1 && orbit_size == 8;
            Check::new(
                CHECK_NAMES[2],
                ok,
                format!("{} characters of degree 12 in {} Galois orbit(s)", rows.len(), ids.len()),
            )
        }
        Err(e) => Check::new(CHECK_NAMES[2], false, e.to_string()),
    };
    checks.push(orbit_check);

    let target = Rational::new(511.into(), 1152.into());
    let lambdas: Vec<Rational> = rows
        .iter()
        .map(|&r| miller::miller_ratio(&table, r).lambda_mod)
        .collect();
    let all_match = !lambdas.is_empty() && lambdas.iter().all(|l| *l == target);
    let shown: std::collections::BTreeSet<String> = lambdas.iter().map(render_rational).collect();
    checks.push(Check::new(
        CHECK_NAMES[3],
        all_match,
        format!(
            "lambda = {} (~{})",
            shown.into_iter().collect::<Vec<_>>().join(", "),
            approx4(&target)
        ),
    ));

    let rou: usize = rows
        .iter()
        .map(|&r| miller::root_of_unity_scan(&table, r).len())
        .sum();
    checks.push(Check::new(
        CHECK_NAMES[4],
        !rows.is_empty() && rou == 0,
        format!("{rou} classes with a root-of-unity value"),
    ));

    let golden = parse_cyc("z(5) + z(5)^4", table.conductor).ok();
    let witness = golden.and_then(|gv| {
        rows.iter().find_map(|&r| {
            table.values[r].iter().enumerate().find_map(|(m, v)| {
                (*v == gv && v.abs_squared().avg_trace() == Rational::new(3.into(), 2.into()))
                    .then_some((r, m))
            })
        })
    });
    checks.push(match witness {
        Some((r, m)) => Check::new(
            CHECK_NAMES[5],
            true,
            format!("chi {r} class {m}: value z(5) + z(5)^4, average trace of |x|^2 = 3/2"),
        ),
        None => Check::new(CHECK_NAMES[5], false, "no degree-12 value equals z(5) + z(5)^4"),
    });
    checks
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Table {
            file,
            out: path,
            cap,
            prime,
        } => {
            let text = std::fs::read_to_string(&file)?;
            let table = compute_table(&text, cap as usize, prime)?;
            emit(out, path.as_ref(), &table.to_text())?;
            Ok(EXIT_OK)
        }
        Command::Miller {
            file,
            out: path,
            cap,
            prime,
            no_siegel,
            no_cassels,
        } => {
            let text = std::fs::read_to_string(&file)?;
            let table = compute_table(&text, cap as usize, prime)?;
            let opts = AuditOptions {
                siegel: !no_siegel,
                cassels: !no_cassels,
            };
            let report = miller::audit_table(&table, opts)?;
            emit(out, path.as_ref(), &report.to_text())?;
            Ok(EXIT_OK)
        }
        Command::ReproduceCounterexample { prime } => {
            let group = PermGroup::parse(COUNTEREXAMPLE_FIXTURE)?;
            let checks = reproduce(&group, prime);
            for c in &checks {
                writeln!(out, "{}", c.line())?;
            }
            Ok(if checks.iter().all(|c| c.passed) {
                EXIT_OK
            } else {
                EXIT_ASSERTION
            })
        }
        Command::TraceSequence { max_p } => {
            let primes: Vec<u64> = (5..=max_p).filter(|&p| crate::arith::is_prime(p)).collect();
            for (p, tr) in miller::lambda_sequence(&primes)? {
                writeln!(out, "{p} {} {}", render_rational(&tr), approx4(&tr))?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the tool; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    if let Command::TraceSequence { max_p } = cli.command {
        if max_p < 5 {
            let _ = writeln!(err, "error: --max-p must be at least 5");
            return EXIT_INPUT;
        }
    }
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
