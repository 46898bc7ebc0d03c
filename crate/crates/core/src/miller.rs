//! Audits of character values: Miller's λ statistic, Siegel's trace bound
//! for totally positive integers, and Cassels's two-roots dichotomy.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::is_prime;
use crate::chartable::CharacterTable;
use crate::cyclotomic::{parse_cyc, render_rational, CycNum, Rational, RootSum};
use crate::error::Error;

fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    pub siegel: bool,
    pub cassels: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            siegel: true,
            cassels: true,
        }
    }
}

/// A value `χ(g)` with `χ(g) ≠ 0`, `|χ(g)| ≠ 1`, and the totally positive
/// integer `x = |χ(g)|²` it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelWitness {
    pub class: usize,
    pub value: CycNum,
    pub x: CycNum,
    pub avg_trace: Rational,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CasselsBranch {
    TwoRoots(RootSum),
    Trace(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasselsRecord {
    pub class: usize,
    pub value: CycNum,
    pub branch: CasselsBranch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReport {
    pub row: usize,
    pub degree: u64,
    pub orbit: usize,
    pub count_zero: u64,
    pub count_mod_one: u64,
    pub count_root_of_unity: u64,
    pub lambda_mod: Rational,
    pub lambda_rou: Rational,
    pub below_half: bool,
    pub roots_of_unity: Vec<usize>,
    pub siegel: Vec<SiegelWitness>,
    pub cassels: Vec<CasselsRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MillerReport {
    pub order: usize,
    pub rows: Vec<RowReport>,
}

/// Everything the audits need to know about one value, computed once per
/// distinct value of a table.
#[derive(Clone, Debug)]
struct ValueFacts {
    zero: bool,
    mod_one: bool,
    root_of_unity: bool,
    siegel: Option<(CycNum, Rational, bool)>,
    cassels: Option<CasselsBranch>,
}

fn siegel_equality_values(n: u32) -> Vec<CycNum> {
    if n % 5 != 0 {
        return Vec::new();
    }
    ["z(5)^2 + z(5)^3 + 2", "z(5) + z(5)^4 + 2"]
        .iter()
        .map(|s| parse_cyc(s, n).expect("well-formed"))
        .collect()
}

/// Siegel: a totally positive algebraic integer `x ≠ 1` has average trace at
/// least 3/2, with equality only at `(3 ± √5)/2`.
fn siegel_check(value: &CycNum) -> Result<(CycNum, Rational, bool), Error> {
    let x = value.abs_squared();
    if !x.is_totally_positive()? {
        return Err(Error::SiegelViolation(format!(
            "|{value}|^2 = {x} is not totally positive"
        )));
    }
    let tr = x.avg_trace();
    let bound = ratio(3, 2);
    if tr < bound {
        return Err(Error::SiegelViolation(format!(
            "average trace of {x} is {} < 3/2",
            render_rational(&tr)
        )));
    }
    let equality = tr == bound;
    if equality && !siegel_equality_values(x.conductor()).contains(&x) {
        return Err(Error::SiegelViolation(format!(
            "{x} attains 3/2 but is not (3 ± √5)/2"
        )));
    }
    Ok((x, tr, equality))
}

/// Cassels: either `x` is a sum of at most two roots of unity, or the average
/// trace of `|x|²` is at least 2.
fn cassels_check(value: &CycNum) -> Result<CasselsBranch, Error> {
    if let Some(w) = value.as_sum_of_at_most_two_roots() {
        return Ok(CasselsBranch::TwoRoots(w));
    }
    let tr = value.abs_squared().avg_trace();
    if tr < Rational::from_integer(2.into()) {
        return Err(Error::CasselsViolation(format!(
            "{value} is not a sum of two roots of unity yet |x|^2 has average trace {}",
            render_rational(&tr)
        )));
    }
    Ok(CasselsBranch::Trace(tr))
}

fn value_facts(value: &CycNum, opts: AuditOptions) -> Result<ValueFacts, Error> {
    let zero = value.is_zero();
    let mod_one = !zero && value.has_modulus_one();
    let root_of_unity = mod_one && value.is_root_of_unity();
    let siegel = if opts.siegel && !zero && !mod_one {
        Some(siegel_check(value)?)
    } else {
        None
    };
    let cassels = if opts.cassels {
        Some(cassels_check(value)?)
    } else {
        None
    };
    Ok(ValueFacts {
        zero,
        mod_one,
        root_of_unity,
        siegel,
        cassels,
    })
}

fn build_row(
    t: &CharacterTable,
    r: usize,
    orbit: usize,
    facts: impl Fn(&CycNum) -> Result<ValueFacts, Error>,
) -> Result<RowReport, Error> {
    let sizes = &t.classes.sizes;
    let (mut zero, mut mod_one, mut rou) = (0u64, 0u64, 0u64);
    let mut roots_of_unity = Vec::new();
    let mut siegel = Vec::new();
    let mut cassels = Vec::new();
    for (m, v) in t.values[r].iter().enumerate() {
        let f = facts(v)?;
        let s = sizes[m] as u64;
        if f.zero {
            zero += s;
        }
        if f.mod_one {
            mod_one += s;
        }
        if f.root_of_unity {
            rou += s;
            roots_of_unity.push(m);
        }
        if let Some((x, avg_trace, equality)) = f.siegel {
            siegel.push(SiegelWitness {
                class: m,
                value: v.clone(),
                x,
                avg_trace,
                equality,
            });
        }
        if let Some(branch) = f.cassels {
            cassels.push(CasselsRecord {
                class: m,
                value: v.clone(),
                branch,
            });
        }
    }
    // stable: ties stay in class order
    siegel.sort_by(|a, b| a.avg_trace.cmp(&b.avg_trace));
    let order = BigInt::from(t.order);
    let lambda_mod = Rational::new(BigInt::from(zero + mod_one), order.clone());
    let lambda_rou = Rational::new(BigInt::from(zero + rou), order);
    let below_half = lambda_mod < ratio(1, 2);
    Ok(RowReport {
        row: r,
        degree: t.degrees[r],
        orbit,
        count_zero: zero,
        count_mod_one: mod_one,
        count_root_of_unity: rou,
        lambda_mod,
        lambda_rou,
        below_half,
        roots_of_unity,
        siegel,
        cassels,
    })
}

/// λ statistics of one row; witness lists are left empty and the orbit id is 0.
pub fn miller_ratio(t: &CharacterTable, r: usize) -> RowReport {
    let opts = AuditOptions {
        siegel: false,
        cassels: false,
    };
    build_row(t, r, 0, |v| value_facts(v, opts)).expect("no audit can fail")
}

pub fn siegel_audit(t: &CharacterTable, r: usize) -> Result<Vec<SiegelWitness>, Error> {
    let opts = AuditOptions {
        siegel: true,
        cassels: false,
    };
    Ok(build_row(t, r, 0, |v| value_facts(v, opts))?.siegel)
}

pub fn root_of_unity_scan(t: &CharacterTable, r: usize) -> Vec<usize> {
    miller_ratio(t, r).roots_of_unity
}

pub fn cassels_audit(t: &CharacterTable, r: usize) -> Result<Vec<CasselsRecord>, Error> {
    let opts = AuditOptions {
        siegel: false,
        cassels: true,
    };
    Ok(build_row(t, r, 0, |v| value_facts(v, opts))?.cassels)
}

/// Runs every enabled audit on every row. Each distinct value is examined
/// once; the work is spread over threads and reassembled in row order.
pub fn audit_table(t: &CharacterTable, opts: AuditOptions) -> Result<MillerReport, Error> {
    let orbits = t.galois_orbits()?;
    let mut distinct: Vec<&CycNum> = Vec::new();
    let mut seen: HashMap<&CycNum, ()> = HashMap::new();
    for v in t.values.iter().flatten() {
        if seen.insert(v, ()).is_none() {
            distinct.push(v);
        }
    }
    let facts: HashMap<&CycNum, ValueFacts> = distinct
        .par_iter()
        .map(|&v| value_facts(v, opts).map(|f| (v, f)))
        .collect::<Result<_, Error>>()?;
    let rows = (0..t.values.len())
        .into_par_iter()
        .map(|r| build_row(t, r, orbits[r], |v| Ok(facts[v].clone())))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(MillerReport {
        order: t.order,
        rows,
    })
}

/// `n/d` rounded half-up to four decimal places.
pub fn approx4(q: &Rational) -> String {
    let scaled = q * Rational::from_integer(10000.into());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let sign = if rounded < BigInt::zero() { "-" } else { "" };
    let mag = if rounded < BigInt::zero() { -rounded } else { rounded };
    let int = &mag / 10000;
    let frac = &mag % 10000;
    format!("{sign}{int}.{frac:0>4}")
}

impl MillerReport {
    pub fn below_half_rows(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.below_half).map(|r| r.row).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            writeln!(s, "chi {} degree {} orbit {}", r.row, r.degree, r.orbit).unwrap();
            writeln!(
                s,
                "lambda_mod {} (~{})",
                frac(&r.lambda_mod),
                approx4(&r.lambda_mod)
            )
            .unwrap();
            writeln!(s, "lambda_rou {}", frac(&r.lambda_rou)).unwrap();
            writeln!(
                s,
                "counts zero {} mod_one {} root_of_unity {}",
                r.count_zero, r.count_mod_one, r.count_root_of_unity
            )
            .unwrap();
            writeln!(s, "below_half {}", yes_no(r.below_half)).unwrap();
            for w in &r.siegel {
                writeln!(
                    s,
                    "siegel class {} value {} trace {} equality {}",
                    w.class,
                    w.value,
                    frac(&w.avg_trace),
                    yes_no(w.equality)
                )
                .unwrap();
            }
            for c in &r.cassels {
                match &c.branch {
                    CasselsBranch::TwoRoots(w) => {
                        writeln!(s, "cassels class {} two-roots: {}", c.class, w).unwrap()
                    }
                    CasselsBranch::Trace(tr) => {
                        writeln!(s, "cassels class {} trace {}", c.class, frac(tr)).unwrap()
                    }
                }
            }
        }
        s
    }
}

/// Always `num/den`, even for integers.
fn frac(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Average traces of `x_p = (ζ_p + ζ_p^(p-1))² = 4cos²(2π/p)` for odd primes `p`.
pub fn lambda_sequence(primes: &[u64]) -> Result<Vec<(u64, Rational)>, Error> {
    primes
        .iter()
        .map(|&p| {
            if p == 2 || !is_prime(p) {
                return Err(Error::InvalidPrime(p, "not an odd prime"));
            }
            if p > u32::MAX as u64 {
                return Err(Error::InvalidPrime(p, "too large"));
            }
            let n = p as u32;
            let c = CycNum::root_of_unity(n, 1) + CycNum::root_of_unity(n, p as i64 - 1);
            Ok((p, (&c * &c).avg_trace()))
        })
        .collect()
}

/// `2 − 2/(p − 1)`.
pub fn lambda_closed_form(p: u64) -> Rational {
    Rational::from_integer(2.into()) - Rational::new(2.into(), BigInt::from(p - 1))
}

pub fn is_at_least_one_third(q: &Rational) -> bool {
    *q >= ratio(1, 3) && *q <= Rational::one()
}
