//! Exact sign of a real cyclotomic number, by interval evaluation of
//! `Σ c_t cos(2π t j / N)` with rational endpoints, refined until the
//! interval excludes zero.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CycNum, Rational};
use crate::error::Error;

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 8192;

#[derive(Clone, Debug)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn round_down(q: &Rational, bits: u32) -> Rational {
    let scale = pow2(bits);
    let num = (q.numer() * &scale).div_floor_big(q.denom());
    Rational::new(num, scale)
}

fn round_up(q: &Rational, bits: u32) -> Rational {
    -round_down(&-q, bits)
}

trait DivFloor {
    fn div_floor_big(&self, d: &BigInt) -> BigInt;
}

impl DivFloor for BigInt {
    fn div_floor_big(&self, d: &BigInt) -> BigInt {
        num_integer::Integer::div_floor(self, d)
    }
}

/// Bounds on `atan(1/k)` from the alternating series.
fn atan_inv(k: u64, bits: u32) -> Interval {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let eps = Rational::new(BigInt::one(), pow2(bits + 4));
    let mut sum = Rational::zero();
    let mut power = k.clone();
    let mut i: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * i + 1) * &power);
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let next = Rational::new(BigInt::one(), BigInt::from(2 * i + 3) * &power * &k2);
        if next < eps {
            // partial sums alternate around the limit
            return if i % 2 == 0 {
                Interval { lo: &sum - &next, hi: sum }
            } else {
                Interval { lo: sum.clone(), hi: sum + next }
            };
        }
        power *= &k2;
        i += 1;
    }
}

fn pi_bounds(bits: u32) -> Interval {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    let sixteen = Rational::from_integer(BigInt::from(16));
    let four = Rational::from_integer(BigInt::from(4));
    Interval {
        lo: round_down(&(&sixteen * &a.lo - &four * &b.hi), bits + 8),
        hi: round_up(&(&sixteen * &a.hi - &four * &b.lo), bits + 8),
    }
}

/// Bounds on `cos θ` for every `θ` in `[lo, hi]`, `0 <= lo`, `hi <= 4`.
fn cos_bounds(theta: &Interval, bits: u32) -> Interval {
    let x = &theta.lo;
    let x2 = x * x;
    let eps = Rational::new(BigInt::one(), pow2(bits + 4));
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut i: u64 = 0;
    loop {
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let next = &term * &x2 / Rational::from_integer(BigInt::from((2 * i + 1) * (2 * i + 2)));
        if next < eps && i > 0 {
            // Lagrange remainder is bounded by the next term; cos is 1-Lipschitz
            let slack = next + (&theta.hi - &theta.lo);
            let lo = (&sum - &slack).max(-Rational::one());
            let hi = (&sum + &slack).min(Rational::one());
            return Interval {
                lo: round_down(&lo, bits + 4),
                hi: round_up(&hi, bits + 4),
            };
        }
        term = next;
        i += 1;
    }
}

type CosTable = Arc<Vec<Interval>>;

static COS_TABLES: OnceLock<Mutex<HashMap<(u32, u32), CosTable>>> = OnceLock::new();

/// `cos(2π t/n)` bounds for `0 <= t < n`.
fn cos_table(n: u32, bits: u32) -> CosTable {
    let tables = COS_TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&(n, bits)) {
        return Arc::clone(t);
    }
    let pi = pi_bounds(bits + 8);
    let table: Vec<Interval> = (0..n)
        .map(|t| {
            let exact = |v: i64| Interval {
                lo: Rational::from_integer(BigInt::from(v)),
                hi: Rational::from_integer(BigInt::from(v)),
            };
            // fold t into [0, n/2] so the angle lies in [0, π]
            let t = t.min(n - t);
            if t == 0 {
                return exact(1);
            }
            if 2 * t == n {
                return exact(-1);
            }
            if 4 * t == n {
                return exact(0);
            }
            let scale = Rational::new(BigInt::from(2 * t as u64), BigInt::from(n));
            let theta = Interval {
                lo: round_down(&(&pi.lo * &scale), bits + 8),
                hi: round_up(&(&pi.hi * &scale), bits + 8),
            };
            cos_bounds(&theta, bits)
        })
        .collect();
    let table = Arc::new(table);
    tables
        .lock()
        .unwrap()
        .insert((n, bits), Arc::clone(&table));
    table
}

/// Sign of `σ_j(x)` for real `x`, where `σ_j: ζ ↦ ζ^j`.
pub(super) fn real_sign(x: &CycNum, j: u32) -> Result<Ordering, Error> {
    if x.is_zero() {
        return Ok(Ordering::Equal);
    }
    let n = x.n;
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let table = cos_table(n, bits);
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (t, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let iv = &table[(t as u64 * j as u64 % n as u64) as usize];
            if c.is_positive() {
                lo += c * &iv.lo;
                hi += c * &iv.hi;
            } else {
                lo += c * &iv.hi;
                hi += c * &iv.lo;
            }
        }
        if lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if hi.is_negative() {
            return Ok(Ordering::Less);
        }
        bits *= 2;
    }
    Err(Error::SignUndetermined(MAX_BITS))
}
