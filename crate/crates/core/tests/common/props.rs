//! Randomized properties shared by the property suite and the acceptance run.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use charaudit::arith::{is_prime, isqrt, units};
use charaudit::{CharacterTable, ClassData, CycNum, PermGroup, Rational};

use super::{big_table, corpus, fixture, CORPUS};

pub const CASES: u32 = 1000;

pub const PROPERTIES: [&str; 7] = [
    "ring axioms",
    "conjugation involution",
    "galois homomorphism",
    "abs_squared multiplicativity",
    "root of unity implies modulus one",
    "power maps match galois action",
    "deterministic tables",
];

const CONDUCTORS: [u32; 16] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 24, 30, 120];

/// A sparse element `(1/d)·Σ c_i ζ^(t_i)` of Q(ζ_n).
fn element(n: u32) -> impl Strategy<Value = CycNum> {
    (prop::collection::vec((0..n, -4i64..=4), 0..6), 1i64..=3).prop_map(move |(terms, d)| {
        let mut coeffs = vec![0i64; n as usize];
        for (t, c) in terms {
            coeffs[t as usize] += c;
        }
        CycNum::from_exponent_coeffs(n, &coeffs).scale(&Rational::new(1.into(), d.into()))
    })
}

fn triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (element(n), element(n), element(n)))
}

fn with_units() -> impl Strategy<Value = (CycNum, CycNum, u64, u64)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| {
        let us = units(n as u64);
        (
            element(n),
            element(n),
            prop::sample::select(us.clone()),
            prop::sample::select(us),
        )
    })
}

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn ring_axioms() -> Result<(), String> {
    runner()
        .run(&triple(), |(x, y, z)| {
            let n = x.conductor();
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &CycNum::zero(n), x.clone());
            prop_assert_eq!(&x * &CycNum::one(n), x.clone());
            prop_assert!((&x + &(-x.clone())).is_zero());
            prop_assert_eq!(&x - &y, &x + &(-y.clone()));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn conjugation() -> Result<(), String> {
    runner()
        .run(&triple(), |(x, y, _)| {
            prop_assert_eq!(x.complex_conjugate().complex_conjugate(), x.clone());
            prop_assert_eq!((&x * &y).complex_conjugate(), &x.complex_conjugate() * &y.complex_conjugate());
            prop_assert!(x.abs_squared().is_real());
            if x.as_rational().is_some() {
                prop_assert_eq!(x.complex_conjugate(), x.clone());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn galois() -> Result<(), String> {
    runner()
        .run(&with_units(), |(x, y, j, l)| {
            let n = x.conductor() as u64;
            let s = |v: &CycNum, k: u64| v.galois(k as i64).unwrap();
            prop_assert_eq!(s(&(&x + &y), j), &s(&x, j) + &s(&y, j));
            prop_assert_eq!(s(&(&x * &y), j), &s(&x, j) * &s(&y, j));
            prop_assert_eq!(s(&s(&x, j), l), s(&x, j * l % n.max(1)));
            prop_assert_eq!(s(&x, 1), x.clone());
            prop_assert_eq!(s(&x, j).avg_trace(), x.avg_trace());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn abs_squared() -> Result<(), String> {
    runner()
        .run(&triple(), |(x, y, _)| {
            prop_assert_eq!((&x * &y).abs_squared(), &x.abs_squared() * &y.abs_squared());
            prop_assert_eq!(x.abs_squared().complex_conjugate(), x.abs_squared());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn roots() -> Result<(), String> {
    let strategy = prop::sample::select(CONDUCTORS.to_vec())
        .prop_flat_map(|n| (element(n), 0..n as i64, any::<bool>()));
    runner()
        .run(&strategy, |(x, k, neg)| {
            let n = x.conductor();
            let mut r = CycNum::root_of_unity(n, k);
            if neg {
                r = -r;
            }
            prop_assert!(r.is_root_of_unity());
            prop_assert!(r.has_modulus_one());
            let s = &x * &r;
            if s.is_root_of_unity() {
                prop_assert!(s.has_modulus_one());
            }
            // Kronecker: an integral element all of whose conjugates have
            // modulus one is a root of unity
            if x.is_integral()
                && units(n as u64)
                    .iter()
                    .all(|&j| x.galois(j as i64).unwrap().has_modulus_one())
            {
                prop_assert!(x.is_root_of_unity());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn power_maps() -> Result<(), String> {
    let mut tables: Vec<&'static CharacterTable> = corpus().iter().map(|(_, t)| t).collect();
    tables.push(big_table());
    let strategy = (0..tables.len(), any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<prop::sample::Index>());
    runner()
        .run(&strategy, |(ti, r, m, j)| {
            let t = tables[ti];
            let k = t.class_count();
            let us = units(t.conductor as u64);
            let (r, m, j) = (r.index(k), m.index(k), us[j.index(us.len())]);
            let image = t.values[r][m].galois(j as i64).unwrap();
            prop_assert_eq!(&image, &t.values[r][t.classes.power_map(j)[m]]);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Admissible primes below 4000 for a group of this order and exponent.
fn admissible_primes(order: u64, e: u64) -> Vec<u64> {
    (2 * isqrt(order) + 1..4000)
        .filter(|&p| p % e == 1 % e && is_prime(p))
        .collect()
}

fn determinism() -> Result<(), String> {
    let strategy = (0..CORPUS.len(), any::<prop::sample::Index>());
    let texts: Vec<String> = CORPUS.iter().map(|n| fixture(n)).collect();
    let reference: Vec<String> = corpus().iter().map(|(_, t)| t.to_text()).collect();
    runner()
        .run(&strategy, |(gi, pi)| {
            let g = PermGroup::parse(&texts[gi]).unwrap().enumerate(1 << 10).unwrap();
            let c = ClassData::compute(&g);
            prop_assert_eq!(&c.serialize(), &ClassData::compute(&g).serialize());
            let primes = admissible_primes(g.order() as u64, c.exponent);
            let p = primes[pi.index(primes.len())];
            let t = CharacterTable::compute(&g, &c, Some(p))
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&t.to_text(), &reference[gi]);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn check(name: &str) -> Result<(), String> {
    match name {
        "ring axioms" => ring_axioms(),
        "conjugation involution" => conjugation(),
        "galois homomorphism" => galois(),
        "abs_squared multiplicativity" => abs_squared(),
        "root of unity implies modulus one" => roots(),
        "power maps match galois action" => power_maps(),
        "deterministic tables" => determinism(),
        other => Err(format!("unknown property {other}")),
    }
}
