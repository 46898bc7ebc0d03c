//! Lifting eigenvectors mod p to exact cyclotomic character values.

use rayon::prelude::*;

use crate::arith::{inv_mod, isqrt, pow_mod};
use crate::classes::ClassData;
use crate::cyclotomic::CycNum;
use crate::error::Error;

use super::dixon::DixonContext;

/// One irreducible character: its degree and its values on the classes.
#[derive(Clone, Debug)]
pub struct LiftedCharacter {
    pub degree: u64,
    pub values: Vec<CycNum>,
}

/// Turns a normalized common eigenvector `w` (`w_m = |C_m|·χ(g_m)/χ(1)` mod p)
/// into exact values.
///
/// The degree comes from `Σ_m |C_m| θ_m θ_{m⁻¹} = |G|/χ(1)²` with
/// `θ_m = w_m/|C_m|`. Each value `χ(g) = Σ_t μ_t ζ_e^t` is recovered from the
/// multiplicities `μ_t = (1/e) Σ_l χ(g^l) ω^(-lt)`, which lie in `[0, χ(1)]`.
pub fn lift_character(
    w: &[u64],
    ctx: &DixonContext,
    classes: &ClassData,
) -> Result<LiftedCharacter, Error> {
    let p = ctx.prime;
    let k = classes.class_count();
    let order = classes.group_order as u64;
    let theta: Vec<u64> = (0..k)
        .map(|m| w[m] * inv_mod(classes.sizes[m] as u64 % p, p) % p)
        .collect();
    let norm = (0..k).fold(0u64, |acc, m| {
        let inv = classes.inverse_class(m);
        (acc + classes.sizes[m] as u64 % p * theta[m] % p * theta[inv]) % p
    });
    if norm == 0 {
        return Err(Error::LiftVerification("zero norm for an eigenvector".into()));
    }
    let degree_sq = order % p * inv_mod(norm, p) % p;
    let degree = (1..=isqrt(order))
        .find(|d| d * d % p == degree_sq)
        .ok_or_else(|| Error::LiftVerification("no admissible degree".into()))?;

    let chi_mod: Vec<u64> = theta.iter().map(|t| t * degree % p).collect();
    let e = ctx.exponent;
    let omega_pow: Vec<u64> = (0..e).map(|l| pow_mod(ctx.omega, l, p)).collect();
    let e_inv = inv_mod(e % p, p);

    let values = (0..k)
        .map(|m| {
            // χ(g^l) mod p for l = 0..e
            let orbit: Vec<u64> = (0..e).map(|l| chi_mod[classes.power_map(l)[m]]).collect();
            let mut mult = vec![0i64; e as usize];
            for (t, slot) in mult.iter_mut().enumerate() {
                let mut s = 0u64;
                for (l, &v) in orbit.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    let idx = (e - (l as u64 * t as u64) % e) % e;
                    s = (s + v * omega_pow[idx as usize]) % p;
                }
                let mu = s * e_inv % p;
                if mu > degree {
                    return Err(Error::LiftVerification(format!(
                        "multiplicity {mu} exceeds degree {degree} at class {m}"
                    )));
                }
                *slot = mu as i64;
            }
            Ok(CycNum::from_exponent_coeffs(e as u32, &mult))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(LiftedCharacter { degree, values })
}

pub fn lift_all(
    eigenvectors: &[Vec<u64>],
    ctx: &DixonContext,
    classes: &ClassData,
) -> Result<Vec<LiftedCharacter>, Error> {
    eigenvectors
        .par_iter()
        .map(|w| lift_character(w, ctx, classes))
        .collect()
}
