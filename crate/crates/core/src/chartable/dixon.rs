//! Prime selection and simultaneous eigenspace splitting over GF(p).

use crate::arith::{is_prime, isqrt, pow_mod, prime_factors};
use crate::error::Error;

use super::modp::{self, Matrix};

const PRIME_SEARCH_CAP: u64 = 1 << 31;

/// A prime `p ≡ 1 (mod e)` with `p > 2⌊√|G|⌋` and a primitive `e`-th root
/// of unity `ω` modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DixonContext {
    pub prime: u64,
    pub omega: u64,
    pub exponent: u64,
    pub order: u64,
}

impl DixonContext {
    /// Smallest admissible prime.
    pub fn choose(order: u64, exponent: u64) -> Result<Self, Error> {
        assert!(exponent >= 1);
        let bound = 2 * isqrt(order);
        let mut p = (bound / exponent) * exponent + 1;
        while p <= bound {
            p += exponent;
        }
        while p < PRIME_SEARCH_CAP {
            if is_prime(p) {
                return Self::with_prime(p, order, exponent);
            }
            p += exponent;
        }
        Err(Error::NoPrimeFound(PRIME_SEARCH_CAP))
    }

    pub fn with_prime(p: u64, order: u64, exponent: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p, "not prime"));
        }
        if p >= PRIME_SEARCH_CAP {
            return Err(Error::InvalidPrime(p, "too large"));
        }
        if p % exponent != 1 % exponent {
            return Err(Error::InvalidPrime(p, "not 1 modulo the group exponent"));
        }
        if p <= 2 * isqrt(order) {
            return Err(Error::InvalidPrime(p, "not above 2*isqrt(|G|)"));
        }
        let factors = prime_factors(exponent);
        let omega = (2..p.max(3))
            .map(|g| pow_mod(g, (p - 1) / exponent, p))
            .find(|&w| factors.iter().all(|&q| pow_mod(w, exponent / q, p) != 1))
            .unwrap_or(1);
        Ok(DixonContext {
            prime: p,
            omega,
            exponent,
            order,
        })
    }
}

/// A subspace of GF(p)^k given by a basis in reduced row echelon form.
#[derive(Clone, Debug)]
struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_vectors(mut vs: Matrix, p: u64) -> Self {
        let pivots = modp::rref(&mut vs, p);
        Subspace { basis: vs, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Splits into the eigenspaces of `a` (which must leave this space invariant).
    fn split(&self, a: &Matrix, p: u64) -> Result<Vec<Subspace>, Error> {
        let d = self.dim();
        // column t of `restricted` holds the basis coordinates of a·b_t
        let mut restricted = vec![vec![0u64; d]; d];
        for (t, b) in self.basis.iter().enumerate() {
            let image: Vec<u64> = a
                .iter()
                .map(|row| row.iter().zip(b).fold(0, |acc, (&x, &y)| (acc + x * y) % p))
                .collect();
            for (s, &pc) in self.pivots.iter().enumerate() {
                restricted[s][t] = image[pc];
            }
        }
        let cp = modp::charpoly(&restricted, p);
        let eigenvalues = modp::roots(&cp, p);
        if eigenvalues.len() == 1 {
            return Ok(vec![self.clone()]);
        }
        let mut pieces = Vec::new();
        let mut total = 0;
        for lambda in eigenvalues {
            let shifted: Matrix = restricted
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &v)| if i == j { modp::sub(v, lambda, p) } else { v })
                        .collect()
                })
                .collect();
            let coords = modp::kernel(&shifted, p);
            total += coords.len();
            let vectors: Matrix = coords
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; self.basis[0].len()];
                    for (ct, b) in c.iter().zip(&self.basis) {
                        if *ct == 0 {
                            continue;
                        }
                        for (vi, &bi) in v.iter_mut().zip(b) {
                            *vi = (*vi + ct * bi) % p;
                        }
                    }
                    v
                })
                .collect();
            pieces.push(Subspace::from_vectors(vectors, p));
        }
        if total != d {
            return Err(Error::LiftVerification(format!(
                "class matrix not diagonalizable on a {d}-dimensional subspace"
            )));
        }
        Ok(pieces)
    }
}

/// Finds the `k` common eigenvectors of the class matrices, each normalized
/// so its identity-class coordinate is 1.
///
/// `matrix` yields the class matrix of class `i` reduced mod p; it is called
/// for `i = 1, 2, …` in canonical order only until every subspace is
/// one-dimensional.
pub fn eigen_split<F>(k: usize, ctx: &DixonContext, mut matrix: F) -> Result<Vec<Vec<u64>>, Error>
where
    F: FnMut(usize) -> Matrix,
{
    let p = ctx.prime;
    let identity: Matrix = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut done: Vec<Subspace> = Vec::new();
    let mut pending = vec![Subspace::from_vectors(identity, p)];
    pending.retain(|s| {
        if s.dim() == 1 {
            done.push(s.clone());
            false
        } else {
            true
        }
    });
    for i in 1..k {
        if pending.is_empty() {
            break;
        }
        let a = matrix(i);
        let mut next = Vec::new();
        for space in &pending {
            for piece in space.split(&a, p)? {
                if piece.dim() == 1 {
                    done.push(piece);
                } else {
                    next.push(piece);
                }
            }
        }
        pending = next;
    }
    if !pending.is_empty() {
        return Err(Error::SplitIncomplete(pending.len()));
    }
    done.into_iter()
        .map(|s| {
            let v = s.basis.into_iter().next().unwrap();
            if v[0] == 0 {
                return Err(Error::LiftVerification(
                    "eigenvector vanishes on the identity class".into(),
                ));
            }
            // already normalized: the pivot of an RREF row is 1
            Ok(v)
        })
        .collect()
}
