//! Exact arithmetic in Q(ζ_N).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^(φ(N)-1)` modulo the
//! N-th cyclotomic polynomial, which makes equality a plain coordinate
//! comparison. Per-conductor data (the polynomial, reductions of every
//! `ζ^t`, trace weights, the roots of unity) is built once and cached.

mod expr;
mod sign;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, euler_phi, mobius, units};
use crate::error::Error;

pub use expr::parse_cyc;

pub type Rational = BigRational;

/// `±ζ_N^exponent`. For even `N` the sign is always positive because
/// `-1 = ζ_N^(N/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub conductor: u32,
    pub negated: bool,
    pub exponent: u32,
}

impl Root {
    pub fn value(&self) -> CycNum {
        let z = CycNum::root_of_unity(self.conductor, self.exponent as i64);
        if self.negated {
            -z
        } else {
            z
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent > 0 && 2 * self.exponent == self.conductor {
            // ζ_N^(N/2) = -1
            return f.write_str(if self.negated { "1" } else { "-1" });
        }
        let sign = if self.negated { "-" } else { "" };
        match self.exponent {
            0 => write!(f, "{sign}1"),
            1 => write!(f, "{sign}z({})", self.conductor),
            k => write!(f, "{sign}z({})^{}", self.conductor, k),
        }
    }
}

/// Witness that a value is a sum of at most two roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSum {
    One(Root),
    Two(Root, Root),
}

impl fmt::Display for RootSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSum::One(u) => write!(f, "{u}"),
            RootSum::Two(u, v) => write!(f, "{u} + {v}"),
        }
    }
}

pub(crate) struct Field {
    n: u32,
    phi: usize,
    /// Power-basis coordinates of `ζ^t` for `0 <= t < n`.
    powers: Vec<Vec<i64>>,
    /// Average trace of `ζ^t` for `t < phi`.
    trace_weights: Vec<Rational>,
    roots: OnceLock<HashMap<Vec<i64>, Root>>,
}

fn cyclotomic_polynomial(n: u64, cache: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1, ascending coefficients
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let den = cyclotomic_polynomial(d, cache);
        num = div_exact_monic(&num, &den);
    }
    cache.insert(n, num.clone());
    num
}

fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

impl Field {
    fn build(n: u32) -> Field {
        assert!(n >= 1, "conductor must be positive");
        let mut cache = HashMap::new();
        let poly = cyclotomic_polynomial(n as u64, &mut cache);
        let phi = poly.len() - 1;
        debug_assert_eq!(phi as u64, euler_phi(n as u64));

        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then reduce the x^phi term
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(poly[i]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }

        let trace_weights = (0..phi as u64)
            .map(|t| {
                let m = n as u64 / t.gcd(&(n as u64));
                Rational::new(BigInt::from(mobius(m)), BigInt::from(euler_phi(m)))
            })
            .collect();

        Field {
            n,
            phi,
            powers,
            trace_weights,
            roots: OnceLock::new(),
        }
    }

    fn roots(&self) -> &HashMap<Vec<i64>, Root> {
        self.roots.get_or_init(|| {
            let mut map = HashMap::new();
            for root in root_list(self.n) {
                let mut v = self.powers[root.exponent as usize].clone();
                if root.negated {
                    v.iter_mut().for_each(|c| *c = -*c);
                }
                map.insert(v, root);
            }
            map
        })
    }

    /// Reduces an exponent-indexed vector (`acc[t]` is the coefficient of
    /// `ζ^t`, `t < n`) to power-basis coordinates.
    fn reduce(&self, acc: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.phi];
        for (t, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if t < self.phi {
                out[t] += c;
            } else {
                for (o, &p) in out.iter_mut().zip(&self.powers[t]) {
                    if p != 0 {
                        *o += c * Rational::from_integer(BigInt::from(p));
                    }
                }
            }
        }
        out
    }
}

/// All roots of unity of Q(ζ_n), in a fixed order.
fn root_list(n: u32) -> Vec<Root> {
    let signs: &[bool] = if n % 2 == 0 { &[false] } else { &[false, true] };
    let mut out = Vec::new();
    for &negated in signs {
        for exponent in 0..n {
            out.push(Root {
                conductor: n,
                negated,
                exponent,
            });
        }
    }
    out
}

static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();

fn field(n: u32) -> Arc<Field> {
    let fields = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = fields.read().unwrap().get(&n) {
        return Arc::clone(f);
    }
    let built = Arc::new(Field::build(n));
    let mut w = fields.write().unwrap();
    Arc::clone(w.entry(n).or_insert(built))
}

/// Power-basis coordinates of `ζ_n^t` as integers.
pub fn power_coords(n: u32, t: u64) -> Vec<i64> {
    field(n).powers[(t % n as u64) as usize].clone()
}

/// An element of Q(ζ_N) in canonical power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    n: u32,
    coords: Vec<Rational>,
}

impl CycNum {
    pub fn zero(n: u32) -> Self {
        let phi = field(n).phi;
        CycNum {
            n,
            coords: vec![Rational::zero(); phi],
        }
    }

    pub fn rational(n: u32, q: Rational) -> Self {
        let mut x = CycNum::zero(n);
        x.coords[0] = q;
        x
    }

    pub fn integer(n: u32, v: i64) -> Self {
        CycNum::rational(n, Rational::from_integer(BigInt::from(v)))
    }

    pub fn one(n: u32) -> Self {
        CycNum::integer(n, 1)
    }

    /// `ζ_n^k`, with `k` reduced modulo `n`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let f = field(n);
        let t = k.rem_euclid(n as i64) as usize;
        CycNum {
            n,
            coords: f.powers[t]
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// `Σ_t coeffs[t]·ζ_n^t` for an exponent-indexed coefficient list of any
    /// length (indices are read modulo `n`).
    pub fn from_exponent_coeffs(n: u32, coeffs: &[i64]) -> Self {
        let f = field(n);
        let mut acc = vec![Rational::zero(); n as usize];
        for (t, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                acc[t % n as usize] += Rational::from_integer(BigInt::from(c));
            }
        }
        CycNum {
            n,
            coords: f.reduce(&acc),
        }
    }

    /// Builds an element from power-basis coordinates; `coords.len()` must be φ(n).
    pub fn from_coords(n: u32, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), field(n).phi, "coordinate length must be phi(n)");
        CycNum { n, coords }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The value if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| &self.coords[0])
    }

    /// Integer power-basis coordinates, i.e. membership in Z[ζ_n].
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn integer_coords(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Re-expresses a rational-valued element at another conductor.
    fn promote(&self, n: u32) -> Option<CycNum> {
        if self.n == n {
            return Some(self.clone());
        }
        self.as_rational().map(|q| CycNum::rational(n, q.clone()))
    }

    fn common_conductor(&self, other: &CycNum) -> Result<(CycNum, CycNum), Error> {
        if self.n == other.n {
            return Ok((self.clone(), other.clone()));
        }
        let self_rational = self.as_rational().is_some();
        let target = if self_rational && other.as_rational().is_none() {
            other.n
        } else if other.as_rational().is_some() {
            self.n
        } else {
            return Err(Error::ConductorMismatch(self.n, other.n));
        };
        match (self.promote(target), other.promote(target)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::ConductorMismatch(self.n, other.n)),
        }
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum, Error> {
        let (mut a, b) = self.common_conductor(other)?;
        for (x, y) in a.coords.iter_mut().zip(&b.coords) {
            *x += y;
        }
        Ok(a)
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum, Error> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum, Error> {
        let (a, b) = self.common_conductor(other)?;
        let f = field(a.n);
        let n = a.n as usize;
        if let Some(q) = b.as_rational() {
            return Ok(a.scale(q));
        }
        if let Some(q) = a.as_rational() {
            return Ok(b.scale(q));
        }
        let mut acc = vec![Rational::zero(); n];
        for (t, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (u, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    acc[(t + u) % n] += x * y;
                }
            }
        }
        Ok(CycNum {
            n: a.n,
            coords: f.reduce(&acc),
        })
    }

    pub fn scale(&self, q: &Rational) -> CycNum {
        CycNum {
            n: self.n,
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> CycNum {
        let mut acc = CycNum::one(self.n);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The automorphism `ζ ↦ ζ^j`.
    pub fn galois(&self, j: i64) -> Result<CycNum, Error> {
        let n = self.n as i64;
        let jr = j.rem_euclid(n);
        if jr.gcd(&n) != 1 {
            return Err(Error::NotCoprime { j, n: self.n });
        }
        let f = field(self.n);
        let mut acc = vec![Rational::zero(); self.n as usize];
        for (t, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                acc[((t as i64 * jr) % n) as usize] += c;
            }
        }
        Ok(CycNum {
            n: self.n,
            coords: f.reduce(&acc),
        })
    }

    /// `ζ ↦ ζ⁻¹`.
    pub fn complex_conjugate(&self) -> CycNum {
        self.galois(-1).expect("-1 is a unit")
    }

    pub fn is_real(&self) -> bool {
        self.complex_conjugate() == *self
    }

    /// `x · conj(x)`.
    pub fn abs_squared(&self) -> CycNum {
        self * &self.complex_conjugate()
    }

    pub fn has_modulus_one(&self) -> bool {
        self.abs_squared().is_one()
    }

    /// The root `±ζ^k` equal to this element, if any.
    pub fn as_root_of_unity(&self) -> Option<Root> {
        let key = self.integer_coords()?;
        field(self.n).roots().get(&key).copied()
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.as_root_of_unity().is_some()
    }

    /// `Tr(x)/φ(N)`: the mean of the Galois conjugates.
    pub fn avg_trace(&self) -> Rational {
        let f = field(self.n);
        self.coords
            .iter()
            .zip(&f.trace_weights)
            .filter(|(c, _)| !c.is_zero())
            .fold(Rational::zero(), |acc, (c, w)| acc + c * w)
    }

    pub fn trace(&self) -> Rational {
        self.avg_trace() * Rational::from_integer(BigInt::from(field(self.n).phi))
    }

    /// Finds `x = u` or `x = u + v` with `u, v` roots of unity in Q(ζ_N).
    pub fn as_sum_of_at_most_two_roots(&self) -> Option<RootSum> {
        if let Some(u) = self.as_root_of_unity() {
            return Some(RootSum::One(u));
        }
        let key = self.integer_coords()?;
        let f = field(self.n);
        let roots = f.roots();
        for u in root_list(self.n) {
            let mut rest = key.clone();
            let up = &f.powers[u.exponent as usize];
            for (r, &p) in rest.iter_mut().zip(up) {
                if u.negated {
                    *r += p;
                } else {
                    *r -= p;
                }
            }
            if let Some(v) = roots.get(&rest) {
                return Some(RootSum::Two(u, *v));
            }
        }
        None
    }

    pub fn is_sum_of_at_most_two_roots(&self) -> bool {
        self.as_sum_of_at_most_two_roots().is_some()
    }

    /// Every Galois image is real and strictly positive.
    pub fn is_totally_positive(&self) -> Result<bool, Error> {
        if self.is_zero() || !self.is_real() {
            return Ok(false);
        }
        for j in units(self.n as u64) {
            if sign::real_sign(self, j as u32)? != std::cmp::Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sign of the real number `σ_j(x)`; `x` must be real.
    pub fn real_sign(&self, j: u32) -> Result<std::cmp::Ordering, Error> {
        sign::real_sign(self, j)
    }

    /// Canonical text form: ascending exponent, constant term first, no zero terms.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (t, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let zeta = match t {
                0 => String::new(),
                1 => format!("z({})", self.n),
                _ => format!("z({})^{}", self.n, t),
            };
            if t == 0 {
                out.push_str(&render_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&zeta);
            } else {
                out.push_str(&render_rational(&mag));
                out.push('*');
                out.push_str(&zeta);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Generators of the unit group modulo `n`, chosen greedily in ascending order.
pub fn unit_group_generators(n: u32) -> Vec<u32> {
    let all = units(n as u64);
    let mut gens: Vec<u32> = Vec::new();
    let mut reached: Vec<u64> = vec![1];
    for &j in &all {
        if reached.contains(&j) {
            continue;
        }
        gens.push(j as u32);
        // closure of reached under multiplication by gens
        let mut frontier = reached.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = x * g as u64 % n as u64;
                if !reached.contains(&y) {
                    reached.push(y);
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.n, self.render())
    }
}

impl Neg for &CycNum {
    type Output = CycNum;

    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;

    fn neg(self) -> CycNum {
        -&self
    }
}

// Operator forms panic on a conductor mismatch; use the `try_` methods to
// handle that case.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;

            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).expect("cyclotomic operands must share a conductor")
            }
        }

        impl $tr<CycNum> for CycNum {
            type Output = CycNum;

            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
