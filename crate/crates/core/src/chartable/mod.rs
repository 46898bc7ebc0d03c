//! Character tables by the Burnside–Dixon–Schneider method.
//!
//! Class matrices are split simultaneously over GF(p) into one-dimensional
//! eigenspaces; each eigenvector is a central character mod p, from which the
//! degree and the exact cyclotomic values are recovered through power maps.
//! Every table is checked against both orthogonality relations before it is
//! returned.

pub mod classmat;
pub mod dixon;
pub mod lift;
pub mod modp;

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::classes::ClassData;
use crate::cyclotomic::{power_coords, unit_group_generators, CycNum, Rational};
use crate::error::Error;
use crate::group::GroupData;

pub use classmat::ClassMatrix;
pub use dixon::{eigen_split, DixonContext};
pub use lift::{lift_all, lift_character, LiftedCharacter};

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub order: usize,
    pub perm_degree: usize,
    pub perfect: bool,
    pub classes: ClassData,
    /// Ambient conductor of every value: the group exponent.
    pub conductor: u32,
    pub prime: u64,
    /// `values[r][m]` is `χ_r` on class `m`.
    pub values: Vec<Vec<CycNum>>,
    pub degrees: Vec<u64>,
}

impl CharacterTable {
    /// Computes and verifies the table. `prime` overrides the default choice
    /// of the smallest admissible prime.
    pub fn compute(g: &GroupData, classes: &ClassData, prime: Option<u64>) -> Result<Self, Error> {
        let order = g.order() as u64;
        let e = classes.exponent;
        let ctx = match prime {
            Some(p) => DixonContext::with_prime(p, order, e)?,
            None => DixonContext::choose(order, e)?,
        };
        let k = classes.class_count();
        let vectors = eigen_split(k, &ctx, |i| {
            ClassMatrix::compute(g, classes, i).reduce_mod(ctx.prime)
        })?;
        let chars = lift_all(&vectors, &ctx, classes)?;
        let table = Self::from_characters(g.order(), g.degree(), g.is_perfect(), classes, ctx.prime, chars);
        table.verify()?;
        Ok(table)
    }

    /// Assembles a table in canonical row order: trivial character first,
    /// then ascending degree, then the rendered value rows lexicographically.
    pub fn from_characters(
        order: usize,
        perm_degree: usize,
        perfect: bool,
        classes: &ClassData,
        prime: u64,
        chars: Vec<LiftedCharacter>,
    ) -> Self {
        let conductor = classes.exponent as u32;
        let mut keyed: Vec<(bool, u64, Vec<String>, LiftedCharacter)> = chars
            .into_iter()
            .map(|c| {
                let trivial = c.values.iter().all(|v| v.is_one());
                let rendered = c.values.iter().map(|v| v.render()).collect();
                (!trivial, c.degree, rendered, c)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
        let degrees = keyed.iter().map(|k| k.1).collect();
        let values = keyed.into_iter().map(|k| k.3.values).collect();
        CharacterTable {
            order,
            perm_degree,
            perfect,
            classes: classes.clone(),
            conductor,
            prime,
            values,
            degrees,
        }
    }

    pub fn class_count(&self) -> usize {
        self.classes.class_count()
    }

    /// Integrality, `Σ χ(1)² = |G|`, a unique trivial row, and both
    /// orthogonality relations, checked exactly in Z[ζ_N].
    pub fn verify(&self) -> Result<(), Error> {
        let fail = |msg: String| Err(Error::LiftVerification(msg));
        let k = self.class_count();
        if self.values.len() != k || self.values.iter().any(|r| r.len() != k) {
            return fail(format!("table is not {k}x{k}"));
        }
        let sum_sq: u128 = self.degrees.iter().map(|&d| d as u128 * d as u128).sum();
        if sum_sq != self.order as u128 {
            return fail(format!("sum of squared degrees {sum_sq} != {}", self.order));
        }
        for (r, row) in self.values.iter().enumerate() {
            if row[0] != CycNum::integer(self.conductor, self.degrees[r] as i64) {
                return fail(format!("row {r}: identity value differs from degree"));
            }
        }
        let trivial_rows = self
            .values
            .iter()
            .filter(|row| row.iter().all(|v| v.is_one()))
            .count();
        if trivial_rows != 1 {
            return fail(format!("{trivial_rows} trivial rows"));
        }

        let ints = IntegerTable::new(self)?;
        let n = self.order as i128;
        let sizes: Vec<i128> = self.classes.sizes.iter().map(|&s| s as i128).collect();
        let row_bad = (0..k).into_par_iter().find_map_any(|r| {
            (r..k).find_map(|s| {
                let expect = if r == s { n } else { 0 };
                let got = ints.hermitian(|m| (r, m), |m| (s, m), k, |m| sizes[m]);
                (!got.is_scalar(expect)).then(|| format!("rows {r},{s} not orthonormal"))
            })
        });
        if let Some(msg) = row_bad {
            return fail(msg);
        }
        let col_bad = (0..k).into_par_iter().find_map_any(|m| {
            (m..k).find_map(|l| {
                let expect = if m == l { self.classes.centralizer_orders[m] as i128 } else { 0 };
                let got = ints.hermitian(|r| (r, m), |r| (r, l), k, |_| 1);
                (!got.is_scalar(expect)).then(|| format!("columns {m},{l} not orthogonal"))
            })
        });
        if let Some(msg) = col_bad {
            return fail(msg);
        }
        Ok(())
    }

    /// Both orthogonality relations evaluated with `CycNum` arithmetic.
    /// Slow; independent of the integer route used by [`verify`](Self::verify).
    pub fn orthogonality_holds_exactly(&self) -> bool {
        let k = self.class_count();
        let nn = self.conductor;
        let order = Rational::from_integer(self.order.into());
        let conj: Vec<Vec<CycNum>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.complex_conjugate()).collect())
            .collect();
        for r in 0..k {
            for s in 0..k {
                let mut acc = CycNum::zero(nn);
                for m in 0..k {
                    let size = Rational::from_integer(self.classes.sizes[m].into());
                    acc = &acc + &(&self.values[r][m] * &conj[s][m]).scale(&size);
                }
                let acc = acc.scale(&(Rational::from_integer(1.into()) / &order));
                let expect = CycNum::integer(nn, i64::from(r == s));
                if acc != expect {
                    return false;
                }
            }
        }
        for m in 0..k {
            for l in 0..k {
                let mut acc = CycNum::zero(nn);
                for r in 0..k {
                    acc = &acc + &(&self.values[r][m] * &conj[r][l]);
                }
                let expect = if m == l { self.classes.centralizer_orders[m] as i64 } else { 0 };
                if acc != CycNum::integer(nn, expect) {
                    return false;
                }
            }
        }
        true
    }

    /// Galois orbit id of every row; ids are numbered by first row.
    /// Rows `r, s` share an orbit iff `σ_j(χ_r) = χ_s` for some unit `j`.
    pub fn galois_orbits(&self) -> Result<Vec<usize>, Error> {
        let k = self.values.len();
        let index: HashMap<&Vec<CycNum>, usize> =
            self.values.iter().enumerate().map(|(r, row)| (row, r)).collect();
        let gens = unit_group_generators(self.conductor);
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut y = x;
            while parent[y] != root {
                let next = parent[y];
                parent[y] = root;
                y = next;
            }
            root
        }
        let images: Vec<Vec<(u32, Option<usize>)>> = self
            .values
            .par_iter()
            .map(|row| {
                gens.iter()
                    .map(|&j| {
                        let image: Vec<CycNum> = row
                            .iter()
                            .map(|v| v.galois(j as i64).expect("generator is a unit"))
                            .collect();
                        (j, index.get(&image).copied())
                    })
                    .collect()
            })
            .collect();
        for (r, imgs) in images.iter().enumerate() {
            for &(j, s) in imgs {
                let s = s.ok_or(Error::NotGaloisClosed { row: r, j })?;
                let (a, b) = (find(&mut parent, r), find(&mut parent, s));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut out = Vec::with_capacity(k);
        for r in 0..k {
            let root = find(&mut parent, r);
            let next = ids.len();
            out.push(*ids.entry(root).or_insert(next));
        }
        Ok(out)
    }

    /// Table file text.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "order {}", self.order).unwrap();
        writeln!(s, "classes {}", self.class_count()).unwrap();
        writeln!(s, "conductor {}", self.conductor).unwrap();
        for i in 0..self.class_count() {
            writeln!(
                s,
                "class {} size {} elemorder {}",
                i, self.classes.sizes[i], self.classes.element_orders[i]
            )
            .unwrap();
        }
        for (r, row) in self.values.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(|v| v.render()).collect();
            writeln!(s, "chi {} degree {} : {}", r, self.degrees[r], vals.join(" | ")).unwrap();
        }
        s
    }
}

/// Character values as sparse integer exponent vectors, for the fast
/// orthogonality check.
struct IntegerTable {
    n: usize,
    phi: usize,
    /// power-basis coordinates of ζ^t
    powers: Vec<Vec<i64>>,
    /// `terms[r][m]` lists `(t, c)` with `χ_r(g_m) = Σ c·ζ^t`
    terms: Vec<Vec<Vec<(usize, i64)>>>,
}

struct PowerBasisSum(Vec<i128>);

impl PowerBasisSum {
    fn is_scalar(&self, v: i128) -> bool {
        self.0[0] == v && self.0[1..].iter().all(|&c| c == 0)
    }
}

impl IntegerTable {
    fn new(t: &CharacterTable) -> Result<Self, Error> {
        let n = t.conductor as usize;
        let powers: Vec<Vec<i64>> = (0..n as u64).map(|i| power_coords(t.conductor, i)).collect();
        let phi = powers[0].len();
        let mut terms = Vec::with_capacity(t.values.len());
        for (r, row) in t.values.iter().enumerate() {
            let mut trow = Vec::with_capacity(row.len());
            for (m, v) in row.iter().enumerate() {
                let coords = v.integer_coords().ok_or_else(|| {
                    Error::LiftVerification(format!("value at row {r}, class {m} is not integral"))
                })?;
                trow.push(
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|&(_, c)| c != 0)
                        .collect(),
                );
            }
            terms.push(trow);
        }
        Ok(IntegerTable { n, phi, powers, terms })
    }

    /// `Σ_i weight(i)·a_i·conj(b_i)` over `i < len`, reduced to the power basis.
    fn hermitian(
        &self,
        a: impl Fn(usize) -> (usize, usize),
        b: impl Fn(usize) -> (usize, usize),
        len: usize,
        weight: impl Fn(usize) -> i128,
    ) -> PowerBasisSum {
        let n = self.n;
        let mut acc = vec![0i128; n];
        for i in 0..len {
            let (ar, am) = a(i);
            let (br, bm) = b(i);
            let w = weight(i);
            for &(t, x) in &self.terms[ar][am] {
                for &(u, y) in &self.terms[br][bm] {
                    acc[(t + n - u) % n] += w * x as i128 * y as i128;
                }
            }
        }
        let mut out = vec![0i128; self.phi];
        for (t, &c) in acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&self.powers[t]) {
                *o += c * p as i128;
            }
        }
        PowerBasisSum(out)
    }
}
