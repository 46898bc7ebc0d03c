//! Permutations of `{0, …, n-1}` stored as image arrays.
//!
//! Products follow the right-action convention: `a.then(&b)` (also `&a * &b`)
//! applies `a` first, then `b`, so `i^(ab) = (i^a)^b`.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::Error;

pub type Point = u32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image array, checking that it is a bijection.
    pub fn from_images(images: Vec<Point>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            let p = p as usize;
            if p >= n {
                return Err(Error::PointOutOfRange { point: p + 1, degree: n });
            }
            if seen[p] {
                return Err(Error::DuplicatePoint { point: p + 1 });
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<Point>]) -> Result<Self, Error> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                let p = p as usize;
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p + 1, degree });
                }
                if used[p] {
                    return Err(Error::DuplicatePoint { point: p + 1 });
                }
                used[p] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: Point) -> Point {
        self.images[point as usize]
    }

    #[inline]
    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as Point == p)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as Point;
        }
        Permutation { images }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    pub fn first_moved_point(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &p)| i as Point != p)
            .map(|(i, _)| i as Point)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as Point);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

/// Cycle notation with 1-based points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

/// Parses one generator in 1-based cycle notation, e.g. `(1 2 3)(4 5)` or `()`.
/// Commas between points are accepted.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, Error> {
    let malformed = |msg: &str| Error::MalformedCycle {
        text: text.to_string(),
        reason: msg.to_string(),
    };
    let mut cycles: Vec<Vec<Point>> = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(malformed("empty generator"));
    }
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| malformed("expected '('"))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| malformed("unterminated cycle"))?;
        let body = &body_start[..close];
        if body.contains('(') {
            return Err(malformed("nested '('"));
        }
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| malformed(&format!("bad point '{tok}'")))?;
            if p == 0 || p > degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
            cycle.push((p - 1) as Point);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        } else if cycle.len() == 1 && !body.trim().is_empty() {
            // a 1-cycle is the identity on that point; still reject duplicates
            cycles.push(cycle);
        }
        rest = body_start[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}
