//! Deterministic Schreier–Sims: base and strong generating set of a
//! permutation group, with explicit transversals.

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::{Permutation, Point};

#[derive(Clone, Debug)]
struct Level {
    point: Point,
    orbit: Vec<Point>,
    /// `reps[β] = u` with `point^u = β`, stored with its inverse.
    reps: Vec<Option<(Permutation, Permutation)>>,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong_gens: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            strong_gens: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens {
            if g.is_identity() || chain.strong_gens.contains(g) {
                continue;
            }
            chain.strong_gens.push(g.clone());
            if chain.levels.iter().all(|l| g.apply(l.point) == l.point) {
                let p = g.first_moved_point().unwrap();
                chain.levels.push(Level::empty(p, degree));
            }
        }
        chain.rebuild_levels(0, chain.levels.len());
        chain.complete();
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g, 0).0.is_identity()
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed all of them).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.point);
            match &level.reps[beta as usize] {
                None => return (h, i),
                Some((_, inv)) => h = h.then(inv),
            }
        }
        (h, self.levels.len())
    }

    fn level_gens(&self, i: usize) -> Vec<&Permutation> {
        let fixed: Vec<Point> = self.levels[..i].iter().map(|l| l.point).collect();
        self.strong_gens
            .iter()
            .filter(|g| fixed.iter().all(|&b| g.apply(b) == b))
            .collect()
    }

    fn rebuild_levels(&mut self, from: usize, to: usize) {
        for i in from..to {
            let gens: Vec<Permutation> = self.level_gens(i).into_iter().cloned().collect();
            let point = self.levels[i].point;
            self.levels[i] = Level::build(point, self.degree, &gens);
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let gens: Vec<Permutation> = self.level_gens(lvl).into_iter().cloned().collect();
            let orbit = self.levels[lvl].orbit.clone();
            for &beta in &orbit {
                for s in &gens {
                    let level = &self.levels[lvl];
                    let (u_beta, _) = level.reps[beta as usize].as_ref().unwrap();
                    let gamma = s.apply(beta);
                    let (_, u_gamma_inv) = level.reps[gamma as usize].as_ref().unwrap();
                    let y = u_beta.then(s).then(u_gamma_inv);
                    if y.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&y, lvl + 1);
                    if h.is_identity() {
                        continue;
                    }
                    if j == self.levels.len() {
                        let p = h.first_moved_point().unwrap();
                        self.levels.push(Level::empty(p, self.degree));
                    }
                    self.strong_gens.push(h);
                    self.rebuild_levels(lvl + 1, j + 1);
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }
}

impl Level {
    fn empty(point: Point, degree: usize) -> Self {
        let mut reps = vec![None; degree];
        let id = Permutation::identity(degree);
        reps[point as usize] = Some((id.clone(), id));
        Level {
            point,
            orbit: vec![point],
            reps,
        }
    }

    fn build(point: Point, degree: usize, gens: &[Permutation]) -> Self {
        let mut level = Level::empty(point, degree);
        let mut head = 0;
        while head < level.orbit.len() {
            let beta = level.orbit[head];
            head += 1;
            for s in gens {
                let gamma = s.apply(beta);
                if level.reps[gamma as usize].is_none() {
                    let u = level.reps[beta as usize].as_ref().unwrap().0.then(s);
                    let inv = u.inverse();
                    level.reps[gamma as usize] = Some((u, inv));
                    level.orbit.push(gamma);
                }
            }
        }
        level
    }
}
