//! Permutation groups: the group file format, order via a stabilizer chain,
//! and dense enumeration of elements.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::bsgs::StabChain;
use crate::error::Error;
use crate::perm::{parse_cycles, Permutation, Point};

pub const DEFAULT_ELEMENT_CAP: usize = 1 << 21;

/// Generators plus a base and strong generating set. Nothing is enumerated yet.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        let chain = StabChain::new(degree, &generators);
        PermGroup {
            degree,
            generators,
            chain,
        }
    }

    /// Parses a group file: `degree <n>` then one generator per line in
    /// 1-based cycle notation. Blank lines and `#` comment lines are skipped.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut degree: Option<usize> = None;
        let mut generators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: String| Error::MalformedGroupFile {
                line: lineno + 1,
                reason,
            };
            match degree {
                None => {
                    let n = line
                        .strip_prefix("degree")
                        .ok_or_else(|| bad("expected 'degree <n>'".into()))?
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| bad(format!("bad degree: {e}")))?;
                    if n == 0 {
                        return Err(bad("degree must be positive".into()));
                    }
                    if n > Point::MAX as usize {
                        return Err(bad("degree too large".into()));
                    }
                    degree = Some(n);
                }
                Some(n) => generators.push(parse_cycles(line, n)?),
            }
        }
        let degree = degree.ok_or(Error::MalformedGroupFile {
            line: 1,
            reason: "missing 'degree <n>' line".into(),
        })?;
        Ok(PermGroup::new(degree, generators))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// The derived subgroup is the normal closure of the commutators of
    /// generator pairs; the group is perfect iff that closure has full order.
    pub fn is_perfect(&self) -> bool {
        let mut dgens: Vec<Permutation> = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    dgens.push(c);
                }
            }
        }
        let mut derived = StabChain::new(self.degree, &dgens);
        loop {
            let mut grew = false;
            'scan: for d in derived.strong_generators().to_vec() {
                for g in &self.generators {
                    let c = d.conjugate_by(g);
                    if !derived.contains(&c) {
                        dgens.push(c);
                        derived = StabChain::new(self.degree, &dgens);
                        grew = true;
                        break 'scan;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        derived.order() == self.order()
    }

    /// Breadth-first closure from the identity; each new layer is sorted by
    /// image sequence before indices are assigned.
    pub fn enumerate(&self, cap: usize) -> Result<GroupData, Error> {
        let order = self.order();
        let n = match order.to_usize() {
            Some(n) if n <= cap => n,
            _ => {
                return Err(Error::GroupTooLarge {
                    order: order.to_string(),
                    cap,
                })
            }
        };
        let degree = self.degree;
        let base = self.chain.base();
        let mut data: Vec<Point> = Vec::with_capacity(n * degree);
        let mut index: HashMap<Vec<Point>, u32> = HashMap::with_capacity(n);

        let key_of = |imgs: &[Point]| -> Vec<Point> {
            base.iter().map(|&b| imgs[b as usize]).collect()
        };

        let id: Vec<Point> = (0..degree as Point).collect();
        index.insert(key_of(&id), 0);
        data.extend_from_slice(&id);
        let mut frontier: Vec<usize> = vec![0];
        let mut buf = vec![0 as Point; degree];

        while !frontier.is_empty() {
            let mut layer: Vec<Vec<Point>> = Vec::new();
            let mut layer_keys: HashSet<Vec<Point>> = HashSet::new();
            for &x in &frontier {
                for g in &self.generators {
                    let xs = &data[x * degree..(x + 1) * degree];
                    for (slot, &p) in buf.iter_mut().zip(xs) {
                        *slot = g.apply(p);
                    }
                    let key = key_of(&buf);
                    if index.contains_key(&key) || layer_keys.contains(&key) {
                        continue;
                    }
                    layer_keys.insert(key);
                    layer.push(buf.clone());
                }
            }
            layer.sort_unstable();
            frontier.clear();
            for imgs in layer {
                let idx = data.len() / degree;
                index.insert(key_of(&imgs), idx as u32);
                data.extend_from_slice(&imgs);
                frontier.push(idx);
            }
        }
        // the stabilizer chain and the closure must agree
        assert_eq!(data.len() / degree, n, "enumeration disagrees with BSGS order");
        Ok(GroupData {
            group: self.clone(),
            base,
            data,
            index,
        })
    }
}

/// A permutation group with every element enumerated in canonical order and
/// an index keyed by images of the base points.
#[derive(Debug)]
pub struct GroupData {
    group: PermGroup,
    base: Vec<Point>,
    data: Vec<Point>,
    index: HashMap<Vec<Point>, u32>,
}

impl GroupData {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.group.generators
    }

    pub fn order(&self) -> usize {
        self.data.len() / self.group.degree
    }

    pub fn base(&self) -> &[Point] {
        &self.base
    }

    pub fn images(&self, i: usize) -> &[Point] {
        let d = self.group.degree;
        &self.data[i * d..(i + 1) * d]
    }

    pub fn element(&self, i: usize) -> Permutation {
        Permutation::from_images(self.images(i).to_vec()).expect("stored element is a bijection")
    }

    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// Index of the element whose images of the base points are `key`.
    #[inline]
    pub fn index_of_base_images(&self, key: &[Point]) -> Option<usize> {
        self.index.get(key).map(|&i| i as usize)
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.degree() {
            return None;
        }
        let key: Vec<Point> = self.base.iter().map(|&b| g.apply(b)).collect();
        let i = self.index_of_base_images(&key)?;
        (self.images(i) == g.images()).then_some(i)
    }

    pub fn is_perfect(&self) -> bool {
        self.group.is_perfect()
    }
}
