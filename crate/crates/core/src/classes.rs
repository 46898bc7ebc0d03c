//! Conjugacy classes, centralizer orders, power maps and the exponent.

use std::fmt::Write as _;

use num_integer::Integer;

use crate::group::GroupData;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub group_order: usize,
    /// Representative of each class: its smallest element index.
    pub rep_indices: Vec<usize>,
    pub reps: Vec<Permutation>,
    pub sizes: Vec<usize>,
    pub element_orders: Vec<u64>,
    pub centralizer_orders: Vec<usize>,
    /// Class index of every element, by element index.
    pub class_of: Vec<u32>,
    pub exponent: u64,
    /// `power_maps[l][i]` is the class of `reps[i]^l`, for `0 <= l < exponent`.
    pub power_maps: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn compute(g: &GroupData) -> Self {
        let n = g.order();
        let degree = g.degree();
        let gens = g.generators();
        let gen_inv: Vec<Permutation> = gens.iter().map(|s| s.inverse()).collect();

        const UNSET: u32 = u32::MAX;
        let mut raw_class = vec![UNSET; n];
        let mut found: Vec<(usize, usize)> = Vec::new(); // (min element, size)
        let mut buf = vec![0; degree];
        let mut key = vec![0; g.base().len()];
        for start in 0..n {
            if raw_class[start] != UNSET {
                continue;
            }
            let id = found.len() as u32;
            raw_class[start] = id;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                let xs = g.images(x);
                for (s, s_inv) in gens.iter().zip(&gen_inv) {
                    // s⁻¹ x s
                    for (p, slot) in buf.iter_mut().enumerate() {
                        *slot = s.apply(xs[s_inv.apply(p as u32) as usize]);
                    }
                    for (k, &b) in key.iter_mut().zip(g.base()) {
                        *k = buf[b as usize];
                    }
                    let y = g.index_of_base_images(&key).expect("conjugate lies in group");
                    if raw_class[y] == UNSET {
                        raw_class[y] = id;
                        orbit.push(y);
                    }
                }
            }
            found.push((start, orbit.len()));
        }

        let raw_orders: Vec<u64> = found.iter().map(|&(rep, _)| g.element(rep).order()).collect();
        let mut perm: Vec<usize> = (0..found.len()).collect();
        perm.sort_by_key(|&c| (raw_orders[c], found[c].1, found[c].0));
        let mut new_id = vec![0u32; found.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_id[old] = new as u32;
        }
        let class_of: Vec<u32> = raw_class.iter().map(|&c| new_id[c as usize]).collect();
        let rep_indices: Vec<usize> = perm.iter().map(|&c| found[c].0).collect();
        let reps: Vec<Permutation> = rep_indices.iter().map(|&i| g.element(i)).collect();
        let sizes: Vec<usize> = perm.iter().map(|&c| found[c].1).collect();
        let element_orders: Vec<u64> = perm.iter().map(|&c| raw_orders[c]).collect();
        let centralizer_orders = sizes.iter().map(|&s| n / s).collect();
        let exponent = element_orders.iter().fold(1u64, |a, &o| a.lcm(&o));

        let mut power_maps = vec![vec![0usize; reps.len()]; exponent as usize];
        for (i, rep) in reps.iter().enumerate() {
            let mut p = Permutation::identity(degree);
            for row in power_maps.iter_mut() {
                let idx = g.index_of(&p).expect("power lies in group");
                row[i] = class_of[idx] as usize;
                p = p.then(rep);
            }
        }

        ClassData {
            group_order: n,
            rep_indices,
            reps,
            sizes,
            element_orders,
            centralizer_orders,
            class_of,
            exponent,
            power_maps,
        }
    }

    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// Power map for any exponent, reduced modulo the group exponent.
    pub fn power_map(&self, l: u64) -> &[usize] {
        &self.power_maps[(l % self.exponent) as usize]
    }

    /// Class containing the inverses of class `i`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.power_map(self.exponent - 1)[i]
    }

    pub fn class_of_element(&self, g: &GroupData, x: &Permutation) -> Option<usize> {
        g.index_of(x).map(|i| self.class_of[i] as usize)
    }

    /// Member element indices of every class.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(x as u32);
        }
        out
    }

    /// Stable text dump, used to check determinism.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        writeln!(s, "order {}", self.group_order).unwrap();
        writeln!(s, "classes {}", self.class_count()).unwrap();
        writeln!(s, "exponent {}", self.exponent).unwrap();
        for i in 0..self.class_count() {
            writeln!(
                s,
                "class {} size {} elemorder {} centralizer {} rep {}",
                i, self.sizes[i], self.element_orders[i], self.centralizer_orders[i], self.reps[i]
            )
            .unwrap();
        }
        for (l, row) in self.power_maps.iter().enumerate() {
            let entries: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(s, "power {} : {}", l, entries.join(" ")).unwrap();
        }
        let mut h: u64 = 0xcbf29ce484222325;
        for &c in &self.class_of {
            h = (h ^ c as u64).wrapping_mul(0x100000001b3);
        }
        writeln!(s, "class_of fnv {:016x}", h).unwrap();
        s
    }
}
