use rayon::prelude::*;

use crate::classes::ClassData;
use crate::group::GroupData;
use crate::perm::Point;

/// Class multiplication coefficients for a fixed class `C_i`:
/// `entries[j][m] = #{(x, y) ∈ C_i × C_j : x·y = z_m}` for the representative
/// `z_m` of class `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMatrix {
    pub class_index: usize,
    pub entries: Vec<Vec<u64>>,
}

impl ClassMatrix {
    /// Each `x ∈ C_i` pairs with exactly one `y = x⁻¹ z_m`, so this walks
    /// `x⁻¹` over the inverse class and looks up the class of `x⁻¹ z_m`.
    pub fn compute(g: &GroupData, c: &ClassData, i: usize) -> Self {
        let k = c.class_count();
        let inv_class = c.inverse_class(i) as u32;
        let inverses: Vec<usize> = c
            .class_of
            .iter()
            .enumerate()
            .filter(|&(_, &cl)| cl == inv_class)
            .map(|(x, _)| x)
            .collect();
        let base = g.base();
        let columns: Vec<Vec<u64>> = (0..k)
            .into_par_iter()
            .map(|m| {
                let z = &c.reps[m];
                let mut col = vec![0u64; k];
                let mut key: Vec<Point> = vec![0; base.len()];
                for &w in &inverses {
                    let ws = g.images(w);
                    for (slot, &b) in key.iter_mut().zip(base) {
                        *slot = z.apply(ws[b as usize]);
                    }
                    let y = g.index_of_base_images(&key).expect("product lies in group");
                    col[c.class_of[y] as usize] += 1;
                }
                col
            })
            .collect();
        let mut entries = vec![vec![0u64; k]; k];
        for (m, col) in columns.iter().enumerate() {
            for (j, &v) in col.iter().enumerate() {
                entries[j][m] = v;
            }
        }
        ClassMatrix {
            class_index: i,
            entries,
        }
    }

    pub fn reduce_mod(&self, p: u64) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&v| v % p).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;

    fn setup(text: &str) -> (GroupData, ClassData) {
        let g = PermGroup::parse(text).unwrap().enumerate(1 << 16).unwrap();
        let c = ClassData::compute(&g);
        (g, c)
    }

    /// Direct count over all pairs.
    fn brute_force(g: &GroupData, c: &ClassData, i: usize) -> Vec<Vec<u64>> {
        let k = c.class_count();
        let mut out = vec![vec![0u64; k]; k];
        for x in 0..g.order() {
            if c.class_of[x] as usize != i {
                continue;
            }
            for y in 0..g.order() {
                let prod = g.element(x).then(&g.element(y));
                for m in 0..k {
                    if prod == c.reps[m] {
                        out[c.class_of[y] as usize][m] += 1;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn trivial_group() {
        let (g, c) = setup("degree 1\n");
        assert_eq!(ClassMatrix::compute(&g, &c, 0).entries, vec![vec![1]]);
    }

    #[test]
    fn c2_involution_class() {
        let (g, c) = setup("degree 2\n(1 2)\n");
        let m = ClassMatrix::compute(&g, &c, 1);
        assert_eq!(m.entries, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn matches_brute_force_on_s4() {
        let (g, c) = setup("degree 4\n(1 2 3 4)\n(1 2)\n");
        for i in 0..c.class_count() {
            assert_eq!(ClassMatrix::compute(&g, &c, i).entries, brute_force(&g, &c, i));
        }
    }

    #[test]
    fn column_sums_equal_class_size_a5() {
        let (g, c) = setup("degree 5\n(1 2 3 4 5)\n(1 2 3)\n");
        let k = c.class_count();
        for i in 0..k {
            let m = ClassMatrix::compute(&g, &c, i);
            for col in 0..k {
                let s: u64 = (0..k).map(|j| m.entries[j][col]).sum();
                assert_eq!(s as usize, c.sizes[i]);
            }
            for j in 0..k {
                let expect = if j == c.inverse_class(i) { c.sizes[i] as u64 } else { 0 };
                assert_eq!(m.entries[j][0], expect);
            }
        }
    }
}
