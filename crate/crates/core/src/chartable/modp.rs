//! Dense linear algebra over GF(p), p < 2^32.

use crate::arith::inv_mod;

pub type Matrix = Vec<Vec<u64>>;

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

/// Row-reduces in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, p: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][col], p);
        for v in m[r].iter_mut() {
            *v = mul(*v, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                if pv != 0 {
                    *v = sub(*v, mul(f, pv, p), p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}`.
pub fn kernel(m: &Matrix, p: u64) -> Vec<Vec<u64>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut red = m.clone();
    let pivots = rref(&mut red, p);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = sub(0, row[free], p);
        }
        out.push(v);
    }
    out
}

/// Characteristic polynomial `det(xI - M)`, ascending coefficients, via
/// reduction to Hessenberg form.
pub fn charpoly(m: &Matrix, p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let target = col + 1;
        let Some(i) = (target..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if i != target {
            h.swap(i, target);
            for row in h.iter_mut() {
                row.swap(i, target);
            }
        }
        let inv = inv_mod(h[target][col], p);
        for i in target + 1..n {
            let u = mul(h[i][col], inv, p);
            if u == 0 {
                continue;
            }
            // row_i -= u·row_target, then col_target += u·col_i
            for c in 0..n {
                let t = mul(u, h[target][c], p);
                h[i][c] = sub(h[i][c], t, p);
            }
            for row in h.iter_mut() {
                let t = mul(u, row[i], p);
                row[target] = (row[target] + t) % p;
            }
        }
    }
    // polys[m] is the char poly of the leading m×m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = sub(next[d], mul(c, h[m][m], p), p);
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = mul(prod, h[i + 1][i], p);
            let coef = mul(h[i][m], prod, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub(next[d], mul(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul(acc, x, p) + c) % p)
}

/// All roots in GF(p) by exhaustive evaluation, ascending.
pub fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval(poly, x, p) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(m: &Matrix, p: u64) -> u64 {
        // Laplace expansion; only for tiny test matrices
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut acc = 0;
        for c in 0..n {
            let minor: Matrix = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                .collect();
            let term = mul(m[0][c], det(&minor, p), p);
            acc = if c % 2 == 0 { (acc + term) % p } else { sub(acc, term, p) };
        }
        acc
    }

    #[test]
    fn charpoly_matches_determinant() {
        let p = 31;
        let m: Matrix = vec![
            vec![3, 1, 4, 1],
            vec![5, 9, 2, 6],
            vec![5, 3, 5, 8],
            vec![9, 7, 9, 3],
        ];
        let cp = charpoly(&m, p);
        assert_eq!(cp.len(), 5);
        assert_eq!(cp[4], 1);
        for x in 0..p {
            let shifted: Matrix = (0..4)
                .map(|i| (0..4).map(|j| {
                    let d = if i == j { x } else { 0 };
                    sub(d, m[i][j], p)
                }).collect())
                .collect();
            assert_eq!(eval(&cp, x, p), det(&shifted, p), "x={x}");
        }
    }

    #[test]
    fn charpoly_with_zero_subdiagonal() {
        let p = 7;
        let m: Matrix = vec![vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 2]];
        let cp = charpoly(&m, p);
        assert_eq!(roots(&cp, p), vec![2, 3]);
    }

    #[test]
    fn kernel_dimension() {
        let p = 7;
        let m: Matrix = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = kernel(&m, p);
        assert_eq!(k.len(), 2);
        for v in k {
            for row in &m {
                let s = row.iter().zip(&v).fold(0, |a, (&x, &y)| (a + x * y) % p);
                assert_eq!(s, 0);
            }
        }
    }
}
