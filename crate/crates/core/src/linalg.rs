//! Exact dense linear algebra over Q and Z for the tiny matrices of fans.

use num_integer::Integer;
use num_rational::Ratio;

pub type Q = Ratio<i64>;
pub type QMatrix = Vec<Vec<Q>>;

pub fn to_q(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x)).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(r, piv);
        let inv = Q::from_integer(1) / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && m[i][c] != Q::from_integer(0) {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    rref(&mut to_q(m)).len()
}

/// Basis of {x : m x = 0}.
pub fn kernel(m: &QMatrix, cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::from_integer(0); cols];
            v[f] = Q::from_integer(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f];
            }
            v
        })
        .collect()
}

/// Solves a x = b for square invertible a.
pub fn solve(a: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut aug: QMatrix = a.iter().zip(b).map(|(r, &y)| r.iter().copied().chain([y]).collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.iter().map(|r| r[n]).collect())
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut aug: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().copied().chain((0..n).map(|j| Q::from_integer((i == j) as i64))).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det_i64(&minor)
        })
        .sum()
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// gcd of the maximal minors of a k×n integer matrix (k ≤ n); 0 if rank < k.
pub fn minor_gcd(rows: &[Vec<i64>]) -> i64 {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    subsets(n, k)
        .iter()
        .map(|cols| {
            let sub: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
            det_i64(&sub).abs()
        })
        .fold(0, |g, d| g.gcd(&d))
}

/// Scales a rational vector to a primitive integer vector.
pub fn primitive(v: &[Q]) -> Vec<i64> {
    let l = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * Q::from_integer(l)).to_integer()).collect();
    let g = gcd_vec(&ints);
    if g == 0 {
        ints
    } else {
        ints.iter().map(|x| x / g).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let m = vec![vec![1, 2], vec![3, 4]];
        assert_eq!(det_i64(&m), -2);
        let inv = inverse(&to_q(&m)).unwrap();
        assert_eq!(inv[0][0], Q::from_integer(-2));
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        let k = kernel(&to_q(&[vec![1, 1, 1]]), 3);
        assert_eq!(k.len(), 2);
        assert_eq!(minor_gcd(&[vec![1, 0], vec![1, 2]]), 2);
        assert_eq!(minor_gcd(&[vec![2, 3, 0]]), 1);
        assert_eq!(primitive(&[Q::new(1, 2), Q::new(-3, 4)]), vec![2, -3]);
        assert_eq!(k_subsets(4, 2).len(), 6);
    }
}
