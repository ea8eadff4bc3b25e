//! Dense univariate polynomials and small dense matrices over F_q.

use std::fmt;

use crate::field::{FiniteField, Fq};

/// Coefficients from the constant term up, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: &'static FiniteField,
    c: Vec<Fq>,
}

impl UPoly {
    pub fn new(field: &'static FiniteField, mut c: Vec<Fq>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { field, c }
    }

    pub fn zero(field: &'static FiniteField) -> Self {
        UPoly { field, c: vec![] }
    }
    pub fn one(field: &'static FiniteField) -> Self {
        Self::constant(field.one())
    }
    pub fn constant(c: Fq) -> Self {
        Self::new(c.field(), vec![c])
    }
    pub fn x(field: &'static FiniteField) -> Self {
        Self::monomial(field.one(), 1)
    }
    pub fn monomial(c: Fq, e: usize) -> Self {
        let mut v = vec![c.field().zero(); e + 1];
        v[e] = c;
        Self::new(c.field(), v)
    }
    pub fn from_ints(field: &'static FiniteField, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&x| field.int(x)).collect())
    }

    pub fn field(&self) -> &'static FiniteField {
        self.field
    }
    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or(self.field.zero())
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lead(&self) -> Fq {
        self.c.last().copied().unwrap_or(self.field.zero())
    }
    /// Largest k with x^k dividing self; None for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
    pub fn neg(&self) -> Self {
        Self::new(self.field, self.c.iter().map(|&x| -x).collect())
    }
    pub fn scale(&self, k: Fq) -> Self {
        Self::new(self.field, self.c.iter().map(|&x| x * k).collect())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field);
        }
        let mut v = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(self.field, v)
    }
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend_from_slice(&self.c);
        Self::new(self.field, v)
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] * inv;
            q[k] = c;
            if !c.is_zero() {
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] -= c * b;
                }
            }
        }
        r.truncate(dd);
        (Self::new(self.field, q), Self::new(self.field, r))
    }
    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(i) => self.scale(i),
            None => self.clone(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: Fq) -> Fq {
        self.c.iter().rev().fold(self.field.zero(), |acc, &a| acc * x + a)
    }

    /// x^d f(1/x) for d ≥ deg f.
    pub fn reversed(&self, d: usize) -> Self {
        let mut v: Vec<Fq> = (0..=d).map(|i| self.coeff(i)).collect();
        v.reverse();
        Self::new(self.field, v)
    }

    /// Ben-Or irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let q = self.field.order() as u64;
        let x = Self::x(self.field);
        let mut h = x.clone();
        for _ in 0..n / 2 {
            h = h.pow_mod(q, &f);
            if f.gcd(&h.sub(&x)).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// The first monic irreducible of degree n in a fixed enumeration order.
    pub fn irreducible(field: &'static FiniteField, n: usize) -> Self {
        let q = field.order() as u64;
        let mut code: u64 = 0;
        loop {
            let mut c = Vec::with_capacity(n + 1);
            let mut k = code;
            for _ in 0..n {
                c.push(field.elem((k % q) as u32).unwrap());
                k /= q;
            }
            c.push(field.one());
            let f = Self::new(field, c);
            if f.is_irreducible() {
                return f;
            }
            code += 1;
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{c}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type FqMatrix = Vec<Vec<Fq>>;

pub fn identity(field: &'static FiniteField, n: usize) -> FqMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
}

pub fn mat_mul(a: &FqMatrix, b: &FqMatrix) -> FqMatrix {
    let f = a[0][0].field();
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n).map(|i| (0..m).map(|j| (0..k).fold(f.zero(), |acc, l| acc + a[i][l] * b[l][j])).collect()).collect()
}

pub fn mat_frobenius(a: &FqMatrix) -> FqMatrix {
    a.iter().map(|r| r.iter().map(|x| x.frobenius()).collect()).collect()
}

/// Row echelon form in place; returns pivot columns.
pub fn rref(m: &mut FqMatrix, cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &FqMatrix) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    rref(&mut m.clone(), cols).len()
}

/// Basis of the right kernel {x : m x = 0}.
pub fn kernel(m: &FqMatrix, field: &'static FiniteField, cols: usize) -> Vec<Vec<Fq>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f];
            }
            v
        })
        .collect()
}

pub fn is_invertible(m: &FqMatrix) -> bool {
    rank(m) == m.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let f = FiniteField::get(5).unwrap();
        let a = UPoly::from_ints(f, &[1, 2, 1]);
        let b = UPoly::from_ints(f, &[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UPoly::from_ints(f, &[2, 2])), b);
        assert_eq!(UPoly::from_ints(f, &[0, 0, 3]).valuation(), Some(2));
        assert_eq!(UPoly::from_ints(f, &[1, 2]).reversed(2), UPoly::from_ints(f, &[0, 2, 1]));
    }

    #[test]
    fn irreducibility() {
        let f2 = FiniteField::get(2).unwrap();
        assert!(UPoly::from_ints(f2, &[1, 1, 1]).is_irreducible());
        assert!(!UPoly::from_ints(f2, &[1, 0, 1]).is_irreducible());
        assert!(!UPoly::from_ints(f2, &[1, 1, 1, 1, 1, 1]).is_irreducible());
        let f3 = FiniteField::get(3).unwrap();
        for n in 1..8 {
            let g = UPoly::irreducible(f3, n);
            assert_eq!(g.degree(), Some(n));
            // no roots for n > 1
            if n > 1 {
                assert!(f3.elements().all(|x| !g.eval(x).is_zero()));
            }
        }
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2
        assert!(!UPoly::from_ints(f2, &[1, 0, 1, 0, 1]).is_irreducible());
    }

    #[test]
    fn kernels() {
        let f = FiniteField::get(3).unwrap();
        let m = vec![vec![f.int(1), f.int(2), f.int(0)], vec![f.int(2), f.int(1), f.int(0)]];
        let k = kernel(&m, f, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                assert!(row.iter().zip(v).fold(f.zero(), |a, (&x, &y)| a + x * y).is_zero());
            }
        }
    }
}
