//! Length-two Witt vectors in Witt coordinates.
//!
//! `(a0, a1)` stands for `[a0] + V[a1]`. With the carry
//! `c(a, b) = Σ_{0<i<p} (C(p,i)/p) a^i b^{p-i}` the ring laws are
//!
//! ```text
//! (a0, a1) + (b0, b1) = (a0 + b0, a1 + b1 - c(a0, b0))
//! (a0, a1) * (b0, b1) = (a0 b0, a0^p b1 + b0^p a1)
//! ```
//!
//! The same formulas give W_2 of a polynomial ring ([`WittVectorPoly`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::{Coeff, FqPoly, Poly};

pub type W2Poly = Poly<WittScalar2>;

/// Rings of characteristic p on which Witt coordinates are built.
pub trait WittBase: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    fn char_p(&self) -> u32;
    fn times(&self, n: u64) -> Self;
    fn zero_like(&self) -> Self;
}

impl WittBase for Fq {
    fn char_p(&self) -> u32 {
        self.field().p()
    }
    fn times(&self, n: u64) -> Fq {
        *self * self.field().int((n % self.field().p() as u64) as i64)
    }
    fn zero_like(&self) -> Fq {
        self.field().zero()
    }
}

impl WittBase for FqPoly {
    fn char_p(&self) -> u32 {
        self.p()
    }
    fn times(&self, n: u64) -> FqPoly {
        self.integer_multiple((n % self.p() as u64) as i64)
    }
    fn zero_like(&self) -> FqPoly {
        FqPoly::zero(self.field(), self.vars().clone())
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

// [a, a^2, ..., a^n]
fn powers<T: WittBase>(a: &T, n: u32) -> Vec<T> {
    let mut out = vec![a.clone()];
    for _ in 1..n {
        let next = out.last().unwrap().clone() * a.clone();
        out.push(next);
    }
    out
}

pub fn carry<T: WittBase>(a: &T, b: &T) -> T {
    let p = a.char_p();
    let pa = powers(a, p);
    let pb = powers(b, p);
    let mut acc = a.zero_like();
    for i in 1..p {
        let c = binom(p as u64, i as u64) / p as u64;
        let t = pa[i as usize - 1].clone() * pb[(p - i) as usize - 1].clone();
        acc = acc + t.times(c);
    }
    acc
}

fn pth<T: WittBase>(a: &T) -> T {
    powers(a, a.char_p()).pop().unwrap()
}

pub fn witt_add<T: WittBase>(a: (&T, &T), b: (&T, &T)) -> (T, T) {
    (a.0.clone() + b.0.clone(), a.1.clone() + b.1.clone() - carry(a.0, b.0))
}

pub fn witt_neg<T: WittBase>(a: (&T, &T)) -> (T, T) {
    let x0 = -a.0.clone();
    let x1 = -a.1.clone() + carry(&x0, a.0);
    (x0, x1)
}

pub fn witt_mul<T: WittBase>(a: (&T, &T), b: (&T, &T)) -> (T, T) {
    (a.0.clone() * b.0.clone(), pth(a.0) * b.1.clone() + pth(b.0) * a.1.clone())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct WittScalar2 {
    pub a0: Fq,
    pub a1: Fq,
}

impl WittScalar2 {
    pub fn new(a0: Fq, a1: Fq) -> Result<Self> {
        if !a0.same_field(&a1) {
            return Err(Error::FieldMismatch(a0.field().order(), a1.field().order()));
        }
        Ok(WittScalar2 { a0, a1 })
    }
    pub fn teichmuller(c: Fq) -> Self {
        WittScalar2 { a0: c, a1: c.field().zero() }
    }
    pub fn field(&self) -> &'static FiniteField {
        self.a0.field()
    }
    pub fn p(&self) -> u32 {
        self.field().p()
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        self.check(&o)?;
        Ok(self + o)
    }
    pub fn checked_mul(self, o: Self) -> Result<Self> {
        self.check(&o)?;
        Ok(self * o)
    }
    fn check(&self, o: &Self) -> Result<()> {
        if self.field().order() != o.field().order() {
            return Err(Error::FieldMismatch(self.field().order(), o.field().order()));
        }
        Ok(())
    }

    /// σ(a0, a1) = (a0^p, a1^p)
    pub fn sigma(self) -> Self {
        WittScalar2 { a0: self.a0.frobenius(), a1: self.a1.frobenius() }
    }

    /// p·(a0, a1) = (0, a0^p)
    pub fn times_p(self) -> Self {
        WittScalar2 { a0: self.field().zero(), a1: self.a0.frobenius() }
    }

    /// Image in Z/p² when q = p, via `[a0] + V[a1] ↦ a0^p + p·a1`.
    pub fn to_zp2(self) -> Option<u64> {
        let f = self.field();
        if f.degree() != 1 {
            return None;
        }
        let p = f.p() as u64;
        let m = p * p;
        let a0 = self.a0.value() as u64;
        let t = (0..p).fold(1u64, |acc, _| acc * a0 % m);
        Some((t + p * self.a1.value() as u64) % m)
    }

    /// Inverse of [`to_zp2`](Self::to_zp2).
    pub fn from_zp2(field: &'static FiniteField, n: i64) -> Self {
        let p = field.p() as i64;
        let m = p * p;
        let n = n.rem_euclid(m);
        let a0 = n % p;
        let t = (0..p).fold(1i64, |acc, _| acc * a0 % m);
        let a1 = (n - t).rem_euclid(m) / p;
        WittScalar2 { a0: field.int(a0), a1: field.int(a1) }
    }
}

impl Add for WittScalar2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a0, a1) = witt_add((&self.a0, &self.a1), (&o.a0, &o.a1));
        WittScalar2 { a0, a1 }
    }
}
impl Neg for WittScalar2 {
    type Output = Self;
    fn neg(self) -> Self {
        let (a0, a1) = witt_neg((&self.a0, &self.a1));
        WittScalar2 { a0, a1 }
    }
}
impl Sub for WittScalar2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}
impl Mul for WittScalar2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a0, a1) = witt_mul((&self.a0, &self.a1), (&o.a0, &o.a1));
        WittScalar2 { a0, a1 }
    }
}

impl fmt::Debug for WittScalar2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a0, self.a1)
    }
}
impl fmt::Display for WittScalar2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a0, self.a1)
    }
}

impl Coeff for WittScalar2 {
    fn zero(field: &'static FiniteField) -> Self {
        WittScalar2 { a0: field.zero(), a1: field.zero() }
    }
    fn one(field: &'static FiniteField) -> Self {
        WittScalar2 { a0: field.one(), a1: field.zero() }
    }
    fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }
    fn from_int(field: &'static FiniteField, n: i64) -> Self {
        WittScalar2::from_zp2(field, n)
    }
    fn frobenius(&self) -> Self {
        self.sigma()
    }
}

/// Coefficientwise Teichmüller lift F_q[x] -> W_2(F_q)[x].
pub fn teichmuller(g: &FqPoly) -> W2Poly {
    g.map_coeffs(|c| WittScalar2::teichmuller(*c))
}

/// Reduction W_2(F_q)[x] -> F_q[x]; a ring homomorphism.
pub fn reduce(g: &W2Poly) -> FqPoly {
    g.map_coeffs(|c| c.a0)
}

/// p·g̃ for any lift g̃ of g.
pub fn p_times(g: &FqPoly) -> W2Poly {
    g.map_coeffs(|c| WittScalar2 { a0: c.field().zero(), a1: c.frobenius() })
}

/// The h with p·h̃ = g, if g lies in p·W_2(F_q)[x].
pub fn div_p(g: &W2Poly) -> Option<FqPoly> {
    if g.terms().any(|(_, c)| !c.a0.is_zero()) {
        return None;
    }
    Some(g.map_coeffs(|c| c.a1.frobenius_inv()))
}

/// An element of W_2(F_q[x]) in Witt coordinates.
#[derive(Clone, PartialEq)]
pub struct WittVectorPoly {
    pub x0: FqPoly,
    pub x1: FqPoly,
}

impl WittVectorPoly {
    pub fn new(x0: FqPoly, x1: FqPoly) -> Result<Self> {
        x0.check_ring(&x1)?;
        Ok(WittVectorPoly { x0, x1 })
    }
    /// σ(g0, g1) = (g0^p, g1^p)
    pub fn sigma(&self) -> Result<Self> {
        Ok(WittVectorPoly { x0: self.x0.pth_power()?, x1: self.x1.pth_power()? })
    }
}

impl Add for WittVectorPoly {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (x0, x1) = witt_add((&self.x0, &self.x1), (&o.x0, &o.x1));
        WittVectorPoly { x0, x1 }
    }
}
impl Neg for WittVectorPoly {
    type Output = Self;
    fn neg(self) -> Self {
        let (x0, x1) = witt_neg((&self.x0, &self.x1));
        WittVectorPoly { x0, x1 }
    }
}
impl Sub for WittVectorPoly {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}
impl Mul for WittVectorPoly {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (x0, x1) = witt_mul((&self.x0, &self.x1), (&o.x0, &o.x1));
        WittVectorPoly { x0, x1 }
    }
}

impl fmt::Debug for WittVectorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x0, self.x1)
    }
}
