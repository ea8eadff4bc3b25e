//! Sparse multivariate polynomials over F_q and over W_2(F_q).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};

pub type Monomial = Vec<u32>;

pub trait Coeff:
    Clone + PartialEq + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero(field: &'static FiniteField) -> Self;
    fn one(field: &'static FiniteField) -> Self;
    fn is_zero(&self) -> bool;
    /// Image of an integer under Z -> coefficient ring.
    fn from_int(field: &'static FiniteField, n: i64) -> Self;
    /// Frobenius of the coefficient ring (c ↦ c^p on F_q, σ on W_2).
    fn frobenius(&self) -> Self;
}

impl Coeff for Fq {
    fn zero(field: &'static FiniteField) -> Fq {
        field.zero()
    }
    fn one(field: &'static FiniteField) -> Fq {
        field.one()
    }
    fn is_zero(&self) -> bool {
        Fq::is_zero(self)
    }
    fn from_int(field: &'static FiniteField, n: i64) -> Fq {
        field.int(n)
    }
    fn frobenius(&self) -> Fq {
        Fq::frobenius(*self)
    }
}

#[derive(Clone)]
pub struct Poly<C> {
    field: &'static FiniteField,
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, C>,
}

pub type FqPoly = Poly<Fq>;

pub fn var_names(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect()
}

fn add_exps(a: &[u32], b: &[u32]) -> Result<Monomial> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow)).collect()
}

impl<C: Coeff> Poly<C> {
    pub fn zero(field: &'static FiniteField, vars: Arc<[String]>) -> Self {
        Poly { field, vars, terms: BTreeMap::new() }
    }
    pub fn constant(field: &'static FiniteField, vars: Arc<[String]>, c: C) -> Self {
        let n = vars.len();
        let mut p = Self::zero(field, vars);
        p.add_term(vec![0; n], c);
        p
    }
    pub fn one(field: &'static FiniteField, vars: Arc<[String]>) -> Self {
        Self::constant(field, vars, C::one(field))
    }
    pub fn var(field: &'static FiniteField, vars: Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(field, vars, e, C::one(field))
    }
    pub fn monomial(field: &'static FiniteField, vars: Arc<[String]>, e: Monomial, c: C) -> Self {
        assert_eq!(e.len(), vars.len(), "monomial arity");
        let mut p = Self::zero(field, vars);
        p.add_term(e, c);
        p
    }
    pub fn from_terms(
        field: &'static FiniteField,
        vars: Arc<[String]>,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut p = Self::zero(field, vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "monomial arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &'static FiniteField {
        self.field
    }
    pub fn p(&self) -> u32 {
        self.field.p()
    }
    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(|| C::zero(self.field))
    }
    /// Lex-leading term (x_0 > x_1 > ...).
    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.last_key_value()
    }
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn same_ring(&self, o: &Self) -> bool {
        std::ptr::eq(self.field, o.field) && self.vars == o.vars
    }
    pub fn check_ring(&self, o: &Self) -> Result<()> {
        if self.field.order() != o.field.order() {
            return Err(Error::FieldMismatch(self.field.order(), o.field.order()));
        }
        if self.vars != o.vars {
            return Err(Error::VariableMismatch(self.vars.to_vec(), o.vars.to_vec()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.field, self.vars.clone());
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let mut out = Self::zero(self.field, self.vars.clone());
        for (ea, a) in &self.terms {
            for (eb, b) in &o.terms {
                out.add_term(add_exps(ea, eb)?, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, mut e: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.field, self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        self.checked_pow(e).expect("exponent overflow")
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::<D>::zero(self.field, self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Applies the coefficient Frobenius termwise (exponents untouched).
    pub fn frobenius_coeffs(&self) -> Self {
        self.map_coeffs(|c| c.frobenius())
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.field, self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c.clone() * C::from_int(self.field, e[i] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars(), "point arity");
        let mut acc = C::zero(self.field);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes `images[i]` for the i-th variable; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly<C>]) -> Result<Poly<C>> {
        assert_eq!(images.len(), self.nvars(), "substitution arity");
        let (field, vars) = match images.first() {
            Some(im) => (im.field, im.vars.clone()),
            None => (self.field, self.vars.clone()),
        };
        for im in images {
            if im.vars != vars {
                return Err(Error::VariableMismatch(vars.to_vec(), im.vars.to_vec()));
            }
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Poly<C>>> = images.iter().map(|im| vec![Poly::one(field, im.vars.clone())]).collect();
        let mut out = Poly::zero(field, vars.clone());
        for (e, c) in &self.terms {
            let mut t = Poly::constant(field, vars.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.checked_mul(&powers[i][k as usize])?;
            }
            out = out + t;
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in a ring with the same number of variables.
    pub fn with_vars(&self, vars: Arc<[String]>) -> Self {
        assert_eq!(vars.len(), self.nvars(), "variable count");
        Poly { field: self.field, vars, terms: self.terms.clone() }
    }

    /// Sets variable `i` to 1 and drops it.
    pub fn dehomogenize(&self, i: usize) -> Self {
        let vars: Arc<[String]> =
            self.vars.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, s)| s.clone()).collect();
        let mut out = Self::zero(self.field, vars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.remove(i);
            out.add_term(f, c.clone());
        }
        out
    }

    /// Inserts variable `name` at position `i` to make every term of degree `d`.
    pub fn homogenize(&self, i: usize, name: &str, d: u32) -> Result<Self> {
        let mut names: Vec<String> = self.vars.to_vec();
        names.insert(i, name.to_string());
        let mut out = Self::zero(self.field, names.into());
        for (e, c) in &self.terms {
            let deg: u32 = e.iter().sum();
            let fill = d.checked_sub(deg).ok_or(Error::WrongDegree { expected: d, found: deg })?;
            let mut f = e.clone();
            f.insert(i, fill);
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    /// Multiplies by a monomial; fails on exponent overflow.
    pub fn mul_monomial(&self, m: &[u32]) -> Result<Self> {
        let mut out = Self::zero(self.field, self.vars.clone());
        for (e, c) in &self.terms {
            out.terms.insert(add_exps(e, m)?, c.clone());
        }
        Ok(out)
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        assert!(self.vars == o.vars, "variable mismatch: {:?} vs {:?}", self.vars, o.vars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), if sign { c.clone() } else { -c.clone() });
        }
        out
    }
}

impl Poly<Fq> {
    /// Parses an expression such as `x^2*y - 3*x + [5]`; `[v]` is the element with integer code v.
    pub fn parse(field: &'static FiniteField, vars: Arc<[String]>, src: &str) -> Result<Self> {
        crate::parse::parse_poly(field, vars, src)
    }

    /// g ↦ g^p, computed termwise.
    pub fn pth_power(&self) -> Result<Self> {
        let p = self.p();
        let mut out = Self::zero(self.field, self.vars.clone());
        for (e, c) in &self.terms {
            let f: Result<Monomial> =
                e.iter().map(|&x| x.checked_mul(p).ok_or(Error::ExponentOverflow)).collect();
            out.terms.insert(f?, c.frobenius());
        }
        Ok(out)
    }

    /// The unique g with g^p = self, if it exists.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p();
        let mut out = Self::zero(self.field, self.vars.clone());
        for (e, c) in &self.terms {
            if e.iter().any(|x| x % p != 0) {
                return None;
            }
            out.terms.insert(e.iter().map(|x| x / p).collect(), c.frobenius_inv());
        }
        Some(out)
    }

    /// Division with remainder by a single nonzero polynomial in lex order.
    /// A single polynomial is a Gröbner basis of its ideal, so the remainder is zero iff it divides.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (le, lc) = d.leading().map(|(e, c)| (e.clone(), *c)).unwrap();
        let lc_inv = lc.inv().unwrap();
        let mut quot = Self::zero(self.field, self.vars.clone());
        let mut rem = Self::zero(self.field, self.vars.clone());
        let mut r = self.clone();
        while let Some((e, c)) = r.terms.pop_last() {
            if e.iter().zip(&le).all(|(a, b)| a >= b) {
                let m: Monomial = e.iter().zip(&le).map(|(a, b)| a - b).collect();
                let k = c * lc_inv;
                quot.add_term(m.clone(), k);
                for (de, dc) in &d.terms {
                    if *de == le {
                        continue;
                    }
                    let t: Monomial = de.iter().zip(&m).map(|(a, b)| a + b).collect();
                    r.add_term(t, -(k * *dc));
                }
            } else {
                rem.add_term(e, c);
            }
        }
        (quot, rem)
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn integer_multiple(&self, n: i64) -> Self {
        self.scale(&self.field.int(n))
    }
}

impl<C: Coeff> PartialEq for Poly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.field.order() == o.field.order() && self.vars == o.vars && self.terms == o.terms
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: Self) -> Self {
        self.combine(&o, true)
    }
}
impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: Self) -> Poly<C> {
        self.combine(o, true)
    }
}
impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: Self) -> Self {
        self.combine(&o, false)
    }
}
impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: Self) -> Poly<C> {
        self.combine(o, false)
    }
}
impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }
}
impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}
impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(&o).expect("exponent overflow")
    }
}
impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: Self) -> Poly<C> {
        self.checked_mul(o).expect("exponent overflow")
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(x, _)| **x > 0)
                .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let cs = c.to_string();
            match (mono.is_empty(), cs.as_str()) {
                (true, _) => write!(f, "{cs}")?,
                (false, "1") => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{cs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u32, names: &[&str]) -> (&'static FiniteField, Arc<[String]>) {
        (FiniteField::get(q).unwrap(), var_names(names))
    }

    #[test]
    fn arithmetic_and_display() {
        let (f, v) = ring(3, &["x", "y"]);
        let x = FqPoly::var(f, v.clone(), 0);
        let y = FqPoly::var(f, v.clone(), 1);
        let s = &x + &y;
        let cube = s.pow(3);
        assert_eq!(cube, x.pow(3) + y.pow(3));
        assert_eq!((&x - &x), FqPoly::zero(f, v.clone()));
        assert_eq!(format!("{}", &x * &y + x.clone()), "x*y + x");
    }

    #[test]
    fn division() {
        let (f, v) = ring(5, &["x", "y"]);
        let a = FqPoly::parse(f, v.clone(), "x^3 - y^3").unwrap();
        let b = FqPoly::parse(f, v.clone(), "x - y").unwrap();
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, FqPoly::parse(f, v.clone(), "x^2 + x*y + y^2").unwrap());
        let c = FqPoly::parse(f, v.clone(), "x^2 + y").unwrap();
        assert!(c.exact_div(&b).is_none());
        let (q, r) = c.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, c);
    }

    #[test]
    fn pth_power_and_root() {
        let (f, v) = ring(9, &["x", "y"]);
        let g = FqPoly::parse(f, v.clone(), "[4]*x*y + [7]*y^2 + 1").unwrap();
        assert_eq!(g.pth_power().unwrap(), g.pow(3));
        assert_eq!(g.pth_power().unwrap().pth_root().unwrap(), g);
        assert!(g.pth_root().is_none());
    }

    #[test]
    fn homogenize_roundtrip() {
        let (f, v) = ring(7, &["x", "y"]);
        let g = FqPoly::parse(f, v.clone(), "x^2*y + 3*x + 1").unwrap();
        let h = g.homogenize(0, "z", 3).unwrap();
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(0), g);
        assert!(g.homogenize(0, "z", 2).is_err());
    }

    #[test]
    fn exponent_overflow_is_checked() {
        let (f, v) = ring(2, &["x"]);
        let big = FqPoly::monomial(f, v.clone(), vec![u32::MAX - 1], f.one());
        let x = FqPoly::var(f, v, 0);
        assert!(big.checked_mul(&x).is_ok());
        assert_eq!(big.checked_mul(&x.pow(2)).unwrap_err(), Error::ExponentOverflow);
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let (f, v) = ring(5, &["x", "y"]);
        let a = FqPoly::parse(f, v.clone(), "x^2 + 2*y").unwrap();
        let b = FqPoly::parse(f, v.clone(), "x*y - 1").unwrap();
        let ims = [
            FqPoly::parse(f, v.clone(), "x + y^2").unwrap(),
            FqPoly::parse(f, v.clone(), "3*x*y").unwrap(),
        ];
        let lhs = (&a * &b).substitute(&ims).unwrap();
        let rhs = &a.substitute(&ims).unwrap() * &b.substitute(&ims).unwrap();
        assert_eq!(lhs, rhs);
    }
}
