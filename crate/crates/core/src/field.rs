//! Small finite fields F_q, q = p^k <= 81, p <= 13, backed by lookup tables.
//!
//! An element is encoded as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
//! where `c_0 + c_1 a + ... + c_{k-1} a^{k-1}` is its expansion in a root `a`
//! of the field's generator polynomial. The default generators are the Conway
//! polynomials:
//!
//! | q  | generator             |
//! |----|-----------------------|
//! | 4  | x^2 + x + 1           |
//! | 8  | x^3 + x + 1           |
//! | 16 | x^4 + x + 1           |
//! | 32 | x^5 + x^2 + 1         |
//! | 64 | x^6 + x^4 + x^3 + x + 1 |
//! | 9  | x^2 + 2x + 2          |
//! | 27 | x^3 + 2x + 1          |
//! | 81 | x^4 + 2x^3 + 2        |
//! | 25 | x^2 + 4x + 2          |
//! | 49 | x^2 + 6x + 3          |
//!
//! Setting `FROBLIFT_MODULUS_<q>` to a comma-separated coefficient list
//! (constant term first, monic) overrides the generator for that q. The
//! variable is read once, when the field is first built.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

pub const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];
pub const MAX_ORDER: u32 = 81;

pub struct FiniteField {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
    frob_inv: Vec<u8>,
}

fn default_modulus(q: u32) -> Option<Vec<u32>> {
    Some(match q {
        4 => vec![1, 1, 1],
        8 => vec![1, 1, 0, 1],
        16 => vec![1, 1, 0, 0, 1],
        32 => vec![1, 0, 1, 0, 0, 1],
        64 => vec![1, 1, 0, 1, 1, 0, 1],
        9 => vec![2, 2, 1],
        27 => vec![1, 2, 0, 1],
        81 => vec![2, 0, 0, 2, 1],
        25 => vec![2, 4, 1],
        49 => vec![3, 6, 1],
        _ => return None,
    })
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    for &p in &PRIMES {
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        if r == 1 && k > 0 {
            return Some((p, k));
        }
    }
    None
}

// product of two coefficient vectors reduced modulo a monic polynomial, over F_p
fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let k = m.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + p * p - c * mi % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn digits(v: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut r = v;
    for _ in 0..k {
        out.push(r % p);
        r /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

// no monic factor of degree 1..=k/2
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let df = f.len() - 1;
    while r.len() > df {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        for (i, &fi) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * fi % p) % p;
        }
        r.pop();
    }
    r
}

fn parse_override(q: u32) -> Result<Option<Vec<u32>>> {
    let Ok(s) = std::env::var(format!("FROBLIFT_MODULUS_{q}")) else {
        return Ok(None);
    };
    let coeffs: std::result::Result<Vec<u32>, _> =
        s.split(',').map(|t| t.trim().parse::<u32>()).collect();
    coeffs.map(Some).map_err(|e| Error::BadModulus { q, reason: e.to_string() })
}

impl FiniteField {
    fn build(q: u32) -> Result<FiniteField> {
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        if q > MAX_ORDER && k > 1 {
            return Err(Error::UnsupportedField(q));
        }
        let modulus = match parse_override(q)? {
            Some(m) => m,
            None if k == 1 => vec![0, 1],
            None => default_modulus(q).ok_or(Error::UnsupportedField(q))?,
        };
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::BadModulus { q, reason: format!("need a monic polynomial of degree {k}") });
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus { q, reason: format!("coefficients must lie in 0..{p}") });
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::BadModulus { q, reason: "not irreducible".into() });
        }
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let reps: Vec<Vec<u32>> = (0..q).map(|v| digits(v, p, k)).collect();
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = reps[a].iter().zip(&reps[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = undigits(&s, p) as u8;
                mul[a * n + b] = undigits(&mulmod(&reps[a], &reps[b], &modulus, p), p) as u8;
            }
        }
        let neg: Vec<u8> = (0..n).map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8).collect();
        let inv: Vec<u8> = (0..n)
            .map(|a| if a == 0 { 0 } else { (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u8 })
            .collect();
        let frob: Vec<u8> = (0..n)
            .map(|a| {
                let mut r = 1usize;
                for _ in 0..p {
                    r = mul[r * n + a] as usize;
                }
                if a == 0 { 0 } else { r as u8 }
            })
            .collect();
        let mut frob_inv = vec![0u8; n];
        for a in 0..n {
            frob_inv[frob[a] as usize] = a as u8;
        }
        Ok(FiniteField { p, degree: k, order: q, modulus, add, mul, neg, inv, frob, frob_inv })
    }

    /// The field with `q` elements; tables are built once per process.
    pub fn get(q: u32) -> Result<&'static FiniteField> {
        static REGISTRY: OnceLock<Mutex<HashMap<u32, &'static FiniteField>>> = OnceLock::new();
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = reg.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = guard.get(&q) {
            return Ok(f);
        }
        let f: &'static FiniteField = Box::leak(Box::new(Self::build(q)?));
        guard.insert(q, f);
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u32 {
        self.order
    }
    /// Generator polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&'static self) -> Fq {
        Fq { field: self, v: 0 }
    }
    pub fn one(&'static self) -> Fq {
        Fq { field: self, v: 1 }
    }
    pub fn elem(&'static self, v: u32) -> Result<Fq> {
        if v >= self.order {
            return Err(Error::ElementRange { value: v as i64, q: self.order });
        }
        Ok(Fq { field: self, v: v as u8 })
    }
    /// Image of an integer in the prime field.
    pub fn int(&'static self, n: i64) -> Fq {
        Fq { field: self, v: n.rem_euclid(self.p as i64) as u8 }
    }
    pub fn elements(&'static self) -> impl Iterator<Item = Fq> {
        (0..self.order).map(move |v| Fq { field: self, v: v as u8 })
    }
    /// The class of the generator root `a` (or 1 when q = p).
    pub fn generator(&'static self) -> Fq {
        Fq { field: self, v: if self.degree == 1 { 1 } else { self.p as u8 } }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, o: &FiniteField) -> bool {
        self.order == o.order
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order)
    }
}

#[derive(Clone, Copy)]
pub struct Fq {
    field: &'static FiniteField,
    v: u8,
}

impl Fq {
    pub fn field(&self) -> &'static FiniteField {
        self.field
    }
    pub fn value(&self) -> u32 {
        self.v as u32
    }
    pub fn is_zero(&self) -> bool {
        self.v == 0
    }
    pub fn is_one(&self) -> bool {
        self.v == 1
    }
    fn idx(self, o: Fq) -> usize {
        debug_assert!(std::ptr::eq(self.field, o.field), "field mismatch");
        self.v as usize * self.field.order as usize + o.v as usize
    }
    pub fn inv(self) -> Option<Fq> {
        (self.v != 0).then(|| Fq { field: self.field, v: self.field.inv[self.v as usize] })
    }
    pub fn pow(self, mut e: u64) -> Fq {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
    /// x ↦ x^p
    pub fn frobenius(self) -> Fq {
        Fq { field: self.field, v: self.field.frob[self.v as usize] }
    }
    /// x ↦ x^{1/p}
    pub fn frobenius_inv(self) -> Fq {
        Fq { field: self.field, v: self.field.frob_inv[self.v as usize] }
    }
    pub fn same_field(&self, o: &Fq) -> bool {
        std::ptr::eq(self.field, o.field)
    }
}

impl PartialEq for Fq {
    fn eq(&self, o: &Fq) -> bool {
        self.v == o.v && self.field.order == o.field.order
    }
}
impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.v.hash(h);
    }
}

impl PartialOrd for Fq {
    fn partial_cmp(&self, o: &Fq) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Fq {
    fn cmp(&self, o: &Fq) -> std::cmp::Ordering {
        self.v.cmp(&o.v)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}
impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fq {
    type Output = Fq;
    fn add(self, o: Fq) -> Fq {
        Fq { field: self.field, v: self.field.add[self.idx(o)] }
    }
}
impl Sub for Fq {
    type Output = Fq;
    fn sub(self, o: Fq) -> Fq {
        self + (-o)
    }
}
impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        Fq { field: self.field, v: self.field.neg[self.v as usize] }
    }
}
impl Mul for Fq {
    type Output = Fq;
    fn mul(self, o: Fq) -> Fq {
        Fq { field: self.field, v: self.field.mul[self.idx(o)] }
    }
}
impl Div for Fq {
    type Output = Fq;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Fq) -> Fq {
        self * o.inv().expect("division by zero in F_q")
    }
}
impl AddAssign for Fq {
    fn add_assign(&mut self, o: Fq) {
        *self = *self + o;
    }
}
impl SubAssign for Fq {
    fn sub_assign(&mut self, o: Fq) {
        *self = *self - o;
    }
}
impl MulAssign for Fq {
    fn mul_assign(&mut self, o: Fq) {
        *self = *self * o;
    }
}
