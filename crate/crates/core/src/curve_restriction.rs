//! Vector bundles on P¹ from Laurent transition matrices, restriction of
//! Ω¹_{P²}(log D) to rational curves, and fixed points of semilinear maps.
//!
//! A transition matrix M (entries in k[t, t⁻¹]) expresses the frame over the
//! chart at ∞ in terms of the frame over the chart at 0. The splitting type
//! is the multiset {a_i} with M = U·diag(t^{a_i})·V, U ∈ GL_r(k[t]),
//! V ∈ GL_r(k[t⁻¹]).

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::{var_names, FqPoly};
use crate::upoly::{self, FqMatrix, UPoly};

/// t^tval · num(t) with num(0) ≠ 0, or zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    tval: i64,
    num: UPoly,
}

impl Laurent {
    pub fn new(num: UPoly, tval: i64) -> Self {
        match num.valuation() {
            None => Laurent { tval: 0, num },
            Some(v) => {
                let c = num.coeffs()[v..].to_vec();
                Laurent { tval: tval + v as i64, num: UPoly::new(num.field(), c) }
            }
        }
    }
    pub fn zero(field: &'static FiniteField) -> Self {
        Laurent { tval: 0, num: UPoly::zero(field) }
    }
    pub fn monomial(c: Fq, e: i64) -> Self {
        Self::new(UPoly::constant(c), e)
    }
    pub fn from_ints(field: &'static FiniteField, c: &[i64], tval: i64) -> Self {
        Self::new(UPoly::from_ints(field, c), tval)
    }

    pub fn field(&self) -> &'static FiniteField {
        self.num.field()
    }
    pub fn num(&self) -> &UPoly {
        &self.num
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// t-adic valuation; None for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.tval)
    }
    /// Largest exponent present.
    pub fn top(&self) -> Option<i64> {
        self.num.degree().map(|d| self.tval + d as i64)
    }
    pub fn coeff(&self, e: i64) -> Fq {
        let k = e - self.tval;
        if k < 0 {
            self.field().zero()
        } else {
            self.num.coeff(k as usize)
        }
    }
    pub fn is_monomial(&self) -> bool {
        self.num.degree() == Some(0)
    }

    fn aligned(&self, o: &Self) -> (UPoly, UPoly, i64) {
        if self.is_zero() {
            return (UPoly::zero(self.field()), o.num.clone(), o.tval);
        }
        if o.is_zero() {
            return (self.num.clone(), UPoly::zero(self.field()), self.tval);
        }
        let v = self.tval.min(o.tval);
        (self.num.shift((self.tval - v) as usize), o.num.shift((o.tval - v) as usize), v)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b, v) = self.aligned(o);
        Self::new(a.add(&b), v)
    }
    pub fn sub(&self, o: &Self) -> Self {
        let (a, b, v) = self.aligned(o);
        Self::new(a.sub(&b), v)
    }
    pub fn neg(&self) -> Self {
        Laurent { tval: self.tval, num: self.num.neg() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.tval + o.tval)
    }

    /// Multiplies by t^k and returns the polynomial, if no negative powers remain.
    pub fn to_poly_shifted(&self, k: i64) -> Option<UPoly> {
        if self.is_zero() {
            return Some(self.num.clone());
        }
        let v = self.tval + k;
        (v >= 0).then(|| self.num.shift(v as usize))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.num.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.tval + i as i64;
            let neg_one = (-*c).is_one() && c.field().p() != 2;
            if !first {
                write!(f, " {} ", if neg_one { "-" } else { "+" })?;
            } else if neg_one {
                write!(f, "-")?;
            }
            first = false;
            let coef = if c.is_one() || neg_one { String::new() } else { format!("{c}*") };
            match e {
                0 if c.is_one() || neg_one => write!(f, "1")?,
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    pub entries: Vec<Vec<Laurent>>,
}

impl LaurentMatrix {
    pub fn new(entries: Vec<Vec<Laurent>>) -> Result<Self> {
        let r = entries.len();
        if r == 0 || entries.iter().any(|row| row.len() != r) {
            return Err(Error::Invalid("transition matrix must be square and nonempty".into()));
        }
        Ok(LaurentMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }
    pub fn field(&self) -> &'static FiniteField {
        self.entries[0][0].field()
    }

    pub fn diagonal(field: &'static FiniteField, exps: &[i64]) -> Self {
        let r = exps.len();
        let entries = (0..r)
            .map(|i| (0..r).map(|j| if i == j { Laurent::monomial(field.one(), exps[i]) } else { Laurent::zero(field) }).collect())
            .collect();
        LaurentMatrix { entries }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let r = self.size();
        let f = self.field();
        let entries = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).fold(Laurent::zero(f), |acc, k| acc.add(&self.entries[i][k].mul(&o.entries[k][j]))))
                    .collect()
            })
            .collect();
        LaurentMatrix { entries }
    }

    pub fn det(&self) -> Laurent {
        fn rec(m: &[Vec<Laurent>], f: &'static FiniteField) -> Laurent {
            match m.len() {
                0 => Laurent::monomial(f.one(), 0),
                1 => m[0][0].clone(),
                n => {
                    let mut acc = Laurent::zero(f);
                    for j in 0..n {
                        if m[0][j].is_zero() {
                            continue;
                        }
                        let minor: Vec<Vec<Laurent>> = m[1..]
                            .iter()
                            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                            .collect();
                        let term = m[0][j].mul(&rec(&minor, f));
                        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                    }
                    acc
                }
            }
        }
        rec(&self.entries, self.field())
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.entries.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Degrees a_1 ≥ … ≥ a_r of ⊕ O(a_i).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SplittingType {
    pub degrees: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        SplittingType { degrees }
    }
    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }
    pub fn max(&self) -> Option<i64> {
        self.degrees.first().copied()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut asc = self.degrees.clone();
        asc.reverse();
        write!(f, "{{{}}}", asc.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "))
    }
}

/// Column reduction of (t^N M)^T over k[t]; the column degrees minus N are the type.
pub fn splitting_type(m: &LaurentMatrix) -> Result<SplittingType> {
    let det = m.det();
    if !det.is_monomial() {
        return Err(Error::NotInvertible);
    }
    let r = m.size();
    let field = m.field();
    let n = -m.entries.iter().flatten().filter_map(Laurent::valuation).min().ok_or(Error::NotInvertible)?;
    // q[i][j] = (t^N M)[j][i]
    let mut q: Vec<Vec<UPoly>> =
        (0..r).map(|i| (0..r).map(|j| m.entries[j][i].to_poly_shifted(n).expect("shift clears poles")).collect()).collect();
    let col_deg = |q: &Vec<Vec<UPoly>>, j: usize| (0..r).filter_map(|i| q[i][j].degree()).max();
    loop {
        let degs: Vec<usize> = (0..r).map(|j| col_deg(&q, j).ok_or(Error::NotInvertible)).collect::<Result<_>>()?;
        let lead: FqMatrix = (0..r).map(|i| (0..r).map(|j| q[i][j].coeff(degs[j])).collect()).collect();
        let ker = upoly::kernel(&lead, field, r);
        let Some(c) = ker.first() else {
            return Ok(SplittingType::new(degs.iter().map(|&d| d as i64 - n).collect()));
        };
        let j = (0..r).filter(|&j| !c[j].is_zero()).max_by_key(|&j| degs[j]).unwrap();
        let inv = c[j].inv().unwrap();
        for i in 0..r {
            let mut acc = UPoly::zero(field);
            for k in 0..r {
                if !c[k].is_zero() {
                    acc = acc.add(&q[i][k].shift(degs[j] - degs[k]).scale(c[k] * inv));
                }
            }
            q[i][j] = acc;
        }
    }
}

/// All a_i ≤ 0, the condition an injection F*E → E forces.
pub fn nef_obstruction(t: &SplittingType) -> bool {
    t.max().is_none_or(|a| a <= 0)
}

// Rational functions in t with monic denominator, reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
struct RatFun {
    num: UPoly,
    den: UPoly,
}

impl RatFun {
    fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun { den: UPoly::one(num.field()), num };
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let l = den.lead().inv().unwrap();
        RatFun { num: num.scale(l), den: den.scale(l) }
    }
    fn poly(p: UPoly) -> Self {
        let f = p.field();
        RatFun { num: p, den: UPoly::one(f) }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn div(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
    fn is_nonzero_constant(&self) -> bool {
        !self.is_zero() && self.num.is_constant() && self.den.is_constant()
    }
    fn to_laurent(&self) -> Option<Laurent> {
        let v = self.den.valuation()?;
        (self.den.degree() == Some(v)).then(|| Laurent::new(self.num.clone(), -(v as i64)))
    }
}

/// Evaluates a polynomial at univariate values.
fn eval_at(h: &FqPoly, vals: &[UPoly]) -> UPoly {
    let f = h.field();
    let mut acc = UPoly::zero(f);
    for (e, c) in h.terms() {
        let mut t = UPoly::constant(*c);
        for (v, &k) in vals.iter().zip(e) {
            if k > 0 {
                t = t.mul(&v.pow(k as u64));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// A plane P² with homogeneous coordinates and a reduced boundary divisor
/// given by its components.
#[derive(Clone, Debug)]
pub struct PlaneLogPair {
    pub field: &'static FiniteField,
    pub vars: Arc<[String]>,
    pub components: Vec<FqPoly>,
}

impl PlaneLogPair {
    pub fn new(field: &'static FiniteField, vars: Arc<[String]>, components: Vec<FqPoly>) -> Result<Self> {
        if vars.len() != 3 {
            return Err(Error::Invalid("the ambient plane needs three homogeneous coordinates".into()));
        }
        for h in &components {
            if h.vars() != &vars || h.field() != field {
                return Err(Error::VariableMismatch(vars.to_vec(), h.vars().to_vec()));
            }
            if !h.is_homogeneous() || h.is_constant() {
                return Err(Error::Invalid(format!("component {h} is not a nonconstant form")));
            }
        }
        Ok(PlaneLogPair { field, vars, components })
    }

    pub fn empty(field: &'static FiniteField) -> Self {
        PlaneLogPair { field, vars: var_names(&["x", "y", "z"]), components: vec![] }
    }

    pub fn degree(&self) -> i64 {
        self.components.iter().map(|h| h.total_degree().unwrap_or(0) as i64).sum()
    }
}

/// t ↦ [φ_0(t) : φ_1(t) : φ_2(t)] with deg = max deg φ_i.
#[derive(Clone, Debug)]
pub struct RationalCurve {
    pub coords: Vec<UPoly>,
}

impl RationalCurve {
    pub fn new(coords: Vec<UPoly>) -> Result<Self> {
        if coords.len() != 3 {
            return Err(Error::Invalid("a plane curve needs three coordinate polynomials".into()));
        }
        let g = coords.iter().fold(UPoly::zero(coords[0].field()), |g, c| g.gcd(c));
        if g.is_zero() || g.degree() != Some(0) {
            return Err(Error::Invalid("coordinate polynomials have a common zero".into()));
        }
        let c = RationalCurve { coords };
        if c.degree() == 0 {
            return Err(Error::Invalid("constant parametrization".into()));
        }
        Ok(c)
    }
    pub fn degree(&self) -> usize {
        self.coords.iter().filter_map(UPoly::degree).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct RestrictedCotangent {
    pub matrix: LaurentMatrix,
    pub chart_zero: usize,
    pub chart_infinity: usize,
    pub frame_zero: [String; 2],
    pub frame_infinity: [String; 2],
    /// d·(deg D − 3), the degree the determinant must have
    pub expected_degree: i64,
}

struct Generator {
    name: String,
    coeffs: [RatFun; 2],
}

fn det2(a: &[RatFun; 2], b: &[RatFun; 2]) -> RatFun {
    a[0].mul(&b[1]).sub(&a[1].mul(&b[0]))
}

/// Transition matrix of φ*Ω¹_{P²}(log D) between frames over the two charts
/// of the curve, each frame the first valid pair of coordinate differentials
/// and logarithmic differentials of the components.
pub fn restrict_log_cotangent(pair: &PlaneLogPair, curve: &RationalCurve) -> Result<RestrictedCotangent> {
    let f = pair.field;
    let d = curve.degree();
    let phi = &curve.coords;
    if let Some(c) = phi.iter().find(|c| c.field() != f) {
        return Err(Error::FieldMismatch(f.order(), c.field().order()));
    }
    let j0 = (0..3).find(|&i| phi[i].degree() == Some(0)).ok_or(Error::ChartsDoNotCover)?;
    let jinf =
        (0..3).find(|&i| i != j0 && phi[i].degree() == Some(d) && phi[i].valuation() == Some(d)).ok_or(Error::ChartsDoNotCover)?;
    for h in &pair.components {
        if eval_at(h, phi).is_zero() {
            return Err(Error::CurveInDivisor);
        }
    }
    // affine coordinates of chart j0 along the curve
    let c0 = phi[j0].lead().inv().unwrap();
    let u: Vec<UPoly> = phi.iter().map(|p| p.scale(c0)).collect();
    let refs: Vec<usize> = (0..3).filter(|&i| i != j0).collect();
    let unit = |i: usize, s: usize| -> RatFun {
        RatFun::poly(if refs[s] == i { UPoly::one(f) } else { UPoly::zero(f) })
    };
    let uj = |j: usize| RatFun::poly(u[j].clone());
    let names = &pair.vars;

    let generators = |j: usize, order: &[usize]| -> Vec<Generator> {
        let mut out = Vec::new();
        for &i in order {
            // d(x_i/x_j) = (du_i·u_j − u_i du_j)/u_j²
            let coeffs = [0, 1].map(|s| {
                unit(i, s).mul(&uj(j)).sub(&uj(i).mul(&unit(j, s))).div(&uj(j).mul(&uj(j)))
            });
            out.push(Generator { name: format!("d({}/{})", names[i], names[j]), coeffs });
        }
        for h in &pair.components {
            let hv = RatFun::poly(eval_at(h, &u));
            let deg = h.total_degree().unwrap_or(0) as i64;
            let coeffs = [0, 1].map(|s| {
                let dh = RatFun::poly(eval_at(&h.derivative(refs[s]), &u)).div(&hv);
                dh.sub(&RatFun::poly(UPoly::constant(f.int(deg))).mul(&unit(j, s)).div(&uj(j)))
            });
            out.push(Generator { name: format!("dlog({h})"), coeffs });
        }
        out
    };
    let log_factor = |j: usize| -> RatFun {
        pair.components.iter().fold(RatFun::poly(UPoly::one(f)), |acc, h| {
            let deg = h.total_degree().unwrap_or(0) as u64;
            acc.mul(&RatFun::poly(eval_at(h, &u)).div(&RatFun::poly(u[j].pow(deg))))
        })
    };
    let pick = |j: usize, order: &[usize]| -> Result<(String, String, [RatFun; 2], [RatFun; 2])> {
        let gens = generators(j, order);
        let vol = det2(&gens[0].coeffs, &gens[1].coeffs);
        let h = log_factor(j);
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                let w = det2(&gens[a].coeffs, &gens[b].coeffs);
                if w.is_zero() {
                    continue;
                }
                if w.div(&vol).mul(&h).is_nonzero_constant() {
                    return Ok((gens[a].name.clone(), gens[b].name.clone(), gens[a].coeffs.clone(), gens[b].coeffs.clone()));
                }
            }
        }
        Err(Error::ChartsDoNotCover)
    };
    let order0: Vec<usize> = refs.clone();
    let other = (0..3).find(|&i| i != j0 && i != jinf).unwrap();
    let order_inf = vec![j0, other];
    let (e1n, e2n, e1, e2) = pick(j0, &order0)?;
    let (f1n, f2n, f1, f2) = pick(jinf, &order_inf)?;
    // M = F·E⁻¹
    let de = det2(&e1, &e2);
    let einv = [[e2[1].div(&de), e1[1].neg().div(&de)], [e2[0].neg().div(&de), e1[0].div(&de)]];
    let mut entries = Vec::new();
    for frow in [&f1, &f2] {
        let mut row = Vec::new();
        for col in 0..2 {
            let x = frow[0].mul(&einv[0][col]).add(&frow[1].mul(&einv[1][col]));
            row.push(x.to_laurent().ok_or_else(|| Error::Invalid("transition entry is not a Laurent polynomial".into()))?);
        }
        entries.push(row);
    }
    Ok(RestrictedCotangent {
        matrix: LaurentMatrix::new(entries)?,
        chart_zero: j0,
        chart_infinity: jinf,
        frame_zero: [e1n, e2n],
        frame_infinity: [f1n, f2n],
        expected_degree: d as i64 * (pair.degree() - 3),
    })
}

/// v ↦ A·v^{[p]} on F_q^r (and its extensions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub field: &'static FiniteField,
    pub a: FqMatrix,
}

/// Largest extension degree the fixed-point solver will build.
pub const MAX_EXTENSION_DEGREE: u64 = 512;

impl SemilinearMap {
    pub fn new(a: FqMatrix) -> Result<Self> {
        let r = a.len();
        if r == 0 || a.iter().any(|row| row.len() != r) {
            return Err(Error::Invalid("semilinear map needs a square nonempty matrix".into()));
        }
        Ok(SemilinearMap { field: a[0][0].field(), a })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn apply(&self, v: &[Fq]) -> Vec<Fq> {
        self.a.iter().map(|row| row.iter().zip(v).fold(self.field.zero(), |acc, (&x, &y)| acc + x * y.frobenius())).collect()
    }

    /// B = A·σ(A)⋯σ^{e−1}(A), the F_q-linear map with (v ↦ A v^{[p]})^e = B ∘ Frob_q.
    pub fn twisted_power(&self) -> FqMatrix {
        let mut b = self.a.clone();
        let mut s = self.a.clone();
        for _ in 1..self.field.degree() {
            s = upoly::mat_frobenius(&s);
            b = upoly::mat_mul(&b, &s);
        }
        b
    }

    /// Smallest m ≥ 1 with B^{m+r} = B^r; fixed points over F_{q^m} are then all of them.
    pub fn stabilization_degree(&self) -> Result<u64> {
        let b = self.twisted_power();
        let r = self.rank();
        let mut br = upoly::identity(self.field, r);
        for _ in 0..r {
            br = upoly::mat_mul(&br, &b);
        }
        let bound = (self.field.order() as u64).saturating_pow(r as u32);
        let mut cur = upoly::mat_mul(&b, &br);
        for m in 1..=bound {
            if cur == br {
                return Ok(m);
            }
            cur = upoly::mat_mul(&b, &cur);
        }
        Err(Error::Invalid("no stabilization degree found".into()))
    }
}

#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub extension_degree: u64,
    /// F_{q^m} = F_q[y]/(modulus)
    pub modulus: UPoly,
    pub dimension: usize,
    pub count: u64,
    /// F_p-basis; each vector has r coordinates in F_q[y]/(modulus)
    pub basis: Vec<Vec<UPoly>>,
}

fn digits(x: Fq) -> Vec<u32> {
    let p = x.field().p();
    let mut v = x.value();
    (0..x.field().degree())
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

/// Solves v = A·v^{[p]} over F_{q^m} as an F_p-linear kernel problem.
pub fn semilinear_fixed_points(map: &SemilinearMap, m: u64) -> Result<FixedPoints> {
    if m == 0 || m > MAX_EXTENSION_DEGREE {
        return Err(Error::Invalid(format!("extension degree {m} outside 1..={MAX_EXTENSION_DEGREE}")));
    }
    let f = map.field;
    let p = f.p();
    let e = f.degree() as usize;
    let r = map.rank();
    let mm = m as usize;
    let g = UPoly::irreducible(f, mm);
    let y = UPoly::x(f);
    let yp = y.pow_mod(p as u64, &g);
    // images y^{kp} mod g
    let mut frob_y = Vec::with_capacity(mm);
    let mut cur = UPoly::one(f);
    for _ in 0..mm {
        frob_y.push(cur.clone());
        cur = cur.mul_mod(&yp, &g);
    }
    let fp = FiniteField::get(p)?;
    let n = r * mm * e;
    let idx = |i: usize, k: usize, l: usize| (i * mm + k) * e + l;
    // columns of the matrix of v ↦ v − A v^{[p]}
    let mut mat = vec![vec![fp.zero(); n]; n];
    let mut pw = 1u32;
    for l in 0..e {
        let omega = f.elem(pw)?;
        let omega_p = omega.frobenius();
        for i in 0..r {
            for k in 0..mm {
                let col = idx(i, k, l);
                let mut out: Vec<Vec<Fq>> = vec![vec![f.zero(); mm]; r];
                out[i][k] += omega;
                for (j, row) in out.iter_mut().enumerate() {
                    let c = map.a[j][i] * omega_p;
                    if c.is_zero() {
                        continue;
                    }
                    for (kk, &yc) in frob_y[k].coeffs().iter().enumerate() {
                        row[kk] -= c * yc;
                    }
                }
                for (j, row) in out.iter().enumerate() {
                    for (kk, &x) in row.iter().enumerate() {
                        for (ll, dgt) in digits(x).into_iter().enumerate() {
                            mat[idx(j, kk, ll)][col] = fp.int(dgt as i64);
                        }
                    }
                }
            }
        }
        pw *= p;
    }
    let ker = upoly::kernel(&mat, fp, n);
    let basis = ker
        .iter()
        .map(|v| {
            (0..r)
                .map(|i| {
                    let c: Vec<Fq> = (0..mm)
                        .map(|k| {
                            let code = (0..e).rev().fold(0u32, |acc, l| acc * p + v[idx(i, k, l)].value());
                            f.elem(code).unwrap()
                        })
                        .collect();
                    UPoly::new(f, c)
                })
                .collect()
        })
        .collect();
    let dimension = ker.len();
    Ok(FixedPoints { extension_degree: m, modulus: g, dimension, count: (p as u64).pow(dimension as u32), basis })
}

/// Fixed points over the extension where the count stabilizes.
pub fn stabilized_fixed_points(map: &SemilinearMap) -> Result<FixedPoints> {
    semilinear_fixed_points(map, map.stabilization_degree()?)
}

#[derive(Clone, Debug, Serialize)]
pub struct EtalePoint {
    pub point: Vec<String>,
    pub det_nonzero: bool,
    pub jacobian_identity: bool,
    pub extension_degree: u64,
    pub fiber_count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EtaleReport {
    pub points: Vec<EtalePoint>,
}

impl EtaleReport {
    pub fn jacobian_always_identity(&self) -> bool {
        self.points.iter().all(|p| p.jacobian_identity)
    }
}

/// For the system f = f^{[p]}·A(x) at each sample x: the Jacobian in f and the
/// number of solutions over the stabilizing extension.
pub fn etale_fixed_scheme_check(a: &[Vec<FqPoly>], samples: &[Vec<Fq>]) -> Result<EtaleReport> {
    let r = a.len();
    if r == 0 || a.iter().any(|row| row.len() != r) {
        return Err(Error::Invalid("square polynomial matrix expected".into()));
    }
    let field = a[0][0].field();
    let p = field.p();
    let names: Vec<String> = (1..=r).map(|i| format!("f{i}")).collect();
    let fv: Arc<[String]> = names.into();
    let mut points = Vec::new();
    for x in samples {
        let ax: FqMatrix = a.iter().map(|row| row.iter().map(|h| h.eval(x)).collect()).collect();
        let mut jac_ok = true;
        for k in 0..r {
            let mut g = FqPoly::var(field, fv.clone(), k);
            for (i, row) in ax.iter().enumerate() {
                let fi = FqPoly::var(field, fv.clone(), i).pow(p);
                g = g - fi.scale(&row[k]);
            }
            for l in 0..r {
                let expected = if k == l { FqPoly::one(field, fv.clone()) } else { FqPoly::zero(field, fv.clone()) };
                if g.derivative(l) != expected {
                    jac_ok = false;
                }
            }
        }
        // row system f = f^{[p]} A is the column system v = Aᵀ v^{[p]}
        let at: FqMatrix = (0..r).map(|i| (0..r).map(|j| ax[j][i]).collect()).collect();
        let map = SemilinearMap::new(at.clone())?;
        let fixed = stabilized_fixed_points(&map)?;
        points.push(EtalePoint {
            point: x.iter().map(|c| c.to_string()).collect(),
            det_nonzero: upoly::is_invertible(&at),
            jacobian_identity: jac_ok,
            extension_degree: fixed.extension_degree,
            fiber_count: fixed.count,
        });
    }
    Ok(EtaleReport { points })
}
