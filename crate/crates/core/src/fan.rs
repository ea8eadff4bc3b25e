//! Simplicial lattice fans of rank at most 3.
//!
//! Rays are stored primitive and deduplicated. `cones` holds the maximal
//! cones in input order, each as a sorted list of ray indices; faces are
//! implicit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::linalg::{self, Q};
use crate::poly::FqPoly;
use crate::witt_frobenius::FrobeniusLiftChart;

pub const MAX_RANK: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanData {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

// H-representation of a simplicial cone: eqs·x = 0, ineqs·x ≥ 0.
struct Halfspaces {
    eqs: Vec<Vec<Q>>,
    ineqs: Vec<Vec<Q>>,
}

impl Halfspaces {
    fn contains(&self, x: &[Q]) -> bool {
        let dot = |r: &Vec<Q>| r.iter().zip(x).map(|(a, b)| a * b).sum::<Q>();
        self.eqs.iter().all(|r| dot(r) == Q::from_integer(0)) && self.ineqs.iter().all(|r| dot(r) >= Q::from_integer(0))
    }
}

// Extends independent integer rows to a basis of Q^n with standard vectors.
fn extend_rational(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut basis = rows.to_vec();
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e = vec![0; n];
        e[i] = 1;
        basis.push(e);
        if linalg::rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

fn halfspaces(rays: &[Vec<i64>], n: usize) -> Halfspaces {
    let k = rays.len();
    let basis = extend_rational(rays, n);
    // columns are basis vectors; rows of the inverse are coordinate functionals
    let cols: Vec<Vec<i64>> = (0..n).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
    let inv = linalg::inverse(&linalg::to_q(&cols)).expect("basis is invertible");
    Halfspaces { ineqs: inv[..k].to_vec(), eqs: inv[k..].to_vec() }
}

// Extreme rays of the pointed cone cut out by the given halfspaces.
fn extreme_rays(hs: &[&Halfspaces], n: usize) -> Vec<Vec<Q>> {
    let rows: Vec<Vec<Q>> = hs.iter().flat_map(|h| h.eqs.iter().chain(&h.ineqs).cloned()).collect();
    let mut out: Vec<Vec<Q>> = Vec::new();
    for subset in linalg::k_subsets(rows.len(), n - 1) {
        let m: Vec<Vec<Q>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let ker = linalg::kernel(&m, n);
        if ker.len() != 1 {
            continue;
        }
        for sign in [1, -1] {
            let d: Vec<Q> = ker[0].iter().map(|x| x * Q::from_integer(sign)).collect();
            if hs.iter().all(|h| h.contains(&d)) {
                let prim: Vec<Q> = linalg::primitive(&d).into_iter().map(Q::from_integer).collect();
                if !out.contains(&prim) {
                    out.push(prim);
                }
            }
        }
    }
    out
}

fn make_primitive(v: &[i64]) -> Result<Vec<i64>> {
    let g = linalg::gcd_vec(v);
    if g == 0 {
        return Err(Error::InvalidFan("zero ray".into()));
    }
    Ok(v.iter().map(|x| x / g).collect())
}

impl Fan {
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::RankBound(rank));
        }
        // primitive, deduplicated rays with an index remap
        let mut prim: Vec<Vec<i64>> = Vec::new();
        let mut remap = Vec::with_capacity(rays.len());
        for v in &rays {
            if v.len() != rank {
                return Err(Error::InvalidFan(format!("ray {v:?} is not in Z^{rank}")));
            }
            let u = make_primitive(v)?;
            match prim.iter().position(|w| *w == u) {
                Some(i) => remap.push(i),
                None => {
                    remap.push(prim.len());
                    prim.push(u);
                }
            }
        }
        let mut cs: Vec<Vec<usize>> = Vec::new();
        for c in &cones {
            let mut s = Vec::with_capacity(c.len());
            for &i in c {
                let j = *remap.get(i).ok_or_else(|| Error::InvalidFan(format!("ray index {i} out of range")))?;
                if s.contains(&j) {
                    return Err(Error::InvalidFan(format!("repeated ray in cone {c:?}")));
                }
                s.push(j);
            }
            s.sort_unstable();
            cs.push(s);
        }
        for i in 0..prim.len() {
            cs.push(vec![i]);
        }
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for (k, c) in cs.iter().enumerate() {
            let dominated = cs.iter().enumerate().any(|(l, d)| {
                let sub = c.iter().all(|x| d.contains(x));
                sub && (d.len() > c.len() || (d.len() == c.len() && l < k))
            });
            if !dominated {
                maximal.push(c.clone());
            }
        }
        let fan = Fan { rank, rays: prim, cones: maximal };
        fan.validate()?;
        Ok(fan)
    }

    pub fn from_data(d: &FanData) -> Result<Self> {
        Self::new(d.rank, d.rays.clone(), d.cones.clone())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let d: FanData = serde_json::from_str(s).map_err(|e| Error::InvalidFan(e.to_string()))?;
        Self::from_data(&d)
    }

    pub fn data(&self) -> FanData {
        FanData { rank: self.rank, rays: self.rays.clone(), cones: self.cones.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.data()).expect("fan data serializes")
    }

    fn validate(&self) -> Result<()> {
        for c in &self.cones {
            if linalg::rank(&self.cone_rays(c)) != c.len() {
                return Err(Error::InvalidFan(format!("cone {c:?} is not simplicial")));
            }
        }
        let hs: Vec<Halfspaces> = self.cones.iter().map(|c| halfspaces(&self.cone_rays(c), self.rank)).collect();
        for a in 0..self.cones.len() {
            for b in a + 1..self.cones.len() {
                let common: Vec<usize> = self.cones[a].iter().filter(|x| self.cones[b].contains(x)).copied().collect();
                let face = halfspaces(&self.cone_rays(&common), self.rank);
                for r in extreme_rays(&[&hs[a], &hs[b]], self.rank) {
                    if !face.contains(&r) {
                        return Err(Error::InvalidFan(format!(
                            "cones {:?} and {:?} overlap beyond a common face",
                            self.cones[a], self.cones[b]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }
    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn cone_rays(&self, c: &[usize]) -> Vec<Vec<i64>> {
        c.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// All cones, faces included; the empty cone comes first.
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for c in &self.cones {
            for mask in 0u32..(1 << c.len()) {
                let face: Vec<usize> = c.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
                out.insert(face);
            }
        }
        let mut v: Vec<Vec<usize>> = out.into_iter().collect();
        v.sort_by_key(|c| c.len());
        v
    }

    pub fn is_cone(&self, c: &[usize]) -> bool {
        self.cones.iter().any(|m| c.iter().all(|x| m.contains(x)))
    }

    pub fn is_smooth_cone(&self, c: &[usize]) -> bool {
        linalg::minor_gcd(&self.cone_rays(c)) == 1
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| self.is_smooth_cone(c))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.rank;
        if self.cones.iter().any(|c| c.len() != n) {
            return false;
        }
        let mut facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (k, c) in self.cones.iter().enumerate() {
            for skip in 0..n {
                let f: Vec<usize> = c.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &r)| r).collect();
                facets.entry(f).or_default().push(k);
            }
        }
        if facets.values().any(|v| v.len() != 2) {
            return false;
        }
        // dual graph connectivity
        let mut seen = vec![false; self.cones.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(k) = stack.pop() {
            for v in facets.values() {
                if v.contains(&k) {
                    for &l in v {
                        if !seen[l] {
                            seen[l] = true;
                            stack.push(l);
                        }
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Star subdivision at the maximal cone `cone` (an index into `cones()`).
    pub fn star_subdivision(&self, cone: usize) -> Result<Fan> {
        let c = self.cones.get(cone).ok_or_else(|| Error::Invalid(format!("no cone with index {cone}")))?.clone();
        self.star_subdivision_at(&c)
    }

    /// Star subdivision at any smooth cone of dimension ≥ 2.
    pub fn star_subdivision_at(&self, tau: &[usize]) -> Result<Fan> {
        if !self.is_cone(tau) || tau.len() < 2 {
            return Err(Error::Invalid(format!("{tau:?} is not a cone of dimension at least 2")));
        }
        if !self.is_smooth_cone(tau) {
            return Err(Error::NonSmoothCone(tau.len()));
        }
        let new_ray: Vec<i64> = (0..self.rank).map(|i| tau.iter().map(|&r| self.rays[r][i]).sum()).collect();
        let idx = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(new_ray);
        let mut cones = Vec::new();
        for c in &self.cones {
            if tau.iter().all(|x| c.contains(x)) {
                for u in tau {
                    let mut d: Vec<usize> = c.iter().filter(|x| *x != u).copied().collect();
                    d.push(idx);
                    cones.push(d);
                }
            } else {
                cones.push(c.clone());
            }
        }
        Fan::new(self.rank, rays, cones)
    }

    fn ray_index(&self, v: &[i64]) -> Option<usize> {
        self.rays.iter().position(|w| w == v)
    }

    pub fn fan_automorphisms(&self) -> Result<FanAutomorphismGroup> {
        if self.rank > MAX_RANK {
            return Err(Error::RankBound(self.rank));
        }
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let n = self.rank;
        let base = &self.cones[0];
        // columns are the base rays
        let v_cols: Vec<Vec<i64>> = (0..n).map(|i| base.iter().map(|&r| self.rays[r][i]).collect()).collect();
        let v_inv = linalg::inverse(&linalg::to_q(&v_cols)).expect("full-dimensional cone");
        let cone_set: BTreeSet<Vec<usize>> = self.cones.iter().cloned().collect();
        let mut found: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        for target in &self.cones {
            for perm in permutations(target) {
                let w: Vec<Vec<Q>> = (0..n).map(|i| perm.iter().map(|&r| Q::from_integer(self.rays[r][i])).collect()).collect();
                let mut a = vec![vec![0i64; n]; n];
                let mut integral = true;
                for i in 0..n {
                    for j in 0..n {
                        let x: Q = (0..n).map(|k| w[i][k] * v_inv[k][j]).sum();
                        if !x.is_integer() {
                            integral = false;
                        }
                        a[i][j] = x.to_integer();
                    }
                }
                if !integral || linalg::det_i64(&a).abs() != 1 {
                    continue;
                }
                let Some(sigma) = self.ray_permutation(&a) else { continue };
                let preserves = self.cones.iter().all(|c| {
                    let mut img: Vec<usize> = c.iter().map(|&r| sigma[r]).collect();
                    img.sort_unstable();
                    cone_set.contains(&img)
                });
                if preserves {
                    found.insert(a);
                }
            }
        }
        Ok(FanAutomorphismGroup { rank: n, matrices: found.into_iter().collect() })
    }

    /// Where `a` sends each ray, if it permutes the ray set.
    pub fn ray_permutation(&self, a: &[Vec<i64>]) -> Option<Vec<usize>> {
        let perm: Option<Vec<usize>> = self.rays.iter().map(|v| self.ray_index(&mat_vec(a, v))).collect();
        let perm = perm?;
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        (distinct.len() == perm.len()).then_some(perm)
    }

    /// Rays in counterclockwise order starting from the first ray.
    pub fn cyclic_order(&self) -> Result<Vec<usize>> {
        if self.rank != 2 {
            return Err(Error::NotSurface);
        }
        let half = |v: &[i64]| if v[1] > 0 || (v[1] == 0 && v[0] > 0) { 0 } else { 1 };
        let mut idx: Vec<usize> = (0..self.rays.len()).collect();
        idx.sort_by(|&a, &b| {
            let (u, v) = (&self.rays[a], &self.rays[b]);
            half(u).cmp(&half(v)).then_with(|| 0.cmp(&(u[0] * v[1] - u[1] * v[0])))
        });
        let start = idx.iter().position(|&i| i == 0).unwrap_or(0);
        idx.rotate_left(start);
        Ok(idx)
    }

    pub fn toric_surface_intersections(&self) -> Result<SurfaceIntersections> {
        if self.rank != 2 {
            return Err(Error::NotSurface);
        }
        if let Some(k) = self.cones.iter().position(|c| !self.is_smooth_cone(c)) {
            return Err(Error::NonSmoothCone(k));
        }
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        let order = self.cyclic_order()?;
        let r = order.len();
        let mut m = vec![vec![0i64; r]; r];
        for pos in 0..r {
            let (prev, cur, next) = (order[(pos + r - 1) % r], order[pos], order[(pos + 1) % r]);
            let v = &self.rays[cur];
            let s = [self.rays[prev][0] + self.rays[next][0], self.rays[prev][1] + self.rays[next][1]];
            let c = if v[0] != 0 { s[0] / v[0] } else { s[1] / v[1] };
            if s[0] != c * v[0] || s[1] != c * v[1] {
                return Err(Error::InvalidFan("neighbouring rays violate the wheel relation".into()));
            }
            m[cur][cur] = -c;
            m[cur][prev] = 1;
            m[cur][next] = 1;
        }
        if r == 2 {
            return Err(Error::InvalidFan("a complete surface fan has at least three rays".into()));
        }
        Ok(SurfaceIntersections { order, matrix: m })
    }

    /// Charts x^m ↦ x^{pm} for each maximal cone.
    pub fn multiplication_by_p_witness(&self, p: u32) -> Result<MultiplicationByP> {
        let field = FiniteField::get(p)?;
        let n = self.rank;
        let preserves_cones = self.cones.iter().all(|c| {
            let hs = halfspaces(&self.cone_rays(c), n);
            c.iter().all(|&r| hs.contains(&self.rays[r].iter().map(|&x| Q::from_integer(x * p as i64)).collect::<Vec<_>>()))
        });
        let mut charts = Vec::new();
        let mut skipped = Vec::new();
        for (k, c) in self.cones.iter().enumerate() {
            if !self.is_smooth_cone(c) {
                skipped.push(k);
                continue;
            }
            let basis = unimodular_completion(&self.cone_rays(c), n).expect("smooth cones extend to a basis");
            let cols: Vec<Vec<i64>> = (0..n).map(|i| basis.iter().map(|b| b[i]).collect()).collect();
            let inv = linalg::inverse(&linalg::to_q(&cols)).unwrap();
            let dual: Vec<Vec<i64>> = inv.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
            let names: Vec<String> = (0..n).map(|i| format!("u{k}_{i}")).collect();
            let vars: Arc<[String]> = names.into();
            let lift = FrobeniusLiftChart::standard(field, vars.clone());
            charts.push(ToricChart { cone: k, torus: (0..n).map(|i| i >= c.len()).collect(), basis, dual, lift });
        }
        let mut transitions = Vec::new();
        for a in &charts {
            for b in &charts {
                if a.cone == b.cone {
                    continue;
                }
                // ⟨m_{b,j}, basis_{a,i}⟩
                let t: Vec<Vec<i64>> =
                    b.dual.iter().map(|m| a.basis.iter().map(|v| m.iter().zip(v).map(|(x, y)| x * y).sum()).collect()).collect();
                let compatible = monomials_commute(&a.lift, &t)?;
                transitions.push(Transition { from: a.cone, to: b.cone, matrix: t, compatible });
            }
        }
        Ok(MultiplicationByP { p, preserves_cones, charts, transitions, skipped })
    }
}

fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Completes rows with unit minor gcd to a unimodular basis by a small search.
pub fn unimodular_completion(rows: &[Vec<i64>], n: usize) -> Option<Vec<Vec<i64>>> {
    if rows.len() == n {
        return (linalg::det_i64(rows).abs() == 1).then(|| rows.to_vec());
    }
    let bound = rows.iter().flatten().map(|x| x.abs()).max().unwrap_or(0) + 1;
    let width = (2 * bound + 1) as usize;
    let total = width.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % width) as i64 - bound;
                c /= width;
                d
            })
            .collect();
        let mut next = rows.to_vec();
        next.push(v);
        if linalg::minor_gcd(&next) == 1 {
            if let Some(b) = unimodular_completion(&next, n) {
                return Some(b);
            }
        }
    }
    None
}

// Both sides of each transition monomial satisfy F̃*(x^a) = (x^a)^p under the chart lift.
fn monomials_commute(lift: &FrobeniusLiftChart, t: &[Vec<i64>]) -> Result<bool> {
    let one = FqPoly::one(lift.field(), lift.vars().clone());
    for row in t {
        let pos: Vec<u32> = row.iter().map(|&e| e.max(0) as u32).collect();
        let neg: Vec<u32> = row.iter().map(|&e| (-e).max(0) as u32).collect();
        for exps in [pos, neg] {
            let mono = FqPoly::monomial(lift.field(), lift.vars().clone(), exps, lift.field().one());
            if !lift.delta(&mono)?.is_zero() {
                return Ok(false);
            }
        }
    }
    let det = lift.det_xi();
    let expected = (0..lift.n()).fold(one, |acc, i| {
        acc * FqPoly::var(lift.field(), lift.vars().clone(), i).pow(lift.p() - 1)
    });
    Ok(det == expected)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanAutomorphismGroup {
    pub rank: usize,
    pub matrices: Vec<Vec<Vec<i64>>>,
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

impl FanAutomorphismGroup {
    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn contains(&self, a: &[Vec<i64>]) -> bool {
        self.matrices.iter().any(|m| m == a)
    }

    pub fn identity(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| (i == j) as i64).collect()).collect()
    }

    /// Identity, products and inverses all stay in the set.
    pub fn is_group(&self) -> bool {
        let id = self.identity();
        if !self.contains(&id) {
            return false;
        }
        for a in &self.matrices {
            if !self.matrices.iter().any(|b| mat_mul(a, b) == id) {
                return false;
            }
            for b in &self.matrices {
                if !self.contains(&mat_mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Intersection numbers of the boundary divisors of a smooth complete toric surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceIntersections {
    pub order: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

impl SurfaceIntersections {
    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let m = &self.matrix;
        (0..m.len()).map(|i| (0..m.len()).map(|j| a[i] * m[i][j] * b[j]).sum::<i64>()).sum()
    }

    /// K = −Σ D_i
    pub fn canonical(&self) -> Vec<i64> {
        vec![-1; self.matrix.len()]
    }

    pub fn self_intersection(&self, i: usize) -> i64 {
        self.matrix[i][i]
    }
}

#[derive(Clone, Debug)]
pub struct ToricChart {
    pub cone: usize,
    /// coordinates that are torus factors (cone of lower dimension)
    pub torus: Vec<bool>,
    /// rays of the cone completed to a Z-basis
    pub basis: Vec<Vec<i64>>,
    /// exponents m of the chart coordinates x^m
    pub dual: Vec<Vec<i64>>,
    pub lift: FrobeniusLiftChart,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    /// coordinate j of `to` is ∏_i x_i^{matrix[j][i]} in the coordinates of `from`
    pub matrix: Vec<Vec<i64>>,
    pub compatible: bool,
}

#[derive(Clone, Debug)]
pub struct MultiplicationByP {
    pub p: u32,
    pub preserves_cones: bool,
    pub charts: Vec<ToricChart>,
    pub transitions: Vec<Transition>,
    /// non-smooth maximal cones without a polynomial chart
    pub skipped: Vec<usize>,
}

impl MultiplicationByP {
    pub fn holds(&self) -> bool {
        self.preserves_cones && self.transitions.iter().all(|t| t.compatible)
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

const CATALOG: &str = include_str!("../data/fans.json");

#[derive(Deserialize)]
struct CatalogFile {
    fans: BTreeMap<String, FanData>,
    del_pezzo: Vec<String>,
}

fn catalog_file() -> Result<CatalogFile> {
    serde_json::from_str(CATALOG).map_err(|e| Error::InvalidFan(format!("bundled catalog: {e}")))
}

/// The bundled fans by name.
pub fn catalog() -> Result<BTreeMap<String, Fan>> {
    catalog_file()?.fans.iter().map(|(k, d)| Ok((k.clone(), Fan::from_data(d)?))).collect()
}

pub fn catalog_fan(name: &str) -> Result<Fan> {
    let file = catalog_file()?;
    let d = file.fans.get(name).ok_or_else(|| Error::InvalidFan(format!("no catalog fan named {name}")))?;
    Fan::from_data(d)
}

/// Names of the five smooth toric del Pezzo surfaces in the catalog.
pub fn del_pezzo_names() -> Result<Vec<String>> {
    Ok(catalog_file()?.del_pezzo)
}

/// Fan of the Hirzebruch surface F_n: rays e1, e2, −e1 + n·e2, −e2.
pub fn hirzebruch(n: i64) -> Fan {
    Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, n], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
        .expect("Hirzebruch fans are valid")
}

/// Fan of P^n.
pub fn projective_space(n: usize) -> Result<Fan> {
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    rays.push(vec![-1; n]);
    let cones = linalg::k_subsets(n + 1, n);
    Fan::new(n, rays, cones)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothness() {
        assert!(projective_space(2).unwrap().is_smooth());
        let bad = Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]]).unwrap();
        assert!(!bad.is_smooth());
        for n in 0..4 {
            assert!(hirzebruch(n).is_smooth());
        }
    }

    #[test]
    fn completeness() {
        assert!(catalog_fan("P1xP1").unwrap().is_complete());
        let quadrant = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert!(!quadrant.is_complete());
        assert!(projective_space(3).unwrap().is_complete());
        assert!(projective_space(1).unwrap().is_complete());
    }

    #[test]
    fn rejects_overlaps_and_bad_rays() {
        let overlap = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![0, 2]]);
        assert!(matches!(overlap, Err(Error::InvalidFan(_))));
        assert!(matches!(Fan::new(2, vec![vec![0, 0]], vec![]), Err(Error::InvalidFan(_))));
        assert!(matches!(Fan::new(4, vec![], vec![]), Err(Error::RankBound(4))));
        let f = Fan::new(2, vec![vec![2, 0], vec![1, 0], vec![0, 3]], vec![vec![0, 2]]).unwrap();
        assert_eq!(f.rays(), &[vec![1, 0], vec![0, 1]]);
        // two 3d cones meeting only in a ray are fine; sharing an edge's interior is not
        let ok = Fan::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, 0, 0], vec![0, -1, 0]], vec![
            vec![0, 1, 2],
            vec![2, 3, 4],
        ]);
        assert!(ok.is_ok());
    }

    #[test]
    fn star_subdivision_of_p2_is_f1() {
        let p2 = projective_space(2).unwrap();
        let f1 = p2.star_subdivision(0).unwrap();
        assert_eq!(f1.rays().len(), 4);
        assert!(f1.is_smooth() && f1.is_complete());
        let si = f1.toric_surface_intersections().unwrap();
        assert_eq!(si.self_intersection(3), -1);
        let f0 = hirzebruch(0).star_subdivision(2).unwrap();
        assert_eq!(f0.rays().len(), 5);
        assert!(f0.is_smooth() && f0.is_complete());
        let cone = Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]]).unwrap();
        assert!(matches!(cone.star_subdivision(0), Err(Error::NonSmoothCone(_))));
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(projective_space(2).unwrap().fan_automorphisms().unwrap().order(), 6);
        assert_eq!(hirzebruch(0).fan_automorphisms().unwrap().order(), 8);
        let g = hirzebruch(2).fan_automorphisms().unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.is_group());
        let q = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert!(matches!(q.fan_automorphisms(), Err(Error::NotComplete)));
    }

    #[test]
    fn intersections() {
        for n in 0..4 {
            let si = hirzebruch(n).toric_surface_intersections().unwrap();
            assert_eq!(si.self_intersection(1), -n);
            assert_eq!(si.self_intersection(3), n);
            let k = si.canonical();
            for i in 0..4 {
                let mut d = vec![0; 4];
                d[i] = 1;
                let dk: Vec<i64> = d.iter().zip(&k).map(|(a, b)| a + b).collect();
                assert_eq!(si.dot(&d, &dk), -2);
            }
        }
        let si = projective_space(2).unwrap().toric_surface_intersections().unwrap();
        assert!((0..3).all(|i| si.self_intersection(i) == 1));
        assert!(matches!(projective_space(3).unwrap().toric_surface_intersections(), Err(Error::NotSurface)));
    }

    #[test]
    fn multiplication_by_p() {
        let a1 = Fan::new(1, vec![vec![1]], vec![vec![0]]).unwrap();
        let w = a1.multiplication_by_p_witness(3).unwrap();
        assert_eq!(w.charts.len(), 1);
        assert!(w.charts[0].lift.is_standard() && w.holds());
        let w = projective_space(2).unwrap().multiplication_by_p_witness(5).unwrap();
        assert_eq!(w.charts.len(), 3);
        assert_eq!(w.transitions.len(), 6);
        assert!(w.holds());
        assert_eq!(hirzebruch(1).multiplication_by_p_witness(2).unwrap().charts.len(), 4);
    }

    #[test]
    fn catalog_loads() {
        let c = catalog().unwrap();
        for name in ["P1", "P2", "P3", "F0", "F1", "F2", "F3", "P1xP1", "P1xP1xP1", "Bl2P2", "Bl3P2"] {
            let f = &c[name];
            assert!(f.is_smooth() && f.is_complete(), "{name}");
        }
        assert_eq!(del_pezzo_names().unwrap().len(), 5);
        let p2 = Fan::from_json(r#"{"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1],[1,2],[2,0]]}"#).unwrap();
        assert_eq!(p2, c["P2"]);
        assert_eq!(Fan::from_json(&p2.to_json()).unwrap(), p2);
    }
}
