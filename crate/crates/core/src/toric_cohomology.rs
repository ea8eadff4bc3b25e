//! Cohomology of torus-invariant divisors on smooth complete toric varieties.
//!
//! For a character m let N(m) = {ρ : ⟨m, u_ρ⟩ < −a_ρ}. Then
//! h^i(O(D))_m = dim H̃^{i−1}(Σ|N(m)) where Σ|N is the subcomplex of the fan
//! (as a simplicial complex on the rays) induced on N, and H̃^{−1}(∅) = k.
//! Only m in bounded chambers of the arrangement ⟨m, u_ρ⟩ = −a_ρ − ½ can
//! contribute in positive degree, so the window is the bounding box of that
//! arrangement's vertices.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{self, Q};
use crate::smith::SimplicialComplex;

/// Largest number of characters visited in one cohomology computation.
pub const WINDOW_LIMIT: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDivisor {
    fan: Arc<Fan>,
    coeffs: Vec<i64>,
}

impl ToricDivisor {
    pub fn new(fan: Arc<Fan>, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != fan.rays().len() {
            return Err(Error::Invalid(format!("{} coefficients for {} rays", coeffs.len(), fan.rays().len())));
        }
        Ok(ToricDivisor { fan, coeffs })
    }

    pub fn zero(fan: Arc<Fan>) -> Self {
        let r = fan.rays().len();
        ToricDivisor { fan, coeffs: vec![0; r] }
    }

    /// K = −Σ D_ρ
    pub fn canonical(fan: Arc<Fan>) -> Self {
        let r = fan.rays().len();
        ToricDivisor { fan, coeffs: vec![-1; r] }
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.fan != o.fan {
            return Err(Error::InvalidFan("divisors on different fans".into()));
        }
        Ok(ToricDivisor { fan: self.fan.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, k: i64) -> Self {
        ToricDivisor { fan: self.fan.clone(), coeffs: self.coeffs.iter().map(|a| k * a).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    fn pairing(&self, m: &[i64], rho: usize) -> i64 {
        m.iter().zip(self.fan.ray(rho)).map(|(a, b)| a * b).sum()
    }

    fn negative_mask(&self, m: &[i64]) -> u64 {
        (0..self.coeffs.len()).filter(|&r| self.pairing(m, r) < -self.coeffs[r]).fold(0, |acc, r| acc | 1 << r)
    }
}

/// Lattice points of {m : ⟨m, u_ρ⟩ ≥ −a_ρ}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionLattice {
    pub points: Vec<Vec<i64>>,
}

impl SectionLattice {
    pub fn h0(&self) -> usize {
        self.points.len()
    }
}

// vertices of the arrangement ⟨m, u_ρ⟩ = −a_ρ − shift
fn arrangement_box(fan: &Fan, coeffs: &[i64], shift: Q) -> Option<Vec<(i64, i64)>> {
    let n = fan.rank();
    let mut lo = vec![i64::MAX; n];
    let mut hi = vec![i64::MIN; n];
    let mut any = false;
    for subset in linalg::k_subsets(fan.rays().len(), n) {
        let a = linalg::to_q(&fan.cone_rays(&subset));
        let b: Vec<Q> = subset.iter().map(|&r| Q::from_integer(-coeffs[r]) - shift).collect();
        if let Some(m) = linalg::solve(&a, &b) {
            any = true;
            for i in 0..n {
                lo[i] = lo[i].min(m[i].floor().to_integer());
                hi[i] = hi[i].max(m[i].ceil().to_integer());
            }
        }
    }
    any.then(|| lo.into_iter().zip(hi).collect())
}

fn box_points(bx: &[(i64, i64)]) -> Result<impl Iterator<Item = Vec<i64>> + '_> {
    let mut total: u64 = 1;
    for &(l, h) in bx {
        if h < l {
            total = 0;
            break;
        }
        total = total.saturating_mul((h - l + 1) as u64);
    }
    if total > WINDOW_LIMIT {
        return Err(Error::WindowOverflow(total));
    }
    Ok((0..total).map(move |mut code| {
        bx.iter()
            .map(|&(l, h)| {
                let w = (h - l + 1) as u64;
                let v = l + (code % w) as i64;
                code /= w;
                v
            })
            .collect()
    }))
}

pub fn global_sections(d: &ToricDivisor) -> Result<SectionLattice> {
    if !d.fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let Some(bx) = arrangement_box(&d.fan, &d.coeffs, Q::from_integer(0)) else {
        return Ok(SectionLattice { points: vec![] });
    };
    let points = box_points(&bx)?.filter(|m| d.negative_mask(m) == 0).collect();
    Ok(SectionLattice { points })
}

fn check_smooth_complete(fan: &Fan) -> Result<()> {
    if fan.rank() > crate::fan::MAX_RANK {
        return Err(Error::RankBound(fan.rank()));
    }
    if let Some(k) = fan.cones().iter().position(|c| !fan.is_smooth_cone(c)) {
        return Err(Error::NonSmoothCone(k));
    }
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(())
}

/// (h^0, …, h^n) of O(D).
pub fn cohomology_all(d: &ToricDivisor) -> Result<Vec<u64>> {
    let fan = &d.fan;
    check_smooth_complete(fan)?;
    if fan.rays().len() > 63 {
        return Err(Error::InvalidFan("too many rays".into()));
    }
    let n = fan.rank();
    let mut h = vec![0u64; n + 1];
    let Some(bx) = arrangement_box(fan, &d.coeffs, Q::new(1, 2)) else {
        return Ok(h);
    };
    let faces: Vec<Vec<usize>> = fan.all_cones().into_iter().filter(|c| !c.is_empty()).collect();
    let mut memo: HashMap<u64, Vec<usize>> = HashMap::new();
    for m in box_points(&bx)? {
        let mask = d.negative_mask(&m);
        let betti = memo.entry(mask).or_insert_with(|| {
            let sub = faces.iter().filter(|f| f.iter().all(|&r| mask >> r & 1 == 1)).cloned();
            SimplicialComplex::new(sub).reduced_betti()
        });
        // betti[k] = b̃_{k−1} contributes to h^k
        for (k, &b) in betti.iter().enumerate() {
            if k <= n {
                h[k] += b as u64;
            }
        }
    }
    Ok(h)
}

pub fn cohomology(d: &ToricDivisor, i: usize) -> Result<u64> {
    Ok(cohomology_all(d)?.get(i).copied().unwrap_or(0))
}

pub fn euler_characteristic(d: &ToricDivisor) -> Result<i64> {
    Ok(cohomology_all(d)?.iter().enumerate().map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) }).sum())
}

/// χ(D) = 1 + ½ D·(D − K) from the intersection form of the fan.
pub fn riemann_roch_surface(d: &ToricDivisor) -> Result<i64> {
    let si = d.fan.toric_surface_intersections()?;
    let k = si.canonical();
    let dk: Vec<i64> = d.coeffs.iter().zip(&k).map(|(a, b)| a - b).collect();
    let twice = si.dot(&d.coeffs, &dk);
    Ok(1 + twice / 2)
}

/// Strict convexity of the support function: on each maximal cone σ the
/// character m_σ with ⟨m_σ, u_ρ⟩ = −a_ρ for ρ ∈ σ satisfies ⟨m_σ, u_ρ⟩ > −a_ρ
/// for every other ray.
pub fn ample_test(fan: &Fan, d: &ToricDivisor) -> bool {
    if !fan.is_complete() || d.coeffs.len() != fan.rays().len() {
        return false;
    }
    for c in fan.cones() {
        let a = linalg::to_q(&fan.cone_rays(c));
        let b: Vec<Q> = c.iter().map(|&r| Q::from_integer(-d.coeffs[r])).collect();
        let Some(m) = linalg::solve(&a, &b) else { return false };
        for r in 0..fan.rays().len() {
            if c.contains(&r) {
                continue;
            }
            let val: Q = m.iter().zip(fan.ray(r)).map(|(x, &y)| x * Q::from_integer(y)).sum();
            if val <= Q::from_integer(-d.coeffs[r]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BottEntry {
    pub i: usize,
    pub j: usize,
    /// rank of the free sheaf Ω^i(log D)
    pub rank: u64,
    pub dimension: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BottReport {
    pub entries: Vec<BottEntry>,
    pub note: &'static str,
}

impl BottReport {
    pub fn vanishes(&self) -> bool {
        self.entries.iter().all(|e| e.dimension == 0)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// h^j(Ω^i(log ∂) ⊗ L) for j > 0 with ∂ the full toric boundary.
pub fn bott_vanishing_log(fan: &Fan, ample: &ToricDivisor) -> Result<BottReport> {
    check_smooth_complete(fan)?;
    if !ample_test(fan, ample) {
        return Err(Error::NotAmple);
    }
    let h = cohomology_all(ample)?;
    let n = fan.rank();
    let mut entries = Vec::new();
    for i in 0..=n {
        let rank = binomial(n as u64, i as u64);
        for (j, &hj) in h.iter().enumerate().skip(1) {
            entries.push(BottEntry { i, j, rank, dimension: rank * hj });
        }
    }
    Ok(BottReport {
        entries,
        note: "Omega^i(log boundary) is free of rank C(n,i) on a toric pair; non-log Omega^i is not computed",
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub checked: usize,
    /// multidegrees λ with h¹(Σ λ_i L_i) ≠ 0, paired with that h¹
    pub violations: Vec<(Vec<i64>, u64)>,
}

impl FlatnessReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks h¹(L_1^{λ_1} ⊗ … ⊗ L_r^{λ_r}) = 0 for λ in the box `window`.
pub fn section_ring_flatness(fan: &Fan, ls: &[ToricDivisor], window: &[(i64, i64)]) -> Result<FlatnessReport> {
    check_smooth_complete(fan)?;
    if ls.is_empty() || window.len() != ls.len() || window.iter().any(|&(l, h)| h < l) {
        return Err(Error::EmptyWindow);
    }
    let fan = Arc::new(fan.clone());
    let mut checked = 0;
    let mut violations = Vec::new();
    for lambda in box_points(window)? {
        let mut d = ToricDivisor::zero(fan.clone());
        for (l, &k) in ls.iter().zip(&lambda) {
            d = d.add(&ToricDivisor::new(fan.clone(), l.coeffs.clone())?.scale(k))?;
        }
        let h1 = cohomology(&d, 1)?;
        checked += 1;
        if h1 != 0 {
            violations.push((lambda, h1));
        }
    }
    violations.sort();
    Ok(FlatnessReport { checked, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{catalog_fan, hirzebruch, projective_space};

    fn div(fan: &Arc<Fan>, c: &[i64]) -> ToricDivisor {
        ToricDivisor::new(fan.clone(), c.to_vec()).unwrap()
    }

    #[test]
    fn sections_on_p2() {
        let p2 = Arc::new(projective_space(2).unwrap());
        assert_eq!(global_sections(&div(&p2, &[1, 0, 0])).unwrap().h0(), 3);
        assert_eq!(global_sections(&div(&p2, &[-1, 0, 0])).unwrap().h0(), 0);
        assert_eq!(global_sections(&div(&p2, &[2, 1, 0])).unwrap().h0(), 10);
    }

    #[test]
    fn canonical_on_p2() {
        let p2 = Arc::new(projective_space(2).unwrap());
        assert_eq!(cohomology_all(&div(&p2, &[-3, 0, 0])).unwrap(), vec![0, 0, 1]);
        assert_eq!(riemann_roch_surface(&div(&p2, &[1, 0, 0])).unwrap(), 3);
        assert_eq!(riemann_roch_surface(&ToricDivisor::canonical(p2)).unwrap(), 1);
    }

    #[test]
    fn kunneth_on_quadric() {
        let q = Arc::new(catalog_fan("P1xP1").unwrap());
        assert_eq!(cohomology(&div(&q, &[-2, 0, 0, 0]), 1).unwrap(), 1);
        assert_eq!(riemann_roch_surface(&ToricDivisor::zero(Arc::new(hirzebruch(2)))).unwrap(), 1);
    }

    #[test]
    fn cohomology_of_p1_and_p3() {
        let p1 = Arc::new(projective_space(1).unwrap());
        for d in -5i64..5 {
            let h = cohomology_all(&div(&p1, &[d, 0])).unwrap();
            assert_eq!(h, vec![(d + 1).max(0) as u64, (-d - 1).max(0) as u64]);
        }
        let p3 = Arc::new(projective_space(3).unwrap());
        assert_eq!(cohomology_all(&div(&p3, &[-4, 0, 0, 0])).unwrap(), vec![0, 0, 0, 1]);
        assert_eq!(cohomology_all(&div(&p3, &[2, 0, 0, 0])).unwrap(), vec![10, 0, 0, 0]);
    }

    #[test]
    fn ampleness() {
        let p2 = projective_space(2).unwrap();
        let a = Arc::new(p2.clone());
        assert!(ample_test(&p2, &div(&a, &[1, 0, 0])));
        assert!(!ample_test(&p2, &div(&a, &[0, 0, 0])));
        let f1 = hirzebruch(1);
        let fa = Arc::new(f1.clone());
        // ray 1 (e2) is the exceptional curve
        assert!(!ample_test(&f1, &div(&fa, &[0, 1, 0, 0])));
        let q = catalog_fan("P1xP1").unwrap();
        assert!(ample_test(&q, &div(&Arc::new(q.clone()), &[1, 1, 0, 0])));
    }

    #[test]
    fn bott() {
        let p2 = projective_space(2).unwrap();
        let a = Arc::new(p2.clone());
        let r = bott_vanishing_log(&p2, &div(&a, &[1, 0, 0])).unwrap();
        assert!(r.vanishes());
        assert_eq!(r.entries.len(), 6);
        assert!(matches!(bott_vanishing_log(&p2, &div(&a, &[-1, 0, 0])), Err(Error::NotAmple)));
    }

    #[test]
    fn flatness_on_quadric() {
        let q = catalog_fan("P1xP1").unwrap();
        let a = Arc::new(q.clone());
        let ls = [div(&a, &[1, 0, 0, 0]), div(&a, &[0, 1, 0, 0])];
        let r = section_ring_flatness(&q, &ls, &[(-3, 3), (-3, 3)]).unwrap();
        for (l, h1) in &r.violations {
            let oracle = |x: i64, y: i64| ((x + 1).max(0) * (-y - 1).max(0) + (-x - 1).max(0) * (y + 1).max(0)) as u64;
            assert_eq!(*h1, oracle(l[0], l[1]));
        }
        assert!(r.violations.iter().all(|(l, _)| l.iter().any(|&x| x <= -2)));
        assert!(matches!(section_ring_flatness(&q, &ls, &[(1, 0), (0, 0)]), Err(Error::EmptyWindow)));
    }
}
