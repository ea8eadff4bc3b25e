//! Frobenius splittings of Pⁿ, Fedder's criterion, and the Cartier operator.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};
use crate::forms::LogForm;
use crate::poly::{var_names, FqPoly, Monomial};
use crate::witt_frobenius::FrobeniusLiftChart;

/// A section of ω^{1−p} on Pⁿ: homogeneous of degree (n+1)(p−1).
#[derive(Clone, Debug)]
pub struct SplittingSection {
    n: usize,
    s: FqPoly,
}

impl SplittingSection {
    pub fn new(n: usize, s: FqPoly) -> Result<Self> {
        let p = s.p();
        let expected = (n as u32 + 1) * (p - 1);
        if s.nvars() != n + 1 {
            return Err(Error::Invalid(format!("section must use {} variables", n + 1)));
        }
        let found = s.total_degree().unwrap_or(0);
        if s.is_zero() || !s.is_homogeneous() || found != expected {
            return Err(Error::WrongDegree { expected, found });
        }
        Ok(SplittingSection { n, s })
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn poly(&self) -> &FqPoly {
        &self.s
    }
    /// Coefficient of (x_0⋯x_n)^{p−1}.
    pub fn key_coefficient(&self) -> Fq {
        self.s.coeff(&vec![self.s.p() - 1; self.n + 1])
    }
}

pub fn splits_pn(s: &SplittingSection) -> bool {
    !s.key_coefficient().is_zero()
}

/// Fedder's criterion for k[x]/(f) at an F_q-point: f^{p−1} ∉ m^{[p]}.
pub fn fedder_hypersurface(f: &FqPoly, at: &[Fq]) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Invalid("f must be nonzero".into()));
    }
    if at.len() != f.nvars() {
        return Err(Error::Invalid(format!("point needs {} coordinates", f.nvars())));
    }
    if !f.eval(at).is_zero() {
        return Err(Error::UnitAtPoint);
    }
    let field = f.field();
    let vars = f.vars().clone();
    let shifted: Vec<FqPoly> = at
        .iter()
        .enumerate()
        .map(|(i, &a)| FqPoly::var(field, vars.clone(), i) + FqPoly::constant(field, vars.clone(), a))
        .collect();
    let g = f.substitute(&shifted)?.checked_pow(f.p() - 1)?;
    let p = f.p();
    let found = g.terms().any(|(e, _)| e.iter().all(|&x| x < p));
    Ok(found)
}

/// C^{-1}(g·η_I) = g^p·∏_{i∈I unmarked} x_i^{p−1}·η_I.
pub fn cartier_inverse(omega: &LogForm) -> Result<LogForm> {
    let p = omega.field().p();
    let mut out = omega.zero_like(omega.degree());
    for (idx, g) in omega.terms() {
        let mut m = vec![0u32; omega.n()];
        for &i in idx {
            if !omega.marked()[i] {
                m[i] = p - 1;
            }
        }
        out.add_term(idx.clone(), g.pth_power()?.mul_monomial(&m)?);
    }
    Ok(out)
}

/// Splits a closed form as `C^{-1}(C(ω)) + dh`; returns `(C(ω), h)`.
///
/// In the log basis a term `c·x^b·dlog x_I` with p | b is `C^{-1}` of `c^{1/p} x^{b/p} dlog x_I`.
/// The terms of a fixed exponent b with p ∤ b form a closed piece `x^b·η` which equals
/// `d(x^b·ι_k η / b_k)` for any k with `b_k ≢ 0`.
pub fn cartier_decomposition(omega: &LogForm) -> Result<(LogForm, LogForm)> {
    if !omega.is_closed() {
        return Err(Error::NotClosed);
    }
    let p = omega.field().p();
    let field = omega.field();
    let vars = omega.vars().clone();
    let marked = omega.marked().clone();
    let mut root = omega.zero_like(omega.degree());
    let mut primitive = omega.zero_like(omega.degree().saturating_sub(1));
    for (idx, g) in omega.terms() {
        for (a, c) in g.terms() {
            // log exponent b = a + 1 on unmarked indices of I
            let mut b: Monomial = a.clone();
            for &i in idx {
                if !marked[i] {
                    b[i] += 1;
                }
            }
            let to_basis = |e: &Monomial| -> Monomial {
                let mut out = e.clone();
                for &i in idx {
                    if !marked[i] {
                        out[i] -= 1;
                    }
                }
                out
            };
            match b.iter().position(|x| x % p != 0) {
                None => {
                    let m: Monomial = b.iter().map(|x| x / p).collect();
                    let coef = FqPoly::monomial(field, vars.clone(), to_basis(&m), c.frobenius_inv());
                    root.add_term(idx.clone(), coef);
                }
                Some(k) => {
                    // ι_k (x^b dlog x_I) / b_k, contracting dlog x_k out of dlog x_I
                    let Some(pos) = idx.iter().position(|&i| i == k) else {
                        continue;
                    };
                    let rest: Vec<usize> = idx.iter().copied().filter(|&i| i != k).collect();
                    let sign = if pos % 2 == 1 { -field.one() } else { field.one() };
                    let bk = field.int((b[k] % p) as i64);
                    let mut e = b.clone();
                    for &i in &rest {
                        if !marked[i] {
                            e[i] -= 1;
                        }
                    }
                    let coef = FqPoly::monomial(field, vars.clone(), e, *c * sign / bk);
                    primitive.add_term(rest, coef);
                }
            }
        }
    }
    Ok((root, primitive))
}

/// The Cartier operator on closed log forms.
pub fn cartier(omega: &LogForm) -> Result<LogForm> {
    Ok(cartier_decomposition(omega)?.0)
}

/// Checks C(ξ(ω)) = ω on `trials` random 1-forms of degree ≤ 3.
pub fn xi_splits_cartier(chart: &FrobeniusLiftChart, trials: usize, seed: u64) -> Result<bool> {
    xi_splits_cartier_with(chart, trials, seed, |w| chart.xi(w))
}

/// As [`xi_splits_cartier`] with an arbitrary candidate for ξ (negative controls).
pub fn xi_splits_cartier_with(
    chart: &FrobeniusLiftChart,
    trials: usize,
    seed: u64,
    xi: impl Fn(&LogForm) -> Result<LogForm>,
) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let marked = LogForm::unmarked(chart.n());
    for _ in 0..trials {
        let coeffs = (0..chart.n()).map(|_| random_poly(&mut rng, chart.field(), chart.vars().clone(), 3, 4)).collect();
        let w = LogForm::one_form(marked.clone(), coeffs)?;
        let image = xi(&w)?;
        if !image.is_closed() || cartier(&image)? != w {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn random_poly(
    rng: &mut impl Rng,
    field: &'static FiniteField,
    vars: Arc<[String]>,
    max_degree: u32,
    terms: usize,
) -> FqPoly {
    let mut g = FqPoly::zero(field, vars.clone());
    for _ in 0..terms {
        let e: Monomial = (0..vars.len()).map(|_| rng.gen_range(0..=max_degree)).collect();
        let c = field.elem(rng.gen_range(0..field.order())).unwrap();
        g.add_term(e, c);
    }
    g
}

/// Q-divisor on P¹ with F_p-rational support; coefficients are `num/denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDivisor {
    pub points: Vec<(String, u32)>,
    pub infty: u32,
    pub denominator: u32,
}

impl SplittingDivisor {
    /// Coefficients in (0,1] and total degree 2 = deg(−K_{P¹}).
    pub fn validate(&self) -> Result<()> {
        if self.denominator == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        for (label, c) in &self.points {
            if *c == 0 || *c > self.denominator {
                return Err(Error::Invalid(format!("coefficient of ({label}) outside (0,1]")));
            }
        }
        if self.infty > self.denominator {
            return Err(Error::Invalid("coefficient of (∞) exceeds 1".into()));
        }
        let total: u32 = self.points.iter().map(|(_, c)| c).sum::<u32>() + self.infty;
        if total != 2 * self.denominator {
            return Err(Error::Invalid(format!("degree {total}/{} is not 2", self.denominator)));
        }
        Ok(())
    }
}

/// Result of the translation-invariant splitting search on P¹.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantSearch {
    pub p: u32,
    pub candidates: usize,
    /// x^{p−1}y^{p−1} coefficient of each candidate section, in enumeration order
    pub coefficients: Vec<u32>,
    pub witness: Option<SplittingDivisor>,
}

/// The section `∏_{i∈F_p} (x − i·y)^{c} · y^{e}` for orbit coefficient c and ∞ coefficient e.
pub fn orbit_section(field: &'static FiniteField, c: u32, e: u32) -> FqPoly {
    let vars = var_names(&["x", "y"]);
    let x = FqPoly::var(field, vars.clone(), 0);
    let y = FqPoly::var(field, vars.clone(), 1);
    let mut s = y.pow(e);
    for i in 0..field.p() {
        let lin = &x - &y.scale(&field.int(i as i64));
        s = &s * &lin.pow(c);
    }
    s
}

/// Enumerates effective divisors of degree 2(p−1) with coefficients ≤ p−1 on {0,…,p−1,∞}
/// that are invariant under x ↦ x+1, and tests each as a splitting section.
pub fn invariant_splitting_search_p1(p: u32, q: u32) -> Result<InvariantSearch> {
    let field = FiniteField::get(q)?;
    if field.p() != p {
        return Err(Error::Invalid(format!("F_{q} has characteristic {}, not {p}", field.p())));
    }
    let total = 2 * (p - 1);
    let mut candidates = 0;
    let mut coefficients = Vec::new();
    let mut witness = None;
    // translation acts transitively on F_p, so invariant divisors are constant there
    for c in 0..p {
        for e in 0..p {
            if p * c + e != total {
                continue;
            }
            candidates += 1;
            let s = SplittingSection::new(1, orbit_section(field, c, e))?;
            let k = s.key_coefficient();
            coefficients.push(k.value());
            if !k.is_zero() && witness.is_none() {
                let points = if c == 0 { vec![] } else { (0..p).map(|i| (i.to_string(), c)).collect() };
                let d = SplittingDivisor { points, infty: e, denominator: p - 1 };
                d.validate()?;
                witness = Some(d);
            }
        }
    }
    Ok(InvariantSearch { p, candidates, coefficients, witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u32, names: &[&str]) -> (&'static FiniteField, Arc<[String]>) {
        (FiniteField::get(q).unwrap(), var_names(names))
    }

    #[test]
    fn splits_examples() {
        let (f, v) = ring(3, &["x", "y"]);
        let s = SplittingSection::new(1, FqPoly::parse(f, v.clone(), "x^2*y^2").unwrap()).unwrap();
        assert!(splits_pn(&s));
        let s = SplittingSection::new(1, FqPoly::parse(f, v.clone(), "x^3*y - x*y^3").unwrap()).unwrap();
        assert!(!splits_pn(&s));
        let (f2, v2) = ring(2, &["x", "y"]);
        let s = SplittingSection::new(1, FqPoly::parse(f2, v2, "x^2 - x*y").unwrap()).unwrap();
        assert!(splits_pn(&s));
        assert!(SplittingSection::new(1, FqPoly::parse(f, v, "x^3").unwrap()).is_err());
    }

    #[test]
    fn fedder_examples() {
        for p in [2u32, 3, 5, 7] {
            let (f, v) = ring(p, &["x", "y"]);
            let origin = [f.zero(), f.zero()];
            assert!(fedder_hypersurface(&FqPoly::parse(f, v.clone(), "x*y").unwrap(), &origin).unwrap());
            assert!(fedder_hypersurface(&FqPoly::parse(f, v.clone(), "x").unwrap(), &origin).unwrap());
        }
        let (f, v) = ring(2, &["x", "y", "z"]);
        let o = [f.zero(); 3];
        assert!(!fedder_hypersurface(&FqPoly::parse(f, v.clone(), "x^2 + y^3 + z^5").unwrap(), &o).unwrap());
        assert_eq!(
            fedder_hypersurface(&FqPoly::parse(f, v.clone(), "x + 1").unwrap(), &o).unwrap_err(),
            Error::UnitAtPoint
        );
        // translation: the node of y^2 = x^2(x+1) sits at the origin, the point (−1,0) is smooth
        let (f, v) = ring(5, &["x", "y"]);
        let g = FqPoly::parse(f, v.clone(), "y^2 - x^3 - x^2").unwrap();
        assert!(fedder_hypersurface(&g, &[f.int(-1), f.zero()]).unwrap());
        assert!(fedder_hypersurface(&g, &[f.zero(), f.zero()]).unwrap());
        let cusp = FqPoly::parse(f, v, "y^2 - x^3").unwrap();
        assert!(!fedder_hypersurface(&cusp, &[f.zero(), f.zero()]).unwrap());
    }

    #[test]
    fn cartier_inverse_examples() {
        let (f, v) = ring(5, &["x", "y"]);
        let m = LogForm::unmarked(2);
        let one = FqPoly::one(f, v.clone());
        let dx = LogForm::basis(m.clone(), &[0], one.clone()).unwrap();
        let dxdy = LogForm::basis(m, &[0, 1], one.clone()).unwrap();
        assert_eq!(cartier_inverse(&dx).unwrap(), dx.scale(&FqPoly::parse(f, v.clone(), "x^4").unwrap()));
        assert_eq!(cartier_inverse(&dxdy).unwrap(), dxdy.scale(&FqPoly::parse(f, v.clone(), "x^4*y^4").unwrap()));
        let dlog = LogForm::basis(vec![true, false].into(), &[0], one).unwrap();
        assert_eq!(cartier_inverse(&dlog).unwrap(), dlog);
    }

    #[test]
    fn cartier_examples() {
        let (f, v) = ring(3, &["x", "y"]);
        let m = LogForm::unmarked(2);
        let p = |s: &str| FqPoly::parse(f, v.clone(), s).unwrap();
        let dx = LogForm::basis(m.clone(), &[0], p("1")).unwrap();
        assert_eq!(cartier(&dx.scale(&p("x^2"))).unwrap(), dx);
        assert_eq!(cartier(&dx.scale(&p("x^5"))).unwrap(), dx.scale(&p("x")));
        let exact = LogForm::function(m.clone(), p("x^2*y + y^4 + x")).d();
        assert!(cartier(&exact).unwrap().is_zero());
        let not_closed = LogForm::basis(m, &[0], p("y")).unwrap();
        assert_eq!(cartier(&not_closed).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn decomposition_reassembles() {
        let (f, v) = ring(5, &["x", "y", "z"]);
        let marked: Arc<[bool]> = vec![false, true, false].into();
        let g = FqPoly::parse(f, v.clone(), "x^7*y^2*z + 3*y^5*x^4 + z^9*y").unwrap();
        let w = LogForm::function(marked.clone(), g).d();
        let lifted = LogForm::one_form(marked.clone(), vec![
            FqPoly::parse(f, v.clone(), "x^2*y").unwrap(),
            FqPoly::parse(f, v.clone(), "z").unwrap(),
            FqPoly::parse(f, v.clone(), "y^3").unwrap(),
        ])
        .unwrap();
        let total = cartier_inverse(&lifted).unwrap().add(&w).unwrap();
        let (root, h) = cartier_decomposition(&total).unwrap();
        assert_eq!(root, lifted);
        assert_eq!(cartier_inverse(&root).unwrap().add(&h.d()).unwrap(), total);
    }

    #[test]
    fn xi_splitting_and_controls() {
        let (f, v) = ring(5, &["x", "y"]);
        let chart = FrobeniusLiftChart::new(vec![
            FqPoly::parse(f, v.clone(), "y").unwrap(),
            FqPoly::parse(f, v.clone(), "x^2*y + 1").unwrap(),
        ])
        .unwrap();
        assert!(xi_splits_cartier(&chart, 10, 7).unwrap());
        // a bias by the closed, non-exact form x^{p−1}dx is seen by C
        let bias = LogForm::basis(LogForm::unmarked(2), &[0], FqPoly::parse(f, v.clone(), "x^4").unwrap()).unwrap();
        let bad = xi_splits_cartier_with(&chart, 10, 7, |w| chart.xi(w)?.add(&bias)).unwrap();
        assert!(!bad);
        // a bias by the exact form dx is invisible to C
        let dx = LogForm::basis(LogForm::unmarked(2), &[0], FqPoly::one(f, v)).unwrap();
        assert!(xi_splits_cartier_with(&chart, 10, 7, |w| chart.xi(w)?.add(&dx)).unwrap());
    }

    #[test]
    fn invariant_search() {
        for p in [3u32, 5, 7] {
            let r = invariant_splitting_search_p1(p, p).unwrap();
            assert_eq!(r.candidates, 1);
            assert_eq!(r.coefficients, vec![0]);
            assert!(r.witness.is_none());
        }
        let r = invariant_splitting_search_p1(2, 2).unwrap();
        assert_eq!(r.coefficients, vec![1]);
        let w = r.witness.unwrap();
        assert_eq!(w.points, vec![("0".to_string(), 1), ("1".to_string(), 1)]);
        assert_eq!((w.infty, w.denominator), (0, 1));
        assert!(invariant_splitting_search_p1(3, 9).unwrap().witness.is_none());
    }

    #[test]
    fn divisor_validation() {
        let d = SplittingDivisor { points: vec![("0".into(), 2)], infty: 0, denominator: 1 };
        assert!(d.validate().is_err());
        let d = SplittingDivisor { points: vec![("0".into(), 1), ("1".into(), 1)], infty: 0, denominator: 1 };
        assert!(d.validate().is_ok());
    }
}
