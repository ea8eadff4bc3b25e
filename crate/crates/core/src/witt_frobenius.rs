//! Frobenius liftings of affine charts mod p², and the maps δ, ξ, θ, ν.
//!
//! A chart lifting is the ring map `F̃*: x_i ↦ x_i^p + p·f_i` on
//! W_2(F_q)[x], σ-semilinear on coefficients. For a lift g̃ of g,
//! `F̃*(g̃) = g̃^p + p·δ(g̃)`; by default g̃ is the Teichmüller lift.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::forms::LogForm;
use crate::poly::{var_names, Coeff, FqPoly, Monomial};
use crate::witt::{div_p, p_times, reduce, teichmuller, W2Poly, WittScalar2, WittVectorPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusLiftChart {
    field: &'static FiniteField,
    vars: Arc<[String]>,
    images: Vec<FqPoly>,
}

impl FrobeniusLiftChart {
    /// `images[i] = f_i`; all in one polynomial ring with one variable per image.
    pub fn new(images: Vec<FqPoly>) -> Result<Self> {
        let first = images.first().ok_or_else(|| Error::Invalid("a chart needs at least one coordinate".into()))?;
        let (field, vars) = (first.field(), first.vars().clone());
        if images.len() != vars.len() {
            return Err(Error::Invalid(format!("{} images for {} variables", images.len(), vars.len())));
        }
        for f in &images {
            first.check_ring(f)?;
        }
        Ok(FrobeniusLiftChart { field, vars, images })
    }

    /// The lifting x_i ↦ x_i^p.
    pub fn standard(field: &'static FiniteField, vars: Arc<[String]>) -> Self {
        let images = vars.iter().map(|_| FqPoly::zero(field, vars.clone())).collect();
        FrobeniusLiftChart { field, vars, images }
    }

    pub fn field(&self) -> &'static FiniteField {
        self.field
    }
    pub fn p(&self) -> u32 {
        self.field.p()
    }
    pub fn n(&self) -> usize {
        self.vars.len()
    }
    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }
    pub fn images(&self) -> &[FqPoly] {
        &self.images
    }
    pub fn is_standard(&self) -> bool {
        self.images.iter().all(FqPoly::is_zero)
    }

    fn check_poly(&self, g: &FqPoly) -> Result<()> {
        if g.field().order() != self.field.order() {
            return Err(Error::FieldMismatch(g.field().order(), self.field.order()));
        }
        if *g.vars() != self.vars {
            return Err(Error::VariableMismatch(g.vars().to_vec(), self.vars.to_vec()));
        }
        Ok(())
    }

    fn var(&self, i: usize) -> FqPoly {
        FqPoly::var(self.field, self.vars.clone(), i)
    }

    /// F̃*(g̃) for a lifted polynomial g̃.
    pub fn pullback(&self, g: &W2Poly) -> Result<W2Poly> {
        if *g.vars() != self.vars {
            return Err(Error::VariableMismatch(g.vars().to_vec(), self.vars.to_vec()));
        }
        let p = self.p();
        let ims: Vec<W2Poly> = (0..self.n())
            .map(|i| {
                let mut e = vec![0; self.n()];
                e[i] = p;
                W2Poly::monomial(self.field, self.vars.clone(), e, WittScalar2::one(self.field))
                    + p_times(&self.images[i])
            })
            .collect();
        g.frobenius_coeffs().substitute(&ims)
    }

    /// δ(g̃) = (F̃*(g̃) − g̃^p)/p.
    pub fn delta_of_lift(&self, g: &W2Poly) -> Result<FqPoly> {
        let diff = self.pullback(g)? - g.checked_pow(self.p())?;
        Ok(div_p(&diff).expect("F̃* reduces to the p-th power map"))
    }

    /// δ of the Teichmüller lift of g.
    pub fn delta(&self, g: &FqPoly) -> Result<FqPoly> {
        self.check_poly(g)?;
        self.delta_of_lift(&teichmuller(g))
    }

    /// Matrix of ξ on unmarked coordinates: column i holds ξ(dx_i) = x_i^{p−1}dx_i + df_i.
    pub fn xi_matrix(&self) -> Vec<Vec<FqPoly>> {
        let n = self.n();
        let mut m = vec![vec![FqPoly::zero(self.field, self.vars.clone()); n]; n];
        for i in 0..n {
            for (k, row) in m.iter_mut().enumerate() {
                row[i] = self.images[i].derivative(k);
            }
            m[i][i] = &m[i][i] + &self.var(i).pow(self.p() - 1);
        }
        m
    }

    /// det ξ on the chart (all coordinates unmarked).
    pub fn det_xi(&self) -> FqPoly {
        determinant(&self.xi_matrix())
    }

    /// Compatibility of the lifting with the divisor h = 0, allowing any lift h̃ + p·g.
    pub fn compatibility(&self, h: &FqPoly) -> Result<Compatibility> {
        self.check_poly(h)?;
        if h.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let p = self.p();
        let delta = self.delta(h)?;
        let hp = h.pth_power()?;
        // δ = Σ_e x^e·(A_e)^p over residues e ∈ [0,p)^n; h^p·F[x] consists of the sums
        // with every A_e divisible by h, and F[x]^p is the e = 0 part.
        let mut parts: std::collections::BTreeMap<Monomial, FqPoly> = Default::default();
        for (e, c) in delta.terms() {
            let r: Monomial = e.iter().map(|x| x % p).collect();
            parts
                .entry(r)
                .or_insert_with(|| FqPoly::zero(self.field, self.vars.clone()))
                .add_term(e.clone(), *c);
        }
        let zero_res = vec![0; self.n()];
        let mut unit = FqPoly::zero(self.field, self.vars.clone());
        let mut obstruction = FqPoly::zero(self.field, self.vars.clone());
        for (r, part) in &parts {
            if *r == zero_res {
                continue;
            }
            let (q, rem) = part.div_rem(&hp);
            unit = unit + q;
            obstruction = obstruction + rem;
        }
        let base = parts.remove(&zero_res).unwrap_or_else(|| FqPoly::zero(self.field, self.vars.clone()));
        let correction = (-base).pth_root().expect("residue-zero part is a p-th power");
        Ok(Compatibility { compatible: obstruction.is_zero(), correction, unit, obstruction })
    }

    pub fn is_compatible_divisor(&self, h: &FqPoly) -> Result<bool> {
        Ok(self.compatibility(h)?.compatible)
    }

    /// Center given by generators that must be (scalar multiples of) chart coordinates.
    pub fn is_compatible_blowup_center(&self, generators: &[FqPoly]) -> Result<bool> {
        if generators.is_empty() {
            return Err(Error::NonCoordinateCenter("empty generator list".into()));
        }
        let mut center = Vec::new();
        for g in generators {
            self.check_poly(g)?;
            let coord = match (g.len(), g.leading()) {
                (1, Some((e, _))) if e.iter().sum::<u32>() == 1 => e.iter().position(|&x| x == 1).unwrap(),
                _ => return Err(Error::NonCoordinateCenter(g.to_string())),
            };
            if !center.contains(&coord) {
                center.push(coord);
            }
        }
        Ok(self.is_compatible_coordinate_center(&center))
    }

    /// f_i ∈ I^p for every i in the center, I = (x_j : j ∈ center).
    pub fn is_compatible_coordinate_center(&self, center: &[usize]) -> bool {
        let p = self.p();
        center.iter().all(|&i| {
            self.images[i].terms().all(|(e, _)| center.iter().map(|&j| e[j]).sum::<u32>() >= p)
        })
    }

    /// ξ(ω) for a log form whose marked coordinates are compatible divisors.
    pub fn xi(&self, omega: &LogForm) -> Result<LogForm> {
        if *omega.vars() != self.vars {
            return Err(Error::VariableMismatch(omega.vars().to_vec(), self.vars.to_vec()));
        }
        let marked = omega.marked().clone();
        let mut images = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            let base = LogForm::basis(marked.clone(), &[i], FqPoly::one(self.field, self.vars.clone()))?;
            let image = if marked[i] {
                let c = self.compatibility(&self.var(i))?;
                if !c.compatible {
                    return Err(Error::IncompatibleMarking(i));
                }
                base.add(&LogForm::function(marked.clone(), c.unit).d())?
            } else {
                let lead = base.scale(&self.var(i).pow(self.p() - 1));
                lead.add(&LogForm::function(marked.clone(), self.images[i].clone()).d())?
            };
            images.push(image);
        }
        let mut out = omega.zero_like(omega.degree());
        for (idx, g) in omega.terms() {
            let mut t = LogForm::function(marked.clone(), g.pth_power()?);
            for &i in idx {
                t = t.wedge(&images[i])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// θ*∘ν* and ν*∘θ* evaluated on g, against F̃* and σ.
    pub fn theta_nu_roundtrip(&self, g: &FqPoly) -> Result<ThetaNuRoundTrip> {
        self.check_poly(g)?;
        let lift = teichmuller(g);
        let theta_nu = theta(&self.nu(&lift)?)?;
        let pullback = self.pullback(&lift)?;
        let w = WittVectorPoly::new(g.clone(), FqPoly::zero(self.field, self.vars.clone()))?;
        let nu_theta = self.nu(&theta(&w)?)?;
        let sigma = w.sigma()?;
        Ok(ThetaNuRoundTrip { theta_nu, pullback, nu_theta, sigma })
    }

    /// ν*(g̃) = (g, δ(g̃)).
    pub fn nu(&self, g: &W2Poly) -> Result<WittVectorPoly> {
        WittVectorPoly::new(reduce(g), self.delta_of_lift(g)?)
    }
}

/// θ*(g0, g1) = g̃0^p + p·g̃1 (independent of the lifts).
pub fn theta(w: &WittVectorPoly) -> Result<W2Poly> {
    let p = w.x0.p();
    Ok(teichmuller(&w.x0).checked_pow(p)? + p_times(&w.x1))
}

#[derive(Clone, Debug)]
pub struct ThetaNuRoundTrip {
    pub theta_nu: W2Poly,
    pub pullback: W2Poly,
    pub nu_theta: WittVectorPoly,
    pub sigma: WittVectorPoly,
}

impl ThetaNuRoundTrip {
    pub fn holds(&self) -> bool {
        self.theta_nu == self.pullback && self.nu_theta == self.sigma
    }
}

/// Witness data for divisor compatibility: with the lift h̃ + p·correction,
/// F̃*(h̃') = h̃'^p·(1 + p·unit). `obstruction` is the remainder that must vanish.
#[derive(Clone, Debug)]
pub struct Compatibility {
    pub compatible: bool,
    pub correction: FqPoly,
    pub unit: FqPoly,
    pub obstruction: FqPoly,
}

pub fn w2_add(a: WittScalar2, b: WittScalar2) -> Result<WittScalar2> {
    a.checked_add(b)
}

pub fn w2_mul(a: WittScalar2, b: WittScalar2) -> Result<WittScalar2> {
    a.checked_mul(b)
}

pub fn delta(chart: &FrobeniusLiftChart, g: &FqPoly) -> Result<FqPoly> {
    chart.delta(g)
}

pub fn xi_of_form(chart: &FrobeniusLiftChart, omega: &LogForm) -> Result<LogForm> {
    chart.xi(omega)
}

pub fn is_compatible_divisor(chart: &FrobeniusLiftChart, h: &FqPoly) -> Result<bool> {
    chart.is_compatible_divisor(h)
}

pub fn is_compatible_blowup_center(chart: &FrobeniusLiftChart, center: &[FqPoly]) -> Result<bool> {
    chart.is_compatible_blowup_center(center)
}

pub fn theta_nu_roundtrip(chart: &FrobeniusLiftChart, g: &FqPoly) -> Result<ThetaNuRoundTrip> {
    chart.theta_nu_roundtrip(g)
}

/// Laplace expansion; the sizes here are at most 4.
pub fn determinant(m: &[Vec<FqPoly>]) -> FqPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = FqPoly::zero(m[0][0].field(), m[0][0].vars().clone());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<FqPoly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][j] * &determinant(&minor);
        acc = if j % 2 == 0 { acc + t } else { acc - t };
    }
    acc
}

/// Homogeneous coordinate names x0..xn.
pub fn projective_vars(n: usize) -> Arc<[String]> {
    let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    var_names(&names.iter().map(String::as_str).collect::<Vec<_>>())
}

/// The affine chart x_j ≠ 0 of the lifting x_i ↦ x_i^p + p·f_i on Pⁿ.
pub fn projective_chart(lifts: &[FqPoly], j: usize) -> Result<FrobeniusLiftChart> {
    let field = lifts[0].field();
    let p = field.p();
    let n = lifts.len() - 1;
    let local: Vec<FqPoly> = lifts.iter().map(|f| f.dehomogenize(j)).collect();
    let vars = local[0].vars().clone();
    let mut images = Vec::with_capacity(n);
    for (i, f) in local.iter().enumerate() {
        if i == j {
            continue;
        }
        let k = if i < j { i } else { i - 1 };
        // f_i(y) − y_i^p f_j(y)
        let y = FqPoly::var(field, vars.clone(), k);
        images.push(f - &(&y.pow(p) * &local[j]));
    }
    FrobeniusLiftChart::new(images)
}

/// Global section of ω^{1−p} on Pⁿ cut out by det ξ, checked on every chart.
#[derive(Clone, Debug)]
pub struct DetXi {
    pub section: FqPoly,
    pub charts: Vec<FqPoly>,
}

pub fn det_xi_divisor_pn(p: u32, n: usize, lifts: &[FqPoly]) -> Result<DetXi> {
    if lifts.len() != n + 1 {
        return Err(Error::Invalid(format!("need {} lifts, got {}", n + 1, lifts.len())));
    }
    let field = lifts[0].field();
    if field.p() != p {
        return Err(Error::Invalid(format!("lifts are over F_{}, not characteristic {p}", field.order())));
    }
    let vars = lifts[0].vars().clone();
    if vars.len() != n + 1 {
        return Err(Error::Invalid(format!("lifts must use {} homogeneous variables", n + 1)));
    }
    for f in lifts {
        lifts[0].check_ring(f)?;
        if !f.is_homogeneous() || f.total_degree().is_some_and(|d| d != p) {
            return Err(Error::WrongDegree { expected: p, found: f.total_degree().unwrap_or(0) });
        }
    }
    let deg = (n as u32 + 1) * (p - 1);
    let mut charts = Vec::with_capacity(n + 1);
    for j in 0..=n {
        charts.push(projective_chart(lifts, j)?.det_xi());
    }
    let section = charts[0]
        .homogenize(0, &vars[0], deg)
        .map_err(|_| Error::GluingFailure { chart: 0 })?
        .with_vars(vars.clone());
    for (j, local) in charts.iter().enumerate() {
        if section.dehomogenize(j) != local.with_vars(section.dehomogenize(j).vars().clone()) {
            return Err(Error::GluingFailure { chart: j });
        }
    }
    Ok(DetXi { section, charts })
}

/// Standard lifting data f_i = 0 on Pⁿ.
pub fn standard_projective_lifts(field: &'static FiniteField, n: usize) -> Vec<FqPoly> {
    let vars = projective_vars(n);
    (0..=n).map(|_| FqPoly::zero(field, vars.clone())).collect()
}

pub fn scalar(field: &'static FiniteField, a0: u32, a1: u32) -> Result<WittScalar2> {
    WittScalar2::new(field.elem(a0)?, field.elem(a1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart(q: u32, names: &[&str], images: &[&str]) -> FrobeniusLiftChart {
        let f = FiniteField::get(q).unwrap();
        let v = var_names(names);
        FrobeniusLiftChart::new(images.iter().map(|s| FqPoly::parse(f, v.clone(), s).unwrap()).collect()).unwrap()
    }

    fn poly(c: &FrobeniusLiftChart, s: &str) -> FqPoly {
        FqPoly::parse(c.field(), c.vars().clone(), s).unwrap()
    }

    #[test]
    fn delta_examples() {
        let c = chart(3, &["x"], &["0"]);
        assert!(c.delta(&poly(&c, "x")).unwrap().is_zero());
        let c2 = chart(2, &["x"], &["0"]);
        assert_eq!(c2.delta(&poly(&c2, "x + 1")).unwrap(), poly(&c2, "x"));
        let c3 = chart(5, &["x", "y"], &["y", "0"]);
        assert_eq!(c3.delta(&poly(&c3, "x")).unwrap(), poly(&c3, "y"));
    }

    #[test]
    fn delta_depends_on_lift_by_a_pth_power() {
        let c = chart(3, &["x", "y"], &["y^2", "x*y"]);
        let g = poly(&c, "x^2 + 2*x*y");
        let h = poly(&c, "y + 1");
        let base = c.delta(&g).unwrap();
        let shifted = c.delta_of_lift(&(teichmuller(&g) + p_times(&h))).unwrap();
        assert_eq!(shifted, &base + &h.pth_power().unwrap());
        let m = LogForm::unmarked(2);
        assert_eq!(LogForm::function(m.clone(), shifted).d(), LogForm::function(m, base).d());
    }

    #[test]
    fn xi_examples() {
        let f = FiniteField::get(5).unwrap();
        let c = FrobeniusLiftChart::standard(f, var_names(&["x"]));
        let dx = LogForm::basis(LogForm::unmarked(1), &[0], poly(&c, "1")).unwrap();
        assert_eq!(c.xi(&dx).unwrap(), dx.scale(&poly(&c, "x^4")));
        let marked: Arc<[bool]> = vec![true].into();
        let dlog = LogForm::basis(marked, &[0], poly(&c, "1")).unwrap();
        assert_eq!(c.xi(&dlog).unwrap(), dlog);

        let c2 = chart(3, &["x", "y"], &["y", "0"]);
        let m = LogForm::unmarked(2);
        let dx = LogForm::basis(m.clone(), &[0], poly(&c2, "1")).unwrap();
        let dy = LogForm::basis(m.clone(), &[1], poly(&c2, "1")).unwrap();
        assert_eq!(c2.xi(&dx).unwrap(), dx.scale(&poly(&c2, "x^2")).add(&dy).unwrap());
    }

    #[test]
    fn xi_rejects_incompatible_marking() {
        let c = chart(3, &["x", "y"], &["y", "0"]);
        let marked: Arc<[bool]> = vec![true, false].into();
        let w = LogForm::basis(marked, &[1], poly(&c, "1")).unwrap();
        assert_eq!(c.xi(&w).unwrap_err(), Error::IncompatibleMarking(0));
    }

    #[test]
    fn xi_on_compatible_nonstandard_marking() {
        // f_x = x^3 y is in (x^3): the divisor x = 0 is compatible with u = y
        let c = chart(3, &["x", "y"], &["x^3*y", "x"]);
        let marked: Arc<[bool]> = vec![true, false].into();
        let w = LogForm::basis(marked.clone(), &[0], poly(&c, "1")).unwrap();
        let dy = LogForm::basis(marked, &[1], poly(&c, "1")).unwrap();
        assert_eq!(c.xi(&w).unwrap(), w.add(&dy).unwrap());
    }

    #[test]
    fn compatibility_examples() {
        let f = FiniteField::get(3).unwrap();
        let std = FrobeniusLiftChart::standard(f, var_names(&["x", "y"]));
        assert!(std.is_compatible_divisor(&poly(&std, "x")).unwrap());
        assert!(std.is_compatible_divisor(&poly(&std, "2*y")).unwrap());
        // δ(x − y) = xy(x − y) on the Teichmüller lift; its residue parts are not in ((x−y)^3)
        let h = poly(&std, "x - y");
        let c = std.compatibility(&h).unwrap();
        assert!(!c.compatible);
        assert_eq!(std.delta(&h).unwrap(), poly(&std, "x^2*y - x*y^2"));
        let c2 = chart(3, &["x", "y"], &["y", "0"]);
        assert!(!c2.is_compatible_divisor(&poly(&c2, "x")).unwrap());
        assert_eq!(std.compatibility(&FqPoly::zero(f, std.vars().clone())).unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn compatibility_uses_the_best_lift() {
        // f = y^3 + x^3 y: the p-th power part is absorbed by the lift x̃ − p·ỹ
        let c = chart(3, &["x", "y"], &["y^3 + x^3*y", "0"]);
        let comp = c.compatibility(&poly(&c, "x")).unwrap();
        assert!(comp.compatible);
        assert_eq!(comp.unit, poly(&c, "y"));
        assert_eq!(comp.correction, poly(&c, "-y"));
    }

    #[test]
    fn blowup_centers() {
        let f = FiniteField::get(3).unwrap();
        let v = var_names(&["x", "y"]);
        let std = FrobeniusLiftChart::standard(f, v.clone());
        let gens = [poly(&std, "x"), poly(&std, "y")];
        assert!(std.is_compatible_blowup_center(&gens).unwrap());
        let c1 = chart(3, &["x", "y"], &["1", "0"]);
        assert!(!c1.is_compatible_blowup_center(&gens).unwrap());
        let c2 = chart(3, &["x", "y"], &["x^3", "0"]);
        assert!(c2.is_compatible_blowup_center(&gens).unwrap());
        assert!(matches!(
            std.is_compatible_blowup_center(&[poly(&std, "x + y")]),
            Err(Error::NonCoordinateCenter(_))
        ));
    }

    #[test]
    fn theta_nu_examples() {
        let c = chart(3, &["x", "y"], &["y", "0"]);
        let r = c.theta_nu_roundtrip(&poly(&c, "x")).unwrap();
        assert!(r.holds());
        let expect = teichmuller(&poly(&c, "x^3")) + p_times(&poly(&c, "y"));
        assert_eq!(r.theta_nu, expect);
        assert_eq!(r.nu_theta.x0, poly(&c, "x^3"));
        assert!(r.nu_theta.x1.is_zero());
    }

    #[test]
    fn det_xi_standard_is_toric_boundary() {
        for p in [2u32, 3, 5] {
            let f = FiniteField::get(p).unwrap();
            for n in 1..=3 {
                let d = det_xi_divisor_pn(p, n, &standard_projective_lifts(f, n)).unwrap();
                let e = vec![p - 1; n + 1];
                let expect = FqPoly::monomial(f, projective_vars(n), e, f.one());
                assert_eq!(d.section, expect);
            }
        }
    }

    #[test]
    fn det_xi_nonstandard_p1() {
        let f = FiniteField::get(2).unwrap();
        let v = projective_vars(1);
        let lifts = [FqPoly::parse(f, v.clone(), "x1^2").unwrap(), FqPoly::zero(f, v.clone())];
        let d = det_xi_divisor_pn(2, 1, &lifts).unwrap();
        assert_eq!(d.section, FqPoly::parse(f, v, "x0*x1").unwrap());
    }

    #[test]
    fn det_xi_rejects_bad_degree() {
        let f = FiniteField::get(3).unwrap();
        let v = projective_vars(1);
        let lifts = [FqPoly::parse(f, v.clone(), "x1^2").unwrap(), FqPoly::zero(f, v)];
        assert!(matches!(det_xi_divisor_pn(3, 1, &lifts), Err(Error::WrongDegree { .. })));
    }
}
