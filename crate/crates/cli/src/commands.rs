use std::fmt::Write as _;
use std::sync::Arc;

use froblift::classification::{self as cl, Center, Descent, MarkedDynkinDiagram, SurfaceDeltaState};
use froblift::curve_restriction::{self as cr, PlaneLogPair, RationalCurve, SemilinearMap};
use froblift::fan::{self, Fan};
use froblift::frobenius_splitting::{self as fs, SplittingSection};
use froblift::json::{self, LaurentMatrixJson, PolyJson};
use froblift::poly::var_names;
use froblift::repro::{self, ReproOptions};
use froblift::toric_cohomology::{self as tc, ToricDivisor};
use froblift::upoly::{FqMatrix, UPoly};
use froblift::witt_frobenius::{self as wf, FrobeniusLiftChart};
use froblift::{Error, FiniteField, FqPoly, LogForm, Result, WittScalar2};
use serde_json::{json, Value};

use crate::input;
use crate::{FanSource, Outcome, Ring};

fn witt_pair(f: &'static FiniteField, s: &str) -> Result<WittScalar2> {
    let v = input::ints(s)?;
    let [a0, a1] = v[..] else { return Err(Error::Invalid(format!("Witt vector {s:?} must be a0,a1"))) };
    let el = |x: i64| u32::try_from(x).map_err(|_| Error::ElementRange { value: x, q: f.order() }).and_then(|v| f.elem(v));
    WittScalar2::new(el(a0)?, el(a1)?)
}

pub fn witt(
    p: u32,
    q: Option<u32>,
    add: Option<Vec<String>>,
    mul: Option<Vec<String>>,
    sub: Option<Vec<String>>,
    table: bool,
) -> Result<Outcome> {
    let f = input::field(q, Some(p))?;
    if table {
        if f.degree() != 1 {
            return Err(Error::Invalid("the Z/p^2 table needs q = p".into()));
        }
        let els: Vec<WittScalar2> = f.elements().flat_map(|a| f.elements().map(move |b| WittScalar2 { a0: a, a1: b })).collect();
        let m = (p * p) as u64;
        let z = |w: WittScalar2| w.to_zp2().expect("prime field");
        let bad = els
            .iter()
            .flat_map(|&a| els.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| z(a + b) != (z(a) + z(b)) % m || z(a * b) != z(a) * z(b) % m)
            .count();
        let verdict = if bad == 0 { "isomorphic" } else { "mismatch" };
        let human = format!("W_2(F_{p}) vs Z/{m}: {} pairs, {bad} mismatches", els.len() * els.len());
        return Ok(Outcome::ok(verdict, json!({ "p": p, "pairs": els.len() * els.len(), "mismatches": bad }), human));
    }
    let (op, args) = match (add, mul, sub) {
        (Some(a), None, None) => ("add", a),
        (None, Some(a), None) => ("mul", a),
        (None, None, Some(a)) => ("sub", a),
        _ => return Err(Error::Invalid("give exactly one of --add, --mul, --sub, --table".into())),
    };
    let a = witt_pair(f, &args[0])?;
    let b = witt_pair(f, &args[1])?;
    let r = match op {
        "add" => a + b,
        "mul" => a * b,
        _ => a - b,
    };
    let payload = json!({ "op": op, "a": [a.a0.value(), a.a1.value()], "b": [b.a0.value(), b.a1.value()], "result": [r.a0.value(), r.a1.value()] });
    Ok(Outcome::ok(r.to_string(), payload, r.to_string()))
}

fn chart(ring: &Ring, images: &[String]) -> Result<FrobeniusLiftChart> {
    let (f, vars) = input::ring(ring)?;
    if images.is_empty() {
        return Ok(FrobeniusLiftChart::standard(f, vars));
    }
    FrobeniusLiftChart::new(input::polys(f, &vars, images)?)
}

fn marking(n: usize, marked: &[usize]) -> Result<Arc<[bool]>> {
    if let Some(&i) = marked.iter().find(|&&i| i >= n) {
        return Err(Error::Invalid(format!("marked index {i} out of range")));
    }
    Ok((0..n).map(|i| marked.contains(&i)).collect())
}

pub fn xi(ring: &Ring, images: &[String], coeffs: &[String], marked: &[usize], delta: Option<String>, roundtrip: Option<String>) -> Result<Outcome> {
    let c = chart(ring, images)?;
    let (f, vars) = (c.field(), c.vars().clone());
    let mut human = String::new();
    let mut payload = serde_json::Map::new();
    let det = c.det_xi();
    writeln!(human, "det xi = {det}").ok();
    payload.insert("det_xi".into(), json!(PolyJson::from_fq(&det)));
    if !coeffs.is_empty() {
        let w = LogForm::one_form(marking(c.n(), marked)?, input::polys(f, &vars, coeffs)?)?;
        let image = c.xi(&w)?;
        writeln!(human, "xi({w}) = {image}").ok();
        payload.insert("xi".into(), json!(image.to_string()));
    }
    if let Some(g) = delta {
        let d = c.delta(&input::poly(f, &vars, &g)?)?;
        writeln!(human, "delta = {d}").ok();
        payload.insert("delta".into(), json!(PolyJson::from_fq(&d)));
    }
    let mut verdict = "ok".to_string();
    if let Some(g) = roundtrip {
        let r = c.theta_nu_roundtrip(&input::poly(f, &vars, &g)?)?;
        writeln!(human, "theta*nu* = pullback: {}, nu*theta* = sigma: {}", r.theta_nu == r.pullback, r.nu_theta == r.sigma).ok();
        payload.insert("roundtrip".into(), json!({ "theta_nu_is_pullback": r.theta_nu == r.pullback, "nu_theta_is_sigma": r.nu_theta == r.sigma }));
        verdict = if r.holds() { "roundtrip holds" } else { "roundtrip fails" }.into();
    }
    Ok(Outcome::ok(verdict, Value::Object(payload), human))
}

pub fn delta_divisor(p: u32, q: Option<u32>, n: usize, lifts: &[String]) -> Result<Outcome> {
    let f = input::field(q, Some(p))?;
    let vars = wf::projective_vars(n);
    let lifts = if lifts.is_empty() { wf::standard_projective_lifts(f, n) } else { input::polys(f, &vars, lifts)? };
    let d = wf::det_xi_divisor_pn(p, n, &lifts)?;
    let splits = fs::splits_pn(&SplittingSection::new(n, d.section.clone())?);
    let verdict = if splits { "splitting" } else { "not a splitting" };
    let human = format!("det xi = {}\nsplits P^{n}: {splits}", d.section);
    Ok(Outcome::ok(verdict, json!({ "section": PolyJson::from_fq(&d.section), "splits": splits }), human))
}

pub fn compat(ring: &Ring, images: &[String], divisor: Option<String>, center: &[String]) -> Result<Outcome> {
    let c = chart(ring, images)?;
    let (f, vars) = (c.field(), c.vars().clone());
    match (divisor, center.is_empty()) {
        (Some(h), true) => {
            let r = c.compatibility(&input::poly(f, &vars, &h)?)?;
            let human = format!("compatible: {}\nobstruction: {}", r.compatible, r.obstruction);
            let payload = json!({
                "compatible": r.compatible,
                "correction": PolyJson::from_fq(&r.correction),
                "unit": PolyJson::from_fq(&r.unit),
                "obstruction": PolyJson::from_fq(&r.obstruction),
            });
            Ok(Outcome::ok(r.compatible.to_string(), payload, human))
        }
        (None, false) => {
            let ok = c.is_compatible_blowup_center(&input::polys(f, &vars, center)?)?;
            Ok(Outcome::ok(ok.to_string(), json!({ "compatible": ok }), format!("compatible center: {ok}")))
        }
        _ => Err(Error::Invalid("give either --divisor or --center".into())),
    }
}

pub fn fedder(ring: &Ring, poly: &str, at: &[u32]) -> Result<Outcome> {
    let (f, vars) = input::ring(ring)?;
    let g = input::poly(f, &vars, poly)?;
    let point = if at.is_empty() { vec![f.zero(); g.nvars()] } else { at.iter().map(|&v| f.elem(v)).collect::<Result<Vec<_>>>()? };
    let ok = fs::fedder_hypersurface(&g, &point)?;
    let verdict = if ok { "F-split" } else { "not F-split" };
    let coords: Vec<String> = point.iter().map(|c| c.value().to_string()).collect();
    Ok(Outcome::ok(verdict, json!({ "f_split": ok }), format!("{g} at ({}): {verdict}", coords.join(", "))))
}

pub fn cartier(ring: &Ring, coeffs: &[String], marked: &[usize], inverse: bool) -> Result<Outcome> {
    let (f, vars) = input::ring(ring)?;
    let w = LogForm::one_form(marking(vars.len(), marked)?, input::polys(f, &vars, coeffs)?)?;
    let (name, out) = if inverse { ("C^-1", fs::cartier_inverse(&w)?) } else { ("C", fs::cartier(&w)?) };
    Ok(Outcome::ok(out.to_string(), json!({ "op": name, "input": w.to_string(), "output": out.to_string() }), format!("{name}({w}) = {out}")))
}

pub fn split_check(ring: &Ring, n: Option<usize>, section: Option<String>, search_p1: bool) -> Result<Outcome> {
    if search_p1 {
        let f = input::field(ring.q, ring.p)?;
        let s = fs::invariant_splitting_search_p1(f.p(), f.order())?;
        let verdict = if s.witness.is_some() { "invariant splitting found" } else { "no invariant splitting" };
        let mut human = format!("p = {}: {} candidates, coefficients {:?}\n{verdict}", s.p, s.candidates, s.coefficients);
        if let Some(w) = &s.witness {
            write!(human, "\nwitness: {}", serde_json::to_string(w).expect("divisor serializes")).ok();
        }
        return Ok(Outcome::ok(verdict, serde_json::to_value(&s).expect("search serializes"), human));
    }
    let n = n.ok_or_else(|| Error::Invalid("give --n with --section, or --search-p1".into()))?;
    let section = section.ok_or_else(|| Error::Invalid("missing --section".into()))?;
    let (f, _) = input::ring(ring)?;
    let vars = wf::projective_vars(n);
    let s = SplittingSection::new(n, input::poly(f, &vars, &section)?)?;
    let ok = fs::splits_pn(&s);
    let key = s.key_coefficient();
    let human = format!("coefficient of (x0...x{n})^(p-1): {key}\nsplits: {ok}");
    Ok(Outcome::ok(if ok { "splits" } else { "does not split" }, json!({ "splits": ok, "key_coefficient": key.value() }), human))
}

fn fan_summary(f: &Fan) -> (Value, String) {
    let smooth = f.is_smooth();
    let complete = f.is_complete();
    let aut = f.fan_automorphisms().map(|g| g.order()).ok();
    let mut human = format!("{}\nsmooth: {smooth}\ncomplete: {complete}\n|Aut|: {}", f.to_json(), aut.map_or("-".into(), |a| a.to_string()));
    let mut v = json!({ "fan": f.data(), "smooth": smooth, "complete": complete, "automorphisms": aut });
    if let Ok(ix) = f.toric_surface_intersections() {
        write!(human, "\nintersections: {:?}", ix.matrix).ok();
        v["intersections"] = json!(ix.matrix);
    }
    (v, human)
}

pub fn fan(src: &FanSource, star: Option<usize>, mult_p: Option<u32>, list: bool) -> Result<Outcome> {
    if list {
        let names: Vec<String> = fan::catalog()?.into_keys().collect();
        return Ok(Outcome::ok("ok", json!(names), names.join("\n")));
    }
    let mut f = input::fan(src)?;
    if let Some(k) = star {
        f = f.star_subdivision(k)?;
    }
    let (mut v, mut human) = fan_summary(&f);
    if let Some(p) = mult_p {
        let w = f.multiplication_by_p_witness(p)?;
        let transitions: Vec<Value> = w
            .transitions
            .iter()
            .map(|t| json!({ "from": t.from, "to": t.to, "matrix": t.matrix, "compatible": t.compatible }))
            .collect();
        v["multiplication_by_p"] = json!({ "p": p, "holds": w.holds(), "charts": w.charts.len(), "transitions": transitions, "skipped": w.skipped });
        write!(human, "\nmultiplication by {p}: {} charts, {} transitions, holds: {}", w.charts.len(), w.transitions.len(), w.holds()).ok();
    }
    Ok(Outcome::ok("ok", v, human))
}

fn divisor(src: &FanSource, coeffs: &str) -> Result<(Arc<Fan>, ToricDivisor)> {
    let f = Arc::new(input::fan(src)?);
    let d = ToricDivisor::new(f.clone(), input::ints(coeffs)?)?;
    Ok((f, d))
}

pub fn h0(src: &FanSource, coeffs: &str) -> Result<Outcome> {
    let (_, d) = divisor(src, coeffs)?;
    let s = tc::global_sections(&d)?;
    let human = format!("h0 = {}\ncharacters: {:?}", s.h0(), s.points);
    Ok(Outcome::ok(s.h0().to_string(), json!({ "h0": s.h0(), "characters": s.points }), human))
}

pub fn hi(src: &FanSource, coeffs: &str) -> Result<Outcome> {
    let (f, d) = divisor(src, coeffs)?;
    let h = tc::cohomology_all(&d)?;
    let chi = tc::euler_characteristic(&d)?;
    let mut human: String = h.iter().enumerate().map(|(i, x)| format!("h{i} = {x}\n")).collect();
    write!(human, "chi = {chi}").ok();
    let mut v = json!({ "h": h, "chi": chi });
    if f.rank() == 2 {
        if let Ok(rr) = tc::riemann_roch_surface(&d) {
            write!(human, "\nRiemann-Roch: {rr}").ok();
            v["riemann_roch"] = json!(rr);
        }
    }
    Ok(Outcome::ok(format!("{h:?}"), v, human))
}

pub fn bott(src: &FanSource, coeffs: &str) -> Result<Outcome> {
    let (f, d) = divisor(src, coeffs)?;
    let r = tc::bott_vanishing_log(&f, &d)?;
    let mut human = String::new();
    for e in &r.entries {
        writeln!(human, "h^{}(Omega^{}(log) x L) = {}", e.j, e.i, e.dimension).ok();
    }
    write!(human, "vanishes: {}", r.vanishes()).ok();
    let verdict = if r.vanishes() { "vanishes" } else { "does not vanish" };
    Ok(Outcome::ok(verdict, serde_json::to_value(&r).expect("report serializes"), human))
}

pub fn flatness(src: &FanSource, bundles: &[String], windows: &[String]) -> Result<Outcome> {
    let f = Arc::new(input::fan(src)?);
    let ls = bundles.iter().map(|b| ToricDivisor::new(f.clone(), input::ints(b)?)).collect::<Result<Vec<_>>>()?;
    let window = windows
        .iter()
        .map(|w| {
            let (l, h) = w.split_once(':').ok_or_else(|| Error::Invalid(format!("window {w:?} must be lo:hi")))?;
            let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad window bound {s:?}")));
            Ok((parse(l)?, parse(h)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let r = tc::section_ring_flatness(&f, &ls, &window)?;
    let mut human = format!("checked {} multidegrees, {} with h1 != 0", r.checked, r.violations.len());
    for (m, h) in &r.violations {
        write!(human, "\n  {m:?}: h1 = {h}").ok();
    }
    let verdict = if r.holds() { "flat" } else { "not flat" };
    Ok(Outcome::ok(verdict, serde_json::to_value(&r).expect("report serializes"), human))
}

pub fn split_type(matrix: &str) -> Result<Outcome> {
    let m = json::from_str::<LaurentMatrixJson>(&input::text(matrix)?)?.to_matrix()?;
    let t = cr::splitting_type(&m)?;
    let nef = cr::nef_obstruction(&t);
    let human = format!("{m}\nsplitting type {t}\nnef obstruction: {nef}");
    Ok(Outcome::ok(t.to_string(), json!({ "splitting_type": t.degrees, "nef_obstruction": nef }), human))
}

fn univariate(f: &'static FiniteField, s: &str) -> Result<UPoly> {
    let g = FqPoly::parse(f, var_names(&["t"]), s)?;
    let len = g.degree_in(0).map_or(0, |d| d as usize + 1);
    let mut c = vec![f.zero(); len];
    for (e, &v) in g.terms() {
        c[e[0] as usize] = v;
    }
    Ok(UPoly::new(f, c))
}

pub fn restrict(q: u32, components: &[String], curve: &str) -> Result<Outcome> {
    let f = FiniteField::get(q)?;
    let vars = var_names(&["x", "y", "z"]);
    let pair = if components.is_empty() { PlaneLogPair::empty(f) } else { PlaneLogPair::new(f, vars.clone(), input::polys(f, &vars, components)?)? };
    let coords = curve.split(';').map(|s| univariate(f, s.trim())).collect::<Result<Vec<_>>>()?;
    let c = RationalCurve::new(coords)?;
    let r = cr::restrict_log_cotangent(&pair, &c)?;
    let t = cr::splitting_type(&r.matrix)?;
    let human = format!(
        "frames: ({}) near t = 0, ({}) near t = inf\ntransition {}\nsplitting type {t}",
        r.frame_zero.join(", "),
        r.frame_infinity.join(", "),
        r.matrix
    );
    let payload = json!({
        "matrix": LaurentMatrixJson::from_matrix(&r.matrix),
        "frame_zero": r.frame_zero,
        "frame_infinity": r.frame_infinity,
        "splitting_type": t.degrees,
        "expected_degree": r.expected_degree,
    });
    Ok(Outcome::ok(t.to_string(), payload, human))
}

pub fn fixed_points(q: u32, matrix: &str, degree: Option<u64>) -> Result<Outcome> {
    let f = FiniteField::get(q)?;
    let a: FqMatrix = matrix
        .split(';')
        .map(|row| {
            input::ints(row)?
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| Error::ElementRange { value: x, q }).and_then(|v| f.elem(v)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let map = SemilinearMap::new(a)?;
    let fp = match degree {
        Some(m) => cr::semilinear_fixed_points(&map, m)?,
        None => cr::stabilized_fixed_points(&map)?,
    };
    let basis: Vec<Vec<String>> = fp.basis.iter().map(|v| v.iter().map(UPoly::to_string).collect()).collect();
    let human = format!(
        "over F_{q}[t]/({}), degree {}: {} fixed points (dimension {} over F_{})",
        fp.modulus,
        fp.extension_degree,
        fp.count,
        fp.dimension,
        f.p()
    );
    let payload = json!({
        "extension_degree": fp.extension_degree,
        "modulus": fp.modulus.to_string(),
        "dimension": fp.dimension,
        "count": fp.count,
        "basis": basis,
    });
    Ok(Outcome::ok(fp.count.to_string(), payload, human))
}

pub fn dynkin(diagram: &str) -> Result<Outcome> {
    let d: MarkedDynkinDiagram = diagram.parse()?;
    let dim = cl::dim_g_mod_p(&d)?;
    let proj = if d.marked().len() == 1 { cl::is_projective_space(&d)? } else { None };
    let verdict = cl::classify_max_parabolic_quotients(&d)?;
    let human = format!("{d}: dim G/P = {dim}\n{verdict}");
    Ok(Outcome::ok(verdict.to_string(), json!({ "diagram": d.to_string(), "dimension": dim, "projective_space": proj, "verdict": verdict.to_string() }), human))
}

pub fn fano_screen(table: Option<String>) -> Result<Outcome> {
    let rows = match table {
        Some(path) => cl::parse_fano_csv(&input::text(&format!("@{path}"))?)?,
        None => cl::mori_mukai_table()?,
    };
    let s = cl::fano_rigidity_screen(&rows);
    let mut human = format!("{:<6} {:>4} {:>6} {:>4} {:>6}  verdict\n", "id", "rho", "-K^3", "b3", "chi(T)");
    for r in &s.rows {
        let i = &r.invariants;
        writeln!(human, "{:<6} {:>4} {:>6} {:>4} {:>6}  {}", i.id, i.rho, i.minus_k3, i.b3, r.chi, r.verdict).ok();
    }
    for (cat, ids) in &s.partition {
        writeln!(human, "{cat}: {}", ids.join(" ")).ok();
    }
    let rows_json: Vec<Value> = s
        .rows
        .iter()
        .map(|r| json!({ "id": r.invariants.id, "rho": r.invariants.rho, "minus_k3": r.invariants.minus_k3, "b3": r.invariants.b3, "category": r.invariants.category, "chi": r.chi, "verdict": r.verdict }))
        .collect();
    let verdict = format!("{} rows with chi(T) < 0", s.negative().len());
    Ok(Outcome::ok(verdict, json!({ "rows": rows_json, "partition": s.partition, "negative": s.negative() }), human))
}

fn center(s: &str) -> Result<Center> {
    let bad = || Error::Invalid(format!("center {s:?} must be fixed:K, ray:R or interior"));
    if s == "interior" {
        return Ok(Center::Interior);
    }
    let (kind, k) = s.split_once(':').ok_or_else(bad)?;
    let k: usize = k.parse().map_err(|_| bad())?;
    match kind {
        "fixed" => Ok(Center::Fixed(k)),
        "ray" => Ok(Center::OnComponent(k)),
        _ => Err(bad()),
    }
}

fn state_json(s: &SurfaceDeltaState) -> Value {
    json!({
        "fan": s.fan().data(),
        "coefficients": s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "anticanonical": s.is_anticanonical(),
    })
}

pub fn surface_descent(src: &FanSource, centers: &[String], hirzebruch: Option<i64>, dv: i64) -> Result<Outcome> {
    if let Some(n) = hirzebruch {
        let l = cl::hirzebruch_delta_constraints(n, dv)?;
        let mut human = format!("F_{n}, Delta^v = {dv} fibres\n");
        let mut ids = Vec::new();
        for i in &l.identities {
            writeln!(human, "{:<14} {:>4}  expected {:>4}  {}", i.name, i.value.to_string(), i.expected.to_string(), if i.holds() { "ok" } else { "FAIL" }).ok();
            ids.push(json!({ "name": i.name, "value": i.value.to_string(), "expected": i.expected.to_string(), "holds": i.holds() }));
        }
        let verdict = if l.holds() { "identities hold" } else { "identity fails" };
        return Ok(Outcome::ok(verdict, json!({ "n": n, "dv": dv, "identities": ids }), human));
    }
    let mut state = SurfaceDeltaState::boundary(input::fan(src)?)?;
    let mut steps = Vec::new();
    let mut human = String::new();
    let mut verdict = "accepted".to_string();
    for c in centers {
        let c = center(c)?;
        match cl::blowup_delta_descent(&state, c)? {
            Descent::Accepted(next) => {
                let e = next.history().last().map(|h| h.e_coefficient.to_string()).unwrap_or_default();
                writeln!(human, "{c:?}: accepted, E coefficient {e}, {} rays", next.fan().rays().len()).ok();
                steps.push(json!({ "center": format!("{c:?}"), "accepted": true, "e_coefficient": e, "state": state_json(&next) }));
                state = next;
            }
            Descent::Refused { reason, e_coefficient } => {
                writeln!(human, "{c:?}: refused ({reason}), E coefficient would be {e_coefficient}").ok();
                steps.push(json!({ "center": format!("{c:?}"), "accepted": false, "reason": reason, "e_coefficient": e_coefficient.to_string() }));
                verdict = "refused".into();
                break;
            }
        }
    }
    write!(human, "final fan: {}", state.fan().to_json()).ok();
    Ok(Outcome::ok(verdict, json!({ "steps": steps, "final": state_json(&state) }), human))
}

pub fn repro(target: &str, p: Option<u32>, seed: Option<u64>) -> Result<Outcome> {
    let opts = ReproOptions { p, seed: seed.unwrap_or(repro::DEFAULT_SEED) };
    let reports = repro::run_target(target, &opts)?;
    let pass = reports.iter().all(|r| r.pass);
    let mut human = String::new();
    for r in &reports {
        writeln!(human, "[{}] {:>2} {:<24} {:>8.1} ms  {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.target, r.elapsed_ms, r.detail).ok();
    }
    let mut o = Outcome::ok(if pass { "PASS" } else { "FAIL" }, serde_json::to_value(&reports).expect("reports serialize"), human);
    o.pass = pass;
    Ok(o)
}
