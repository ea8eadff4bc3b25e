use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use froblift::classification::{self as cl, MarkedDynkinDiagram};
use froblift::curve_restriction::{self as cr, SemilinearMap};
use froblift::fan::catalog_fan;
use froblift::frobenius_splitting as fs;
use froblift::poly::var_names;
use froblift::toric_cohomology::{self as tc, ToricDivisor};
use froblift::witt_frobenius::{self as wf, FrobeniusLiftChart};
use froblift::{FiniteField, FqPoly, LogForm};

fn witt(c: &mut Criterion) {
    let f = FiniteField::get(5).unwrap();
    let vars = var_names(&["x", "y", "z"]);
    let chart = FrobeniusLiftChart::standard(f, vars.clone());
    let g = FqPoly::parse(f, vars, "x^3*y + 2*y^2*z^2 + z^4 + x*y*z").unwrap();
    c.bench_function("delta_teichmuller_p5", |b| b.iter(|| chart.delta(black_box(&g)).unwrap()));
    c.bench_function("det_xi_p7_n3", |b| {
        let f7 = FiniteField::get(7).unwrap();
        let lifts = wf::standard_projective_lifts(f7, 3);
        b.iter(|| wf::det_xi_divisor_pn(7, 3, black_box(&lifts)).unwrap())
    });
}

fn cartier(c: &mut Criterion) {
    let f = FiniteField::get(7).unwrap();
    let vars = var_names(&["x", "y"]);
    let w = LogForm::one_form(
        LogForm::unmarked(2),
        vec![FqPoly::parse(f, vars.clone(), "x^13*y^6 + 3*x^6 + y^20").unwrap(), FqPoly::parse(f, vars, "x^7*y^13 + 2*y^6").unwrap()],
    )
    .unwrap();
    c.bench_function("cartier_roundtrip_p7", |b| b.iter(|| fs::cartier(&fs::cartier_inverse(black_box(&w)).unwrap()).unwrap()));
}

fn toric(c: &mut Criterion) {
    let fan = Arc::new(catalog_fan("Bl3P2").unwrap());
    let d = ToricDivisor::new(fan.clone(), vec![3, -2, 4, 1, -5, 2]).unwrap();
    c.bench_function("cohomology_bl3p2", |b| b.iter(|| tc::cohomology_all(black_box(&d)).unwrap()));
    let p3 = Arc::new(catalog_fan("P3").unwrap());
    let l = ToricDivisor::new(p3.clone(), vec![2, 0, 0, 0]).unwrap();
    c.bench_function("bott_log_p3", |b| b.iter(|| tc::bott_vanishing_log(&p3, black_box(&l)).unwrap()));
}

fn curves(c: &mut Criterion) {
    let f = FiniteField::get(5).unwrap();
    let a = vec![vec![f.elem(1).unwrap(), f.elem(2).unwrap(), f.elem(0).unwrap()], vec![f.elem(0).unwrap(), f.elem(3).unwrap(), f.elem(1).unwrap()], vec![f.elem(4).unwrap(), f.elem(0).unwrap(), f.elem(1).unwrap()]];
    let map = SemilinearMap::new(a).unwrap();
    c.bench_function("stabilized_fixed_points_f5_r3", |b| b.iter(|| cr::stabilized_fixed_points(black_box(&map)).unwrap()));
}

fn classify(c: &mut Criterion) {
    let e8: MarkedDynkinDiagram = "E8:8".parse().unwrap();
    c.bench_function("dim_g_mod_p_e8", |b| b.iter(|| cl::dim_g_mod_p(black_box(&e8)).unwrap()));
    let table = cl::mori_mukai_table().unwrap();
    c.bench_function("fano_screen", |b| b.iter(|| cl::fano_rigidity_screen(black_box(&table))));
}

criterion_group!(kernels, witt, cartier, toric, curves, classify);
criterion_main!(kernels);
