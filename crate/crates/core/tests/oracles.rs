mod common;

use common::*;
use curvereg::curve::CurveRecord;
use curvereg::groebner::{syzygy_module, GradedModulePresentation, IdealBasis};
use curvereg::singularities::{intersection_multiplicity, milnor_number, tjurina_number, LocalGerm};
use curvereg::Rationals;

#[test]
fn linear_algebra_oracle_sanity() {
    // dim S_2 = 6; (x, y, z) kills everything from degree 1 on.
    assert_eq!(dense_quotient_hf(&[], 2), 6);
    assert_eq!(dense_quotient_hf(&[p("x"), p("y"), p("z")], 3), 0);
    // Two general quadrics: Hilbert function 1, 3, 4, 4, ...
    let ci = [p("x^2 - y*z"), p("y^2 - x*z")];
    let hf: Vec<usize> = (0..6).map(|k| dense_quotient_hf(&ci, k)).collect();
    assert_eq!(hf, vec![1, 3, 4, 4, 4, 4]);
    // The triangle has two independent linear derivations.
    assert_eq!(dense_derivation_dim(&p("x*y*z"), 1), 2);
    assert_eq!(local_colength(&[g("u^2"), g("v")]), Some(2));
    assert_eq!(local_colength(&[g("u*v")]), None);
}

#[test]
fn twisted_cubic_initial_ideal_matches_linear_algebra() {
    let gens = vec![p("x*y - z^2"), p("x^2 - y*z")];
    let ideal = IdealBasis::new(Rationals, gens.clone()).unwrap().groebner().unwrap();
    for k in 0..=8 {
        assert_eq!(ideal.quotient_hilbert_function(k).unwrap(), dense_quotient_hf(&gens, k), "degree {k}");
    }
}

#[test]
fn saturation_of_conic_line_jacobian() {
    let f = p("y*(x^2 + y^2 - z^2)");
    let sat = IdealBasis::new(Rationals, f.gradient()).unwrap().saturate().unwrap();
    // Ideal of the two points (1:0:1), (1:0:-1): Hilbert function 1, 2, 2, ...
    for k in 0..=6 {
        let want = if k == 0 { 1 } else { 2 };
        assert_eq!(dense_quotient_hf(sat.gens(), k), want);
        assert_eq!(sat.quotient_hilbert_function(k).unwrap(), want);
    }
    assert!(sat.contains(&p("y")).unwrap());
}

#[test]
fn syzygies_of_triangle_gradient_are_minimal() {
    let grad = p("x*y*z").gradient();
    // Coordinates of a syzygy of degree k have degree k - 2.
    let m = syzygy_module(Rationals, &grad, &[2, 2, 2]).unwrap();
    assert_eq!(m.degrees(), &[3, 3]);
    // Membership by substitution.
    for s in m.gens() {
        let c = s.to_polys(3);
        let sum = c[0].mul(&grad[0]).add(&c[1].mul(&grad[1])).add(&c[2].mul(&grad[2]));
        assert!(sum.is_zero());
    }
    // Minimality: in degree 2 the module has 2 · 3 = 6 dimensions, all
    // coming from the two linear generators.
    for k in 0..=2 {
        assert_eq!(m.hilbert_function(k + 2).unwrap(), dense_derivation_dim(&p("x*y*z"), k));
    }
}

#[test]
fn derivation_module_dimensions_match_kernels() {
    for s in ["y^2*z - x^3 - x^2*z", "x*y*z", "y*(x^2 + y^2 - z^2)", "x^3 + y^3 + z^3", "x*y*(x - y)*(x + y - z)"] {
        let f = p(s);
        let a = CurveRecord::new(f.clone()).unwrap().analyze().unwrap();
        let d = a.degree() as i32;
        for k in 0..=2 * d {
            assert_eq!(a.d0.presentation.hilbert_function(k).unwrap(), dense_derivation_dim(&f, k), "{s} degree {k}");
        }
    }
}

#[test]
fn milnor_algebra_matches_linear_algebra() {
    for s in ["y^2*z - x^3 - x^2*z", "x^3 + y^3 + z^3", "x*y*(x^2 + y^2 - z^2)"] {
        let f = p(s);
        let a = CurveRecord::new(f.clone()).unwrap().analyze().unwrap();
        let m = GradedModulePresentation::ideal_quotient(Rationals, &f.gradient()).unwrap();
        for k in 0..=3 * a.degree() as i32 {
            let want = dense_quotient_hf(&f.gradient(), k);
            assert_eq!(a.milnor_dim(k) as usize, want, "{s} degree {k}");
            assert_eq!(m.hilbert_function(k).unwrap(), want);
        }
    }
}

#[test]
fn local_invariants_match_truncation_oracle() {
    let germs = [
        "u*v",
        "v^2 - u^3",
        "v^2 - u^2 - u^3",
        "u^4 + v^5",
        "u^4 + v^5 + u^2*v^3",
        "u*v*(u + v)",
        "v^3 - u^3*v",
        "v*(v - u^2)",
        "u^3 + v^7 + u*v^5",
    ];
    for s in germs {
        let germ = LocalGerm::new(g(s)).unwrap();
        let mu = milnor_number(&germ).unwrap().finite().unwrap();
        let tau = tjurina_number(&germ).unwrap().finite().unwrap();
        assert_eq!(Some(mu), oracle_milnor(&g(s)), "mu({s})");
        assert_eq!(Some(tau), oracle_tjurina(&g(s)), "tau({s})");
    }
    for (a, b) in [("v", "u"), ("v^2 - u^3", "v"), ("v - u^2", "v"), ("u^4 + v^5 + u^2*v^3", "v - u")] {
        let i = intersection_multiplicity(&LocalGerm::new(g(a)).unwrap(), &LocalGerm::new(g(b)).unwrap()).unwrap();
        assert_eq!(Some(i.finite().unwrap()), oracle_intersection(&g(a), &g(b)), "({a}, {b})");
    }
}
