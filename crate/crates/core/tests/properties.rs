mod common;

use common::*;
use curvereg::arrangement::build_arrangement;
use curvereg::curve::{CurveClass, CurveRecord};
use curvereg::groebner::{syzygy_module, GradedModulePresentation, IdealBasis};
use curvereg::singularities::{
    epsilon, intersect_curves, milnor_union_check, pair_inequality, tjurina_number, LocalGerm,
};
use curvereg::verify::{ArrangementAnalysis, TheoremId, VerdictStatus};
use curvereg::{QPoly, Rationals};
use proptest::prelude::*;

fn poly_from(terms: &[(i64, [u32; 3])], names: [&str; 3]) -> String {
    let mut s = String::from("0");
    for (c, e) in terms {
        s.push_str(&format!(" + ({c})*{}^{}*{}^{}*{}^{}", names[0], e[0], names[1], e[1], names[2], e[2]));
    }
    s
}

/// Random nonzero form of degree `deg` with small integer coefficients.
fn form(deg: u32) -> impl Strategy<Value = QPoly> {
    let monos: Vec<[u32; 3]> = monomials(3, deg as i32)
        .into_iter()
        .map(|m| [m[0] as u32, m[1] as u32, m[2] as u32])
        .collect();
    let n = monos.len();
    prop::collection::vec(-3i64..=3, n)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(move |cs| {
            let terms: Vec<(i64, [u32; 3])> = cs.iter().zip(&monos).map(|(&c, &m)| (c, m)).collect();
            p(&poly_from(&terms, ["x", "y", "z"]))
        })
}

fn small_ideal() -> impl Strategy<Value = Vec<QPoly>> {
    prop::collection::vec((1u32..=2).prop_flat_map(form), 2..=3)
}

fn line() -> impl Strategy<Value = QPoly> {
    form(1)
}

/// Germ `v^a - u^b` plus a few higher terms.
fn singular_germ() -> impl Strategy<Value = QPoly> {
    (2u32..=3, 3u32..=6, prop::collection::vec(-2i64..=2, 3)).prop_map(|(a, b, c)| {
        let extra = format!(" + ({})*u^{}*v^{} + ({})*u^{} + ({})*v^{}", c[0], b - 1, a, c[1], b + 1, c[2], a + 2);
        g(&format!("v^{a} - u^{b}{extra}"))
    })
}

fn smooth_germ() -> impl Strategy<Value = QPoly> {
    (-2i64..=2, -2i64..=2, 0i64..=1).prop_map(|(a, b, swap)| {
        if swap == 1 {
            g(&format!("u + ({a})*v + ({b})*v^2"))
        } else {
            g(&format!("v + ({a})*u + ({b})*u^2"))
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn normal_form_vanishes_on_members(gens in small_ideal(), mults in prop::collection::vec(form(1), 3)) {
        let ideal = IdealBasis::new(Rationals, gens.clone()).unwrap();
        // Members of degree 3: Σ m_i g_i with m_i of complementary degree.
        let mut h = p("0");
        for (g, m) in gens.iter().zip(&mults) {
            let factor = if g.degree() == Some(2) { m.clone() } else { m.mul(m) };
            h = h.add(&factor.mul(g));
        }
        prop_assert!(ideal.normal_form(&h).unwrap().is_zero());
        prop_assert!(ideal.contains(&h).unwrap());
    }

    #[test]
    fn syzygies_are_correct_and_complete(gens in small_ideal()) {
        let degrees: Vec<i32> = gens.iter().map(|g| g.degree().unwrap() as i32).collect();
        let m = syzygy_module(Rationals, &gens, &degrees).unwrap();
        for s in m.gens() {
            let c = s.to_polys(gens.len());
            let sum = c.iter().zip(&gens).fold(p("0"), |acc, (a, g)| acc.add(&a.mul(g)));
            prop_assert!(sum.is_zero());
        }
        for k in 0..=5 {
            prop_assert_eq!(m.hilbert_function(k).unwrap(), dense_syzygy_dim(&gens, k), "degree {}", k);
        }
    }

    #[test]
    fn resolutions_are_exact(gens in small_ideal()) {
        let quotient = GradedModulePresentation::ideal_quotient(Rationals, &gens).unwrap();
        let res = quotient.resolve().unwrap();
        prop_assert!(res.composition_vanishes());
        prop_assert!(res.is_minimal());
        let betti = res.betti();
        for k in 0..=6 {
            let hf = dense_quotient_hf(&gens, k);
            prop_assert_eq!(betti.hilbert_from_betti(k), hf as i64);
            prop_assert_eq!(quotient.hilbert_function(k).unwrap(), hf);
        }
    }

    #[test]
    fn saturation_is_idempotent_and_stabilizes(gens in small_ideal()) {
        let ideal = IdealBasis::new(Rationals, gens).unwrap();
        let sat = ideal.saturate().unwrap();
        prop_assert!(sat.saturate().unwrap().same_ideal(&sat).unwrap());
        prop_assert!(ideal.groebner().unwrap().gens().iter().all(|g| sat.contains(g).unwrap()));
        // A saturated ideal defines a scheme of dimension <= 1 in P^2 here,
        // whose Hilbert function is eventually linear; its second
        // difference therefore vanishes in large degree.
        let h: Vec<i64> = (8..=11).map(|k| sat.quotient_hilbert_function(k).unwrap() as i64).collect();
        prop_assert_eq!(h[3] - 2 * h[2] + h[1], 0);
        prop_assert_eq!(h[2] - 2 * h[1] + h[0], 0);
    }

    #[test]
    fn epsilon_is_nonnegative(germ in singular_germ()) {
        let germ = LocalGerm::new(germ).unwrap();
        if let Ok(e) = epsilon(&germ) {
            let tau = tjurina_number(&germ).unwrap().finite().unwrap();
            prop_assert!(tau >= 1);
            prop_assert!(e < 1000);
        }
    }

    #[test]
    fn weighted_homogeneous_germs_have_zero_epsilon(a in 2u32..=5, b in 2u32..=7, c in 1i64..=3) {
        let germ = LocalGerm::new(g(&format!("v^{a} - ({c})*u^{b}"))).unwrap();
        prop_assert_eq!(epsilon(&germ).unwrap(), 0);
    }

    #[test]
    fn pair_inequalities_hold(d1 in singular_germ(), d2 in smooth_germ()) {
        let (g1, g2) = (LocalGerm::new(d1.clone()).unwrap(), LocalGerm::new(d2.clone()).unwrap());
        // Pairs sharing a component have infinite intersection multiplicity.
        prop_assume!(oracle_intersection(&d1, &d2).is_some());
        if let (Ok(ineq), Ok(union)) = (pair_inequality(&g1, &g2), milnor_union_check(&g1, &g2)) {
            prop_assert!(ineq.holds, "{:?}", ineq);
            prop_assert!(ineq.tau_form_holds, "{:?}", ineq);
            prop_assert!(ineq.margin >= 0);
            prop_assert!(union.holds, "{:?}", union);
            prop_assert_eq!(Some(ineq.intersection as usize), oracle_intersection(&d1, &d2));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn line_arrangement_invariants(lines in prop::collection::vec(line(), 3..=6)) {
        let arr = build_arrangement(lines);
        prop_assume!(arr.is_ok());
        let arr = arr.unwrap();
        let d = arr.degree() as i64;
        let aa = ArrangementAnalysis::new(arr).unwrap();
        let t = &aa.analysis.table;
        prop_assert!(aa.locus.is_some(), "line arrangements have rational singular points");
        let locus = aa.locus.as_ref().unwrap();
        prop_assert_eq!(locus.tau_local_sum, t.tau);
        // ct = mdr_e + d - 2, and reg M(f) against st.
        prop_assert_eq!(t.ct.finite().unwrap(), t.mdr_e.unwrap() as i64 + d - 2);
        let free = t.class == Some(CurveClass::Free);
        prop_assert_eq!(t.reg_Mf as i64, if free { t.st } else { t.st - 1 });
        prop_assert!(t.st <= 3 * (d - 2));
        prop_assert!(t.reg_D0 as i64 <= 2 * d - 4);
        if free {
            prop_assert_eq!(t.exponents.iter().sum::<i32>() as i64, d - 1);
        }
        if matches!(t.class, Some(CurveClass::NearlyFree | CurveClass::PlusOneGenerated)) {
            prop_assert_eq!((t.exponents[0] + t.exponents[1]) as i64, d);
        }
        for v in aa.verify_all(&TheoremId::ALL) {
            prop_assert!(v.status != VerdictStatus::Fail, "{:?}", v);
        }
    }

    #[test]
    fn bezout_census_for_lines_and_conics(l in line(), c in form(2), m in line()) {
        let f1 = l.mul(&m);
        let inter = intersect_curves(&f1, &c);
        prop_assume!(inter.is_ok());
        let inter = inter.unwrap();
        prop_assert_eq!(inter.bezout, 4);
        let located: u64 = inter.points.iter().map(|(_, k)| k).sum();
        prop_assert!(located <= 4);
        prop_assert_eq!(inter.certified, located == 4);
    }

    #[test]
    fn euler_and_degree_laws(f in form(3), h in form(2)) {
        let fh = f.mul(&h);
        prop_assert_eq!(fh.degree(), Some(5));
        let grad = fh.gradient();
        let euler = p("x").mul(&grad[0]).add(&p("y").mul(&grad[1])).add(&p("z").mul(&grad[2]));
        prop_assert_eq!(euler, fh.scale(&q(5)));
    }
}

#[test]
fn curve_record_matches_kernel_dimensions_on_random_arrangements() {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..6 {
        let comps = random_arrangement(&mut rng);
        let f = comps.iter().skip(1).fold(comps[0].clone(), |a, c| a.mul(c));
        let a = CurveRecord::new(f.clone()).unwrap().analyze().unwrap();
        let d = a.degree() as i32;
        for k in 0..=2 * d {
            assert_eq!(a.d0.presentation.hilbert_function(k).unwrap(), dense_derivation_dim(&f, k), "{f} degree {k}");
        }
    }
}
