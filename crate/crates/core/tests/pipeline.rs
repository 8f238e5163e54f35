//! End-to-end behavior of definition files, reports and corpus runs.

mod common;

use std::fs;

use common::*;
use curvereg::corpus::{corpus_files, run_corpus};
use curvereg::curve::{CurveClass, CurveRecord, Threshold};
use curvereg::field::{Field, DEFAULT_PRIME};
use curvereg::report::{analyze_definition, analyze_file, AnalysisOptions, CurveDefinition, FieldSpec};
use curvereg::verify::{parse_theorem_list, TheoremId, VerdictStatus};
use curvereg::PrimeField;
use serde_json::Value;

fn def(name: &str, components: &[&str]) -> CurveDefinition {
    let comps: Vec<String> = components.iter().map(|c| format!("\"{c}\"")).collect();
    CurveDefinition::from_json(&format!(r#"{{"name": "{name}", "components": [{}]}}"#, comps.join(", "))).unwrap()
}

fn opts(theorems: &str) -> AnalysisOptions {
    AnalysisOptions { theorems: parse_theorem_list(theorems).unwrap(), ..AnalysisOptions::default() }
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = fs::read_to_string(schema_dir().join(name)).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn status(r: &curvereg::report::AnalysisReport, id: TheoremId) -> VerdictStatus {
    r.verdict(id).unwrap().status
}

#[test]
fn analyze_summaries() {
    let tri = analyze_definition(&def("triangle", &["x", "y", "z"]), &opts("all")).unwrap();
    assert_eq!(tri.invariants.exponents, vec![1, 1]);
    assert_eq!(tri.invariants.class, Some(CurveClass::Free));
    assert!(tri.passed());

    let nodal = analyze_definition(&def("uninodal", &["y^2*z - x^3 - x^2*z"]), &opts("all")).unwrap();
    assert_eq!((nodal.invariants.reg_D0, nodal.invariants.st), (2, 3));
    assert!(nodal.passed());

    let smooth = analyze_definition(&def("fermat", &["x^3 + y^3 + z^3"]), &opts("all")).unwrap();
    assert_eq!(smooth.invariants.ct, Threshold::Infinite);
    assert_eq!(status(&smooth, TheoremId::Thm2), VerdictStatus::Pass);
    for id in [TheoremId::Eq1, TheoremId::Ctst, TheoremId::Linsys, TheoremId::Inv, TheoremId::RkST] {
        assert_eq!(status(&smooth, id), VerdictStatus::Skipped, "{id}");
    }
    assert!(smooth.passed());
}

#[test]
fn verify_selected_checks() {
    let cl = analyze_file(&corpus_dir().join("conic-line.json"), &opts("cor2")).unwrap().report;
    assert_eq!(cl.verdicts.len(), 1);
    assert_eq!(status(&cl, TheoremId::Cor2), VerdictStatus::Pass);

    let two = analyze_file(&corpus_dir().join("two-conics.json"), &opts("thm2,lem3,linsys")).unwrap().report;
    for id in [TheoremId::Thm2, TheoremId::Lem3, TheoremId::Linsys] {
        assert_eq!(status(&two, id), VerdictStatus::Pass, "{id}");
    }

    let plus = analyze_file(&corpus_dir().join("braid-plus-line.json"), &opts("thm1,rkS")).unwrap().report;
    assert_eq!(status(&plus, TheoremId::Thm1), VerdictStatus::Pass);
    assert_eq!(status(&plus, TheoremId::RkS), VerdictStatus::Pass);
    let rows = plus.verdict(TheoremId::RkS).unwrap().computed["comparison"].as_array().unwrap().clone();
    let row = rows.iter().find(|r| r["C_s"] == 7).unwrap();
    assert_eq!((row["m0"].as_i64(), row["uncorrected_bound"].as_i64(), row["reg_D0"].as_i64()), (Some(5), Some(4), Some(5)));
    assert!(plus.expected.as_ref().unwrap().mismatches.is_empty());
}

#[test]
fn bound_rows_are_consistent_across_the_corpus() {
    let run = run_corpus(&corpus_dir(), &AnalysisOptions::default(), 4).unwrap();
    for report in run.reports.iter().flatten() {
        for r in &report.addition_deletion {
            assert!(r.verdicts.thm1 && r.reg_actual as i64 <= r.m0, "{}: {r:?}", report.input.name);
            assert!(r.m0 >= r.sty_bound && r.m0 <= r.sty_bound + 1, "{}: {r:?}", report.input.name);
        }
    }
}

#[test]
fn corpus_passes_and_is_deterministic() {
    let base = AnalysisOptions::default();
    let a = run_corpus(&corpus_dir(), &base, 1).unwrap();
    let b = run_corpus(&corpus_dir(), &base, 4).unwrap();
    assert!(a.summary.all_passed(), "{}", a.summary.to_table());
    assert_eq!(a.summary.total, corpus_files(&corpus_dir()).unwrap().len());
    assert_eq!(serde_json::to_string(&a.summary).unwrap(), serde_json::to_string(&b.summary).unwrap());
    for (x, y) in a.reports.iter().zip(&b.reports) {
        let (x, y) = (x.as_ref().unwrap(), y.as_ref().unwrap());
        assert_eq!(x.to_validated_json().unwrap(), y.to_validated_json().unwrap());
    }
    let d = def("again", &["x^2 + y^2 - z^2", "y"]);
    assert_eq!(
        analyze_definition(&d, &base).unwrap().to_validated_json().unwrap(),
        analyze_definition(&d, &base).unwrap().to_validated_json().unwrap()
    );
}

#[test]
fn reports_and_definitions_match_published_schemas() {
    let reports = schema("analysis-report.schema.json");
    let defs = schema("curve-definition.schema.json");
    let base = AnalysisOptions::default();
    for file in corpus_files(&corpus_dir()).unwrap() {
        let text = fs::read_to_string(&file).unwrap();
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert!(defs.is_valid(&doc), "{}", file.display());
        for field in [None, Some(FieldSpec::Fp(DEFAULT_PRIME))] {
            let r = analyze_file(&file, &AnalysisOptions { field, ..base.clone() }).unwrap().report;
            let v: Value = serde_json::from_str(&r.to_validated_json().unwrap()).unwrap();
            let errors: Vec<String> = reports.iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
            assert!(errors.is_empty(), "{}: {errors:?}", file.display());
        }
    }

    let r = analyze_definition(&def("triangle", &["x", "y", "z"]), &base).unwrap();
    let good: Value = serde_json::from_str(&r.to_validated_json().unwrap()).unwrap();
    let mut extra = good.clone();
    extra["unexpected"] = Value::Bool(true);
    assert!(!reports.is_valid(&extra));
    let mut bad_theorem = good.clone();
    bad_theorem["verdicts"][0]["theorem"] = Value::from("thm9");
    assert!(!reports.is_valid(&bad_theorem));
    let mut negative = good;
    negative["invariants"]["tau"] = Value::from(-1);
    assert!(!reports.is_valid(&negative));

    let bad_def: Value = serde_json::from_str(r#"{"name": "q", "components": ["x"], "field": "R"}"#).unwrap();
    assert!(!defs.is_valid(&bad_def));
    assert!(CurveDefinition::from_json(r#"{"name": "q", "components": ["x"], "field": "R"}"#).is_err());
}

#[test]
fn prime_field_hilbert_data_agrees_with_rationals() {
    let field = PrimeField::new(DEFAULT_PRIME).unwrap();
    for file in corpus_files(&corpus_dir()).unwrap() {
        let d = CurveDefinition::load(&file).unwrap();
        let polys = d.polynomials().unwrap();
        let f = polys.iter().skip(1).fold(polys[0].clone(), |a, g| a.mul(g));
        let q = CurveRecord::new(f.clone()).unwrap().analyze().unwrap();
        let fp = f.map_field(field, |c| field.from_rational(c)).unwrap();
        let m = CurveRecord::new(fp).unwrap().analyze().unwrap();
        for k in 0..=3 * q.degree() as i32 {
            assert_eq!(q.milnor_dim(k), m.milnor_dim(k), "{} M(f)_{k}", d.name);
            assert_eq!(q.saturated_quotient_dim(k), m.saturated_quotient_dim(k), "{} sat_{k}", d.name);
        }
        assert_eq!(serde_json::to_value(&q.table).unwrap(), serde_json::to_value(&m.table).unwrap(), "{}", d.name);

        let r = analyze_definition(&d, &AnalysisOptions { field: Some(FieldSpec::Fp(DEFAULT_PRIME)), ..AnalysisOptions::default() })
            .unwrap();
        assert!(r.heuristic && r.verdicts.is_empty() && r.singularities.is_none());
        assert!(r.passed());
    }
}

#[test]
fn irrational_singular_points_degrade_gracefully() {
    let r = analyze_definition(&def("w12-and-infinity", &["x^4*z + y^5 + x^2*y^3", "z"]), &AnalysisOptions::default()).unwrap();
    assert!(r.singularities.is_none());
    assert!(r.warnings.iter().any(|w| w.contains("irrational")), "{:?}", r.warnings);
    assert!(r.verdicts.iter().all(|v| v.status != VerdictStatus::Fail), "{:?}", r.verdicts);
    assert_eq!(status(&r, TheoremId::Inv), VerdictStatus::Pass);
    assert_eq!(r.invariants.reg_Mf as i64, if r.invariants.class == Some(CurveClass::Free) { r.invariants.st } else { r.invariants.st - 1 });
}

#[test]
fn direct_regularities_match_the_table() {
    let mut seen = 0;
    for file in corpus_files(&corpus_dir()).unwrap() {
        let d = CurveDefinition::load(&file).unwrap();
        let polys = d.polynomials().unwrap();
        let f = polys.iter().skip(1).fold(polys[0].clone(), |a, g| a.mul(g));
        let a = CurveRecord::new(f).unwrap().analyze().unwrap();
        let (reg_j, reg_m) = a.direct_regularities().unwrap();
        assert_eq!(reg_m, a.table.reg_Mf, "{}", d.name);
        assert_eq!(reg_j, reg_m + 1, "{}", d.name);
        assert!(a.consistency_errors().is_empty(), "{}: {:?}", d.name, a.consistency_errors());
        seen += 1;
    }
    assert!(seen >= 3);
}

#[test]
fn input_errors() {
    assert!(CurveDefinition::from_json(r#"{"name": "v", "variables": ["a", "b", "c"], "components": ["a"]}"#).is_err());
    assert!(analyze_definition(&def("square", &["x", "x"]), &AnalysisOptions::default()).is_err());
    assert!(analyze_definition(&def("doubled", &["x^2"]), &AnalysisOptions::default()).is_err());
    let big = AnalysisOptions { max_degree: 3, ..AnalysisOptions::default() };
    assert!(analyze_definition(&def("big", &["x", "y", "z", "x - y"]), &big).is_err());
    assert!(parse_theorem_list("thm1,nope").is_err());
}
