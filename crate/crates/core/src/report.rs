//! Curve definition files and analysis reports.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::arrangement::{build_arrangement, ComponentSummary};
use crate::curve::{CurveRecord, InvariantTable};
use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_PRIME};
use crate::groebner::BettiTable;
use crate::parse::parse_projective;
use crate::poly::{QPoly, PROJECTIVE_VARS};
use crate::singularities::LocalSingularityReport;
use crate::verify::{AdditionDeletionReport, ArrangementAnalysis, TheoremId, TheoremVerdict, VerdictStatus};

/// Coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    pub fn is_exact(self) -> bool {
        self == FieldSpec::Q
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => f.write_str("Q"),
            FieldSpec::Fp(p) => write!(f, "Fp{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `Fp` (default prime) and `Fp<p>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(FieldSpec::Q),
            "Fp" => Ok(FieldSpec::Fp(DEFAULT_PRIME)),
            _ => {
                let p = s
                    .strip_prefix("Fp")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidField(format!("expected \"Q\" or \"Fp<p>\", got {s:?}")))?;
                PrimeField::new(p)?;
                Ok(FieldSpec::Fp(p))
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn default_field() -> FieldSpec {
    FieldSpec::Q
}

fn default_variables() -> Vec<String> {
    PROJECTIVE_VARS.iter().map(|v| v.to_string()).collect()
}

/// Expected values: a partial invariant table and verdict statuses.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub invariants: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub verdicts: BTreeMap<TheoremId, VerdictStatus>,
}

/// A curve (or arrangement) definition file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDefinition {
    pub name: String,
    #[serde(default = "default_field")]
    pub field: FieldSpec,
    #[serde(default = "default_variables")]
    pub variables: Vec<String>,
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl CurveDefinition {
    pub fn from_json(text: &str) -> Result<Self> {
        let def: CurveDefinition = serde_json::from_str(text)?;
        def.validate()?;
        Ok(def)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<()> {
        if self.variables != default_variables() {
            return Err(Error::InvalidInput(format!("variables must be [\"x\", \"y\", \"z\"], got {:?}", self.variables)));
        }
        if self.components.is_empty() {
            return Err(Error::InvalidInput("no components".into()));
        }
        if let Some(e) = &self.expected {
            let known = invariant_keys();
            if let Some(k) = e.invariants.keys().find(|k| !known.contains(k)) {
                return Err(Error::InvalidInput(format!("unknown invariant {k:?} in expected values")));
            }
        }
        Ok(())
    }

    /// Parses the components, reporting the failing component.
    pub fn polynomials(&self) -> Result<Vec<QPoly>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_projective(s).map_err(|e| match e {
                    Error::Parse { line, column, message } => {
                        Error::Parse { line, column, message: format!("component {}: {message}", i + 1) }
                    }
                    e => e,
                })
            })
            .collect()
    }
}

fn invariant_keys() -> Vec<String> {
    [
        "exponents", "mdr", "mdr_e", "tau", "ct", "st", "T", "indeg_I", "defects", "class", "reg_D0", "reg_Jf", "reg_Mf",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

/// Options shared by the commands.
#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// Overrides the field named in the file.
    pub field: Option<FieldSpec>,
    pub max_degree: u32,
    pub theorems: Vec<TheoremId>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { field: None, max_degree: 12, theorems: TheoremId::ALL.to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEcho {
    pub name: String,
    pub field: FieldSpec,
    pub components: Vec<String>,
    pub polynomial: String,
    pub degree: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationCheck {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

/// Everything computed for one definition. Deterministic for a fixed
/// input; timing lives outside, in [`TimedReport`].
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub input: InputEcho,
    /// Set for prime-field runs, which only cross-check Hilbert data.
    pub heuristic: bool,
    pub components: Option<Vec<ComponentSummary>>,
    pub invariants: InvariantTable,
    pub betti_D0: BettiTable,
    pub singularities: Option<Vec<LocalSingularityReport>>,
    pub addition_deletion: Vec<AdditionDeletionReport>,
    pub verdicts: Vec<TheoremVerdict>,
    pub expected: Option<ExpectationCheck>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn failed_verdicts(&self) -> Vec<&TheoremVerdict> {
        self.verdicts.iter().filter(|v| v.status == VerdictStatus::Fail).collect()
    }

    /// No failing verdict and no expectation mismatch.
    pub fn passed(&self) -> bool {
        self.failed_verdicts().is_empty() && self.expected.as_ref().is_none_or(|e| e.mismatches.is_empty())
    }

    pub fn verdict(&self, id: TheoremId) -> Option<&TheoremVerdict> {
        self.verdicts.iter().find(|v| v.theorem == id)
    }

    /// Serializes and checks that the document parses back to the same
    /// report under the strict schema.
    pub fn to_validated_json(&self) -> Result<String> {
        let text = serde_json::to_string_pretty(self)?;
        let back: AnalysisReport = serde_json::from_str(&text)?;
        if &back != self {
            return Err(Error::Inconsistent("report does not survive a JSON round trip".into()));
        }
        Ok(text)
    }

    /// Human-readable summary.
    pub fn to_text(&self) -> String {
        let t = &self.invariants;
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("{} over {}: f = {} (d = {})", self.input.name, self.input.field, self.input.polynomial, self.input.degree));
        if self.heuristic {
            line("heuristic run over a prime field".into());
        }
        let class = t.class.map(|c| c.to_string()).unwrap_or_else(|| "smooth".into());
        line(format!("exponents {:?}, class {class}", t.exponents));
        line(format!("tau {}, ct {}, st {}, T {}, indeg I {}", t.tau, t.ct, t.st, t.T, t.indeg_I));
        line(format!("reg D0 {}, reg J_f {}, reg M(f) {}", t.reg_D0, t.reg_Jf, t.reg_Mf));
        if let Some(sing) = &self.singularities {
            for s in sing {
                line(format!("  {}  mu {}  tau {}  eps {}{}", s.point, s.mu, s.tau, s.epsilon, if s.is_node { "  node" } else { "" }));
            }
        }
        for v in &self.verdicts {
            line(format!("{:<7} {}", v.theorem.as_str(), v.status));
            for n in &v.notes {
                line(format!("        {n}"));
            }
        }
        if let Some(e) = &self.expected {
            line(format!("expected values: {} checked, {} mismatched", e.checked, e.mismatches.len()));
            for m in &e.mismatches {
                line(format!("  {m}"));
            }
        }
        for w in &self.warnings {
            line(format!("warning: {w}"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub seconds: f64,
}

/// A report with its wall-clock time, kept apart from the deterministic body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimedReport {
    pub report: AnalysisReport,
    pub timing: Timing,
}

fn check_expected(expected: &Expected, table: &InvariantTable, verdicts: &[TheoremVerdict]) -> Result<ExpectationCheck> {
    let actual = serde_json::to_value(table)?;
    let mut check = ExpectationCheck::default();
    for (k, want) in &expected.invariants {
        check.checked += 1;
        let got = actual.get(k).cloned().unwrap_or(Value::Null);
        let matches = match (k.as_str(), want, &got) {
            // Partial defect maps: only the listed degrees are compared.
            ("defects", Value::Object(w), Value::Object(g)) => w.iter().all(|(d, v)| g.get(d) == Some(v)),
            _ => &got == want,
        };
        if !matches {
            check.mismatches.push(format!("{k}: expected {want}, computed {got}"));
        }
    }
    for (id, want) in &expected.verdicts {
        // Checks left out of the run are not compared.
        if let Some(v) = verdicts.iter().find(|v| v.theorem == *id) {
            check.checked += 1;
            if v.status != *want {
                check.mismatches.push(format!("{id}: expected {want}, got {}", v.status));
            }
        }
    }
    Ok(check)
}

/// Analyzes a definition: invariants, local reports and verdicts over `Q`,
/// or invariants only over a prime field.
pub fn analyze_definition(def: &CurveDefinition, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let field = opts.field.unwrap_or(def.field);
    let polys = def.polynomials()?;
    let degree: u32 = polys.iter().map(|p| p.degree().unwrap_or(0)).sum();
    if degree > opts.max_degree {
        return Err(Error::DegreeTooLarge { degree, limit: opts.max_degree });
    }
    let mut report = match field {
        FieldSpec::Q => analyze_rational(def, polys, opts)?,
        FieldSpec::Fp(p) => analyze_modular(def, polys, p)?,
    };
    if let Some(e) = &def.expected {
        if field.is_exact() {
            report.expected = Some(check_expected(e, &report.invariants, &report.verdicts)?);
        } else {
            report.warnings.push("expected values are not compared in heuristic runs".into());
        }
    }
    Ok(report)
}

fn analyze_rational(def: &CurveDefinition, polys: Vec<QPoly>, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let arrangement = build_arrangement(polys)?;
    let aa = ArrangementAnalysis::new(arrangement)?;
    let verdicts = aa.verify_all(&opts.theorems);
    let mut warnings = aa.warnings.clone();
    let mut addition_deletion = Vec::new();
    if opts.theorems.iter().any(|t| matches!(t, TheoremId::Thm1 | TheoremId::Cor1 | TheoremId::Lem2 | TheoremId::RkS)) {
        for r in aa.addition_deletion() {
            match r {
                Ok(r) => addition_deletion.push(r.clone()),
                Err(e) => warnings.push(e.clone()),
            }
        }
    }
    Ok(AnalysisReport {
        input: InputEcho {
            name: def.name.clone(),
            field: FieldSpec::Q,
            components: def.components.clone(),
            polynomial: aa.arrangement.f().to_string(),
            degree: aa.arrangement.degree(),
        },
        heuristic: false,
        components: Some(aa.arrangement.summaries()),
        invariants: aa.analysis.table.clone(),
        betti_D0: aa.analysis.d0.betti.clone(),
        singularities: aa.locus.as_ref().map(|l| l.reports.clone()),
        addition_deletion,
        verdicts,
        expected: None,
        warnings,
    })
}

fn analyze_modular(def: &CurveDefinition, polys: Vec<QPoly>, p: u64) -> Result<AnalysisReport> {
    let field = PrimeField::new(p)?;
    let f = polys.iter().skip(1).fold(polys[0].clone(), |acc, g| acc.mul(g));
    let fp = f.map_field(field, |c| crate::field::Field::from_rational(&field, c))?;
    let analysis = CurveRecord::new(fp)?.analyze()?;
    let mut warnings = vec![format!("computed over F_{p}: Hilbert data only, no verdicts")];
    if let Err(e) = analysis.check_consistency() {
        warnings.push(e.to_string());
    }
    Ok(AnalysisReport {
        input: InputEcho {
            name: def.name.clone(),
            field: FieldSpec::Fp(p),
            components: def.components.clone(),
            polynomial: f.to_string(),
            degree: analysis.degree(),
        },
        heuristic: true,
        components: None,
        invariants: analysis.table.clone(),
        betti_D0: analysis.d0.betti.clone(),
        singularities: None,
        addition_deletion: Vec::new(),
        verdicts: Vec::new(),
        expected: None,
        warnings,
    })
}

/// Loads, analyzes and times one definition file.
pub fn analyze_file(path: &Path, opts: &AnalysisOptions) -> Result<TimedReport> {
    let start = std::time::Instant::now();
    let def = CurveDefinition::load(path)?;
    let report = analyze_definition(&def, opts)?;
    Ok(TimedReport { report, timing: Timing { seconds: start.elapsed().as_secs_f64() } })
}
