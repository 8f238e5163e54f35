//! Global invariants of a reduced plane curve `C : f = 0`: the module of
//! derivations `D0(f)`, Milnor algebra data, the saturated Jacobian ideal,
//! thresholds, classification and regularity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{
    smooth_milnor_algebra_dim, BettiTable, GradedModulePresentation, HilbertFunction, IdealBasis, ModVec,
    Resolution,
};
use crate::monomial::MonomialOrder;
use crate::poly::{Homogeneity, Polynomial};

/// An integer threshold that may be infinite (`ct` of a smooth curve).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Threshold {
    Finite(i64),
    Infinite,
}

impl Threshold {
    pub fn finite(self) -> Option<i64> {
        match self {
            Threshold::Finite(n) => Some(n),
            Threshold::Infinite => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(n) => write!(f, "{n}"),
            Threshold::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Threshold::Finite(n) => s.serialize_i64(*n),
            Threshold::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Threshold::Finite(n)),
            Raw::S(s) if s == "infinity" => Ok(Threshold::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("expected a number or \"infinity\", got {s:?}"))),
        }
    }
}

/// Freeness type read off the degrees of a minimal generating set of `D0(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveClass {
    Free,
    NearlyFree,
    PlusOneGenerated,
    MSyzygy(usize),
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveClass::Free => write!(f, "Free"),
            CurveClass::NearlyFree => write!(f, "NearlyFree"),
            CurveClass::PlusOneGenerated => write!(f, "PlusOneGenerated"),
            CurveClass::MSyzygy(m) => write!(f, "MSyzygy({m})"),
        }
    }
}

impl FromStr for CurveClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Free" => Ok(CurveClass::Free),
            "NearlyFree" => Ok(CurveClass::NearlyFree),
            "PlusOneGenerated" => Ok(CurveClass::PlusOneGenerated),
            _ => s
                .strip_prefix("MSyzygy(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|m| m.parse().ok())
                .map(CurveClass::MSyzygy)
                .ok_or_else(|| Error::InvalidInput(format!("unknown curve class {s:?}"))),
        }
    }
}

impl Serialize for CurveClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Classification from sorted exponents `α_1 <= ... <= α_m` of a singular
/// curve of degree `d`.
pub fn classify_exponents(exponents: &[i32], d: u32) -> CurveClass {
    let d = d as i32;
    match exponents {
        [_, _] => CurveClass::Free,
        [a1, a2, a3] if a1 + a2 == d => {
            if a3 == a2 {
                CurveClass::NearlyFree
            } else {
                CurveClass::PlusOneGenerated
            }
        }
        _ => CurveClass::MSyzygy(exponents.len()),
    }
}

/// The table of global invariants. Field names are part of the JSON format.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantTable {
    pub exponents: Vec<i32>,
    pub mdr: i32,
    /// `None` for smooth curves, where `ER(f) = 0`.
    pub mdr_e: Option<i32>,
    pub tau: u64,
    pub ct: Threshold,
    pub st: i64,
    pub T: i64,
    pub indeg_I: u32,
    pub defects: BTreeMap<u32, u64>,
    /// `None` for smooth curves.
    pub class: Option<CurveClass>,
    pub reg_D0: i32,
    pub reg_Jf: i32,
    pub reg_Mf: i32,
}

/// `D0(f) = { (a, b, c) : a f_x + b f_y + c f_z = 0 }` with a minimal
/// generating set in `S^3` and its minimal free resolution.
#[derive(Clone, Debug)]
pub struct DerivationModule<F: Field> {
    pub presentation: GradedModulePresentation<F>,
    pub resolution: Resolution<F>,
    pub betti: BettiTable,
    pub exponents: Vec<i32>,
    pub reg: i32,
}

impl<F: Field> DerivationModule<F> {
    pub fn generators(&self) -> Vec<Vec<Polynomial<F>>> {
        self.presentation.gens().iter().map(|g| g.to_polys(3)).collect()
    }
}

/// Computes `D0(f)` for a homogeneous `f` of any positive degree.
pub fn derivation_module<F: Field>(f: &Polynomial<F>) -> Result<DerivationModule<F>> {
    let d = require_homogeneous(f)?;
    if d == 0 {
        return Err(Error::InvalidInput("constant polynomial".into()));
    }
    let field = f.field();
    let grad = f.gradient();
    let syz = crate::groebner::syzygy_module(field, &grad, &[d as i32 - 1; 3])?;
    // Re-embed in S^3 without shifts so that (a, b, c) of degree r sits in
    // degree r.
    let gens: Vec<ModVec<F>> = syz.gens().iter().map(|g| ModVec::from_polys(field, &g.to_polys(3), &[0; 3])).collect();
    let presentation = GradedModulePresentation::submodule(field, vec![0; 3], gens)?;
    let resolution = presentation.resolve()?;
    let betti = resolution.betti();
    let exponents = betti.degrees(0);
    let reg = betti
        .regularity()
        .ok_or_else(|| Error::Inconsistent("D0(f) is zero".into()))?;
    Ok(DerivationModule { presentation, resolution, betti, exponents, reg })
}

fn require_homogeneous<F: Field>(f: &Polynomial<F>) -> Result<u32> {
    if f.nvars() != 3 || f.order() != MonomialOrder::GrevlexGlobal {
        return Err(Error::InvalidInput("expected a polynomial in x, y, z".into()));
    }
    match f.homogeneity() {
        Homogeneity::Homogeneous(d) => Ok(d),
        Homogeneity::Zero => Err(Error::InvalidInput("zero polynomial".into())),
        Homogeneity::Inhomogeneous => Err(Error::NotHomogeneous(f.to_string())),
    }
}

/// True when the projective zero set of the homogeneous ideal is finite,
/// i.e. every pair of variables supports a leading monomial.
pub fn has_finite_zero_set<F: Field>(ideal: &IdealBasis<F>) -> Result<bool> {
    let leads = ideal.leading_monomials()?;
    Ok((0..3).all(|k| leads.iter().any(|m| m.0[k] == 0)))
}

/// A reduced homogeneous polynomial `f` of degree `d >= 3`.
#[derive(Clone, Debug)]
pub struct CurveRecord<F: Field> {
    f: Polynomial<F>,
    d: u32,
}

impl<F: Field> CurveRecord<F> {
    /// Validates homogeneity, the degree bound and square-freeness. `f` is
    /// square-free exactly when its singular locus is finite.
    pub fn new(f: Polynomial<F>) -> Result<Self> {
        let d = require_homogeneous(&f)?;
        if d < 3 {
            return Err(Error::DegreeTooSmall(d));
        }
        let jac = IdealBasis::new(f.field(), f.gradient())?;
        if !has_finite_zero_set(&jac)? {
            return Err(Error::NotReduced(f.to_string()));
        }
        Ok(CurveRecord { f, d })
    }

    pub fn f(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> F {
        self.f.field()
    }

    pub fn jacobian_ideal(&self) -> Result<IdealBasis<F>> {
        IdealBasis::new(self.field(), self.f.gradient())
    }

    /// Runs every computation and assembles the invariant table.
    pub fn analyze(&self) -> Result<CurveAnalysis<F>> {
        let field = self.field();
        let d = self.d as i32;
        let grad = self.f.gradient();
        let d0 = derivation_module(&self.f)?;

        let koszul: Vec<ModVec<F>> = {
            let z = Polynomial::zero_projective(field);
            let (fx, fy, fz) = (&grad[0], &grad[1], &grad[2]);
            [
                [fy.clone(), fx.neg(), z.clone()],
                [fz.clone(), z.clone(), fx.neg()],
                [z.clone(), fz.clone(), fy.neg()],
            ]
            .iter()
            .map(|c| ModVec::from_polys(field, c, &[0; 3]))
            .filter(|v| !v.is_zero())
            .collect()
        };
        let kr = GradedModulePresentation::submodule(field, vec![0; 3], koszul)?.hilbert()?;
        let d0_hf = d0.presentation.hilbert()?;

        let milnor = GradedModulePresentation::ideal_quotient(field, &grad)?.hilbert()?;
        let saturated = self.jacobian_ideal()?.saturate()?;
        let sat_hf = GradedModulePresentation::ideal_quotient(field, saturated.gens())?.hilbert()?;

        // dim M(f)_k is constant for k > reg M(f), and reg M(f) <= max(d - 2, reg D0 + d - 3).
        let horizon = (3 * d).max(d0.reg + d) + 1;

        let mut tau = None;
        for k in 1..=horizon + d {
            let (a, b) = (sat_hf.value(k - 1), sat_hf.value(k));
            if a == b {
                tau = Some(b as u64);
                break;
            }
        }
        let tau = tau.ok_or_else(|| Error::Inconsistent("saturated Hilbert function does not stabilize".into()))?;

        let smooth = tau == 0;
        let t = 3 * (d as i64 - 2);
        let mdr_e = if smooth {
            None
        } else {
            (0..=horizon).find(|&r| d0_hf.value(r) > kr.value(r))
        };
        if !smooth && mdr_e.is_none() {
            return Err(Error::Inconsistent("singular curve without essential relations".into()));
        }
        let ct = if smooth {
            Threshold::Infinite
        } else {
            match (0..=horizon).find(|&k| milnor.value(k) != smooth_milnor_algebra_dim(self.d, k)) {
                Some(k) => Threshold::Finite(k as i64 - 1),
                None => return Err(Error::Inconsistent("singular curve matches the smooth reference".into())),
            }
        };
        let st = if smooth {
            t + 1
        } else {
            if (horizon..horizon + d).any(|k| milnor.value(k) as u64 != tau) {
                return Err(Error::Inconsistent("dim M(f)_k has not reached tau at the horizon".into()));
            }
            (0..horizon)
                .rev()
                .find(|&k| milnor.value(k) as u64 != tau)
                .map(|k| k as i64 + 1)
                .unwrap_or(0)
        };
        let indeg = saturated.initial_degree()?.unwrap_or(0);
        let defects = (0..=t.max(0) as i32)
            .map(|k| (k as u32, tau - sat_hf.value(k) as u64))
            .collect();
        let class = (!smooth).then(|| classify_exponents(&d0.exponents, self.d));
        let table = InvariantTable {
            exponents: d0.exponents.clone(),
            mdr: d0.exponents[0],
            mdr_e,
            tau,
            ct,
            st,
            T: t,
            indeg_I: indeg,
            defects,
            class,
            reg_D0: d0.reg,
            reg_Jf: d0.reg + d - 2,
            reg_Mf: d0.reg + d - 3,
        };
        Ok(CurveAnalysis { record: self.clone(), d0, milnor, saturated, sat_hf, table })
    }
}

/// Result of [`CurveRecord::analyze`].
#[derive(Clone, Debug)]
pub struct CurveAnalysis<F: Field> {
    pub record: CurveRecord<F>,
    pub d0: DerivationModule<F>,
    pub milnor: HilbertFunction,
    pub saturated: IdealBasis<F>,
    pub sat_hf: HilbertFunction,
    pub table: InvariantTable,
}

impl<F: Field> CurveAnalysis<F> {
    pub fn degree(&self) -> u32 {
        self.record.d
    }

    pub fn is_smooth(&self) -> bool {
        self.table.tau == 0
    }

    pub fn exponents(&self) -> &[i32] {
        &self.table.exponents
    }

    pub fn milnor_dim(&self, k: i32) -> u64 {
        self.milnor.value(k) as u64
    }

    pub fn smooth_reference_dim(&self, k: i32) -> u64 {
        smooth_milnor_algebra_dim(self.record.d, k) as u64
    }

    pub fn saturated_quotient_dim(&self, k: i32) -> u64 {
        self.sat_hf.value(k) as u64
    }

    pub fn tau_global(&self) -> u64 {
        self.table.tau
    }

    pub fn essential_relations_mindeg(&self) -> Result<i32> {
        self.table.mdr_e.ok_or(Error::EssentialRelationsZero)
    }

    pub fn ct(&self) -> Threshold {
        self.table.ct
    }

    pub fn st(&self) -> i64 {
        self.table.st
    }

    /// `tau - dim (S / I_f)_k`.
    pub fn defect(&self, k: i32) -> u64 {
        self.table.tau - self.saturated_quotient_dim(k)
    }

    pub fn indeg_saturation(&self) -> Result<u32> {
        if self.is_smooth() {
            return Err(Error::SmoothCurve);
        }
        Ok(self.table.indeg_I)
    }

    pub fn regularity(&self) -> (i32, i32, i32) {
        (self.table.reg_D0, self.table.reg_Jf, self.table.reg_Mf)
    }

    pub fn classify(&self) -> Result<CurveClass> {
        self.table.class.ok_or(Error::SmoothCurve)
    }

    /// Consistency checks that only fail on an engine bug: ct = mdr_e + d - 2, the
    /// ct + st dichotomy, reg M(f) against st, and mdr_e = mdr below d - 1.
    pub fn consistency_errors(&self) -> Vec<String> {
        let t = &self.table;
        let d = self.record.d as i64;
        let mut errs = Vec::new();
        if self.is_smooth() {
            if t.exponents != vec![d as i32 - 1; 3] {
                errs.push(format!("smooth curve with exponents {:?}", t.exponents));
            }
            return errs;
        }
        let mdr_e = t.mdr_e.unwrap_or(i32::MIN) as i64;
        let ct = t.ct.finite().unwrap_or(i64::MIN);
        if ct != mdr_e + d - 2 {
            errs.push(format!("ct = {ct} but mdr_e + d - 2 = {}", mdr_e + d - 2));
        }
        if (t.mdr as i64) < d - 1 && t.mdr as i64 != mdr_e {
            errs.push(format!("mdr = {} < d - 1 but mdr_e = {mdr_e}", t.mdr));
        }
        let free = t.class == Some(CurveClass::Free);
        let expected_reg_m = if free { t.st } else { t.st - 1 };
        if t.reg_Mf as i64 != expected_reg_m {
            errs.push(format!("reg M(f) = {} but st = {} (free: {free})", t.reg_Mf, t.st));
        }
        let sum = ct + t.st;
        let ok = match t.class {
            Some(CurveClass::Free) => sum == t.T,
            Some(CurveClass::NearlyFree) => sum == t.T + 2,
            _ => sum >= t.T + 3,
        };
        if !ok {
            errs.push(format!("ct + st = {sum} inconsistent with class {:?} (T = {})", t.class, t.T));
        }
        if t.class == Some(CurveClass::Free) && t.exponents.iter().sum::<i32>() as i64 != d - 1 {
            errs.push(format!("free curve with exponent sum != d - 1: {:?}", t.exponents));
        }
        errs
    }

    /// `Err(Inconsistent)` when any consistency check fails.
    pub fn check_consistency(&self) -> Result<()> {
        let errs = self.consistency_errors();
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Inconsistent(errs.join("; ")))
        }
    }

    /// Regularities of `J_f` and `M(f)` from their own minimal resolutions.
    pub fn direct_regularities(&self) -> Result<(i32, i32)> {
        let field = self.record.field();
        let grad: Vec<Polynomial<F>> = self.record.f.gradient().into_iter().filter(|g| !g.is_zero()).collect();
        let vecs = grad.iter().map(|g| ModVec::from_polys(field, std::slice::from_ref(g), &[0])).collect();
        let jf = GradedModulePresentation::submodule(field, vec![0], vecs)?.resolve()?.betti();
        let mf = GradedModulePresentation::ideal_quotient(field, &grad)?.resolve()?.betti();
        let reg = |b: &BettiTable| b.regularity().ok_or_else(|| Error::Inconsistent("zero module".into()));
        Ok((reg(&jf)?, reg(&mf)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_projective;

    fn analyze(s: &str) -> CurveAnalysis<crate::Rationals> {
        let a = CurveRecord::new(parse_projective(s).unwrap()).unwrap().analyze().unwrap();
        a.check_consistency().unwrap();
        a
    }

    #[test]
    fn triangle() {
        let a = analyze("x*y*z");
        let t = &a.table;
        assert_eq!(t.exponents, vec![1, 1]);
        assert_eq!(t.class, Some(CurveClass::Free));
        assert_eq!(t.tau, 3);
        assert_eq!(t.ct, Threshold::Finite(2));
        assert_eq!(t.st, 1);
        assert_eq!(t.mdr_e, Some(1));
        assert_eq!(t.reg_D0, 1);
        assert_eq!(a.milnor_dim(1), 3);
    }

    #[test]
    fn uninodal_cubic() {
        let a = analyze("y^2*z - x^3 - x^2*z");
        let t = &a.table;
        assert_eq!((t.reg_D0, t.st, t.reg_Mf, t.tau), (2, 3, 2, 1));
        assert_eq!(t.indeg_I, 1);
        assert_eq!(a.defect(0), 0);
        assert_eq!(a.defect(1), 0);
    }

    #[test]
    fn smooth_cubic() {
        let a = analyze("x^3 + y^3 + z^3");
        let t = &a.table;
        assert_eq!(t.ct, Threshold::Infinite);
        assert_eq!(t.st, 4);
        assert_eq!(t.exponents, vec![2, 2, 2]);
        assert_eq!(t.class, None);
        assert_eq!(t.reg_D0, 3);
        assert!(matches!(a.essential_relations_mindeg(), Err(Error::EssentialRelationsZero)));
    }

    #[test]
    fn rejects_bad_input() {
        let p = |s: &str| parse_projective(s).unwrap();
        assert!(matches!(CurveRecord::new(p("x^2*y")), Err(Error::NotReduced(_))));
        assert!(matches!(CurveRecord::new(p("x*y")), Err(Error::DegreeTooSmall(2))));
        assert!(matches!(CurveRecord::new(p("x^3 + y")), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn threshold_json() {
        assert_eq!(serde_json::to_string(&Threshold::Infinite).unwrap(), "\"infinity\"");
        assert_eq!(serde_json::from_str::<Threshold>("7").unwrap(), Threshold::Finite(7));
        assert_eq!(serde_json::to_string(&CurveClass::MSyzygy(4)).unwrap(), "\"MSyzygy(4)\"");
        assert_eq!("MSyzygy(4)".parse::<CurveClass>().unwrap(), CurveClass::MSyzygy(4));
    }
}
