//! Local invariants of plane curve germs at rational points: Milnor and
//! Tjurina numbers, intersection multiplicities, the ε-invariants, and
//! location of rational singular and intersection points.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{has_finite_zero_set, CurveAnalysis};
use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::groebner::{local_quotient_dim, normal_form, IdealBasis, LocalDim};
use crate::linalg::kernel;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, QPoly};
use crate::univariate::UPoly;

/// A point of `P^2(Q)`, normalized so that the last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [BigRational; 3],
}

impl ProjectivePoint {
    pub fn new(coords: [BigRational; 3]) -> Result<Self> {
        let Some(last) = coords.iter().rposition(|c| !c.is_zero()) else {
            return Err(Error::InvalidInput("(0:0:0) is not a projective point".into()));
        };
        let s = coords[last].clone();
        Ok(ProjectivePoint { coords: coords.map(|c| c / &s) })
    }

    pub fn from_i64(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new([x, y, z].map(|c| BigRational::from_integer(c.into())))
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.coords
    }

    /// Index of the coordinate equal to 1 after normalization.
    pub fn chart(&self) -> usize {
        self.coords.iter().rposition(|c| !c.is_zero()).expect("nonzero point")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = <[String; 3]>::deserialize(d)?;
        let mut coords = Vec::with_capacity(3);
        for s in &raw {
            coords.push(s.parse::<BigRational>().map_err(serde::de::Error::custom)?);
        }
        let coords: [BigRational; 3] = coords.try_into().expect("three coordinates");
        ProjectivePoint::new(coords).map_err(serde::de::Error::custom)
    }
}

/// A polynomial germ at the origin of `k^2` in the local variables `u, v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGerm {
    g: QPoly,
}

impl LocalGerm {
    pub fn new(g: QPoly) -> Result<Self> {
        if g.nvars() != 2 {
            return Err(Error::VariableMismatch(g.nvars(), 2));
        }
        let g = g.with_order(MonomialOrder::AntiGradedLocal);
        if !g.coefficient(&Monomial::ONE).is_zero() {
            return Err(Error::PointNotOnCurve("origin".into()));
        }
        Ok(LocalGerm { g })
    }

    pub fn poly(&self) -> &QPoly {
        &self.g
    }

    pub fn gradient(&self) -> [QPoly; 2] {
        [self.g.derivative(0), self.g.derivative(1)]
    }

    /// Smooth at the origin: some partial derivative is a unit.
    pub fn is_smooth(&self) -> bool {
        self.gradient().iter().any(|p| !p.coefficient(&Monomial::ONE).is_zero())
    }

    /// Germ of the union of two curves.
    pub fn union(&self, other: &LocalGerm) -> LocalGerm {
        LocalGerm { g: self.g.mul(&other.g) }
    }
}

/// Dehomogenizes `f` in the chart of the unit coordinate of `p` and moves
/// `p` to the origin. The two remaining coordinates, in order, become
/// `u` and `v`.
pub fn localize(f: &QPoly, p: &ProjectivePoint) -> Result<LocalGerm> {
    if f.nvars() != 3 {
        return Err(Error::VariableMismatch(f.nvars(), 3));
    }
    if !f.evaluate(p.coords()).is_zero() {
        return Err(Error::PointNotOnCurve(p.to_string()));
    }
    let c = p.chart();
    let local = |i: usize| Polynomial::var(Rationals, 2, MonomialOrder::AntiGradedLocal, i);
    let constant = |q: &BigRational| Polynomial::constant(Rationals, 2, MonomialOrder::AntiGradedLocal, q.clone());
    let mut next = 0;
    let images: Vec<QPoly> = (0..3)
        .map(|i| {
            if i == c {
                constant(&BigRational::one())
            } else {
                let img = local(next).add(&constant(&p.coords()[i]));
                next += 1;
                img
            }
        })
        .collect();
    LocalGerm::new(f.substitute(&images))
}

fn finite(d: LocalDim) -> Result<u64> {
    d.finite().map(|n| n as u64)
}

/// `μ = dim R / (g_u, g_v)`.
pub fn milnor_number(g: &LocalGerm) -> Result<LocalDim> {
    local_quotient_dim(&g.gradient())
}

/// `τ = dim R / (g, g_u, g_v)`.
pub fn tjurina_number(g: &LocalGerm) -> Result<LocalDim> {
    let [gu, gv] = g.gradient();
    local_quotient_dim(&[g.g.clone(), gu, gv])
}

/// `ε = μ - τ`; zero for smooth germs.
pub fn epsilon(g: &LocalGerm) -> Result<u64> {
    let mu = finite(milnor_number(g)?)?;
    let tau = finite(tjurina_number(g)?)?;
    Ok(mu - tau)
}

/// `(g1, g2)_0 = dim R / (g1, g2)`.
pub fn intersection_multiplicity(g1: &LocalGerm, g2: &LocalGerm) -> Result<LocalDim> {
    local_quotient_dim(&[g1.g.clone(), g2.g.clone()])
}

/// `ε(D1, D2)_0 = ε(D1 ∪ D2) - ε(D1)`.
pub fn epsilon_pair(d1: &LocalGerm, d2: &LocalGerm) -> Result<i64> {
    Ok(epsilon(&d1.union(d2))? as i64 - epsilon(d1)? as i64)
}

/// An ordinary double point: `μ = 1`.
pub fn is_node(g: &LocalGerm) -> Result<bool> {
    Ok(milnor_number(g)? == LocalDim::Finite(1))
}

/// Both sides of `μ(D1 ∪ D2) = μ(D1) + μ(D2) + 2 (D1, D2)_0 - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorUnionCheck {
    pub mu_union: u64,
    pub mu1: u64,
    pub mu2: u64,
    pub intersection: u64,
    pub holds: bool,
}

pub fn milnor_union_check(g1: &LocalGerm, g2: &LocalGerm) -> Result<MilnorUnionCheck> {
    let mu_union = finite(milnor_number(&g1.union(g2))?)?;
    let mu1 = finite(milnor_number(g1)?)?;
    let mu2 = finite(milnor_number(g2)?)?;
    let intersection = finite(intersection_multiplicity(g1, g2)?)?;
    let holds = mu_union as i64 == mu1 as i64 + mu2 as i64 + 2 * intersection as i64 - 1;
    Ok(MilnorUnionCheck { mu_union, mu1, mu2, intersection, holds })
}

/// The quantities of the local inequality for a germ `D1` and a smooth
/// germ `D2`: `(D1, D2)_0 - ε(D1, D2)_0 - 1 >= 0`, and its equivalent
/// `τ(D1 ∪ D2) >= τ(D1) + (D1, D2)_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInequality {
    pub intersection: u64,
    pub epsilon_pair: i64,
    pub tau_union: u64,
    pub tau1: u64,
    pub margin: i64,
    pub holds: bool,
    pub tau_form_holds: bool,
}

pub fn pair_inequality(d1: &LocalGerm, d2: &LocalGerm) -> Result<PairInequality> {
    if !d2.is_smooth() {
        return Err(Error::InvalidInput("the second germ must be smooth".into()));
    }
    let intersection = finite(intersection_multiplicity(d1, d2)?)?;
    let eps = epsilon_pair(d1, d2)?;
    let tau_union = finite(tjurina_number(&d1.union(d2))?)?;
    let tau1 = finite(tjurina_number(d1)?)?;
    let margin = intersection as i64 - eps - 1;
    Ok(PairInequality {
        intersection,
        epsilon_pair: eps,
        tau_union,
        tau1,
        margin,
        holds: margin >= 0,
        tau_form_holds: tau_union >= tau1 + intersection,
    })
}

/// Per-point record of local invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSingularityReport {
    pub point: ProjectivePoint,
    pub mu: u64,
    pub tau: u64,
    pub epsilon: u64,
    pub is_node: bool,
    pub quasi_homogeneous: bool,
}

pub fn local_report(f: &QPoly, p: &ProjectivePoint) -> Result<LocalSingularityReport> {
    let g = localize(f, p)?;
    let mu = finite(milnor_number(&g)?)?;
    let tau = finite(tjurina_number(&g)?)?;
    Ok(LocalSingularityReport {
        point: p.clone(),
        mu,
        tau,
        epsilon: mu - tau,
        is_node: mu == 1,
        quasi_homogeneous: mu == tau,
    })
}

/// Nonzero element of `I ∩ k[x_i, x_j]` of least degree `<= max_degree`,
/// found by linear algebra on normal forms modulo a Gröbner basis.
fn binary_eliminant(gb: &[QPoly], i: usize, j: usize, max_degree: u32) -> Option<Vec<(Monomial, BigRational)>> {
    for k in 0..=max_degree {
        let monomials: Vec<Monomial> = (0..=k)
            .map(|a| {
                let mut e = [0u16; 3];
                e[i] = a as u16;
                e[j] = (k - a) as u16;
                Monomial(e)
            })
            .collect();
        let nfs: Vec<QPoly> = monomials
            .iter()
            .map(|m| normal_form(&Polynomial::monomial(Rationals, 3, MonomialOrder::GrevlexGlobal, *m, BigRational::one()), gb))
            .collect();
        let mut support: Vec<Monomial> = nfs.iter().flat_map(|p| p.terms().iter().map(|t| t.0)).collect();
        support.sort();
        support.dedup();
        let rows: Vec<Vec<BigRational>> = support
            .iter()
            .map(|s| nfs.iter().map(|p| p.coefficient(s)).collect())
            .collect();
        if let Some(v) = kernel(Rationals, rows, monomials.len()).into_iter().next() {
            return Some(monomials.into_iter().zip(v).filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    None
}

/// Rational roots `t` of `h(t, 1)` for a binary form `h(x_i, x_j)`.
fn dehomogenized_roots(h: &[(Monomial, BigRational)], i: usize) -> Vec<BigRational> {
    let deg = h.iter().map(|(m, _)| m.0[i] as usize).max().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (m, c) in h {
        coeffs[m.0[i] as usize] += c;
    }
    UPoly::new(coeffs).rational_roots()
}

/// All `Q`-rational points of the zero set of a saturated homogeneous
/// ideal with finite zero set of degree `degree`.
pub fn rational_points(saturated: &IdealBasis<Rationals>, degree: u64) -> Result<Vec<ProjectivePoint>> {
    let gb = saturated.groebner()?;
    if gb.is_unit()? {
        return Ok(Vec::new());
    }
    if !has_finite_zero_set(&gb)? {
        return Err(Error::InvalidInput("zero set is not finite".into()));
    }
    let max = degree as u32 + 1;
    let missing = || Error::Inconsistent("no eliminant within the degree bound".into());
    let h_xz = binary_eliminant(gb.gens(), 0, 2, max).ok_or_else(missing)?;
    let h_yz = binary_eliminant(gb.gens(), 1, 2, max).ok_or_else(missing)?;
    let h_xy = binary_eliminant(gb.gens(), 0, 1, max).ok_or_else(missing)?;
    let one = BigRational::one;
    let zero = BigRational::zero;
    let mut candidates = Vec::new();
    for a in dehomogenized_roots(&h_xz, 0) {
        for b in dehomogenized_roots(&h_yz, 1) {
            candidates.push([a.clone(), b, one()]);
        }
    }
    for a in dehomogenized_roots(&h_xy, 0) {
        candidates.push([a, one(), zero()]);
    }
    candidates.push([one(), zero(), zero()]);
    let mut points = Vec::new();
    for c in candidates {
        if gb.gens().iter().all(|g| g.evaluate(&c).is_zero()) {
            points.push(ProjectivePoint::new(c)?);
        }
    }
    points.sort();
    points.dedup();
    Ok(points)
}

/// Rational common zeros of homogeneous polynomials with finitely many
/// common zeros.
pub fn common_zeros(gens: &[QPoly]) -> Result<Vec<ProjectivePoint>> {
    let ideal = IdealBasis::new(Rationals, gens.to_vec())?;
    if !has_finite_zero_set(&ideal.groebner()?)? {
        return Err(Error::InvalidInput("common zero set is not finite".into()));
    }
    let sat = ideal.saturate()?;
    let hf = crate::groebner::GradedModulePresentation::ideal_quotient(Rationals, sat.gens())?.hilbert()?;
    let mut degree = None;
    for k in 1..10_000 {
        if hf.value(k) == hf.value(k - 1) {
            degree = Some(hf.value(k) as u64);
            break;
        }
    }
    let degree = degree.ok_or_else(|| Error::LimitExceeded("Hilbert function did not stabilize".into()))?;
    rational_points(&sat, degree)
}

/// Singular points with their local reports, certified complete by the
/// census `Σ τ_local = τ(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLocus {
    pub reports: Vec<LocalSingularityReport>,
    pub tau_global: u64,
    pub tau_local_sum: u64,
}

impl SingularLocus {
    pub fn points(&self) -> Vec<ProjectivePoint> {
        self.reports.iter().map(|r| r.point.clone()).collect()
    }

    pub fn is_nodal(&self) -> bool {
        self.reports.iter().all(|r| r.is_node)
    }
}

/// Locates the singular points of an analyzed curve over `Q`. Fails with
/// `IrrationalPoint` when the located points do not account for all of
/// `τ(C)`.
pub fn singular_locus(analysis: &CurveAnalysis<Rationals>) -> Result<SingularLocus> {
    let f = analysis.record.f();
    let tau_global = analysis.tau_global();
    let points = rational_points(&analysis.saturated, tau_global)?;
    let reports = points.iter().map(|p| local_report(f, p)).collect::<Result<Vec<_>>>()?;
    let tau_local_sum = reports.iter().map(|r| r.tau).sum();
    if tau_local_sum != tau_global {
        return Err(Error::IrrationalPoint(format!(
            "located singular points account for tau {tau_local_sum} of {tau_global}"
        )));
    }
    Ok(SingularLocus { reports, tau_global, tau_local_sum })
}

/// Rational singular points of a reduced curve.
pub fn singular_points(f: &QPoly) -> Result<Vec<ProjectivePoint>> {
    let analysis = crate::curve::CurveRecord::new(f.clone())?.analyze()?;
    Ok(singular_locus(&analysis)?.points())
}

/// Rational points of `C1 ∩ C2` with their intersection multiplicities,
/// certified by Bezout when the multiplicities add up to `deg C1 · deg C2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub points: Vec<(ProjectivePoint, u64)>,
    pub bezout: u64,
    pub certified: bool,
}

pub fn intersect_curves(f1: &QPoly, f2: &QPoly) -> Result<Intersection> {
    let d1 = f1.degree().unwrap_or(0) as u64;
    let d2 = f2.degree().unwrap_or(0) as u64;
    let ideal = IdealBasis::new(Rationals, vec![f1.clone(), f2.clone()])?;
    if !has_finite_zero_set(&ideal.groebner()?)? {
        return Err(Error::InvalidArrangement("curves share a component".into()));
    }
    // Two coprime forms in three variables form a complete intersection,
    // whose ideal is saturated of degree d1 * d2.
    let found = rational_points(&ideal, d1 * d2)?;
    let mut points = Vec::new();
    for p in found {
        let m = finite(intersection_multiplicity(&localize(f1, &p)?, &localize(f2, &p)?)?)?;
        points.push((p, m));
    }
    let total: u64 = points.iter().map(|(_, m)| m).sum();
    Ok(Intersection { points, bezout: d1 * d2, certified: total == d1 * d2 })
}
