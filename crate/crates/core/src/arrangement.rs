//! Curve arrangements `C = C_1 ∪ ... ∪ C_s` given by their components.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curve::{derivation_module, has_finite_zero_set};
use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::groebner::IdealBasis;
use crate::linalg::rank;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Homogeneity, QPoly};
use crate::univariate::{certify_irreducible, integer_primitive};

/// One component `C_i : f_i = 0`.
#[derive(Clone, Debug)]
pub struct Component {
    pub f: QPoly,
    pub degree: u32,
    pub smooth: bool,
    /// `(d - 1)(d - 2) / 2` for smooth components.
    pub genus: Option<u32>,
}

/// Summary of a component, as written to reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSummary {
    pub polynomial: String,
    pub degree: u32,
    pub smooth: bool,
    pub genus: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct ArrangementRecord {
    components: Vec<Component>,
    f: QPoly,
    d: u32,
    delta: u32,
    warnings: Vec<String>,
}

/// Validates the components and assembles the arrangement: every
/// component homogeneous and square-free, no two proportional or sharing
/// a factor, total degree at least 3.
pub fn build_arrangement(polys: Vec<QPoly>) -> Result<ArrangementRecord> {
    if polys.is_empty() {
        return Err(Error::InvalidArrangement("no components".into()));
    }
    let mut components = Vec::with_capacity(polys.len());
    let mut warnings = Vec::new();
    for (i, f) in polys.into_iter().enumerate() {
        let degree = match f.homogeneity() {
            Homogeneity::Homogeneous(0) | Homogeneity::Zero => {
                return Err(Error::InvalidArrangement(format!("component {} is constant", i + 1)))
            }
            Homogeneity::Homogeneous(d) => d,
            Homogeneity::Inhomogeneous => return Err(Error::NotHomogeneous(f.to_string())),
        };
        let jac = IdealBasis::new(Rationals, f.gradient())?;
        if !has_finite_zero_set(&jac)? {
            return Err(Error::NotReduced(f.to_string()));
        }
        let smooth = jac.saturate()?.is_unit()?;
        if !smooth && !restriction_is_irreducible(&f) {
            warnings.push(format!(
                "component {} ({f}) is singular and its irreducibility over Q could not be certified",
                i + 1
            ));
        }
        let genus = smooth.then(|| (degree - 1) * (degree.max(2) - 2) / 2);
        components.push(Component { f, degree, smooth, genus });
    }
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            let (a, b) = (&components[i].f, &components[j].f);
            if a.monic() == b.monic() {
                return Err(Error::InvalidArrangement(format!("components {} and {} are proportional", i + 1, j + 1)));
            }
            let pair = IdealBasis::new(Rationals, vec![a.clone(), b.clone()])?;
            if !has_finite_zero_set(&pair)? {
                return Err(Error::InvalidArrangement(format!(
                    "components {} and {} share a common factor",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let f = components
        .iter()
        .skip(1)
        .fold(components[0].f.clone(), |acc, c| acc.mul(&c.f));
    let d = components.iter().map(|c| c.degree).sum();
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    let delta = components.iter().map(|c| c.degree).max().unwrap_or(0);
    Ok(ArrangementRecord { components, f, d, delta, warnings })
}

/// Searches for a rational line on which `f` restricts to a polynomial of
/// full degree that is irreducible over `Q`. Any factorization of `f`
/// would restrict to one on the line, so success certifies `f` irreducible
/// over `Q`. Smooth curves need no search: two components always meet in
/// a singular point.
fn restriction_is_irreducible(f: &QPoly) -> bool {
    const LINES: [([i64; 3], [i64; 3]); 8] = [
        ([1, 2, 3], [1, -1, 2]),
        ([2, -1, 1], [3, 1, -2]),
        ([1, 0, 2], [0, 1, 5]),
        ([3, 1, 1], [1, 4, -1]),
        ([-1, 2, 4], [2, 3, 1]),
        ([1, 1, -3], [5, -2, 1]),
        ([4, -3, 1], [1, 2, 7]),
        ([2, 5, -1], [-3, 1, 2]),
    ];
    let Some(d) = f.degree() else { return false };
    let t = QPoly::var(Rationals, 2, MonomialOrder::AntiGradedLocal, 0);
    let constant = |c: i64| QPoly::constant(Rationals, 2, MonomialOrder::AntiGradedLocal, BigRational::from_integer(c.into()));
    LINES.iter().any(|(a, b)| {
        let images: Vec<QPoly> = (0..3).map(|i| constant(a[i]).add(&t.mul(&constant(b[i])))).collect();
        let g = f.substitute(&images);
        let mut coeffs = vec![BigRational::zero(); d as usize + 1];
        for (m, c) in g.terms() {
            coeffs[m.0[0] as usize] = c.clone();
        }
        !coeffs[d as usize].is_zero() && certify_irreducible(&integer_primitive(&coeffs))
    })
}

impl ArrangementRecord {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn summaries(&self) -> Vec<ComponentSummary> {
        self.components
            .iter()
            .map(|c| ComponentSummary { polynomial: c.f.to_string(), degree: c.degree, smooth: c.smooth, genus: c.genus })
            .collect()
    }

    /// The product `f = f_1 ... f_s`.
    pub fn f(&self) -> &QPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `δ = max d_i`.
    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn all_smooth(&self) -> bool {
        self.components.iter().all(|c| c.smooth)
    }

    pub fn is_line_arrangement(&self) -> bool {
        self.components.iter().all(|c| c.degree == 1)
    }

    /// Lines through a common point.
    pub fn is_pencil(&self) -> bool {
        if !self.is_line_arrangement() {
            return false;
        }
        let rows: Vec<_> = self
            .components
            .iter()
            .map(|c| (0..3).map(|i| c.f.coefficient(&Monomial::var(i))).collect())
            .collect();
        rank(Rationals, rows, 3) < 3
    }

    /// Product of the components with the given indices.
    pub fn product_of(&self, indices: &[usize]) -> QPoly {
        indices.iter().fold(
            self.f.one_like(),
            |acc, &i| acc.mul(&self.components[i].f),
        )
    }

    /// Product of all components except `skip`.
    pub fn product_except(&self, skip: usize) -> QPoly {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| i != skip).collect();
        self.product_of(&idx)
    }
}

/// `reg D0(g)` for a homogeneous `g` of any positive degree.
pub fn derivation_regularity(g: &QPoly) -> Result<i32> {
    Ok(derivation_module(g)?.reg)
}
