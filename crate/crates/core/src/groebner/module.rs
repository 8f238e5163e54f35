//! Graded modules given by generators in a free module, their syzygies,
//! minimal generating sets and minimal free resolutions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::engine::Buchberger;
use crate::groebner::hilbert::count_standard_monomials;
use crate::groebner::modvec::ModVec;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// The submodule generated by `gens`.
    Submodule,
    /// The cokernel `F / <gens>`.
    Quotient,
}

/// A finitely generated graded module, presented inside (or as a quotient
/// of) the free module `⊕ S(-ambient[i])`.
#[derive(Clone, Debug)]
pub struct GradedModulePresentation<F: Field> {
    field: F,
    ambient: Vec<i32>,
    gens: Vec<ModVec<F>>,
    degrees: Vec<i32>,
    kind: ModuleKind,
}

/// Minimal generators together with a Gröbner basis of the module they
/// generate.
#[derive(Clone, Debug)]
pub struct MinimalGenerators<F: Field> {
    pub gens: Vec<ModVec<F>>,
    pub degrees: Vec<i32>,
    leads: Vec<(usize, Monomial)>,
}

impl<F: Field> MinimalGenerators<F> {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leads(&self) -> &[(usize, Monomial)] {
        &self.leads
    }
}

/// Picks a minimal generating set among homogeneous `gens`: an element is
/// kept iff it is nonzero modulo everything of lower degree and the
/// elements kept before it in its own degree.
pub fn minimize<F: Field>(field: F, gens: &[ModVec<F>], degrees: &[i32]) -> Result<MinimalGenerators<F>> {
    let mut run = Buchberger::new(field, gens.to_vec(), degrees, false)?.module_mode();
    run.run(None)?;
    let mut idx: Vec<usize> = run.minimal_inputs().to_vec();
    idx.sort_by_key(|&i| (degrees[i], i));
    Ok(MinimalGenerators {
        gens: idx.iter().map(|&i| gens[i].clone()).collect(),
        degrees: idx.iter().map(|&i| degrees[i]).collect(),
        leads: run.leads(),
    })
}

/// A generating set of the syzygies of `gens` (with declared degrees),
/// living in `⊕ S(-degrees[i])`. Not necessarily minimal.
pub fn syzygies<F: Field>(field: F, gens: &[ModVec<F>], degrees: &[i32]) -> Result<Vec<ModVec<F>>> {
    let mut run = Buchberger::new(field, gens.to_vec(), degrees, true)?.module_mode();
    run.run(None)?;
    Ok(run.syzygies().to_vec())
}

/// The module of syzygies `{ (a_i) : Σ a_i g_i = 0 }` of homogeneous
/// polynomials `gens` with declared degrees, presented by a minimal
/// generating set sorted by ascending degree.
pub fn syzygy_module<F: Field>(
    field: F,
    gens: &[Polynomial<F>],
    degrees: &[i32],
) -> Result<GradedModulePresentation<F>> {
    let vecs: Vec<ModVec<F>> = gens
        .iter()
        .map(|g| ModVec::from_polys(field, std::slice::from_ref(g), &[0]))
        .collect();
    let syz = syzygies(field, &vecs, degrees)?;
    let syz_degrees: Vec<i32> = syz.iter().map(|s| s.degree().expect("nonzero syzygy")).collect();
    let min = minimize(field, &syz, &syz_degrees)?;
    Ok(GradedModulePresentation {
        field,
        ambient: degrees.to_vec(),
        gens: min.gens,
        degrees: min.degrees,
        kind: ModuleKind::Submodule,
    })
}

impl<F: Field> GradedModulePresentation<F> {
    pub fn submodule(field: F, ambient: Vec<i32>, gens: Vec<ModVec<F>>) -> Result<Self> {
        let degrees = Self::degrees_of(&gens)?;
        Ok(GradedModulePresentation { field, ambient, gens, degrees, kind: ModuleKind::Submodule })
    }

    pub fn quotient(field: F, ambient: Vec<i32>, relations: Vec<ModVec<F>>) -> Result<Self> {
        let degrees = Self::degrees_of(&relations)?;
        Ok(GradedModulePresentation { field, ambient, gens: relations, degrees, kind: ModuleKind::Quotient })
    }

    /// `S / I` for an ideal given by homogeneous generators.
    pub fn ideal_quotient(field: F, gens: &[Polynomial<F>]) -> Result<Self> {
        let vecs = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| ModVec::from_polys(field, std::slice::from_ref(g), &[0]))
            .collect();
        Self::quotient(field, vec![0], vecs)
    }

    fn degrees_of(gens: &[ModVec<F>]) -> Result<Vec<i32>> {
        gens.iter()
            .map(|g| {
                if !g.is_homogeneous() {
                    return Err(Error::NotHomogeneous(format!("{g:?}")));
                }
                g.degree().ok_or_else(|| Error::InvalidInput("zero generator needs an explicit degree".into()))
            })
            .collect()
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn ambient(&self) -> &[i32] {
        &self.ambient
    }

    pub fn gens(&self) -> &[ModVec<F>] {
        &self.gens
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn minimal_generators(&self) -> Result<MinimalGenerators<F>> {
        minimize(self.field, &self.gens, &self.degrees)
    }

    /// Hilbert function evaluator built on one Gröbner basis computation.
    pub fn hilbert(&self) -> Result<HilbertFunction> {
        let min = self.minimal_generators()?;
        Ok(HilbertFunction { ambient: self.ambient.clone(), leads: min.leads, kind: self.kind })
    }

    pub fn hilbert_function(&self, k: i32) -> Result<usize> {
        Ok(self.hilbert()?.value(k))
    }

    /// Minimal graded free resolution.
    pub fn resolve(&self) -> Result<Resolution<F>> {
        let field = self.field;
        let mut levels = Vec::new();
        let first = self.minimal_generators()?;
        let mut current = match self.kind {
            ModuleKind::Submodule => first,
            ModuleKind::Quotient => {
                levels.push(ResolutionLevel {
                    degrees: self.ambient.clone(),
                    differential: Vec::new(),
                });
                first
            }
        };
        while !current.is_empty() {
            if levels.len() > 4 {
                return Err(Error::Inconsistent("resolution longer than the number of variables".into()));
            }
            let syz = syzygies(field, &current.gens, &current.degrees)?;
            let syz_degrees: Vec<i32> = syz.iter().map(|s| s.degree().expect("nonzero")).collect();
            let next = minimize(field, &syz, &syz_degrees)?;
            levels.push(ResolutionLevel { degrees: current.degrees.clone(), differential: current.gens.clone() });
            current = next;
        }
        Ok(Resolution { field, ambient: self.ambient.clone(), kind: self.kind, levels })
    }
}

/// `dim M_k` for every `k`, from the leading terms of a Gröbner basis.
#[derive(Clone, Debug)]
pub struct HilbertFunction {
    ambient: Vec<i32>,
    leads: Vec<(usize, Monomial)>,
    kind: ModuleKind,
}

impl HilbertFunction {
    pub fn value(&self, k: i32) -> usize {
        let quotient = count_standard_monomials(&self.leads, &self.ambient, k);
        match self.kind {
            ModuleKind::Quotient => quotient,
            ModuleKind::Submodule => count_standard_monomials(&[], &self.ambient, k) - quotient,
        }
    }
}

/// One free module `F_i = ⊕ S(-degrees[j])` of a resolution and the images
/// of its basis vectors in `F_{i-1}` (or in the ambient module for the
/// first level of a submodule).
#[derive(Clone, Debug)]
pub struct ResolutionLevel<F: Field> {
    pub degrees: Vec<i32>,
    pub differential: Vec<ModVec<F>>,
}

#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    field: F,
    ambient: Vec<i32>,
    kind: ModuleKind,
    pub levels: Vec<ResolutionLevel<F>>,
}

impl<F: Field> Resolution<F> {
    pub fn betti(&self) -> BettiTable {
        let mut table = BTreeMap::new();
        for (i, level) in self.levels.iter().enumerate() {
            for &j in &level.degrees {
                *table.entry((i, j)).or_insert(0) += 1;
            }
        }
        BettiTable(table)
    }

    pub fn length(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// Checks `d_i ∘ d_{i+1} = 0` for every pair of consecutive maps.
    pub fn composition_vanishes(&self) -> bool {
        let start = match self.kind {
            ModuleKind::Quotient => 1,
            ModuleKind::Submodule => 0,
        };
        self.levels.windows(2).skip(start).all(|w| {
            w[1].differential.iter().all(|v| v.apply(&w[0].differential).is_zero())
        })
    }

    /// No differential entry is a nonzero constant (graded minimality).
    pub fn is_minimal(&self) -> bool {
        self.levels.iter().skip(1).all(|level| {
            level
                .differential
                .iter()
                .all(|v| v.terms().iter().all(|t| !t.mon.is_one()))
        })
    }

    pub fn ambient(&self) -> &[i32] {
        &self.ambient
    }

    pub fn field(&self) -> F {
        self.field
    }
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable(pub BTreeMap<(usize, i32), usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i32,
    pub beta: usize,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i32) -> usize {
        self.0.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total rank of `F_i`.
    pub fn rank(&self, i: usize) -> usize {
        self.0.iter().filter(|((h, _), _)| *h == i).map(|(_, b)| *b).sum()
    }

    /// Castelnuovo–Mumford regularity `max (j - i)`; `None` for the zero
    /// module.
    pub fn regularity(&self) -> Option<i32> {
        self.0.keys().map(|(i, j)| j - *i as i32).max()
    }

    /// Degrees of `F_i` with multiplicity, ascending.
    pub fn degrees(&self, i: usize) -> Vec<i32> {
        let mut out = Vec::new();
        for ((h, j), b) in &self.0 {
            if *h == i {
                out.extend(std::iter::repeat_n(*j, *b));
            }
        }
        out
    }

    pub fn entries(&self) -> Vec<BettiEntry> {
        self.0.iter().map(|(&(i, j), &beta)| BettiEntry { i, j, beta }).collect()
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} dim S_{k-j}`: the Hilbert function predicted by
    /// the resolution.
    pub fn hilbert_from_betti(&self, k: i32) -> i64 {
        self.0
            .iter()
            .map(|(&(i, j), &b)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * b as i64 * crate::groebner::hilbert::polynomial_ring_dim(k - j) as i64
            })
            .sum()
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<BettiEntry>::deserialize(d)?;
        Ok(BettiTable(entries.into_iter().map(|e| ((e.i, e.j), e.beta)).collect()))
    }
}
