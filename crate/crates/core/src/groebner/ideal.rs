//! Homogeneous ideals of `k[x, y, z]`: Gröbner bases, normal forms, colon
//! ideals, intersections and saturation with respect to `(x, y, z)`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::engine::Buchberger;
use crate::groebner::hilbert::count_standard_monomials;
use crate::groebner::modvec::ModVec;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Generators of a homogeneous ideal, optionally known to be a reduced
/// Gröbner basis under grevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis<F: Field> {
    field: F,
    gens: Vec<Polynomial<F>>,
    is_groebner: bool,
}

fn to_vec<F: Field>(p: &Polynomial<F>) -> ModVec<F> {
    ModVec::from_polys(p.field(), std::slice::from_ref(p), &[0])
}

fn from_vec<F: Field>(v: &ModVec<F>) -> Polynomial<F> {
    v.to_polys(1).pop().expect("rank one")
}

fn poly_degree<F: Field>(p: &Polynomial<F>) -> i32 {
    p.degree().map(|d| d as i32).unwrap_or(0)
}

/// Reduced Gröbner basis of the ideal generated by `gens` (grevlex).
pub fn buchberger<F: Field>(field: F, gens: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    Ok(IdealBasis::new(field, gens.to_vec())?.groebner()?.gens)
}

/// Remainder of `p` modulo a Gröbner basis: no term is divisible by a
/// leading monomial of the basis.
pub fn normal_form<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let f = p.field();
    let mut rest = p.clone();
    let mut done = Vec::new();
    while let Some((m, c)) = rest.leading_term().cloned() {
        let reducer = basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match reducer {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero");
                let q = lm.divide_into(&m).expect("divisible");
                let coef = f.div(&c, lc).expect("nonzero lead");
                rest = rest.sub(&g.mul_term(&q, &coef));
            }
            None => {
                done.push((m, c.clone()));
                rest = rest.sub(&Polynomial::monomial(f, rest.nvars(), rest.order(), m, c));
            }
        }
    }
    Polynomial::from_terms(f, p.nvars(), p.order(), done)
}

impl<F: Field> IdealBasis<F> {
    /// Wraps homogeneous generators in `x, y, z`. Zero generators are dropped.
    pub fn new(field: F, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != 3 || g.order() != MonomialOrder::GrevlexGlobal {
                return Err(Error::InvalidInput("ideal generators must be projective polynomials".into()));
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealBasis { field, gens, is_groebner: false })
    }

    pub fn unit(field: F) -> Self {
        IdealBasis {
            field,
            gens: vec![Polynomial::constant(field, 3, MonomialOrder::GrevlexGlobal, field.one())],
            is_groebner: true,
        }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_groebner(&self) -> bool {
        self.is_groebner
    }

    fn engine(&self, track: bool) -> Result<Buchberger<F>> {
        let vecs: Vec<ModVec<F>> = self.gens.iter().map(to_vec).collect();
        let degs: Vec<i32> = self.gens.iter().map(poly_degree).collect();
        Ok(Buchberger::new(self.field, vecs, &degs, track)?.ideal_mode())
    }

    /// The reduced Gröbner basis, sorted ascending.
    pub fn groebner(&self) -> Result<IdealBasis<F>> {
        if self.is_groebner {
            return Ok(self.clone());
        }
        let mut gb = self.engine(false)?;
        gb.run(None)?;
        let gens = gb.reduced_basis().iter().map(from_vec).collect();
        Ok(IdealBasis { field: self.field, gens, is_groebner: true })
    }

    fn require_gb(&self) -> Result<IdealBasis<F>> {
        self.groebner()
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        let gb = self.require_gb()?;
        Ok(normal_form(p, &gb.gens))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.require_gb()?;
        Ok(gb.gens.iter().any(|g| g.degree() == Some(0)))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Leading monomials of the reduced Gröbner basis.
    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        let gb = self.require_gb()?;
        Ok(gb.gens.iter().filter_map(|g| g.leading_monomial()).collect())
    }

    /// `dim (S/I)_k`, read off the initial ideal.
    pub fn quotient_hilbert_function(&self, k: i32) -> Result<usize> {
        let leads: Vec<(usize, Monomial)> = self.leading_monomials()?.into_iter().map(|m| (0, m)).collect();
        Ok(count_standard_monomials(&leads, &[0], k))
    }

    /// Least degree of a nonzero element; `None` for the zero ideal.
    pub fn initial_degree(&self) -> Result<Option<u32>> {
        let gb = self.require_gb()?;
        Ok(gb.gens.iter().filter_map(|g| g.degree()).min())
    }

    /// Same ideal, compared through reduced Gröbner bases.
    pub fn same_ideal(&self, other: &IdealBasis<F>) -> Result<bool> {
        Ok(self.require_gb()?.gens == other.require_gb()?.gens)
    }

    /// `(I : g) = { h : h g ∈ I }`, read off the last coordinate of the
    /// syzygies of `(gens, g)`.
    pub fn colon(&self, g: &Polynomial<F>) -> Result<IdealBasis<F>> {
        if g.is_zero() {
            return Ok(IdealBasis::unit(self.field));
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        let mut inputs: Vec<Polynomial<F>> = self.require_gb()?.gens;
        let n = inputs.len();
        inputs.push(g.clone());
        let vecs: Vec<ModVec<F>> = inputs.iter().map(to_vec).collect();
        let degs: Vec<i32> = inputs.iter().map(poly_degree).collect();
        let mut run = Buchberger::new(self.field, vecs, &degs, true)?;
        run.run(None)?;
        let gens: Vec<Polynomial<F>> = run
            .syzygies()
            .iter()
            .map(|s| s.to_polys(n + 1).pop().expect("last coordinate"))
            .collect();
        IdealBasis::new(self.field, gens)?.groebner()
    }

    /// `I ∩ J` from the syzygies of the concatenated generator lists.
    pub fn intersect(&self, other: &IdealBasis<F>) -> Result<IdealBasis<F>> {
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return IdealBasis::new(self.field, Vec::new());
        }
        let a = self.require_gb()?.gens;
        let b = other.require_gb()?.gens;
        let inputs: Vec<Polynomial<F>> = a.iter().chain(b.iter()).cloned().collect();
        let vecs: Vec<ModVec<F>> = inputs.iter().map(to_vec).collect();
        let degs: Vec<i32> = inputs.iter().map(poly_degree).collect();
        let mut run = Buchberger::new(self.field, vecs, &degs, true)?;
        run.run(None)?;
        let images: Vec<ModVec<F>> = a
            .iter()
            .map(to_vec)
            .chain(b.iter().map(|_| ModVec::zero(self.field)))
            .collect();
        let gens: Vec<Polynomial<F>> = run.syzygies().iter().map(|s| from_vec(&s.apply(&images))).collect();
        IdealBasis::new(self.field, gens)?.groebner()
    }

    /// `I : g^∞` by iterating the colon until it stabilizes.
    pub fn colon_infinity(&self, g: &Polynomial<F>) -> Result<IdealBasis<F>> {
        let mut current = self.require_gb()?;
        for _ in 0..256 {
            let next = current.colon(g)?;
            if next.same_ideal(&current)? {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::LimitExceeded("colon ideal did not stabilize".into()))
    }

    /// `(I : (x, y, z)) = ∩_i (I : x_i)`.
    pub fn colon_maximal(&self) -> Result<IdealBasis<F>> {
        let vars = projective_vars(self.field);
        let mut acc = self.colon(&vars[0])?;
        for v in &vars[1..] {
            acc = acc.intersect(&self.colon(v)?)?;
        }
        Ok(acc)
    }

    /// Saturation with respect to the irrelevant ideal: `∩_i (I : x_i^∞)`,
    /// confirmed stable under one further colon by `(x, y, z)`.
    pub fn saturate(&self) -> Result<IdealBasis<F>> {
        let vars = projective_vars(self.field);
        let mut acc = self.colon_infinity(&vars[0])?;
        for v in &vars[1..] {
            acc = acc.intersect(&self.colon_infinity(v)?)?;
        }
        let check = acc.colon_maximal()?;
        if !check.same_ideal(&acc)? {
            return Err(Error::Inconsistent("saturation is not stable under (I : m)".into()));
        }
        Ok(acc)
    }
}

pub fn projective_vars<F: Field>(field: F) -> Vec<Polynomial<F>> {
    (0..3)
        .map(|i| Polynomial::var(field, 3, MonomialOrder::GrevlexGlobal, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::parse::parse_projective;
    use crate::poly::QPoly;

    fn p(s: &str) -> QPoly {
        parse_projective(s).unwrap()
    }

    fn ideal(gens: &[&str]) -> IdealBasis<Rationals> {
        IdealBasis::new(Rationals, gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn buchberger_examples() {
        assert_eq!(buchberger(Rationals, &[p("x"), p("y")]).unwrap(), vec![p("y"), p("x")]);
        let gb = buchberger(Rationals, &[p("x^2"), p("x*y")]).unwrap();
        assert_eq!(gb, vec![p("x*y"), p("x^2")]);
        let twisted = buchberger(Rationals, &[p("x*y - z^2"), p("x^2 - y*z")]).unwrap();
        // The twisted-cubic-like ideal gains one cubic generator.
        assert_eq!(twisted.len(), 3);
        for g in &twisted {
            assert!(ideal(&["x*y - z^2", "x^2 - y*z"]).contains(g).unwrap());
        }
    }

    #[test]
    fn buchberger_rejects_inhomogeneous() {
        assert!(IdealBasis::new(Rationals, vec![p("x^2 + y")]).is_err());
    }

    #[test]
    fn normal_form_examples() {
        assert!(normal_form(&p("x^2"), &[p("x")]).is_zero());
        assert_eq!(normal_form(&p("y^2"), &[p("x")]), p("y^2"));
        let basis = buchberger(Rationals, &[p("x*y - z^2")]).unwrap();
        assert_eq!(normal_form(&p("x^2*y + z^3"), &basis), p("x*z^2 + z^3"));
    }

    #[test]
    fn colon_examples() {
        assert!(ideal(&["x^2"]).colon(&p("x")).unwrap().same_ideal(&ideal(&["x"])).unwrap());
        assert!(ideal(&["x*y"]).colon(&p("z")).unwrap().same_ideal(&ideal(&["x*y"])).unwrap());
        let c = ideal(&["x^2", "x*y", "x*z"]).colon(&p("x")).unwrap();
        assert!(c.same_ideal(&ideal(&["x", "y", "z"])).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let i = ideal(&["x"]).intersect(&ideal(&["y"])).unwrap();
        assert!(i.same_ideal(&ideal(&["x*y"])).unwrap());
    }

    #[test]
    fn saturation_examples() {
        let s = ideal(&["x^2", "x*y", "x*z"]).saturate().unwrap();
        assert!(s.same_ideal(&ideal(&["x"])).unwrap());
        let s = ideal(&["x", "y"]).saturate().unwrap();
        assert!(s.same_ideal(&ideal(&["x", "y"])).unwrap());
        let f = p("y*(x^2+y^2-z^2)");
        let j = IdealBasis::new(Rationals, f.gradient()).unwrap();
        let sat = j.saturate().unwrap();
        assert_eq!(sat.quotient_hilbert_function(1).unwrap(), 2);
        assert!(sat.contains(&p("y")).unwrap());
        assert_eq!(sat.initial_degree().unwrap(), Some(1));
        // Saturation is idempotent.
        assert!(sat.saturate().unwrap().same_ideal(&sat).unwrap());
    }

    #[test]
    fn hilbert_function_of_polynomial_ring() {
        let zero = IdealBasis::new(Rationals, vec![]).unwrap();
        assert_eq!(zero.quotient_hilbert_function(2).unwrap(), 6);
        assert_eq!(zero.quotient_hilbert_function(-1).unwrap(), 0);
    }
}
