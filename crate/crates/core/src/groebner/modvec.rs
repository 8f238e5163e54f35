//! Sparse elements of graded free modules `⊕ S(-shift_i)`.
//!
//! Every term caches its weighted degree (`monomial degree + shift`), so the
//! module order is decidable from the terms alone: weighted degree, then
//! grevlex on the monomial, then the lower position wins.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Field;
use crate::monomial::{module_top, Monomial, MonomialOrder};
use crate::poly::{Polynomial, PROJECTIVE_VARS};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm<E> {
    pub pos: usize,
    pub mon: Monomial,
    pub deg: i32,
    pub coef: E,
}

impl<E> ModTerm<E> {
    fn cmp_key(&self, other: &ModTerm<E>) -> Ordering {
        module_top(self.deg, &self.mon, self.pos, other.deg, &other.mon, other.pos)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModVec<F: Field> {
    field: F,
    terms: Vec<ModTerm<F::Elem>>,
}

impl<F: Field> ModVec<F> {
    pub fn zero(field: F) -> Self {
        ModVec { field, terms: Vec::new() }
    }

    /// The basis vector `e_pos` of weighted degree `shift`.
    pub fn unit(field: F, pos: usize, shift: i32) -> Self {
        ModVec {
            field,
            terms: vec![ModTerm { pos, mon: Monomial::ONE, deg: shift, coef: field.one() }],
        }
    }

    pub fn from_terms(field: F, mut terms: Vec<ModTerm<F::Elem>>) -> Self {
        terms.sort_by(|a, b| b.cmp_key(a));
        let mut out: Vec<ModTerm<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mon == t.mon => {
                    last.coef = field.add(&last.coef, &t.coef);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !field.is_zero(&t.coef));
        ModVec { field, terms: out }
    }

    /// Packs coordinate polynomials into a vector of `⊕ S(-shifts[i])`.
    pub fn from_polys(field: F, coords: &[Polynomial<F>], shifts: &[i32]) -> Self {
        assert_eq!(coords.len(), shifts.len());
        let mut terms = Vec::new();
        for (pos, p) in coords.iter().enumerate() {
            assert!(p.order().is_global(), "module vectors use the global order");
            for (m, c) in p.terms() {
                terms.push(ModTerm { pos, mon: *m, deg: m.degree() as i32 + shifts[pos], coef: c.clone() });
            }
        }
        Self::from_terms(field, terms)
    }

    /// Unpacks into `rank` coordinate polynomials in `x, y, z`.
    pub fn to_polys(&self, rank: usize) -> Vec<Polynomial<F>> {
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos].push((t.mon, t.coef.clone()));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(self.field, 3, MonomialOrder::GrevlexGlobal, b))
            .collect()
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn terms(&self) -> &[ModTerm<F::Elem>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&ModTerm<F::Elem>> {
        self.terms.first()
    }

    /// Weighted degree of the leading term; all terms share it when the
    /// vector is homogeneous.
    pub fn degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.deg == t.deg),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        if f.is_zero(c) {
            return Self::zero(f);
        }
        ModVec {
            field: f,
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm { pos: t.pos, mon: t.mon, deg: t.deg, coef: f.mul(&t.coef, c) })
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.field;
        if f.is_zero(c) {
            return Self::zero(f);
        }
        let dm = m.degree() as i32;
        ModVec {
            field: f,
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm { pos: t.pos, mon: t.mon.mul(m), deg: t.deg + dm, coef: f.mul(&t.coef, c) })
                .collect(),
        }
    }

    /// Multiplies every coordinate by a polynomial.
    pub fn mul_poly(&self, p: &Polynomial<F>) -> Self {
        let mut acc = Self::zero(self.field);
        for (m, c) in p.terms() {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, None)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let minus_one = self.field.neg(&self.field.one());
        self.combine(other, Some((&Monomial::ONE, &minus_one)))
    }

    /// `self - c * m * other`.
    pub fn sub_multiple(&self, m: &Monomial, c: &F::Elem, other: &Self) -> Self {
        let neg = self.field.neg(c);
        self.combine(other, Some((m, &neg)))
    }

    /// `self + c * m * other` (plain sum when `scaled` is `None`).
    fn combine(&self, other: &Self, scaled: Option<(&Monomial, &F::Elem)>) -> Self {
        let f = self.field;
        let dm = scaled.map(|(m, _)| m.degree() as i32).unwrap_or(0);
        let map = |t: &ModTerm<F::Elem>| match scaled {
            None => t.clone(),
            Some((m, c)) => ModTerm { pos: t.pos, mon: t.mon.mul(m), deg: t.deg + dm, coef: f.mul(&t.coef, c) },
        };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = map(&other.terms[j]);
            match a.cmp_key(&b) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&a.coef, &b.coef);
                    if !f.is_zero(&c) {
                        out.push(ModTerm { coef: c, ..b });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(map));
        ModVec { field: f, terms: out }
    }

    /// Drops the leading term.
    pub fn without_lead(&self) -> Self {
        ModVec { field: self.field, terms: self.terms.get(1..).unwrap_or(&[]).to_vec() }
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(&self.field.inv(&t.coef).expect("nonzero lead")),
        }
    }

    /// Applies a module map given by the images of the basis vectors:
    /// `sum_i coord_i * images[i]`.
    pub fn apply(&self, images: &[ModVec<F>]) -> ModVec<F> {
        let mut acc = Self::zero(self.field);
        for t in &self.terms {
            acc = acc.add(&images[t.pos].mul_term(&t.mon, &t.coef));
        }
        acc
    }
}

impl<F: Field> fmt::Debug for ModVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                format!(
                    "{}*{}*e{}",
                    self.field.format(&t.coef),
                    t.mon.format(&PROJECTIVE_VARS),
                    t.pos
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
