//! Sparse polynomials in up to three variables over a [`Field`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

pub const PROJECTIVE_VARS: [&str; 3] = ["x", "y", "z"];
pub const LOCAL_VARS: [&str; 2] = ["u", "v"];

/// A polynomial: terms sorted strictly descending under `order`, no zero
/// coefficients. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, F::Elem)>,
}

/// Result of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(u32),
    /// The zero polynomial is homogeneous of every degree; its degree is
    /// reported as undefined.
    Zero,
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            Homogeneity::Homogeneous(d) => Some(*d),
            _ => None,
        }
    }
}

pub type QPoly = Polynomial<Rationals>;

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, nvars: usize, order: MonomialOrder) -> Self {
        assert!(nvars <= MAX_VARS);
        Polynomial { field, nvars, order, terms: Vec::new() }
    }

    /// Zero polynomial in `x, y, z` under grevlex.
    pub fn zero_projective(field: F) -> Self {
        Self::zero(field, 3, MonomialOrder::GrevlexGlobal)
    }

    /// Zero polynomial in `u, v` under the local order.
    pub fn zero_local(field: F) -> Self {
        Self::zero(field, 2, MonomialOrder::AntiGradedLocal)
    }

    pub fn constant(field: F, nvars: usize, order: MonomialOrder, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, order, vec![(Monomial::ONE, c)])
    }

    pub fn one_like(&self) -> Self {
        Self::constant(self.field, self.nvars, self.order, self.field.one())
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.field, self.nvars, self.order)
    }

    pub fn var(field: F, nvars: usize, order: MonomialOrder, i: usize) -> Self {
        assert!(i < nvars);
        Self::from_terms(field, nvars, order, vec![(Monomial::var(i), field.one())])
    }

    pub fn monomial(field: F, nvars: usize, order: MonomialOrder, m: Monomial, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, order, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops
    /// zeros and sorts.
    pub fn from_terms(
        field: F,
        nvars: usize,
        order: MonomialOrder,
        terms: Vec<(Monomial, F::Elem)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { field, nvars, order, terms }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
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

    /// Leading term under the polynomial's order.
    pub fn leading_term(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    /// Maximum total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Minimum total degree of a term (the order of a germ at the origin).
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if it.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity().is_homogeneous()
    }

    /// Coefficient of a monomial.
    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
        assert_eq!(self.order, other.order, "polynomials under different orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.order.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, if negate { f.neg(cb) } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (*m, if negate { f.neg(c) } else { c.clone() })),
        );
        Polynomial { field: f, nvars: self.nvars, order: self.order, terms: out }
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Polynomial {
            field: f,
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        if f.is_zero(c) {
            return self.zero_like();
        }
        Polynomial {
            field: f,
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect(),
        }
    }

    /// Multiplication by a single term; order is preserved because every
    /// supported order is multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.field;
        if f.is_zero(c) {
            return self.zero_like();
        }
        Polynomial {
            field: f,
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let f = self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let p = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        Polynomial { field: f, nvars: self.nvars, order: self.order, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by a single term.
    pub fn div_term(&self, m: &Monomial, c: &F::Elem) -> Result<Self> {
        let f = self.field;
        let ci = f.inv(c).ok_or(Error::InexactDivision)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, a) in &self.terms {
            let q = m.divide_into(t).ok_or(Error::InexactDivision)?;
            terms.push((q, f.mul(a, &ci)));
        }
        Ok(Polynomial { field: f, nvars: self.nvars, order: self.order, terms })
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let f = self.field;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.0;
                let k = e[var];
                e[var] -= 1;
                (Monomial(e), f.mul(c, &f.from_i64(k as i64)))
            })
            .collect();
        Self::from_terms(f, self.nvars, self.order, terms)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars);
        let f = self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.0[i] {
                    t = f.mul(&t, x);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes variable `i` by `images[i]`; all images must live in one
    /// common ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.nvars);
        let target = &images[0];
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![p.one_like_of(target)]).collect();
        let mut acc = target.zero_like();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target.field, target.nvars, target.order, c.clone());
            for i in 0..self.nvars {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    fn one_like_of(&self, target: &Polynomial<F>) -> Polynomial<F> {
        target.one_like()
    }

    /// Re-sorts the terms under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::from_terms(self.field, self.nvars, order, self.terms.clone())
    }

    /// Maps coefficients into another field.
    pub fn map_field<G: Field>(&self, target: G, map: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Polynomial<G>> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| map(c).map(|d| (*m, d)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(target, self.nvars, self.order, terms))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn format_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = self.field;
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.format(names);
            if m.is_one() {
                s.push_str(&f.format(&abs));
            } else if f.is_one(&abs) {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", f.format(&abs), mono));
            }
        }
        s
    }

    pub fn var_names(&self) -> &'static [&'static str] {
        if self.nvars == 2 {
            &LOCAL_VARS
        } else {
            &PROJECTIVE_VARS
        }
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(self.var_names()))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
