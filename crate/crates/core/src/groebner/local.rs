//! Standard bases in the localization `k[u, v]_(u, v)` via Mora's tangent
//! cone algorithm, and dimensions of local quotients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Reduction steps allowed in a single normal form computation.
const MAX_REDUCTION_STEPS: usize = 200_000;
/// Elements allowed in a standard basis.
const MAX_BASIS: usize = 5_000;

/// `dim_k R / I` for a local ring `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocalDim {
    Finite(usize),
    Infinite,
}

impl LocalDim {
    pub fn finite(self) -> Result<usize> {
        match self {
            LocalDim::Finite(n) => Ok(n),
            LocalDim::Infinite => Err(Error::InfiniteColength),
        }
    }
}

impl fmt::Display for LocalDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalDim::Finite(n) => write!(f, "{n}"),
            LocalDim::Infinite => write!(f, "infinite"),
        }
    }
}

fn ecart<F: Field>(p: &Polynomial<F>) -> u32 {
    let lead = p.leading_monomial().map(|m| m.degree()).unwrap_or(0);
    p.degree().unwrap_or(0) - lead
}

fn to_local<F: Field>(p: &Polynomial<F>) -> Polynomial<F> {
    if p.order() == MonomialOrder::AntiGradedLocal {
        p.clone()
    } else {
        p.with_order(MonomialOrder::AntiGradedLocal)
    }
}

/// `h - (LT(h) / LT(g)) * g`, assuming `LM(g) | LM(h)`.
fn reduce_step<F: Field>(h: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let f = h.field();
    let (hm, hc) = h.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let q = gm.divide_into(hm).expect("divisible");
    let c = f.div(hc, gc).expect("nonzero lead");
    h.sub(&g.mul_term(&q, &c))
}

/// Weak normal form of `p` with respect to `basis` under the anti-graded
/// local order: the result is zero or has a leading monomial outside the
/// leading ideal of `basis`, and differs from `unit * p` by an element of
/// the ideal. Reducers are chosen by minimal écart; a reducer of larger
/// écart than the current remainder makes the remainder itself available
/// as a reducer (Mora's tangent cone trick), which guarantees termination.
pub fn mora_normal_form<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Result<Polynomial<F>> {
    normal_form_below(p, basis, None)
}

/// Terms of degree `< n`.
fn truncate<F: Field>(p: &Polynomial<F>, n: Option<u32>) -> Polynomial<F> {
    match n {
        Some(n) if p.degree().is_some_and(|d| d >= n) => Polynomial::from_terms(
            p.field(),
            p.nvars(),
            p.order(),
            p.terms().iter().filter(|(m, _)| m.degree() < n).cloned().collect(),
        ),
        _ => p.clone(),
    }
}

/// [`mora_normal_form`], computed modulo `m^n` when `n` is given.
fn normal_form_below<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>], n: Option<u32>) -> Result<Polynomial<F>> {
    let mut h = truncate(&to_local(p), n);
    let mut t: Vec<Polynomial<F>> = basis.iter().map(to_local).filter(|g| !g.is_zero()).collect();
    let mut steps = 0usize;
    while let Some(hm) = h.leading_monomial() {
        let reducer = t
            .iter()
            .enumerate()
            .filter(|(_, g)| g.leading_monomial().is_some_and(|gm| gm.divides(&hm)))
            .min_by_key(|(i, g)| (ecart(g), *i))
            .map(|(i, _)| i);
        let Some(k) = reducer else { break };
        steps += 1;
        if steps > MAX_REDUCTION_STEPS {
            return Err(Error::LimitExceeded("Mora normal form reduction steps".into()));
        }
        let g = t[k].clone();
        // Modulo m^n every reduction chain is finite; no extra reducers needed.
        if n.is_none() && ecart(&g) > ecart(&h) {
            t.push(h.clone());
        }
        h = truncate(&reduce_step(&h, &g), n);
    }
    Ok(h)
}

fn spoly<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let f = a.field();
    let (am, ac) = a.leading_term().expect("nonzero");
    let (bm, bc) = b.leading_term().expect("nonzero");
    let l = am.lcm(bm);
    let ma = am.divide_into(&l).expect("divisible");
    let mb = bm.divide_into(&l).expect("divisible");
    let ca = f.inv(ac).expect("nonzero");
    let cb = f.inv(bc).expect("nonzero");
    a.mul_term(&ma, &ca).sub(&b.mul_term(&mb, &cb))
}

/// Standard basis of the ideal generated by `gens` in the local ring at the
/// origin, under the anti-graded local order. The result is minimal: no
/// leading monomial divides another.
pub fn local_standard_basis<F: Field>(gens: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    standard_basis_below(gens, None)
}

/// Standard basis of `(gens) + m^n` when `n` is given, with every element
/// truncated below degree `n`; the monomials of degree `n` are implicit.
fn standard_basis_below<F: Field>(gens: &[Polynomial<F>], n: Option<u32>) -> Result<Vec<Polynomial<F>>> {
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |basis: &mut Vec<Polynomial<F>>, pairs: &mut Vec<(usize, usize)>, h: Polynomial<F>| -> Result<()> {
        if basis.len() >= MAX_BASIS {
            return Err(Error::LimitExceeded("local standard basis size".into()));
        }
        let n = basis.len();
        pairs.extend((0..n).map(|i| (i, n)));
        basis.push(h.monic());
        Ok(())
    };
    for g in gens {
        let h = normal_form_below(g, &basis, n)?;
        if !h.is_zero() {
            if h.leading_monomial() == Some(Monomial::ONE) {
                return Ok(vec![h.monic()]);
            }
            add(&mut basis, &mut pairs, h)?;
        }
    }
    while !pairs.is_empty() {
        // Smallest lcm degree first.
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(k, &(i, j))| {
                let l = basis[i].leading_monomial().unwrap().lcm(&basis[j].leading_monomial().unwrap());
                (l.degree(), *k)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        let (mi, mj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if mi.is_coprime(&mj) {
            continue;
        }
        let h = normal_form_below(&spoly(&basis[i], &basis[j]), &basis, n)?;
        if !h.is_zero() {
            if h.leading_monomial() == Some(Monomial::ONE) {
                return Ok(vec![h.monic()]);
            }
            add(&mut basis, &mut pairs, h)?;
        }
    }
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap()).collect();
    let keep: Vec<Polynomial<F>> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !leads
                .iter()
                .enumerate()
                .any(|(j, lj)| j != *i && lj.divides(&leads[*i]) && (*lj != leads[*i] || j < *i))
        })
        .map(|(_, g)| g.clone())
        .collect();
    Ok(keep)
}

/// Counts monomials in `u, v` outside the monomial ideal generated by
/// `leads`; infinite unless pure powers of both variables occur.
pub fn count_local_standard_monomials(leads: &[Monomial]) -> LocalDim {
    if leads.iter().any(|m| m.is_one()) {
        return LocalDim::Finite(0);
    }
    let pure = |i: usize| {
        leads
            .iter()
            .filter(|m| m.0[1 - i] == 0 && m.0[2] == 0)
            .map(|m| m.0[i])
            .min()
    };
    let (Some(a), Some(b)) = (pure(0), pure(1)) else {
        return LocalDim::Infinite;
    };
    let mut count = 0;
    for i in 0..a {
        for j in 0..b {
            let m = Monomial([i, j, 0]);
            if !leads.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        }
    }
    LocalDim::Finite(count)
}

/// `dim_k k[u, v] / ((gens) + m^n)`.
fn truncated_quotient_dim<F: Field>(gens: &[Polynomial<F>], n: u32) -> Result<usize> {
    let basis = standard_basis_below(gens, Some(n))?;
    let leads: Vec<Monomial> = basis.iter().filter_map(|g| g.leading_monomial()).collect();
    let mut count = 0;
    for i in 0..n as u16 {
        for j in 0..n as u16 - i {
            let m = Monomial([i, j, 0]);
            if !leads.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Largest truncation order tried before falling back to the plain tangent
/// cone algorithm.
const MAX_TRUNCATION: u32 = 64;

/// `dim_k k[u, v]_(u, v) / (gens)`.
///
/// With `c_n = dim k[u, v] / (I + m^n)`, Nakayama's lemma gives
/// `c_{n+1} > c_n` until `m^n ⊂ I` locally, so `c_n < n` certifies that
/// `c_n` is the colength of `I`. Otherwise `c_n >= n` and the colength is
/// at least `c_n`, so the next order tried is `c_n + 1`. The plain
/// computation is the fallback for large or infinite colength.
pub fn local_quotient_dim<F: Field>(gens: &[Polynomial<F>]) -> Result<LocalDim> {
    if let Some(g) = gens.iter().find(|g| g.nvars() != 2) {
        return Err(Error::VariableMismatch(g.nvars(), 2));
    }
    let mut n = 8;
    while n <= MAX_TRUNCATION {
        let c = truncated_quotient_dim(gens, n)?;
        if (c as u32) < n {
            return Ok(LocalDim::Finite(c));
        }
        n = c as u32 + 1;
    }
    let basis = local_standard_basis(gens)?;
    let leads: Vec<Monomial> = basis.iter().filter_map(|g| g.leading_monomial()).collect();
    Ok(count_local_standard_monomials(&leads))
}
