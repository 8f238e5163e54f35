//! Monomials in at most three variables and the monomial orders used by the
//! global (projective) and local (affine chart) computations.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Maximum number of variables. Projective work uses `x, y, z`; local charts
/// use `u, v` with the third exponent fixed at zero.
pub const MAX_VARS: usize = 3;

/// Exponent vector. Unused trailing variables carry exponent zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn new(exps: [u16; MAX_VARS]) -> Self {
        Monomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; MAX_VARS]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Some(Monomial(e))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials of total degree `deg` in `nvars` variables, in
    /// descending grevlex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        match nvars {
            0 => {
                if deg == 0 {
                    out.push(Monomial::ONE);
                }
            }
            1 => out.push(Monomial([deg as u16, 0, 0])),
            2 => {
                for b in 0..=deg {
                    out.push(Monomial([(deg - b) as u16, b as u16, 0]));
                }
            }
            _ => {
                for c in 0..=deg {
                    for b in 0..=(deg - c) {
                        out.push(Monomial([(deg - b - c) as u16, b as u16, c as u16]));
                    }
                }
            }
        }
        out.sort_by(|a, b| grevlex(b, a));
        out
    }

    pub fn format(&self, names: &[&str]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].to_string()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(&["x", "y", "z"]))
    }
}

/// Monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic: degree first, then the smaller exponent
    /// in the last variable wins. `1` is the smallest monomial.
    GrevlexGlobal,
    /// Negative degree reverse lexicographic: lower degree is larger, ties as
    /// in grevlex. `1` is the largest monomial. Used for Mora normal forms.
    AntiGradedLocal,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevlexGlobal => grevlex(a, b),
            MonomialOrder::AntiGradedLocal => match b.degree().cmp(&a.degree()) {
                Ordering::Equal => revlex_tie(a, b),
                o => o,
            },
        }
    }

    pub fn is_global(&self) -> bool {
        matches!(self, MonomialOrder::GrevlexGlobal)
    }
}

pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => revlex_tie(a, b),
        o => o,
    }
}

fn revlex_tie(a: &Monomial, b: &Monomial) -> Ordering {
    for i in (0..MAX_VARS).rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Position tie-break for module terms of equal weighted degree and equal
/// monomial: the lower position index is larger.
pub fn module_top(
    deg_a: i32,
    mon_a: &Monomial,
    pos_a: usize,
    deg_b: i32,
    mon_b: &Monomial,
    pos_b: usize,
) -> Ordering {
    deg_a
        .cmp(&deg_b)
        .then_with(|| grevlex(mon_a, mon_b))
        .then_with(|| pos_b.cmp(&pos_a))
}

/// Checked comparison for monomials declared over `nvars_a` / `nvars_b`
/// variables.
pub fn compare_monomials(
    a: &Monomial,
    nvars_a: usize,
    b: &Monomial,
    nvars_b: usize,
    order: MonomialOrder,
) -> crate::Result<Ordering> {
    if nvars_a != nvars_b {
        return Err(crate::Error::VariableMismatch(nvars_a, nvars_b));
    }
    Ok(order.compare(a, b))
}
