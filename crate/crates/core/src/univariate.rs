//! Dense univariate polynomials over `Q` and exact rational root finding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let l = l.clone();
                UPoly(self.0.iter().map(|c| c / &l).collect())
            }
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        let dd = other.degree().expect("division by zero polynomial");
        let lead = other.lead().unwrap().clone();
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, oc) in other.0.iter().enumerate() {
                rem[k + i] -= &c * oc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Square-free part (monic).
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Rescales to a primitive integer polynomial (keeps the sign of the
    /// leading coefficient positive).
    fn primitive_rational(&self) -> Self {
        UPoly(integer_primitive(&self.0).into_iter().map(BigRational::from_integer).collect())
    }

    /// Distinct rational roots in ascending order.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.is_zero() {
            return Vec::new();
        }
        let p = self.squarefree().primitive_rational();
        let mut roots = Vec::new();
        // Strip a root at zero so the remaining roots are nonzero.
        let p = if p.0[0].is_zero() {
            roots.push(BigRational::zero());
            UPoly::new(p.0[1..].to_vec())
        } else {
            p
        };
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let lead = p.lead().unwrap().abs();
        // Any rational root has denominator dividing the leading coefficient;
        // an interval narrower than 1/lead^2 contains at most one such number.
        let tol = BigRational::new(BigInt::one(), (lead.numer() * lead.numer()) * 2);
        let bound = cauchy_bound(&p);
        let sturm = sturm_sequence(&p);
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let n = sturm_count(&sturm, &a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 && &b - &a < tol {
                let c = simplest_between(&a, &b);
                if p.eval(&c).is_zero() {
                    roots.push(c);
                }
                continue;
            }
            let mid = (&a + &b) / BigRational::from_integer(2.into());
            if p.eval(&mid).is_zero() {
                roots.push(mid.clone());
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

/// Integer coefficients with gcd 1 and positive leading coefficient.
pub fn integer_primitive(coeffs: &[BigRational]) -> Vec<BigInt> {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    let sign = if ints.iter().rev().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &content * &sign).collect()
}

fn cauchy_bound(p: &UPoly) -> BigRational {
    let lead = p.lead().unwrap().abs();
    let m = p.0[..p.0.len() - 1].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(BigRational::zero);
    m + BigRational::one()
}

fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // Positive rescaling only: Sturm sequences depend on signs.
        let r = r.neg();
        let scaled = r.primitive_rational();
        seq.push(if r.lead().unwrap().is_negative() { scaled.neg() } else { scaled });
    }
    seq
}

fn sign_changes(seq: &[UPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|q| {
            let v = q.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`.
fn sturm_count(seq: &[UPoly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// The rational with the smallest denominator in `[a, b]`.
pub fn simplest_between(a: &BigRational, b: &BigRational) -> BigRational {
    debug_assert!(a <= b);
    let fl = a.floor();
    if &fl == a {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= b {
        return next;
    }
    let inner = simplest_between(&(BigRational::one() / (b - &fl)), &(BigRational::one() / (a - &fl)));
    fl + BigRational::one() / inner
}

/// Dense polynomials over `F_q`, ascending coefficients, no trailing zeros.
type ModPoly = Vec<u64>;

fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inverse_mod(a: u64, q: u64) -> u64 {
    let (mut r, mut e, mut b) = (1u64, q - 2, a % q);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

fn rem_mod(mut a: ModPoly, m: &ModPoly, q: u64) -> ModPoly {
    let inv = inverse_mod(*m.last().unwrap(), q);
    while a.len() >= m.len() {
        let c = a.last().unwrap() * inv % q;
        let shift = a.len() - m.len();
        for (i, x) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + q - c * x % q) % q;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &ModPoly, b: &ModPoly, m: &ModPoly, q: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    rem_mod(trim(out), m, q)
}

fn gcd_degree(mut a: ModPoly, mut b: ModPoly, q: u64) -> usize {
    while !b.is_empty() {
        let r = rem_mod(a, &b, q);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Whether the integer polynomial `coeffs` (ascending) stays irreducible
/// modulo the prime `q < 2^32`. False when `q` divides the leading
/// coefficient.
pub fn irreducible_mod(coeffs: &[BigInt], q: u64) -> bool {
    let big_q = BigInt::from(q);
    let m: ModPoly = coeffs
        .iter()
        .map(|c| c.mod_floor(&big_q).try_into().unwrap())
        .collect();
    if m.len() != coeffs.len() || m.last() == Some(&0) || m.len() < 2 {
        return false;
    }
    let n = m.len() - 1;
    // A reducible polynomial of degree n has a factor of degree <= n / 2,
    // which divides x^(q^i) - x for some i <= n / 2.
    let x: ModPoly = rem_mod(vec![0, 1], &m, q);
    let mut h = x.clone();
    for _ in 0..n / 2 {
        let (mut r, mut base, mut e) = (vec![1u64], h.clone(), q);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &base, &m, q);
            }
            base = mul_mod(&base, &base, &m, q);
            e >>= 1;
        }
        h = r;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + q - 1) % q;
        if gcd_degree(m.clone(), trim(diff), q) > 0 {
            return false;
        }
    }
    true
}

/// Certifies irreducibility over `Q` by finding a prime modulo which the
/// polynomial stays irreducible of the same degree. `false` means no
/// certificate was found.
pub fn certify_irreducible(coeffs: &[BigInt]) -> bool {
    const PRIMES: [u64; 24] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
    coeffs.len() == 2 || PRIMES.iter().any(|&q| irreducible_mod(coeffs, q))
}
