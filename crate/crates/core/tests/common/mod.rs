//! Reference computations by plain linear algebra, independent of the
//! Gröbner machinery, and a generator of random arrangements.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use curvereg::parse::{parse_local, parse_projective};
use curvereg::QPoly;

pub fn p(s: &str) -> QPoly {
    parse_projective(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn g(s: &str) -> QPoly {
    parse_local(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schema")
}

type Row = BTreeMap<usize, BigRational>;
type IntRow = BTreeMap<usize, BigInt>;

/// Scales a rational row to coprime integers.
fn primitive_row(row: Row) -> IntRow {
    use num_integer::Integer;
    let lcm = row.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: IntRow = row.into_iter().map(|(k, c)| (k, (c * &lcm).to_integer())).collect();
    content_free(ints)
}

fn content_free(row: IntRow) -> IntRow {
    use num_integer::Integer;
    let g = row.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return row;
    }
    row.into_iter().map(|(k, c)| (k, c / &g)).collect()
}

/// Rank of a sparse rational matrix by fraction-free row echelon reduction,
/// sparsest rows first.
pub fn exact_rank(rows: Vec<Row>) -> usize {
    use num_integer::Integer;
    let mut rows: Vec<IntRow> = rows.into_iter().map(primitive_row).filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(|r| r.len());
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for mut row in rows {
        while let Some((&lead, c)) = row.iter().next() {
            let Some(piv) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            // row <- a * row - b * piv with the lead cancelled.
            let g = c.gcd(&piv[&lead]);
            let (a, b) = (&piv[&lead] / &g, c / &g);
            let mut next: IntRow = row.into_iter().map(|(k, v)| (k, v * &a)).collect();
            for (col, v) in piv {
                let e = next.entry(*col).or_insert_with(BigInt::zero);
                *e -= &b * v;
                if e.is_zero() {
                    next.remove(col);
                }
            }
            row = content_free(next);
        }
    }
    pivots.len()
}

/// Exponent vectors of total degree `k` in `n` variables.
pub fn monomials(n: usize, k: i32) -> Vec<Vec<u16>> {
    if k < 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![k as u16]];
    }
    let mut out = Vec::new();
    for a in (0..=k).rev() {
        for mut rest in monomials(n - 1, k - a) {
            rest.insert(0, a as u16);
            out.push(rest);
        }
    }
    out
}

fn terms(f: &QPoly) -> Vec<(Vec<u16>, BigRational)> {
    f.terms().iter().map(|(m, c)| (m.0[..f.nvars()].to_vec(), c.clone())).collect()
}

fn shifted(t: &[(Vec<u16>, BigRational)], m: &[u16]) -> Vec<(Vec<u16>, BigRational)> {
    t.iter()
        .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
        .collect()
}

fn index(monos: &[Vec<u16>]) -> HashMap<Vec<u16>, usize> {
    monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()
}

/// `dim_Q (S / (gens))_k` for homogeneous generators in `x, y, z`.
pub fn dense_quotient_hf(gens: &[QPoly], k: i32) -> usize {
    let target = monomials(3, k);
    let idx = index(&target);
    let mut rows = Vec::new();
    for f in gens.iter().filter(|f| !f.is_zero()) {
        let deg = f.degree().unwrap() as i32;
        let t = terms(f);
        for m in monomials(3, k - deg) {
            rows.push(shifted(&t, &m).into_iter().map(|(e, c)| (idx[&e], c)).collect());
        }
    }
    target.len() - exact_rank(rows)
}

/// `dim_Q D0(f)_k`: triples `(a, b, c)` of forms of degree `k` with
/// `a f_x + b f_y + c f_z = 0`, as the kernel of a linear map.
pub fn dense_derivation_dim(f: &QPoly, k: i32) -> usize {
    let d = f.degree().unwrap() as i32;
    let source = monomials(3, k);
    let idx = index(&monomials(3, k + d - 1));
    let grad: Vec<_> = f.gradient().iter().map(terms).collect();
    // Columns of the map, one per basis vector m·e_i of S_k^3, taken as rows
    // of the transpose.
    let mut rows = Vec::new();
    for g in &grad {
        for m in &source {
            rows.push(shifted(g, m).into_iter().map(|(e, c)| (idx[&e], c)).collect());
        }
    }
    3 * source.len() - exact_rank(rows)
}

/// Dimension in degree `k` of the syzygies of homogeneous `gens`: tuples
/// `(a_i)` with `a_i` of degree `k - deg g_i` and `Σ a_i g_i = 0`.
pub fn dense_syzygy_dim(gens: &[QPoly], k: i32) -> usize {
    let idx = index(&monomials(3, k));
    let mut rows = Vec::new();
    let mut source = 0;
    for f in gens {
        let t = terms(f);
        for m in monomials(3, k - f.degree().unwrap() as i32) {
            source += 1;
            rows.push(shifted(&t, &m).into_iter().map(|(e, c)| (idx[&e], c)).collect());
        }
    }
    source - exact_rank(rows)
}

/// `dim_Q Q[u, v] / (gens + m^n)`.
fn truncated_colength(gens: &[QPoly], n: i32) -> usize {
    let target: Vec<Vec<u16>> = (0..n).flat_map(|k| monomials(2, k)).collect();
    let idx = index(&target);
    let mut rows = Vec::new();
    for f in gens.iter().filter(|f| !f.is_zero()) {
        let t = terms(f);
        for m in &target {
            let row: Row = shifted(&t, m)
                .into_iter()
                .filter_map(|(e, c)| idx.get(&e).map(|&i| (i, c)))
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    target.len() - exact_rank(rows)
}

/// Colength of `(gens)` in the local ring of `Q[u, v]` at the origin.
/// `None` when it exceeds the truncation range (non-isolated zero).
///
/// `Q[u, v] / (I + m^n)` is the local quotient modulo `m^n`; once two
/// consecutive truncations agree, `m^n ⊂ I` locally by Nakayama.
pub fn local_colength(gens: &[QPoly]) -> Option<usize> {
    let mut prev = truncated_colength(gens, 1);
    for n in 2..=30 {
        let cur = truncated_colength(gens, n);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

pub fn oracle_milnor(germ: &QPoly) -> Option<usize> {
    local_colength(&germ.gradient())
}

pub fn oracle_tjurina(germ: &QPoly) -> Option<usize> {
    let mut gens = germ.gradient();
    gens.push(germ.clone());
    local_colength(&gens)
}

pub fn oracle_intersection(g1: &QPoly, g2: &QPoly) -> Option<usize> {
    local_colength(&[g1.clone(), g2.clone()])
}

// ---- random arrangements ----------------------------------------------

/// Linear form through two projective points (their cross product).
fn line_through(a: &[BigRational; 3], b: &[BigRational; 3]) -> [BigRational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn linear(c: &[BigRational; 3]) -> QPoly {
    let s = format!("({})*x + ({})*y + ({})*z", c[0], c[1], c[2]);
    p(&s)
}

/// Determinant of the symmetric matrix of a ternary quadratic form.
pub fn conic_discriminant(f: &QPoly) -> BigRational {
    let coef = |e: [u16; 3]| f.coefficient(&curvereg::Monomial(e));
    let two = q(2);
    let m = [
        [coef([2, 0, 0]), coef([1, 1, 0]) / &two, coef([1, 0, 1]) / &two],
        [coef([1, 1, 0]) / &two, coef([0, 2, 0]), coef([0, 1, 1]) / &two],
        [coef([1, 0, 1]) / &two, coef([0, 1, 1]) / &two, coef([0, 0, 2])],
    ];
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn random_invertible(rng: &mut StdRng) -> [[i64; 3]; 3] {
    loop {
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.gen_range(-2..=2);
            }
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det != 0 {
            return m;
        }
    }
}

/// A random arrangement of at most three smooth conics and lines, all of
/// whose pairwise intersections are rational, of total degree 3..=6.
///
/// Every conic lies in the pencil spanned by `x^2 + y^2 - z^2` and the line
/// pair through four rational points of it; every line is a chord through
/// two of the four points. A random invertible integer change of
/// coordinates is applied at the end.
pub fn random_arrangement(rng: &mut StdRng) -> Vec<QPoly> {
    let base = p("x^2 + y^2 - z^2");
    // Rational parametrization (1 - t^2 : 2t : 1 + t^2).
    let mut ts: Vec<BigRational> = Vec::new();
    while ts.len() < 4 {
        let t = BigRational::new(BigInt::from(rng.gen_range(-4..=4)), BigInt::from(rng.gen_range(1..=3)));
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    let pts: Vec<[BigRational; 3]> = ts
        .iter()
        .map(|t| [BigRational::one() - t * t, q(2) * t, BigRational::one() + t * t])
        .collect();
    let chord = |i: usize, j: usize| linear(&line_through(&pts[i], &pts[j]));
    let pair = chord(0, 1).mul(&chord(2, 3));
    let conic = |rng: &mut StdRng| loop {
        let lambda = BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=3)));
        let c = base.add(&pair.scale(&lambda));
        if !conic_discriminant(&c).is_zero() {
            return c;
        }
    };
    let chords = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    loop {
        let count = rng.gen_range(2..=3);
        let mut comps: Vec<QPoly> = Vec::new();
        for _ in 0..count {
            let c = if rng.gen_bool(0.5) {
                conic(rng)
            } else {
                let (i, j) = chords[rng.gen_range(0..chords.len())];
                chord(i, j)
            };
            if comps.iter().all(|o| o.monic() != c.monic()) {
                comps.push(c);
            }
        }
        let d: u32 = comps.iter().map(|c| c.degree().unwrap()).sum();
        if !(3..=6).contains(&d) {
            continue;
        }
        let m = random_invertible(rng);
        let images: Vec<QPoly> = m
            .iter()
            .map(|r| linear(&[q(r[0]), q(r[1]), q(r[2])]))
            .collect();
        return comps.iter().map(|c| primitive(&c.substitute(&images))).collect();
    }
}

/// Scales to integer coefficients with content 1 and a positive leading
/// coefficient, to keep printed polynomials short.
fn primitive(f: &QPoly) -> QPoly {
    use num_integer::Integer;
    let lcm = f.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scaled = f.scale(&BigRational::from_integer(lcm));
    let gcd = scaled.terms().iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()));
    let mut out = scaled.scale(&BigRational::new(BigInt::one(), gcd));
    if out.leading_term().is_some_and(|(_, c)| c.is_negative()) {
        out = out.neg();
    }
    out
}
