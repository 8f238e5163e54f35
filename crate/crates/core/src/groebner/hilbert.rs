//! Hilbert functions read off initial modules.

use crate::monomial::Monomial;

/// Number of standard monomials of weighted degree `k` in `⊕ S(-shifts[i])`
/// modulo the monomial submodule generated by `leads`, i.e.
/// `dim (F / in(M))_k`.
pub fn count_standard_monomials(leads: &[(usize, Monomial)], shifts: &[i32], k: i32) -> usize {
    shifts
        .iter()
        .enumerate()
        .map(|(pos, &shift)| {
            let deg = k - shift;
            if deg < 0 {
                return 0;
            }
            Monomial::all_of_degree(3, deg as u32)
                .into_iter()
                .filter(|m| !leads.iter().any(|(p, l)| *p == pos && l.divides(m)))
                .count()
        })
        .sum()
}

/// `dim S_k` for `S = k[x, y, z]`.
pub fn polynomial_ring_dim(k: i32) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

/// `dim M(g)_k` for a smooth plane curve `g` of degree `d`: the coefficient
/// of `t^k` in `((1 - t^(d-1)) / (1 - t))^3`.
pub fn smooth_milnor_algebra_dim(d: u32, k: i32) -> usize {
    if k < 0 || d < 2 {
        return 0;
    }
    let e = (d - 1) as i64;
    let k = k as i64;
    // Inclusion–exclusion over the three factors.
    let binom3 = [1i64, -3, 3, -1];
    let mut total = 0i64;
    for (j, &c) in binom3.iter().enumerate() {
        let rest = k - j as i64 * e;
        if rest >= 0 {
            total += c * (rest + 1) * (rest + 2) / 2;
        }
    }
    total as usize
}
