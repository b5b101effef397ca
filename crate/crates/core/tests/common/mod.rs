//! Oracles that recompute quantities without going through the rewriting
//! machinery of the library.

#![allow(dead_code)]

use std::sync::Arc;

use tubular::string_group::{parse_elem, StringElem, WeightSeq};

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of degree `x` in the free polynomial ring on
/// `x_1, …, x_t`: writing `x = l c + Σ l_i x_i` in normal form, the
/// exponents are `l_i + p_i m_i` with `Σ m_i = l`.
pub fn free_monomial_count(x: &StringElem) -> i64 {
    let t = x.weights().len() as i64;
    binomial(x.phi() + t - 1, t - 1)
}

/// `dim S_x` for the complete intersection cut out by `t − 2` relations of
/// degree `c`, read off the Koszul resolution.
pub fn ci_dim(x: &StringElem) -> i64 {
    let w = x.weights().clone();
    let t = w.len() as i64;
    let r = (t - 2).max(0);
    let c = w.canonical_c();
    (0..=r)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sign * binomial(r, k) * free_monomial_count(&(x - &c.smul(k)))
        })
        .sum()
}

pub fn elem(w: &Arc<WeightSeq>, text: &str) -> StringElem {
    parse_elem(w, text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// `3x_1 + jω`.
pub fn coset(w: &Arc<WeightSeq>, j: i64) -> StringElem {
    &elem(w, "3*x1") + &w.dualizing().smul(j)
}

/// Degree of the monomial `Π x_i^{e_i}`.
pub fn monomial_degree(w: &Arc<WeightSeq>, exps: &[i64]) -> StringElem {
    exps.iter()
        .enumerate()
        .fold(w.zero(), |acc, (i, &e)| &acc + &w.x(i + 1).unwrap().smul(e))
}

/// `(n, j)` with `x = n (3x_1) + j ω`, found by search over `|n| ≤ bound`.
pub fn h_coordinates(x: &StringElem, bound: i64) -> Option<(i64, i64)> {
    let w = x.weights().clone();
    let p = w.lcm();
    let three_x1 = elem(&w, "3*x1");
    for n in -bound..=bound {
        for j in 0..p {
            if &three_x1.smul(n) + &w.dualizing().smul(j) == *x {
                return Some((n, j));
            }
        }
    }
    None
}

pub const TUBULAR: [&str; 4] = ["2,2,2,2", "3,3,3", "4,4,2", "6,3,2"];
pub const TYPES: [&str; 4] = ["2222", "333", "442", "632"];
