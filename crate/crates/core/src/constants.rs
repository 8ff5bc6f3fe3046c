//! Closed-form bounds and the proof-scale constants calculator.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// Kővári–Sós–Turán bound: a graph on `n` vertices with no `K_{s,s}`
/// subgraph has at most `(s-1)^{1/s} n^{2-1/s} + (s-1)` edges.
pub fn kst_bound(s: usize, n: usize) -> f64 {
    assert!(s >= 1, "s must be at least 1");
    let s_f = s as f64;
    let n_f = n as f64;
    (s_f - 1.0).powf(1.0 / s_f) * n_f.powf(2.0 - 1.0 / s_f) + (s_f - 1.0)
}

/// Known two-colour Ramsey numbers of cliques: the smallest `R` such that
/// any 2-colouring of `K_R` contains a monochromatic `K_t`. Exact values are
/// only known up to `t = 4`; larger targets need an explicit clique size.
pub fn ramsey_clique_size(t: usize) -> Option<usize> {
    match t {
        1 => Some(1),
        2 => Some(2),
        3 => Some(6),
        4 => Some(18),
        _ => None,
    }
}

/// The quantities the product-host argument would need at full proof scale,
/// computed exactly. These are astronomically beyond desk scale and are
/// reported for transparency, never enforced.
#[derive(Clone, Debug, Serialize)]
pub struct ProofConstants {
    pub k: usize,
    pub d: usize,
    /// `s = (d + d^2) k`, the complete-bipartite detection size.
    pub s: usize,
    /// `t = (64 k d)^s`, the monochromatic clique target, exact.
    pub t: BigUint,
    /// `eps = 1 / eps_inverse` with `eps_inverse = d^2 (2k+1) 2^(2k+4)`.
    pub eps_inverse: BigUint,
    /// Smallest even `D` with `D > 100 d^2 / eps^4`, exact.
    pub min_even_degree: BigUint,
    /// `q = 2k + 1`, the multipartite part count.
    pub q: usize,
    /// Host size lower bound `40 n d^2 (2k+1)` as a function of `n`
    /// (reported for `n = 1`; scale linearly).
    pub host_bound_per_vertex: BigUint,
}

pub fn proof_constants(k: usize, d: usize) -> Result<ProofConstants> {
    if k < 1 || d < 1 {
        return Err(Error::InvalidInput("k and d must be at least 1".into()));
    }
    let s = (d + d * d) * k;
    let t = BigUint::from(64 * k * d).pow(s as u32);
    let eps_inverse =
        BigUint::from(d * d) * BigUint::from(2 * k + 1) * (BigUint::from(1u8) << (2 * k + 4));
    // D > 100 d^2 eps_inverse^4; take the smallest even integer above.
    let bound = BigUint::from(100 * d * d) * eps_inverse.pow(4);
    let one = BigUint::from(1u8);
    let candidate = &bound + &one;
    let min_even_degree = if &candidate % 2u8 == BigUint::from(0u8) {
        candidate
    } else {
        candidate + one
    };
    let host_bound_per_vertex = BigUint::from(40 * d * d * (2 * k + 1));
    Ok(ProofConstants {
        k,
        d,
        s,
        t,
        eps_inverse,
        min_even_degree,
        q: 2 * k + 1,
        host_bound_per_vertex,
    })
}

/// The dichotomy precondition `N >= 20 n d q`.
pub fn dichotomy_bound(n: usize, d: usize, q: usize) -> usize {
    20 * n * d * q
}
