//! Monochromatic complete bipartite detection and the part-pair auxiliary
//! colouring.
//!
//! Given a partitioned, edge-coloured graph, the auxiliary colouring of
//! `K_m` marks a part pair blue exactly when a blue `K_{s,s}` crosses it.
//! Finding a blue truncation embedding in the auxiliary graph is the hook
//! the product-embedding step needs.

use crate::bitset::BitSet;
use crate::colouring::{Colour, EdgeColouring};
use crate::error::{Error, Result};

/// Subset-enumeration budget for the exact `K_{s,s}` search.
pub const KSS_ENUM_BUDGET: u128 = 2_000_000;

/// Exact search for a complete bipartite `K_{s,s}` between `u_side` and
/// `w_side` whose edges all carry `colour` under `psi`. Returns the
/// lexicographically least witness `(S_u, S_w)` or `None` if no such pair
/// of `s`-sets exists. Enumeration is over `s`-subsets of `u_side` with
/// branch-and-bound on the common coloured neighbourhood in `w_side`.
pub fn find_mono_kss(
    psi: &EdgeColouring,
    colour: Colour,
    u_side: &[usize],
    w_side: &[usize],
    s: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if s < 1 {
        return Err(Error::InvalidInput("s must be at least 1".into()));
    }
    let mut u_sorted = u_side.to_vec();
    let mut w_sorted = w_side.to_vec();
    u_sorted.sort_unstable();
    w_sorted.sort_unstable();
    if u_sorted.windows(2).any(|w| w[0] == w[1]) || w_sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput("part contains repeated vertices".into()));
    }
    if u_sorted.iter().any(|u| w_sorted.binary_search(u).is_ok()) {
        return Err(Error::InvalidInput("parts must be disjoint".into()));
    }
    if u_sorted.len() < s || w_sorted.len() < s {
        return Ok(None);
    }

    // Coloured adjacency of each u into w_side, as bitsets over w positions.
    let masks: Vec<BitSet> = u_sorted
        .iter()
        .map(|&u| {
            let mut m = BitSet::new(w_sorted.len());
            for (j, &w) in w_sorted.iter().enumerate() {
                if psi.is(u, w, colour) {
                    m.insert(j);
                }
            }
            m
        })
        .collect();
    let viable: Vec<usize> = (0..u_sorted.len())
        .filter(|&i| masks[i].count() >= s)
        .collect();
    if viable.len() < s {
        return Ok(None);
    }
    if binom(viable.len(), s) > KSS_ENUM_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "K_{{{s},{s}}} search over {} viable vertices exceeds {} subsets",
            viable.len(),
            KSS_ENUM_BUDGET
        )));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    let full = {
        let mut m = BitSet::new(w_sorted.len());
        for j in 0..w_sorted.len() {
            m.insert(j);
        }
        m
    };
    if let Some((us, common)) = kss_rec(&viable, &masks, s, 0, &mut chosen, &full) {
        let s_u: Vec<usize> = us.iter().map(|&i| u_sorted[i]).collect();
        let s_w: Vec<usize> = common.iter().take(s).map(|j| w_sorted[j]).collect();
        return Ok(Some((s_u, s_w)));
    }
    Ok(None)
}

fn kss_rec(
    viable: &[usize],
    masks: &[BitSet],
    s: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    common: &BitSet,
) -> Option<(Vec<usize>, BitSet)> {
    if chosen.len() == s {
        return Some((chosen.clone(), common.clone()));
    }
    let remaining = s - chosen.len();
    for idx in start..=viable.len().saturating_sub(remaining) {
        let i = viable[idx];
        // Intersect: keep only w's coloured-adjacent to every chosen u.
        let mut next = BitSet::new(common.len());
        for j in common.iter() {
            if masks[i].contains(j) {
                next.insert(j);
            }
        }
        if next.count() < s {
            continue;
        }
        chosen.push(i);
        if let Some(hit) = kss_rec(viable, masks, s, idx + 1, chosen, &next) {
            return Some(hit);
        }
        chosen.pop();
    }
    None
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 1..=k {
        // Prefixes are C(n-k+j, j): exact and increasing, so the early
        // cutoff cannot misreport a small final value.
        acc = acc.saturating_mul((n - k + j) as u128) / j as u128;
        if acc > KSS_ENUM_BUDGET {
            return acc;
        }
    }
    acc
}

/// Builds the part-pair auxiliary colouring of `K_m`: edge `ij` is blue iff
/// a `colour`-monochromatic `K_{s,s}` crosses `parts[i]` and `parts[j]`,
/// red otherwise.
pub fn aux_colouring(
    parts: &[Vec<usize>],
    psi: &EdgeColouring,
    s: usize,
    colour: Colour,
) -> Result<EdgeColouring> {
    let m = parts.len();
    let mut entries = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            let hit = find_mono_kss(psi, colour, &parts[i], &parts[j], s)?;
            entries.push((
                i,
                j,
                if hit.is_some() {
                    Colour::Blue
                } else {
                    Colour::Red
                },
            ));
        }
    }
    EdgeColouring::from_entries(m, &entries)
}
