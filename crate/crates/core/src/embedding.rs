//! Expansion checking and bounded-degree tree embedding.
//!
//! The Friedman–Pippenger condition says: if a nonempty graph `H` satisfies
//! `|Γ_H(X)| >= (d+1)|X|` for every `X ⊆ V(H)` with `1 <= |X| <= 2n-2`,
//! then `H` contains every tree with `n` vertices and maximum degree at most
//! `d`. The checker here is exact (full subset enumeration) within a budget;
//! the embedder is an exhaustive backtracking search, so the implication is
//! something the test suite can observe rather than assume.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::RootedTree;

/// An injective map from pattern vertices to host vertices, stored as
/// `image[pattern_vertex] = host_vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    image: Vec<usize>,
}

impl Embedding {
    pub fn new(image: Vec<usize>) -> Self {
        Embedding { image }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn get(&self, pattern_vertex: usize) -> usize {
        self.image[pattern_vertex]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }
}

/// Outcome of an expansion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionOutcome {
    /// Every set of the checked sizes expands.
    Expands,
    /// A violating set: `|Γ(X)| < (d+1)|X|`.
    Violation(Vec<usize>),
}

/// Subset-enumeration budget for the exact checker.
pub const EXPANSION_ENUM_BUDGET: u128 = 10_000_000;

fn enumeration_cost(nv: usize, max_size: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for j in 1..=max_size.min(nv) {
        binom = binom.saturating_mul((nv - j + 1) as u128) / j as u128;
        total = total.saturating_add(binom);
        if total > EXPANSION_ENUM_BUDGET {
            return total;
        }
    }
    total
}

/// Exact Friedman–Pippenger check: `Expands` iff for all `X` with
/// `1 <= |X| <= 2n-2` we have `|Γ_H(X)| >= (d+1)|X|`. Otherwise returns a
/// minimum-cardinality violating set (lexicographically first). Fails with a
/// budget error when subset enumeration exceeds 10^7 sets; use
/// [`fp_expansion_check_heuristic`] in that regime.
pub fn fp_expansion_check(h: &Graph, n: usize, d: usize) -> Result<ExpansionOutcome> {
    if h.n() == 0 {
        return Err(Error::Precondition("host graph is empty".into()));
    }
    if n < 1 || d < 1 {
        return Err(Error::Precondition("n and d must be at least 1".into()));
    }
    let max_size = (2 * n).saturating_sub(2).min(h.n());
    if enumeration_cost(h.n(), max_size) > EXPANSION_ENUM_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "enumerating subsets of size <= {max_size} over {} vertices exceeds {} sets; \
             use the heuristic checker",
            h.n(),
            EXPANSION_ENUM_BUDGET
        )));
    }
    let rows = h.adjacency_bitsets();
    let mut chosen = Vec::new();
    for size in 1..=max_size {
        let gamma = BitSet::new(h.n());
        if let Some(x) = find_violating_rec(&rows, h.n(), d, size, 0, &mut chosen, &gamma) {
            return Ok(ExpansionOutcome::Violation(x));
        }
    }
    Ok(ExpansionOutcome::Expands)
}

fn find_violating_rec(
    rows: &[BitSet],
    nv: usize,
    d: usize,
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    gamma: &BitSet,
) -> Option<Vec<usize>> {
    if chosen.len() == size {
        if gamma.count() < (d + 1) * size {
            return Some(chosen.clone());
        }
        return None;
    }
    let remaining = size - chosen.len();
    for v in start..=(nv - remaining) {
        chosen.push(v);
        let mut next = gamma.clone();
        next.union_with(&rows[v]);
        if let Some(x) = find_violating_rec(rows, nv, d, size, v + 1, chosen, &next) {
            return Some(x);
        }
        chosen.pop();
    }
    None
}

/// Greedy violating-set search for hosts beyond the exact budget: grows a
/// candidate set from every vertex, always adding the vertex that keeps the
/// neighbourhood smallest. A returned violation is genuine; `Expands` is
/// *not* certified in this mode.
pub fn fp_expansion_check_heuristic(h: &Graph, n: usize, d: usize) -> ExpansionOutcome {
    let nv = h.n();
    let max_size = (2 * n).saturating_sub(2).min(nv);
    if max_size == 0 {
        return ExpansionOutcome::Expands;
    }
    let rows = h.adjacency_bitsets();
    let mut starts: Vec<usize> = (0..nv).collect();
    starts.sort_by_key(|&v| (h.degree(v), v));
    for &s in &starts {
        let mut x = vec![s];
        let mut gamma = rows[s].clone();
        loop {
            if gamma.count() < (d + 1) * x.len() {
                return ExpansionOutcome::Violation(x);
            }
            if x.len() == max_size {
                break;
            }
            // Add the vertex whose neighbourhood inflates gamma least.
            let mut best: Option<(usize, usize)> = None;
            for (v, row) in rows.iter().enumerate() {
                if x.contains(&v) {
                    continue;
                }
                let mut g2 = gamma.clone();
                g2.union_with(row);
                let c = g2.count();
                if best.is_none_or(|(bc, bv)| c < bc || (c == bc && v < bv)) {
                    best = Some((c, v));
                }
            }
            match best {
                Some((_, v)) => {
                    x.push(v);
                    gamma.union_with(&rows[v]);
                }
                None => break,
            }
        }
    }
    ExpansionOutcome::Expands
}

/// Exhaustively embeds the tree `t` into `host` as a subgraph, or proves no
/// embedding exists. Pattern vertices are processed in breadth-first order;
/// candidates are tried by descending host degree. A candidate is skipped if
/// its unused neighbour count cannot accommodate the children still to come.
pub fn embed_tree(host: &Graph, t: &RootedTree, d: usize) -> Result<Option<Embedding>> {
    if t.max_degree() > d {
        return Err(Error::Precondition(format!(
            "tree has maximum degree {} > d = {d}",
            t.max_degree()
        )));
    }
    if t.n() > host.n() {
        return Ok(None);
    }
    let order = t.bfs_order();
    let mut by_degree: Vec<usize> = (0..host.n()).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(host.degree(v)), v));

    let mut image = vec![usize::MAX; t.n()];
    let mut used = vec![false; host.n()];
    if embed_rec(host, t, &order, 0, &by_degree, &mut image, &mut used) {
        Ok(Some(Embedding::new(image)))
    } else {
        Ok(None)
    }
}

fn embed_rec(
    host: &Graph,
    t: &RootedTree,
    order: &[usize],
    idx: usize,
    root_candidates: &[usize],
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    let need = t.children(v).len();
    let candidates: Vec<usize> = if v == t.root() {
        root_candidates.to_vec()
    } else {
        let anchor = image[t.parent(v)];
        let mut c: Vec<usize> = host.neighbours(anchor).to_vec();
        c.sort_by_key(|&w| (std::cmp::Reverse(host.degree(w)), w));
        c
    };
    for w in candidates {
        if used[w] {
            continue;
        }
        let free = host.neighbours(w).iter().filter(|&&x| !used[x]).count();
        if free < need {
            continue;
        }
        used[w] = true;
        image[v] = w;
        if embed_rec(host, t, order, idx + 1, root_candidates, image, used) {
            return true;
        }
        used[w] = false;
        image[v] = usize::MAX;
    }
    false
}
