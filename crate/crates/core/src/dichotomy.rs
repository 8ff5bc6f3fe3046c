//! The tree-or-multipartite dichotomy on two-coloured complete graphs.
//!
//! Given a red/blue colouring of `K_N` with `N >= 20 n d q`, either the blue
//! graph satisfies the Friedman–Pippenger expansion condition on some
//! vertex set (so it contains every tree with `n` vertices and maximum
//! degree `d`), or the red graph contains a complete `q`-partite subgraph
//! with parts of size at least `ceil(N / (5dq))`.
//!
//! The constructive route peels: while the blue graph on the surviving set
//! `S_i` has a violating set `X_i` (one with `|Γ(X_i)| < (d+1)|X_i|`), remove
//! `X_i` together with its blue neighbourhood. Every `K_N` edge between `X_i`
//! and a later survivor is red, so distinct `X_i` see each other in red only;
//! merging consecutive `X_i` builds the parts.

use serde::{Deserialize, Serialize};

use crate::colouring::{Colour, EdgeColouring};
use crate::embedding::{fp_expansion_check, fp_expansion_check_heuristic, ExpansionOutcome};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Outcome of [`tree_or_multipartite`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Dichotomy {
    /// The blue graph induced on `vertices` expands: every `X` with
    /// `1 <= |X| <= 2n-2` has `|Γ(X)| >= (d+1)|X|`, so every tree with `n`
    /// vertices and maximum degree `d` embeds into it in blue.
    BlueExpansion { vertices: Vec<usize> },
    /// Pairwise disjoint parts, each of size at least `ceil(N / (5dq))`,
    /// with every cross pair red.
    RedMultipartite { parts: Vec<Vec<usize>> },
}

/// Finds a violating set in `h`, exactly when the enumeration budget allows
/// it, greedily beyond. A heuristic violation is still a genuine violation;
/// only an uncertified "expands" answer is an error.
fn find_violating_set(h: &Graph, n: usize, d: usize) -> Result<Option<Vec<usize>>> {
    match fp_expansion_check(h, n, d) {
        Ok(ExpansionOutcome::Expands) => Ok(None),
        Ok(ExpansionOutcome::Violation(x)) => Ok(Some(x)),
        Err(Error::BudgetExceeded(_)) => match fp_expansion_check_heuristic(h, n, d) {
            ExpansionOutcome::Violation(x) => Ok(Some(x)),
            ExpansionOutcome::Expands => Err(Error::BudgetExceeded(
                "expansion of the blue graph could not be certified within the subset budget"
                    .into(),
            )),
        },
        Err(e) => Err(e),
    }
}

struct PeelStep {
    /// Violating set, in global vertex ids.
    violating: Vec<usize>,
    /// `X_i ∪ Γ(X_i)` inside the surviving blue graph, global ids.
    removed: Vec<usize>,
}

enum PeelOutcome {
    /// Some survivor set expands; peeling stopped there.
    Expands(Vec<usize>),
    /// Peeling consumed every vertex.
    Peeled(Vec<PeelStep>),
}

fn peel(blue: &Graph, n: usize, d: usize) -> Result<PeelOutcome> {
    let mut survivors: Vec<usize> = (0..blue.n()).collect();
    let mut steps = Vec::new();
    while !survivors.is_empty() {
        let sub = blue.induced(&survivors);
        match find_violating_set(&sub, n, d)? {
            None => return Ok(PeelOutcome::Expands(survivors)),
            Some(x_local) => {
                let mut removed_local: Vec<bool> = vec![false; sub.n()];
                for &v in &x_local {
                    removed_local[v] = true;
                    for &w in sub.neighbours(v) {
                        removed_local[w] = true;
                    }
                }
                let violating: Vec<usize> = x_local.iter().map(|&v| survivors[v]).collect();
                let removed: Vec<usize> = (0..sub.n())
                    .filter(|&v| removed_local[v])
                    .map(|v| survivors[v])
                    .collect();
                survivors = (0..sub.n())
                    .filter(|&v| !removed_local[v])
                    .map(|v| survivors[v])
                    .collect();
                steps.push(PeelStep { violating, removed });
            }
        }
    }
    Ok(PeelOutcome::Peeled(steps))
}

/// Runs the dichotomy on a total colouring of `K_N`.
///
/// Requires `N >= 20 n d q`. Returns either a certified blue expansion set
/// or `q` red-multipartite parts built by merging the peeled violating sets
/// until each part reaches `ceil(N / (5dq))`.
pub fn tree_or_multipartite(
    psi: &EdgeColouring,
    n: usize,
    d: usize,
    q: usize,
) -> Result<Dichotomy> {
    if n < 1 || d < 1 || q < 1 {
        return Err(Error::InvalidInput("n, d, q must be at least 1".into()));
    }
    let big_n = psi.n();
    if psi.edge_count() != big_n * big_n.saturating_sub(1) / 2 {
        return Err(Error::InvalidInput(
            "colouring must be total on the complete graph".into(),
        ));
    }
    if big_n < 20 * n * d * q {
        return Err(Error::Precondition(format!(
            "N = {big_n} is below the dichotomy bound 20ndq = {}",
            20 * n * d * q
        )));
    }
    let blue = psi.class_graph(Colour::Blue);
    let steps = match peel(&blue, n, d)? {
        PeelOutcome::Expands(vertices) => return Ok(Dichotomy::BlueExpansion { vertices }),
        PeelOutcome::Peeled(steps) => steps,
    };

    // Peeling accounting: the removed sets partition V, each has fewer than
    // (d+2)|X_i| vertices, hence N < (d+2)|union of X_i|.
    let removed_total: usize = steps.iter().map(|s| s.removed.len()).sum();
    assert_eq!(removed_total, big_n, "peeled sets must partition the vertex set");
    let union_size: usize = steps.iter().map(|s| s.violating.len()).sum();
    assert!(
        big_n < (d + 2) * union_size,
        "peeling inequality N < (d+2)|X| failed: N={big_n}, |X|={union_size}"
    );
    for s in &steps {
        assert!(!s.violating.is_empty() && s.violating.len() <= 2 * n - 2 || n == 1);
    }

    let threshold = big_n.div_ceil(5 * d * q);
    let mut parts: Vec<Vec<usize>> = Vec::with_capacity(q);
    let mut current: Vec<usize> = Vec::new();
    for s in &steps {
        current.extend_from_slice(&s.violating);
        if current.len() >= threshold {
            // Merged parts stay below 3N/(10dq) because each X_i has at
            // most 2n-2 < N/(10dq) vertices.
            debug_assert!(current.len() < threshold + 2 * n.max(1) - 1);
            current.sort_unstable();
            parts.push(std::mem::take(&mut current));
            if parts.len() == q {
                break;
            }
        }
    }
    if parts.len() < q {
        return Err(Error::ContractViolation(format!(
            "only {} of {q} multipartite parts could be assembled",
            parts.len()
        )));
    }
    Ok(Dichotomy::RedMultipartite { parts })
}
