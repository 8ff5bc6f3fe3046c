//! Independent validators and exact search oracles.
//!
//! Everything here re-derives its answers from graph-core types only, so the
//! test suite can route producer output through checks that share no search
//! logic with the producers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::colouring::{Colour, EdgeColouring};
use crate::dichotomy::Dichotomy;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    WrongSize,
    ImageOutOfRange,
    NotInjective,
    MissingHostEdge,
    WrongColour,
    MalformedInput,
    PartTooSmall,
    PartsNotDisjoint,
    WrongPartCount,
    CrossPairNotRed,
    ExpansionFailure,
}

/// One structured finding: the kind plus the vertices or edges involved.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub vertices: Vec<usize>,
    pub message: String,
}

/// Validator outcome; `ok` holds iff no violations were found.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub stats: BTreeMap<String, u64>,
}

impl Report {
    fn from_parts(violations: Vec<Violation>, stats: BTreeMap<String, u64>) -> Self {
        Report {
            ok: violations.is_empty(),
            violations,
            stats,
        }
    }
}

/// Checks that `e` maps `pattern` injectively into `host` with every pattern
/// edge present, and (optionally) that every image edge carries `colour`
/// under `psi`.
pub fn validate_embedding(
    pattern: &Graph,
    host: &Graph,
    e: &Embedding,
    colour_filter: Option<(&EdgeColouring, Colour)>,
) -> Report {
    let mut violations = Vec::new();
    let mut stats = BTreeMap::new();
    if e.len() != pattern.n() {
        violations.push(Violation {
            kind: ViolationKind::WrongSize,
            vertices: vec![e.len(), pattern.n()],
            message: format!(
                "embedding has {} entries for a pattern on {} vertices",
                e.len(),
                pattern.n()
            ),
        });
        return Report::from_parts(violations, stats);
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (p, &h) in e.image().iter().enumerate() {
        if h >= host.n() {
            violations.push(Violation {
                kind: ViolationKind::ImageOutOfRange,
                vertices: vec![p, h],
                message: format!("pattern vertex {p} maps to {h} outside the host"),
            });
            continue;
        }
        if let Some(&q) = seen.get(&h) {
            violations.push(Violation {
                kind: ViolationKind::NotInjective,
                vertices: vec![q, p, h],
                message: format!("pattern vertices {q} and {p} both map to host vertex {h}"),
            });
        } else {
            seen.insert(h, p);
        }
    }
    let mut edges_checked = 0u64;
    if violations.is_empty() {
        for (u, v) in pattern.edges() {
            edges_checked += 1;
            let (hu, hv) = (e.get(u), e.get(v));
            if !host.has_edge(hu, hv) {
                violations.push(Violation {
                    kind: ViolationKind::MissingHostEdge,
                    vertices: vec![u, v, hu, hv],
                    message: format!("pattern edge {u}-{v} maps to non-edge {hu}-{hv}"),
                });
                continue;
            }
            if let Some((psi, colour)) = colour_filter {
                if psi.get(hu, hv) != Some(colour) {
                    violations.push(Violation {
                        kind: ViolationKind::WrongColour,
                        vertices: vec![u, v, hu, hv],
                        message: format!("image edge {hu}-{hv} is not {colour}"),
                    });
                }
            }
        }
    }
    stats.insert("edges_checked".into(), edges_checked);
    stats.insert("vertices_checked".into(), e.len() as u64);
    Report::from_parts(violations, stats)
}

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Exact search for a copy of the tree `t` all of whose edges have `colour`
/// under `psi`. Complete backtracking over the colour class: `None` means no
/// monochromatic copy exists. Identical sibling subtrees are canonicalised
/// (images forced increasing), which prunes permutations of equal branches
/// without losing completeness. `budget` caps search nodes so that an
/// exhausted search is distinguishable from a proven absence.
pub fn find_mono_tree(
    g: &Graph,
    psi: &EdgeColouring,
    colour: Colour,
    t: &RootedTree,
    budget: u64,
) -> Result<Option<Embedding>> {
    let class = class_graph_checked(g, psi, colour)?;
    if t.n() > class.n() {
        return Ok(None);
    }
    let order = t.bfs_order();
    let canon = ahu_canonical_ids(t);
    // prev_identical[v]: the previous sibling with an isomorphic subtree.
    let mut prev_identical: Vec<Option<usize>> = vec![None; t.n()];
    for v in 0..t.n() {
        let kids = t.children(v);
        for (i, &c) in kids.iter().enumerate() {
            prev_identical[c] = kids[..i]
                .iter()
                .rev()
                .find(|&&s| canon[s] == canon[c])
                .copied();
        }
    }
    let mut by_class_degree: Vec<usize> = (0..class.n()).collect();
    by_class_degree.sort_by_key(|&v| (std::cmp::Reverse(class.degree(v)), v));

    let mut state = MonoSearch {
        class: &class,
        tree: t,
        order: &order,
        prev_identical: &prev_identical,
        root_candidates: &by_class_degree,
        image: vec![usize::MAX; t.n()],
        used: vec![false; class.n()],
        nodes: 0,
        budget,
    };
    if state.search(0)? {
        Ok(Some(Embedding::new(state.image)))
    } else {
        Ok(None)
    }
}

fn class_graph_checked(g: &Graph, psi: &EdgeColouring, colour: Colour) -> Result<Graph> {
    if !psi.is_total_on(g) {
        return Err(Error::InvalidInput(
            "colouring is not total on the graph".into(),
        ));
    }
    Ok(psi.class_graph(colour))
}

struct MonoSearch<'a> {
    class: &'a Graph,
    tree: &'a RootedTree,
    order: &'a [usize],
    prev_identical: &'a [Option<usize>],
    root_candidates: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl MonoSearch<'_> {
    fn search(&mut self, idx: usize) -> Result<bool> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let v = self.order[idx];
        let need = self.tree.children(v).len();
        let lower = self.prev_identical[v].map(|s| self.image[s]);
        let candidates: Vec<usize> = if v == self.tree.root() {
            self.root_candidates.to_vec()
        } else {
            let anchor = self.image[self.tree.parent(v)];
            let mut c = self.class.neighbours(anchor).to_vec();
            c.sort_by_key(|&w| (std::cmp::Reverse(self.class.degree(w)), w));
            c
        };
        for w in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(format!(
                    "monochromatic tree search exceeded {} nodes",
                    self.budget
                )));
            }
            if self.used[w] {
                continue;
            }
            if let Some(lo) = lower {
                // Identical sibling subtrees embed with increasing images.
                if w <= lo {
                    continue;
                }
            }
            let free = self
                .class
                .neighbours(w)
                .iter()
                .filter(|&&x| !self.used[x])
                .count();
            if free < need {
                continue;
            }
            self.used[w] = true;
            self.image[v] = w;
            if self.search(idx + 1)? {
                return Ok(true);
            }
            self.used[w] = false;
            self.image[v] = usize::MAX;
        }
        Ok(false)
    }
}

fn ahu_canonical_ids(t: &RootedTree) -> Vec<usize> {
    let order = t.bfs_order();
    let mut canon = vec![0usize; t.n()];
    let mut interner: HashMap<Vec<usize>, usize> = HashMap::new();
    for &v in order.iter().rev() {
        let mut child_ids: Vec<usize> = t.children(v).iter().map(|&c| canon[c]).collect();
        child_ids.sort_unstable();
        let next = interner.len();
        canon[v] = *interner.entry(child_ids).or_insert(next);
    }
    canon
}

/// Re-checks a [`Dichotomy`] certificate against the colouring it was
/// produced from, by independent subset enumeration (expansion) or by direct
/// size/disjointness/colour checks (multipartite).
pub fn validate_dichotomy(
    psi: &EdgeColouring,
    n: usize,
    d: usize,
    q: usize,
    out: &Dichotomy,
) -> Report {
    let mut violations = Vec::new();
    let mut stats = BTreeMap::new();
    let big_n = psi.n();
    if psi.edge_count() != big_n * big_n.saturating_sub(1) / 2 {
        violations.push(Violation {
            kind: ViolationKind::MalformedInput,
            vertices: vec![],
            message: "colouring is not total on a complete graph".into(),
        });
        return Report::from_parts(violations, stats);
    }
    match out {
        Dichotomy::BlueExpansion { vertices } => {
            let distinct: BTreeSet<usize> = vertices.iter().copied().collect();
            if distinct.len() != vertices.len() || vertices.iter().any(|&v| v >= big_n) {
                violations.push(Violation {
                    kind: ViolationKind::MalformedInput,
                    vertices: vertices.clone(),
                    message: "expansion vertex set has duplicates or out-of-range ids".into(),
                });
                return Report::from_parts(violations, stats);
            }
            // Blue neighbourhoods restricted to the certified set.
            let verts: Vec<usize> = distinct.into_iter().collect();
            let index: HashMap<usize, usize> =
                verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts {
                    if u < v && psi.get(u, v) == Some(Colour::Blue) {
                        let j = index[&v];
                        nbrs[i].push(j);
                        nbrs[j].push(i);
                    }
                }
            }
            let max_size = (2 * n).saturating_sub(2).min(verts.len());
            let mut subsets_checked = 0u64;
            let mut chosen: Vec<usize> = Vec::new();
            let mut bad: Option<Vec<usize>> = None;
            for size in 1..=max_size {
                if bad.is_some() {
                    break;
                }
                enumerate_subsets(
                    verts.len(),
                    size,
                    0,
                    &mut chosen,
                    &mut |set: &[usize]| {
                        subsets_checked += 1;
                        let mut gamma: BTreeSet<usize> = BTreeSet::new();
                        for &i in set {
                            gamma.extend(nbrs[i].iter().copied());
                        }
                        if gamma.len() < (d + 1) * set.len() {
                            bad = Some(set.iter().map(|&i| verts[i]).collect());
                            false
                        } else {
                            true
                        }
                    },
                );
            }
            stats.insert("subsets_checked".into(), subsets_checked);
            if let Some(x) = bad {
                violations.push(Violation {
                    kind: ViolationKind::ExpansionFailure,
                    vertices: x.clone(),
                    message: format!("set {x:?} has a blue neighbourhood smaller than (d+1)|X|"),
                });
            }
        }
        Dichotomy::RedMultipartite { parts } => {
            if parts.len() != q {
                violations.push(Violation {
                    kind: ViolationKind::WrongPartCount,
                    vertices: vec![parts.len(), q],
                    message: format!("{} parts returned, expected {q}", parts.len()),
                });
            }
            let threshold = big_n.div_ceil(5 * d * q);
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            for (i, p) in parts.iter().enumerate() {
                if p.len() < threshold {
                    violations.push(Violation {
                        kind: ViolationKind::PartTooSmall,
                        vertices: p.clone(),
                        message: format!("part {i} has {} < {threshold} vertices", p.len()),
                    });
                }
                for &v in p {
                    if v >= big_n || !seen.insert(v) {
                        violations.push(Violation {
                            kind: ViolationKind::PartsNotDisjoint,
                            vertices: vec![v],
                            message: format!("vertex {v} repeated or out of range"),
                        });
                    }
                }
            }
            let mut pairs_checked = 0u64;
            for i in 0..parts.len() {
                for j in (i + 1)..parts.len() {
                    for &u in &parts[i] {
                        for &v in &parts[j] {
                            pairs_checked += 1;
                            if u < big_n && v < big_n && psi.get(u, v) != Some(Colour::Red) {
                                violations.push(Violation {
                                    kind: ViolationKind::CrossPairNotRed,
                                    vertices: vec![u, v],
                                    message: format!("cross pair {u}-{v} is not red"),
                                });
                            }
                        }
                    }
                }
            }
            stats.insert("pairs_checked".into(), pairs_checked);
        }
    }
    Report::from_parts(violations, stats)
}

/// Calls `f` on every `size`-subset of `0..n` in lexicographic order until
/// `f` returns false.
fn enumerate_subsets(
    n: usize,
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == size {
        return f(chosen);
    }
    let remaining = size - chosen.len();
    for v in start..=n.saturating_sub(remaining) {
        chosen.push(v);
        let keep_going = enumerate_subsets(n, size, v + 1, chosen, f);
        chosen.pop();
        if !keep_going {
            return false;
        }
    }
    true
}
