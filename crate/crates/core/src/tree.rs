//! Rooted trees with parent maps, level structure, and the odd-level
//! truncation used by the product-embedding machinery.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A rooted tree on vertices `0..n-1` stored as a parent map, with
/// `parent[root] == root`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    root: usize,
    parent: Vec<usize>,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
    #[serde(skip)]
    depth: Vec<usize>,
}

impl RootedTree {
    /// Validates the parent map: exactly one self-parent (the root) and every
    /// vertex reaches the root without cycles.
    pub fn new(root: usize, parent: Vec<usize>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::InvalidInput("tree must be nonempty".into()));
        }
        if root >= n || parent[root] != root {
            return Err(Error::InvalidInput(format!(
                "root {root} must satisfy parent(root) = root"
            )));
        }
        for (v, &p) in parent.iter().enumerate() {
            if p >= n {
                return Err(Error::InvalidInput(format!(
                    "parent of {v} out of range: {p}"
                )));
            }
            if v != root && p == v {
                return Err(Error::InvalidInput(format!("self-parent at non-root {v}")));
            }
        }
        // Depth by walking parent chains, detecting cycles by step count.
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        for v in 0..n {
            let mut chain = Vec::new();
            let mut u = v;
            while depth[u] == usize::MAX {
                chain.push(u);
                u = parent[u];
                if chain.len() > n {
                    return Err(Error::InvalidInput(format!(
                        "parent map has a cycle through vertex {v}"
                    )));
                }
            }
            let base = depth[u];
            for (i, &w) in chain.iter().rev().enumerate() {
                depth[w] = base + i + 1;
            }
        }
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if v != root {
                children[parent[v]].push(v);
            }
        }
        Ok(RootedTree {
            root,
            parent,
            children,
            depth,
        })
    }

    /// Single-vertex tree.
    pub fn trivial() -> Self {
        RootedTree::new(0, vec![0]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn parent_map(&self) -> &[usize] {
        &self.parent
    }

    pub fn grandparent(&self, v: usize) -> usize {
        self.parent[self.parent[v]]
    }

    /// Children of `v`, ascending.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Children and grandchildren of `v`.
    pub fn children_and_grandchildren(&self, v: usize) -> Vec<usize> {
        let mut out = self.children[v].clone();
        for &c in &self.children[v] {
            out.extend_from_slice(&self.children[c]);
        }
        out
    }

    /// Distance from the root to `v`.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Vertices at distance `i` from the root, ascending.
    pub fn level(&self, i: usize) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.depth[v] == i).collect()
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Degree of `v` in the underlying tree (children plus parent edge).
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(v != self.root)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Vertices in breadth-first order from the root (by depth, then id).
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| (self.depth[v], v));
        order
    }

    /// The underlying undirected graph of parent-child edges.
    pub fn to_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = (0..self.n())
            .filter(|&v| v != self.root)
            .map(|v| {
                let p = self.parent[v];
                (p.min(v), p.max(v))
            })
            .collect();
        Graph::from_edges(self.n(), &edges).expect("tree edges are simple")
    }
}

/// Complete `d`-ary tree of height `h`: every non-leaf has exactly `d`
/// children and every leaf is at distance `h` from the root. Vertices are
/// numbered in breadth-first order.
pub fn complete_dary_tree(d: usize, h: usize) -> Result<RootedTree> {
    if d < 1 {
        return Err(Error::InvalidInput("branching factor must be >= 1".into()));
    }
    let mut n: usize = 1;
    let mut level = 1usize;
    for _ in 0..h {
        level = level
            .checked_mul(d)
            .ok_or_else(|| Error::SizeOverflow(format!("d={d}, h={h} overflows")))?;
        n = n
            .checked_add(level)
            .ok_or_else(|| Error::SizeOverflow(format!("d={d}, h={h} overflows")))?;
    }
    // Keep desk-scale trees allocatable.
    if n > (1 << 28) {
        return Err(Error::SizeOverflow(format!(
            "complete {d}-ary tree of height {h} has {n} vertices"
        )));
    }
    let mut parent = vec![0usize; n];
    let mut next = 1usize;
    let mut frontier = vec![0usize];
    for _ in 0..h {
        let mut new_frontier = Vec::with_capacity(frontier.len() * d);
        for &v in &frontier {
            for _ in 0..d {
                parent[next] = v;
                new_frontier.push(next);
                next += 1;
            }
        }
        frontier = new_frontier;
    }
    debug_assert_eq!(next, n);
    RootedTree::new(0, parent)
}

/// The truncation `T'` of a rooted tree `T`: the root plus all odd levels,
/// with `vw` an edge whenever one is the grandparent of the other in `T`.
/// Keeps the map from truncation ids back to original vertices.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub tree: RootedTree,
    /// `original[x]` is the `T`-vertex that truncation vertex `x` stands for.
    pub original: Vec<usize>,
}

impl Truncation {
    /// Truncation id of an original vertex, if it was kept.
    pub fn index_of(&self, original_vertex: usize) -> Option<usize> {
        self.original.binary_search(&original_vertex).ok()
    }
}

/// Builds the truncation of `t`. Kept vertices are relabelled in ascending
/// order of their original ids; for a kept vertex `v != root` the truncation
/// parent is its grandparent in `t` (which is the root for level-1 vertices).
pub fn truncation(t: &RootedTree) -> Truncation {
    let kept: Vec<usize> = (0..t.n())
        .filter(|&v| v == t.root() || t.depth(v) % 2 == 1)
        .collect();
    let mut index = vec![usize::MAX; t.n()];
    for (i, &v) in kept.iter().enumerate() {
        index[v] = i;
    }
    let root = index[t.root()];
    let parent: Vec<usize> = kept
        .iter()
        .map(|&v| {
            if v == t.root() {
                root
            } else {
                index[t.grandparent(v)]
            }
        })
        .collect();
    let tree = RootedTree::new(root, parent).expect("grandparent map of odd levels is a tree");
    Truncation {
        tree,
        original: kept,
    }
}

/// Samples a tree with `n` vertices and maximum degree at most `d` by random
/// sequential attachment: each new vertex picks a uniform parent among the
/// earlier vertices whose degree is still below `d`. Deterministic in `seed`.
pub fn random_tree(n: usize, d: usize, seed: u64) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::InvalidInput("tree must be nonempty".into()));
    }
    if n >= 2 && d < 1 || n >= 3 && d < 2 {
        return Err(Error::InvalidInput(format!(
            "no tree on {n} vertices has maximum degree <= {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parent = vec![0usize; n];
    let mut degree = vec![0usize; n];
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| degree[u] < d).collect();
        debug_assert!(!open.is_empty(), "a tree always has a vertex of degree < 2");
        let p = open[rng.random_range(0..open.len())];
        parent[v] = p;
        degree[p] += 1;
        degree[v] += 1;
    }
    RootedTree::new(0, parent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dary_small_cases() {
        // Smallest branching case: a star on 3 vertices.
        let t = complete_dary_tree(2, 1).unwrap();
        assert_eq!(t.n(), 3);
        assert_eq!(t.children(0), &[1, 2]);
        assert_eq!(t.degree(0), 2);

        // d = 1 degenerates to a path.
        let t = complete_dary_tree(1, 5).unwrap();
        assert_eq!(t.n(), 6);
        assert_eq!(t.max_degree(), 2);
        assert_eq!(t.height(), 5);

        // (4^3 - 1) / 3 = 21 vertices, 4^2 = 16 leaves.
        let t = complete_dary_tree(4, 2).unwrap();
        assert_eq!(t.n(), 21);
        let leaves = (0..21).filter(|&v| t.children(v).is_empty()).count();
        assert_eq!(leaves, 16);
        assert!((0..21).all(|v| t.children(v).is_empty() || t.children(v).len() == 4));
        assert!((0..21).all(|v| !t.children(v).is_empty() || t.depth(v) == 2));
    }

    #[test]
    fn dary_overflow_is_an_error() {
        assert!(matches!(
            complete_dary_tree(2, 60),
            Err(Error::SizeOverflow(_))
        ));
    }

    #[test]
    fn children_sum_is_n_minus_one() {
        for (d, h) in [(2, 3), (3, 2), (1, 6)] {
            let t = complete_dary_tree(d, h).unwrap();
            let total: usize = (0..t.n()).map(|v| t.children(v).len()).sum();
            assert_eq!(total, t.n() - 1);
        }
    }

    #[test]
    fn truncation_of_path() {
        // Path r-a-b-c-d rooted at r: odd levels {a, c}, edges {ra, ac}.
        let t = RootedTree::new(0, vec![0, 0, 1, 2, 3]).unwrap();
        let tr = truncation(&t);
        assert_eq!(tr.original, vec![0, 1, 3]);
        assert_eq!(tr.tree.n(), 3);
        assert_eq!(tr.tree.root(), 0);
        let g = tr.tree.to_graph();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.edge_count() == 2);
    }

    #[test]
    fn truncation_trivial_and_t22() {
        let single = RootedTree::trivial();
        let tr = truncation(&single);
        assert_eq!(tr.tree.n(), 1);

        // T_{2,2} on 7 vertices: level 1 has the root's 2 children, level 3
        // is empty, so the truncation is the star on the root plus those two.
        let t = complete_dary_tree(2, 2).unwrap();
        let tr = truncation(&t);
        assert_eq!(tr.tree.n(), 3);
        assert_eq!(tr.original, vec![0, 1, 2]);
        assert_eq!(tr.tree.children(0), &[1, 2]);
    }

    #[test]
    fn truncation_structure_invariants() {
        for (d, h, seed) in [(2, 4, 7u64), (3, 3, 8), (2, 5, 9)] {
            let t = if seed % 2 == 0 {
                complete_dary_tree(d, h).unwrap()
            } else {
                random_tree(40, d + 1, seed).unwrap()
            };
            let tr = truncation(&t);
            // Kept vertices are the root plus odd levels.
            for (x, &orig) in tr.original.iter().enumerate() {
                if orig == t.root() {
                    continue;
                }
                assert_eq!(t.depth(orig) % 2, 1, "vertex {x} not on an odd level");
            }
            // Edge endpoints are at T-distance 2, except edges at the root
            // (children of the root are level 1, at distance 1).
            let tree_graph = t.to_graph();
            for (x, y) in tr.tree.to_graph().edges() {
                let (a, b) = (tr.original[x], tr.original[y]);
                let dist = tree_graph.bfs_distances(a, None)[b];
                if a == t.root() || b == t.root() {
                    assert_eq!(dist, 1);
                } else {
                    assert_eq!(dist, 2);
                }
            }
            // Degree bound: Delta(T') <= Delta(T)^2, and the root keeps its
            // children so its truncation degree is at most Delta(T).
            let dmax = t.max_degree();
            assert!(tr.tree.max_degree() <= dmax * dmax);
            assert!(tr.tree.children(tr.tree.root()).len() <= dmax);
            assert_eq!(
                tr.tree.children(tr.tree.root()).len(),
                t.children(t.root()).len()
            );
        }
    }

    #[test]
    fn random_tree_respects_degree_bound() {
        for seed in 0..30 {
            let n = 3 + (seed as usize % 20);
            let d = 2 + (seed as usize % 3);
            let t = random_tree(n, d, seed).unwrap();
            assert_eq!(t.n(), n);
            assert!(t.max_degree() <= d);
        }
        // Determinism.
        assert_eq!(
            random_tree(12, 3, 5).unwrap(),
            random_tree(12, 3, 5).unwrap()
        );
    }

    #[test]
    fn rooted_tree_rejects_bad_parent_maps() {
        assert!(RootedTree::new(0, vec![]).is_err());
        assert!(RootedTree::new(0, vec![1, 0]).is_err()); // parent(root) != root
        assert!(RootedTree::new(0, vec![0, 2, 1]).is_err()); // 2-cycle off the root
        assert!(RootedTree::new(0, vec![0, 1]).is_err()); // self-parent at non-root
        assert!(RootedTree::new(0, vec![0, 5]).is_err()); // out of range
    }
}
