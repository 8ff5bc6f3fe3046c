//! Simple undirected graphs on dense vertex ids `0..n-1`.
//!
//! Adjacency lists are kept sorted, so iteration order (and everything
//! derived from it) is deterministic. Edges are reported once in canonical
//! `u < v` form.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Simple undirected graph: no loops, no multi-edges, symmetric sorted
/// adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Rejects loops, out-of-range
    /// endpoints and duplicate edges (in either orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.check_endpoints(u, v)?;
            if g.has_edge(u, v) {
                return Err(Error::InvalidInput(format!("duplicate edge {u} {v}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    fn check_endpoints(&self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!(
                "edge {u} {v} out of range for n={n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("loop at vertex {u}")));
        }
        Ok(())
    }

    /// Inserts `uv` keeping adjacency sorted. Ignores the edge if present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_endpoints(u, v)?;
        if !self.has_edge(u, v) {
            self.insert_edge(u, v);
        }
        Ok(())
    }

    fn insert_edge(&mut self, u: usize, v: usize) {
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges in canonical `(u, v)` form with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// `D` if the graph is `D`-regular, otherwise `None`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Induced subgraph on `vertices` (need not be sorted; must be distinct).
    /// Vertex `i` of the result corresponds to `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            debug_assert!(index[v] == usize::MAX, "duplicate vertex in induced()");
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj }
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    /// `cap` stops the search beyond that distance.
    pub fn bfs_distances(&self, src: usize, cap: Option<usize>) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if let Some(c) = cap {
                if dist[u] >= c {
                    continue;
                }
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each listed in ascending vertex order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Adjacency rows as bitsets, for set-intersection heavy kernels.
    pub fn adjacency_bitsets(&self) -> Vec<BitSet> {
        (0..self.n())
            .map(|v| BitSet::from_slice(self.n(), &self.adj[v]))
            .collect()
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Graph { adj }
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.insert_edge(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_edge(0, n - 1);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_edge(u, v);
            }
        }
        g
    }
}

/// A vertex ordering together with the certified bound on the number of
/// neighbours each vertex has *earlier* in the sequence.
#[derive(Clone, Debug)]
pub struct VertexOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
    back_degree_bound: usize,
}

impl VertexOrder {
    /// Validates that `seq` is a permutation of `0..g.n()` and computes the
    /// exact maximum back-degree.
    pub fn new(g: &Graph, seq: Vec<usize>) -> Result<Self> {
        if seq.len() != g.n() {
            return Err(Error::InvalidInput(format!(
                "ordering has {} entries for a graph on {} vertices",
                seq.len(),
                g.n()
            )));
        }
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in seq.iter().enumerate() {
            if v >= g.n() || pos[v] != usize::MAX {
                return Err(Error::InvalidInput(
                    "ordering is not a permutation of the vertex set".into(),
                ));
            }
            pos[v] = i;
        }
        let back_degree_bound = (0..g.n())
            .map(|v| g.neighbours(v).iter().filter(|&&w| pos[w] < pos[v]).count())
            .max()
            .unwrap_or(0);
        Ok(VertexOrder {
            seq,
            pos,
            back_degree_bound,
        })
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// Position of vertex `v` in the sequence.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn back_degree_bound(&self) -> usize {
        self.back_degree_bound
    }

    /// Neighbours of `v` that appear before `v` in this order.
    pub fn earlier_neighbours(&self, g: &Graph, v: usize) -> Vec<usize> {
        g.neighbours(v)
            .iter()
            .copied()
            .filter(|&w| self.pos[w] < self.pos[v])
            .collect()
    }
}

/// Exact degeneracy and a witnessing ordering, by repeated minimum-degree
/// peeling. Among minimum-degree vertices the smallest id is peeled first,
/// so the result is deterministic. In the returned order every vertex has
/// at most `degeneracy` earlier neighbours.
pub fn degeneracy_ordering(g: &Graph) -> (VertexOrder, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removal = Vec::with_capacity(n);
    let mut degeneracy = 0;
    while let Some(&(d, v)) = queue.iter().next() {
        queue.remove(&(d, v));
        alive[v] = false;
        degeneracy = degeneracy.max(d);
        removal.push(v);
        for &w in g.neighbours(v) {
            if alive[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    removal.reverse();
    let order = VertexOrder::new(g, removal).expect("peeling yields a permutation");
    debug_assert!(order.back_degree_bound() <= degeneracy);
    (order, degeneracy)
}

/// Orients every edge from its earlier endpoint to its later endpoint in
/// `o` and returns the in-neighbour lists. The in-degree of each vertex is
/// then its back-degree, at most `o.back_degree_bound()`.
pub fn orient_acyclic(g: &Graph, o: &VertexOrder) -> Result<Vec<Vec<usize>>> {
    if o.seq().len() != g.n() {
        return Err(Error::InvalidInput(
            "ordering does not match graph size".into(),
        ));
    }
    let mut in_nbrs = vec![Vec::new(); g.n()];
    for (u, v) in g.edges() {
        let (src, dst) = if o.position(u) < o.position(v) {
            (u, v)
        } else {
            (v, u)
        };
        in_nbrs[dst].push(src);
    }
    for l in &mut in_nbrs {
        l.sort_unstable();
    }
    Ok(in_nbrs)
}

/// Greedy proper vertex colouring along `o`: each vertex takes the smallest
/// colour unused by its earlier neighbours. Uses at most
/// `o.back_degree_bound() + 1` colours, numbered from 0.
pub fn greedy_proper_colouring(g: &Graph, o: &VertexOrder) -> Vec<usize> {
    let mut colour = vec![usize::MAX; g.n()];
    for &v in o.seq() {
        let mut taken: Vec<usize> = g
            .neighbours(v)
            .iter()
            .filter(|&&w| colour[w] != usize::MAX && o.position(w) < o.position(v))
            .map(|&w| colour[w])
            .collect();
        taken.sort_unstable();
        taken.dedup();
        let mut c = 0;
        for t in taken {
            if t == c {
                c += 1;
            } else if t > c {
                break;
            }
        }
        colour[v] = c;
    }
    colour
}

/// Random graph of degeneracy exactly `d` (for `n > d`): vertex `j` attaches
/// to `min(j, d)` distinct uniformly chosen earlier vertices, so the natural
/// order witnesses back-degree `d` and the first `d+1` vertices form a
/// clique. Deterministic in `seed`.
pub fn random_degenerate(n: usize, d: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for j in 1..n {
        let take = j.min(d);
        let mut earlier: Vec<usize> = (0..j).collect();
        earlier.shuffle(&mut rng);
        for &u in earlier.iter().take(take) {
            g.insert_edge(u, j);
        }
    }
    g
}

/// Erdős–Rényi style random graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_validates() {
        assert!(Graph::from_edges(3, &[(0, 1), (1, 2)]).is_ok());
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(5, &[(3, 4), (0, 4), (0, 2)]).unwrap();
        assert_eq!(g.neighbours(4), &[0, 3]);
        assert_eq!(g.neighbours(0), &[2, 4]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edge_vec(), vec![(0, 2), (0, 4), (3, 4)]);
    }

    #[test]
    fn degeneracy_of_standard_graphs() {
        // Any forest is 1-degenerate.
        let (_, d) = degeneracy_ordering(&Graph::path(7));
        assert_eq!(d, 1);
        // Cycles are 2-degenerate, not 1-degenerate.
        let (_, d) = degeneracy_ordering(&Graph::cycle(6));
        assert_eq!(d, 2);
        // Complete graph.
        let (_, d) = degeneracy_ordering(&Graph::complete(5));
        assert_eq!(d, 4);
    }

    #[test]
    fn degeneracy_order_bounds_back_degree() {
        for seed in 0..20 {
            let g = random_graph(40, 0.2, seed);
            let (o, d) = degeneracy_ordering(&g);
            assert_eq!(o.back_degree_bound(), d, "peeling bound is exact");
            for v in 0..g.n() {
                assert!(o.earlier_neighbours(&g, v).len() <= d);
            }
            // Every suffix of the order induces a subgraph of min degree <= d.
            let seq = o.seq();
            for start in (0..g.n()).step_by(7) {
                let sub = g.induced(&seq[start..]);
                if sub.n() > 0 {
                    let min_deg = (0..sub.n()).map(|v| sub.degree(v)).min().unwrap();
                    assert!(min_deg <= d);
                }
            }
        }
    }

    #[test]
    fn orientation_in_degrees() {
        let g = Graph::path(4);
        let o = VertexOrder::new(&g, vec![0, 1, 2, 3]).unwrap();
        let inn = orient_acyclic(&g, &o).unwrap();
        assert!(inn.iter().all(|l| l.len() <= 1));

        let k3 = Graph::complete(3);
        let o = VertexOrder::new(&k3, vec![0, 1, 2]).unwrap();
        let inn = orient_acyclic(&k3, &o).unwrap();
        let mut degs: Vec<usize> = inn.iter().map(Vec::len).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![0, 1, 2]);

        let empty = Graph::new(4);
        let o = VertexOrder::new(&empty, vec![2, 0, 3, 1]).unwrap();
        assert!(orient_acyclic(&empty, &o)
            .unwrap()
            .iter()
            .all(Vec::is_empty));
    }

    #[test]
    fn vertex_order_rejects_non_permutations() {
        let g = Graph::path(3);
        assert!(VertexOrder::new(&g, vec![0, 1]).is_err());
        assert!(VertexOrder::new(&g, vec![0, 1, 1]).is_err());
        assert!(VertexOrder::new(&g, vec![0, 1, 3]).is_err());
    }

    #[test]
    fn greedy_colouring_bounds() {
        let forest = Graph::path(9);
        let (o, _) = degeneracy_ordering(&forest);
        let c = greedy_proper_colouring(&forest, &o);
        assert!(c.iter().all(|&x| x <= 1), "forests need at most 2 colours");

        let k4 = Graph::complete(4);
        let (o, _) = degeneracy_ordering(&k4);
        let c = greedy_proper_colouring(&k4, &o);
        let mut used: Vec<usize> = c.clone();
        used.sort_unstable();
        used.dedup();
        assert_eq!(used.len(), 4);

        let c5 = Graph::cycle(5);
        let (o, d) = degeneracy_ordering(&c5);
        let c = greedy_proper_colouring(&c5, &o);
        assert!(c.iter().all(|&x| x <= d));
    }

    #[test]
    fn greedy_colouring_is_proper_on_random_graphs() {
        for seed in 0..20 {
            let g = random_graph(30, 0.3, seed);
            let (o, _) = degeneracy_ordering(&g);
            let c = greedy_proper_colouring(&g, &o);
            for (u, v) in g.edges() {
                assert_ne!(c[u], c[v], "edge {u}-{v} monochromatic");
            }
        }
    }

    #[test]
    fn random_degenerate_has_exact_degeneracy() {
        for (n, d, seed) in [(30, 2, 1u64), (50, 3, 2), (40, 4, 3)] {
            let g = random_degenerate(n, d, seed);
            let (_, got) = degeneracy_ordering(&g);
            assert_eq!(got, d);
            assert_eq!(g.edge_count(), (0..n).map(|j| j.min(d)).sum::<usize>());
        }
    }

    #[test]
    fn bfs_and_components() {
        let mut g = Graph::path(4);
        g.add_edge(0, 3).unwrap(); // C4
        let d = g.bfs_distances(0, None);
        assert_eq!(d, vec![0, 1, 2, 1]);

        let two = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        let comps = two.components();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}
