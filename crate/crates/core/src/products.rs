//! Graph products: strong product with a clique, blowups, and powers.
//!
//! Product vertices use a fixed row-major encoding so that embeddings and
//! file formats are stable: `(base, slot)` becomes `base * k + slot`.

use crate::graph::Graph;

/// A vertex of `G ⊠ K_k` or of a blowup: a base vertex of the left factor
/// and a slot in `0..k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductVertex {
    pub base: usize,
    pub slot: usize,
}

impl ProductVertex {
    pub fn encode(&self, k: usize) -> usize {
        self.base * k + self.slot
    }

    pub fn decode(id: usize, k: usize) -> Self {
        ProductVertex {
            base: id / k,
            slot: id % k,
        }
    }
}

/// Strong product `G ⊠ K_k`: each vertex becomes a `k`-clique and each edge a
/// complete bipartite graph between the corresponding cliques. `(v1, u1)` and
/// `(v2, u2)` are adjacent iff `v1 = v2, u1 != u2`, or `v1 v2` is an edge.
/// The edge count is `k^2 |E(G)| + |V(G)| k(k-1)/2`.
pub fn strong_product(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "clique factor must have at least one vertex");
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n * k];
    for base in 0..n {
        // Clique inside each block.
        for s1 in 0..k {
            let id = base * k + s1;
            for s2 in 0..k {
                if s1 != s2 {
                    adj[id].push(base * k + s2);
                }
            }
        }
        // Complete bipartite graphs along base edges.
        for &nb in g.neighbours(base) {
            for s1 in 0..k {
                let id = base * k + s1;
                for s2 in 0..k {
                    adj[id].push(nb * k + s2);
                }
            }
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    graph_from_sorted_adj(adj)
}

/// Blowup `F(t)`: each vertex becomes an independent set `I(v)` of size `t`,
/// each edge a complete bipartite graph between the corresponding sets.
/// The edge count is `t^2 |E(F)|`.
pub fn blowup(f: &Graph, t: usize) -> Graph {
    assert!(t >= 1, "blowup parts must be nonempty");
    let n = f.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n * t];
    for base in 0..n {
        for &nb in f.neighbours(base) {
            for s1 in 0..t {
                let id = base * t + s1;
                for s2 in 0..t {
                    adj[id].push(nb * t + s2);
                }
            }
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    graph_from_sorted_adj(adj)
}

/// `p`-th power of `H`: `uv` is an edge iff `0 < dist_H(u, v) <= p`,
/// computed by truncated BFS from each vertex.
pub fn graph_power(h: &Graph, p: usize) -> Graph {
    assert!(p >= 1, "power radius must be >= 1");
    let n = h.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, row) in adj.iter_mut().enumerate() {
        let dist = h.bfs_distances(u, Some(p));
        row.extend(
            dist.iter()
                .enumerate()
                .filter(|&(v, &d)| v != u && d <= p)
                .map(|(v, _)| v),
        );
    }
    graph_from_sorted_adj(adj)
}

fn graph_from_sorted_adj(adj: Vec<Vec<usize>>) -> Graph {
    let n = adj.len();
    let mut edges = Vec::new();
    for (u, l) in adj.iter().enumerate() {
        for &v in l {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("product construction yields a simple graph")
}
