//! Edge colourings of degenerate graphs that avoid monochromatic trees.
//!
//! Two constructions. The recursive one splits a `(2^i - 1)`-degenerate
//! graph into two `(2^(i-1) - 1)`-degenerate halves, colours each half
//! recursively, and lets every cross edge inherit the colour of its earlier
//! endpoint; the base case colours a forest by edge depth parity. The
//! monotone one colours an edge by whether a greedy proper vertex colouring
//! increases or decreases along it, which caps monochromatic monotone paths
//! at `d + 1` vertices.

use crate::colouring::{Colour, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::{
    degeneracy_ordering, greedy_proper_colouring, orient_acyclic, Graph, VertexOrder,
};

/// Outcome of [`split_degenerate`]: disjoint covering vertex classes whose
/// induced subgraphs are both `(d/2 - 1)`-degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
}

/// Sequentially assigns each vertex (in order `o`) to the red class if at
/// most `d/2 - 1` of its earlier neighbours are already red, and to the blue
/// class otherwise. Requires `d` even and an ordering with back-degree at
/// most `d - 1`; then the blue case also sees at most `d/2 - 1` earlier blue
/// neighbours, so both classes stay `(d/2 - 1)`-degenerate.
pub fn split_degenerate(g: &Graph, d: usize, o: &VertexOrder) -> Result<SplitResult> {
    if d == 0 || !d.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "split threshold d must be a positive even number, got {d}"
        )));
    }
    if o.back_degree_bound() >= d {
        return Err(Error::Precondition(format!(
            "ordering has back-degree {} > d - 1 = {}",
            o.back_degree_bound(),
            d - 1
        )));
    }
    let in_nbrs = orient_acyclic(g, o)?;
    let mut is_red = vec![false; g.n()];
    let mut assigned = vec![false; g.n()];
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for &v in o.seq() {
        let red_in = in_nbrs[v]
            .iter()
            .filter(|&&u| {
                debug_assert!(assigned[u], "in-neighbours precede v in the order");
                is_red[u]
            })
            .count();
        // "at most d/2 - 1 earlier red neighbours" is the red-class rule.
        if red_in < d / 2 {
            is_red[v] = true;
            red.push(v);
        } else {
            blue.push(v);
        }
        assigned[v] = true;
    }
    red.sort_unstable();
    blue.sort_unstable();
    Ok(SplitResult { red, blue })
}

/// Colours a forest so that no component has a monochromatic path with
/// three edges: each component is rooted at its smallest vertex and an edge
/// takes the parity of its distance to the root (even red, odd blue).
fn colour_forest_by_depth(g: &Graph) -> EdgeColouring {
    let mut depth = vec![0usize; g.n()];
    for comp in g.components() {
        let root = comp[0];
        let dist = g.bfs_distances(root, None);
        for &v in &comp {
            depth[v] = dist[v];
        }
    }
    EdgeColouring::from_rule(g, |u, v| {
        if depth[u].min(depth[v]).is_multiple_of(2) {
            Colour::Red
        } else {
            Colour::Blue
        }
    })
}

/// Recursive colouring of a `(2^i - 1)`-degenerate graph avoiding a
/// monochromatic complete `2^(i+1)`-ary tree of height `2^i`.
///
/// `i = 1`: the graph must be a forest; colour by edge depth parity.
/// `i >= 2`: split with `d = 2^i`, colour both halves with `i - 1`, and
/// colour each cross edge by the class of its earlier endpoint (red if that
/// endpoint is in the red class).
pub fn colour_recursive(g: &Graph, i: u32) -> Result<EdgeColouring> {
    if i < 1 {
        return Err(Error::InvalidInput("recursion depth i must be >= 1".into()));
    }
    let bound = (1usize << i) - 1;
    let (order, degen) = degeneracy_ordering(g);
    if degen > bound {
        return Err(Error::Precondition(format!(
            "graph has degeneracy {degen}, needs at most {bound} for i = {i}"
        )));
    }
    if i == 1 {
        return Ok(colour_forest_by_depth(g));
    }
    let d = 1usize << i;
    let split = split_degenerate(g, d, &order)?;
    let red_sub = g.induced(&split.red);
    let blue_sub = g.induced(&split.blue);
    let red_col = colour_recursive(&red_sub, i - 1)?;
    let blue_col = colour_recursive(&blue_sub, i - 1)?;

    let mut class = vec![false; g.n()]; // true = red class
    for &v in &split.red {
        class[v] = true;
    }
    let mut local = vec![usize::MAX; g.n()];
    for (idx, &v) in split.red.iter().enumerate() {
        local[v] = idx;
    }
    for (idx, &v) in split.blue.iter().enumerate() {
        local[v] = idx;
    }
    Ok(EdgeColouring::from_rule(g, |u, v| {
        match (class[u], class[v]) {
            (true, true) => red_col.get(local[u], local[v]).expect("edge inside red part"),
            (false, false) => blue_col
                .get(local[u], local[v])
                .expect("edge inside blue part"),
            _ => {
                // Cross edge inherits the class of its earlier endpoint.
                let source = if order.position(u) < order.position(v) {
                    u
                } else {
                    v
                };
                if class[source] {
                    Colour::Red
                } else {
                    Colour::Blue
                }
            }
        }
    }))
}

/// Monotone colouring: let `phi` be the greedy proper colouring along `o`;
/// an edge `uv` with `u` earlier is red if `phi(u) < phi(v)` and blue
/// otherwise. Red monotone paths strictly increase under `phi` and blue
/// ones strictly decrease, so either colour's monotone paths have at most
/// `back_degree_bound + 1` vertices.
pub fn colour_monotone(g: &Graph, o: &VertexOrder) -> EdgeColouring {
    let phi = greedy_proper_colouring(g, o);
    EdgeColouring::from_rule(g, |u, v| {
        let (earlier, later) = if o.position(u) < o.position(v) {
            (u, v)
        } else {
            (v, u)
        };
        if phi[earlier] < phi[later] {
            Colour::Red
        } else {
            Colour::Blue
        }
    })
}

/// Longest monochromatic order-increasing path per colour, as vertex
/// counts, by dynamic programming over the acyclic orientation. Linear in
/// the number of edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MonotonePathLengths {
    pub red: usize,
    pub blue: usize,
}

pub fn longest_mono_monotone_path(
    g: &Graph,
    o: &VertexOrder,
    psi: &EdgeColouring,
) -> Result<MonotonePathLengths> {
    if !psi.is_total_on(g) {
        return Err(Error::InvalidInput(
            "colouring is not total on the graph".into(),
        ));
    }
    let in_nbrs = orient_acyclic(g, o)?;
    let mut best = [0usize; 2]; // red, blue
    let mut dp = vec![[1usize; 2]; g.n()];
    for &v in o.seq() {
        for &u in &in_nbrs[v] {
            let c = psi.get(u, v).expect("colouring is total");
            let k = (c == Colour::Blue) as usize;
            dp[v][k] = dp[v][k].max(dp[u][k] + 1);
        }
        best[0] = best[0].max(dp[v][0]);
        best[1] = best[1].max(dp[v][1]);
    }
    Ok(MonotonePathLengths {
        red: if g.n() == 0 { 0 } else { best[0] },
        blue: if g.n() == 0 { 0 } else { best[1] },
    })
}
