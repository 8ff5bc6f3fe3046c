//! Red/blue edge colourings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Colour {
    Red,
    Blue,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Colour::Red => 'R',
            Colour::Blue => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Colour> {
        match c {
            'R' | 'r' => Some(Colour::Red),
            'B' | 'b' => Some(Colour::Blue),
            _ => None,
        }
    }
}

impl std::fmt::Display for Colour {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A total map from the edges of a graph to {Red, Blue}. Edges are stored
/// once in canonical `u < v` order; lookups are by binary search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring {
    n: usize,
    edges: Vec<(usize, usize)>,
    colours: Vec<Colour>,
}

impl EdgeColouring {
    /// Colours every edge of `g` with `c`.
    pub fn constant(g: &Graph, c: Colour) -> Self {
        let edges = g.edge_vec();
        let colours = vec![c; edges.len()];
        EdgeColouring {
            n: g.n(),
            edges,
            colours,
        }
    }

    pub fn all_red(g: &Graph) -> Self {
        Self::constant(g, Colour::Red)
    }

    pub fn all_blue(g: &Graph) -> Self {
        Self::constant(g, Colour::Blue)
    }

    /// Independent fair coin per edge, deterministic in `seed`.
    pub fn random(g: &Graph, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = g.edge_vec();
        let colours = edges
            .iter()
            .map(|_| {
                if rng.random_bool(0.5) {
                    Colour::Red
                } else {
                    Colour::Blue
                }
            })
            .collect();
        EdgeColouring {
            n: g.n(),
            edges,
            colours,
        }
    }

    /// Colours every edge of `g` by a rule.
    pub fn from_rule(g: &Graph, mut rule: impl FnMut(usize, usize) -> Colour) -> Self {
        let edges = g.edge_vec();
        let colours = edges.iter().map(|&(u, v)| rule(u, v)).collect();
        EdgeColouring {
            n: g.n(),
            edges,
            colours,
        }
    }

    /// Builds from an explicit edge/colour list; edges may be given in any
    /// orientation but must be distinct.
    pub fn from_entries(n: usize, entries: &[(usize, usize, Colour)]) -> Result<Self> {
        let mut list: Vec<((usize, usize), Colour)> = Vec::with_capacity(entries.len());
        for &(u, v, c) in entries {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {u} {v} out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            list.push(((u.min(v), u.max(v)), c));
        }
        list.sort_by_key(|&(e, _)| e);
        for w in list.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidInput(format!(
                    "duplicate edge {} {}",
                    w[0].0 .0, w[0].0 .1
                )));
            }
        }
        let edges = list.iter().map(|&(e, _)| e).collect();
        let colours = list.iter().map(|&(_, c)| c).collect();
        Ok(EdgeColouring { n, edges, colours })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Colour of `uv`, or `None` if the colouring has no such edge.
    pub fn get(&self, u: usize, v: usize) -> Option<Colour> {
        let key = (u.min(v), u.max(v));
        self.edges
            .binary_search(&key)
            .ok()
            .map(|i| self.colours[i])
    }

    pub fn set(&mut self, u: usize, v: usize, c: Colour) -> Result<()> {
        let key = (u.min(v), u.max(v));
        match self.edges.binary_search(&key) {
            Ok(i) => {
                self.colours[i] = c;
                Ok(())
            }
            Err(_) => Err(Error::InvalidInput(format!(
                "no edge {u} {v} in the colouring"
            ))),
        }
    }

    /// Is `uv` present and coloured `c`?
    pub fn is(&self, u: usize, v: usize, c: Colour) -> bool {
        self.get(u, v) == Some(c)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        self.edges
            .iter()
            .zip(&self.colours)
            .map(|(&(u, v), &c)| (u, v, c))
    }

    /// True iff this colouring is total on exactly the edges of `g`.
    pub fn is_total_on(&self, g: &Graph) -> bool {
        self.n == g.n() && self.edges.len() == g.edge_count() && {
            let mut ours = self.edges.iter().copied();
            g.edges().all(|e| ours.next() == Some(e))
        }
    }

    /// The spanning subgraph formed by the edges of colour `c`.
    pub fn class_graph(&self, c: Colour) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .entries()
            .filter(|&(_, _, col)| col == c)
            .map(|(u, v, _)| (u, v))
            .collect();
        Graph::from_edges(self.n, &edges).expect("colouring edges are simple")
    }

    pub fn count(&self, c: Colour) -> usize {
        self.colours.iter().filter(|&&x| x == c).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;

    #[test]
    fn constant_and_lookup() {
        let g = Graph::cycle(5);
        let psi = EdgeColouring::all_red(&g);
        assert!(psi.is_total_on(&g));
        assert_eq!(psi.get(0, 1), Some(Colour::Red));
        assert_eq!(psi.get(4, 0), Some(Colour::Red)); // orientation-insensitive
        assert_eq!(psi.get(0, 2), None);
        assert_eq!(psi.count(Colour::Red), 5);
    }

    #[test]
    fn random_is_deterministic_and_total() {
        let g = random_graph(20, 0.3, 4);
        let a = EdgeColouring::random(&g, 11);
        let b = EdgeColouring::random(&g, 11);
        assert_eq!(a, b);
        assert!(a.is_total_on(&g));
        assert_ne!(a, EdgeColouring::random(&g, 12));
    }

    #[test]
    fn class_graphs_partition_edges() {
        let g = random_graph(15, 0.4, 5);
        let psi = EdgeColouring::random(&g, 6);
        let red = psi.class_graph(Colour::Red);
        let blue = psi.class_graph(Colour::Blue);
        assert_eq!(red.edge_count() + blue.edge_count(), g.edge_count());
        for (u, v) in red.edges() {
            assert!(psi.is(u, v, Colour::Red));
        }
    }

    #[test]
    fn from_entries_rejects_duplicates() {
        assert!(EdgeColouring::from_entries(
            3,
            &[(0, 1, Colour::Red), (1, 0, Colour::Blue)]
        )
        .is_err());
        assert!(EdgeColouring::from_entries(3, &[(0, 3, Colour::Red)]).is_err());
        let ok =
            EdgeColouring::from_entries(3, &[(2, 1, Colour::Blue), (0, 1, Colour::Red)]).unwrap();
        assert_eq!(ok.get(1, 2), Some(Colour::Blue));
    }

    #[test]
    fn set_updates_existing_edges_only() {
        let g = Graph::path(3);
        let mut psi = EdgeColouring::all_blue(&g);
        psi.set(1, 0, Colour::Red).unwrap();
        assert_eq!(psi.get(0, 1), Some(Colour::Red));
        assert!(psi.set(0, 2, Colour::Red).is_err());
    }
}
