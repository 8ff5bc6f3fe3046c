//! The product host: third power of a spectral expander, with every vertex
//! blown up to a clique.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::{graph_power, strong_product};
use crate::spectral::{random_regular_lambda_accepted, second_eigenvalue, SpectralProfile};

/// `H^3 ⊠ K_R` together with the base expander and its bookkeeping. The
/// clique block of base vertex `v` occupies ids `v*R .. v*R + R`.
#[derive(Clone, Debug)]
pub struct PartitionedHost {
    /// The base graph `H`.
    pub base: Graph,
    /// `H^3`.
    pub base_cubed: Graph,
    /// `H^3 ⊠ K_R`, the graph that gets coloured.
    pub graph: Graph,
    /// Clique block size.
    pub r: usize,
    /// Target monochromatic clique size inside each block.
    pub t: usize,
    pub profile: SpectralProfile,
    /// Pairing attempts spent generating `H`.
    pub attempts: u64,
    pub regenerations: u32,
}

impl PartitionedHost {
    pub fn base_n(&self) -> usize {
        self.base.n()
    }

    /// The clique block `A(v)` of a base vertex.
    pub fn block(&self, v: usize) -> Vec<usize> {
        (v * self.r..(v + 1) * self.r).collect()
    }

    /// Assembles the host from an explicit base graph (must be regular).
    pub fn from_base(base: Graph, t: usize, r: usize) -> Result<Self> {
        if r < t || t < 1 {
            return Err(Error::InvalidInput(format!(
                "need R >= t >= 1, got R = {r}, t = {t}"
            )));
        }
        let profile = second_eigenvalue(&base)?;
        let base_cubed = graph_power(&base, 3);
        let graph = strong_product(&base_cubed, r);
        let host = PartitionedHost {
            base,
            base_cubed,
            graph,
            r,
            t,
            profile,
            attempts: 0,
            regenerations: 0,
        };
        host.assert_degree_bound();
        Ok(host)
    }

    fn assert_degree_bound(&self) {
        let d = self.profile.d;
        let bound = d * d * d * self.r + self.r - 1;
        assert!(
            self.graph.max_degree() <= bound,
            "host degree {} exceeds D^3 R + R - 1 = {bound}",
            self.graph.max_degree()
        );
    }
}

/// Builds the host from a fresh lambda-accepted random `D`-regular graph on
/// `N` vertices: `G = H^3 ⊠ K_R`. Requires `R >= t >= 1` and `N * D` even.
pub fn build_host(n: usize, d: usize, t: usize, r: usize, seed: u64) -> Result<PartitionedHost> {
    if r < t || t < 1 {
        return Err(Error::InvalidInput(format!(
            "need R >= t >= 1, got R = {r}, t = {t}"
        )));
    }
    let accepted = random_regular_lambda_accepted(n, d, seed)?;
    let base_cubed = graph_power(&accepted.graph, 3);
    let graph = strong_product(&base_cubed, r);
    let host = PartitionedHost {
        base: accepted.graph,
        base_cubed,
        graph,
        r,
        t,
        profile: accepted.profile,
        attempts: accepted.attempts,
        regenerations: accepted.regenerations,
    };
    host.assert_degree_bound();
    Ok(host)
}
