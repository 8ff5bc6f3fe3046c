//! Random regular graphs and spectral expansion certificates.
//!
//! An `(N, D, lambda)`-graph is a `D`-regular graph on `N` vertices whose
//! adjacency eigenvalues other than the top one all have absolute value at
//! most `lambda`. Small `lambda` yields the expander mixing bound
//! `|e(S,T) - D|S||T|/N| <= lambda * sqrt(|S||T|(1-|S|/N)(1-|T|/N))`,
//! which is what the embedding machinery consumes.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::random_tree;
use crate::verify;

/// Certified spectral data of a regular graph.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpectralProfile {
    /// Vertex count.
    pub n: usize,
    /// Regular degree.
    pub d: usize,
    /// Largest absolute value among non-top adjacency eigenvalues.
    pub lambda: f64,
}

impl SpectralProfile {
    /// The classical random-regular threshold `2 * sqrt(D)`.
    pub fn lambda_threshold(d: usize) -> f64 {
        2.0 * (d as f64).sqrt()
    }

    pub fn meets_threshold(&self) -> bool {
        self.lambda <= Self::lambda_threshold(self.d)
    }
}

/// Dense eigendecomposition is used up to this size; beyond it a power
/// iteration on the deflated adjacency operator takes over.
const DENSE_EIGEN_LIMIT: usize = 5000;

/// Cap on pairing-model attempts.
const MAX_PAIRING_ATTEMPTS: u64 = 1_000_000;

/// Uniform random simple `d`-regular graph on `n` vertices via the pairing
/// (configuration) model. Stub pairs that would create a loop or a repeated
/// edge are redrawn; if the remaining stubs admit no suitable pair the
/// attempt restarts. Deterministic in `seed`. Returns the graph and the
/// number of pairing attempts consumed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<(Graph, u64)> {
    if d < 3 {
        return Err(Error::InvalidInput(format!("degree must be >= 3, got {d}")));
    }
    if d >= n {
        return Err(Error::InvalidInput(format!(
            "degree {d} must be smaller than vertex count {n}"
        )));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(Error::DegreeParity { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0u64;
    loop {
        attempts += 1;
        if attempts > MAX_PAIRING_ATTEMPTS {
            return Err(Error::GenerationFailed {
                attempts: attempts - 1,
            });
        }
        if let Some(g) = try_pairing(n, d, &mut rng) {
            debug_assert_eq!(g.regular_degree(), Some(d));
            return Ok((g, attempts));
        }
    }
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * d / 2);
    while stubs.len() >= 2 {
        let mut redraws = 0;
        loop {
            let i = rng.random_range(0..stubs.len());
            let j = rng.random_range(0..stubs.len());
            let (u, v) = (stubs[i], stubs[j]);
            if i != j && u != v && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
                edges.push((u.min(v), u.max(v)));
                stubs.swap_remove(i.max(j));
                stubs.swap_remove(i.min(j));
                break;
            }
            redraws += 1;
            if redraws > 50 {
                // Check whether any suitable pair remains; restart if stuck.
                let mut suitable = Vec::new();
                for a in 0..stubs.len() {
                    for b in (a + 1)..stubs.len() {
                        let (u, v) = (stubs[a], stubs[b]);
                        if u != v && !adj[u].contains(&v) {
                            suitable.push((a, b));
                        }
                    }
                }
                if suitable.is_empty() {
                    return None;
                }
                let (a, b) = suitable[rng.random_range(0..suitable.len())];
                let (u, v) = (stubs[a], stubs[b]);
                adj[u].push(v);
                adj[v].push(u);
                edges.push((u.min(v), u.max(v)));
                stubs.swap_remove(b);
                stubs.swap_remove(a);
                break;
            }
        }
    }
    Some(Graph::from_edges(n, &edges).expect("pairing produced a simple graph"))
}

/// Result of a lambda-gated generation run.
#[derive(Clone, Debug)]
pub struct AcceptedExpander {
    pub graph: Graph,
    pub profile: SpectralProfile,
    /// Total pairing attempts over all regenerations.
    pub attempts: u64,
    pub regenerations: u32,
}

const MAX_REGENERATIONS: u32 = 50;

/// Generates random `d`-regular graphs with fresh derived seeds until one
/// satisfies `lambda <= 2 sqrt(d)`, capping at 50 regenerations.
pub fn random_regular_lambda_accepted(n: usize, d: usize, seed: u64) -> Result<AcceptedExpander> {
    let threshold = SpectralProfile::lambda_threshold(d);
    let mut attempts = 0u64;
    for round in 0..MAX_REGENERATIONS {
        let round_seed = derive_seed(seed, round as u64);
        let (graph, a) = random_regular(n, d, round_seed)?;
        attempts += a;
        let profile = second_eigenvalue(&graph)?;
        if profile.lambda <= threshold {
            return Ok(AcceptedExpander {
                graph,
                profile,
                attempts,
                regenerations: round,
            });
        }
    }
    Err(Error::LambdaRejected {
        threshold,
        regenerations: MAX_REGENERATIONS,
    })
}

/// Derives independent seed streams (splitmix64 step).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(stream.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Computes the spectral profile of a regular graph: `lambda` is the largest
/// absolute value among adjacency eigenvalues after discarding one copy of
/// the top eigenvalue. Dense symmetric eigendecomposition up to 5000
/// vertices (absolute error well under 1e-6), power iteration beyond.
pub fn second_eigenvalue(g: &Graph) -> Result<SpectralProfile> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidInput("graph is not regular".into()))?;
    let n = g.n();
    if n == 1 {
        return Ok(SpectralProfile { n, d, lambda: 0.0 });
    }
    let lambda = if n <= DENSE_EIGEN_LIMIT {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for (u, v) in g.edges() {
            m[(u, v)] = 1.0;
            m[(v, u)] = 1.0;
        }
        let mut eigen: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eigen.sort_by(|a, b| b.partial_cmp(a).unwrap());
        debug_assert!(
            (eigen[0] - d as f64).abs() <= 1e-6,
            "top eigenvalue {} differs from degree {d}",
            eigen[0]
        );
        eigen[1..]
            .iter()
            .fold(0.0f64, |acc, &mu| acc.max(mu.abs()))
    } else {
        deflated_power_iteration(g, d)
    };
    Ok(SpectralProfile { n, d, lambda })
}

/// Power iteration on `A - (d/n) J`, which zeroes the all-ones direction of
/// a regular graph and leaves the rest of the spectrum intact. Tolerance
/// around 1e-6 on the dominant magnitude.
fn deflated_power_iteration(g: &Graph, d: usize) -> f64 {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    normalize(&mut x);
    let mut lambda = 0.0f64;
    for _ in 0..5000 {
        let mean: f64 = x.iter().sum::<f64>() / n as f64;
        let y: Vec<f64> = (0..n)
            .map(|u| {
                let acc: f64 = g.neighbours(u).iter().map(|&w| x[w]).sum();
                acc - d as f64 * mean
            })
            .collect();
        let mut y = y;
        let norm = normalize(&mut y);
        if (norm - lambda).abs() <= 1e-9 * norm.max(1.0) {
            return norm;
        }
        lambda = norm;
        x = y;
    }
    lambda
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    norm
}

/// One evaluation of the expander mixing inequality.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MixingReport {
    /// `e(S, T)`, counting edges inside `S ∩ T` twice.
    pub edge_count: f64,
    /// `D |S| |T| / N`.
    pub expectation: f64,
    /// `lambda * sqrt(|S||T| (1 - |S|/N)(1 - |T|/N))`.
    pub bound: f64,
    pub deviation: f64,
    /// True iff `|deviation| > bound + 1e-9`.
    pub violation: bool,
}

const MIXING_TOLERANCE: f64 = 1e-9;

/// Precomputed adjacency bitsets for repeated mixing checks on one graph.
pub struct MixingChecker<'a> {
    graph: &'a Graph,
    profile: SpectralProfile,
    rows: Vec<BitSet>,
}

impl<'a> MixingChecker<'a> {
    pub fn new(graph: &'a Graph, profile: SpectralProfile) -> Self {
        MixingChecker {
            graph,
            profile,
            rows: graph.adjacency_bitsets(),
        }
    }

    pub fn check(&self, s: &[usize], t: &[usize]) -> MixingReport {
        let n = self.graph.n() as f64;
        let t_set = BitSet::from_slice(self.graph.n(), t);
        let mut e = 0usize;
        for &u in s {
            e += self.rows[u].intersection_count(&t_set);
        }
        let (s_len, t_len) = (s.len() as f64, t.len() as f64);
        let expectation = self.profile.d as f64 * s_len * t_len / n;
        let bound = self.profile.lambda
            * (s_len * t_len * (1.0 - s_len / n) * (1.0 - t_len / n))
                .max(0.0)
                .sqrt();
        let deviation = e as f64 - expectation;
        MixingReport {
            edge_count: e as f64,
            expectation,
            bound,
            deviation,
            violation: deviation.abs() > bound + MIXING_TOLERANCE,
        }
    }
}

/// Checks the mixing inequality for one pair of vertex sets.
pub fn mixing_check(
    g: &Graph,
    profile: SpectralProfile,
    s: &[usize],
    t: &[usize],
) -> MixingReport {
    MixingChecker::new(g, profile).check(s, t)
}

/// Analytic part of the expander certificate: at the threshold size
/// `2N / sqrt(D)` the inequality `lambda * sqrt(|S||T|) < D |S||T| / N`
/// reduces to `lambda < 2 sqrt(D)`, and it only gets easier for larger sets.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AnalyticDisjointness {
    pub threshold_size: f64,
    /// `lambda * threshold_size`.
    pub lhs: f64,
    /// `D * threshold_size^2 / N`.
    pub rhs: f64,
    pub pass: bool,
}

pub fn analytic_disjointness_check(profile: SpectralProfile) -> AnalyticDisjointness {
    let threshold_size = 2.0 * profile.n as f64 / (profile.d as f64).sqrt();
    let lhs = profile.lambda * threshold_size;
    let rhs = profile.d as f64 * threshold_size * threshold_size / profile.n as f64;
    AnalyticDisjointness {
        threshold_size,
        lhs,
        rhs,
        pass: lhs < rhs,
    }
}

/// One empirical universality sample: a random induced subgraph of size
/// `ceil(eps * N)` must contain a sampled tree with `n` vertices and maximum
/// degree `d`.
#[derive(Clone, Debug, Serialize)]
pub struct TreeSample {
    pub sample_index: usize,
    pub subgraph_size: usize,
    pub tree_vertices: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpanderCertificate {
    pub analytic: AnalyticDisjointness,
    pub samples: Vec<TreeSample>,
    pub all_pass: bool,
}

/// Certifies expansion behaviour of `g`: analytically checks the mixing
/// consequence for disjoint sets of size at least `2N / sqrt(D)`, and
/// empirically embeds `samples` random bounded-degree trees into random
/// induced subgraphs on `ceil(eps * N)` vertices. Every found embedding is
/// validated independently.
pub fn expander_certificate(
    g: &Graph,
    profile: SpectralProfile,
    n: usize,
    d: usize,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<ExpanderCertificate> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidInput(format!("eps must lie in (0, 1], got {eps}")));
    }
    let big_n = g.n();
    if eps * (big_n as f64) < n as f64 {
        return Err(Error::InvalidInput(format!(
            "eps * N = {} is below the tree size n = {n}",
            eps * big_n as f64
        )));
    }
    let subgraph_size = ((eps * big_n as f64).ceil() as usize).min(big_n);
    let analytic = analytic_disjointness_check(profile);
    let mut out = Vec::with_capacity(samples);
    let mut all_pass = analytic.pass;
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
        let chosen = rand::seq::index::sample(&mut rng, big_n, subgraph_size).into_vec();
        let mut chosen: Vec<usize> = chosen;
        chosen.sort_unstable();
        let host = g.induced(&chosen);
        let tree = random_tree(n, d, derive_seed(seed, 0x1000 + i as u64))?;
        let pass = match crate::embedding::embed_tree(&host, &tree, d)? {
            Some(embedding) => {
                verify::validate_embedding(&tree.to_graph(), &host, &embedding, None).ok
            }
            None => false,
        };
        all_pass &= pass;
        out.push(TreeSample {
            sample_index: i,
            subgraph_size,
            tree_vertices: n,
            pass,
        });
    }
    Ok(ExpanderCertificate {
        analytic,
        samples: out,
        all_pass,
    })
}

/// The classical sufficient constants for robust tree universality of an
/// `(N, D, 2 sqrt(D))`-graph: `D > 100 d^2 / eps^4` and `N > 10 d^2 n / eps^2`.
/// Reported, never enforced; desk-scale runs check universality empirically.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FpFeasibility {
    pub min_degree_exclusive: f64,
    pub min_vertices_exclusive: f64,
}

pub fn fp_feasibility(d: usize, n: usize, eps: f64) -> FpFeasibility {
    let d = d as f64;
    FpFeasibility {
        min_degree_exclusive: 100.0 * d * d / eps.powi(4),
        min_vertices_exclusive: 10.0 * d * d * n as f64 / (eps * eps),
    }
}
