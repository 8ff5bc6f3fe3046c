//! Constructive Lovász Local Lemma lifting of a pattern into a dense
//! blowup subgraph, Moser–Tardos style.
//!
//! If `F'` keeps at least `(1 - 1/(8*Delta)) t^2` of the `t^2` edges of every
//! super-edge of the blowup `F(t)`, then choosing one representative per
//! block uniformly at random and resampling the endpoints of violated
//! super-edges terminates in an embedding of `F`. The failure event of one
//! super-edge has probability at most `p = 1/(8*Delta)` and depends on at
//! most `2*Delta` others, so `4 p (2*Delta) <= 1` and the local lemma
//! applies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const RESAMPLE_CAP: u64 = 1_000_000;

/// Statistics of a completed lift.
#[derive(Clone, Copy, Debug)]
pub struct LiftStats {
    pub resamples: u64,
}

/// Embeds `f` into `f_prime`, a spanning subgraph of the blowup `f(t)` with
/// block `I(v) = {v*t, .., v*t + t - 1}`. Picks one vertex per block
/// uniformly (deterministic in `seed`) and resamples both endpoints of the
/// first violated super-edge until none remains.
///
/// With `check_density` the per-super-edge density precondition
/// `>= (1 - 1/(8*Delta)) t^2` is verified up front; disabling it permits
/// honest failure reports (resample cap) on under-dense inputs.
pub fn lll_lift(
    f: &Graph,
    f_prime: &Graph,
    t: usize,
    seed: u64,
    check_density: bool,
) -> Result<(Embedding, LiftStats)> {
    if t < 1 {
        return Err(Error::InvalidInput("blowup factor t must be >= 1".into()));
    }
    if f_prime.n() != f.n() * t {
        return Err(Error::InvalidInput(format!(
            "lift target has {} vertices, expected {} * {t}",
            f_prime.n(),
            f.n()
        )));
    }
    // F' must live inside the blowup: cross edges along F-edges only.
    for (a, b) in f_prime.edges() {
        let (u, v) = (a / t, b / t);
        if u == v || !f.has_edge(u, v) {
            return Err(Error::InvalidInput(format!(
                "edge {a}-{b} of the lift target is not a blowup edge"
            )));
        }
    }
    let delta = f.max_degree();
    let f_edges = f.edge_vec();
    if f_edges.is_empty() {
        let image = (0..f.n()).map(|v| v * t).collect();
        return Ok((Embedding::new(image), LiftStats { resamples: 0 }));
    }

    // Local-lemma instantiation, recomputed at every invocation:
    // p = 1/(8*Delta), dependency degree <= 2*Delta, so 4 * p * (2*Delta) = 1.
    let (p_num, p_den) = (1, 8 * delta);
    let dependency_degree = 2 * delta;
    assert!(4 * p_num * dependency_degree <= p_den);

    if check_density {
        let threshold = (1.0 - 1.0 / (8.0 * delta as f64)) * (t * t) as f64;
        for &(u, v) in &f_edges {
            let mut count = 0usize;
            for i in 0..t {
                for j in 0..t {
                    if f_prime.has_edge(u * t + i, v * t + j) {
                        count += 1;
                    }
                }
            }
            if (count as f64) < threshold - 1e-9 {
                return Err(Error::Precondition(format!(
                    "super-edge {u}-{v} has {count} < {threshold} edges in the lift target"
                )));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut choice: Vec<usize> = (0..f.n()).map(|_| rng.random_range(0..t)).collect();
    let violated = |choice: &[usize], (u, v): (usize, usize)| {
        !f_prime.has_edge(u * t + choice[u], v * t + choice[v])
    };
    let mut resamples = 0u64;
    loop {
        match f_edges.iter().copied().find(|&e| violated(&choice, e)) {
            None => {
                let image = (0..f.n()).map(|v| v * t + choice[v]).collect();
                return Ok((Embedding::new(image), LiftStats { resamples }));
            }
            Some((u, v)) => {
                resamples += 1;
                if resamples > RESAMPLE_CAP {
                    let bad = f_edges
                        .iter()
                        .filter(|&&e| violated(&choice, e))
                        .count();
                    return Err(Error::ResampleCapExceeded {
                        resamples: resamples - 1,
                        violated: bad,
                    });
                }
                choice[u] = rng.random_range(0..t);
                choice[v] = rng.random_range(0..t);
            }
        }
    }
}
