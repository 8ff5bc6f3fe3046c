//! End-to-end search for a monochromatic tree-product in a coloured host.
//!
//! Given a colouring of `H^3 ⊠ K_R`, the run either produces a validated
//! `Witness` (a red copy of `T1 ⊠ K_k` or a blue copy of `T2 ⊠ K_k`) or an
//! honest `StepFailure` naming the first stage whose guarantee does not hold
//! at the configured (sub-proof-scale) parameters. Stages, in order:
//!
//! 1. every clique block must contain a monochromatic `K_t`;
//! 2. the majority block colour fixes the working ("blue") side;
//! 3. the part-pair auxiliary colouring is computed at `s = (d + d^2) k`;
//! 4. the truncation of the working tree is searched in the blue auxiliary
//!    graph; success routes through the partitioned chopping embedding;
//! 5. otherwise the dichotomy yields red multipartite parts, matchings
//!    through the base expander build a survivor set covered by all parts,
//!    the other tree embeds among the survivors, partners at alternating
//!    halves give an all-red product copy in the auxiliary graph, and a
//!    local-lemma lift pulls it back into the host.
//!
//! Witnesses are always validated independently before being returned.

use std::collections::HashMap;

use serde::Serialize;

use crate::colouring::{Colour, EdgeColouring};
use crate::constants::{dichotomy_bound, kst_bound};
use crate::dichotomy::{tree_or_multipartite, Dichotomy};
use crate::embedding::{embed_tree, Embedding};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::host::PartitionedHost;
use crate::kss::aux_colouring;
use crate::lll::lll_lift;
use crate::matching::max_bipartite_matching;
use crate::products::strong_product;
use crate::spectral::derive_seed;
use crate::tree::{truncation, RootedTree};
use crate::verify::validate_embedding;

#[derive(Clone, Debug, Serialize)]
pub struct PipelineParams {
    pub k: usize,
    pub d: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageLog {
    pub stage: String,
    pub outcome: String,
}

/// A validated monochromatic copy of `tree ⊠ K_k` in the host graph.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub colour: Colour,
    pub k: usize,
    pub tree: RootedTree,
    pub embedding: Embedding,
    pub step_log: Vec<StageLog>,
}

/// The first stage whose guarantee failed, with diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct StepFailure {
    pub stage: String,
    pub message: String,
    pub step_log: Vec<StageLog>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum PipelineOutcome {
    Witness(Witness),
    StepFailure(StepFailure),
}

impl PipelineOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            PipelineOutcome::Witness(w) => Some(w),
            PipelineOutcome::StepFailure(_) => None,
        }
    }

    pub fn failure_stage(&self) -> Option<&str> {
        match self {
            PipelineOutcome::Witness(_) => None,
            PipelineOutcome::StepFailure(f) => Some(&f.stage),
        }
    }
}

/// Lexicographically least monochromatic `t`-clique among `block`, with its
/// colour. For `t = 1` the convention is a blue singleton.
fn find_mono_clique(
    psi: &EdgeColouring,
    block: &[usize],
    t: usize,
) -> Option<(Colour, Vec<usize>)> {
    if t == 1 {
        return block.first().map(|&v| (Colour::Blue, vec![v]));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(t);
    fn rec(
        psi: &EdgeColouring,
        block: &[usize],
        t: usize,
        start: usize,
        colour: Option<Colour>,
        chosen: &mut Vec<usize>,
    ) -> Option<(Colour, Vec<usize>)> {
        if chosen.len() == t {
            return Some((colour.expect("t >= 2 fixes a colour"), chosen.clone()));
        }
        let remaining = t - chosen.len();
        for idx in start..=block.len().saturating_sub(remaining) {
            let v = block[idx];
            let c = if chosen.is_empty() {
                colour
            } else {
                let first = psi.get(chosen[0], v);
                match (colour, first) {
                    (_, None) => continue,
                    (Some(c), Some(f)) if c != f => continue,
                    (c, Some(f)) => {
                        if chosen.iter().any(|&u| psi.get(u, v) != Some(f)) {
                            continue;
                        }
                        c.or(Some(f))
                    }
                }
            };
            chosen.push(v);
            if let Some(hit) = rec(psi, block, t, idx + 1, c, chosen) {
                return Some(hit);
            }
            chosen.pop();
        }
        None
    }
    rec(psi, block, t, 0, None, &mut chosen)
}

struct Run<'a> {
    host: &'a PartitionedHost,
    psi: &'a EdgeColouring,
    params: &'a PipelineParams,
    log: Vec<StageLog>,
}

impl Run<'_> {
    fn note(&mut self, stage: &str, outcome: String) {
        self.log.push(StageLog {
            stage: stage.to_string(),
            outcome,
        });
    }

    fn fail(&mut self, stage: &str, message: String) -> PipelineOutcome {
        self.note(stage, format!("FAILED: {message}"));
        PipelineOutcome::StepFailure(StepFailure {
            stage: stage.to_string(),
            message,
            step_log: std::mem::take(&mut self.log),
        })
    }

    fn witness(
        &mut self,
        colour: Colour,
        tree: &RootedTree,
        embedding: Embedding,
    ) -> PipelineOutcome {
        let pattern = strong_product(&tree.to_graph(), self.params.k);
        let report = validate_embedding(&pattern, &self.host.graph, &embedding, Some((self.psi, colour)));
        if !report.ok {
            return self.fail(
                "witness-validation",
                format!(
                    "candidate witness failed validation: {:?}",
                    report.violations.first()
                ),
            );
        }
        self.note(
            "witness-validation",
            format!(
                "validated {colour} copy of tree ⊠ K_{} on {} vertices",
                self.params.k,
                embedding.len()
            ),
        );
        PipelineOutcome::Witness(Witness {
            colour,
            k: self.params.k,
            tree: tree.clone(),
            embedding,
            step_log: std::mem::take(&mut self.log),
        })
    }
}

/// Runs the full pipeline. Input-contract violations (non-total colouring,
/// overdegree trees) are errors; everything else is a structured outcome.
pub fn ramsey_pipeline(
    host: &PartitionedHost,
    psi: &EdgeColouring,
    tree1: &RootedTree,
    tree2: &RootedTree,
    params: &PipelineParams,
) -> Result<PipelineOutcome> {
    let (k, d) = (params.k, params.d);
    if k < 1 || d < 1 {
        return Err(Error::InvalidInput("k and d must be at least 1".into()));
    }
    if !psi.is_total_on(&host.graph) {
        return Err(Error::InvalidInput(
            "colouring is not total on the host graph".into(),
        ));
    }
    for (name, t) in [("first", tree1), ("second", tree2)] {
        if t.max_degree() > d {
            return Err(Error::Precondition(format!(
                "{name} tree has maximum degree {} > d = {d}",
                t.max_degree()
            )));
        }
    }
    let mut run = Run {
        host,
        psi,
        params,
        log: Vec::new(),
    };

    // Stage 1: a monochromatic K_t inside every clique block.
    let n_base = host.base_n();
    let t = host.t;
    let mut block_colour = Vec::with_capacity(n_base);
    let mut block_clique: Vec<Vec<usize>> = Vec::with_capacity(n_base);
    for v in 0..n_base {
        match find_mono_clique(psi, &host.block(v), t) {
            Some((c, clique)) => {
                block_colour.push(c);
                block_clique.push(clique);
            }
            None => {
                return Ok(run.fail(
                    "monochromatic-clique",
                    format!("block of base vertex {v} contains no monochromatic K_{t} (R = {})", host.r),
                ));
            }
        }
    }
    run.note(
        "monochromatic-clique",
        format!("all {n_base} blocks hold a monochromatic K_{t}"),
    );

    // Stage 2: majority colour picks the working ("blue") side.
    let blue_count = block_colour.iter().filter(|&&c| c == Colour::Blue).count();
    let swapped = 2 * blue_count < n_base;
    let working = if swapped { Colour::Red } else { Colour::Blue };
    let chop_tree = if swapped { tree1 } else { tree2 };
    let lift_tree = if swapped { tree2 } else { tree1 };
    let w: Vec<usize> = (0..n_base).filter(|&v| block_colour[v] == working).collect();
    let n_prime = w.len();
    run.note(
        "majority-colour",
        format!(
            "{working} blocks form the majority: {n_prime} of {n_base}; \
             chopping targets the {}-vertex tree",
            chop_tree.n()
        ),
    );

    // Stage 3: part-pair auxiliary colouring at s = (d + d^2) k.
    let s = (d + d * d) * k;
    let parts: Vec<Vec<usize>> = w.iter().map(|&v| block_clique[v].clone()).collect();
    let aux = match aux_colouring(&parts, psi, s, working) {
        Ok(aux) => aux,
        Err(e) => return Ok(run.fail("aux-colouring", e.to_string())),
    };
    run.note(
        "aux-colouring",
        format!(
            "auxiliary colouring on {n_prime} parts at s = {s}: {} blue of {} pairs",
            aux.count(Colour::Blue),
            aux.edge_count()
        ),
    );

    // Stage 4: embed the truncation in the blue auxiliary graph.
    let trunc = truncation(chop_tree);
    debug_assert!(trunc.tree.max_degree() <= d * d);
    let blue_aux = aux.class_graph(Colour::Blue);
    let g_embed = match embed_tree(&blue_aux, &trunc.tree, d * d) {
        Ok(res) => res,
        Err(e) => return Ok(run.fail("truncation-embed", e.to_string())),
    };

    if let Some(g_embed) = g_embed {
        run.note(
            "truncation-embed",
            format!(
                "truncation on {} vertices embedded in the blue auxiliary graph",
                trunc.tree.n()
            ),
        );
        // Stage 5a: chopping.
        let embedding = match crate::chopping::chopping_embed(
            &host.graph,
            &parts,
            psi,
            working,
            k,
            chop_tree,
            d,
            &g_embed,
        ) {
            Ok(e) => e,
            Err(e) => return Ok(run.fail("chopping", e.to_string())),
        };
        run.note(
            "chopping",
            format!("product embedding placed {} vertices", embedding.len()),
        );
        return Ok(run.witness(working, chop_tree, embedding));
    }
    run.note(
        "truncation-embed",
        "no blue truncation copy exists (exhaustive search)".to_string(),
    );

    // Stage 5b: dichotomy on the auxiliary colouring.
    let q = 2 * k + 1;
    let n_star = chop_tree.n();
    let dd = d * d;
    let bound = dichotomy_bound(n_star, dd, q);
    if n_prime < bound {
        return Ok(run.fail(
            "dichotomy-precondition",
            format!("N' = {n_prime} is below the dichotomy bound 20 n d^2 (2k+1) = {bound}"),
        ));
    }
    run.note(
        "dichotomy-precondition",
        format!("N' = {n_prime} >= {bound}"),
    );
    let aux_parts = match tree_or_multipartite(&aux, n_star, dd, q) {
        Ok(Dichotomy::RedMultipartite { parts }) => parts,
        Ok(Dichotomy::BlueExpansion { .. }) => {
            return Ok(run.fail(
                "dichotomy",
                "expansion certificate contradicts the exhausted truncation search".into(),
            ));
        }
        Err(e) => return Ok(run.fail("dichotomy", e.to_string())),
    };
    run.note(
        "dichotomy",
        format!(
            "red multipartite parts of sizes {:?}",
            aux_parts.iter().map(Vec::len).collect::<Vec<_>>()
        ),
    );

    // Stage 6: matchings through the base expander cover a survivor set.
    let base_of = |aux_id: usize| w[aux_id];
    let v0: Vec<usize> = aux_parts[0].iter().map(|&a| base_of(a)).collect();
    let mut survivors = v0.clone();
    let mut partner: Vec<HashMap<usize, usize>> = Vec::with_capacity(2 * k);
    for (i, aux_part) in aux_parts.iter().enumerate().skip(1) {
        let right: Vec<usize> = aux_part.iter().map(|&a| base_of(a)).collect();
        let mut edges = Vec::new();
        for (li, &l) in survivors.iter().enumerate() {
            for (ri, &r) in right.iter().enumerate() {
                if host.base.has_edge(l, r) {
                    edges.push((li, ri));
                }
            }
        }
        let matching = max_bipartite_matching(survivors.len(), right.len(), &edges);
        if 2 * matching.len() < survivors.len() {
            return Ok(run.fail(
                "matchings",
                format!(
                    "matching {i} covers {} of {} survivors (parts of size {}); \
                     the expander is too sparse at this scale",
                    matching.len(),
                    survivors.len(),
                    right.len()
                ),
            ));
        }
        let mut map = HashMap::new();
        let mut next = Vec::with_capacity(matching.len());
        for (li, ri) in matching {
            map.insert(survivors[li], right[ri]);
            next.push(survivors[li]);
        }
        next.sort_unstable();
        partner.push(map);
        survivors = next;
    }
    assert!(
        survivors.len() << (2 * k) >= v0.len(),
        "halving chain broke: {} survivors from {}",
        survivors.len(),
        v0.len()
    );
    run.note(
        "matchings",
        format!(
            "{} survivors covered by all {} matchings (started from {})",
            survivors.len(),
            2 * k,
            v0.len()
        ),
    );

    // Stage 7: the other tree embeds among the survivors in the base graph.
    let induced = host.base.induced(&survivors);
    let tree_local = match embed_tree(&induced, lift_tree, d) {
        Ok(Some(e)) => e,
        Ok(None) => {
            return Ok(run.fail(
                "tree-in-survivors",
                format!(
                    "no copy of the {}-vertex tree in the {}-vertex survivor subgraph",
                    lift_tree.n(),
                    survivors.len()
                ),
            ));
        }
        Err(e) => return Ok(run.fail("tree-in-survivors", e.to_string())),
    };
    let tree_base: Vec<usize> = tree_local.image().iter().map(|&l| survivors[l]).collect();
    run.note(
        "tree-in-survivors",
        format!("tree embedded on base vertices {tree_base:?}"),
    );

    // Stage 8: alternating halves give an all-red product copy in K_{N'}.
    let f_pattern = strong_product(&lift_tree.to_graph(), k);
    let aux_of_base: HashMap<usize, usize> =
        w.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut f_aux = vec![usize::MAX; f_pattern.n()];
    for x in 0..lift_tree.n() {
        let base = tree_base[x];
        let offset = if lift_tree.depth(x) % 2 == 0 { 0 } else { k };
        for slot in 0..k {
            let mi = offset + slot; // matching index, 0-based
            let p = *partner[mi].get(&base).expect("survivors are covered by every matching");
            f_aux[x * k + slot] = aux_of_base[&p];
        }
    }
    {
        let mut sorted = f_aux.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != f_aux.len() {
            return Ok(run.fail(
                "alternating-halves",
                "partner vertices are not pairwise distinct".into(),
            ));
        }
        for (a, b) in f_pattern.edges() {
            if !aux.is(f_aux[a], f_aux[b], Colour::Red) {
                return Ok(run.fail(
                    "alternating-halves",
                    format!(
                        "auxiliary pair {}-{} is not red",
                        f_aux[a], f_aux[b]
                    ),
                ));
            }
        }
        // Every product edge must exist in the cube of the base graph:
        // partners of one tree vertex lie within base distance 2, partners
        // across a tree edge within distance 3. Checked by BFS.
        let mut dist_cache: HashMap<usize, Vec<usize>> = HashMap::new();
        for (a, b) in f_pattern.edges() {
            let (pa, pb) = (base_of(f_aux[a]), base_of(f_aux[b]));
            let dist = dist_cache
                .entry(pa)
                .or_insert_with(|| host.base.bfs_distances(pa, Some(3)));
            let cap = if a / k == b / k { 2 } else { 3 };
            if dist[pb] > cap {
                return Ok(run.fail(
                    "alternating-halves",
                    format!(
                        "partners {pa} and {pb} are at base distance > {cap}"
                    ),
                ));
            }
        }
    }
    run.note(
        "alternating-halves",
        format!(
            "all-red product copy fixed on {} auxiliary vertices",
            f_pattern.n()
        ),
    );

    // Stage 9: density of the working-red colour between the chosen blocks.
    let lift_colour = working.other();
    let t_sq = (t * t) as f64;
    let delta_f = f_pattern.max_degree();
    let threshold = if delta_f == 0 {
        0.0
    } else {
        (1.0 - 1.0 / (8.0 * delta_f as f64)) * t_sq
    };
    let block_of = |f_vertex: usize| &block_clique[base_of(f_aux[f_vertex])];
    for (a, b) in f_pattern.edges() {
        let mut count = 0usize;
        for &p in block_of(a) {
            for &q in block_of(b) {
                if psi.is(p, q, lift_colour) {
                    count += 1;
                }
            }
        }
        if (count as f64) < threshold - 1e-9 {
            return Ok(run.fail(
                "lift-density",
                format!(
                    "super-edge {a}-{b} keeps {count} of {} {lift_colour} pairs, \
                     below (1 - 1/(8*{delta_f})) t^2 = {threshold:.2}; \
                     K_{{s,s}}-free bound for reference: {:.2}",
                    t * t,
                    kst_bound(s, 2 * t)
                ),
            ));
        }
    }
    run.note(
        "lift-density",
        format!("all {} super-edges meet the density threshold {threshold:.2}", f_pattern.edge_count()),
    );

    // Stage 10: local-lemma lift back into the host graph.
    let mut fp_edges: Vec<(usize, usize)> = Vec::new();
    for (a, b) in f_pattern.edges() {
        for (i, &p) in block_of(a).iter().enumerate() {
            for (j, &q) in block_of(b).iter().enumerate() {
                if psi.is(p, q, lift_colour) {
                    fp_edges.push((a * t + i, b * t + j));
                }
            }
        }
    }
    let f_prime = Graph::from_edges(f_pattern.n() * t, &fp_edges)
        .expect("lift target edges are simple");
    let (lifted, stats) = match lll_lift(
        &f_pattern,
        &f_prime,
        t,
        derive_seed(params.seed, 0xF17),
        false,
    ) {
        Ok(r) => r,
        Err(e) => return Ok(run.fail("lift", e.to_string())),
    };
    run.note(
        "lift",
        format!("selection found after {} resamples", stats.resamples),
    );
    let final_image: Vec<usize> = (0..f_pattern.n())
        .map(|a| {
            let slot = lifted.get(a) - a * t;
            block_of(a)[slot]
        })
        .collect();
    Ok(run.witness(lift_colour, lift_tree, Embedding::new(final_image)))
}
