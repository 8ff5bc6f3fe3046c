//! Embedding `T ⊠ K_k` into a partitioned host along a truncation embedding.
//!
//! Setting: the host's parts `V_1..V_m` are internally complete and
//! monochromatic, every part has at least `s = (d + d^2) k` vertices, and
//! `g` embeds the truncation `T'` of `T` into the blue subgraph of the
//! part-pair auxiliary colouring (edge `ij` blue iff a blue `K_{s,s}`
//! crosses `V_i` and `V_j`).
//!
//! The tree is carved into bags: the root alone, and `{x} ∪ C_T(x)` for
//! every other truncation vertex `x`. Processing truncation vertices by
//! distance from the root, each step relocates a blue `K_{s,s}` towards the
//! grandparent's part, places `x`'s clique block on the grandparent side and
//! the blocks of `x`'s children on its own side. Capacity: the root's part
//! receives at most `(d+1) k` vertices, every other used part at most
//! `(d + d^2) k`.

use crate::colouring::{Colour, EdgeColouring};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kss::find_mono_kss;
use crate::tree::{truncation, RootedTree, Truncation};

/// The bag decomposition of a rooted tree along its truncation: bags are
/// pairwise disjoint and partition the vertex set.
#[derive(Clone, Debug)]
pub struct Bags {
    /// Indexed by truncation vertex id; values are tree vertices.
    pub per_vertex: Vec<Vec<usize>>,
}

pub fn bags(tree: &RootedTree, trunc: &Truncation) -> Bags {
    let per_vertex = (0..trunc.tree.n())
        .map(|x| {
            let orig = trunc.original[x];
            if orig == tree.root() {
                vec![orig]
            } else {
                let mut b = vec![orig];
                b.extend_from_slice(tree.children(orig));
                b
            }
        })
        .collect();
    Bags { per_vertex }
}

/// Embeds `tree ⊠ K_k` into `g` with every image edge coloured `colour`.
///
/// `g_embed` maps the truncation of `tree` (as produced by
/// [`truncation`]) injectively to part indices such that every truncation
/// edge is backed by a `colour` `K_{s,s}` between the corresponding parts;
/// the `K_{s,s}`s are relocated here, and failure to find one is a contract
/// violation. Product vertices use the `tree_vertex * k + slot` encoding.
#[allow(clippy::too_many_arguments)]
pub fn chopping_embed(
    g: &Graph,
    parts: &[Vec<usize>],
    psi: &EdgeColouring,
    colour: Colour,
    k: usize,
    tree: &RootedTree,
    d: usize,
    g_embed: &Embedding,
) -> Result<Embedding> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if tree.max_degree() > d {
        return Err(Error::Precondition(format!(
            "tree has maximum degree {} > d = {d}",
            tree.max_degree()
        )));
    }
    let s = (d + d * d) * k;
    let trunc = truncation(tree);
    if g_embed.len() != trunc.tree.n() {
        return Err(Error::InvalidInput(format!(
            "part assignment has {} entries, truncation has {}",
            g_embed.len(),
            trunc.tree.n()
        )));
    }
    {
        let mut seen = vec![false; parts.len()];
        for &p in g_embed.image() {
            if p >= parts.len() {
                return Err(Error::InvalidInput(format!("part index {p} out of range")));
            }
            if seen[p] {
                return Err(Error::InvalidInput(
                    "truncation embedding must be injective on parts".into(),
                ));
            }
            seen[p] = true;
        }
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, part) in parts.iter().enumerate() {
        if part.len() < s {
            return Err(Error::Precondition(format!(
                "part {i} has {} < s = {s} vertices",
                part.len()
            )));
        }
        for &v in part {
            if v >= g.n() {
                return Err(Error::InvalidInput(format!("part vertex {v} out of range")));
            }
            if owner[v] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "vertex {v} appears in two parts"
                )));
            }
            owner[v] = i;
        }
        for (ai, &a) in part.iter().enumerate() {
            for &b in &part[ai + 1..] {
                if !psi.is(a, b, colour) {
                    return Err(Error::Precondition(format!(
                        "part {i} is not internally complete in {colour}: pair {a}-{b}"
                    )));
                }
            }
        }
    }

    let mut used = vec![false; g.n()];
    let mut used_per_part = vec![0usize; parts.len()];
    let mut image = vec![usize::MAX; tree.n() * k];
    let take = |pool: &[usize],
                    count: usize,
                    used: &mut Vec<bool>,
                    used_per_part: &mut Vec<usize>|
     -> Result<Vec<usize>> {
        let picked: Vec<usize> = pool.iter().copied().filter(|&v| !used[v]).take(count).collect();
        if picked.len() < count {
            return Err(Error::ContractViolation(format!(
                "capacity exhausted: needed {count} fresh vertices, found {}",
                picked.len()
            )));
        }
        for &v in &picked {
            used[v] = true;
            used_per_part[owner[v]] += 1;
        }
        Ok(picked)
    };

    // Step 0: the root block goes anywhere in its own part.
    let order = trunc.tree.bfs_order();
    let root_part = g_embed.get(trunc.tree.root());
    let block = take(&parts[root_part], k, &mut used, &mut used_per_part)?;
    for (slot, &v) in block.iter().enumerate() {
        image[tree.root() * k + slot] = v;
    }

    for &x_t in order.iter().skip(1) {
        let x = trunc.original[x_t];
        let y_t = trunc.tree.parent(x_t); // grandparent of x in the tree
        let (px, py) = (g_embed.get(x_t), g_embed.get(y_t));
        let (side_x, side_y) = find_mono_kss(psi, colour, &parts[px], &parts[py], s)?
            .ok_or_else(|| {
                Error::ContractViolation(format!(
                    "no {colour} K_{{{s},{s}}} between parts {px} and {py}: \
                     colouring inconsistent with the truncation embedding"
                ))
            })?;
        // x's block lands on the grandparent side of the crossing.
        let block = take(&side_y, k, &mut used, &mut used_per_part)?;
        for (slot, &v) in block.iter().enumerate() {
            image[x * k + slot] = v;
        }
        // The blocks of x's children land on x's own side.
        for &c in tree.children(x) {
            let block = take(&side_x, k, &mut used, &mut used_per_part)?;
            for (slot, &v) in block.iter().enumerate() {
                image[c * k + slot] = v;
            }
        }
    }

    debug_assert!(image.iter().all(|&v| v != usize::MAX));
    // Capacity postconditions.
    for (i, &cnt) in used_per_part.iter().enumerate() {
        let cap = if i == root_part { (d + 1) * k } else { s };
        assert!(
            cnt <= cap,
            "part {i} received {cnt} vertices, cap {cap}"
        );
    }
    // Image stays inside the parts chosen by the truncation embedding.
    debug_assert!(image
        .iter()
        .all(|&v| g_embed.image().contains(&owner[v])));
    Ok(Embedding::new(image))
}
