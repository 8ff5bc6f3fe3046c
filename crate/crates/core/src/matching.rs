//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).

/// Computes a maximum-cardinality matching between `0..left` and `0..right`
/// given bipartite `edges` as `(left_vertex, right_vertex)` pairs. Returns
/// the matched pairs sorted by left vertex. By König's theorem the size
/// equals the minimum vertex cover of the bipartite graph.
pub fn max_bipartite_matching(
    left: usize,
    right: usize,
    edges: &[(usize, usize)],
) -> Vec<(usize, usize)> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); left];
    for &(l, r) in edges {
        assert!(l < left && r < right, "edge ({l}, {r}) out of range");
        adj[l].push(r);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let mut matched_right: Vec<Option<usize>> = vec![None; right];
    let mut seen = vec![false; right];
    for l in 0..left {
        seen.fill(false);
        augment(l, &adj, &mut seen, &mut matched_right);
    }
    let mut out: Vec<(usize, usize)> = matched_right
        .iter()
        .enumerate()
        .filter_map(|(r, l)| l.map(|l| (l, r)))
        .collect();
    out.sort_unstable();
    out
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    matched_right: &mut [Option<usize>],
) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if matched_right[r].is_none()
            || augment(matched_right[r].unwrap(), adj, seen, matched_right)
        {
            matched_right[r] = Some(l);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_examples() {
        // K_{3,3} has a perfect matching.
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|l| (0..3).map(move |r| (l, r))).collect();
        assert_eq!(max_bipartite_matching(3, 3, &edges).len(), 3);

        // A star matches exactly one edge.
        let star: Vec<(usize, usize)> = (0..5).map(|r| (0, r)).collect();
        assert_eq!(max_bipartite_matching(1, 5, &star).len(), 1);

        // C6 as a bipartite graph: 0-0', 0-1', 1-1', 1-2', 2-2', 2-0'.
        let c6 = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)];
        assert_eq!(max_bipartite_matching(3, 3, &c6).len(), 3);
    }

    #[test]
    fn matched_pairs_are_real_edges() {
        let edges = [(0, 1), (1, 1), (1, 2), (2, 0)];
        let m = max_bipartite_matching(3, 3, &edges);
        for p in &m {
            assert!(edges.contains(p));
        }
        assert_eq!(m.len(), 3);
    }

    /// Brute-force maximum matching by trying all edge subsets.
    fn brute_max_matching(edges: &[(usize, usize)]) -> usize {
        let m = edges.len();
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let chosen: Vec<(usize, usize)> = (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let lefts: std::collections::BTreeSet<usize> =
                chosen.iter().map(|&(l, _)| l).collect();
            let rights: std::collections::BTreeSet<usize> =
                chosen.iter().map(|&(_, r)| r).collect();
            if lefts.len() == chosen.len() && rights.len() == chosen.len() {
                best = best.max(chosen.len());
            }
        }
        best
    }

    /// Brute-force minimum vertex cover over all vertex subsets.
    fn brute_min_cover(left: usize, right: usize, edges: &[(usize, usize)]) -> usize {
        let n = left + right;
        let mut best = n;
        for mask in 0u32..(1 << n) {
            let covers = edges.iter().all(|&(l, r)| {
                mask >> l & 1 == 1 || mask >> (left + r) & 1 == 1
            });
            if covers {
                best = best.min(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn koenig_duality_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..40 {
            let left = rng.random_range(1..=6);
            let right = rng.random_range(1..=6);
            let mut edges = Vec::new();
            for l in 0..left {
                for r in 0..right {
                    if rng.random_bool(0.4) {
                        edges.push((l, r));
                    }
                }
            }
            if edges.len() > 12 {
                edges.truncate(12);
            }
            let fast = max_bipartite_matching(left, right, &edges).len();
            assert_eq!(fast, brute_max_matching(&edges));
            assert_eq!(fast, brute_min_cover(left, right, &edges));
        }
    }
}
