//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Every producer result is routed through the independent validators in
//! `ramsey_core::verify`; expected values come from brute-force oracles
//! implemented locally in this file.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramsey_core::colouring::{Colour, EdgeColouring};
use ramsey_core::constants::{kst_bound, proof_constants};
use ramsey_core::degenerate::{colour_monotone, colour_recursive, longest_mono_monotone_path, split_degenerate};
use ramsey_core::dichotomy::tree_or_multipartite;
use ramsey_core::embedding::{embed_tree, fp_expansion_check, ExpansionOutcome};
use ramsey_core::graph::{degeneracy_ordering, random_degenerate, random_graph, Graph};
use ramsey_core::host::build_host;
use ramsey_core::lll::{lll_lift, RESAMPLE_CAP};
use ramsey_core::pipeline::{ramsey_pipeline, PipelineOutcome, PipelineParams};
use ramsey_core::products::{blowup, strong_product};
use ramsey_core::spectral::{
    random_regular, random_regular_lambda_accepted, second_eigenvalue, MixingChecker,
    SpectralProfile,
};
use ramsey_core::tree::{complete_dary_tree, random_tree, RootedTree};
use ramsey_core::verify::{
    find_mono_tree, validate_dichotomy, validate_embedding, DEFAULT_NODE_BUDGET,
};

/// A forest with one to three tree components, deterministic in `seed`.
fn random_forest(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let components = 1 + (rng.random_range(0..3usize)).min(n.saturating_sub(1));
    let mut sizes = vec![n / components; components];
    sizes[0] += n - sizes.iter().sum::<usize>();
    let mut g = Graph::new(n);
    let mut offset = 0;
    for size in sizes {
        if size >= 2 {
            let t = random_tree(size, size, rng.random()).unwrap();
            for v in 0..size {
                if v != t.root() {
                    g.add_edge(offset + v, offset + t.parent(v)).unwrap();
                }
            }
        }
        offset += size;
    }
    g
}

#[test]
fn criterion_01_monotone_paths_bounded() {
    let start = Instant::now();
    for i in 0..100u64 {
        let d = [2, 3, 4][(i % 3) as usize];
        let n = 50 + ((i as usize * 17) % 251); // up to 300
        let g = random_degenerate(n, d, i);
        let (order, degen) = degeneracy_ordering(&g);
        assert_eq!(degen, d);
        let psi = colour_monotone(&g, &order);
        let l = longest_mono_monotone_path(&g, &order, &psi).unwrap();
        assert!(
            l.red <= d + 1 && l.blue <= d + 1,
            "instance {i}: monotone path bound exceeded: {l:?} for d = {d}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget 10 s");
    println!("ACCEPTANCE 1 PASS: 100 monotone colourings, DP path bound <= d+1, {elapsed:?}");
}

#[test]
fn criterion_02_no_monochromatic_t33_under_monotone() {
    let start = Instant::now();
    let t33 = complete_dary_tree(3, 3).unwrap();
    assert_eq!(t33.n(), 40);
    for i in 0..25u64 {
        let n = 96 + (i as usize % 25); // up to 120, dense 2-degenerate
        let g = random_degenerate(n, 2, 1000 + i);
        let (order, _) = degeneracy_ordering(&g);
        let psi = colour_monotone(&g, &order);
        for colour in [Colour::Red, Colour::Blue] {
            let hit = find_mono_tree(&g, &psi, colour, &t33, DEFAULT_NODE_BUDGET).unwrap();
            assert!(hit.is_none(), "instance {i}: {colour} copy of T_{{3,3}} found");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!("ACCEPTANCE 2 PASS: 25 hosts free of monochromatic T_{{3,3}}, {elapsed:?}");
}

#[test]
fn criterion_03_split_halves_degeneracy() {
    for d in [4usize, 8] {
        for i in 0..50u64 {
            let n = 60 + (i as usize % 140);
            let g = random_degenerate(n, d - 1, 2000 + i);
            let (order, degen) = degeneracy_ordering(&g);
            assert_eq!(degen, d - 1);
            let s = split_degenerate(&g, d, &order).unwrap();
            let (_, dr) = degeneracy_ordering(&g.induced(&s.red));
            let (_, db) = degeneracy_ordering(&g.induced(&s.blue));
            assert!(
                dr < d / 2 && db < d / 2,
                "instance {i} (d = {d}): parts must be (d/2 - 1)-degenerate, got {dr}, {db}"
            );
        }
    }
    println!("ACCEPTANCE 3 PASS: 100 splits with both parts (d/2 - 1)-degenerate");
}

#[test]
fn criterion_04_recursive_colouring() {
    // Base case: no monochromatic three-edge path in forests.
    let p4 = complete_dary_tree(1, 3).unwrap();
    for i in 0..100u64 {
        let n = 100 + ((i as usize * 19) % 1901); // up to 2000
        let g = random_forest(n, 3000 + i);
        let psi = colour_recursive(&g, 1).unwrap();
        for colour in [Colour::Red, Colour::Blue] {
            let hit = find_mono_tree(&g, &psi, colour, &p4, DEFAULT_NODE_BUDGET).unwrap();
            assert!(hit.is_none(), "forest {i}: monochromatic 3-edge path in {colour}");
        }
    }

    // Level two: no monochromatic T_{4,2} inside either split part, and the
    // inherited-colour counting invariant holds at every blue-class vertex.
    let t42 = complete_dary_tree(4, 2).unwrap();
    for i in 0..50u64 {
        let n = 40 + (i as usize % 41); // up to 80
        let g = random_degenerate(n, 3, 4000 + i);
        let psi = colour_recursive(&g, 2).unwrap();

        let (order, _) = degeneracy_ordering(&g);
        let split = split_degenerate(&g, 4, &order).unwrap();
        let mut in_red = vec![false; g.n()];
        for &v in &split.red {
            in_red[v] = true;
        }
        // Every arc leaving a blue-class vertex towards the red class is
        // blue: zero red such edges.
        for v in split.blue.iter().copied() {
            let bad = g
                .neighbours(v)
                .iter()
                .filter(|&&w| {
                    in_red[w]
                        && order.position(v) < order.position(w)
                        && psi.get(v, w) == Some(Colour::Red)
                })
                .count();
            assert_eq!(bad, 0, "instance {i}: vertex {v} exports red arcs to the red class");
        }
        for part in [&split.red, &split.blue] {
            let sub = g.induced(part);
            let sub_psi = EdgeColouring::from_rule(&sub, |a, b| {
                psi.get(part[a], part[b]).expect("edge inside part")
            });
            for colour in [Colour::Red, Colour::Blue] {
                let hit = find_mono_tree(&sub, &sub_psi, colour, &t42, DEFAULT_NODE_BUDGET).unwrap();
                assert!(hit.is_none(), "instance {i}: {colour} T_{{4,2}} inside a part");
            }
        }
    }
    println!("ACCEPTANCE 4 PASS: recursive colouring clean at i = 1 (100 forests) and i = 2 (50 graphs)");
}

#[test]
fn criterion_05_spectral_generation_and_mixing() {
    let start = Instant::now();
    let threshold = SpectralProfile::lambda_threshold(8);
    assert!((threshold - 5.656854249).abs() < 1e-6);
    let mut accepted = 0;
    for seed in 0..20u64 {
        let (g, _) = random_regular(400, 8, seed).unwrap();
        let profile = second_eigenvalue(&g).unwrap();
        assert!((profile.lambda) <= profile.d as f64 + 1e-6);
        if profile.lambda <= threshold {
            accepted += 1;
        }
    }
    assert!(
        accepted >= 18,
        "only {accepted}/20 seeds met lambda <= 2 sqrt(D)"
    );

    // Mixing inequality on one lambda-accepted graph, 1e5 random pairs.
    let acc = random_regular_lambda_accepted(400, 8, 99).unwrap();
    let checker = MixingChecker::new(&acc.graph, acc.profile);
    let mut rng = ChaCha8Rng::seed_from_u64(123);
    let mut violations = 0;
    for _ in 0..100_000 {
        let s: Vec<usize> = (0..400).filter(|_| rng.random_bool(0.5)).collect();
        let t: Vec<usize> = (0..400).filter(|_| rng.random_bool(0.5)).collect();
        if checker.check(&s, &t).violation {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "mixing bound violated at tolerance 1e-9");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, budget 60 s");
    println!(
        "ACCEPTANCE 5 PASS: {accepted}/20 seeds lambda-accepted, 100000 mixing pairs clean, {elapsed:?}"
    );
}

/// Independent subset oracle over bitmasks, for hosts with at most 16
/// vertices: returns the minimum-cardinality, lexicographically first
/// violating set, if any.
fn naive_violating_set(g: &Graph, n: usize, d: usize) -> Option<Vec<usize>> {
    let nv = g.n();
    assert!(nv <= 16);
    let masks: Vec<u16> = (0..nv)
        .map(|v| {
            g.neighbours(v)
                .iter()
                .fold(0u16, |acc, &w| acc | (1 << w))
        })
        .collect();
    let max_size = (2 * n).saturating_sub(2).min(nv);
    let mut best: Option<Vec<usize>> = None;
    for mask in 1u32..(1u32 << nv) {
        let size = mask.count_ones() as usize;
        if size > max_size {
            continue;
        }
        let mut gamma = 0u16;
        for (v, &row) in masks.iter().enumerate() {
            if mask >> v & 1 == 1 {
                gamma |= row;
            }
        }
        if (gamma.count_ones() as usize) < (d + 1) * size {
            let xs: Vec<usize> = (0..nv).filter(|&v| mask >> v & 1 == 1).collect();
            let better = match &best {
                None => true,
                Some(b) => size < b.len() || (size == b.len() && xs < *b),
            };
            if better {
                best = Some(xs);
            }
        }
    }
    best
}

#[test]
fn criterion_06_fp_oracle_equivalence() {
    // All trees with at most 4 vertices, with their (n, d) parameters.
    let trees: Vec<(RootedTree, usize, usize)> = vec![
        (RootedTree::trivial(), 1, 1),
        (complete_dary_tree(1, 1).unwrap(), 2, 1),
        (complete_dary_tree(1, 2).unwrap(), 3, 2),
        (complete_dary_tree(1, 3).unwrap(), 4, 2),
        (complete_dary_tree(3, 1).unwrap(), 4, 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut expansions_seen = 0u64;
    for _ in 0..10_000 {
        let nv = rng.random_range(1..=9);
        let g = random_graph(nv, 0.5, rng.random());
        for (tree, n, d) in &trees {
            let got = fp_expansion_check(&g, *n, *d).unwrap();
            let oracle = naive_violating_set(&g, *n, *d);
            match (&got, &oracle) {
                (ExpansionOutcome::Expands, None) => {
                    expansions_seen += 1;
                    let e = embed_tree(&g, tree, *d)
                        .unwrap()
                        .expect("expansion holds, embedding must exist");
                    assert!(validate_embedding(&tree.to_graph(), &g, &e, None).ok);
                }
                (ExpansionOutcome::Violation(x), Some(o)) => {
                    assert_eq!(x, o, "witness mismatch on {nv}-vertex host");
                }
                other => panic!("oracle disagreement: {other:?}"),
            }
        }
    }
    assert!(expansions_seen > 0, "no expanding instance was ever seen");
    println!(
        "ACCEPTANCE 6 PASS: 10000 hosts x 5 trees, zero oracle discrepancies, \
         {expansions_seen} expanding cases all embedded"
    );
}

#[test]
fn criterion_07_dichotomy_certificates() {
    let g = Graph::complete(200);
    let (n, d, q) = (2, 2, 2);
    for seed in 0..50u64 {
        let psi = EdgeColouring::random(&g, 7000 + seed);
        let out = tree_or_multipartite(&psi, n, d, q).unwrap();
        let report = validate_dichotomy(&psi, n, d, q, &out);
        assert!(
            report.ok,
            "seed {seed}: invalid certificate: {:?}",
            report.violations
        );
    }
    println!("ACCEPTANCE 7 PASS: 50 random K_200 colourings, all dichotomy certificates valid");
}

#[test]
fn criterion_08_lll_lift_at_threshold_density() {
    use rand::seq::SliceRandom;
    // Delta = 3, t = 24: threshold (1 - 1/24) * 576 = 552 edges per
    // super-edge, exactly.
    let f = Graph::complete(4);
    let t = 24;
    let full = blowup(&f, t);
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(8000 + seed);
        let mut edges = Vec::new();
        for (u, v) in f.edges() {
            let mut cross: Vec<(usize, usize)> = (0..t)
                .flat_map(|i| (0..t).map(move |j| (u * t + i, v * t + j)))
                .collect();
            cross.shuffle(&mut rng);
            edges.extend(cross.into_iter().take(552));
        }
        let fp = Graph::from_edges(full.n(), &edges).unwrap();
        let (e, stats) = lll_lift(&f, &fp, t, seed, true).unwrap();
        assert!(stats.resamples <= RESAMPLE_CAP);
        let report = validate_embedding(&f, &fp, &e, None);
        assert!(report.ok, "seed {seed}: {:?}", report.violations);
    }
    println!("ACCEPTANCE 8 PASS: 50 threshold-density lifts, all within the resample cap and valid");
}

#[test]
fn criterion_09_kst_consistency() {
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + seed);
        let t = 4 + (seed as usize % 9); // sides up to 12
        // Greedy random K_{2,2}-free bipartite graph: keep an edge unless it
        // closes a 4-cycle.
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); t];
        let mut pairs: Vec<(usize, usize)> = (0..t)
            .flat_map(|l| (0..t).map(move |r| (l, r)))
            .collect();
        use rand::seq::SliceRandom;
        pairs.shuffle(&mut rng);
        for (l, r) in pairs {
            let closes_c4 = (0..t).any(|l2| {
                l2 != l && rows[l2].contains(&r) && rows[l].iter().any(|c| rows[l2].contains(c))
            });
            if !closes_c4 {
                rows[l].push(r);
            }
        }
        // Brute-force verification: no two rows share two columns.
        let mut edges = 0;
        for l1 in 0..t {
            edges += rows[l1].len();
            for l2 in (l1 + 1)..t {
                let common = rows[l1].iter().filter(|c| rows[l2].contains(c)).count();
                assert!(common <= 1, "seed {seed}: K_{{2,2}} slipped through");
            }
        }
        let bound = kst_bound(2, 2 * t);
        assert!(
            (edges as f64) <= bound,
            "seed {seed}: {edges} edges exceed the bound {bound}"
        );
    }
    println!("ACCEPTANCE 9 PASS: 200 K_{{2,2}}-free bipartite graphs within the KST bound");
}

#[test]
fn criterion_10_pipeline_end_to_end() {
    let start = Instant::now();
    let host = build_host(200, 8, 8, 8, 10).unwrap();
    let tree1 = random_tree(3, 2, 11).unwrap();
    let tree2 = random_tree(3, 2, 22).unwrap();
    let params = PipelineParams { k: 1, d: 2, seed: 331 };

    // All blue: a blue copy of T2 ⊠ K_1 via the chopping route.
    let psi = EdgeColouring::all_blue(&host.graph);
    let out = ramsey_pipeline(&host, &psi, &tree1, &tree2, &params).unwrap();
    let w = out.witness().expect("all-blue run must produce a witness");
    assert_eq!(w.colour, Colour::Blue);
    assert_eq!(w.tree, tree2);
    let pattern = strong_product(&w.tree.to_graph(), 1);
    assert!(validate_embedding(&pattern, &host.graph, &w.embedding, Some((&psi, Colour::Blue))).ok);

    // All red: a red copy of T1 ⊠ K_1.
    let psi = EdgeColouring::all_red(&host.graph);
    let out = ramsey_pipeline(&host, &psi, &tree1, &tree2, &params).unwrap();
    let w = out.witness().expect("all-red run must produce a witness");
    assert_eq!(w.colour, Colour::Red);
    assert_eq!(w.tree, tree1);
    let pattern = strong_product(&w.tree.to_graph(), 1);
    assert!(validate_embedding(&pattern, &host.graph, &w.embedding, Some((&psi, Colour::Red))).ok);

    // Random colourings: a validated witness or a named step failure,
    // never an invalid witness.
    for seed in 0..3u64 {
        let psi = EdgeColouring::random(&host.graph, 500 + seed);
        match ramsey_pipeline(&host, &psi, &tree1, &tree2, &params).unwrap() {
            PipelineOutcome::Witness(w) => {
                let pattern = strong_product(&w.tree.to_graph(), params.k);
                let report =
                    validate_embedding(&pattern, &host.graph, &w.embedding, Some((&psi, w.colour)));
                assert!(report.ok, "random seed {seed} returned an invalid witness");
            }
            PipelineOutcome::StepFailure(f) => {
                assert!(!f.stage.is_empty());
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget 120 s");
    println!("ACCEPTANCE 10 PASS: pipeline end-to-end runs validated, {elapsed:?}");
}

#[test]
fn criterion_11_constants_exact() {
    let c = proof_constants(1, 2).unwrap();
    assert_eq!(c.s, 6, "s = (d + d^2) k");
    assert_eq!(
        c.t,
        num_bigint::BigUint::from(128u32).pow(6),
        "t = (64 k d)^s = 128^6"
    );
    println!("ACCEPTANCE 11 PASS: s = 6 and t = 128^6 reproduced exactly");
}
