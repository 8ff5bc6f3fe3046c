//! End-to-end routes through the product-host pipeline beyond the
//! acceptance runs: the multipartite/matchings/lift branch on a host where
//! it is actually reachable, honest sub-scale step failures, and the
//! spectral certificate on a generated expander.

use ramsey_core::colouring::{Colour, EdgeColouring};
use ramsey_core::graph::Graph;
use ramsey_core::host::{build_host, PartitionedHost};
use ramsey_core::pipeline::{ramsey_pipeline, PipelineParams};
use ramsey_core::products::strong_product;
use ramsey_core::spectral::{expander_certificate, random_regular_lambda_accepted};
use ramsey_core::tree::random_tree;
use ramsey_core::verify::validate_embedding;

/// Blue inside every clique block, red across all of them: no blue
/// `K_{s,s}` ever crosses two blocks, so the auxiliary colouring is all red,
/// the truncation search is exhausted, and the red route must run: dichotomy
/// parts, matchings through the base graph, the tree among the survivors,
/// alternating halves, density check and the local-lemma lift.
#[test]
fn red_multipartite_route_runs_end_to_end() {
    // A complete base graph keeps every stage's guarantee valid at a tiny
    // scale: N' = 120 meets the dichotomy bound 20 * 2 * 1 * 3 exactly.
    let host = PartitionedHost::from_base(Graph::complete(120), 2, 2).unwrap();
    let r = host.r;
    let psi = EdgeColouring::from_rule(&host.graph, |u, v| {
        if u / r == v / r {
            Colour::Blue
        } else {
            Colour::Red
        }
    });
    let tree1 = random_tree(2, 1, 5).unwrap();
    let tree2 = random_tree(2, 1, 6).unwrap();
    let params = PipelineParams { k: 1, d: 1, seed: 77 };
    let out = ramsey_pipeline(&host, &psi, &tree1, &tree2, &params).unwrap();
    let w = out.witness().expect("the red route must complete");
    assert_eq!(w.colour, Colour::Red);
    assert_eq!(w.tree, tree1);

    // Revalidate independently of the pipeline's own check.
    let pattern = strong_product(&w.tree.to_graph(), params.k);
    let report = validate_embedding(&pattern, &host.graph, &w.embedding, Some((&psi, Colour::Red)));
    assert!(report.ok, "{:?}", report.violations);

    // The log must show the full multipartite route, in order.
    let stages: Vec<&str> = w.step_log.iter().map(|s| s.stage.as_str()).collect();
    for expected in [
        "monochromatic-clique",
        "majority-colour",
        "aux-colouring",
        "truncation-embed",
        "dichotomy-precondition",
        "dichotomy",
        "matchings",
        "tree-in-survivors",
        "alternating-halves",
        "lift-density",
        "lift",
        "witness-validation",
    ] {
        assert!(stages.contains(&expected), "missing stage {expected}: {stages:?}");
    }
    assert!(!stages.contains(&"chopping"), "the blue chopping route must not fire");
}

/// Two identical runs serialize identically: every random choice flows
/// through the explicit seed.
#[test]
fn pipeline_is_deterministic() {
    let host = PartitionedHost::from_base(Graph::complete(120), 2, 2).unwrap();
    let r = host.r;
    let psi = EdgeColouring::from_rule(&host.graph, |u, v| {
        if u / r == v / r {
            Colour::Blue
        } else {
            Colour::Red
        }
    });
    let tree1 = random_tree(2, 1, 5).unwrap();
    let tree2 = random_tree(2, 1, 6).unwrap();
    let params = PipelineParams { k: 1, d: 1, seed: 77 };
    let a = ramsey_pipeline(&host, &psi, &tree1, &tree2, &params).unwrap();
    let b = ramsey_pipeline(&host, &psi, &tree1, &tree2, &params).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

/// Same block-local colouring on a host too small for the dichotomy bound:
/// the pipeline stops honestly at the precondition stage.
#[test]
fn undersized_host_fails_at_the_dichotomy_precondition() {
    let host = build_host(60, 4, 2, 2, 3).unwrap();
    let r = host.r;
    let psi = EdgeColouring::from_rule(&host.graph, |u, v| {
        if u / r == v / r {
            Colour::Blue
        } else {
            Colour::Red
        }
    });
    let tree1 = random_tree(3, 2, 1).unwrap();
    let tree2 = random_tree(3, 2, 2).unwrap();
    let params = PipelineParams { k: 1, d: 2, seed: 9 };
    let out = ramsey_pipeline(&host, &psi, &tree1, &tree2, &params).unwrap();
    assert_eq!(out.failure_stage(), Some("dichotomy-precondition"));
}

/// Swapped majority: an all-red colouring routes the first tree through the
/// chopping branch with red in the working role.
#[test]
fn majority_swap_keeps_witness_roles_straight() {
    // t = 6 matches s = (d + d^2) k so the chopping capacity holds.
    let host = PartitionedHost::from_base(Graph::complete(40), 6, 6).unwrap();
    let psi = EdgeColouring::all_red(&host.graph);
    let tree1 = random_tree(3, 2, 31).unwrap();
    let tree2 = random_tree(3, 2, 32).unwrap();
    let params = PipelineParams { k: 1, d: 2, seed: 4 };
    let out = ramsey_pipeline(&host, &psi, &tree1, &tree2, &params).unwrap();
    let w = out.witness().expect("an all-red complete host is easy");
    assert_eq!(w.colour, Colour::Red);
    assert_eq!(w.tree, tree1);
    let stages: Vec<&str> = w.step_log.iter().map(|s| s.stage.as_str()).collect();
    assert!(stages.contains(&"chopping"));
}

/// The empirical expander certificate passes on an accepted random regular
/// graph at desk scale: 10 random induced quarters each contain a sampled
/// 6-vertex tree of maximum degree 3.
#[test]
fn expander_certificate_all_pass_at_desk_scale() {
    let acc = random_regular_lambda_accepted(400, 8, 21).unwrap();
    let cert = expander_certificate(&acc.graph, acc.profile, 6, 3, 0.25, 10, 55).unwrap();
    assert!(cert.analytic.pass, "lambda-accepted graphs pass the analytic reduction");
    assert_eq!(cert.samples.len(), 10);
    assert!(cert.samples.iter().all(|s| s.pass), "{:?}", cert.samples);
    assert!(cert.all_pass);
    assert_eq!(cert.samples[0].subgraph_size, 100);
}
