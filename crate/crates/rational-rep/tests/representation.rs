//! End-to-end checks of the sampled verifiers and their fault detection.

use rational_rep::{
    verify_composition, verify_composition_against, verify_embedding, verify_structure, ChainKind,
};
use sugihara_chains::fuse_indices;

fn wrong_diagonal(i: i64, j: i64) -> i64 {
    if i.abs() == j.abs() {
        i.max(j)
    } else {
        fuse_indices(i, j)
    }
}

#[test]
fn composition_verifier_covers_every_cell_and_passes() {
    let report = verify_composition(1, 30, 0);
    assert!(report.passed(), "{report}");
    assert_eq!(report.checks.len(), 25);
    assert!(report.checks.iter().all(|c| c.cell.is_some()));
    assert!(report.total_trials() > 0);

    // Both factors and the composite are empty here, so the record exists
    // but nothing can be sampled.
    let empty = report.checks.iter().find(|c| c.cell == Some((-2, -2))).unwrap();
    assert_eq!(empty.trials, 0);

    let wider = verify_composition(2, 10, 7);
    assert!(wider.passed(), "{wider}");
    assert_eq!(wider.checks.len(), 49);
}

#[test]
fn a_wrong_diagonal_is_caught_with_counterexamples() {
    let report = verify_composition_against(1, 20, 0, wrong_diagonal);
    assert!(!report.passed());

    let mutated = [(1, -1), (-1, 1), (2, -2), (-2, 2)];
    let failed: Vec<(i32, i32)> = report.failed_checks().map(|c| c.cell.unwrap()).collect();
    for cell in mutated {
        assert!(failed.contains(&cell), "cell {cell:?} escaped detection");
    }
    assert!(
        failed.iter().all(|c| mutated.contains(c)),
        "an unmutated cell failed: {failed:?}"
    );
    for rec in report.failed_checks() {
        assert!(!rec.failures.is_empty());
        assert!(rec.failures[0].pair.is_some());
    }
}

#[test]
fn structure_lemmas_hold_in_small_dimensions() {
    for n in [1, 2] {
        let report = verify_structure(n, 40, 11);
        assert!(report.passed(), "{report}");
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "order-equals-zero",
                "strata-compose-at-the-minimum",
                "members-persist-upward",
                "negations-coincide",
                "family-forms-a-chain",
                "members-compose-transitively",
            ]
        );
        assert!(report.total_trials() > 0);
    }
}

#[test]
fn embeddings_hold_for_both_parities() {
    let odd = verify_embedding(ChainKind::Odd, 1, 40, 3);
    assert!(odd.passed(), "{odd}");
    let names: Vec<&str> = odd.checks.iter().map(|c| c.name.as_str()).collect();
    assert!(names.contains(&"lift-bridge"));
    assert!(names.contains(&"order-reflected-at-boundaries"));

    let even = verify_embedding(ChainKind::Even, 1, 40, 3);
    assert!(even.passed(), "{even}");
    assert!(!even.checks.iter().any(|c| c.name == "lift-bridge"));
}

#[test]
fn reports_are_byte_identical_per_seed() {
    let a = serde_json::to_string(&verify_composition_against(1, 15, 9, wrong_diagonal)).unwrap();
    let b = serde_json::to_string(&verify_composition_against(1, 15, 9, wrong_diagonal)).unwrap();
    assert_eq!(a, b);

    let c = serde_json::to_string(&verify_structure(2, 25, 5)).unwrap();
    let d = serde_json::to_string(&verify_structure(2, 25, 5)).unwrap();
    assert_eq!(c, d);
}
