//! Cross-checks between index-built chains and the relation algebras that
//! realize the smallest ones, plus fault injection into the tables.

use dinfl_engine::{build_algebra, tables_for_subset};
use ordered_context::{samples, FinitePoset, RepContext};
use relcore::{Carrier, Rel};
use sugihara_chains::{build_chain, direct_reduct_check, verify_sugihara_axioms};

#[test]
fn every_chain_through_twelve_passes_the_full_suite() {
    for n in 1..=12 {
        let chain = build_chain(n).unwrap();
        let report = verify_sugihara_axioms(&chain);
        assert!(report.passed(), "size {n}:\n{report}");
        assert_eq!(report.suite, "sugihara-axioms");
        assert!(report.total_trials() > 0);
    }
}

#[test]
fn corrupting_one_monoid_entry_is_detected() {
    let mut chain = build_chain(4).unwrap();
    let a = chain.position(2).unwrap();
    let b = chain.position(-2).unwrap();
    // a_2 · a_-2 is a_-2; overwrite the cell with a_2 instead.
    chain.tables.fuse[a * 4 + b] = a;
    let report = verify_sugihara_axioms(&chain);
    assert!(!report.passed());
    let failed: Vec<&str> = report.failed_checks().map(|c| c.name.as_str()).collect();
    assert!(failed.contains(&"fuse-commutative"), "failed: {failed:?}");
    assert!(failed.contains(&"residuation-left"), "failed: {failed:?}");
    let rec = report
        .failed_checks()
        .find(|c| c.name == "residuation-left")
        .unwrap();
    assert!(!rec.failures.is_empty());
}

#[test]
fn the_two_element_chain_is_the_singleton_context_algebra() {
    let chain = build_chain(2).unwrap().to_tables();
    let alg = build_algebra(&samples::singleton(), 64).unwrap().to_tables();
    assert_eq!(chain.size, alg.size);
    assert_eq!(chain.unit, alg.unit);
    assert_eq!(chain.zero, alg.zero);
    assert_eq!(chain.meet, alg.meet);
    assert_eq!(chain.join, alg.join);
    assert_eq!(chain.fuse, alg.fuse);
    assert_eq!(chain.arrow, alg.arrow);
    assert_eq!(chain.tilde, alg.tilde);
    assert_eq!(chain.minus, alg.minus);
    assert_eq!(chain.under, alg.under);
    assert_eq!(chain.over, alg.over);
}

#[test]
fn the_three_element_chain_is_a_subalgebra_of_the_swap_context_algebra() {
    let chain = build_chain(3).unwrap().to_tables();
    let ctx = samples::antichain2_swap();
    let alg = build_algebra(&ctx, 64).unwrap();
    let subset = [
        Rel::empty(ctx.e_universe()),
        ctx.leq_upset(),
        Rel::universal(ctx.e_universe()),
    ];
    let sub = tables_for_subset(&alg, &subset);
    assert_eq!(chain.size, sub.size);
    assert_eq!(chain.unit, sub.unit);
    assert_eq!(chain.zero, sub.zero);
    assert_eq!(chain.meet, sub.meet);
    assert_eq!(chain.join, sub.join);
    assert_eq!(chain.fuse, sub.fuse);
    assert_eq!(chain.arrow, sub.arrow);
    assert_eq!(chain.tilde, sub.tilde);
    assert_eq!(chain.minus, sub.minus);
    assert_eq!(chain.under, sub.under);
    assert_eq!(chain.over, sub.over);
}

#[test]
fn noncommutative_algebras_stop_at_the_arrow_identity() {
    let alg = build_algebra(&samples::chain2(), 64).unwrap();
    let report = direct_reduct_check(&alg);
    assert!(report.passed(), "{report}");
    assert_eq!(report.checks.len(), 1);
    assert_eq!(report.checks[0].name, "arrow-definition");
}

#[test]
fn commutative_idempotent_algebras_run_the_full_monoid_suite() {
    // Discrete E over a two-point antichain: the carrier is all four
    // sub-identity relations and composition is intersection.
    let poset = FinitePoset::new(Carrier::new(["x", "y"]), &[]).unwrap();
    let e = Rel::identity(poset.universe());
    let ctx = RepContext::new(poset, e, vec![0, 1]).unwrap();
    let alg = build_algebra(&ctx, 64).unwrap();
    assert_eq!(alg.len(), 4);
    let report = direct_reduct_check(&alg);
    assert!(report.passed(), "{report}");
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    assert!(names.contains(&"arrow-definition"));
    assert!(names.contains(&"residuals-coincide"));
    assert!(names.contains(&"fuse-commutative"));
    assert!(names.contains(&"fuse-idempotent"));
    assert!(names.contains(&"contraposition"));
    assert!(names.contains(&"residuation-arrow"));
}
