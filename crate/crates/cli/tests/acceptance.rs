//! Acceptance gate for the whole workspace.  Each test covers one numbered
//! criterion, prints exactly one `[criterion N] PASS` or `[criterion N] FAIL`
//! line, and enforces the criterion's wall-clock budget.

use std::time::{Duration, Instant};

use dinfl_engine::{
    build_algebra, find_embedding, generate_subalgebra, is_cyclic, product_context,
    verify_homomorphism, verify_infl_axioms, verify_product_iso, verify_table_axioms,
    DInFLAlgebra, FiniteInFLTables, Homomorphism,
};
use ordered_context::{enumerate_contexts, samples, RepContext, DEFAULT_UPSET_CAP};
use rational_rep::{
    verify_composition, verify_composition_against, verify_embedding, verify_structure, ChainKind,
};
use relcore::Rel;
use sugihara_chains::{build_chain, fuse_indices, verify_sugihara_axioms};

fn verdict(n: usize, started: Instant, budget: Duration, passed: bool, detail: &str) {
    let elapsed = started.elapsed();
    let in_budget = elapsed <= budget;
    println!(
        "[criterion {n}] {} ({:.1}s)",
        if passed && in_budget { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
    );
    assert!(passed, "criterion {n}: {detail}");
    assert!(in_budget, "criterion {n}: took {elapsed:?}, budget {budget:?}");
}

fn algebra(ctx: &RepContext) -> DInFLAlgebra {
    build_algebra(ctx, DEFAULT_UPSET_CAP).expect("algebra within cap")
}

#[test]
fn criterion_1_three_element_chain_is_realized_exactly() {
    let started = Instant::now();
    let ctx = samples::antichain2_swap();
    let alg = algebra(&ctx);
    let mut passed = alg.len() == 16;

    let empty = Rel::empty(ctx.e_universe());
    let leq = ctx.leq_upset();
    let universal = Rel::universal(ctx.e_universe());
    let closure = generate_subalgebra(&ctx, &[empty.clone(), universal.clone()], DEFAULT_UPSET_CAP)
        .expect("closure within cap");
    passed &= closure.len() == 3;
    passed &= closure.contains(&empty) && closure.contains(&leq) && closure.contains(&universal);

    let chain = build_chain(3).expect("S_3");
    let map = vec![
        alg.index_of(&empty).expect("empty is an upset"),
        alg.index_of(&leq).expect("order is an upset"),
        alg.index_of(&universal).expect("universal is an upset"),
    ];
    let h = Homomorphism { map, embedding: true };
    let report = verify_homomorphism(&chain.to_tables(), &alg, &h);
    passed &= report.passed();

    verdict(1, started, Duration::from_secs(1), passed, &report.to_string());
}

#[test]
fn criterion_2_every_small_context_yields_a_lawful_algebra() {
    let started = Instant::now();
    let mut passed = true;
    let mut detail = String::new();
    let mut seen = 0usize;
    for n in 1..=3 {
        for ctx in enumerate_contexts(n) {
            seen += 1;
            let alg = algebra(&ctx);
            let report = verify_infl_axioms(&alg);
            let (cyclic, _) = is_cyclic(&alg);
            let consistent = cyclic == ctx.alpha_is_identity();
            if !report.passed() || !consistent {
                passed = false;
                detail = format!("context #{seen} (n = {n}): {report}");
            }
        }
    }
    passed &= seen == 49;
    verdict(2, started, Duration::from_secs(120), passed, &detail);
}

#[test]
fn criterion_3_composition_tables_hold_in_both_directions() {
    let started = Instant::now();
    let mut passed = true;
    let mut detail = String::new();
    for n in 1..=3 {
        let report = verify_composition(n, 10_000, 0);
        if !report.passed() {
            passed = false;
            detail = format!("n = {n}: {report}");
        }
    }
    verdict(3, started, Duration::from_secs(300), passed, &detail);
}

#[test]
fn criterion_4_structure_lemmas_hold() {
    let started = Instant::now();
    let mut passed = true;
    let mut detail = String::new();
    for n in 1..=3 {
        let report = verify_structure(n, 10_000, 0);
        if !report.passed() {
            passed = false;
            detail = format!("n = {n}: {report}");
        }
    }
    verdict(4, started, Duration::from_secs(180), passed, &detail);
}

#[test]
fn criterion_5_chains_embed_into_both_families() {
    let started = Instant::now();
    let mut passed = true;
    let mut detail = String::new();
    let runs = [
        (ChainKind::Odd, 1),
        (ChainKind::Odd, 2),
        (ChainKind::Odd, 3),
        (ChainKind::Even, 1),
        (ChainKind::Even, 2),
    ];
    for (kind, n) in runs {
        let report = verify_embedding(kind, n, 10_000, 0);
        if !report.passed() {
            passed = false;
            detail = format!("{kind:?} n = {n}: {report}");
        }
    }
    verdict(5, started, Duration::from_secs(180), passed, &detail);
}

#[test]
fn criterion_6_disjoint_unions_factor_as_products() {
    let started = Instant::now();
    let pool: Vec<RepContext> = (1..=3).flat_map(enumerate_contexts).collect();
    let mut passed = true;
    let mut detail = String::new();
    let mut pairs = 0usize;
    for a in &pool {
        for b in &pool {
            if a.carrier().size() + b.carrier().size() > 4 {
                continue;
            }
            pairs += 1;
            let joint_ctx = product_context(&[a.clone(), b.clone()]).expect("valid product");
            let joint = algebra(&joint_ctx);
            let report = verify_product_iso(&joint, &[algebra(a), algebra(b)]);
            if !report.passed() {
                passed = false;
                detail = format!("pair #{pairs}: {report}");
            }
        }
    }
    passed &= pairs == 122;
    verdict(6, started, Duration::from_secs(60), passed, &detail);
}

#[test]
fn criterion_7_abstract_chains_satisfy_the_axioms_with_the_right_parity() {
    let started = Instant::now();
    let mut passed = true;
    let mut detail = String::new();
    for n in 2..=12 {
        let chain = build_chain(n).expect("valid size");
        let report = verify_sugihara_axioms(&chain);
        let unit = chain.unit_index();
        let unit_fixed = chain.tilde(unit) == unit;
        if !report.passed() || unit_fixed != chain.is_odd() {
            passed = false;
            detail = format!("n = {n}: unit fixed {unit_fixed}, {report}");
        }
    }
    verdict(7, started, Duration::from_secs(10), passed, &detail);
}

fn injective_maps(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut partial = Vec::with_capacity(m);
    fn extend(m: usize, k: usize, partial: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if partial.len() == m {
            out.push(partial.clone());
            return;
        }
        for t in 0..k {
            if partial.contains(&t) {
                continue;
            }
            partial.push(t);
            extend(m, k, partial, out);
            partial.pop();
        }
    }
    extend(m, k, &mut partial, &mut out);
    out
}

fn oracle_has_embedding(source: &FiniteInFLTables, target: &DInFLAlgebra) -> bool {
    injective_maps(source.size, target.len()).into_iter().any(|map| {
        verify_homomorphism(source, target, &Homomorphism { map, embedding: true }).passed()
    })
}

#[test]
fn criterion_8_search_matches_the_oracle_and_faults_are_caught() {
    let started = Instant::now();
    let mut passed = true;
    let mut detail = String::new();

    let sources: Vec<FiniteInFLTables> = [2, 3]
        .iter()
        .map(|&n| build_chain(n).expect("valid size").to_tables())
        .collect();
    let targets: Vec<DInFLAlgebra> = (1..=2)
        .flat_map(enumerate_contexts)
        .map(|ctx| algebra(&ctx))
        .collect();
    for source in &sources {
        for target in &targets {
            let found =
                find_embedding(source, target, 1 << 22).expect("search within budget");
            let expected = oracle_has_embedding(source, target);
            if found.is_some() != expected {
                passed = false;
                detail = format!(
                    "search and oracle disagree: source size {}, target size {}, search {}",
                    source.size,
                    target.len(),
                    found.is_some(),
                );
            }
            if let Some(h) = found {
                if !verify_homomorphism(source, target, &h).passed() {
                    passed = false;
                    detail = "search returned a non-homomorphism".to_string();
                }
            }
        }
    }

    let clean = build_chain(4).expect("S_4").to_tables();
    let mut bad_fuse = clean.clone();
    bad_fuse.fuse[bad_fuse.unit * bad_fuse.size] = bad_fuse.unit;
    if verify_table_axioms(&bad_fuse).passed() {
        passed = false;
        detail = "mutated fuse table slipped through".to_string();
    }
    let mut bad_tilde = clean.clone();
    bad_tilde.tilde[0] = bad_tilde.tilde[1];
    if verify_table_axioms(&bad_tilde).passed() {
        passed = false;
        detail = "mutated negation slipped through".to_string();
    }

    let wrong_diag = |i: i64, j: i64| if i.abs() == j.abs() { i.max(j) } else { fuse_indices(i, j) };
    if verify_composition_against(1, 200, 0, wrong_diag).passed() {
        passed = false;
        detail = "mutated composition table slipped through".to_string();
    }

    let ctx = samples::antichain2_swap();
    let alg = algebra(&ctx);
    let chain = build_chain(3).expect("S_3");
    let good = find_embedding(&chain.to_tables(), &alg, 1 << 22)
        .expect("search within budget")
        .expect("the three-element chain embeds");
    let mut corrupt = good.clone();
    corrupt.map.swap(0, 2);
    if verify_homomorphism(&chain.to_tables(), &alg, &corrupt).passed() {
        passed = false;
        detail = "corrupted map slipped through".to_string();
    }

    verdict(8, started, Duration::from_secs(120), passed, &detail);
}
