//! Exhaustive axiom checking for involutive residuated lattice tables.
//!
//! Every law is evaluated on all element tuples, so a pass is a proof for the
//! finite structure at hand.  Checks run on `FiniteInFLTables` rather than on
//! relations directly; corrupting a single table entry must flip the verdict.

use crate::tables::FiniteInFLTables;
use crate::DInFLAlgebra;
use relcore::{CheckFailure, CheckRecord, VerificationReport};

/// Checks the full axiom set of the algebra by reading off its tables.
pub fn verify_infl_axioms(alg: &DInFLAlgebra) -> VerificationReport {
    verify_table_axioms(&alg.to_tables())
}

/// Counterexample text is only built on failure; the passing path stays
/// allocation-free so exhaustive triple loops run at table-lookup speed.
fn check_eq(
    rec: &mut CheckRecord,
    t: &FiniteInFLTables,
    lhs: usize,
    rhs: usize,
    input: impl FnOnce() -> String,
) {
    rec.check(lhs == rhs, || {
        CheckFailure::new(input(), t.label(lhs).to_string(), t.label(rhs).to_string())
    });
}

/// Checks lattice, monoid, residuation, and involution laws on raw tables.
pub fn verify_table_axioms(t: &FiniteInFLTables) -> VerificationReport {
    let n = t.size;
    let mut checks = Vec::new();
    let name = |a: usize| t.label(a).to_string();
    let pair = |a: usize, b: usize| format!("({}, {})", t.label(a), t.label(b));
    let triple = |a: usize, b: usize, c: usize| {
        format!("({}, {}, {})", t.label(a), t.label(b), t.label(c))
    };

    let mut rec = CheckRecord::new("lattice-idempotent", "a ∧ a = a and a ∨ a = a");
    for a in 0..n {
        check_eq(&mut rec, t, t.meet_at(a, a), a, || name(a));
        check_eq(&mut rec, t, t.join_at(a, a), a, || name(a));
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("lattice-commutative", "a ∧ b = b ∧ a and a ∨ b = b ∨ a");
    for a in 0..n {
        for b in 0..n {
            check_eq(&mut rec, t, t.meet_at(a, b), t.meet_at(b, a), || pair(a, b));
            check_eq(&mut rec, t, t.join_at(a, b), t.join_at(b, a), || pair(a, b));
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("lattice-absorption", "a ∧ (a ∨ b) = a and a ∨ (a ∧ b) = a");
    for a in 0..n {
        for b in 0..n {
            check_eq(&mut rec, t, t.meet_at(a, t.join_at(a, b)), a, || pair(a, b));
            check_eq(&mut rec, t, t.join_at(a, t.meet_at(a, b)), a, || pair(a, b));
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new(
        "lattice-associative",
        "(a ∧ b) ∧ c = a ∧ (b ∧ c) and (a ∨ b) ∨ c = a ∨ (b ∨ c)",
    );
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                check_eq(
                    &mut rec,
                    t,
                    t.meet_at(t.meet_at(a, b), c),
                    t.meet_at(a, t.meet_at(b, c)),
                    || triple(a, b, c),
                );
                check_eq(
                    &mut rec,
                    t,
                    t.join_at(t.join_at(a, b), c),
                    t.join_at(a, t.join_at(b, c)),
                    || triple(a, b, c),
                );
            }
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("lattice-distributive", "a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                check_eq(
                    &mut rec,
                    t,
                    t.meet_at(a, t.join_at(b, c)),
                    t.join_at(t.meet_at(a, b), t.meet_at(a, c)),
                    || triple(a, b, c),
                );
            }
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("monoid-associative", "(a · b) · c = a · (b · c)");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                check_eq(
                    &mut rec,
                    t,
                    t.fuse_at(t.fuse_at(a, b), c),
                    t.fuse_at(a, t.fuse_at(b, c)),
                    || triple(a, b, c),
                );
            }
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("monoid-unit", "1 · a = a = a · 1");
    for a in 0..n {
        check_eq(&mut rec, t, t.fuse_at(t.unit, a), a, || name(a));
        check_eq(&mut rec, t, t.fuse_at(a, t.unit), a, || name(a));
    }
    checks.push(rec);

    if let Some(under) = &t.under {
        let mut rec = CheckRecord::new("residuation-left", "a · b ≤ c iff b ≤ a \\ c");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = t.le_at(t.fuse_at(a, b), c);
                    let rhs = t.le_at(b, under[a * n + c]);
                    rec.check(lhs == rhs, || {
                        CheckFailure::new(
                            triple(a, b, c),
                            format!("both sides {lhs}"),
                            format!("a·b ≤ c is {lhs}, b ≤ a\\c is {rhs}"),
                        )
                    });
                }
            }
        }
        checks.push(rec);
    }

    if let Some(over) = &t.over {
        let mut rec = CheckRecord::new("residuation-right", "a · b ≤ c iff a ≤ c / b");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = t.le_at(t.fuse_at(a, b), c);
                    let rhs = t.le_at(a, over[c * n + b]);
                    rec.check(lhs == rhs, || {
                        CheckFailure::new(
                            triple(a, b, c),
                            format!("both sides {lhs}"),
                            format!("a·b ≤ c is {lhs}, a ≤ c/b is {rhs}"),
                        )
                    });
                }
            }
        }
        checks.push(rec);
    }

    match &t.minus {
        Some(minus) => {
            let mut rec = CheckRecord::new("involution", "-~a = a = ~-a");
            for a in 0..n {
                check_eq(&mut rec, t, minus[t.tilde_at(a)], a, || name(a));
                check_eq(&mut rec, t, t.tilde_at(minus[a]), a, || name(a));
            }
            checks.push(rec);
        }
        None => {
            let mut rec = CheckRecord::new("involution", "~~a = a");
            for a in 0..n {
                check_eq(&mut rec, t, t.tilde_at(t.tilde_at(a)), a, || name(a));
            }
            checks.push(rec);
        }
    }

    if let Some(zero) = t.zero {
        let mut rec = CheckRecord::new("zero-definition", "0 = ~1");
        check_eq(&mut rec, t, zero, t.tilde_at(t.unit), || name(t.unit));
        checks.push(rec);

        if let Some(under) = &t.under {
            let mut rec = CheckRecord::new("tilde-residual", "~a = a \\ 0");
            for a in 0..n {
                check_eq(&mut rec, t, t.tilde_at(a), under[a * n + zero], || name(a));
            }
            checks.push(rec);
        }
        if let (Some(over), Some(minus)) = (&t.over, &t.minus) {
            let mut rec = CheckRecord::new("minus-residual", "-a = 0 / a");
            for a in 0..n {
                check_eq(&mut rec, t, minus[a], over[zero * n + a], || name(a));
            }
            checks.push(rec);
        }
    }

    if let Some(minus) = &t.minus {
        let mut rec = CheckRecord::new("arrow-definition", "a → b = ~((-b) · a)");
        for a in 0..n {
            for b in 0..n {
                check_eq(
                    &mut rec,
                    t,
                    t.arrow_at(a, b),
                    t.tilde_at(t.fuse_at(minus[b], a)),
                    || pair(a, b),
                );
            }
        }
        checks.push(rec);
    }
    if let Some(under) = &t.under {
        let mut rec = CheckRecord::new("arrow-residual", "a → b = a \\ b");
        for a in 0..n {
            for b in 0..n {
                check_eq(&mut rec, t, t.arrow_at(a, b), under[a * n + b], || pair(a, b));
            }
        }
        checks.push(rec);
    }

    VerificationReport::new("infl-axioms", checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_algebra;
    use ordered_context::samples;

    #[test]
    fn chain2_algebra_satisfies_all_axioms() {
        let alg = build_algebra(&samples::chain2(), 1 << 16).unwrap();
        let report = verify_infl_axioms(&alg);
        assert!(report.passed(), "{report}");
        assert!(report.checks.len() >= 12);
    }

    #[test]
    fn swap_algebra_satisfies_all_axioms() {
        let alg = build_algebra(&samples::antichain2_swap(), 1 << 16).unwrap();
        let report = verify_infl_axioms(&alg);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn corrupted_tilde_entry_fails_involution() {
        let alg = build_algebra(&samples::chain2(), 1 << 16).unwrap();
        let mut t = alg.to_tables();
        let a = (0..t.size).find(|&a| t.tilde_at(a) != a).unwrap();
        t.tilde[a] = a;
        let report = verify_table_axioms(&t);
        assert!(!report.passed());
        let names: Vec<_> = report.failed_checks().map(|c| c.name.clone()).collect();
        assert!(names.iter().any(|n| n == "involution" || n == "tilde-residual"));
        let first = report.failed_checks().next().unwrap();
        assert!(!first.failures.is_empty());
    }

    #[test]
    fn corrupted_fuse_entry_fails_residuation() {
        let alg = build_algebra(&samples::chain2(), 1 << 16).unwrap();
        let mut t = alg.to_tables();
        let unit = t.unit;
        let other = (0..t.size).find(|&a| a != unit).unwrap();
        t.fuse[unit * t.size + unit] = other;
        let report = verify_table_axioms(&t);
        assert!(!report.passed());
        assert!(report.failed_checks().any(|c| c.name == "monoid-unit"));
    }
}
