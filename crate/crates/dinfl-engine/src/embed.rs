//! Homomorphism checking and backtracking embedding search.
//!
//! The source is always a finite table structure, so the same search covers
//! abstract chains and restricted subalgebras.  The search assigns source
//! elements to target indices one at a time, pruning on the unit, injectivity,
//! order in both directions, negations, and already-determined operation
//! values; the first complete assignment in candidate order is returned.

use ordered_context::ResourceError;
use relcore::{CheckFailure, CheckRecord, VerificationReport};

use crate::tables::FiniteInFLTables;
use crate::DInFLAlgebra;

/// A map from source indices to target indices.  `embedding` marks maps that
/// are required to be injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub map: Vec<usize>,
    pub embedding: bool,
}

/// Checks that `h` preserves the unit, both negations, all four binary
/// operations, and the marked constants, exhaustively over the source.
pub fn verify_homomorphism(
    source: &FiniteInFLTables,
    target: &DInFLAlgebra,
    h: &Homomorphism,
) -> VerificationReport {
    let m = source.size;
    let mut shape = CheckRecord::new("map-shape", "h is total on the source with values in the target");
    shape.check(h.map.len() == m, || {
        CheckFailure::new("domain", format!("{m} entries"), format!("{}", h.map.len()))
    });
    if shape.passed() {
        for (a, &t) in h.map.iter().enumerate() {
            shape.check(t < target.len(), || {
                CheckFailure::new(
                    format!("h({})", source.label(a)),
                    format!("index below {}", target.len()),
                    format!("{t}"),
                )
            });
        }
    }
    if !shape.passed() {
        return VerificationReport::new("homomorphism", vec![shape]);
    }
    let mut checks = vec![shape];

    if h.embedding {
        let mut inj = CheckRecord::new("injective", "h(a) = h(b) only when a = b");
        for a in 0..m {
            for b in a + 1..m {
                inj.check(h.map[a] != h.map[b], || {
                    CheckFailure::new(
                        format!("({}, {})", source.label(a), source.label(b)),
                        "distinct images".to_string(),
                        format!("both map to {}", h.map[a]),
                    )
                });
            }
        }
        checks.push(inj);
    }

    let mut unit = CheckRecord::new("unit", "h(1) = 1");
    unit.check(h.map[source.unit] == target.identity_index(), || {
        CheckFailure::new(
            format!("h({})", source.label(source.unit)),
            format!("{}", target.identity_index()),
            format!("{}", h.map[source.unit]),
        )
    });
    checks.push(unit);

    if let Some(z) = source.zero {
        let mut zero = CheckRecord::new("zero", "h(0) = 0");
        zero.check(h.map[z] == target.zero_index(), || {
            CheckFailure::new(
                format!("h({})", source.label(z)),
                format!("{}", target.zero_index()),
                format!("{}", h.map[z]),
            )
        });
        checks.push(zero);
    }

    let mut tilde = CheckRecord::new("preserves-tilde", "h(~a) = ~h(a)");
    for a in 0..m {
        tilde.check(h.map[source.tilde_at(a)] == target.tilde_idx(h.map[a]), || {
            CheckFailure::new(
                source.label(a).to_string(),
                format!("{}", target.tilde_idx(h.map[a])),
                format!("{}", h.map[source.tilde_at(a)]),
            )
        });
    }
    checks.push(tilde);

    if source.minus.is_some() {
        let mut rec = CheckRecord::new("preserves-minus", "h(-a) = -h(a)");
        for a in 0..m {
            let sm = source.minus_at(a).expect("minus table present");
            rec.check(h.map[sm] == target.minus_idx(h.map[a]), || {
                CheckFailure::new(
                    source.label(a).to_string(),
                    format!("{}", target.minus_idx(h.map[a])),
                    format!("{}", h.map[sm]),
                )
            });
        }
        checks.push(rec);
    }

    type SrcOp = fn(&FiniteInFLTables, usize, usize) -> usize;
    type TgtOp = fn(&DInFLAlgebra, usize, usize) -> usize;
    let binary: [(&str, &str, SrcOp, TgtOp); 4] = [
        ("preserves-meet", "h(a ∧ b) = h(a) ∧ h(b)", |s, a, b| s.meet_at(a, b), |t, a, b| t.meet_idx(a, b)),
        ("preserves-join", "h(a ∨ b) = h(a) ∨ h(b)", |s, a, b| s.join_at(a, b), |t, a, b| t.join_idx(a, b)),
        ("preserves-composition", "h(a · b) = h(a) · h(b)", |s, a, b| s.fuse_at(a, b), |t, a, b| t.fuse_idx(a, b)),
        ("preserves-arrow", "h(a → b) = h(a) → h(b)", |s, a, b| s.arrow_at(a, b), |t, a, b| t.arrow_idx(a, b)),
    ];
    for (name, law, src_op, tgt_op) in binary {
        let mut rec = CheckRecord::new(name, law);
        for a in 0..m {
            for b in 0..m {
                let want = tgt_op(target, h.map[a], h.map[b]);
                let got = h.map[src_op(source, a, b)];
                rec.check(want == got, || {
                    CheckFailure::new(
                        format!("({}, {})", source.label(a), source.label(b)),
                        format!("{want}"),
                        format!("{got}"),
                    )
                });
            }
        }
        checks.push(rec);
    }

    VerificationReport::new("homomorphism", checks)
}

struct Search<'a> {
    source: &'a FiniteInFLTables,
    target: &'a DInFLAlgebra,
    map: Vec<Option<usize>>,
    rev: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Can source element `s` map to target `t` given the partial map?  The
    /// candidate pair itself counts as assigned, so self-referential
    /// constraints such as ~1 = 1 prune at the point of assignment.
    fn consistent(&self, s: usize, t: usize) -> bool {
        let src = self.source;
        let tgt = self.target;
        if s == src.unit && t != tgt.identity_index() {
            return false;
        }
        if src.zero == Some(s) && t != tgt.zero_index() {
            return false;
        }
        let get = |x: usize| if x == s { Some(t) } else { self.map[x] };
        let rget = |u: usize| if u == t { Some(s) } else { self.rev[u] };
        let settled = |src_res: usize, tgt_res: usize| match get(src_res) {
            Some(u) => u == tgt_res,
            None => match rget(tgt_res) {
                Some(s3) => s3 == src_res,
                None => true,
            },
        };
        for s2 in 0..src.size {
            let Some(t2) = get(s2) else { continue };
            if src.le_at(s, s2) != tgt.le_idx(t, t2) || src.le_at(s2, s) != tgt.le_idx(t2, t) {
                return false;
            }
            if !settled(src.tilde_at(s2), tgt.tilde_idx(t2)) {
                return false;
            }
            if let Some(m2) = src.minus_at(s2) {
                if !settled(m2, tgt.minus_idx(t2)) {
                    return false;
                }
            }
            if !(settled(src.meet_at(s, s2), tgt.meet_idx(t, t2))
                && settled(src.meet_at(s2, s), tgt.meet_idx(t2, t))
                && settled(src.join_at(s, s2), tgt.join_idx(t, t2))
                && settled(src.join_at(s2, s), tgt.join_idx(t2, t))
                && settled(src.fuse_at(s, s2), tgt.fuse_idx(t, t2))
                && settled(src.fuse_at(s2, s), tgt.fuse_idx(t2, t))
                && settled(src.arrow_at(s, s2), tgt.arrow_idx(t, t2))
                && settled(src.arrow_at(s2, s), tgt.arrow_idx(t2, t)))
            {
                return false;
            }
        }
        true
    }

    fn assign(&mut self, depth: usize, order: &[usize]) -> Result<bool, ResourceError> {
        if depth == order.len() {
            return Ok(true);
        }
        let s = order[depth];
        for t in 0..self.target.len() {
            if self.rev[t].is_some() {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(ResourceError {
                    what: "embedding search nodes",
                    cap: self.budget as usize,
                    lower_bound: self.budget as usize + 1,
                });
            }
            if !self.consistent(s, t) {
                continue;
            }
            self.map[s] = Some(t);
            self.rev[t] = Some(s);
            if self.assign(depth + 1, order)? {
                return Ok(true);
            }
            self.map[s] = None;
            self.rev[t] = None;
        }
        Ok(false)
    }
}

/// Searches for an injective homomorphism from the table structure into the
/// algebra.  Returns the first embedding in deterministic candidate order,
/// `None` when the search space is exhausted, or `ResourceError` when more
/// than `budget` candidate assignments were tried.  A found map is always
/// re-validated before being returned.
pub fn find_embedding(
    source: &FiniteInFLTables,
    target: &DInFLAlgebra,
    budget: u64,
) -> Result<Option<Homomorphism>, ResourceError> {
    if source.size > target.len() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..source.size).collect();
    order.sort_by_key(|&s| (s != source.unit, source.zero != Some(s), s));
    let mut search = Search {
        source,
        target,
        map: vec![None; source.size],
        rev: vec![None; target.len()],
        nodes: 0,
        budget,
    };
    if search.assign(0, &order)? {
        let map: Vec<usize> = search.map.iter().map(|t| t.expect("complete assignment")).collect();
        let h = Homomorphism { map, embedding: true };
        let report = verify_homomorphism(source, target, &h);
        assert!(report.passed(), "search returned an invalid embedding: {report}");
        Ok(Some(h))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_algebra, tables_for_subset};
    use ordered_context::samples;
    use relcore::Rel;

    fn three_chain_tables() -> FiniteInFLTables {
        let ctx = samples::antichain2_swap();
        let alg = build_algebra(&ctx, 1 << 16).unwrap();
        let sub = vec![
            Rel::empty(ctx.e_universe()),
            ctx.leq_upset(),
            Rel::universal(ctx.e_universe()),
        ];
        tables_for_subset(&alg, &sub)
    }

    #[test]
    fn three_chain_embeds_into_swap_algebra() {
        let ctx = samples::antichain2_swap();
        let alg = build_algebra(&ctx, 1 << 16).unwrap();
        let t = three_chain_tables();
        let h = find_embedding(&t, &alg, 1 << 20).unwrap().expect("embedding exists");
        assert_eq!(h.map.len(), 3);
        let bottom = alg.index_of(&Rel::empty(ctx.e_universe())).unwrap();
        let top = alg.index_of(&Rel::universal(ctx.e_universe())).unwrap();
        assert_eq!(h.map, vec![bottom, alg.identity_index(), top]);
    }

    #[test]
    fn three_chain_does_not_embed_into_chain2_algebra() {
        let alg = build_algebra(&samples::chain2(), 1 << 16).unwrap();
        let t = three_chain_tables();
        let found = find_embedding(&t, &alg, 1 << 20).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn corrupted_map_is_rejected() {
        let ctx = samples::antichain2_swap();
        let alg = build_algebra(&ctx, 1 << 16).unwrap();
        let t = three_chain_tables();
        let mut h = find_embedding(&t, &alg, 1 << 20).unwrap().unwrap();
        h.map.swap(0, 2);
        let report = verify_homomorphism(&t, &alg, &h);
        assert!(!report.passed());
        assert!(report.failed_checks().next().unwrap().failures.len() <= 8);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let ctx = samples::antichain2_swap();
        let alg = build_algebra(&ctx, 1 << 16).unwrap();
        let t = three_chain_tables();
        let err = find_embedding(&t, &alg, 2).unwrap_err();
        assert_eq!(err.what, "embedding search nodes");
    }

    #[test]
    fn oversized_source_returns_none_quickly() {
        let big = build_algebra(&samples::antichain2_swap(), 1 << 16).unwrap();
        let t = big.to_tables();
        let small = build_algebra(&samples::singleton(), 1 << 16).unwrap();
        assert!(find_embedding(&t, &small, 10).unwrap().is_none());
    }
}
