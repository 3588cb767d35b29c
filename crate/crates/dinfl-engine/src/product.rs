//! Disjoint unions of contexts and the induced product decomposition.
//!
//! The algebra of a disjoint union is isomorphic to the direct product of the
//! factor algebras via restriction: each upset of the union splits into its
//! per-factor blocks.  `verify_product_iso` checks that map exhaustively.

use std::collections::HashSet;

use ordered_context::{RepContext, ValidationError};
use relcore::{Carrier, CheckFailure, CheckRecord, Rel, VerificationReport, MAX_CARRIER};

use crate::DInFLAlgebra;

/// Disjoint union of contexts, elements relabelled "i.name" by factor
/// position.  Orders, equivalences, and automorphisms act blockwise.
pub fn product_context(factors: &[RepContext]) -> Result<RepContext, ValidationError> {
    if factors.is_empty() {
        return Err(ValidationError::new(
            "elements",
            "product needs at least one factor".to_string(),
        ));
    }
    let total: usize = factors.iter().map(|c| c.carrier().size()).sum();
    if total > MAX_CARRIER {
        return Err(ValidationError::new(
            "elements",
            format!("product carrier has {total} elements, limit {MAX_CARRIER}"),
        ));
    }
    let mut labels = Vec::with_capacity(total);
    let mut leq_pairs = Vec::new();
    let mut e_pairs = Vec::new();
    let mut alpha = Vec::with_capacity(total);
    let mut offset = 0;
    for (i, ctx) in factors.iter().enumerate() {
        for label in ctx.carrier().labels() {
            labels.push(format!("{i}.{label}"));
        }
        for (x, y) in ctx.poset().leq().member_pairs() {
            leq_pairs.push((offset + x, offset + y));
        }
        for (x, y) in ctx.e().member_pairs() {
            e_pairs.push((offset + x, offset + y));
        }
        for &im in ctx.alpha() {
            alpha.push(offset + im);
        }
        offset += ctx.carrier().size();
    }
    let carrier = Carrier::new(labels);
    let poset = ordered_context::FinitePoset::new(carrier, &leq_pairs)?;
    let e = Rel::from_pairs(poset.universe(), &e_pairs);
    RepContext::new(poset, e, alpha)
}

/// Restriction of a joint upset to one factor's block of E.
fn restrict(joint_rel: &Rel, factor: &RepContext, offset: usize) -> Rel {
    Rel::from_fn(factor.e_universe(), |x, y| {
        joint_rel.contains(offset + x, offset + y)
    })
}

/// Checks that restriction is an isomorphism from the joint algebra onto the
/// direct product of the factor algebras: blockwise context decomposition,
/// bijectivity, constants, order, negations, and all binary operations.
pub fn verify_product_iso(joint: &DInFLAlgebra, factors: &[DInFLAlgebra]) -> VerificationReport {
    let jctx = joint.context();
    let total: usize = factors.iter().map(|f| f.context().carrier().size()).sum();

    let mut shape = CheckRecord::new(
        "context-decomposition",
        "joint context is the disjoint union of the factor contexts",
    );
    shape.check(total == jctx.carrier().size(), || {
        CheckFailure::new(
            "carrier sizes",
            format!("{total}"),
            format!("{}", jctx.carrier().size()),
        )
    });
    if !shape.passed() {
        return VerificationReport::new("product-iso", vec![shape]);
    }
    let mut offsets = Vec::with_capacity(factors.len());
    let mut offset = 0;
    for (i, f) in factors.iter().enumerate() {
        offsets.push(offset);
        let fctx = f.context();
        let m = fctx.carrier().size();
        for x in 0..m {
            let expect = format!("{i}.{}", fctx.carrier().label(x));
            let got = jctx.carrier().label(offset + x);
            shape.check(expect == got, || {
                CheckFailure::new(format!("label {}", offset + x), expect.clone(), got.to_string())
            });
            shape.check(jctx.alpha()[offset + x] == offset + fctx.alpha()[x], || {
                CheckFailure::new(
                    format!("alpha at {}.{}", i, fctx.carrier().label(x)),
                    format!("{}", offset + fctx.alpha()[x]),
                    format!("{}", jctx.alpha()[offset + x]),
                )
            });
            for y in 0..m {
                let le_match = jctx.poset().le(offset + x, offset + y) == fctx.poset().le(x, y);
                let e_match = jctx.e().contains(offset + x, offset + y) == fctx.e().contains(x, y);
                shape.check(le_match && e_match, || {
                    CheckFailure::new(
                        format!("block {i} pair ({x},{y})"),
                        "order and E agree with the factor".to_string(),
                        format!("le match {le_match}, E match {e_match}"),
                    )
                });
            }
        }
        offset += m;
    }
    let n = jctx.carrier().size();
    for x in 0..n {
        for y in 0..n {
            let same_block = offsets
                .iter()
                .zip(factors.iter())
                .any(|(&o, f)| (o..o + f.context().carrier().size()).contains(&x)
                    && (o..o + f.context().carrier().size()).contains(&y));
            if !same_block {
                shape.check(!jctx.poset().le(x, y) && !jctx.e().contains(x, y), || {
                    CheckFailure::new(
                        format!("cross pair ({x},{y})"),
                        "unrelated across blocks".to_string(),
                        "related".to_string(),
                    )
                });
            }
        }
    }

    let mut checks = vec![shape];

    let mut defined = CheckRecord::new(
        "restriction-well-defined",
        "each block restriction of a joint upset is a factor upset",
    );
    let mut tuples: Vec<Vec<usize>> = Vec::with_capacity(joint.len());
    for a in 0..joint.len() {
        let mut tuple = Vec::with_capacity(factors.len());
        for (f, &off) in factors.iter().zip(&offsets) {
            let part = restrict(joint.element(a), f.context(), off);
            match f.index_of(&part) {
                Some(i) => tuple.push(i),
                None => {
                    defined.check(false, || {
                        CheckFailure::new(
                            format!("element {a} at offset {off}"),
                            "a factor carrier element".to_string(),
                            format!("{part}"),
                        )
                    });
                    tuple.push(usize::MAX);
                }
            }
        }
        defined.tally();
        tuples.push(tuple);
    }
    let well_defined = defined.passed();
    checks.push(defined);
    if !well_defined {
        return VerificationReport::new("product-iso", checks);
    }

    let mut bij = CheckRecord::new(
        "bijective",
        "restriction tuples are distinct and exhaust the product carrier",
    );
    let expected: usize = factors.iter().map(|f| f.len()).product();
    bij.check(joint.len() == expected, || {
        CheckFailure::new(
            "carrier cardinality",
            format!("{expected}"),
            format!("{}", joint.len()),
        )
    });
    let distinct: HashSet<&Vec<usize>> = tuples.iter().collect();
    bij.check(distinct.len() == tuples.len(), || {
        CheckFailure::new(
            "tuple collision",
            format!("{} distinct tuples", tuples.len()),
            format!("{}", distinct.len()),
        )
    });
    checks.push(bij);

    let mut constants = CheckRecord::new("constants", "1 and 0 restrict to the factor constants");
    for (i, f) in factors.iter().enumerate() {
        constants.check(tuples[joint.identity_index()][i] == f.identity_index(), || {
            CheckFailure::new(
                format!("unit, factor {i}"),
                format!("{}", f.identity_index()),
                format!("{}", tuples[joint.identity_index()][i]),
            )
        });
        constants.check(tuples[joint.zero_index()][i] == f.zero_index(), || {
            CheckFailure::new(
                format!("zero, factor {i}"),
                format!("{}", f.zero_index()),
                format!("{}", tuples[joint.zero_index()][i]),
            )
        });
    }
    checks.push(constants);

    let mut unary = CheckRecord::new("preserves-negations", "~ and - act componentwise");
    for a in 0..joint.len() {
        for (i, f) in factors.iter().enumerate() {
            unary.check(tuples[joint.tilde_idx(a)][i] == f.tilde_idx(tuples[a][i]), || {
                CheckFailure::new(
                    format!("~ at element {a}, factor {i}"),
                    format!("{}", f.tilde_idx(tuples[a][i])),
                    format!("{}", tuples[joint.tilde_idx(a)][i]),
                )
            });
            unary.check(tuples[joint.minus_idx(a)][i] == f.minus_idx(tuples[a][i]), || {
                CheckFailure::new(
                    format!("- at element {a}, factor {i}"),
                    format!("{}", f.minus_idx(tuples[a][i])),
                    format!("{}", tuples[joint.minus_idx(a)][i]),
                )
            });
        }
    }
    checks.push(unary);

    let mut order = CheckRecord::new("preserves-order", "inclusion holds iff it holds in every factor");
    let mut meet = CheckRecord::new("preserves-meet", "(a ∩ b) restricts componentwise");
    let mut join = CheckRecord::new("preserves-join", "(a ∪ b) restricts componentwise");
    let mut fuse = CheckRecord::new("preserves-composition", "(a ∘ b) restricts componentwise");
    for a in 0..joint.len() {
        for b in 0..joint.len() {
            let joint_le = joint.le_idx(a, b);
            let factor_le = (0..factors.len()).all(|i| factors[i].le_idx(tuples[a][i], tuples[b][i]));
            order.check(joint_le == factor_le, || {
                CheckFailure::new(
                    format!("({a}, {b})"),
                    format!("both {joint_le}"),
                    format!("joint {joint_le}, factors {factor_le}"),
                )
            });
            let jm = joint.meet_idx(a, b);
            let jj = joint.join_idx(a, b);
            let jf = joint.fuse_idx(a, b);
            for (i, f) in factors.iter().enumerate() {
                meet.check(tuples[jm][i] == f.meet_idx(tuples[a][i], tuples[b][i]), || {
                    CheckFailure::new(
                        format!("({a}, {b}) factor {i}"),
                        format!("{}", f.meet_idx(tuples[a][i], tuples[b][i])),
                        format!("{}", tuples[jm][i]),
                    )
                });
                join.check(tuples[jj][i] == f.join_idx(tuples[a][i], tuples[b][i]), || {
                    CheckFailure::new(
                        format!("({a}, {b}) factor {i}"),
                        format!("{}", f.join_idx(tuples[a][i], tuples[b][i])),
                        format!("{}", tuples[jj][i]),
                    )
                });
                fuse.check(tuples[jf][i] == f.fuse_idx(tuples[a][i], tuples[b][i]), || {
                    CheckFailure::new(
                        format!("({a}, {b}) factor {i}"),
                        format!("{}", f.fuse_idx(tuples[a][i], tuples[b][i])),
                        format!("{}", tuples[jf][i]),
                    )
                });
            }
        }
    }
    checks.push(order);
    checks.push(meet);
    checks.push(join);
    checks.push(fuse);

    VerificationReport::new("product-iso", checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_algebra;
    use ordered_context::samples;

    #[test]
    fn two_singletons_give_four_elements() {
        let s = samples::singleton();
        let joint_ctx = product_context(&[s.clone(), s.clone()]).unwrap();
        assert_eq!(joint_ctx.carrier().labels(), &["0.x".to_string(), "1.x".to_string()]);
        let joint = build_algebra(&joint_ctx, 1 << 16).unwrap();
        assert_eq!(joint.len(), 4);
        let factor = build_algebra(&s, 1 << 16).unwrap();
        let report = verify_product_iso(&joint, &[factor.clone(), factor]);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn chain_times_swap_decomposes() {
        let c = samples::chain2();
        let w = samples::antichain2_swap();
        let joint_ctx = product_context(&[c.clone(), w.clone()]).unwrap();
        let joint = build_algebra(&joint_ctx, 1 << 20).unwrap();
        let fc = build_algebra(&c, 1 << 16).unwrap();
        let fw = build_algebra(&w, 1 << 16).unwrap();
        assert_eq!(joint.len(), fc.len() * fw.len());
        let report = verify_product_iso(&joint, &[fc, fw]);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn mismatched_factor_order_is_detected() {
        let c = samples::chain2();
        let w = samples::antichain2_swap();
        let joint_ctx = product_context(&[c.clone(), w.clone()]).unwrap();
        let joint = build_algebra(&joint_ctx, 1 << 20).unwrap();
        let fc = build_algebra(&c, 1 << 16).unwrap();
        let fw = build_algebra(&w, 1 << 16).unwrap();
        let report = verify_product_iso(&joint, &[fw, fc]);
        assert!(!report.passed());
    }

    #[test]
    fn oversized_product_is_rejected() {
        let c = samples::chain2();
        let err = product_context(&[c.clone(), c.clone(), c.clone(), c.clone(), c]).unwrap_err();
        assert_eq!(err.field, "elements");
    }

    #[test]
    fn empty_product_is_rejected() {
        assert!(product_context(&[]).is_err());
    }
}
