//! Randomized verifiers for the rational relation families.
//!
//! Each verifier returns a report whose records carry per-check trial and
//! failure tallies.  Sampling is seeded and per-record streams are fixed, so
//! a report is a pure function of its arguments.  For records that loop over
//! an index range, `trials` counts samples per index, not in total.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relcore::{CheckFailure, CheckRecord, VerificationReport};
use sugihara_chains::{build_chain, fuse_indices};

use crate::family::{
    composition_table, delta_member, even_composition_table, lex_level, member, odd_member,
    LexVerdict, PointPair, SymbolicRelation,
};
use crate::point::{RationalTuple, Sign, SignedPoint};
use crate::sample::{
    generate_member, lower_at_level, raise_at_level, random_sign, random_tuple,
    sample_signed_pairs, SamplingStrategy,
};
use crate::witness::find_witness;

fn stream(seed: u64, record: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(record);
    rng
}

fn cell_stream(seed: u64, i: i64, j: i64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((((i + 32) as u64) << 8) | ((j + 32) as u64));
    rng
}

fn signed_member(rel: &SymbolicRelation, seed: u64) -> (SignedPoint, SignedPoint) {
    match generate_member(rel, seed) {
        Ok(PointPair::Signed(x, y)) => (x, y),
        other => panic!("expected a signed member of {rel}, got {other:?}"),
    }
}

/// Produces y with (z, y) in the index-j relation.  The relation must be
/// nonempty.
pub fn extend_member(n: usize, j: i64, z: &SignedPoint, rng: &mut impl Rng) -> SignedPoint {
    assert!(j > -(n as i64 + 1), "the empty relation extends nothing");
    let y = if j < 0 {
        let cap = (n as i64 + 1 + j) as usize;
        let level = rng.gen_range(1..=cap);
        SignedPoint::new(raise_at_level(&z.tuple, level, rng), random_sign(rng))
    } else if j == 0 {
        if rng.gen_bool(0.5) {
            z.clone()
        } else {
            let level = rng.gen_range(1..=n);
            SignedPoint::new(raise_at_level(&z.tuple, level, rng), random_sign(rng))
        }
    } else {
        // Allowed: equal tuples, any climb, or a descent too deep for the
        // mirrored negative index to see.
        let forbidden = n + 1 - j as usize;
        let shapes = if forbidden < n { 3 } else { 2 };
        match rng.gen_range(0..shapes) {
            0 => SignedPoint::new(z.tuple.clone(), random_sign(rng)),
            1 => {
                let level = rng.gen_range(1..=n);
                SignedPoint::new(raise_at_level(&z.tuple, level, rng), random_sign(rng))
            }
            _ => {
                let level = rng.gen_range(forbidden + 1..=n);
                SignedPoint::new(lower_at_level(&z.tuple, level, rng), random_sign(rng))
            }
        }
    };
    assert!(odd_member(n, j, z, &y), "extension must land in R_{j}");
    y
}

/// Checks the signed family's composition against its claimed index table,
/// one record per cell.  Soundness composes two members and checks the
/// result lands in the claimed composite; completeness samples the composite
/// and demands a splitting point.
pub fn verify_composition_against(
    n: usize,
    trials: u64,
    seed: u64,
    table: impl Fn(i64, i64) -> i64,
) -> VerificationReport {
    let bound = n as i64 + 1;
    let mut checks = Vec::new();
    for i in -bound..=bound {
        for j in -bound..=bound {
            let t = table(i, j);
            let mut rec = CheckRecord::for_cell(i as i32, j as i32, format!("R_{i} ; R_{j} = R_{t}"));
            let target = match SymbolicRelation::odd_r(n, t) {
                Ok(rel) => rel,
                Err(e) => {
                    rec.check(false, || {
                        CheckFailure::new(
                            format!("cell ({i}, {j})"),
                            "a composite index in range",
                            e.to_string(),
                        )
                    });
                    checks.push(rec);
                    continue;
                }
            };
            let left = SymbolicRelation::odd_r(n, i).expect("cell index in range");
            let right = SymbolicRelation::odd_r(n, j).expect("cell index in range");
            let mut rng = cell_stream(seed, i, j);

            if !left.is_empty() && !right.is_empty() {
                for _ in 0..trials {
                    let (x, z) = signed_member(&left, rng.gen());
                    let y = extend_member(n, j, &z, &mut rng);
                    rec.check(odd_member(n, t, &x, &y), || {
                        CheckFailure::new(
                            format!("({x}, {y})"),
                            format!("membership in R_{t}"),
                            "outside",
                        )
                        .with_witness(z.to_string())
                    });
                }
            }

            if !target.is_empty() {
                for _ in 0..trials {
                    let (x, y) = signed_member(&target, rng.gen());
                    match find_witness(i, j, (&x, &y), n) {
                        Ok(z) => {
                            let left_ok = odd_member(n, i, &x, &z);
                            let right_ok = odd_member(n, j, &z, &y);
                            rec.check(left_ok && right_ok, || {
                                CheckFailure::new(
                                    format!("({x}, {y})"),
                                    format!("a point splitting the pair across R_{i} and R_{j}"),
                                    format!("left leg {left_ok}, right leg {right_ok}"),
                                )
                                .with_witness(z.to_string())
                            });
                        }
                        Err(e) => {
                            rec.check(false, || {
                                CheckFailure::new(
                                    format!("({x}, {y})"),
                                    format!("a point splitting the pair across R_{i} and R_{j}"),
                                    e.to_string(),
                                )
                            });
                        }
                    }
                }
            }
            checks.push(rec);
        }
    }
    VerificationReport::new("composition-table", checks)
}

/// Composition check against the index-minimum table the family claims.
pub fn verify_composition(n: usize, trials: u64, seed: u64) -> VerificationReport {
    verify_composition_against(n, trials, seed, fuse_indices)
}

/// Checks the structural facts the composition argument leans on: the zero
/// index is the order, strata compose at the minimum level, membership is
/// monotone, and both negations land on the mirrored index.
pub fn verify_structure(n: usize, trials: u64, seed: u64) -> VerificationReport {
    verify_structure_with(n, trials, seed, SamplingStrategy::Mixture)
}

/// `verify_structure` with an explicit strategy for the records that sample
/// whole pairs rather than members.
pub fn verify_structure_with(
    n: usize,
    trials: u64,
    seed: u64,
    strategy: SamplingStrategy,
) -> VerificationReport {
    let bound = n as i64 + 1;
    let pair_count = ((trials + 3) / 4).max(1) as usize;
    let mut checks = Vec::new();

    let mut rec = CheckRecord::new("order-equals-zero", "(x, y) in R_0 iff (a(y), x) not in R_0");
    for (x, y) in sample_signed_pairs(n, strategy, pair_count, seed) {
        let direct = odd_member(n, 0, &x, &y);
        let mirrored = !odd_member(n, 0, &y.flipped(), &x);
        rec.check(direct == mirrored, || {
            CheckFailure::new(
                format!("({x}, {y})"),
                "both readings of the order agreeing",
                format!("direct {direct}, mirrored {mirrored}"),
            )
        });
    }
    checks.push(rec);

    let mut rec = CheckRecord::new(
        "strata-compose-at-the-minimum",
        "L_a ; L_b = L_min(a,b)",
    );
    let mut rng = stream(seed, 1);
    for _ in 0..trials {
        let p = random_tuple(n, &mut rng);
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        let q = raise_at_level(&p, a, &mut rng);
        let r = raise_at_level(&q, b, &mut rng);
        let want = LexVerdict::Level(a.min(b));
        let got = lex_level(&p, &r);
        rec.check(got == want, || {
            CheckFailure::new(
                format!("{p} at level {a} then {b}"),
                want.to_string(),
                got.to_string(),
            )
            .with_witness(format!("{q} then {r}"))
        });
    }
    checks.push(rec);

    let mut rec = CheckRecord::new(
        "members-persist-upward",
        "shrinking x or growing y preserves membership",
    );
    let mut rng = stream(seed, 2);
    for i in (-bound + 1)..=bound {
        let rel = SymbolicRelation::odd_r(n, i).expect("index in range");
        for _ in 0..trials {
            let (x, y) = signed_member(&rel, rng.gen());
            let level = rng.gen_range(1..=n);
            let x_low = SignedPoint::new(lower_at_level(&x.tuple, level, &mut rng), random_sign(&mut rng));
            let level = rng.gen_range(1..=n);
            let y_high = SignedPoint::new(raise_at_level(&y.tuple, level, &mut rng), random_sign(&mut rng));
            for (u, v) in [(&x, &y), (&x, &y_high), (&x_low, &y), (&x_low, &y_high)] {
                rec.check(odd_member(n, i, u, v), || {
                    CheckFailure::new(
                        format!("({u}, {v})"),
                        format!("membership in R_{i}"),
                        "outside",
                    )
                });
            }
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("negations-coincide", "~R_i = -R_i = R_-i");
    let pairs = sample_signed_pairs(n, strategy, pair_count, seed.wrapping_add(3));
    for i in -bound..=bound {
        for (x, y) in &pairs {
            let tilde = !odd_member(n, i, &y.flipped(), x);
            let minus = !odd_member(n, i, y, &x.flipped());
            let mirror = odd_member(n, -i, x, y);
            rec.check(tilde == mirror && minus == mirror, || {
                CheckFailure::new(
                    format!("({x}, {y}) at index {i}"),
                    format!("both negations agreeing with R_{}", -i),
                    format!("~ gave {tilde}, - gave {minus}, mirror gave {mirror}"),
                )
            });
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("family-forms-a-chain", "R_i is contained in R_i+1");
    let mut rng = stream(seed, 4);
    for i in -bound..bound {
        let rel = SymbolicRelation::odd_r(n, i).expect("index in range");
        if rel.is_empty() {
            continue;
        }
        for _ in 0..trials {
            let (x, y) = signed_member(&rel, rng.gen());
            rec.check(odd_member(n, i + 1, &x, &y), || {
                CheckFailure::new(
                    format!("({x}, {y})"),
                    format!("membership in R_{}", i + 1),
                    format!("member of R_{i} only"),
                )
            });
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("members-compose-transitively", "R_i ; R_i = R_i");
    let mut rng = stream(seed, 5);
    for i in (-bound + 1)..=bound {
        let rel = SymbolicRelation::odd_r(n, i).expect("index in range");
        for _ in 0..trials {
            let (x, z) = signed_member(&rel, rng.gen());
            let y = extend_member(n, i, &z, &mut rng);
            rec.check(odd_member(n, i, &x, &y), || {
                CheckFailure::new(
                    format!("({x}, {y})"),
                    format!("membership in R_{i}"),
                    "outside",
                )
                .with_witness(z.to_string())
            });
        }
    }
    checks.push(rec);

    VerificationReport::new("structure-lemmas", checks)
}

/// Which realized family a chain embedding targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    Odd,
    Even,
}

fn symbolic(kind: ChainKind, n: usize, index: i64) -> SymbolicRelation {
    let rel = match kind {
        ChainKind::Odd => SymbolicRelation::odd_r(n, index),
        ChainKind::Even => SymbolicRelation::even_t(n, index),
    };
    rel.expect("index in range")
}

fn unit_vector(n: usize, position: usize) -> RationalTuple {
    let mut coords = vec![0i64; n];
    coords[position - 1] = 1;
    RationalTuple::from_integers(&coords)
}

/// An exact pair in the larger of two consecutive indices but not the
/// smaller.  For negative windows the pair sits in the first stratum the
/// larger index admits; across the middle it is a diagonal pair; for
/// positive windows it is a reversed pair at the deepest stratum the smaller
/// index still excludes.
fn separating_pair(kind: ChainKind, n: usize, prev: i64, next: i64) -> PointPair {
    debug_assert!(next == prev + 1 || (prev == -1 && next == 1));
    let zeros = RationalTuple::from_integers(&vec![0i64; n]);
    if kind == ChainKind::Odd {
        if next == 0 {
            // The window (-1, 0): the diagonal separates the order from the
            // strict strata.
            let z = SignedPoint::new(zeros, Sign::Plus);
            return PointPair::Signed(z.clone(), z);
        }
        if prev == 0 {
            // The window (0, 1): an equal tuple with flipped signs.
            return PointPair::Signed(
                SignedPoint::new(zeros.clone(), Sign::Plus),
                SignedPoint::new(zeros, Sign::Minus),
            );
        }
    } else if prev == -1 {
        // The even window (-1, 1): the diagonal.
        return PointPair::Plain(zeros.clone(), zeros);
    }
    let (x, y) = if next < 0 {
        (zeros.clone(), unit_vector(n, (n as i64 + 1 + next) as usize))
    } else {
        (unit_vector(n, (n as i64 + 1 - prev) as usize), zeros)
    };
    match kind {
        ChainKind::Odd => PointPair::Signed(
            SignedPoint::new(x, Sign::Plus),
            SignedPoint::new(y, Sign::Plus),
        ),
        ChainKind::Even => PointPair::Plain(x, y),
    }
}

/// Checks that the realized family carries a copy of the abstract chain of
/// the matching size: same index set, same fuse, arrow, and tilde tables,
/// and an order that the indices both preserve and reflect.
pub fn verify_embedding(kind: ChainKind, n: usize, trials: u64, seed: u64) -> VerificationReport {
    verify_embedding_with(kind, n, trials, seed, SamplingStrategy::Mixture)
}

/// `verify_embedding` with an explicit strategy for the lift comparison.
pub fn verify_embedding_with(
    kind: ChainKind,
    n: usize,
    trials: u64,
    seed: u64,
    strategy: SamplingStrategy,
) -> VerificationReport {
    let bound = n as i64 + 1;
    let chain_size = match kind {
        ChainKind::Odd => 2 * n as i64 + 3,
        ChainKind::Even => 2 * n as i64 + 2,
    };
    let chain = build_chain(chain_size).expect("embedding chains have positive size");
    let family_indices: Vec<i64> = match kind {
        ChainKind::Odd => (-bound..=bound).collect(),
        ChainKind::Even => (-bound..=-1).chain(1..=bound).collect(),
    };
    let mut checks = Vec::new();

    let mut rec = CheckRecord::new("index-set", "chain indices equal family indices");
    rec.check(chain.indices() == family_indices.as_slice(), || {
        CheckFailure::new(
            format!("chain of size {chain_size}"),
            format!("{family_indices:?}"),
            format!("{:?}", chain.indices()),
        )
    });
    checks.push(rec);

    let mut rec = CheckRecord::new(
        "fuse-table-agreement",
        "family composition equals the chain monoid",
    );
    for &i in &family_indices {
        for &j in &family_indices {
            let family = match kind {
                ChainKind::Odd => composition_table(i, j, n),
                ChainKind::Even => even_composition_table(i, j, n),
            }
            .expect("indices in range");
            let monoid = chain.fuse(i, j);
            rec.check(family == monoid, || {
                CheckFailure::new(format!("({i}, {j})"), family.to_string(), monoid.to_string())
            });
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("arrow-agreement", "x -> y = ~((-y) . x) on indices");
    for &i in &family_indices {
        for &j in &family_indices {
            let via_fuse = -fuse_indices(-j, i);
            let direct = chain.arrow(i, j);
            rec.check(direct == via_fuse, || {
                CheckFailure::new(format!("({i}, {j})"), via_fuse.to_string(), direct.to_string())
            });
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("tilde-agreement", "~ negates the index");
    for &i in &family_indices {
        let direct = chain.tilde(i);
        rec.check(direct == -i, || {
            CheckFailure::new(i.to_string(), (-i).to_string(), direct.to_string())
        });
    }
    checks.push(rec);

    let mut rec = CheckRecord::new(
        "order-preserved-on-samples",
        "members of an index stay members of the next",
    );
    let mut rng = stream(seed, 10);
    for w in family_indices.windows(2) {
        let (prev, next) = (w[0], w[1]);
        let prev_rel = symbolic(kind, n, prev);
        if prev_rel.is_empty() {
            continue;
        }
        let next_rel = symbolic(kind, n, next);
        for _ in 0..trials {
            let pair = generate_member(&prev_rel, rng.gen()).expect("nonempty relation");
            rec.check(member(&next_rel, &pair), || {
                CheckFailure::new(
                    pair.to_string(),
                    format!("membership in {next_rel}"),
                    format!("member of {prev_rel} only"),
                )
            });
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new(
        "order-reflected-at-boundaries",
        "each consecutive index pair is separated by an exact pair",
    );
    for w in family_indices.windows(2) {
        let (prev, next) = (w[0], w[1]);
        let prev_rel = symbolic(kind, n, prev);
        let next_rel = symbolic(kind, n, next);
        let pair = separating_pair(kind, n, prev, next);
        let in_prev = member(&prev_rel, &pair);
        let in_next = member(&next_rel, &pair);
        rec.check(in_next && !in_prev, || {
            CheckFailure::new(
                pair.to_string(),
                format!("membership in {next_rel} but not {prev_rel}"),
                format!("{prev_rel} {in_prev}, {next_rel} {in_next}"),
            )
        });
    }
    checks.push(rec);

    if kind == ChainKind::Odd {
        let mut rec = CheckRecord::new(
            "lift-bridge",
            "the sign-oblivious lift of T_i matches R_i away from index zero",
        );
        let pair_count = ((trials + 3) / 4).max(1) as usize;
        let pairs = sample_signed_pairs(n, strategy, pair_count, seed.wrapping_add(11));
        for &i in &family_indices {
            if i == 0 {
                continue;
            }
            for (x, y) in &pairs {
                let lifted = delta_member(n, i, x, y);
                let direct = odd_member(n, i, x, y);
                let flipped = odd_member(n, i, &x.flipped(), y);
                rec.check(lifted == direct && direct == flipped, || {
                    CheckFailure::new(
                        format!("({x}, {y}) at index {i}"),
                        "lift, family, and flipped readings agreeing",
                        format!("lift {lifted}, family {direct}, flipped {flipped}"),
                    )
                });
            }
        }
        checks.push(rec);
    }

    VerificationReport::new("chain-embedding", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extensions_land_in_the_right_relation() {
        let mut rng = stream(7, 0);
        for n in 1..=3usize {
            let bound = n as i64 + 1;
            for j in (-bound + 1)..=bound {
                for _ in 0..50 {
                    let z = SignedPoint::new(random_tuple(n, &mut rng), random_sign(&mut rng));
                    let y = extend_member(n, j, &z, &mut rng);
                    assert!(odd_member(n, j, &z, &y));
                }
            }
        }
    }

    #[test]
    fn separating_pairs_are_exact_for_small_dimensions() {
        for n in 1..=3usize {
            let bound = n as i64 + 1;
            let odd: Vec<i64> = (-bound..=bound).collect();
            for w in odd.windows(2) {
                let pair = separating_pair(ChainKind::Odd, n, w[0], w[1]);
                assert!(member(&symbolic(ChainKind::Odd, n, w[1]), &pair), "n={n}, window {w:?}");
                assert!(!member(&symbolic(ChainKind::Odd, n, w[0]), &pair), "n={n}, window {w:?}");
            }
            let even: Vec<i64> = (-bound..=-1).chain(1..=bound).collect();
            for w in even.windows(2) {
                let pair = separating_pair(ChainKind::Even, n, w[0], w[1]);
                assert!(member(&symbolic(ChainKind::Even, n, w[1]), &pair), "n={n}, window {w:?}");
                assert!(!member(&symbolic(ChainKind::Even, n, w[0]), &pair), "n={n}, window {w:?}");
            }
        }
    }
}
