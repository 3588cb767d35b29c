//! Finite Sugihara chains built from index arithmetic.
//!
//! Elements are indexed {-k..-1, 1..k} for size 2k and {-k..k} for size
//! 2k+1.  Meet and join are index min and max, negation flips the sign, and
//! the monoid operation keeps whichever argument has the larger magnitude,
//! breaking ties towards the smaller index.  Tables are materialized once at
//! construction; every checker reads the tables, never the formulas, so a
//! corrupted entry is always visible to verification.

use dinfl_engine::{verify_table_axioms, DInFLAlgebra, FiniteInFLTables};
use ordered_context::ValidationError;
use relcore::{CheckFailure, CheckRecord, VerificationReport};

/// A finite Sugihara chain with materialized operation tables.  Positions
/// run in ascending index order, so position 0 is the bottom element.
#[derive(Debug, Clone)]
pub struct AbstractSugiharaChain {
    n: usize,
    indices: Vec<i64>,
    pub tables: FiniteInFLTables,
}

/// The monoid operation on chain indices: larger magnitude wins, ties take
/// the minimum.
pub fn fuse_indices(i: i64, j: i64) -> i64 {
    if j.abs() < i.abs() {
        i
    } else if i.abs() < j.abs() {
        j
    } else {
        i.min(j)
    }
}

/// The implication on chain indices: max(-i, j) when i ≤ j, else min(-i, j).
pub fn arrow_indices(i: i64, j: i64) -> i64 {
    if i <= j {
        (-i).max(j)
    } else {
        (-i).min(j)
    }
}

/// Builds the size-n chain.  Size 1 is the trivial one-element algebra,
/// admitted but flagged by `is_trivial`.
pub fn build_chain(n: i64) -> Result<AbstractSugiharaChain, ValidationError> {
    if n <= 0 {
        return Err(ValidationError::new(
            "size",
            format!("chain size must be positive, got {n}"),
        ));
    }
    let n = n as usize;
    let k = (n / 2) as i64;
    let indices: Vec<i64> = if n % 2 == 0 {
        (-k..=-1).chain(1..=k).collect()
    } else {
        (-k..=k).collect()
    };
    let pos = |idx: i64| -> usize {
        indices
            .iter()
            .position(|&v| v == idx)
            .unwrap_or_else(|| panic!("index {idx} outside the chain"))
    };
    let unit = if n % 2 == 0 { pos(1) } else { pos(0) };
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    let mut fuse = vec![0usize; n * n];
    let mut arrow = vec![0usize; n * n];
    let mut tilde = vec![0usize; n];
    for (a, &i) in indices.iter().enumerate() {
        tilde[a] = pos(-i);
        for (b, &j) in indices.iter().enumerate() {
            meet[a * n + b] = a.min(b);
            join[a * n + b] = a.max(b);
            fuse[a * n + b] = pos(fuse_indices(i, j));
            arrow[a * n + b] = pos(arrow_indices(i, j));
        }
    }
    let zero = tilde[unit];
    let under = arrow.clone();
    let mut over = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            over[a * n + b] = arrow[b * n + a];
        }
    }
    let labels = indices.iter().map(|i| format!("a_{i}")).collect();
    let tables = FiniteInFLTables {
        size: n,
        labels,
        unit,
        meet,
        join,
        fuse,
        arrow,
        tilde: tilde.clone(),
        minus: Some(tilde),
        zero: Some(zero),
        under: Some(under),
        over: Some(over),
    };
    Ok(AbstractSugiharaChain { n, indices, tables })
}

impl AbstractSugiharaChain {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    /// The one-element chain carries no information beyond its unit.
    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn unit_index(&self) -> i64 {
        self.indices[self.tables.unit]
    }

    pub fn position(&self, idx: i64) -> Option<usize> {
        self.indices.iter().position(|&v| v == idx)
    }

    pub fn index_at(&self, pos: usize) -> i64 {
        self.indices[pos]
    }

    pub fn to_tables(&self) -> FiniteInFLTables {
        self.tables.clone()
    }

    /// Table lookups by chain index rather than position.
    pub fn fuse(&self, i: i64, j: i64) -> i64 {
        let a = self.position(i).expect("index in range");
        let b = self.position(j).expect("index in range");
        self.indices[self.tables.fuse_at(a, b)]
    }

    pub fn arrow(&self, i: i64, j: i64) -> i64 {
        let a = self.position(i).expect("index in range");
        let b = self.position(j).expect("index in range");
        self.indices[self.tables.arrow_at(a, b)]
    }

    pub fn tilde(&self, i: i64) -> i64 {
        let a = self.position(i).expect("index in range");
        self.indices[self.tables.tilde_at(a)]
    }
}

/// Sugihara-specific laws on top of the residuated-lattice axioms:
/// commutativity, idempotence, contraposition, and residuation stated
/// through the arrow.  All read from the tables.
fn sugihara_extra_records(t: &FiniteInFLTables) -> Vec<CheckRecord> {
    let n = t.size;
    let mut out = Vec::new();
    let name = |a: usize| t.label(a).to_string();

    let mut rec = CheckRecord::new("fuse-commutative", "a · b = b · a");
    for a in 0..n {
        for b in 0..n {
            rec.check(t.fuse_at(a, b) == t.fuse_at(b, a), || {
                CheckFailure::new(
                    format!("({}, {})", name(a), name(b)),
                    name(t.fuse_at(a, b)),
                    name(t.fuse_at(b, a)),
                )
            });
        }
    }
    out.push(rec);

    let mut rec = CheckRecord::new("fuse-idempotent", "a · a = a");
    for a in 0..n {
        rec.check(t.fuse_at(a, a) == a, || {
            CheckFailure::new(name(a), name(a), name(t.fuse_at(a, a)))
        });
    }
    out.push(rec);

    let mut rec = CheckRecord::new("contraposition", "a → ~b = b → ~a");
    for a in 0..n {
        for b in 0..n {
            let lhs = t.arrow_at(a, t.tilde_at(b));
            let rhs = t.arrow_at(b, t.tilde_at(a));
            rec.check(lhs == rhs, || {
                CheckFailure::new(format!("({}, {})", name(a), name(b)), name(lhs), name(rhs))
            });
        }
    }
    out.push(rec);

    let mut rec = CheckRecord::new("residuation-arrow", "a · b ≤ c iff b ≤ a → c");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = t.le_at(t.fuse_at(a, b), c);
                let rhs = t.le_at(b, t.arrow_at(a, c));
                rec.check(lhs == rhs, || {
                    CheckFailure::new(
                        format!("({}, {}, {})", name(a), name(b), name(c)),
                        format!("both sides {lhs}"),
                        format!("a·b ≤ c is {lhs}, b ≤ a→c is {rhs}"),
                    )
                });
            }
        }
    }
    out.push(rec);

    out
}

/// Exhaustive check of every Sugihara-monoid law on the chain's tables,
/// including the parity of the unit's fixed point under negation.
pub fn verify_sugihara_axioms(chain: &AbstractSugiharaChain) -> VerificationReport {
    let t = &chain.tables;
    let n = t.size;
    let mut checks = verify_table_axioms(t).checks;
    checks.extend(sugihara_extra_records(t));
    let name = |a: usize| t.label(a).to_string();

    let mut rec = CheckRecord::new("chain-total", "a ∧ b is one of a, b");
    for a in 0..n {
        for b in 0..n {
            let m = t.meet_at(a, b);
            rec.check(m == a || m == b, || {
                CheckFailure::new(format!("({}, {})", name(a), name(b)), "a or b".to_string(), name(m))
            });
        }
    }
    checks.push(rec);

    let mut rec = CheckRecord::new("order-is-index-order", "a_i ≤ a_j iff i ≤ j and ~ flips indices");
    for a in 0..n {
        rec.check(t.tilde_at(a) == n - 1 - a, || {
            CheckFailure::new(name(a), name(n - 1 - a), name(t.tilde_at(a)))
        });
        for b in 0..n {
            rec.check(t.le_at(a, b) == (a <= b), || {
                CheckFailure::new(
                    format!("({}, {})", name(a), name(b)),
                    format!("{}", a <= b),
                    format!("{}", t.le_at(a, b)),
                )
            });
        }
    }
    checks.push(rec);

    let parity = if chain.is_odd() {
        let mut rec = CheckRecord::new("unit-parity", "odd size: ~1 = 1");
        rec.check(t.tilde_at(t.unit) == t.unit, || {
            CheckFailure::new(name(t.unit), name(t.unit), name(t.tilde_at(t.unit)))
        });
        rec
    } else {
        let mut rec = CheckRecord::new("unit-parity", "even size: ~1 = a₋₁ ≠ 1");
        let expect = chain.position(-1).expect("even chain has index -1");
        rec.check(t.tilde_at(t.unit) == expect && expect != t.unit, || {
            CheckFailure::new(name(t.unit), name(expect), name(t.tilde_at(t.unit)))
        });
        rec
    };
    checks.push(parity);

    let mut rec = CheckRecord::new(
        "arrow-chain-form",
        "a → b = ~a ∨ b when a ≤ b, ~a ∧ b otherwise",
    );
    for a in 0..n {
        for b in 0..n {
            let expect = if a <= b {
                t.join_at(t.tilde_at(a), b)
            } else {
                t.meet_at(t.tilde_at(a), b)
            };
            rec.check(t.arrow_at(a, b) == expect, || {
                CheckFailure::new(
                    format!("({}, {})", name(a), name(b)),
                    name(expect),
                    name(t.arrow_at(a, b)),
                )
            });
        }
    }
    checks.push(rec);

    VerificationReport::new("sugihara-axioms", checks)
}

/// Checks the arrow's definitional identity a → b = ~((-b) · a) on a built
/// algebra, and, when its composition is commutative and idempotent, checks
/// that the arrow reduct satisfies every Sugihara-monoid law.
pub fn direct_reduct_check(alg: &DInFLAlgebra) -> VerificationReport {
    let t = alg.to_tables();
    let n = t.size;
    let minus = t.minus.clone().expect("algebra tables carry minus");
    let name = |a: usize| t.label(a).to_string();

    let mut arrow_def = CheckRecord::new("arrow-definition", "a → b = ~((-b) · a)");
    for a in 0..n {
        for b in 0..n {
            let want = t.tilde_at(t.fuse_at(minus[b], a));
            arrow_def.check(t.arrow_at(a, b) == want, || {
                CheckFailure::new(
                    format!("({}, {})", name(a), name(b)),
                    name(want),
                    name(t.arrow_at(a, b)),
                )
            });
        }
    }
    let mut checks = vec![arrow_def];

    let commutative = (0..n).all(|a| (0..n).all(|b| t.fuse_at(a, b) == t.fuse_at(b, a)));
    let idempotent = (0..n).all(|a| t.fuse_at(a, a) == a);
    if commutative {
        if let (Some(under), Some(over)) = (&t.under, &t.over) {
            let mut rec = CheckRecord::new("residuals-coincide", "a \\ b = b / a");
            for a in 0..n {
                for b in 0..n {
                    let lhs = under[a * n + b];
                    let rhs = over[b * n + a];
                    rec.check(lhs == rhs, || {
                        CheckFailure::new(
                            format!("({}, {})", name(a), name(b)),
                            name(lhs),
                            name(rhs),
                        )
                    });
                }
            }
            checks.push(rec);
        }
    }
    if commutative && idempotent {
        let reduct = FiniteInFLTables {
            size: n,
            labels: t.labels.clone(),
            unit: t.unit,
            meet: t.meet.clone(),
            join: t.join.clone(),
            fuse: t.fuse.clone(),
            arrow: t.arrow.clone(),
            tilde: t.tilde.clone(),
            minus: None,
            zero: None,
            under: None,
            over: None,
        };
        checks.extend(verify_table_axioms(&reduct).checks);
        checks.extend(sugihara_extra_records(&reduct));
    }

    VerificationReport::new("direct-reduct", checks)
}
