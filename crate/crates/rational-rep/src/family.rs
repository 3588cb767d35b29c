//! The symbolic relation families over the infinite carriers and their
//! exact membership predicates.
//!
//! Negative indices are the base case: a union of lex-level strata decided
//! directly from coordinates.  Index 0 is the order of the doubled space.
//! Every positive index is decided by one application of the involution to
//! the matching negative index, so there is a single recursion step and it
//! always terminates.

use std::fmt;

use sugihara_chains::fuse_indices;

use crate::point::{RationalTuple, Sign, SignedPoint};
use crate::RepError;

/// Outcome of the lexicographic comparison of two tuples: the stratum level
/// when the first is strictly below the second, equality, or none when the
/// second is strictly below the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexVerdict {
    Level(usize),
    Equal,
    None,
}

impl fmt::Display for LexVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexVerdict::Level(j) => write!(f, "level {j}"),
            LexVerdict::Equal => f.write_str("equal"),
            LexVerdict::None => f.write_str("none"),
        }
    }
}

/// Finds the first position (1-based) where the tuples differ.  Level(j)
/// means the first tuple is smaller there; the strata are pairwise disjoint
/// so the verdict is unique.
pub fn lex_level(p: &RationalTuple, q: &RationalTuple) -> LexVerdict {
    assert_eq!(
        p.dim(),
        q.dim(),
        "lex comparison needs equal dimensions, got {} and {}",
        p.dim(),
        q.dim()
    );
    for (k, (a, b)) in p.coords().iter().zip(q.coords()).enumerate() {
        if a < b {
            return LexVerdict::Level(k + 1);
        }
        if a > b {
            return LexVerdict::None;
        }
    }
    LexVerdict::Equal
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    OddR,
    EvenT,
    DeltaLift,
}

/// One relation from an indexed family over tuples of a fixed dimension.
/// OddR and DeltaLift relate signed points, EvenT relates bare tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymbolicRelation {
    n: usize,
    kind: FamilyKind,
    index: i64,
}

impl SymbolicRelation {
    pub fn odd_r(n: usize, i: i64) -> Result<SymbolicRelation, RepError> {
        Self::build(n, FamilyKind::OddR, i, true)
    }

    pub fn even_t(n: usize, i: i64) -> Result<SymbolicRelation, RepError> {
        Self::build(n, FamilyKind::EvenT, i, false)
    }

    pub fn delta_lift(n: usize, i: i64) -> Result<SymbolicRelation, RepError> {
        Self::build(n, FamilyKind::DeltaLift, i, false)
    }

    fn build(n: usize, kind: FamilyKind, i: i64, zero_allowed: bool) -> Result<SymbolicRelation, RepError> {
        if n == 0 {
            return Err(RepError::Invalid {
                field: "dimension",
                reason: "tuple dimension must be at least 1".to_string(),
            });
        }
        let bound = n as i64 + 1;
        if i < -bound || i > bound {
            return Err(RepError::Invalid {
                field: "index",
                reason: format!("index {i} outside -{bound}..={bound}"),
            });
        }
        if i == 0 && !zero_allowed {
            return Err(RepError::Invalid {
                field: "index",
                reason: "index 0 exists only in the odd family".to_string(),
            });
        }
        Ok(SymbolicRelation { n, kind, index: i })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    /// Whether the relation has no members: only the lowest index of each
    /// family is empty.
    pub fn is_empty(&self) -> bool {
        self.index == -(self.n as i64 + 1)
    }

    pub fn is_universal(&self) -> bool {
        self.index == self.n as i64 + 1
    }

    /// Whether members are signed points rather than bare tuples.
    pub fn is_signed(&self) -> bool {
        !matches!(self.kind, FamilyKind::EvenT)
    }
}

impl fmt::Display for SymbolicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::OddR => write!(f, "R_{}", self.index),
            FamilyKind::EvenT => write!(f, "T_{}", self.index),
            FamilyKind::DeltaLift => write!(f, "d(T_{})", self.index),
        }
    }
}

/// A concrete pair, matching one family's point kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointPair {
    Signed(SignedPoint, SignedPoint),
    Plain(RationalTuple, RationalTuple),
}

impl fmt::Display for PointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointPair::Signed(x, y) => write!(f, "({x}, {y})"),
            PointPair::Plain(p, q) => write!(f, "({p}, {q})"),
        }
    }
}

/// Stratified membership for negative indices: some level at most
/// n + 1 + i.  Shared by both families; sign-oblivious.
fn strata_member(n: usize, i: i64, p: &RationalTuple, q: &RationalTuple) -> bool {
    debug_assert!(i < 0);
    let allowed = n as i64 + 1 + i;
    match lex_level(p, q) {
        LexVerdict::Level(j) => (j as i64) <= allowed,
        _ => false,
    }
}

/// Membership in the odd family.  The only sign-sensitive index is 0, where
/// the pair must be equal as signed points or strictly below
/// lexicographically.
pub fn odd_member(n: usize, i: i64, x: &SignedPoint, y: &SignedPoint) -> bool {
    odd_raw(n, i, &x.tuple, x.sign, &y.tuple, y.sign)
}

fn odd_raw(n: usize, i: i64, p: &RationalTuple, b: Sign, q: &RationalTuple, d: Sign) -> bool {
    assert!(i.unsigned_abs() as usize <= n + 1, "odd index {i} out of range for dimension {n}");
    if i > 0 {
        // The involution unfolded: swap the pair and flip the new first sign.
        return !odd_raw(n, -i, q, d.flip(), p, b);
    }
    if i == 0 {
        return (p == q && b == d) || matches!(lex_level(p, q), LexVerdict::Level(_));
    }
    strata_member(n, i, p, q)
}

/// Membership in the unsigned family; index 0 does not exist here.
pub fn even_member(n: usize, i: i64, p: &RationalTuple, q: &RationalTuple) -> bool {
    assert!(
        i != 0 && i.unsigned_abs() as usize <= n + 1,
        "even index {i} out of range for dimension {n}"
    );
    if i > 0 {
        return !even_member(n, -i, q, p);
    }
    strata_member(n, i, p, q)
}

/// Membership in the sign-oblivious lift of the unsigned family.
pub fn delta_member(n: usize, i: i64, x: &SignedPoint, y: &SignedPoint) -> bool {
    even_member(n, i, &x.tuple, &y.tuple)
}

/// Unified membership test.  Panics when the pair's point kind or dimension
/// does not match the relation.
pub fn member(rel: &SymbolicRelation, pair: &PointPair) -> bool {
    match (rel.kind(), pair) {
        (FamilyKind::OddR, PointPair::Signed(x, y)) => {
            check_dim(rel, x.tuple.dim(), y.tuple.dim());
            odd_member(rel.n(), rel.index(), x, y)
        }
        (FamilyKind::DeltaLift, PointPair::Signed(x, y)) => {
            check_dim(rel, x.tuple.dim(), y.tuple.dim());
            delta_member(rel.n(), rel.index(), x, y)
        }
        (FamilyKind::EvenT, PointPair::Plain(p, q)) => {
            check_dim(rel, p.dim(), q.dim());
            even_member(rel.n(), rel.index(), p, q)
        }
        _ => panic!("pair kind does not match {rel}"),
    }
}

fn check_dim(rel: &SymbolicRelation, a: usize, b: usize) {
    assert!(
        a == rel.n() && b == rel.n(),
        "pair dimensions {a} and {b} do not match {rel} over dimension {}",
        rel.n()
    );
}

/// The index of the relation a composition of two family members lands in:
/// the larger magnitude wins, ties take the minimum.
pub fn composition_table(i: i64, j: i64, n: usize) -> Result<i64, RepError> {
    let bound = n as i64 + 1;
    for idx in [i, j] {
        if idx < -bound || idx > bound {
            return Err(RepError::Invalid {
                field: "index",
                reason: format!("index {idx} outside -{bound}..={bound}"),
            });
        }
    }
    Ok(fuse_indices(i, j))
}

/// The same composition rule restricted to the unsigned family's index set,
/// which omits 0 and is closed under the rule.
pub fn even_composition_table(i: i64, j: i64, n: usize) -> Result<i64, RepError> {
    let bound = n as i64 + 1;
    for idx in [i, j] {
        if idx == 0 || idx < -bound || idx > bound {
            return Err(RepError::Invalid {
                field: "index",
                reason: format!("index {idx} outside the zero-free range -{bound}..={bound}"),
            });
        }
    }
    Ok(fuse_indices(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed(vals: &[i64], sign: Sign) -> SignedPoint {
        SignedPoint::new(RationalTuple::from_integers(vals), sign)
    }

    #[test]
    fn lex_levels_on_small_tuples() {
        let p = RationalTuple::from_integers(&[0, 0]);
        let q = RationalTuple::from_integers(&[0, 1]);
        assert_eq!(lex_level(&p, &q), LexVerdict::Level(2));
        assert_eq!(lex_level(&p, &p), LexVerdict::Equal);
        let r = RationalTuple::from_integers(&[1, 0]);
        let s = RationalTuple::from_integers(&[0, 5]);
        assert_eq!(lex_level(&r, &s), LexVerdict::None);
        assert_eq!(lex_level(&s, &r), LexVerdict::Level(1));
    }

    #[test]
    fn strict_pairs_sit_in_the_full_union() {
        let x = signed(&[0], Sign::Plus);
        let y = signed(&[1], Sign::Minus);
        assert!(odd_member(1, -1, &x, &y));
        assert!(!odd_member(1, -1, &y, &x));
    }

    #[test]
    fn deep_levels_are_excluded_from_tighter_unions() {
        for b in [Sign::Minus, Sign::Plus] {
            for d in [Sign::Minus, Sign::Plus] {
                let x = SignedPoint::new(RationalTuple::from_integers(&[0, 0]), b);
                let y = SignedPoint::new(RationalTuple::from_integers(&[0, 1]), d);
                assert!(!odd_member(2, -2, &x, &y), "signs {b}{d}");
                assert!(odd_member(2, -1, &x, &y), "signs {b}{d}");
            }
        }
    }

    #[test]
    fn one_unfolding_decides_positive_indices() {
        let plus = signed(&[0], Sign::Plus);
        let minus = signed(&[0], Sign::Minus);
        assert!(odd_member(1, 1, &plus, &minus));
        assert!(!odd_member(1, 0, &plus, &minus));
        assert!(odd_member(1, 0, &plus, &plus));
    }

    #[test]
    fn index_zero_is_the_order_of_the_doubled_space() {
        let x = signed(&[0, 3], Sign::Plus);
        let y = signed(&[1, -5], Sign::Minus);
        assert!(odd_member(2, 0, &x, &y));
        assert!(!odd_member(2, 0, &y, &x));
        assert!(odd_member(2, 0, &x, &x));
        assert!(!odd_member(2, 0, &x, &x.flipped()));
    }

    #[test]
    fn extreme_indices_are_empty_and_universal() {
        let x = signed(&[2], Sign::Minus);
        let y = signed(&[7], Sign::Plus);
        assert!(!odd_member(1, -2, &x, &y));
        assert!(!odd_member(1, -2, &y, &x));
        assert!(odd_member(1, 2, &x, &y));
        assert!(odd_member(1, 2, &y, &x));
    }

    #[test]
    fn unsigned_unit_index_is_the_lex_order() {
        let p = RationalTuple::from_integers(&[0, 0]);
        let q = RationalTuple::from_integers(&[0, 1]);
        assert!(even_member(2, 1, &p, &q));
        assert!(even_member(2, 1, &p, &p));
        assert!(!even_member(2, 1, &q, &p));
        assert!(even_member(2, -1, &p, &q));
        assert!(!even_member(2, -1, &p, &p));
    }

    #[test]
    fn lifted_membership_ignores_signs() {
        let p = RationalTuple::from_integers(&[0]);
        let q = RationalTuple::from_integers(&[1]);
        for b in [Sign::Minus, Sign::Plus] {
            for d in [Sign::Minus, Sign::Plus] {
                let x = SignedPoint::new(p.clone(), b);
                let y = SignedPoint::new(q.clone(), d);
                assert_eq!(delta_member(1, -1, &x, &y), true);
                assert_eq!(delta_member(1, -1, &y, &x), false);
            }
        }
    }

    #[test]
    fn constructors_validate_dimension_and_index() {
        assert!(SymbolicRelation::odd_r(1, 2).is_ok());
        assert!(SymbolicRelation::odd_r(1, 0).is_ok());
        assert!(SymbolicRelation::odd_r(1, 3).is_err());
        assert!(SymbolicRelation::even_t(1, 0).is_err());
        assert!(SymbolicRelation::even_t(0, 1).is_err());
        assert!(SymbolicRelation::delta_lift(2, -3).is_ok());
        let empty = SymbolicRelation::odd_r(2, -3).unwrap();
        assert!(empty.is_empty());
        assert!(SymbolicRelation::odd_r(2, 3).unwrap().is_universal());
    }

    #[test]
    fn member_dispatch_checks_the_pair_kind() {
        let rel = SymbolicRelation::odd_r(1, 0).unwrap();
        let pair = PointPair::Signed(signed(&[0], Sign::Plus), signed(&[0], Sign::Plus));
        assert!(member(&rel, &pair));
        let plain = PointPair::Plain(
            RationalTuple::from_integers(&[0]),
            RationalTuple::from_integers(&[0]),
        );
        let even = SymbolicRelation::even_t(1, 1).unwrap();
        assert!(member(&even, &plain));
    }

    #[test]
    #[should_panic(expected = "pair kind")]
    fn mismatched_pair_kind_panics() {
        let rel = SymbolicRelation::odd_r(1, 0).unwrap();
        let plain = PointPair::Plain(
            RationalTuple::from_integers(&[0]),
            RationalTuple::from_integers(&[0]),
        );
        member(&rel, &plain);
    }

    #[test]
    fn composition_rule_matches_the_frozen_cases() {
        assert_eq!(composition_table(2, -1, 1).unwrap(), 2);
        assert_eq!(composition_table(-1, 0, 1).unwrap(), -1);
        assert_eq!(composition_table(2, 0, 1).unwrap(), 2);
        assert_eq!(composition_table(2, -2, 1).unwrap(), -2);
        assert!(composition_table(3, 0, 1).is_err());
        assert_eq!(even_composition_table(1, -2, 1).unwrap(), -2);
        assert!(even_composition_table(0, 1, 1).is_err());
    }
}
