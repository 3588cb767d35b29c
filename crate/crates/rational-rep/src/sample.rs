//! Seeded samplers for the infinite carriers.
//!
//! Coordinates are small rationals (numerators in [-10, 10], denominators
//! in [1, 10]) so collisions and shared prefixes actually occur.  Every
//! stream is a pure function of its seed.

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{member, FamilyKind, PointPair, SymbolicRelation};
use crate::point::{RationalTuple, Sign, SignedPoint};
use crate::RepError;

/// How point pairs are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingStrategy {
    /// Both tuples fully random.
    Independent,
    /// Equal on the first k coordinates, random past them.
    SharedPrefix(usize),
    /// The same tuple twice.
    Identical,
    /// 40% independent, 30% shared prefix of random length, 20% identical,
    /// 10% a repeat of the previous pair.
    Mixture,
}

pub fn random_rational(rng: &mut impl Rng) -> BigRational {
    let numer: i64 = rng.gen_range(-10..=10);
    let denom: i64 = rng.gen_range(1..=10);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A strictly positive small rational, for nudging a coordinate upward.
pub fn random_positive(rng: &mut impl Rng) -> BigRational {
    let numer: i64 = rng.gen_range(1..=10);
    let denom: i64 = rng.gen_range(1..=10);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn random_tuple(n: usize, rng: &mut impl Rng) -> RationalTuple {
    RationalTuple::new((0..n).map(|_| random_rational(rng)).collect())
}

pub fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A pair that strictly increases exactly at the given 1-based level:
/// equal before it, larger there, random past it.
pub fn strict_pair_at_level(n: usize, level: usize, rng: &mut impl Rng) -> (RationalTuple, RationalTuple) {
    assert!((1..=n).contains(&level), "level {level} out of 1..={n}");
    let p = random_tuple(n, rng);
    let q = raise_at_level(&p, level, rng);
    (p, q)
}

/// Copies the prefix before `level`, adds a positive amount at `level`, and
/// randomizes the rest.
pub fn raise_at_level(p: &RationalTuple, level: usize, rng: &mut impl Rng) -> RationalTuple {
    let n = p.dim();
    let mut coords = Vec::with_capacity(n);
    for k in 1..level {
        coords.push(p.coord(k).clone());
    }
    coords.push(p.coord(level) + random_positive(rng));
    for _ in level..n {
        coords.push(random_rational(rng));
    }
    RationalTuple::new(coords)
}

/// Mirror of `raise_at_level`: subtracts instead, giving a strictly smaller
/// tuple at exactly that level.
pub fn lower_at_level(p: &RationalTuple, level: usize, rng: &mut impl Rng) -> RationalTuple {
    let n = p.dim();
    let mut coords = Vec::with_capacity(n);
    for k in 1..level {
        coords.push(p.coord(k).clone());
    }
    coords.push(p.coord(level) - random_positive(rng));
    for _ in level..n {
        coords.push(random_rational(rng));
    }
    RationalTuple::new(coords)
}

/// Seeded stream of tuple pairs.
pub fn sample_pairs(
    n: usize,
    strategy: SamplingStrategy,
    count: usize,
    seed: u64,
) -> Vec<(RationalTuple, RationalTuple)> {
    assert!(n >= 1, "dimension must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(RationalTuple, RationalTuple)> = Vec::with_capacity(count);
    for _ in 0..count {
        let effective = match strategy {
            SamplingStrategy::Mixture => {
                let roll: u32 = rng.gen_range(0..10);
                if roll < 4 {
                    SamplingStrategy::Independent
                } else if roll < 7 {
                    SamplingStrategy::SharedPrefix(rng.gen_range(1..=n))
                } else if roll < 9 {
                    SamplingStrategy::Identical
                } else if let Some(prev) = out.last() {
                    out.push(prev.clone());
                    continue;
                } else {
                    SamplingStrategy::Independent
                }
            }
            other => other,
        };
        let pair = match effective {
            SamplingStrategy::Independent => (random_tuple(n, &mut rng), random_tuple(n, &mut rng)),
            SamplingStrategy::SharedPrefix(k) => {
                assert!((1..=n).contains(&k), "prefix length {k} out of 1..={n}");
                let p = random_tuple(n, &mut rng);
                let mut coords: Vec<BigRational> =
                    p.coords()[..k].iter().cloned().collect();
                for _ in k..n {
                    coords.push(random_rational(&mut rng));
                }
                (p, RationalTuple::new(coords))
            }
            SamplingStrategy::Identical => {
                let p = random_tuple(n, &mut rng);
                (p.clone(), p)
            }
            SamplingStrategy::Mixture => unreachable!("mixture resolves to a concrete strategy"),
        };
        out.push(pair);
    }
    out
}

/// Signed stream: each tuple pair is emitted under all four sign
/// combinations, in the fixed order --, -+, +-, ++.
pub fn sample_signed_pairs(
    n: usize,
    strategy: SamplingStrategy,
    count: usize,
    seed: u64,
) -> Vec<(SignedPoint, SignedPoint)> {
    let mut out = Vec::with_capacity(count * 4);
    for (p, q) in sample_pairs(n, strategy, count, seed) {
        for b in [Sign::Minus, Sign::Plus] {
            for d in [Sign::Minus, Sign::Plus] {
                out.push((
                    SignedPoint::new(p.clone(), b),
                    SignedPoint::new(q.clone(), d),
                ));
            }
        }
    }
    out
}

/// Builds a member of the relation by direct construction: pick an allowed
/// stratum for negative indices, or one of the shapes that dodge every
/// forbidden stratum for nonnegative ones.  The result is checked against
/// `member` before being returned.
pub fn generate_member(rel: &SymbolicRelation, seed: u64) -> Result<PointPair, RepError> {
    if rel.is_empty() {
        return Err(RepError::EmptyRelation(format!("{rel} has no members")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rel.n();
    let i = rel.index();
    let (p, q) = if i < 0 {
        let allowed = (n as i64 + 1 + i) as usize;
        let level = rng.gen_range(1..=allowed);
        strict_pair_at_level(n, level, &mut rng)
    } else if i == 0 {
        if rng.gen_bool(0.5) {
            let p = random_tuple(n, &mut rng);
            (p.clone(), p)
        } else {
            let level = rng.gen_range(1..=n);
            strict_pair_at_level(n, level, &mut rng)
        }
    } else {
        // Any shape whose reversal has no stratum at level <= n + 1 - i.
        let forbidden = (n + 1) - i as usize;
        let deep_levels = forbidden < n;
        let shape: u32 = rng.gen_range(0..if deep_levels { 3 } else { 2 });
        match shape {
            0 => {
                let p = random_tuple(n, &mut rng);
                (p.clone(), p)
            }
            1 => {
                let level = rng.gen_range(1..=n);
                strict_pair_at_level(n, level, &mut rng)
            }
            _ => {
                let level = rng.gen_range(forbidden + 1..=n);
                let (a, b) = strict_pair_at_level(n, level, &mut rng);
                (b, a)
            }
        }
    };
    let pair = match rel.kind() {
        FamilyKind::EvenT => PointPair::Plain(p, q),
        FamilyKind::OddR if i == 0 && p == q => {
            let s = random_sign(&mut rng);
            PointPair::Signed(SignedPoint::new(p, s), SignedPoint::new(q, s))
        }
        _ => PointPair::Signed(
            SignedPoint::new(p, random_sign(&mut rng)),
            SignedPoint::new(q, random_sign(&mut rng)),
        ),
    };
    assert!(member(rel, &pair), "generated pair must lie in {rel}: {pair}");
    Ok(pair)
}
