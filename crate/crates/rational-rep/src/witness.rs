//! Constructive composition witnesses for the signed family.
//!
//! Given (x, y) in the product relation of indices i and j, produces z with
//! (x, z) in the i-relation and (z, y) in the j-relation.  The recipes cover
//! every index pattern: endpoints absorb when a factor contains the pair,
//! strict pairs split at a midpoint of their stratum, and mixed-sign index
//! pairs copy a prefix and shift the tail by one.  A bounded randomized
//! search backs the recipes; it exhausting means a recipe is wrong.

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{composition_table, lex_level, odd_member, LexVerdict};
use crate::point::{RationalTuple, Sign, SignedPoint};
use crate::sample::{random_sign, random_tuple};
use crate::RepError;

/// Candidates the fallback search may try before giving up.
pub const WITNESS_BUDGET: usize = 64;

pub fn find_witness(
    i: i64,
    j: i64,
    pair: (&SignedPoint, &SignedPoint),
    n: usize,
) -> Result<SignedPoint, RepError> {
    let (x, y) = pair;
    if x.tuple.dim() != n || y.tuple.dim() != n {
        return Err(RepError::Invalid {
            field: "pair",
            reason: format!(
                "dimensions {} and {} do not match n = {n}",
                x.tuple.dim(),
                y.tuple.dim()
            ),
        });
    }
    let t = composition_table(i, j, n)?;
    if !odd_member(n, t, x, y) {
        return Err(RepError::Contract(format!(
            "({x}, {y}) is not in R_{t}, the composite of R_{i} and R_{j}"
        )));
    }
    if let Some(z) = recipe(i, j, x, y, n) {
        if odd_member(n, i, x, &z) && odd_member(n, j, &z, y) {
            return Ok(z);
        }
    }
    fallback_search(i, j, x, y, n)
}

fn recipe(i: i64, j: i64, x: &SignedPoint, y: &SignedPoint, n: usize) -> Option<SignedPoint> {
    let p = &x.tuple;
    let q = &y.tuple;
    if i == 0 {
        return Some(x.clone());
    }
    if j == 0 {
        return Some(y.clone());
    }
    if i > 0 && odd_member(n, j, x, y) {
        return Some(x.clone());
    }
    if j > 0 && odd_member(n, i, x, y) {
        return Some(y.clone());
    }
    if i < 0 && j < 0 {
        // The pair's stratum is allowed by both factors, so its midpoint
        // splits it into two strata at the same level.
        let LexVerdict::Level(k) = lex_level(p, q) else {
            return None;
        };
        return Some(midpoint_at(p, q, k, x.sign));
    }
    if i > 0 && j < 0 {
        // Only reachable when the composite is i itself.
        if p.coord(1) < q.coord(1) {
            return Some(midpoint_at(p, q, 1, x.sign));
        }
        return Some(offset_point(q, n + 1 - i as usize, -1, x.sign));
    }
    if i < 0 && j > 0 {
        if p.coord(1) < q.coord(1) {
            return Some(midpoint_at(p, q, 1, x.sign));
        }
        return Some(offset_point(p, n + 1 - j as usize, 1, x.sign));
    }
    None
}

/// Copies the shared prefix, averages the two coordinates at the level, and
/// pads with zeros.
fn midpoint_at(p: &RationalTuple, q: &RationalTuple, level: usize, sign: Sign) -> SignedPoint {
    let n = p.dim();
    let mut coords = Vec::with_capacity(n);
    for k in 1..level {
        coords.push(p.coord(k).clone());
    }
    let two = BigRational::from_integer(BigInt::from(2));
    coords.push((p.coord(level) + q.coord(level)) / two);
    for _ in level..n {
        coords.push(BigRational::from_integer(BigInt::from(0)));
    }
    SignedPoint::new(RationalTuple::new(coords), sign)
}

/// Copies the first `keep` coordinates of the base and shifts every later
/// coordinate by `delta`, entering the stratum at level keep + 1.
fn offset_point(base: &RationalTuple, keep: usize, delta: i64, sign: Sign) -> SignedPoint {
    let n = base.dim();
    let shift = BigRational::from_integer(BigInt::from(delta));
    let mut coords = Vec::with_capacity(n);
    for k in 1..=n {
        if k <= keep {
            coords.push(base.coord(k).clone());
        } else {
            coords.push(base.coord(k) + &shift);
        }
    }
    SignedPoint::new(RationalTuple::new(coords), sign)
}

fn fallback_search(
    i: i64,
    j: i64,
    x: &SignedPoint,
    y: &SignedPoint,
    n: usize,
) -> Result<SignedPoint, RepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..WITNESS_BUDGET {
        let shape: u32 = rng.gen_range(0..5);
        let candidate = match shape {
            0 => SignedPoint::new(x.tuple.clone(), random_sign(&mut rng)),
            1 => SignedPoint::new(y.tuple.clone(), random_sign(&mut rng)),
            2 => {
                let level = rng.gen_range(1..=n);
                if x.tuple.coord(level) < y.tuple.coord(level) {
                    midpoint_at(&x.tuple, &y.tuple, level, random_sign(&mut rng))
                } else {
                    continue;
                }
            }
            3 => {
                let keep = rng.gen_range(0..n);
                let delta = if rng.gen_bool(0.5) { 1 } else { -1 };
                let base = if rng.gen_bool(0.5) { &x.tuple } else { &y.tuple };
                offset_point(base, keep, delta, random_sign(&mut rng))
            }
            _ => SignedPoint::new(random_tuple(n, &mut rng), random_sign(&mut rng)),
        };
        if odd_member(n, i, x, &candidate) && odd_member(n, j, &candidate, y) {
            return Ok(candidate);
        }
    }
    Err(RepError::WitnessSearch {
        budget: WITNESS_BUDGET,
        context: format!("i = {i}, j = {j}, pair = ({x}, {y})"),
    })
}
