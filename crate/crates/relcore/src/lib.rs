//! Finite binary relations as bitsets over a fixed pair universe.
//!
//! A [`Carrier`] names the elements of a finite set X, a [`Universe`] fixes
//! the set of pairs a relation may range over (all of X x X, or a subset such
//! as an equivalence relation E), and a [`Rel`] is a subset of that universe.
//! Complement is always taken relative to the declared universe, never
//! silently relative to X x X.
//!
//! All values are immutable after construction and cheap to clone; the pair
//! universe is shared behind an `Arc`.

mod harness;
mod report;

pub use harness::{verify_relation_identities, verify_relation_identities_with, HarnessOps};
pub use report::{CheckFailure, CheckRecord, VerificationReport, Verdict, FAILURE_SAMPLE_CAP};

use std::fmt;
use std::sync::Arc;

use rand::Rng;

/// Largest carrier size supported; keeps every universe within one 64-bit word.
pub const MAX_CARRIER: usize = 8;

/// A finite set of named elements, indexed 0..size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    labels: Vec<String>,
}

impl Carrier {
    /// Panics if labels are empty, repeated, or more than [`MAX_CARRIER`].
    pub fn new<I, S>(labels: I) -> Carrier
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert!(!labels.is_empty(), "carrier must have at least one element");
        assert!(
            labels.len() <= MAX_CARRIER,
            "carrier limited to {MAX_CARRIER} elements, got {}",
            labels.len()
        );
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[i + 1..] {
                assert!(a != b, "carrier labels must be distinct, got {a:?} twice");
            }
        }
        Carrier { labels }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// The pair set a relation lives inside, with its canonical enumeration.
///
/// Pairs are enumerated row-major over carrier indices once at creation; every
/// [`Rel`] bitset over this universe shares that enumeration.
#[derive(Debug)]
pub struct Universe {
    carrier: Carrier,
    pairs: Vec<(u8, u8)>,
    position: Vec<Option<u8>>, // carrier.size()^2 lookup, row-major
}

impl Universe {
    /// The full universe X x X.
    pub fn full(carrier: Carrier) -> Arc<Universe> {
        let n = carrier.size();
        let pairs = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .collect::<Vec<_>>();
        Universe::restricted(carrier, &pairs)
    }

    /// A universe holding exactly the given pairs (deduplicated, row-major).
    pub fn restricted(carrier: Carrier, pairs: &[(usize, usize)]) -> Arc<Universe> {
        let n = carrier.size();
        let mut position = vec![None; n * n];
        let mut sorted: Vec<(u8, u8)> = Vec::new();
        let mut seen = vec![false; n * n];
        for &(x, y) in pairs {
            assert!(x < n && y < n, "pair ({x},{y}) outside carrier of size {n}");
            seen[x * n + y] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if seen[x * n + y] {
                    position[x * n + y] = Some(sorted.len() as u8);
                    sorted.push((x as u8, y as u8));
                }
            }
        }
        Arc::new(Universe {
            carrier,
            pairs: sorted,
            position,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().map(|&(x, y)| (x as usize, y as usize))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Enumeration position of (x, y), if the pair belongs to the universe.
    pub fn pair_position(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.carrier.size();
        self.position[x * n + y].map(|p| p as usize)
    }

    pub fn contains_pair(&self, x: usize, y: usize) -> bool {
        self.pair_position(x, y).is_some()
    }

    fn mask(&self) -> u64 {
        if self.pairs.len() == 64 {
            !0
        } else {
            (1u64 << self.pairs.len()) - 1
        }
    }

    /// Structural coincidence: same labels and same pair set.
    pub fn same_as(&self, other: &Universe) -> bool {
        std::ptr::eq(self, other)
            || (self.carrier == other.carrier && self.pairs == other.pairs)
    }
}

/// A binary relation: a subset of its universe's pairs.
#[derive(Clone)]
pub struct Rel {
    universe: Arc<Universe>,
    bits: u64,
}

fn check_same_universe(a: &Rel, b: &Rel, op: &str) {
    assert!(
        a.universe.same_as(&b.universe),
        "{op}: relations live in different universes"
    );
}

impl Rel {
    pub fn empty(universe: &Arc<Universe>) -> Rel {
        Rel {
            universe: Arc::clone(universe),
            bits: 0,
        }
    }

    pub fn universal(universe: &Arc<Universe>) -> Rel {
        Rel {
            universe: Arc::clone(universe),
            bits: universe.mask(),
        }
    }

    /// The identity relation restricted to the universe.
    pub fn identity(universe: &Arc<Universe>) -> Rel {
        Rel::from_fn(universe, |x, y| x == y)
    }

    pub fn from_pairs(universe: &Arc<Universe>, pairs: &[(usize, usize)]) -> Rel {
        let mut bits = 0u64;
        for &(x, y) in pairs {
            let p = universe
                .pair_position(x, y)
                .unwrap_or_else(|| panic!("pair ({x},{y}) not in universe"));
            bits |= 1 << p;
        }
        Rel { universe: Arc::clone(universe), bits }
    }

    /// Membership decided pointwise over the universe's pairs.
    pub fn from_fn(universe: &Arc<Universe>, mut f: impl FnMut(usize, usize) -> bool) -> Rel {
        let mut bits = 0u64;
        for (p, (x, y)) in universe.pairs().enumerate() {
            if f(x, y) {
                bits |= 1 << p;
            }
        }
        Rel { universe: Arc::clone(universe), bits }
    }

    /// The graph {(x, perm[x])} of a carrier permutation.
    pub fn permutation(universe: &Arc<Universe>, perm: &[usize]) -> Rel {
        let n = universe.carrier().size();
        assert_eq!(perm.len(), n, "permutation length must match carrier size");
        let mut seen = vec![false; n];
        for &im in perm {
            assert!(im < n && !seen[im], "not a permutation: {perm:?}");
            seen[im] = true;
        }
        let pairs: Vec<(usize, usize)> = perm.iter().copied().enumerate().collect();
        Rel::from_pairs(universe, &pairs)
    }

    /// Each universe pair included independently with probability 1/2.
    pub fn random(universe: &Arc<Universe>, rng: &mut impl Rng) -> Rel {
        Rel::from_fn(universe, |_, _| rng.gen_bool(0.5))
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Raw membership bits in the universe's pair enumeration.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        match self.universe.pair_position(x, y) {
            Some(p) => self.bits >> p & 1 == 1,
            None => false,
        }
    }

    pub fn member_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.universe
            .pairs()
            .enumerate()
            .filter(|&(p, _)| self.bits >> p & 1 == 1)
            .map(|(_, pair)| pair)
    }

    pub fn cardinality(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn union(&self, other: &Rel) -> Rel {
        check_same_universe(self, other, "union");
        Rel { universe: Arc::clone(&self.universe), bits: self.bits | other.bits }
    }

    pub fn intersect(&self, other: &Rel) -> Rel {
        check_same_universe(self, other, "intersect");
        Rel { universe: Arc::clone(&self.universe), bits: self.bits & other.bits }
    }

    /// Complement relative to the declared universe.
    pub fn complement(&self) -> Rel {
        Rel {
            universe: Arc::clone(&self.universe),
            bits: self.bits ^ self.universe.mask(),
        }
    }

    /// Panics if the universe is not closed under pair swap.
    pub fn converse(&self) -> Rel {
        let mut bits = 0u64;
        for (x, y) in self.member_pairs() {
            let p = self.universe.pair_position(y, x).unwrap_or_else(|| {
                panic!("universe not converse-closed at ({y},{x})")
            });
            bits |= 1 << p;
        }
        Rel { universe: Arc::clone(&self.universe), bits }
    }

    /// Relational composition { (x,y) | exists z: (x,z) in self, (z,y) in other }.
    ///
    /// Panics if some composite pair falls outside the universe; closure is
    /// guaranteed when the universe is X x X or a transitive pair set.
    pub fn compose(&self, other: &Rel) -> Rel {
        check_same_universe(self, other, "compose");
        let n = self.universe.carrier().size();
        let mut left_rows = [0u8; MAX_CARRIER];
        for (x, z) in self.member_pairs() {
            left_rows[x] |= 1 << z;
        }
        let mut right_rows = [0u8; MAX_CARRIER];
        for (z, y) in other.member_pairs() {
            right_rows[z] |= 1 << y;
        }
        let mut bits = 0u64;
        for x in 0..n {
            let mut out = 0u8;
            let mut zs = left_rows[x];
            while zs != 0 {
                let z = zs.trailing_zeros() as usize;
                zs &= zs - 1;
                out |= right_rows[z];
            }
            let mut ys = out;
            while ys != 0 {
                let y = ys.trailing_zeros() as usize;
                ys &= ys - 1;
                let p = self.universe.pair_position(x, y).unwrap_or_else(|| {
                    panic!("composition leaves the universe at ({x},{y})")
                });
                bits |= 1 << p;
            }
        }
        Rel { universe: Arc::clone(&self.universe), bits }
    }

    pub fn is_subset(&self, other: &Rel) -> bool {
        check_same_universe(self, other, "is_subset");
        self.bits & !other.bits == 0
    }

    /// Hex encoding of the membership bits in enumeration order, one byte per
    /// eight pairs. Stable across runs: the canonical name of this relation.
    pub fn digest_hex(&self) -> String {
        let nbytes = self.universe.len().div_ceil(8).max(1);
        (0..nbytes)
            .map(|i| format!("{:02x}", (self.bits >> (8 * i)) as u8))
            .collect()
    }
}

impl PartialEq for Rel {
    fn eq(&self, other: &Rel) -> bool {
        check_same_universe(self, other, "eq");
        self.bits == other.bits
    }
}

impl Eq for Rel {}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let carrier = self.universe.carrier();
        write!(f, "{{")?;
        for (i, (x, y)) in self.member_pairs().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", carrier.label(x), carrier.label(y))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rel{self}")
    }
}
