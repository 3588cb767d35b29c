//! Finite posets and the enriched contexts the relational algebras are built
//! over: a poset ⟨X, ≤⟩, an equivalence relation E ⊇ ≤, and an order
//! automorphism α whose graph lies inside E.
//!
//! The pairs of E carry their own order ⪯, defined by (u,v) ⪯ (x,y) iff
//! x ≤ u and v ≤ y; the algebra carriers are the upsets of ⟨E, ⪯⟩. This crate
//! owns context validation, the pair order, upset enumeration, and the
//! distinguished zero relation ≤ᶜ⌣ ∘ α.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::Arc;

use relcore::{Carrier, Rel, Universe, MAX_CARRIER};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A context or input failed validation; `field` names the offending part
/// ("elements", "order", "E", or "alpha").
#[derive(Debug, Clone, Error)]
#[error("invalid {field}: {reason}")]
pub struct ValidationError {
    pub field: &'static str,
    pub reason: String,
}

impl ValidationError {
    pub fn new(field: &'static str, reason: impl Into<String>) -> Self {
        ValidationError {
            field,
            reason: reason.into(),
        }
    }
}

/// An enumeration hit its cap; `lower_bound` is a proven lower bound on the
/// true count.
#[derive(Debug, Clone, Error)]
#[error("{what} exceeds cap {cap}: at least {lower_bound} exist")]
pub struct ResourceError {
    pub what: &'static str,
    pub cap: usize,
    pub lower_bound: usize,
}

/// A finite partially ordered set: a carrier plus a reflexive, antisymmetric,
/// transitive relation over the full universe X x X.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    universe: Arc<Universe>,
    leq: Rel,
}

fn fmt_pair(carrier: &Carrier, x: usize, y: usize) -> String {
    format!("({},{})", carrier.label(x), carrier.label(y))
}

impl FinitePoset {
    /// Builds a poset from order pairs given by carrier index; the reflexive
    /// closure is applied before validation.
    pub fn new(carrier: Carrier, pairs: &[(usize, usize)]) -> Result<FinitePoset, ValidationError> {
        let universe = Universe::full(carrier);
        let n = universe.carrier().size();
        let mut all: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        all.extend_from_slice(pairs);
        let leq = Rel::from_pairs(&universe, &all);
        let carrier = universe.carrier();
        for (x, y) in leq.member_pairs() {
            if x != y && leq.contains(y, x) {
                return Err(ValidationError::new(
                    "order",
                    format!(
                        "not antisymmetric: both {} and {} present",
                        fmt_pair(carrier, x, y),
                        fmt_pair(carrier, y, x)
                    ),
                ));
            }
        }
        for (x, y) in leq.member_pairs() {
            for z in 0..n {
                if leq.contains(y, z) && !leq.contains(x, z) {
                    return Err(ValidationError::new(
                        "order",
                        format!(
                            "not transitive: {} and {} but {} missing",
                            fmt_pair(carrier, x, y),
                            fmt_pair(carrier, y, z),
                            fmt_pair(carrier, x, z)
                        ),
                    ));
                }
            }
        }
        Ok(FinitePoset {
            universe: Arc::clone(&universe),
            leq,
        })
    }

    pub fn carrier(&self) -> &Carrier {
        self.universe.carrier()
    }

    /// The full universe X x X this poset's order lives in.
    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn leq(&self) -> &Rel {
        &self.leq
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq.contains(x, y)
    }
}

/// The order ⪯ on the pairs of E: (u,v) ⪯ (x,y) iff x ≤ u and v ≤ y.
/// Stored as successor and predecessor masks over E's pair enumeration.
#[derive(Debug, Clone)]
pub struct PairOrder {
    succ: Vec<u64>,
    pred: Vec<u64>,
}

impl PairOrder {
    fn build(poset: &FinitePoset, e_universe: &Arc<Universe>) -> PairOrder {
        let pairs: Vec<(usize, usize)> = e_universe.pairs().collect();
        let m = pairs.len();
        let mut succ = vec![0u64; m];
        let mut pred = vec![0u64; m];
        for (a, &(u, v)) in pairs.iter().enumerate() {
            for (b, &(x, y)) in pairs.iter().enumerate() {
                if poset.le(x, u) && poset.le(v, y) {
                    succ[a] |= 1 << b;
                    pred[b] |= 1 << a;
                }
            }
        }
        PairOrder { succ, pred }
    }

    /// Does pair position `a` precede pair position `b` in ⪯?
    pub fn precedes_idx(&self, a: usize, b: usize) -> bool {
        self.succ[a] >> b & 1 == 1
    }

    pub fn successors(&self, a: usize) -> u64 {
        self.succ[a]
    }

    pub fn predecessors(&self, a: usize) -> u64 {
        self.pred[a]
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }
}

/// A validated context ⟨X, ≤, E, α⟩: the carrier of the induced algebra is
/// the set of upsets of ⟨E, ⪯⟩.
#[derive(Debug, Clone)]
pub struct RepContext {
    poset: FinitePoset,
    e: Rel,
    alpha: Vec<usize>,
    e_universe: Arc<Universe>,
    pair_order: PairOrder,
}

impl RepContext {
    /// Validates E (equivalence containing ≤) and α (order automorphism with
    /// graph inside E) and precomputes the pair order.
    pub fn new(poset: FinitePoset, e: Rel, alpha: Vec<usize>) -> Result<RepContext, ValidationError> {
        let n = poset.carrier().size();
        assert!(
            e.universe().same_as(poset.universe()),
            "E must live in the poset's full universe"
        );
        let carrier = poset.carrier();
        for x in 0..n {
            if !e.contains(x, x) {
                return Err(ValidationError::new(
                    "E",
                    format!("not reflexive: {} missing", fmt_pair(carrier, x, x)),
                ));
            }
        }
        for (x, y) in e.member_pairs() {
            if !e.contains(y, x) {
                return Err(ValidationError::new(
                    "E",
                    format!(
                        "not symmetric: {} present but {} missing",
                        fmt_pair(carrier, x, y),
                        fmt_pair(carrier, y, x)
                    ),
                ));
            }
        }
        for (x, y) in e.member_pairs() {
            for z in 0..n {
                if e.contains(y, z) && !e.contains(x, z) {
                    return Err(ValidationError::new(
                        "E",
                        format!(
                            "not transitive: {} and {} but {} missing",
                            fmt_pair(carrier, x, y),
                            fmt_pair(carrier, y, z),
                            fmt_pair(carrier, x, z)
                        ),
                    ));
                }
            }
        }
        if !poset.leq().is_subset(&e) {
            let (x, y) = poset
                .leq()
                .member_pairs()
                .find(|&(x, y)| !e.contains(x, y))
                .expect("a missing pair exists");
            return Err(ValidationError::new(
                "E",
                format!("must contain the order: {} not in E", fmt_pair(carrier, x, y)),
            ));
        }

        if alpha.len() != n {
            return Err(ValidationError::new(
                "alpha",
                format!("maps {} elements but carrier has {n}", alpha.len()),
            ));
        }
        let mut seen = vec![false; n];
        for &im in &alpha {
            if im >= n || seen[im] {
                return Err(ValidationError::new("alpha", "not a bijection".to_string()));
            }
            seen[im] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if poset.le(x, y) != poset.le(alpha[x], alpha[y]) {
                    return Err(ValidationError::new(
                        "alpha",
                        format!(
                            "not an order automorphism: {} ≤ {} is {} but {} ≤ {} is {}",
                            carrier.label(x),
                            carrier.label(y),
                            poset.le(x, y),
                            carrier.label(alpha[x]),
                            carrier.label(alpha[y]),
                            poset.le(alpha[x], alpha[y])
                        ),
                    ));
                }
            }
        }
        for (x, &im) in alpha.iter().enumerate() {
            if !e.contains(x, im) {
                return Err(ValidationError::new(
                    "alpha",
                    format!(
                        "graph must lie inside E: {} not in E",
                        fmt_pair(carrier, x, im)
                    ),
                ));
            }
        }

        let e_pairs: Vec<(usize, usize)> = e.member_pairs().collect();
        let e_universe = Universe::restricted(poset.carrier().clone(), &e_pairs);
        let pair_order = PairOrder::build(&poset, &e_universe);
        Ok(RepContext {
            poset,
            e,
            alpha,
            e_universe,
            pair_order,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn carrier(&self) -> &Carrier {
        self.poset.carrier()
    }

    /// E as a relation over the full universe X x X.
    pub fn e(&self) -> &Rel {
        &self.e
    }

    /// The universe whose pairs are exactly E; algebra elements live here.
    pub fn e_universe(&self) -> &Arc<Universe> {
        &self.e_universe
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn alpha_is_identity(&self) -> bool {
        self.alpha.iter().enumerate().all(|(i, &im)| i == im)
    }

    pub fn pair_order(&self) -> &PairOrder {
        &self.pair_order
    }

    /// ≤ as an element of Up(E): the monoid identity of the induced algebra.
    pub fn leq_upset(&self) -> Rel {
        let pairs: Vec<(usize, usize)> = self.poset.leq().member_pairs().collect();
        Rel::from_pairs(&self.e_universe, &pairs)
    }

    /// The graph {(x, α(x))} over the E universe.
    pub fn alpha_graph(&self) -> Rel {
        Rel::permutation(&self.e_universe, &self.alpha)
    }
}

/// JSON-facing context description.
///
/// `leq` lists order pairs (reflexive pairs optional); `E` is either the
/// keyword "full" (meaning X x X, also the default when omitted) or an
/// explicit pair list, with reflexive closure applied; `alpha` maps element
/// names and defaults to the identity on missing names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContextSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    #[serde(rename = "E", default)]
    pub e: ESpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ESpec {
    Keyword(String),
    Pairs(Vec<(String, String)>),
}

impl Default for ESpec {
    fn default() -> Self {
        ESpec::Keyword("full".to_string())
    }
}

/// Builds and validates a context from its JSON-facing description.
pub fn load_context(spec: &ContextSpec) -> Result<RepContext, ValidationError> {
    if spec.elements.is_empty() {
        return Err(ValidationError::new(
            "elements",
            "context requires at least one element",
        ));
    }
    if spec.elements.len() > MAX_CARRIER {
        return Err(ValidationError::new(
            "elements",
            format!(
                "at most {MAX_CARRIER} elements supported, got {}",
                spec.elements.len()
            ),
        ));
    }
    for (i, a) in spec.elements.iter().enumerate() {
        if spec.elements[i + 1..].contains(a) {
            return Err(ValidationError::new(
                "elements",
                format!("element {a:?} repeated"),
            ));
        }
    }
    let carrier = Carrier::new(spec.elements.clone());
    let resolve = |field: &'static str, label: &String| {
        carrier
            .index_of(label)
            .ok_or_else(|| ValidationError::new(field, format!("unknown element {label:?}")))
    };

    let mut leq_pairs = Vec::new();
    for (a, b) in &spec.leq {
        leq_pairs.push((resolve("order", a)?, resolve("order", b)?));
    }
    let poset = FinitePoset::new(carrier.clone(), &leq_pairs)?;

    let e = match &spec.e {
        ESpec::Keyword(word) if word == "full" => Rel::universal(poset.universe()),
        ESpec::Keyword(word) => {
            return Err(ValidationError::new(
                "E",
                format!("unknown keyword {word:?}, expected \"full\" or a pair list"),
            ));
        }
        ESpec::Pairs(pairs) => {
            let mut e_pairs: Vec<(usize, usize)> =
                (0..carrier.size()).map(|i| (i, i)).collect();
            for (a, b) in pairs {
                e_pairs.push((resolve("E", a)?, resolve("E", b)?));
            }
            Rel::from_pairs(poset.universe(), &e_pairs)
        }
    };

    let mut alpha: Vec<usize> = (0..carrier.size()).collect();
    if let Some(map) = &spec.alpha {
        for (from, to) in map {
            alpha[resolve("alpha", from)?] = resolve("alpha", to)?;
        }
    }

    RepContext::new(poset, e, alpha)
}

/// Does E-pair `a` precede E-pair `b` in ⪯? Panics if either pair is not in E.
pub fn precedes(a: (usize, usize), b: (usize, usize), ctx: &RepContext) -> bool {
    let pa = ctx
        .e_universe()
        .pair_position(a.0, a.1)
        .unwrap_or_else(|| panic!("pair {a:?} not in E"));
    let pb = ctx
        .e_universe()
        .pair_position(b.0, b.1)
        .unwrap_or_else(|| panic!("pair {b:?} not in E"));
    ctx.pair_order().precedes_idx(pa, pb)
}

/// Is `r` upward closed in ⟨E, ⪯⟩? Panics if `r` does not live in E's universe.
pub fn is_upset(r: &Rel, ctx: &RepContext) -> bool {
    assert!(
        r.universe().same_as(ctx.e_universe()),
        "is_upset: relation must live in the E universe"
    );
    let bits = r.bits();
    let mut left = bits;
    while left != 0 {
        let p = left.trailing_zeros() as usize;
        left &= left - 1;
        if ctx.pair_order().successors(p) & !bits != 0 {
            return false;
        }
    }
    true
}

/// Is `r` downward closed in ⟨E, ⪯⟩?
pub fn is_downset(r: &Rel, ctx: &RepContext) -> bool {
    assert!(
        r.universe().same_as(ctx.e_universe()),
        "is_downset: relation must live in the E universe"
    );
    let bits = r.bits();
    let mut left = bits;
    while left != 0 {
        let p = left.trailing_zeros() as usize;
        left &= left - 1;
        if ctx.pair_order().predecessors(p) & !bits != 0 {
            return false;
        }
    }
    true
}

/// Default ceiling for upset enumeration.
pub const DEFAULT_UPSET_CAP: usize = 1 << 20;

/// All upsets of ⟨E, ⪯⟩, sorted by cardinality then bit pattern.
///
/// Walks the upset lattice bottom-up from the empty set, adding one
/// ⪯-maximal missing pair at a time and memoizing visited bitsets; every
/// upset is reachable this way. Fails fast once more than `cap` distinct
/// upsets have been seen.
pub fn enumerate_upsets(ctx: &RepContext, cap: usize) -> Result<Vec<Rel>, ResourceError> {
    assert!(cap >= 1, "cap must be at least 1");
    let m = ctx.e_universe().len();
    let order = ctx.pair_order();
    let mut visited: HashSet<u64> = HashSet::new();
    let mut queue: VecDeque<u64> = VecDeque::new();
    visited.insert(0);
    queue.push_back(0);
    while let Some(upset) = queue.pop_front() {
        for p in 0..m {
            if upset >> p & 1 == 1 {
                continue;
            }
            // p is addable iff every strict ⪯-successor is already present.
            let strict_succ = order.successors(p) & !(1u64 << p);
            if strict_succ & !upset != 0 {
                continue;
            }
            let next = upset | 1 << p;
            if visited.insert(next) {
                if visited.len() > cap {
                    return Err(ResourceError {
                        what: "upset count",
                        cap,
                        lower_bound: visited.len(),
                    });
                }
                queue.push_back(next);
            }
        }
    }
    let mut bitsets: Vec<u64> = visited.into_iter().collect();
    bitsets.sort_by_key(|&b| (b.count_ones(), b));
    let universe = ctx.e_universe();
    Ok(bitsets
        .into_iter()
        .map(|bits| {
            let pairs: Vec<(usize, usize)> = universe
                .pairs()
                .enumerate()
                .filter(|&(p, _)| bits >> p & 1 == 1)
                .map(|(_, pair)| pair)
                .collect();
            Rel::from_pairs(universe, &pairs)
        })
        .collect())
}

/// The distinguished zero: ≤ᶜ⌣ ∘ α, with the complement taken in E.
///
/// Computes both α ∘ ≤ᶜ⌣ and ≤ᶜ⌣ ∘ α and asserts they coincide and form an
/// upset; a mismatch is an implementation bug, never returned as data.
pub fn zero_relation(ctx: &RepContext) -> Rel {
    let leq = ctx.leq_upset();
    let alpha = ctx.alpha_graph();
    let core = leq.complement().converse();
    let left = alpha.compose(&core);
    let right = core.compose(&alpha);
    assert_eq!(
        left, right,
        "zero relation: α ∘ ≤ᶜ⌣ and ≤ᶜ⌣ ∘ α disagree on a valid context"
    );
    assert!(is_upset(&left, ctx), "zero relation must be an upset");
    left
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Lexicographic order.
    let mut result = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut result);
    result
}

/// Every valid context on `n` labeled elements: all posets, all equivalences
/// E ⊇ ≤, all order automorphisms α ⊆ E, in a fixed deterministic order.
pub fn enumerate_contexts(n: usize) -> Vec<RepContext> {
    assert!(n >= 1 && n <= MAX_CARRIER);
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y)
        .collect();
    let perms = permutations(n);
    let mut contexts = Vec::new();
    for order_mask in 0u32..1 << off_diag.len() {
        let pairs: Vec<(usize, usize)> = off_diag
            .iter()
            .enumerate()
            .filter(|&(i, _)| order_mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let Ok(poset) = FinitePoset::new(Carrier::new(labels.clone()), &pairs) else {
            continue;
        };
        for e_mask in 0u32..1 << off_diag.len() {
            let mut e_pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
            e_pairs.extend(
                off_diag
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| e_mask >> i & 1 == 1)
                    .map(|(_, &p)| p),
            );
            let e = Rel::from_pairs(poset.universe(), &e_pairs);
            if e != e.converse() || !e.compose(&e).is_subset(&e) || !poset.leq().is_subset(&e) {
                continue;
            }
            for perm in &perms {
                if let Ok(ctx) = RepContext::new(poset.clone(), e.clone(), perm.clone()) {
                    contexts.push(ctx);
                }
            }
        }
    }
    contexts
}

/// Ready-made contexts used throughout the test suites and documentation.
pub mod samples {
    use super::*;

    /// One element, everything the identity. Induces the 2-element algebra.
    pub fn singleton() -> RepContext {
        let poset = FinitePoset::new(Carrier::new(["x"]), &[]).unwrap();
        let e = Rel::universal(poset.universe());
        RepContext::new(poset, e, vec![0]).unwrap()
    }

    /// Two incomparable elements, E = X x X, α swapping them. Induces the
    /// 16-element Boolean algebra that hosts the three-element chain.
    pub fn antichain2_swap() -> RepContext {
        let poset = FinitePoset::new(Carrier::new(["x", "y"]), &[]).unwrap();
        let e = Rel::universal(poset.universe());
        RepContext::new(poset, e, vec![1, 0]).unwrap()
    }

    /// Two-element chain x < y, E = X x X, α = id. Induces a 6-element algebra.
    pub fn chain2() -> RepContext {
        let poset = FinitePoset::new(Carrier::new(["x", "y"]), &[(0, 1)]).unwrap();
        let e = Rel::universal(poset.universe());
        RepContext::new(poset, e, vec![0, 1]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflexive_closure_is_applied() {
        let poset = FinitePoset::new(Carrier::new(["x", "y"]), &[(0, 1)]).unwrap();
        assert!(poset.le(0, 0) && poset.le(1, 1) && poset.le(0, 1));
        assert!(!poset.le(1, 0));
    }

    #[test]
    fn antisymmetry_violation_reported() {
        let err = FinitePoset::new(Carrier::new(["x", "y"]), &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err.field, "order");
        assert!(err.reason.contains("antisymmetric"));
    }

    #[test]
    fn transitivity_violation_names_the_triple() {
        let err =
            FinitePoset::new(Carrier::new(["a", "b", "c"]), &[(0, 1), (1, 2)]).unwrap_err();
        assert_eq!(err.field, "order");
        assert!(err.reason.contains("(a,b)") && err.reason.contains("(b,c)"));
    }

    #[test]
    fn precedes_on_the_two_chain() {
        let ctx = samples::chain2();
        // (y,x) is the bottom of ⟨E,⪯⟩ and (x,y) the top.
        assert!(precedes((1, 0), (0, 1), &ctx));
        assert!(precedes((1, 0), (1, 0), &ctx));
        assert!(!precedes((0, 0), (1, 1), &ctx));
        assert!(!precedes((1, 1), (0, 0), &ctx));
    }

    #[test]
    fn zero_on_the_two_chain() {
        // ≤ᶜ in X² is {(y,x)}; its converse is {(x,y)}; α = id.
        let ctx = samples::chain2();
        let zero = zero_relation(&ctx);
        assert_eq!(zero, Rel::from_pairs(ctx.e_universe(), &[(0, 1)]));
    }

    #[test]
    fn zero_on_the_singleton_is_empty() {
        let ctx = samples::singleton();
        assert!(zero_relation(&ctx).is_empty());
    }

    #[test]
    fn zero_on_the_swap_antichain_is_leq() {
        let ctx = samples::antichain2_swap();
        assert_eq!(zero_relation(&ctx), ctx.leq_upset());
    }

    #[test]
    fn alpha_outside_e_rejected() {
        // Two-element antichain, E = id, α = swap: (x, α(x)) is not in E.
        let poset = FinitePoset::new(Carrier::new(["x", "y"]), &[]).unwrap();
        let e = Rel::identity(poset.universe());
        let err = RepContext::new(poset, e, vec![1, 0]).unwrap_err();
        assert_eq!(err.field, "alpha");
    }

    #[test]
    fn permutations_are_lexicographic() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], vec![0, 1, 2]);
        assert_eq!(perms[5], vec![2, 1, 0]);
    }
}
