//! Finite algebras of weakening relations over an ordered context.
//!
//! The carrier is the set of upsets of the context's pair order, which is
//! always closed under intersection, union, relational composition, the two
//! linear negations, and both residuals.  `build_algebra` enumerates the
//! carrier and pins down the two constants; the verification entry points
//! check every axiom of a distributive involutive residuated lattice by
//! exhaustive evaluation over the operation tables.

mod axioms;
mod embed;
mod emit;
mod product;
mod tables;

pub use axioms::{verify_infl_axioms, verify_table_axioms};
pub use embed::{find_embedding, verify_homomorphism, Homomorphism};
pub use emit::{
    context_spec, describe_algebra, hasse_dot, AlgebraDescription, ElementDescription,
    TableDescription,
};
pub use product::{product_context, verify_product_iso};
pub use tables::{tables_for_subset, FiniteInFLTables};

use std::collections::HashMap;

use ordered_context::{
    enumerate_upsets, is_upset, zero_relation, RepContext, ResourceError,
};
use relcore::Rel;

/// The algebra of all weakening relations of one context: upsets of the pair
/// order with the distinguished unit and zero.  Element order matches
/// `enumerate_upsets`, so indices are stable across runs.
#[derive(Debug, Clone)]
pub struct DInFLAlgebra {
    ctx: RepContext,
    elements: Vec<Rel>,
    index: HashMap<u64, usize>,
    identity: usize,
    zero: usize,
}

/// Enumerates the full carrier and locates the constants.  Fails with
/// `ResourceError` if the upset count exceeds `cap`.
pub fn build_algebra(ctx: &RepContext, cap: usize) -> Result<DInFLAlgebra, ResourceError> {
    let elements = enumerate_upsets(ctx, cap)?;
    let mut index = HashMap::with_capacity(elements.len());
    for (i, r) in elements.iter().enumerate() {
        index.insert(r.bits(), i);
    }
    let identity = index[&ctx.leq_upset().bits()];
    let zero = index[&zero_relation(ctx).bits()];
    let alg = DInFLAlgebra {
        ctx: ctx.clone(),
        elements,
        index,
        identity,
        zero,
    };
    alg.assert_closure();
    Ok(alg)
}

impl DInFLAlgebra {
    pub fn context(&self) -> &RepContext {
        &self.ctx
    }

    pub fn elements(&self) -> &[Rel] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn element(&self, i: usize) -> &Rel {
        &self.elements[i]
    }

    pub fn index_of(&self, r: &Rel) -> Option<usize> {
        self.index.get(&r.bits()).copied()
    }

    fn require(&self, r: &Rel, op: &str) -> usize {
        match self.index_of(r) {
            Some(i) => i,
            None => panic!("{op} left the carrier: {r}"),
        }
    }

    pub fn le_idx(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(&self.elements[b])
    }

    pub fn meet_idx(&self, a: usize, b: usize) -> usize {
        self.require(&self.elements[a].intersect(&self.elements[b]), "meet")
    }

    pub fn join_idx(&self, a: usize, b: usize) -> usize {
        self.require(&self.elements[a].union(&self.elements[b]), "join")
    }

    pub fn fuse_idx(&self, a: usize, b: usize) -> usize {
        self.require(&self.elements[a].compose(&self.elements[b]), "composition")
    }

    pub fn tilde_idx(&self, a: usize) -> usize {
        self.require(&tilde_raw(&self.elements[a], &self.ctx), "linear negation")
    }

    pub fn minus_idx(&self, a: usize) -> usize {
        self.require(&minus_raw(&self.elements[a], &self.ctx), "linear co-negation")
    }

    pub fn under_idx(&self, a: usize, b: usize) -> usize {
        self.require(&under_raw(&self.elements[a], &self.elements[b]), "left residual")
    }

    pub fn over_idx(&self, a: usize, b: usize) -> usize {
        self.require(&over_raw(&self.elements[a], &self.elements[b]), "right residual")
    }

    pub fn arrow_idx(&self, a: usize, b: usize) -> usize {
        self.under_idx(a, b)
    }

    /// Every operation applied to carrier elements must land in the carrier.
    fn assert_closure(&self) {
        let n = self.len();
        for a in 0..n {
            self.tilde_idx(a);
            self.minus_idx(a);
            for b in 0..n {
                self.meet_idx(a, b);
                self.join_idx(a, b);
                self.fuse_idx(a, b);
                self.under_idx(a, b);
                self.over_idx(a, b);
            }
        }
    }

    pub fn to_tables(&self) -> FiniteInFLTables {
        tables::tables_from_algebra(self)
    }
}

fn tilde_raw(r: &Rel, ctx: &RepContext) -> Rel {
    r.complement().converse().compose(&ctx.alpha_graph())
}

fn minus_raw(r: &Rel, ctx: &RepContext) -> Rel {
    ctx.alpha_graph().compose(&r.complement().converse())
}

fn under_raw(r: &Rel, s: &Rel) -> Rel {
    r.converse().compose(&s.complement()).complement()
}

fn over_raw(r: &Rel, s: &Rel) -> Rel {
    r.complement().compose(&s.converse()).complement()
}

/// Both linear negations of an upset, as `(tilde, minus)`.  Each result is
/// cross-checked against its residual characterisation: ~r = r\0 and
/// -r = 0/r.
pub fn negations(r: &Rel, ctx: &RepContext) -> (Rel, Rel) {
    assert!(is_upset(r, ctx), "negation argument must be an upset");
    let zero = zero_relation(ctx);
    let tilde = tilde_raw(r, ctx);
    let minus = minus_raw(r, ctx);
    assert_eq!(tilde, under_raw(r, &zero), "~r must agree with r\\0");
    assert_eq!(minus, over_raw(&zero, r), "-r must agree with 0/r");
    (tilde, minus)
}

/// Both residuals of a pair of upsets, as `(r\s, r/s)`.
pub fn residuals(r: &Rel, s: &Rel, ctx: &RepContext) -> (Rel, Rel) {
    assert!(is_upset(r, ctx) && is_upset(s, ctx), "residual arguments must be upsets");
    (under_raw(r, s), over_raw(r, s))
}

/// The arrow r => s, asserted equal to its negation form ~((-s) o r).
pub fn arrow(r: &Rel, s: &Rel, ctx: &RepContext) -> Rel {
    let out = residuals(r, s, ctx).0;
    let minus_s = negations(s, ctx).1;
    let via_negation = tilde_raw(&minus_s.compose(r), ctx);
    assert_eq!(out, via_negation, "r => s must equal ~((-s) o r)");
    out
}

/// Whether ~ and - coincide on every element.  Returns a witness index when
/// they differ.  The verdict is asserted to match the test `alpha = id`.
pub fn is_cyclic(alg: &DInFLAlgebra) -> (bool, Option<usize>) {
    let mut witness = None;
    for a in 0..alg.len() {
        if alg.tilde_idx(a) != alg.minus_idx(a) {
            witness = Some(a);
            break;
        }
    }
    let cyclic = witness.is_none();
    assert_eq!(
        cyclic,
        alg.context().alpha_is_identity(),
        "cyclicity must coincide with alpha being the identity"
    );
    (cyclic, witness)
}

/// The least subset containing the generators and the unit that is closed
/// under meet, join, composition, both negations, and the arrow.  Fixpoint
/// iteration applies unary operations before binary ones in each round; the
/// result is sorted like `enumerate_upsets` output.
pub fn generate_subalgebra(
    ctx: &RepContext,
    generators: &[Rel],
    cap: usize,
) -> Result<Vec<Rel>, ResourceError> {
    for g in generators {
        assert!(is_upset(g, ctx), "generator {g} is not an upset");
    }
    let mut members: Vec<Rel> = Vec::new();
    let mut seen: HashMap<u64, ()> = HashMap::new();
    let push = |members: &mut Vec<Rel>, seen: &mut HashMap<u64, ()>, r: Rel| {
        if seen.insert(r.bits(), ()).is_none() {
            members.push(r);
        }
    };
    push(&mut members, &mut seen, ctx.leq_upset());
    for g in generators {
        push(&mut members, &mut seen, g.clone());
    }
    loop {
        let snapshot = members.clone();
        let before = members.len();
        for r in &snapshot {
            push(&mut members, &mut seen, tilde_raw(r, ctx));
            push(&mut members, &mut seen, minus_raw(r, ctx));
        }
        let unary_done = members.clone();
        for r in &unary_done {
            for s in &unary_done {
                push(&mut members, &mut seen, r.intersect(s));
                push(&mut members, &mut seen, r.union(s));
                push(&mut members, &mut seen, r.compose(s));
                push(&mut members, &mut seen, under_raw(r, s));
            }
        }
        if members.len() > cap {
            return Err(ResourceError {
                what: "subalgebra size",
                cap,
                lower_bound: members.len(),
            });
        }
        if members.len() == before {
            break;
        }
    }
    members.sort_by_key(|r| (r.cardinality(), r.bits()));
    Ok(members)
}
