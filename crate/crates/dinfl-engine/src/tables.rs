//! Flattened operation tables for a finite residuated structure.
//!
//! Tables decouple axiom checking from the relational construction: the same
//! checker runs against tables read off an algebra of upsets, tables of an
//! abstract chain, or deliberately corrupted tables in fault tests.  Binary
//! tables are row-major, `table[a * size + b]`.

use std::collections::HashMap;

use crate::DInFLAlgebra;
use relcore::Rel;

/// Operation tables over element indices `0..size`.  `minus`, `zero`,
/// `under`, and `over` are optional so that pure chain reducts can omit
/// them; when present they are checked against the same axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInFLTables {
    pub size: usize,
    pub labels: Vec<String>,
    pub unit: usize,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
    pub fuse: Vec<usize>,
    pub arrow: Vec<usize>,
    pub tilde: Vec<usize>,
    pub minus: Option<Vec<usize>>,
    pub zero: Option<usize>,
    pub under: Option<Vec<usize>>,
    pub over: Option<Vec<usize>>,
}

impl FiniteInFLTables {
    pub fn meet_at(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn join_at(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    pub fn fuse_at(&self, a: usize, b: usize) -> usize {
        self.fuse[a * self.size + b]
    }

    pub fn arrow_at(&self, a: usize, b: usize) -> usize {
        self.arrow[a * self.size + b]
    }

    pub fn tilde_at(&self, a: usize) -> usize {
        self.tilde[a]
    }

    pub fn minus_at(&self, a: usize) -> Option<usize> {
        self.minus.as_ref().map(|t| t[a])
    }

    pub fn under_at(&self, a: usize, b: usize) -> Option<usize> {
        self.under.as_ref().map(|t| t[a * self.size + b])
    }

    pub fn over_at(&self, a: usize, b: usize) -> Option<usize> {
        self.over.as_ref().map(|t| t[a * self.size + b])
    }

    /// Lattice order induced by the meet table.
    pub fn le_at(&self, a: usize, b: usize) -> bool {
        self.meet_at(a, b) == a
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    fn assert_shape(&self) {
        let n = self.size;
        assert!(n >= 1, "tables need at least one element");
        assert_eq!(self.labels.len(), n);
        assert!(self.unit < n);
        for (name, t) in [
            ("meet", &self.meet),
            ("join", &self.join),
            ("fuse", &self.fuse),
            ("arrow", &self.arrow),
        ] {
            assert_eq!(t.len(), n * n, "{name} table has wrong shape");
            assert!(t.iter().all(|&v| v < n), "{name} table exits the carrier");
        }
        assert_eq!(self.tilde.len(), n);
        assert!(self.tilde.iter().all(|&v| v < n));
        if let Some(t) = &self.minus {
            assert_eq!(t.len(), n);
            assert!(t.iter().all(|&v| v < n));
        }
        if let Some(z) = self.zero {
            assert!(z < n);
        }
        for (name, t) in [("under", &self.under), ("over", &self.over)] {
            if let Some(t) = t {
                assert_eq!(t.len(), n * n, "{name} table has wrong shape");
                assert!(t.iter().all(|&v| v < n), "{name} table exits the carrier");
            }
        }
    }
}

pub(crate) fn tables_from_algebra(alg: &DInFLAlgebra) -> FiniteInFLTables {
    tables_for_subset(alg, alg.elements())
}

/// Reads off tables for a subset of an algebra's carrier that is closed
/// under all operations.  Panics if any operation leaves the subset.
pub fn tables_for_subset(alg: &DInFLAlgebra, subset: &[Rel]) -> FiniteInFLTables {
    let n = subset.len();
    assert!(n >= 1, "subset must be nonempty");
    let mut local: HashMap<u64, usize> = HashMap::with_capacity(n);
    let mut global: Vec<usize> = Vec::with_capacity(n);
    for (i, r) in subset.iter().enumerate() {
        assert!(
            local.insert(r.bits(), i).is_none(),
            "subset contains a duplicate element"
        );
        global.push(
            alg.index_of(r)
                .unwrap_or_else(|| panic!("subset element {r} is not in the carrier")),
        );
    }
    let relabel = |global_idx: usize, op: &str| -> usize {
        *local
            .get(&alg.element(global_idx).bits())
            .unwrap_or_else(|| panic!("{op} leaves the subset"))
    };
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    let mut fuse = vec![0usize; n * n];
    let mut under = vec![0usize; n * n];
    let mut over = vec![0usize; n * n];
    let mut tilde = vec![0usize; n];
    let mut minus = vec![0usize; n];
    for a in 0..n {
        let ga = global[a];
        tilde[a] = relabel(alg.tilde_idx(ga), "linear negation");
        minus[a] = relabel(alg.minus_idx(ga), "linear co-negation");
        for b in 0..n {
            let gb = global[b];
            meet[a * n + b] = relabel(alg.meet_idx(ga, gb), "meet");
            join[a * n + b] = relabel(alg.join_idx(ga, gb), "join");
            fuse[a * n + b] = relabel(alg.fuse_idx(ga, gb), "composition");
            under[a * n + b] = relabel(alg.under_idx(ga, gb), "left residual");
            over[a * n + b] = relabel(alg.over_idx(ga, gb), "right residual");
        }
    }
    let unit = relabel(alg.identity_index(), "unit");
    let zero = relabel(alg.zero_index(), "zero");
    let labels = subset.iter().map(|r| r.digest_hex()).collect();
    let out = FiniteInFLTables {
        size: n,
        labels,
        unit,
        arrow: under.clone(),
        meet,
        join,
        fuse,
        tilde,
        minus: Some(minus),
        zero: Some(zero),
        under: Some(under),
        over: Some(over),
    };
    out.assert_shape();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_algebra;
    use ordered_context::{samples, zero_relation};

    #[test]
    fn full_tables_roundtrip_constants() {
        let ctx = samples::chain2();
        let alg = build_algebra(&ctx, 1 << 16).unwrap();
        let t = alg.to_tables();
        assert_eq!(t.size, 6);
        assert_eq!(t.unit, alg.identity_index());
        assert_eq!(t.zero, Some(alg.zero_index()));
        assert_eq!(t.arrow, t.under.clone().unwrap());
    }

    #[test]
    fn restricted_tables_use_local_indices() {
        let ctx = samples::antichain2_swap();
        let alg = build_algebra(&ctx, 1 << 16).unwrap();
        let bottom = Rel::empty(ctx.e_universe());
        let one = ctx.leq_upset();
        let top = Rel::universal(ctx.e_universe());
        let sub = vec![bottom.clone(), one.clone(), top.clone()];
        let t = tables_for_subset(&alg, &sub);
        assert_eq!(t.size, 3);
        assert_eq!(t.unit, 1);
        assert_eq!(t.zero, Some(1));
        assert_eq!(zero_relation(&ctx), one);
        assert_eq!(t.meet_at(2, 0), 0);
        assert_eq!(t.fuse_at(0, 2), 0);
        assert_eq!(t.fuse_at(2, 2), 2);
        assert_eq!(t.tilde_at(1), 1);
        assert_eq!(t.minus_at(0), Some(2));
    }

    #[test]
    #[should_panic(expected = "leaves the subset")]
    fn unclosed_subset_is_rejected() {
        let ctx = samples::chain2();
        let alg = build_algebra(&ctx, 1 << 16).unwrap();
        let sub = vec![Rel::empty(ctx.e_universe()), ctx.leq_upset()];
        tables_for_subset(&alg, &sub);
    }
}
