//! JSON descriptions and DOT drawings of a built algebra.

use std::collections::BTreeMap;
use std::fmt::Write;

use ordered_context::{ContextSpec, ESpec, RepContext};
use serde::Serialize;

use crate::DInFLAlgebra;

/// Serializable snapshot of an algebra: the context it was built from, every
/// element as its pair set, the constants, and full operation tables.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraDescription {
    pub context: ContextSpec,
    pub size: usize,
    pub identity: usize,
    pub zero: usize,
    pub cyclic: bool,
    pub elements: Vec<ElementDescription>,
    pub tables: TableDescription,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementDescription {
    pub index: usize,
    pub digest: String,
    pub pairs: Vec<(String, String)>,
}

/// Binary tables as row-major nested arrays, unary tables flat.
#[derive(Debug, Clone, Serialize)]
pub struct TableDescription {
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub fuse: Vec<Vec<usize>>,
    pub arrow: Vec<Vec<usize>>,
    pub tilde: Vec<usize>,
    pub minus: Vec<usize>,
}

/// The JSON-facing form of a validated context.
pub fn context_spec(ctx: &RepContext) -> ContextSpec {
    let carrier = ctx.carrier();
    let label = |i: usize| carrier.label(i).to_string();
    let pairs = |r: &relcore::Rel| -> Vec<(String, String)> {
        r.member_pairs().map(|(x, y)| (label(x), label(y))).collect()
    };
    let n = carrier.size();
    let e = if ctx.e().cardinality() as usize == n * n {
        ESpec::Keyword("full".to_string())
    } else {
        ESpec::Pairs(pairs(ctx.e()))
    };
    let alpha: BTreeMap<String, String> = ctx
        .alpha()
        .iter()
        .enumerate()
        .map(|(x, &im)| (label(x), label(im)))
        .collect();
    ContextSpec {
        elements: carrier.labels().to_vec(),
        leq: pairs(ctx.poset().leq()),
        e,
        alpha: Some(alpha),
    }
}

pub fn describe_algebra(alg: &DInFLAlgebra) -> AlgebraDescription {
    let ctx = alg.context();
    let carrier = ctx.carrier();
    let n = alg.len();
    let elements = alg
        .elements()
        .iter()
        .enumerate()
        .map(|(index, r)| ElementDescription {
            index,
            digest: r.digest_hex(),
            pairs: r
                .member_pairs()
                .map(|(x, y)| (carrier.label(x).to_string(), carrier.label(y).to_string()))
                .collect(),
        })
        .collect();
    let mut tables = TableDescription {
        meet: Vec::with_capacity(n),
        join: Vec::with_capacity(n),
        fuse: Vec::with_capacity(n),
        arrow: Vec::with_capacity(n),
        tilde: Vec::with_capacity(n),
        minus: Vec::with_capacity(n),
    };
    for a in 0..n {
        tables.tilde.push(alg.tilde_idx(a));
        tables.minus.push(alg.minus_idx(a));
        let mut meet = Vec::with_capacity(n);
        let mut join = Vec::with_capacity(n);
        let mut fuse = Vec::with_capacity(n);
        let mut arrow = Vec::with_capacity(n);
        for b in 0..n {
            meet.push(alg.meet_idx(a, b));
            join.push(alg.join_idx(a, b));
            fuse.push(alg.fuse_idx(a, b));
            arrow.push(alg.arrow_idx(a, b));
        }
        tables.meet.push(meet);
        tables.join.push(join);
        tables.fuse.push(fuse);
        tables.arrow.push(arrow);
    }
    AlgebraDescription {
        context: context_spec(ctx),
        size: n,
        identity: alg.identity_index(),
        zero: alg.zero_index(),
        cyclic: crate::is_cyclic(alg).0,
        elements,
        tables,
    }
}

/// The lattice order of the algebra as a Hasse diagram in DOT format.
/// Nodes carry index and digest; the unit and zero are marked.
pub fn hasse_dot(alg: &DInFLAlgebra) -> String {
    let n = alg.len();
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        'pair: for b in 0..n {
            if a == b || !alg.le_idx(a, b) {
                continue;
            }
            for c in 0..n {
                if c != a && c != b && alg.le_idx(a, c) && alg.le_idx(c, b) {
                    continue 'pair;
                }
            }
            covers.push((a, b));
        }
    }
    let mut out = String::new();
    out.push_str("digraph hasse {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    for a in 0..n {
        let mut annot = String::new();
        if a == alg.identity_index() {
            annot.push_str("\\n1");
        }
        if a == alg.zero_index() {
            annot.push_str("\\n0");
        }
        let _ = writeln!(
            out,
            "  u{a} [label=\"{a}: {digest}{annot}\"];",
            digest = alg.element(a).digest_hex()
        );
    }
    for (a, b) in covers {
        let _ = writeln!(out, "  u{a} -> u{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_algebra;
    use ordered_context::{load_context, samples};

    #[test]
    fn description_roundtrips_through_load() {
        let ctx = samples::antichain2_swap();
        let alg = build_algebra(&ctx, 1 << 16).unwrap();
        let desc = describe_algebra(&alg);
        assert_eq!(desc.size, 16);
        assert!(!desc.cyclic);
        let reloaded = load_context(&desc.context).unwrap();
        assert_eq!(reloaded.e(), ctx.e());
        assert_eq!(reloaded.alpha(), ctx.alpha());
        assert_eq!(reloaded.poset().leq(), ctx.poset().leq());
    }

    #[test]
    fn description_serializes_to_json() {
        let alg = build_algebra(&samples::singleton(), 1 << 16).unwrap();
        let desc = describe_algebra(&alg);
        let json = serde_json::to_value(&desc).unwrap();
        assert_eq!(json["size"], 2);
        assert_eq!(json["tables"]["meet"][1][0], 0);
        assert_eq!(json["context"]["E"], "full");
    }

    #[test]
    fn hasse_of_chain2_algebra_has_six_nodes() {
        let alg = build_algebra(&samples::chain2(), 1 << 16).unwrap();
        let dot = hasse_dot(&alg);
        assert_eq!(dot.matches("label=").count(), 6);
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("\\n1"));
        assert!(dot.contains("\\n0"));
        let edges = dot.matches(" -> ").count();
        assert!(edges >= 5);
    }
}
