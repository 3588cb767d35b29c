//! Serializable table snapshots and aligned-text Cayley tables.

use std::fmt::Write as _;

use dinfl_engine::{DInFLAlgebra, FiniteInFLTables};
use serde::Serialize;
use sugihara_chains::AbstractSugiharaChain;

/// Operation tables with binary operations as row-major nested arrays.
#[derive(Debug, Serialize)]
pub struct TablesJson {
    pub size: usize,
    pub labels: Vec<String>,
    pub unit: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub fuse: Vec<Vec<usize>>,
    pub arrow: Vec<Vec<usize>>,
    pub tilde: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minus: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub under: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub over: Option<Vec<Vec<usize>>>,
}

fn rows(flat: &[usize], size: usize) -> Vec<Vec<usize>> {
    flat.chunks(size).map(|c| c.to_vec()).collect()
}

pub fn tables_json(t: &FiniteInFLTables) -> TablesJson {
    TablesJson {
        size: t.size,
        labels: t.labels.clone(),
        unit: t.unit,
        zero: t.zero,
        meet: rows(&t.meet, t.size),
        join: rows(&t.join, t.size),
        fuse: rows(&t.fuse, t.size),
        arrow: rows(&t.arrow, t.size),
        tilde: t.tilde.clone(),
        minus: t.minus.clone(),
        under: t.under.as_deref().map(|u| rows(u, t.size)),
        over: t.over.as_deref().map(|o| rows(o, t.size)),
    }
}

#[derive(Debug, Serialize)]
pub struct ChainJson {
    pub size: usize,
    pub odd: bool,
    pub indices: Vec<i64>,
    pub tables: TablesJson,
}

pub fn chain_json(chain: &AbstractSugiharaChain) -> ChainJson {
    ChainJson {
        size: chain.size(),
        odd: chain.is_odd(),
        indices: chain.indices().to_vec(),
        tables: tables_json(&chain.tables),
    }
}

fn grid(out: &mut String, name: &str, t: &FiniteInFLTables, table: &[usize], w: usize) {
    writeln!(out, "\n{name}").unwrap();
    write!(out, "{:>w$} |", "").unwrap();
    for b in 0..t.size {
        write!(out, " {:>w$}", t.labels[b]).unwrap();
    }
    out.push('\n');
    writeln!(out, "{}-+{}", "-".repeat(w), "-".repeat((w + 1) * t.size)).unwrap();
    for a in 0..t.size {
        write!(out, "{:>w$} |", t.labels[a]).unwrap();
        for b in 0..t.size {
            write!(out, " {:>w$}", t.labels[table[a * t.size + b]]).unwrap();
        }
        out.push('\n');
    }
}

/// Every table of the structure as aligned text, columns in element
/// enumeration order.
pub fn cayley_text(t: &FiniteInFLTables) -> String {
    let w = t.labels.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    writeln!(out, "elements: {}", t.labels.join(" ")).unwrap();
    writeln!(out, "unit: {}", t.labels[t.unit]).unwrap();
    if let Some(z) = t.zero {
        writeln!(out, "zero: {}", t.labels[z]).unwrap();
    }
    let line = |name: &str, map: &[usize]| {
        let cells: Vec<&str> = map.iter().map(|&v| t.labels[v].as_str()).collect();
        format!("{name}: {}\n", cells.join(" "))
    };
    out.push_str(&line("tilde", &t.tilde));
    if let Some(m) = &t.minus {
        out.push_str(&line("minus", m));
    }
    let mut binary: Vec<(&str, &[usize])> = vec![
        ("meet", &t.meet),
        ("join", &t.join),
        ("fuse", &t.fuse),
        ("arrow", &t.arrow),
    ];
    if let Some(u) = &t.under {
        binary.push(("under", u));
    }
    if let Some(o) = &t.over {
        binary.push(("over", o));
    }
    for (name, table) in binary {
        grid(&mut out, name, t, table, w);
    }
    out
}

pub fn chain_text(chain: &AbstractSugiharaChain) -> String {
    let mut out = format!(
        "chain S_{}: {} indices {:?}, unit index {}\n",
        chain.size(),
        if chain.is_odd() { "odd" } else { "even" },
        chain.indices(),
        chain.unit_index(),
    );
    out.push_str(&cayley_text(&chain.tables));
    out
}

pub fn algebra_text(alg: &DInFLAlgebra) -> String {
    let ctx = alg.context();
    let mut out = format!(
        "algebra over {} elements: size {}, unit {}, zero {}, alpha {}\n",
        ctx.carrier().size(),
        alg.len(),
        alg.identity_index(),
        alg.zero_index(),
        if ctx.alpha_is_identity() { "identity" } else { "nontrivial" },
    );
    out.push_str(&cayley_text(&alg.to_tables()));
    out
}
