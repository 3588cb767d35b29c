//! Terminal front end for the workspace: contexts in; algebras, chains,
//! verification reports, and DOT drawings out.
//!
//! Exit codes: 0 all checks passed and output was produced, 1 a verification
//! found a counterexample, 2 invalid input, 3 a resource cap was exceeded.
//! Identical invocations with identical seeds produce byte-identical output.

mod parse;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dinfl_engine::{
    build_algebra, context_spec, describe_algebra, find_embedding, generate_subalgebra, hasse_dot,
    is_cyclic, product_context, tables_for_subset, verify_homomorphism, verify_infl_axioms,
    verify_product_iso, DInFLAlgebra, Homomorphism,
};
use ordered_context::{
    load_context, samples, ContextSpec, RepContext, ResourceError, ValidationError,
    DEFAULT_UPSET_CAP,
};
use rational_rep::{
    member, verify_composition, verify_embedding_with, verify_structure_with, ChainKind, PointPair,
    SamplingStrategy,
};
use relcore::VerificationReport;
use sugihara_chains::{build_chain, direct_reduct_check, verify_sugihara_axioms};

const DEFAULT_EMBED_BUDGET: u64 = 1 << 22;

#[derive(Parser)]
#[command(name = "cli", about = "Weakening-relation algebras, Sugihara chains, and their rational representations")]
struct Cli {
    /// Seed shared by every randomized suite.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, visible_alias = "emit", global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build or check abstract Sugihara chains.
    Chain {
        #[command(subcommand)]
        action: ChainAction,
    },
    /// Validate context descriptions.
    Ctx {
        #[command(subcommand)]
        action: CtxAction,
    },
    /// Build and check weakening-relation algebras.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Close a generating set inside a context's algebra.
    Subalg {
        file: PathBuf,
        /// Element indices or digests, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_UPSET_CAP)]
        cap: usize,
    },
    /// Search for chain embeddings into finite algebras.
    Embed {
        #[command(subcommand)]
        action: EmbedAction,
    },
    /// Verify or query the rational representations.
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
}

#[derive(Subcommand)]
enum ChainAction {
    /// Emit the chain's index set and operation tables.
    Gen {
        #[arg(long)]
        size: i64,
    },
    /// Run the full axiom suite over the chain's tables.
    Verify {
        #[arg(long)]
        size: i64,
    },
}

#[derive(Subcommand)]
enum CtxAction {
    /// Parse and validate a context file, emitting its normal form.
    Validate { file: PathBuf },
}

#[derive(Subcommand)]
enum AlgebraAction {
    /// Enumerate the algebra of weakening relations of a context.
    Build {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_UPSET_CAP)]
        cap: usize,
    },
    /// Check every axiom over the built algebra.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_UPSET_CAP)]
        cap: usize,
    },
    /// Report whether the two negations coincide, with a witness when not.
    Cyclic {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_UPSET_CAP)]
        cap: usize,
    },
    /// Build the disjoint-union context of two contexts.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_UPSET_CAP)]
        cap: usize,
        /// Also check the joint algebra against the factor product.
        #[arg(long)]
        check_iso: bool,
    },
}

#[derive(Subcommand)]
enum EmbedAction {
    /// Search for an injective homomorphism of a chain into a context algebra.
    Find {
        #[arg(long)]
        chain: i64,
        #[arg(long)]
        ctx: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EMBED_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_UPSET_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum RepAction {
    /// The signed family over rational tuples with a sign bit.
    Odd {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// The unsigned family over rational tuples.
    Even {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Decide membership of one pair in one relation.
    Member {
        /// Relation spec: OddR:i, EvenT:i, or DeltaLift:i.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Point pair, e.g. "(0,1/2)+ , (1,0)-".
        #[arg(long)]
        pair: String,
    },
}

#[derive(Subcommand)]
enum VerifyAction {
    /// Run the sampled verification suites.
    Verify {
        /// Tuple dimension; 0 routes to the finite two-point context.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Pair sampling mix: mixture, independent, identical, shared-prefix:K.
        #[arg(long, default_value = "mixture")]
        mix: String,
    },
}

enum Failure {
    Invalid(String),
    Resource(String),
}

struct Outcome {
    output: String,
    ok: bool,
}

fn ok(output: String) -> Result<Outcome, Failure> {
    Ok(Outcome { output, ok: true })
}

fn invalid(e: ValidationError) -> Failure {
    Failure::Invalid(e.to_string())
}

fn resource(e: ResourceError) -> Failure {
    Failure::Resource(e.to_string())
}

fn dot_unsupported() -> Failure {
    Failure::Invalid("dot output is only available for algebra build".to_string())
}

fn json_out<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(cli.out.as_deref(), &outcome.output) {
                eprintln!("cannot write output: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid input: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("resource cap exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Chain { action } => match action {
            ChainAction::Gen { size } => chain_gen(*size, format),
            ChainAction::Verify { size } => chain_verify(*size, format),
        },
        Command::Ctx { action } => match action {
            CtxAction::Validate { file } => ctx_validate(file, format),
        },
        Command::Algebra { action } => match action {
            AlgebraAction::Build { file, cap } => algebra_build(file, *cap, format),
            AlgebraAction::Verify { file, cap } => algebra_verify(file, *cap, format),
            AlgebraAction::Cyclic { file, cap } => algebra_cyclic(file, *cap, format),
            AlgebraAction::Product { a, b, cap, check_iso } => {
                algebra_product(a, b, *cap, *check_iso, format)
            }
        },
        Command::Subalg { file, generators, cap } => subalg(file, generators, *cap, format),
        Command::Embed { action } => match action {
            EmbedAction::Find { chain, ctx, budget, cap } => {
                embed_find(*chain, ctx, *budget, *cap, format)
            }
        },
        Command::Rep { action } => match action {
            RepAction::Odd { action: VerifyAction::Verify { n, trials, mix } } => {
                rep_verify(ChainKind::Odd, *n, *trials, mix, cli.seed, format)
            }
            RepAction::Even { action: VerifyAction::Verify { n, trials, mix } } => {
                rep_verify(ChainKind::Even, *n, *trials, mix, cli.seed, format)
            }
            RepAction::Member { family, n, pair } => rep_member(family, *n, pair, format),
        },
    }
}

fn read_context(path: &Path) -> Result<RepContext, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let spec: ContextSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    load_context(&spec).map_err(invalid)
}

fn built(ctx: &RepContext, cap: usize) -> Result<DInFLAlgebra, Failure> {
    build_algebra(ctx, cap).map_err(resource)
}

fn report_outcome(reports: Vec<VerificationReport>, format: Format) -> Result<Outcome, Failure> {
    let all_passed = reports.iter().all(VerificationReport::passed);
    let output = match format {
        Format::Json => {
            if reports.len() == 1 {
                json_out(&reports[0])
            } else {
                json_out(&reports)
            }
        }
        Format::Text => {
            let texts: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
            texts.join("\n")
        }
        Format::Dot => return Err(dot_unsupported()),
    };
    Ok(Outcome { output, ok: all_passed })
}

fn chain_gen(size: i64, format: Format) -> Result<Outcome, Failure> {
    let chain = build_chain(size).map_err(invalid)?;
    match format {
        Format::Json => ok(json_out(&render::chain_json(&chain))),
        Format::Text => ok(render::chain_text(&chain)),
        Format::Dot => Err(dot_unsupported()),
    }
}

fn chain_verify(size: i64, format: Format) -> Result<Outcome, Failure> {
    let chain = build_chain(size).map_err(invalid)?;
    report_outcome(vec![verify_sugihara_axioms(&chain)], format)
}

fn ctx_validate(file: &Path, format: Format) -> Result<Outcome, Failure> {
    let ctx = read_context(file)?;
    match format {
        Format::Json => ok(json_out(&context_spec(&ctx))),
        Format::Text => ok(format!(
            "context valid: {} elements, E has {} pairs, alpha {}\n",
            ctx.carrier().size(),
            ctx.e().cardinality(),
            if ctx.alpha_is_identity() { "identity" } else { "nontrivial" },
        )),
        Format::Dot => Err(dot_unsupported()),
    }
}

fn algebra_build(file: &Path, cap: usize, format: Format) -> Result<Outcome, Failure> {
    let ctx = read_context(file)?;
    let alg = built(&ctx, cap)?;
    match format {
        Format::Json => ok(json_out(&describe_algebra(&alg))),
        Format::Text => ok(render::algebra_text(&alg)),
        Format::Dot => ok(hasse_dot(&alg)),
    }
}

fn algebra_verify(file: &Path, cap: usize, format: Format) -> Result<Outcome, Failure> {
    let alg = built(&read_context(file)?, cap)?;
    report_outcome(vec![verify_infl_axioms(&alg), direct_reduct_check(&alg)], format)
}

#[derive(Serialize)]
struct ElementRef {
    index: usize,
    digest: String,
}

#[derive(Serialize)]
struct CyclicJson {
    cyclic: bool,
    alpha_is_identity: bool,
    consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<ElementRef>,
}

fn algebra_cyclic(file: &Path, cap: usize, format: Format) -> Result<Outcome, Failure> {
    let alg = built(&read_context(file)?, cap)?;
    let (cyclic, witness) = is_cyclic(&alg);
    let alpha_is_identity = alg.context().alpha_is_identity();
    let consistent = cyclic == alpha_is_identity;
    let witness = witness.map(|i| ElementRef {
        index: i,
        digest: alg.element(i).digest_hex(),
    });
    let output = match format {
        Format::Json => json_out(&CyclicJson { cyclic, alpha_is_identity, consistent, witness }),
        Format::Text => {
            let mut s = String::new();
            s.push_str(if cyclic { "cyclic\n" } else { "non-cyclic\n" });
            if let Some(w) = &witness {
                s.push_str(&format!("witness: element {} (digest {}), ~r != -r\n", w.index, w.digest));
            }
            s.push_str(&format!(
                "alpha {}; matches the cyclicity criterion: {}\n",
                if alpha_is_identity { "identity" } else { "nontrivial" },
                if consistent { "yes" } else { "NO" },
            ));
            s
        }
        Format::Dot => return Err(dot_unsupported()),
    };
    Ok(Outcome { output, ok: consistent })
}

#[derive(Serialize)]
struct ProductJson {
    joint: ContextSpec,
    joint_size: usize,
    factor_sizes: Vec<usize>,
}

fn algebra_product(
    a: &Path,
    b: &Path,
    cap: usize,
    check_iso: bool,
    format: Format,
) -> Result<Outcome, Failure> {
    let ctx_a = read_context(a)?;
    let ctx_b = read_context(b)?;
    let joint_ctx = product_context(&[ctx_a.clone(), ctx_b.clone()]).map_err(invalid)?;
    let joint = built(&joint_ctx, cap)?;
    if check_iso {
        let factors = vec![built(&ctx_a, cap)?, built(&ctx_b, cap)?];
        return report_outcome(vec![verify_product_iso(&joint, &factors)], format);
    }
    match format {
        Format::Json => ok(json_out(&ProductJson {
            joint: context_spec(&joint_ctx),
            joint_size: joint.len(),
            factor_sizes: vec![built(&ctx_a, cap)?.len(), built(&ctx_b, cap)?.len()],
        })),
        Format::Text => ok(format!(
            "joint context on {} elements; algebra size {}\n",
            joint_ctx.carrier().size(),
            joint.len(),
        )),
        Format::Dot => Err(dot_unsupported()),
    }
}

#[derive(Serialize)]
struct SubalgJson {
    generators: Vec<String>,
    size: usize,
    elements: Vec<String>,
    tables: render::TablesJson,
}

fn subalg(file: &Path, generators: &[String], cap: usize, format: Format) -> Result<Outcome, Failure> {
    let ctx = read_context(file)?;
    let alg = built(&ctx, cap)?;
    let mut gens = Vec::new();
    for g in generators {
        let rel = if let Ok(i) = g.parse::<usize>() {
            if i >= alg.len() {
                return Err(Failure::Invalid(format!(
                    "generator index {i} out of range for an algebra of size {}",
                    alg.len()
                )));
            }
            alg.element(i).clone()
        } else if let Some(r) = alg.elements().iter().find(|r| r.digest_hex() == *g) {
            r.clone()
        } else {
            return Err(Failure::Invalid(format!(
                "generator {g:?} is neither an element index nor a digest"
            )));
        };
        gens.push(rel);
    }
    let sub = generate_subalgebra(&ctx, &gens, cap).map_err(resource)?;
    let tables = tables_for_subset(&alg, &sub);
    match format {
        Format::Json => ok(json_out(&SubalgJson {
            generators: generators.to_vec(),
            size: sub.len(),
            elements: sub.iter().map(|r| r.digest_hex()).collect(),
            tables: render::tables_json(&tables),
        })),
        Format::Text => {
            let mut s = format!("subalgebra of size {} from {} generators\n", sub.len(), gens.len());
            s.push_str(&render::cayley_text(&tables));
            ok(s)
        }
        Format::Dot => Err(dot_unsupported()),
    }
}

#[derive(Serialize)]
struct MapEntry {
    source: String,
    target_index: usize,
    target_digest: String,
}

#[derive(Serialize)]
struct EmbedJson {
    found: bool,
    chain: usize,
    algebra: usize,
    map: Vec<MapEntry>,
}

fn embedding_outcome(
    chain_tables: &dinfl_engine::FiniteInFLTables,
    alg: &DInFLAlgebra,
    h: Option<&Homomorphism>,
    format: Format,
) -> Result<Outcome, Failure> {
    let map = h.map_or_else(Vec::new, |h| {
        h.map
            .iter()
            .enumerate()
            .map(|(s, &t)| MapEntry {
                source: chain_tables.labels[s].clone(),
                target_index: t,
                target_digest: alg.element(t).digest_hex(),
            })
            .collect()
    });
    let found = h.is_some();
    let output = match format {
        Format::Json => json_out(&EmbedJson {
            found,
            chain: chain_tables.size,
            algebra: alg.len(),
            map,
        }),
        Format::Text => {
            if found {
                let mut s = String::from("embedding found:\n");
                for e in &map {
                    s.push_str(&format!(
                        "  {} -> {} (digest {})\n",
                        e.source, e.target_index, e.target_digest
                    ));
                }
                s
            } else {
                "no embedding\n".to_string()
            }
        }
        Format::Dot => return Err(dot_unsupported()),
    };
    Ok(Outcome { output, ok: found })
}

fn embed_find(
    chain_size: i64,
    ctx_file: &Path,
    budget: u64,
    cap: usize,
    format: Format,
) -> Result<Outcome, Failure> {
    let chain = build_chain(chain_size).map_err(invalid)?;
    let ctx = read_context(ctx_file)?;
    let alg = built(&ctx, cap)?;
    let tables = chain.to_tables();
    let h = find_embedding(&tables, &alg, budget).map_err(resource)?;
    embedding_outcome(&tables, &alg, h.as_ref(), format)
}

fn rep_verify(
    kind: ChainKind,
    n: usize,
    trials: u64,
    mix: &str,
    seed: u64,
    format: Format,
) -> Result<Outcome, Failure> {
    let strategy = parse::sampling_mix(mix).map_err(Failure::Invalid)?;
    if n == 0 {
        return finite_chain_route(kind, format);
    }
    if let SamplingStrategy::SharedPrefix(k) = strategy {
        if !(1..=n).contains(&k) {
            return Err(Failure::Invalid(format!(
                "shared-prefix length {k} out of 1..={n}"
            )));
        }
    }
    let reports = match kind {
        ChainKind::Odd => vec![
            verify_composition(n, trials, seed),
            verify_structure_with(n, trials, seed, strategy),
            verify_embedding_with(ChainKind::Odd, n, trials, seed, strategy),
        ],
        ChainKind::Even => vec![verify_embedding_with(ChainKind::Even, n, trials, seed, strategy)],
    };
    report_outcome(reports, format)
}

/// Dimension 0 has no tuple space; the smallest chains live in finite
/// contexts instead, so the request becomes an embedding check there.
fn finite_chain_route(kind: ChainKind, format: Format) -> Result<Outcome, Failure> {
    let (size, ctx) = match kind {
        ChainKind::Odd => (3, samples::antichain2_swap()),
        ChainKind::Even => (2, samples::singleton()),
    };
    let chain = build_chain(size).expect("fixed small size");
    let alg = built(&ctx, DEFAULT_UPSET_CAP)?;
    let tables = chain.to_tables();
    match find_embedding(&tables, &alg, DEFAULT_EMBED_BUDGET).map_err(resource)? {
        Some(h) => report_outcome(vec![verify_homomorphism(&tables, &alg, &h)], format),
        None => embedding_outcome(&tables, &alg, None, format),
    }
}

#[derive(Serialize)]
struct MemberJson {
    family: String,
    n: usize,
    pair: String,
    member: bool,
}

fn rep_member(family: &str, n: usize, pair: &str, format: Format) -> Result<Outcome, Failure> {
    if n == 0 {
        return Err(Failure::Invalid("membership queries need --n at least 1".to_string()));
    }
    let rel = parse::family_spec(family, n).map_err(Failure::Invalid)?;
    let pair = parse::point_pair(pair, rel.is_signed()).map_err(Failure::Invalid)?;
    let (da, db) = match &pair {
        PointPair::Signed(x, y) => (x.tuple.dim(), y.tuple.dim()),
        PointPair::Plain(p, q) => (p.dim(), q.dim()),
    };
    if (da, db) != (n, n) {
        return Err(Failure::Invalid(format!(
            "pair dimensions {da} and {db} do not match --n {n}"
        )));
    }
    let is_member = member(&rel, &pair);
    match format {
        Format::Json => ok(json_out(&MemberJson {
            family: rel.to_string(),
            n,
            pair: pair.to_string(),
            member: is_member,
        })),
        Format::Text => ok(format!(
            "{pair} is {}a member of {rel}\n",
            if is_member { "" } else { "not " }
        )),
        Format::Dot => Err(dot_unsupported()),
    }
}
