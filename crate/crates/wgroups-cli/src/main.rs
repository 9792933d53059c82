//! Command-line interface: axiom verification, decomposition,
//! classification, group realization and oracle cross-checks for finite
//! spaces of orderings.
//!
//! Exit codes: 0 success (and "yes" for the boolean commands), 1 for a
//! negative verdict (failed axioms, not realizable, not equivalent,
//! oracle mismatch), 2 for unusable input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wgroups::axioms::AxiomReport;
use wgroups::classify::{build, classify, realizable, realize, Obstruction, Tree};
use wgroups::formats::{parse_cgp, parse_sos, parse_tree, write_cgp, write_sos};
use wgroups::group::Presentation;
use wgroups::oracle;
use wgroups::space::Space;

#[derive(Parser)]
#[command(
    name = "wgroups",
    version,
    about = "Finite spaces of orderings and their 2-groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the space-of-orderings axioms of a .sos file.
    Verify {
        file: PathBuf,
        /// Axiom-4 scan bound on |f| + |g| (2..=8; above 6 is slow).
        #[arg(long = "max-len", default_value_t = 6)]
        max_len: u32,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a space into connected components.
    Components { file: PathBuf },
    /// Basis and dimension of the translation group.
    Translation { file: PathBuf },
    /// Structure tree, rank, order and Frattini size.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the canonical .sos for a structure tree.
    Build {
        #[arg(long)]
        tree: String,
    },
    /// Produce a presentation (.cgp) for a structure tree.
    Realize {
        #[arg(long)]
        tree: String,
    },
    /// Queries against a presented group (.cgp).
    Group { file: PathBuf, query: GroupQuery },
    /// Extract the candidate space of a presentation and verify it.
    Extract {
        file: PathBuf,
        #[arg(long = "max-len", default_value_t = 6)]
        max_len: u32,
    },
    /// Necessary-condition realizability check for a presentation.
    Realizable {
        file: PathBuf,
        #[arg(long = "max-len", default_value_t = 6)]
        max_len: u32,
    },
    /// Search for an equivalence between two spaces.
    Equiv { a: PathBuf, b: PathBuf },
    /// Compare fast paths against the brute-force oracles.
    Oracle {
        #[command(subcommand)]
        target: OracleTarget,
    },
}

#[derive(Subcommand)]
enum OracleTarget {
    /// Axiom report: engine vs exhaustive scan.
    Space {
        file: PathBuf,
        /// Scan bound (2..=6).
        #[arg(long = "max-len", default_value_t = 4)]
        max_len: u32,
    },
    /// Order and Frattini size: engine vs element enumeration.
    Group { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupQuery {
    Order,
    Frattini,
    Center,
    Involutions,
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_space(path: &Path) -> Result<Space, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let parsed = parse_sos(&text).map_err(|e| {
        CliError(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.col,
            e.message
        ))
    })?;
    Ok(parsed.space)
}

fn read_presentation(path: &Path) -> Result<Presentation, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let parsed = parse_cgp(&text).map_err(|e| {
        CliError(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.col,
            e.message
        ))
    })?;
    Presentation::new(parsed.gens, parsed.relators)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn check_max_len(max_len: u32, cap: u32) -> Result<(), CliError> {
    if !(2..=cap).contains(&max_len) {
        return Err(CliError(format!("--max-len must be 2..={cap}")));
    }
    if max_len > 6 {
        eprintln!("warning: --max-len {max_len} above 6; the scan cost grows steeply");
    }
    Ok(())
}

fn witness_text(report: &AxiomReport) -> Option<String> {
    report.axiom4_witness.as_ref().map(|w| {
        format!(
            "f = <{}>, g = <{}>, x = {}",
            w.f.iter()
                .map(|v| v.bit_string())
                .collect::<Vec<_>>()
                .join(", "),
            w.g.iter()
                .map(|v| v.bit_string())
                .collect::<Vec<_>>()
                .join(", "),
            w.x.bit_string()
        )
    })
}

fn report_text(space: &Space, report: &AxiomReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "axiom1: pass (finite, {} orderings)",
        space.chars().len()
    );
    let _ = writeln!(
        out,
        "axiom2: {}",
        if report.axiom2_ok { "pass" } else { "FAIL" }
    );
    match &report.axiom3_witness {
        None => {
            let _ = writeln!(
                out,
                "axiom3: {}",
                if report.axiom3_ok { "pass" } else { "FAIL" }
            );
        }
        Some(w) => {
            let _ = writeln!(
                out,
                "axiom3: FAIL (positive everywhere: {})",
                w.bit_string()
            );
        }
    }
    if report.axiom4_ok {
        let _ = writeln!(
            out,
            "axiom4: pass (no witness up to total form length {})",
            report.max_total_form_length
        );
    } else {
        let _ = writeln!(out, "axiom4: FAIL");
        let _ = writeln!(out, "axiom4 witness: {}", witness_text(report).unwrap());
    }
    let _ = writeln!(
        out,
        "result: {} (bound {})",
        if report.all_ok() {
            "space of orderings"
        } else {
            "NOT a space of orderings"
        },
        report.max_total_form_length
    );
    out
}

fn report_json(report: &AxiomReport) -> serde_json::Value {
    json!({
        "max_len": report.max_total_form_length,
        "axiom1": report.finite,
        "axiom2": report.axiom2_ok,
        "axiom3": report.axiom3_ok,
        "axiom4": report.axiom4_ok,
        "axiom3_witness": report.axiom3_witness.as_ref().map(|w| w.bit_string()),
        "axiom4_witness": report.axiom4_witness.as_ref().map(|w| json!({
            "f": w.f.iter().map(|v| v.bit_string()).collect::<Vec<_>>(),
            "g": w.g.iter().map(|v| v.bit_string()).collect::<Vec<_>>(),
            "x": w.x.bit_string(),
        })),
        "all_ok": report.all_ok(),
    })
}

fn tree_json(tree: &Tree) -> serde_json::Value {
    match tree {
        Tree::Leaf => json!({"kind": "leaf"}),
        Tree::Ext { m, child } => json!({"kind": "ext", "m": m, "child": tree_json(child)}),
        Tree::Free { children } => json!({
            "kind": "free",
            "children": children.iter().map(tree_json).collect::<Vec<_>>(),
        }),
    }
}

fn pattern_word(v: &wgroups::f2::F2Vector) -> String {
    let gens: Vec<String> = (0..v.dim())
        .filter(|&i| v.bit(i))
        .map(|i| format!("s{}", i + 1))
        .collect();
    gens.join(" ")
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Verify {
            file,
            max_len,
            json,
        } => {
            check_max_len(max_len, 8)?;
            let space = read_space(&file)?;
            let report = space.verify_axioms(max_len)?;
            if json {
                let mut value = report_json(&report);
                value["tool_version"] = json!(env!("CARGO_PKG_VERSION"));
                value["input"] = json!(file.display().to_string());
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                print!("{}", report_text(&space, &report));
            }
            Ok(if report.all_ok() { 0 } else { 1 })
        }
        Cmd::Components { file } => {
            let space = read_space(&file)?;
            let components = space.components()?;
            println!("components: {}", components.len());
            for (i, c) in components.iter().enumerate() {
                println!("component {}:", i + 1);
                print!("{}", write_sos(c, None));
            }
            Ok(0)
        }
        Cmd::Translation { file } => {
            let space = read_space(&file)?;
            let t = space.translation_group();
            println!("dim: {}", t.dim());
            for b in t.basis() {
                println!("alpha: {}", b.sign_string());
            }
            Ok(0)
        }
        Cmd::Classify { file, json } => {
            let space = read_space(&file)?;
            let tree = classify(&space)?;
            if json {
                let value = json!({
                    "tool_version": env!("CARGO_PKG_VERSION"),
                    "input": file.display().to_string(),
                    "tree": tree_json(&tree),
                    "tree_text": tree.encode(),
                    "rank": tree.rank(),
                    "orderings": tree.ordering_count(),
                    "log2_order": tree.order_log2(),
                    "log2_frattini": tree.frattini_log2(),
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("tree: {}", tree.encode());
                println!("rank: {}", tree.rank());
                println!("orderings: {}", tree.ordering_count());
                println!("log2_order: {}", tree.order_log2());
                println!("log2_frattini: {}", tree.frattini_log2());
            }
            Ok(0)
        }
        Cmd::Build { tree } => {
            let t = parse_tree(&tree)?;
            let space = build(&t)?;
            print!("{}", write_sos(&space, None));
            Ok(0)
        }
        Cmd::Realize { tree } => {
            let t = parse_tree(&tree)?;
            let p = realize(&t)?;
            print!("{}", write_cgp(p.generator_count(), p.relators()));
            Ok(0)
        }
        Cmd::Group { file, query } => {
            let p = read_presentation(&file)?;
            match query {
                GroupQuery::Order => {
                    println!("log2_order: {}", p.quotient_log2_order());
                }
                GroupQuery::Frattini => {
                    let f = p.frattini();
                    println!("log2_frattini: {}", f.log2_order);
                    println!("log2_commutator_image: {}", f.log2_commutator_image);
                    println!("generators_involutive: {}", f.generators_involutive);
                    if let Some(eq) = f.frattini_equals_commutators {
                        println!("frattini_equals_commutators: {eq}");
                    }
                }
                GroupQuery::Center => {
                    let c = p.center_of_even_subgroup()?;
                    println!("log2_even_subgroup: {}", c.log2_even_subgroup);
                    println!("log2_center: {}", c.log2_center);
                    println!("independent_order4: {}", c.independent_order4);
                    for pat in &c.order4_class_patterns {
                        println!("order4_class: {}", pattern_word(pat));
                    }
                }
                GroupQuery::Involutions => {
                    let classes = p.involution_classes();
                    println!("count: {}", classes.len());
                    for pat in &classes {
                        println!("class: {}", pattern_word(pat));
                    }
                }
            }
            Ok(0)
        }
        Cmd::Extract { file, max_len } => {
            check_max_len(max_len, 8)?;
            let p = read_presentation(&file)?;
            let candidate = p.extract_candidate_space()?;
            print!("{}", write_sos(&candidate, None));
            let report = candidate.verify_axioms(max_len)?;
            if report.all_ok() {
                println!("verify: pass (bound {max_len})");
            } else {
                println!("verify: FAIL (bound {max_len})");
                if let Some(w) = witness_text(&report) {
                    println!("axiom4 witness: {w}");
                }
            }
            Ok(0)
        }
        Cmd::Realizable { file, max_len } => {
            check_max_len(max_len, 8)?;
            let p = read_presentation(&file)?;
            let report = realizable(&p, max_len)?;
            if report.consistent {
                println!("verdict: consistent with a space of orderings at bound {max_len}");
            } else {
                println!("verdict: not realizable");
            }
            println!("presented_log2_order: {}", report.presented_log2);
            if let Some(required) = report.required_log2 {
                println!("required_log2_order: {required}");
            }
            if let Some(tree) = &report.candidate_tree {
                println!("candidate_tree: {}", tree.encode());
            }
            for o in &report.obstructions {
                match o {
                    Obstruction::Extraction(msg) => println!("obstruction: extraction failed ({msg})"),
                    Obstruction::AxiomFailure => {
                        let axioms = report.axiom_report.as_ref().unwrap();
                        let detail = witness_text(axioms)
                            .map(|w| format!("axiom4 witness: {w}"))
                            .unwrap_or_else(|| "axiom 2 or 3 fails".to_string());
                        println!("obstruction: candidate violates the axioms; {detail}");
                    }
                    Obstruction::OrderMismatch { presented, required } => println!(
                        "obstruction: order mismatch (presented 2^{presented}, required 2^{required})"
                    ),
                    Obstruction::StructureFailure(msg) => {
                        println!("obstruction: classification failed ({msg})")
                    }
                }
            }
            Ok(if report.consistent { 0 } else { 1 })
        }
        Cmd::Equiv { a, b } => {
            let sa = read_space(&a)?;
            let sb = read_space(&b)?;
            match sa.equivalent(&sb) {
                Some(phi) => {
                    println!("equivalent");
                    for (i, col) in phi.columns().iter().enumerate() {
                        let mut e = wgroups::f2::F2Vector::zero(sa.dim());
                        e.set_bit(i, true);
                        println!("phi: {} -> {}", e.bit_string(), col.bit_string());
                    }
                    Ok(0)
                }
                None => {
                    println!("not equivalent");
                    Ok(1)
                }
            }
        }
        Cmd::Oracle { target } => match target {
            OracleTarget::Space { file, max_len } => {
                check_max_len(max_len, 6)?;
                let space = read_space(&file)?;
                let fast = space.verify_axioms(max_len)?;
                let slow = oracle::axiom4_exhaustive(&space, max_len)?;
                let agree = fast == slow;
                println!(
                    "engine: axiom2={} axiom3={} axiom4={}",
                    fast.axiom2_ok, fast.axiom3_ok, fast.axiom4_ok
                );
                println!(
                    "oracle: axiom2={} axiom3={} axiom4={}",
                    slow.axiom2_ok, slow.axiom3_ok, slow.axiom4_ok
                );
                println!("agreement: {}", if agree { "ok" } else { "MISMATCH" });
                Ok(if agree { 0 } else { 1 })
            }
            OracleTarget::Group { file } => {
                let p = read_presentation(&file)?;
                let engine_order = p.quotient_log2_order();
                let engine_frattini = p.frattini().log2_order;
                let table = oracle::enumerate_quotient(&p, 22)?;
                let oracle_order = table.len().trailing_zeros();
                let oracle_frattini = oracle::frattini_log2_by_enumeration(&p, &table)?;
                let mut agree = table.len().is_power_of_two();
                agree &= engine_order == oracle_order && engine_frattini == oracle_frattini;
                println!("log2_order: engine={engine_order} oracle={oracle_order}");
                println!("log2_frattini: engine={engine_frattini} oracle={oracle_frattini}");
                println!("agreement: {}", if agree { "ok" } else { "MISMATCH" });
                Ok(if agree { 0 } else { 1 })
            }
        },
    }
}
