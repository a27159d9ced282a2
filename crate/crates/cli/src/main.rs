//! Command-line front end: parse graph files, run the constructions and
//! decisions, and emit matrices, certificates, cospectral pairs, and search
//! catalogs.
//!
//! Exit codes: 0 on success or a positive verdict, 1 on a negative verdict
//! (not transplantable, trace mismatch, failed validation or verification),
//! 2 on usage or input errors.

#![forbid(unsafe_code)]

mod format;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cospec::canon::canonical_form;
use cospec::cospectral::{generate_cospectral_pair, CospectralError, Flavor};
use cospec::demo;
use cospec::graph::ColoredGraph;
use cospec::linegraph::{build_ec, build_vc};
use cospec::matrix::ExactMatrix;
use cospec::rational::rat;
use cospec::search::{find_transplantable_pairs, SearchConfig};
use cospec::transplant::{
    build_line_transplantation, certify, cycle_equivalence_check, decide_transplantable,
    default_cycle_depth, verify_line_certificate, CycleCheck, Refutation,
};

use format::{
    certificate_to_document, cospectral_to_document, ec_to_document, graph_to_document,
    matrix_from_strings, pair_record_to_document, parse_graph_document, parse_weights,
    vc_to_document, CertificateDocument, NamedGraph,
};

#[derive(Parser)]
#[command(
    name = "cospec",
    version,
    about = "Exact transplantability and cospectral graph toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Vc,
    Ec,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Vc => Flavor::VertexColored,
            FlavorArg::Ec => Flavor::EdgeColored,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph file against the one-edge-per-vertex-per-color encoding.
    Validate { graph: PathBuf },
    /// Build the vertex-colored or edge-colored directed line graph.
    Linegraph {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "vc")]
        flavor: FlavorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two graphs are transplantable.
    Decide { left: PathBuf, right: PathBuf },
    /// Emit (or re-verify with --check) a transplantation certificate.
    Certify {
        left: PathBuf,
        right: PathBuf,
        /// Re-verify this certificate file instead of emitting one.
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare word traces up to a bounded length.
    CycleCheck {
        left: PathBuf,
        right: PathBuf,
        /// Maximum word length (default: vertex count squared).
        #[arg(long)]
        lmax: Option<usize>,
    },
    /// Generate a certified pair of cospectral weighted digraphs.
    Cospectral {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "vc")]
        flavor: FlavorArg,
        /// `1,2,3` positionally or `s=1,w=2,z=3` by label (`s+w=...` for ec).
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate graphs and mine non-isomorphic transplantable pairs.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        no_nloops: bool,
        #[arg(long)]
        no_dloops: bool,
        /// Word length for the trace prefilter buckets.
        #[arg(long, default_value_t = 4)]
        lfilter: usize,
        #[arg(long)]
        max_pairs: Option<usize>,
        /// Time budget in seconds.
        #[arg(long)]
        time_budget: Option<u64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the catalog here (one JSON record per line).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild the bundled worked example and diff it against golden data.
    #[command(name = "demo-figure1")]
    DemoFigure1 {
        /// Also write the pair as graph files into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

const PASS: ExitCode = ExitCode::SUCCESS;
const FAIL: ExitCode = ExitCode::FAILURE;

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { graph } => run_validate(&graph),
        Command::Linegraph { graph, flavor, out } => {
            run_linegraph(&graph, flavor.into(), out.as_deref())
        }
        Command::Decide { left, right } => run_decide(&left, &right),
        Command::Certify {
            left,
            right,
            check,
            seed,
            out,
        } => match check {
            Some(cert) => run_certify_check(&cert, &left, &right),
            None => run_certify_emit(&left, &right, seed, out.as_deref()),
        },
        Command::CycleCheck { left, right, lmax } => run_cycle_check(&left, &right, lmax),
        Command::Cospectral {
            left,
            right,
            flavor,
            weights,
            seed,
            out,
        } => run_cospectral(&left, &right, flavor.into(), &weights, seed, out.as_deref()),
        Command::Search {
            n,
            k,
            no_nloops,
            no_dloops,
            lfilter,
            max_pairs,
            time_budget,
            seed,
            out,
        } => {
            let mut cfg = SearchConfig::new(n, k);
            cfg.allow_n_loops = !no_nloops;
            cfg.allow_d_loops = !no_dloops;
            cfg.l_filter = lfilter;
            cfg.max_pairs = max_pairs;
            cfg.time_budget = time_budget.map(Duration::from_secs);
            cfg.seed = seed;
            run_search(&cfg, out.as_deref())
        }
        Command::DemoFigure1 { out_dir } => run_demo(out_dir.as_deref()),
    }
}

fn load_graph(path: &Path) -> Result<NamedGraph> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph_document(&bytes).with_context(|| format!("in {}", path.display()))
}

fn load_pair(left: &Path, right: &Path) -> Result<(NamedGraph, NamedGraph)> {
    Ok((load_graph(left)?, load_graph(right)?))
}

fn emit_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => {
            fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => println!("{json}"),
    }
    Ok(())
}

fn run_validate(path: &Path) -> Result<ExitCode> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let parts = format::parse_graph_parts(&bytes)?;
    let report = ColoredGraph::validate_edges(parts.n, parts.colors.len(), &parts.edges);
    if report.is_ok() {
        println!("ok");
        Ok(PASS)
    } else {
        println!("{report}");
        Ok(FAIL)
    }
}

fn run_linegraph(path: &Path, flavor: Flavor, out: Option<&Path>) -> Result<ExitCode> {
    let named = load_graph(path)?;
    let doc = match flavor {
        Flavor::VertexColored => vc_to_document(&build_vc(&named.graph), &named),
        Flavor::EdgeColored => ec_to_document(&build_ec(&named.graph), &named),
    };
    emit_json(&doc, out)?;
    Ok(PASS)
}

fn describe_refutation(refutation: &Refutation, colors: &[String]) -> String {
    match refutation {
        Refutation::TraceMismatch { word, left, right } => {
            let labels: Vec<&str> = word.iter().map(|&c| colors[c].as_str()).collect();
            format!(
                "trace mismatch on word ({}): {left} vs {right}",
                labels.join(",")
            )
        }
        Refutation::DimensionGap { dims } => format!(
            "intertwiner dimension gap {} (dims {}, {}, {})",
            dims.gap(),
            dims.left,
            dims.right,
            dims.cross
        ),
    }
}

fn run_decide(left: &Path, right: &Path) -> Result<ExitCode> {
    let (lg, rg) = load_pair(left, right)?;
    let cert = decide_transplantable(&lg.graph, &rg.graph)?;
    if cert.is_transplantable() {
        let dims = cert.dims.expect("positive verdicts carry dimensions");
        println!(
            "transplantable (dims {}, {}, {}; blocks {:?})",
            dims.left, dims.right, dims.cross, cert.block_sizes
        );
        Ok(PASS)
    } else {
        let reason = cert
            .refutation
            .as_ref()
            .expect("negative verdicts carry a refutation");
        println!(
            "not transplantable: {}",
            describe_refutation(reason, &lg.colors)
        );
        Ok(FAIL)
    }
}

fn run_certify_emit(left: &Path, right: &Path, seed: u64, out: Option<&Path>) -> Result<ExitCode> {
    let (lg, rg) = load_pair(left, right)?;
    let cert = certify(&lg.graph, &rg.graph, seed)?;
    let ok = cert.is_transplantable();
    let doc = certificate_to_document(&cert, &lg, &rg, seed);
    emit_json(&doc, out)?;
    Ok(if ok { PASS } else { FAIL })
}

fn run_certify_check(cert_path: &Path, left: &Path, right: &Path) -> Result<ExitCode> {
    let bytes = fs::read(cert_path).with_context(|| format!("reading {}", cert_path.display()))?;
    let doc: CertificateDocument =
        serde_json::from_slice(&bytes).context("malformed certificate document")?;
    let (lg, rg) = load_pair(left, right)?;

    let mut failures: Vec<String> = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    check(
        canonical_form(&lg.graph).to_string() == doc.left_key,
        "left canonical key",
    );
    check(
        canonical_form(&rg.graph).to_string() == doc.right_key,
        "right canonical key",
    );

    let fresh = decide_transplantable(&lg.graph, &rg.graph)?;
    let claimed_positive = doc.verdict == "transplantable";
    check(fresh.is_transplantable() == claimed_positive, "verdict");
    check(fresh.block_sizes == doc.block_sizes, "block sizes");

    if claimed_positive {
        match (&doc.transplantation, &doc.line_transplantation) {
            (Some(t_rows), Some(tl_rows)) => {
                let t = matrix_from_strings(t_rows)?;
                match build_line_transplantation(&t, &lg.graph, &rg.graph) {
                    Ok(t_line) => {
                        check(t.determinant()? != rat(0), "witness invertibility");
                        check(
                            t_line == matrix_from_strings(tl_rows)?,
                            "line transplantation",
                        );
                        check(
                            verify_line_certificate(&t_line, &lg.graph, &rg.graph)?,
                            "line certificate",
                        );
                    }
                    Err(err) => check(false, &format!("witness intertwining ({err})")),
                }
            }
            _ => check(false, "matrices present"),
        }
    }

    if failures.is_empty() {
        println!("certificate verified");
        Ok(PASS)
    } else {
        println!("certificate verification failed: {}", failures.join(", "));
        Ok(FAIL)
    }
}

fn run_cycle_check(left: &Path, right: &Path, lmax: Option<usize>) -> Result<ExitCode> {
    let (lg, rg) = load_pair(left, right)?;
    let depth = lmax.unwrap_or_else(|| default_cycle_depth(&lg.graph));
    match cycle_equivalence_check(&lg.graph, &rg.graph, depth)? {
        CycleCheck::Equal => {
            println!("equal up to length {depth}");
            Ok(PASS)
        }
        CycleCheck::Mismatch { word, left, right } => {
            let labels: Vec<&str> = word.iter().map(|&c| lg.colors[c].as_str()).collect();
            println!("mismatch on word ({}): {left} vs {right}", labels.join(","));
            Ok(FAIL)
        }
    }
}

fn run_cospectral(
    left: &Path,
    right: &Path,
    flavor: Flavor,
    weights: &str,
    seed: u64,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let (lg, rg) = load_pair(left, right)?;
    let labels: Vec<String> = match flavor {
        Flavor::VertexColored => lg.colors.clone(),
        Flavor::EdgeColored => {
            let k = lg.graph.color_count();
            (0..k)
                .flat_map(|c| (c + 1..k).map(move |d| (c, d)))
                .map(|(c, d)| lg.pair_label(c, d))
                .collect()
        }
    };
    let weights = parse_weights(weights, &labels)?;
    match generate_cospectral_pair(&lg.graph, &rg.graph, &weights, flavor, seed) {
        Ok(pair) => {
            let doc = cospectral_to_document(&pair);
            emit_json(&doc, out)?;
            Ok(PASS)
        }
        Err(CospectralError::NotTransplantable) => {
            println!("not transplantable: no cospectral certificate exists for this pair");
            Ok(FAIL)
        }
        Err(err) => Err(anyhow!(err)),
    }
}

fn run_search(cfg: &SearchConfig, out: Option<&Path>) -> Result<ExitCode> {
    let records = find_transplantable_pairs(cfg);
    let mut lines = String::new();
    for rec in &records {
        let doc = pair_record_to_document(rec, cfg.seed);
        lines.push_str(&serde_json::to_string(&doc)?);
        lines.push('\n');
    }
    match out {
        Some(path) => {
            fs::write(path, &lines).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {} records to {}", records.len(), path.display());
        }
        None => print!("{lines}"),
    }
    eprintln!(
        "search: {} non-isomorphic transplantable pairs",
        records.len()
    );
    Ok(PASS)
}

fn run_demo(out_dir: Option<&Path>) -> Result<ExitCode> {
    let left = demo::left_graph();
    let right = demo::right_graph();
    let t = demo::transplantation_matrix();
    let names: Vec<String> = demo::COLOR_NAMES.iter().map(|s| s.to_string()).collect();
    let mut all_ok = true;
    let mut check = |ok: bool, what: &str| {
        println!("{} {what}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };

    println!("left graph adjacency matrices (colors s, w, z):");
    for (c, golden) in demo::adjacency_golden().into_iter().enumerate() {
        let built = left.adjacency(c);
        println!("{built}");
        check(
            built == golden,
            &format!("adjacency matrix for color {}", names[c]),
        );
    }

    check(t.determinant()? == rat(-9), "det(T) = -9");
    check(
        t.mul(&t.transpose()) == ExactMatrix::identity(4).scale(&rat(3)),
        "T T^t = 3 I",
    );
    check(
        left.conjugate(&t)? == right,
        "conjugating by T yields the mate graph",
    );

    let vc = build_vc(&left);
    println!("vertex-colored line graph matrices:");
    for m in &vc.adjacency {
        println!("{m}");
    }
    check(
        vc.adjacency == demo::vc_golden(),
        "vertex-colored line graph matrices",
    );

    let ec = build_ec(&left);
    println!("edge-colored line graph matrices (pairs s+w, s+z, w+z):");
    for m in &ec.adjacency {
        println!("{m}");
    }
    check(
        ec.adjacency == demo::ec_golden(),
        "edge-colored line graph matrices",
    );

    let t_line = build_line_transplantation(&t, &left, &right)?;
    println!("line transplantation matrix:");
    println!("{t_line}");
    check(
        t_line == demo::line_transplantation_golden(),
        "line transplantation matrix",
    );
    check(
        verify_line_certificate(&t_line, &left, &right)?,
        "line transplantation intertwines vc and ec families",
    );

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)?;
        for (name, graph) in [("left", &left), ("right", &right)] {
            let path = dir.join(format!("{name}.graph"));
            let doc = graph_to_document(graph, &names);
            fs::write(&path, serde_json::to_string_pretty(&doc)?)?;
            println!("wrote {}", path.display());
        }
    }

    if all_ok {
        println!("all golden data reproduced");
        Ok(PASS)
    } else {
        bail!("golden data mismatch (this build is broken)");
    }
}
