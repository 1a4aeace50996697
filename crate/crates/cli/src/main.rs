//! `twdet`: exact linear algebra and counting on matrices with
//! low-treewidth support.
//!
//! Every subcommand prints one deterministic JSON document on stdout;
//! timings and diagnostics go to stderr. Exit codes: 0 success, 1 usage,
//! 2 parse error, 3 invalid decomposition, 4 precondition failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use twdet_core::ccdp::{cycle_cover_histogram, signed_sum};
use twdet_core::counting::{count_arborescences, count_euler_tours};
use twdet_core::error::Error;
use twdet_core::gadgets::EdgeClassMap;
use twdet_core::hardness::{gen_imm_gadget, gen_ord_instance, gen_powering_instance};
use twdet_core::linalg::{
    char_poly_with, determinant_with, fsle_with, inverse_with, power_plan, power_resolvent,
    rank_with, DetConfig, Feasibility, FsleInstance,
};
use twdet_core::matrix::RationalMatrix;
use twdet_core::mm::{parse_matrix_market, parse_vector, write_matrix_market};
use twdet_core::nice::make_nice;
use twdet_core::oracle;
use twdet_core::pace::{parse_dgw, parse_gr, parse_td, write_dgw, write_td};
use twdet_core::rational::{format_rational, rat_int};
use twdet_core::treedecomp::{decompose, Strategy, TreeDecomposition};
use twdet_core::WeightedDigraph;

#[derive(Parser)]
#[command(
    name = "twdet",
    about = "Exact determinants and counting over low-treewidth supports",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixInput {
    /// Matrix Market file (coordinate; rational/integer/exact real)
    #[arg(long)]
    matrix: PathBuf,
    /// Optional PACE .td decomposition of the support graph
    #[arg(long)]
    td: Option<PathBuf>,
}

#[derive(Args)]
struct GraphInput {
    /// Weighted digraph file (`p dgw` format)
    #[arg(long)]
    graph: PathBuf,
    /// Optional PACE .td decomposition of the underlying graph
    #[arg(long)]
    td: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant through the cycle-cover engine
    Det(MatrixInput),
    /// Characteristic polynomial coefficients c_0..c_n
    Charpoly(MatrixInput),
    /// Rank (rectangular allowed) via the symmetric embedding
    Rank(MatrixInput),
    /// Exact inverse
    Inverse(MatrixInput),
    /// Matrix power A^m
    Power {
        #[command(flatten)]
        input: MatrixInput,
        /// Exponent
        #[arg(short, long)]
        m: usize,
        /// resolvent | direct | auto (resolvent when entries are
        /// nonnegative integers, else direct, labeled)
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Feasibility of A z = b
    Fsle {
        #[command(flatten)]
        input: MatrixInput,
        /// Right-hand side as an m x 1 Matrix Market file
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Number of spanning arborescences diverging from --root
    Arborescences {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        root: usize,
    },
    /// Number of directed Euler tours (rotation-normalized)
    EulerTours(GraphInput),
    /// Cycle-cover histogram by (cycle count, per-class arc counts)
    Histogram(GraphInput),
    /// Build a tree decomposition
    Decompose {
        /// Undirected PACE .gr file
        #[arg(long, conflicts_with = "graph")]
        gr: Option<PathBuf>,
        /// Weighted digraph file (symmetrized)
        #[arg(long)]
        graph: Option<PathBuf>,
        /// exact | min-fill | min-degree
        #[arg(long, default_value = "min-fill")]
        strategy: String,
    },
    /// Validate a .td against a graph
    ValidateTd {
        #[arg(long, conflicts_with = "graph")]
        gr: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        td: PathBuf,
    },
    /// Generate a rewired-path determinant instance
    GenOrd {
        #[arg(long)]
        n: usize,
        /// Place s before t (determinant vanishes) or after
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        s_first: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write PREFIX.dgw / PREFIX.td / PREFIX.json alongside the stdout JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a path-reachability powering instance
    GenPowering {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the walk gadget for iterated products
    GenImm {
        /// 0/1 input matrix; omit to use a directed n-cycle
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Cycle size when no matrix is given
        #[arg(long)]
        cycle: Option<usize>,
        #[arg(short, long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reference determinant by fraction-free elimination
    OracleDet {
        #[arg(long)]
        matrix: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are successful exits
            if e.kind() == clap::error::ErrorKind::DisplayHelp
                || e.kind() == clap::error::ErrorKind::DisplayVersion
            {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let start = Instant::now();
    match run(cli.command) {
        Ok(doc) => {
            println!("{doc}");
            eprintln!("completed in {} ms", start.elapsed().as_millis());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code_for(&e);
            // validate-td reports its violation as JSON too
            if let Error::InvalidDecomposition(v) = &e {
                println!(
                    "{}",
                    json!({"valid": false, "violation": v.to_string()})
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Io(_) => 2,
        Error::InvalidDecomposition(_) => 3,
        _ => 4,
    }
}

struct Loaded<T> {
    value: T,
    digest: String,
}

fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
    }
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn load_matrix(path: &PathBuf) -> Result<Loaded<RationalMatrix>, Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(Loaded {
        value: parse_matrix_market(&text)?,
        digest: digest(&[text.as_bytes()]),
    })
}

fn load_graph(path: &PathBuf) -> Result<Loaded<WeightedDigraph>, Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(Loaded {
        value: parse_dgw(&text)?,
        digest: digest(&[text.as_bytes()]),
    })
}

fn load_td(path: &Option<PathBuf>) -> Result<Option<TreeDecomposition>, Error> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            Ok(Some(parse_td(&text)?))
        }
        None => Ok(None),
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, Error> {
    match s {
        "exact" => Ok(Strategy::Exact),
        "min-fill" => Ok(Strategy::MinFill),
        "min-degree" => Ok(Strategy::MinDegree),
        other => Err(Error::Parse(format!("unknown strategy `{other}`"))),
    }
}

fn matrix_entries_json(m: &RationalMatrix) -> Value {
    let entries: Vec<Value> = m
        .iter()
        .map(|(i, j, v)| json!([i, j, format_rational(v)]))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

fn run(cmd: Command) -> Result<Value, Error> {
    let cfg = DetConfig::default();
    match cmd {
        Command::Det(input) => {
            let m = load_matrix(&input.matrix)?;
            let td = load_td(&input.td)?;
            let (det, route) = determinant_with(&m.value, td.as_ref(), &cfg)?;
            Ok(json!({
                "command": "det",
                "input_digest": m.digest,
                "result": format_rational(&det),
                "route": route.as_str(),
            }))
        }
        Command::OracleDet { matrix } => {
            let m = load_matrix(&matrix)?;
            let det = oracle::det_bareiss(&m.value)?;
            Ok(json!({
                "command": "oracle-det",
                "input_digest": m.digest,
                "result": format_rational(&det),
                "route": "oracle-bareiss",
            }))
        }
        Command::Charpoly(input) => {
            let m = load_matrix(&input.matrix)?;
            let td = load_td(&input.td)?;
            let chi = char_poly_with(&m.value, td.as_ref(), &cfg)?;
            let coeffs: Vec<String> = chi.coeffs.iter().map(format_rational).collect();
            Ok(json!({
                "command": "charpoly",
                "input_digest": m.digest,
                "coefficients": coeffs,
                "route": "detsup-class",
            }))
        }
        Command::Rank(input) => {
            let m = load_matrix(&input.matrix)?;
            if let Some(td) = load_td(&input.td)? {
                // the decomposition describes the bipartite support
                td.validate_or_err(&support_edges(&m.value))?;
            }
            let r = rank_with(&m.value, &cfg)?;
            Ok(json!({
                "command": "rank",
                "input_digest": m.digest,
                "result": r,
                "route": "detsup-class",
            }))
        }
        Command::Inverse(input) => {
            let m = load_matrix(&input.matrix)?;
            let td = load_td(&input.td)?;
            let inv = inverse_with(&m.value, td.as_ref(), &cfg)?;
            Ok(json!({
                "command": "inverse",
                "input_digest": m.digest,
                "result": matrix_entries_json(&inv),
                "route": "detsup-class",
            }))
        }
        Command::Power { input, m, method } => {
            let a = load_matrix(&input.matrix)?;
            let _td = load_td(&input.td)?;
            let (out, route) = match method.as_str() {
                "resolvent" => {
                    let plan = power_plan(&a.value, m)?;
                    (power_resolvent(&a.value, m, &plan)?, "pow-resolvent")
                }
                "direct" => (oracle::power_direct(&a.value, m)?, "pow-direct"),
                "auto" => match power_plan(&a.value, m) {
                    Ok(plan) => (power_resolvent(&a.value, m, &plan)?, "pow-resolvent"),
                    Err(Error::NegativeEntry(_)) | Err(Error::NonIntegerWeight(_)) => {
                        (oracle::power_direct(&a.value, m)?, "pow-direct-fallback")
                    }
                    Err(e) => return Err(e),
                },
                other => return Err(Error::Parse(format!("unknown method `{other}`"))),
            };
            Ok(json!({
                "command": "power",
                "input_digest": a.digest,
                "m": m,
                "result": matrix_entries_json(&out),
                "route": route,
            }))
        }
        Command::Fsle { input, rhs } => {
            let a = load_matrix(&input.matrix)?;
            let rhs_text = std::fs::read_to_string(&rhs)?;
            let b = parse_vector(&rhs_text)?;
            let inst = FsleInstance::new(a.value, b)?;
            let _td = load_td(&input.td)?;
            let verdict = fsle_with(&inst, &cfg)?;
            Ok(json!({
                "command": "fsle",
                "input_digest": digest(&[a.digest.as_bytes(), rhs_text.as_bytes()]),
                "feasible": verdict == Feasibility::Feasible,
                "route": "detsup-class",
            }))
        }
        Command::Arborescences { input, root } => {
            let g = load_graph(&input.graph)?;
            if let Some(td) = load_td(&input.td)? {
                td.validate_or_err(&g.value.undirected_edges())?;
            }
            let count = count_arborescences(&g.value, root)?;
            Ok(json!({
                "command": "arborescences",
                "input_digest": g.digest,
                "root": root,
                "result": count.to_string(),
            }))
        }
        Command::EulerTours(input) => {
            let g = load_graph(&input.graph)?;
            if let Some(td) = load_td(&input.td)? {
                td.validate_or_err(&g.value.undirected_edges())?;
            }
            let (_, report) = count_euler_tours(&g.value)?;
            Ok(json!({
                "command": "euler-tours",
                "input_digest": g.digest,
                "arborescences": report.arborescences,
                "degrees": report.degrees,
                "factorial_product": report.factorial_product,
                "tours": report.tours,
            }))
        }
        Command::Histogram(input) => {
            let g = load_graph(&input.graph)?;
            let td = match load_td(&input.td)? {
                Some(td) => {
                    td.validate_or_err(&g.value.undirected_edges())?;
                    td
                }
                None => decompose(
                    g.value.vertex_count(),
                    &g.value.undirected_edges(),
                    Strategy::MinFill,
                )?,
            };
            let classes = EdgeClassMap::from_weights(&g.value);
            let nice = make_nice(&td)?;
            let hist = cycle_cover_histogram(&g.value, &classes, &nice)?;
            let class_values: Vec<String> =
                classes.values().iter().map(format_rational).collect();
            let det = signed_sum(&hist, &classes)?;
            let hist_doc: Value = serde_json::from_str(&hist.to_json()).expect("own json");
            Ok(json!({
                "command": "histogram",
                "input_digest": g.digest,
                "classes": class_values,
                "histogram": hist_doc,
                "signed_sum": format_rational(&det),
            }))
        }
        Command::Decompose { gr, graph, strategy } => {
            let strat = parse_strategy(&strategy)?;
            let (n, edges, dig) = match (&gr, &graph) {
                (Some(p), None) => {
                    let text = std::fs::read_to_string(p)?;
                    let g = parse_gr(&text)?;
                    (g.n, g.edges, digest(&[text.as_bytes()]))
                }
                (None, Some(p)) => {
                    let g = load_graph(p)?;
                    (
                        g.value.vertex_count(),
                        g.value.undirected_edges(),
                        g.digest,
                    )
                }
                _ => {
                    return Err(Error::Parse(
                        "exactly one of --gr / --graph is required".into(),
                    ))
                }
            };
            let td = decompose(n, &edges, strat)?;
            Ok(json!({
                "command": "decompose",
                "input_digest": dig,
                "strategy": strategy,
                "width": td.width(),
                "td": write_td(&td),
            }))
        }
        Command::ValidateTd { gr, graph, td } => {
            let (n, edges, dig) = match (&gr, &graph) {
                (Some(p), None) => {
                    let text = std::fs::read_to_string(p)?;
                    let g = parse_gr(&text)?;
                    (g.n, g.edges, digest(&[text.as_bytes()]))
                }
                (None, Some(p)) => {
                    let g = load_graph(p)?;
                    (
                        g.value.vertex_count(),
                        g.value.undirected_edges(),
                        g.digest,
                    )
                }
                _ => {
                    return Err(Error::Parse(
                        "exactly one of --gr / --graph is required".into(),
                    ))
                }
            };
            let td_text = std::fs::read_to_string(&td)?;
            let decomp = parse_td(&td_text)?;
            if decomp.n_graph != n {
                return Err(Error::Parse(format!(
                    "decomposition is for {} vertices, graph has {n}",
                    decomp.n_graph
                )));
            }
            decomp.validate_or_err(&edges)?;
            Ok(json!({
                "command": "validate-td",
                "input_digest": digest(&[dig.as_bytes(), td_text.as_bytes()]),
                "valid": true,
                "width": decomp.width(),
            }))
        }
        Command::GenOrd { n, s_first, seed, out } => {
            let inst = gen_ord_instance(n, s_first, seed)?;
            let dgw = write_dgw(&inst.p_prime);
            let td = write_td(&inst.decomposition);
            let ground_truth = json!({
                "n": inst.n,
                "s": inst.s,
                "t": inst.t,
                "s_prime": inst.s_prime,
                "t_prime": inst.t_prime,
                "s_first": inst.s_first,
                "expected_det": format_rational(&inst.expected_determinant()),
            });
            if let Some(prefix) = &out {
                write_with_suffix(prefix, "dgw", &dgw)?;
                write_with_suffix(prefix, "td", &td)?;
                write_with_suffix(prefix, "json", &ground_truth.to_string())?;
            }
            Ok(json!({
                "command": "gen-ord",
                "input_digest": digest(&[format!("ord:{n}:{s_first}:{seed}").as_bytes()]),
                "dgw": dgw,
                "td": td,
                "ground_truth": ground_truth,
            }))
        }
        Command::GenPowering { n, seed, out } => {
            let inst = gen_powering_instance(n, seed)?;
            let mtx = write_matrix_market(&inst.a_path);
            let ground_truth = json!({
                "n": inst.n,
                "s": inst.s,
                "t": inst.t,
                "reachable": inst.reachable,
            });
            if let Some(prefix) = &out {
                write_with_suffix(prefix, "mtx", &mtx)?;
                write_with_suffix(prefix, "json", &ground_truth.to_string())?;
            }
            Ok(json!({
                "command": "gen-powering",
                "input_digest": digest(&[format!("powering:{n}:{seed}").as_bytes()]),
                "matrix": mtx,
                "ground_truth": ground_truth,
            }))
        }
        Command::GenImm { matrix, cycle, m, out } => {
            let (a, dig) = match (&matrix, cycle) {
                (Some(p), None) => {
                    let loaded = load_matrix(p)?;
                    (loaded.value, loaded.digest)
                }
                (None, Some(n)) => {
                    if n == 0 {
                        return Err(Error::InstanceTooSmall("cycle needs n >= 1".into()));
                    }
                    let mut a = RationalMatrix::zero(n, n);
                    for v in 0..n {
                        a.set(v, (v + 1) % n, rat_int(1))?;
                    }
                    (a, digest(&[format!("imm-cycle:{n}").as_bytes()]))
                }
                _ => {
                    return Err(Error::Parse(
                        "exactly one of --matrix / --cycle is required".into(),
                    ))
                }
            };
            let gadget = gen_imm_gadget(&a, m)?;
            let dgw = write_dgw(&gadget.graph);
            let mapping = json!({
                "n": gadget.n,
                "m": gadget.m,
                "entries": gadget.entries,
                "exits": gadget.exits,
            });
            if let Some(prefix) = &out {
                write_with_suffix(prefix, "dgw", &dgw)?;
                write_with_suffix(prefix, "json", &mapping.to_string())?;
            }
            Ok(json!({
                "command": "gen-imm",
                "input_digest": dig,
                "dgw": dgw,
                "mapping": mapping,
            }))
        }
    }
}

fn support_edges(m: &RationalMatrix) -> Vec<(usize, usize)> {
    // undirected support of the symmetric embedding, for --td validation
    let b = m.symmetric_embedding();
    b.support_digraph()
        .map(|g| g.undirected_edges())
        .unwrap_or_default()
}

fn write_with_suffix(prefix: &PathBuf, suffix: &str, text: &str) -> Result<(), Error> {
    let mut path = prefix.clone();
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_default();
    path.set_file_name(format!("{name}.{suffix}"));
    std::fs::write(path, text)?;
    Ok(())
}
