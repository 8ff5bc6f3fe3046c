//! `ramsey`: batch front end for the graph constructions, spectral
//! certificates, colourings, embeddings and verifiers in `ramsey-core`.
//!
//! Exit codes: 0 success; 1 runtime failure; 2 bad input (malformed files,
//! invalid parameters); 3 structured negative outcome (embedding not found,
//! pipeline step failure, verification rejected).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ramsey_core::colouring::{Colour, EdgeColouring};
use ramsey_core::constants::{dichotomy_bound, proof_constants, ramsey_clique_size};
use ramsey_core::degenerate::{colour_monotone, colour_recursive, longest_mono_monotone_path};
use ramsey_core::dichotomy::{tree_or_multipartite, Dichotomy};
use ramsey_core::embedding::embed_tree;
use ramsey_core::error::Error;
use ramsey_core::graph::{degeneracy_ordering, Graph};
use ramsey_core::host::build_host;
use ramsey_core::pipeline::{ramsey_pipeline, PipelineOutcome, PipelineParams};
use ramsey_core::products::{blowup, graph_power, strong_product};
use ramsey_core::spectral::{
    expander_certificate, random_regular, random_regular_lambda_accepted, second_eigenvalue,
};
use ramsey_core::tree::{complete_dary_tree, truncation, RootedTree};
use ramsey_core::verify::{
    find_mono_tree, validate_dichotomy, validate_embedding, DEFAULT_NODE_BUDGET,
};
use ramsey_core::{io, Embedding};

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Expander, embedding and Ramsey-colouring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random regular graph and report its spectral profile.
    GenExpander(GenExpander),
    /// Raise a graph to a power: edges between vertices at distance <= p.
    Power(PowerArgs),
    /// Strong product with a clique: G ⊠ K_k.
    Product(ProductArgs),
    /// Blow each vertex up to an independent set of size t.
    Blowup(BlowupArgs),
    /// Write a complete d-ary tree of height h.
    DaryTree(DaryArgs),
    /// Truncate a rooted tree to its root plus odd levels.
    Truncate(TruncateArgs),
    /// Exact degeneracy and a witnessing vertex order.
    Degeneracy(DegeneracyArgs),
    /// Colour a graph's edges (recursive:i or monotone).
    Colour(ColourArgs),
    /// Search a colouring for monochromatic trees, optionally with the
    /// monotone-path DP.
    CheckColouring(CheckColouringArgs),
    /// Embed a tree into a host graph (exhaustive search).
    Embed(EmbedArgs),
    /// Run the tree-or-multipartite dichotomy on a coloured complete graph.
    Dichotomy(DichotomyArgs),
    /// Full product-host pipeline: build host, colour, search for a
    /// monochromatic tree product.
    Pipeline(PipelineArgs),
    /// Print the exact proof-scale constants for given k, d.
    Constants(ConstantsArgs),
    /// Independent validators (exit 0 iff the certificate is accepted).
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Empirical expander certificate: mixing analytics plus sampled tree
    /// embeddings into random induced subgraphs.
    Certify(CertifyArgs),
}

#[derive(Args)]
struct GenExpander {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    seed: u64,
    /// Regenerate with derived seeds until lambda <= 2 sqrt(d).
    #[arg(long)]
    require_lambda: bool,
    /// Output path for the graph file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PowerArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProductArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BlowupArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DaryArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    h: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TruncateArgs {
    #[arg(long)]
    tree: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print the map from truncation ids to original vertices.
    #[arg(long)]
    print_map: bool,
}

#[derive(Args)]
struct DegeneracyArgs {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct ColourArgs {
    #[arg(long)]
    graph: PathBuf,
    /// `recursive:<i>` or `monotone`.
    #[arg(long)]
    method: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckColouringArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colouring: PathBuf,
    /// `dary:<d>,<h>` or a tree file path.
    #[arg(long)]
    tree: String,
    /// Also report the longest monochromatic monotone path per colour.
    #[arg(long)]
    monotone_dp: bool,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long)]
    tree: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DichotomyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colouring: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    q: usize,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    host_n: usize,
    #[arg(long)]
    host_d: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    t: usize,
    /// Clique block size; defaults to the known Ramsey number of K_t.
    #[arg(long, short = 'R')]
    r: Option<usize>,
    #[arg(long)]
    tree1: PathBuf,
    #[arg(long)]
    tree2: PathBuf,
    /// `all-red`, `all-blue`, `random:<seed>` or a colouring file path.
    #[arg(long)]
    colouring: String,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    /// Also print the size bounds for trees on n vertices.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check an embedding file (pattern and host as graph files).
    Embedding(VerifyEmbeddingArgs),
    /// Re-check a dichotomy certificate (JSON).
    Dichotomy(VerifyDichotomyArgs),
    /// Exact monochromatic tree search; exit 0 iff no copy exists.
    MonoTree(VerifyMonoTreeArgs),
}

#[derive(Args)]
struct VerifyEmbeddingArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    host: PathBuf,
    /// Embedding file: `pattern_vertex host_vertex` lines.
    #[arg(long)]
    map: PathBuf,
    #[arg(long, requires = "colour")]
    colouring: Option<PathBuf>,
    /// `red` or `blue`: require every image edge to carry this colour.
    #[arg(long, requires = "colouring")]
    colour: Option<String>,
}

#[derive(Args)]
struct VerifyDichotomyArgs {
    #[arg(long)]
    colouring: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    q: usize,
    /// Dichotomy certificate as JSON (as printed by `ramsey dichotomy`).
    #[arg(long)]
    certificate: PathBuf,
}

#[derive(Args)]
struct VerifyMonoTreeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colouring: PathBuf,
    /// `red` or `blue`.
    #[arg(long)]
    colour: String,
    /// `dary:<d>,<h>` or a tree file path.
    #[arg(long)]
    tree: String,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::InvalidInput(_) | Error::Precondition(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}

fn node_budget() -> u64 {
    std::env::var("RF_NODE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    io::parse_graph(&std::fs::read_to_string(path)?)
}

fn read_tree(path: &Path) -> Result<RootedTree, Error> {
    io::parse_tree(&std::fs::read_to_string(path)?)
}

fn read_colouring(path: &Path) -> Result<EdgeColouring, Error> {
    io::parse_colouring(&std::fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn parse_colour(name: &str) -> Result<Colour, Error> {
    match name.to_ascii_lowercase().as_str() {
        "red" | "r" => Ok(Colour::Red),
        "blue" | "b" => Ok(Colour::Blue),
        other => Err(Error::InvalidInput(format!("unknown colour `{other}`"))),
    }
}

/// `dary:<d>,<h>` or a path to a tree file.
fn parse_tree_spec(spec: &str) -> Result<RootedTree, Error> {
    if let Some(rest) = spec.strip_prefix("dary:") {
        let (d, h) = rest.split_once(',').ok_or_else(|| {
            Error::InvalidInput(format!("expected dary:<d>,<h>, got `{spec}`"))
        })?;
        let d = d
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("invalid branching `{d}`")))?;
        let h = h
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("invalid height `{h}`")))?;
        complete_dary_tree(d, h)
    } else {
        read_tree(Path::new(spec))
    }
}

fn run(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::GenExpander(a) => {
            #[derive(Serialize)]
            struct Profile {
                n: usize,
                d: usize,
                lambda: f64,
                attempts: u64,
            }
            let (graph, lambda, attempts) = if a.require_lambda {
                let acc = random_regular_lambda_accepted(a.n, a.d, a.seed)?;
                (acc.graph, acc.profile.lambda, acc.attempts)
            } else {
                let (graph, attempts) = random_regular(a.n, a.d, a.seed)?;
                let profile = second_eigenvalue(&graph)?;
                (graph, profile.lambda, attempts)
            };
            emit(a.out.as_deref(), &io::write_graph(&graph))?;
            print_json(&Profile {
                n: a.n,
                d: a.d,
                lambda,
                attempts,
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Power(a) => {
            let g = read_graph(&a.graph)?;
            if a.p < 1 {
                return Err(Error::InvalidInput("power must be >= 1".into()));
            }
            emit(a.out.as_deref(), &io::write_graph(&graph_power(&g, a.p)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Product(a) => {
            let g = read_graph(&a.graph)?;
            if a.k < 1 {
                return Err(Error::InvalidInput("k must be >= 1".into()));
            }
            emit(a.out.as_deref(), &io::write_graph(&strong_product(&g, a.k)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Blowup(a) => {
            let g = read_graph(&a.graph)?;
            if a.t < 1 {
                return Err(Error::InvalidInput("t must be >= 1".into()));
            }
            emit(a.out.as_deref(), &io::write_graph(&blowup(&g, a.t)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DaryTree(a) => {
            let t = complete_dary_tree(a.d, a.h)?;
            emit(a.out.as_deref(), &io::write_tree(&t))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Truncate(a) => {
            let t = read_tree(&a.tree)?;
            let tr = truncation(&t);
            emit(a.out.as_deref(), &io::write_tree(&tr.tree))?;
            if a.print_map {
                let mut map = String::new();
                for (x, &orig) in tr.original.iter().enumerate() {
                    let _ = writeln!(map, "{x} {orig}");
                }
                print!("{map}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Degeneracy(a) => {
            #[derive(Serialize)]
            struct Out {
                degeneracy: usize,
                ordering: Vec<usize>,
            }
            let g = read_graph(&a.graph)?;
            let (order, degeneracy) = degeneracy_ordering(&g);
            print_json(&Out {
                degeneracy,
                ordering: order.seq().to_vec(),
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Colour(a) => {
            let g = read_graph(&a.graph)?;
            let psi = if a.method == "monotone" {
                let (order, _) = degeneracy_ordering(&g);
                colour_monotone(&g, &order)
            } else if let Some(i) = a.method.strip_prefix("recursive:") {
                let i: u32 = i.parse().map_err(|_| {
                    Error::InvalidInput(format!("invalid recursion level `{i}`"))
                })?;
                colour_recursive(&g, i)?
            } else {
                return Err(Error::InvalidInput(format!(
                    "unknown method `{}`, expected `monotone` or `recursive:<i>`",
                    a.method
                )));
            };
            emit(a.out.as_deref(), &io::write_colouring(&psi))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckColouring(a) => {
            #[derive(Serialize)]
            struct Out {
                found: bool,
                witness_colour: Option<Colour>,
                witness: Option<Vec<usize>>,
                dp_lengths: Option<ramsey_core::degenerate::MonotonePathLengths>,
            }
            let g = read_graph(&a.graph)?;
            let psi = read_colouring(&a.colouring)?;
            let tree = parse_tree_spec(&a.tree)?;
            let budget = node_budget();
            let mut found = None;
            for colour in [Colour::Red, Colour::Blue] {
                if let Some(e) = find_mono_tree(&g, &psi, colour, &tree, budget)? {
                    found = Some((colour, e));
                    break;
                }
            }
            let dp_lengths = if a.monotone_dp {
                let (order, _) = degeneracy_ordering(&g);
                Some(longest_mono_monotone_path(&g, &order, &psi)?)
            } else {
                None
            };
            print_json(&Out {
                found: found.is_some(),
                witness_colour: found.as_ref().map(|(c, _)| *c),
                witness: found.map(|(_, e)| e.image().to_vec()),
                dp_lengths,
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed(a) => {
            let host = read_graph(&a.host)?;
            let tree = read_tree(&a.tree)?;
            let d = tree.max_degree().max(1);
            match embed_tree(&host, &tree, d)? {
                Some(e) => {
                    emit(a.out.as_deref(), &io::write_embedding(&e))?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    eprintln!("no embedding exists (exhaustive search)");
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Dichotomy(a) => {
            let g = read_graph(&a.graph)?;
            let psi = read_colouring(&a.colouring)?;
            if !psi.is_total_on(&g) {
                return Err(Error::InvalidInput(
                    "colouring does not match the graph".into(),
                ));
            }
            let out = tree_or_multipartite(&psi, a.n, a.d, a.q)?;
            print_json(&out);
            Ok(ExitCode::SUCCESS)
        }
        Command::Pipeline(a) => {
            let r = match a.r {
                Some(r) => r,
                None => ramsey_clique_size(a.t).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "no known clique Ramsey number for t = {}; supply -R explicitly",
                        a.t
                    ))
                })?,
            };
            let host = build_host(a.host_n, a.host_d, a.t, r, a.seed)?;
            let psi = match a.colouring.as_str() {
                "all-red" => EdgeColouring::all_red(&host.graph),
                "all-blue" => EdgeColouring::all_blue(&host.graph),
                other => {
                    if let Some(seed) = other.strip_prefix("random:") {
                        let seed: u64 = seed.parse().map_err(|_| {
                            Error::InvalidInput(format!("invalid random seed `{seed}`"))
                        })?;
                        EdgeColouring::random(&host.graph, seed)
                    } else {
                        let psi = read_colouring(Path::new(other))?;
                        if !psi.is_total_on(&host.graph) {
                            return Err(Error::InvalidInput(
                                "colouring file does not match the built host".into(),
                            ));
                        }
                        psi
                    }
                }
            };
            let tree1 = read_tree(&a.tree1)?;
            let tree2 = read_tree(&a.tree2)?;
            let params = PipelineParams {
                k: a.k,
                d: a.d,
                seed: a.seed,
            };
            let outcome = ramsey_pipeline(&host, &psi, &tree1, &tree2, &params)?;
            print_json(&outcome);
            match outcome {
                PipelineOutcome::Witness(_) => Ok(ExitCode::SUCCESS),
                PipelineOutcome::StepFailure(_) => Ok(ExitCode::from(3)),
            }
        }
        Command::Constants(a) => {
            let c = proof_constants(a.k, a.d)?;
            println!("k = {}", c.k);
            println!("d = {}", c.d);
            println!("s = (d + d^2) k = {}", c.s);
            println!("t = (64 k d)^s = {}", c.t);
            println!("eps = 1/{}", c.eps_inverse);
            println!("q = 2k + 1 = {}", c.q);
            println!("min even degree D > 100 d^2 / eps^4: {}", c.min_even_degree);
            if let Some(n) = a.n {
                println!(
                    "host bound 40 n d^2 (2k+1) = {}",
                    c.host_bound_per_vertex.clone() * n
                );
                println!(
                    "dichotomy bound 20 n d^2 (2k+1) = {}",
                    dichotomy_bound(n, a.d * a.d, c.q)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(v) => run_verify(v),
        Command::Certify(a) => {
            let g = read_graph(&a.graph)?;
            let profile = second_eigenvalue(&g)?;
            let cert = expander_certificate(&g, profile, a.n, a.d, a.eps, a.samples, a.seed)?;
            print_json(&cert);
            Ok(if cert.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
    }
}

fn run_verify(cmd: VerifyCommand) -> Result<ExitCode, Error> {
    match cmd {
        VerifyCommand::Embedding(a) => {
            let pattern = read_graph(&a.pattern)?;
            let host = read_graph(&a.host)?;
            let map = io::parse_embedding(&std::fs::read_to_string(&a.map)?)?;
            let psi;
            let filter = match (&a.colouring, &a.colour) {
                (Some(cpath), Some(cname)) => {
                    psi = read_colouring(cpath)?;
                    Some((&psi, parse_colour(cname)?))
                }
                _ => None,
            };
            let report = validate_embedding(&pattern, &host, &map, filter);
            print_json(&report);
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        VerifyCommand::Dichotomy(a) => {
            let psi = read_colouring(&a.colouring)?;
            let text = std::fs::read_to_string(&a.certificate)?;
            let cert: Dichotomy = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad certificate JSON: {e}")))?;
            let report = validate_dichotomy(&psi, a.n, a.d, a.q, &cert);
            print_json(&report);
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        VerifyCommand::MonoTree(a) => {
            #[derive(Serialize)]
            struct Out {
                found: bool,
                witness: Option<Embedding>,
            }
            let g = read_graph(&a.graph)?;
            let psi = read_colouring(&a.colouring)?;
            let colour = parse_colour(&a.colour)?;
            let tree = parse_tree_spec(&a.tree)?;
            let hit = find_mono_tree(&g, &psi, colour, &tree, node_budget())?;
            let found = hit.is_some();
            print_json(&Out {
                found,
                witness: hit,
            });
            // "ok" means the colouring is free of the pattern.
            Ok(if found {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}
