//! Command-line front end.
//!
//! Subcommands: `rpart`, `modpart`, `verify`, `solve`, `grid-counts`,
//! `grid-counterexample`, `edge-paths`, `edge-feasible`. Pattern files are
//! JSON arrays of binary strings; certificates use the self-describing
//! container from the certificate module; `-` means stdin or stdout.
//!
//! Exit codes: 0 for success, 1 for a definitive negative result (a failed
//! verification, an exhausted search, an infeasible request), 2 for an
//! inconclusive outcome (node budget ran out, or the question falls outside
//! the covered cases), 64 for usage errors and malformed inputs. All output
//! is deterministic; `--deterministic` is accepted everywhere to make that
//! explicit but changes nothing.

use std::ffi::OsString;
use std::io::Read;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certificate::{Certificate, CertificateKind};
use crate::covers::{build_translation_rpart, verify_modpart, verify_rpart};
use crate::cube::PointSet;
use crate::edges::{antipodal_paths, path_decomposition_feasible, segment_decomposition};
use crate::error::Error;
use crate::grid::{find_counterexample, obstruction_report, parity_counts, GridSet};
use crate::modpart::build_mod_part;
use crate::solver::{solve_cube_partition_mode, CopyMode, PartitionOutcome, DEFAULT_BUDGET};

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_INCONCLUSIVE: i32 = 2;
const EXIT_USAGE: i32 = 64;

/// Most violations printed before summarizing the rest.
const MAX_REPORT_LINES: usize = 20;

#[derive(Parser)]
#[command(
    name = "cubecover",
    version,
    about = "Covers, partitions, and edge decompositions of the Hamming cube"
)]
struct Cli {
    /// Keep output byte-stable across runs (already the default behavior).
    #[arg(long, global = true)]
    deterministic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the translation family certificate: an exact |X|-fold cover.
    Rpart(RpartArgs),
    /// Build a cover with every multiplicity congruent to 1 mod r (r = 2^d).
    Modpart(ModpartArgs),
    /// Re-check a certificate file from first principles.
    Verify(VerifyArgs),
    /// Search for a partition of the n-cube into copies of a pattern.
    Solve(SolveArgs),
    /// Even/odd vertex counts of the grid {0..l-1}^n.
    GridCounts(GridCountsArgs),
    /// Find the connected pattern whose parity profile blocks grid partitions.
    GridCounterexample(GridCounterexampleArgs),
    /// Emit the antipodal path family covering every cube edge once.
    EdgePaths(EdgePathsArgs),
    /// Decide whether the odd n-cube's edges split into k-edge paths.
    EdgeFeasible(EdgeFeasibleArgs),
}

#[derive(Args)]
struct RpartArgs {
    /// Pattern file: JSON array of binary strings ("-" for stdin).
    #[arg(long)]
    pattern: String,
    /// Target cube dimension; defaults to the pattern's own dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Certificate destination ("-" for stdout).
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct ModpartArgs {
    /// Pattern file: JSON array of binary strings ("-" for stdin).
    #[arg(long)]
    pattern: String,
    /// Modulus; must be a power of two.
    #[arg(long)]
    r: u64,
    /// Certificate destination ("-" for stdout).
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Certificate file ("-" for stdin).
    #[arg(long)]
    weights: String,
    /// Expected certificate kind; verification fails on a mismatch.
    #[arg(long, value_enum)]
    mode: Option<VerifyMode>,
    /// Expected r; verification fails if the certificate records another.
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Rpart,
    #[value(alias = "modpart")]
    Mod,
    Partition,
    #[value(name = "edge", alias = "edge-decomposition")]
    Edge,
}

impl VerifyMode {
    fn kind(self) -> CertificateKind {
        match self {
            VerifyMode::Rpart => CertificateKind::RPart,
            VerifyMode::Mod => CertificateKind::ModPart,
            VerifyMode::Partition => CertificateKind::Partition,
            VerifyMode::Edge => CertificateKind::EdgeDecomposition,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Pattern file: JSON array of binary strings ("-" for stdin).
    #[arg(long)]
    pattern: String,
    /// Cube dimension to partition.
    #[arg(long)]
    n: usize,
    /// Copy notion supplying the candidate blocks.
    #[arg(long, value_enum)]
    mode: SolveMode,
    /// Node budget before the search reports an inconclusive outcome.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Certificate destination ("-" for stdout).
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Isometric,
    Induced,
}

#[derive(Args)]
struct GridCountsArgs {
    /// Grid side; odd, between 3 and 9.
    #[arg(long)]
    l: usize,
    /// Grid dimension.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct GridCounterexampleArgs {
    /// Grid side; odd, between 3 and 9.
    #[arg(long)]
    l: usize,
    /// Largest grid dimension to search.
    #[arg(long = "max-m")]
    max_m: usize,
    /// Report destination ("-" for stdout).
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct EdgePathsArgs {
    /// Cube dimension.
    #[arg(long)]
    n: usize,
    /// Cut every path into segments of this many edges (must divide n).
    #[arg(long)]
    split: Option<usize>,
    /// Certificate destination ("-" for stdout).
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct EdgeFeasibleArgs {
    /// Cube dimension; the criterion covers odd values only.
    #[arg(long)]
    n: usize,
    /// Path length in edges.
    #[arg(long)]
    k: usize,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command) -> Result<i32, String> {
    match command {
        Command::Rpart(a) => cmd_rpart(a),
        Command::Modpart(a) => cmd_modpart(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Solve(a) => cmd_solve(a),
        Command::GridCounts(a) => cmd_grid_counts(a),
        Command::GridCounterexample(a) => cmd_grid_counterexample(a),
        Command::EdgePaths(a) => cmd_edge_paths(a),
        Command::EdgeFeasible(a) => cmd_edge_feasible(a),
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn write_output(path: &str, content: &str) -> Result<(), String> {
    if path == "-" {
        print!("{content}");
        Ok(())
    } else {
        std::fs::write(path, content).map_err(|e| format!("cannot write {path}: {e}"))
    }
}

fn read_pattern(path: &str) -> Result<PointSet, String> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| format!("malformed pattern file {path}: {e}"))
}

fn lib(e: Error) -> String {
    e.to_string()
}

fn cmd_rpart(a: RpartArgs) -> Result<i32, String> {
    let pattern = read_pattern(&a.pattern)?;
    let n = a.n.unwrap_or_else(|| pattern.dimension());
    let wf = build_translation_rpart(&pattern, n).map_err(lib)?;
    let r = pattern.len() as u64;
    let report = verify_rpart(&wf, r).map_err(lib)?;
    debug_assert!(report.ok);
    let cert = Certificate::from_rpart(&wf, r).map_err(lib)?;
    write_output(&a.out, &cert.to_json())?;
    eprintln!(
        "r-part certificate: r = {r}, n = {n}, {} merged entries",
        wf.image_weights().map_err(lib)?.len()
    );
    Ok(EXIT_OK)
}

fn cmd_modpart(a: ModpartArgs) -> Result<i32, String> {
    let pattern = read_pattern(&a.pattern)?;
    let wf = build_mod_part(&pattern, a.r).map_err(lib)?;
    let report = verify_modpart(&wf, a.r).map_err(lib)?;
    debug_assert!(report.ok);
    let cert = Certificate::from_modpart(&wf, a.r).map_err(lib)?;
    write_output(&a.out, &cert.to_json())?;
    eprintln!(
        "mod-{} certificate: n = {}, {} merged entries",
        a.r,
        wf.target_dim(),
        wf.image_weights().map_err(lib)?.len()
    );
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32, String> {
    let text = read_input(&a.weights)?;
    let cert = Certificate::from_json(&text).map_err(lib)?;
    if let Some(mode) = a.mode {
        if mode.kind() != cert.kind() {
            println!(
                "not ok: certificate kind is {}, expected {}",
                cert.kind(),
                mode.kind()
            );
            return Ok(EXIT_NEGATIVE);
        }
    }
    if let Some(r) = a.r {
        if cert.modulus() != Some(r) {
            match cert.modulus() {
                Some(actual) => println!("not ok: certificate has r = {actual}, expected {r}"),
                None => println!(
                    "not ok: {} certificates carry no r",
                    cert.kind()
                ),
            }
            return Ok(EXIT_NEGATIVE);
        }
    }
    let report = cert.verify().map_err(lib)?;
    if report.ok {
        println!("ok: {} certificate verified", report.kind);
        Ok(EXIT_OK)
    } else {
        println!(
            "not ok: {} certificate has {} violations",
            report.kind,
            report.violations.len()
        );
        for v in report.violations.iter().take(MAX_REPORT_LINES) {
            println!("  {v}");
        }
        if report.violations.len() > MAX_REPORT_LINES {
            println!(
                "  ... and {} more",
                report.violations.len() - MAX_REPORT_LINES
            );
        }
        Ok(EXIT_NEGATIVE)
    }
}

fn cmd_solve(a: SolveArgs) -> Result<i32, String> {
    let pattern = read_pattern(&a.pattern)?;
    let mode = match a.mode {
        SolveMode::Isometric => CopyMode::Isometric,
        SolveMode::Induced => CopyMode::Induced,
    };
    match solve_cube_partition_mode(&pattern, a.n, a.budget, mode).map_err(lib)? {
        PartitionOutcome::Partition(blocks) => {
            let count = blocks.len();
            let cert = Certificate::from_partition(pattern, a.n, blocks).map_err(lib)?;
            write_output(&a.out, &cert.to_json())?;
            eprintln!("partition certificate: {count} blocks");
            Ok(EXIT_OK)
        }
        PartitionOutcome::None => {
            println!("exhausted: no partition of the {}-cube exists", a.n);
            Ok(EXIT_NEGATIVE)
        }
        PartitionOutcome::BudgetExhausted { nodes } => {
            println!("inconclusive: node budget exhausted after {nodes} nodes");
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

#[derive(Serialize)]
struct GridCountsReport {
    side: usize,
    dim: usize,
    even: u64,
    odd: u64,
}

fn cmd_grid_counts(a: GridCountsArgs) -> Result<i32, String> {
    let (even, odd) = parity_counts(a.l, a.n).map_err(lib)?;
    let report = GridCountsReport {
        side: a.l,
        dim: a.n,
        even,
        odd,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CounterexampleReport {
    side: usize,
    dim: usize,
    points: GridSet,
    even_vertices: usize,
    odd_vertices: usize,
    connected: bool,
    obstruction: crate::grid::ObstructionReport,
}

fn cmd_grid_counterexample(a: GridCounterexampleArgs) -> Result<i32, String> {
    match find_counterexample(a.l, a.max_m).map_err(lib)? {
        Some(set) => {
            let (even, odd) = set.parity_profile();
            let report = CounterexampleReport {
                side: a.l,
                dim: set.dimension(),
                even_vertices: even,
                odd_vertices: odd,
                connected: set.is_connected(),
                obstruction: obstruction_report(a.l, set.dimension()).map_err(lib)?,
                points: set,
            };
            let mut text =
                serde_json::to_string_pretty(&report).expect("serializable");
            text.push('\n');
            write_output(&a.out, &text)?;
            Ok(EXIT_OK)
        }
        None => {
            println!(
                "none: no counterexample pattern found for side {} up to dimension {}",
                a.l, a.max_m
            );
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_edge_paths(a: EdgePathsArgs) -> Result<i32, String> {
    let paths = match a.split {
        None => antipodal_paths(a.n).map_err(lib)?,
        Some(k) => match segment_decomposition(a.n, k) {
            Ok(paths) => paths,
            Err(Error::SegmentDoesNotDivide { segment, path }) => {
                println!("infeasible: {segment} does not divide {path}");
                return Ok(EXIT_NEGATIVE);
            }
            Err(e) => return Err(lib(e)),
        },
    };
    let cert = Certificate::from_edge_decomposition(a.n, a.split, &paths).map_err(lib)?;
    write_output(&a.out, &cert.to_json())?;
    eprintln!("edge decomposition: {} paths", paths.len());
    Ok(EXIT_OK)
}

fn cmd_edge_feasible(a: EdgeFeasibleArgs) -> Result<i32, String> {
    match path_decomposition_feasible(a.n, a.k).map_err(lib)? {
        Some(true) => {
            println!("true");
            Ok(EXIT_OK)
        }
        Some(false) => {
            println!("false");
            Ok(EXIT_NEGATIVE)
        }
        None => {
            println!("inconclusive: the criterion covers odd dimensions only");
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}
