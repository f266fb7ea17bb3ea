//! The `ncd` command line. Exit codes: 0 success (either verdict), 2 bad
//! input or usage, 3 a size limit was hit, 4 internal error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::apsp::DEFAULT_MAX_K;
use crate::bench::{growth_per_two_trees, run_bench};
use crate::decomposition::{solve, ApspOutcome, SolveOptions};
use crate::error::Error;
use crate::format::{emit, parse, Instance};
use crate::generator::{generate, GeneratorConfig};
use crate::matrix::DistanceMatrix;
use crate::mixed::solve_mixed;
use crate::oracle;
use crate::witness::{Witness, WitnessKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ncd", version, about = "Shortest simple paths in nearly conservative digraphs")]
struct Cli {
    /// Largest number of negative trees allowed in one block.
    #[arg(long, global = true, env = "NCD_MAX_K", default_value_t = DEFAULT_MAX_K)]
    max_k: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide near-conservativeness and print a witness if it fails.
    Check(InputArg),
    /// Print all pairwise distances.
    Apsp(InputArg),
    /// Print one distance and a shortest path.
    Query {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Brute-force verdict and distances for small instances.
    Oracle(InputArg),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Time the subset DP for a range of tree counts.
    Bench {
        #[arg(long, default_value_t = 60)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,4,6,8,10,12")]
        ks: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Args, Debug)]
struct InputArg {
    /// Instance file, `-` for stdin.
    file: PathBuf,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 60)]
    arcs: usize,
    #[arg(long, default_value_t = 3)]
    trees: usize,
    #[arg(long, default_value_t = 3)]
    tree_size: usize,
    #[arg(long, default_value_t = 10)]
    weight: i64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    sccs: usize,
    #[arg(long, default_value_t = 1)]
    blocks: usize,
    #[arg(long)]
    mixed: bool,
    /// Draw ordinary weights freely instead of keeping the instance safe.
    #[arg(long = "unsafe")]
    unsafe_weights: bool,
    /// With --unsafe, redraw until the solver accepts (at most this often).
    #[arg(long, default_value_t = 0)]
    reject: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MalformedInput { .. } | Error::VertexOutOfRange { .. } | Error::InvalidConfig(_) => EXIT_MALFORMED,
        Error::LimitExceeded { .. } | Error::SizeGuard { .. } => EXIT_LIMIT,
        Error::NoPath { .. } | Error::Internal(_) => EXIT_INTERNAL,
    }
}

fn read_input(path: &PathBuf) -> Result<Instance, Error> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::malformed(None, format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

fn solve_instance(inst: &Instance, max_k: usize) -> Result<ApspOutcome, Error> {
    let options = SolveOptions { max_k, ..Default::default() };
    if inst.is_mixed() {
        solve_mixed(&inst.to_mixed(), &options)
    } else {
        solve(&inst.digraph()?, &options)
    }
}

fn ids(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn value(d: Option<i64>) -> String {
    d.map_or_else(|| "inf".to_string(), |d| d.to_string())
}

const NC: &str = "status nearly-conservative";
const NNC: &str = "status not-nearly-conservative";

fn write_witness(out: &mut dyn Write, w: &Witness) -> std::io::Result<()> {
    writeln!(out, "{NNC}")?;
    match &w.kind {
        WitnessKind::ForestCycle { cycle } => writeln!(out, "witness forest-cycle {}", ids(cycle))?,
        WitnessKind::OrdinaryCycle => writeln!(out, "witness ordinary-cycle")?,
        WitnessKind::TreeConflict { u, v, outer, tree_back } => {
            writeln!(out, "witness tree-conflict {} {} {outer} {tree_back}", u + 1, v + 1)?
        }
        WitnessKind::ArcConflict { u, v, weight, tree_back } => {
            writeln!(out, "witness arc-conflict {} {} {weight} {tree_back}", u + 1, v + 1)?
        }
        WitnessKind::TwoElementCycle => writeln!(out, "witness two-element-cycle")?,
    }
    writeln!(out, "cycle {} {}", w.length, ids(&w.cycle))?;
    if let Some(unit) = &w.unit {
        writeln!(out, "unit component {} block {} vertices {}", unit.component + 1, unit.block + 1, ids(&unit.vertices))?;
    }
    Ok(())
}

fn write_distances(out: &mut dyn Write, d: &DistanceMatrix) -> std::io::Result<()> {
    let n = d.dim();
    for s in 0..n {
        for t in 0..n {
            writeln!(out, "d {} {} {}", s + 1, t + 1, value(d.get(s, t)))?;
        }
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Error> {
    match cli.command {
        Command::Check(input) => {
            let inst = read_input(&input.file)?;
            match solve_instance(&inst, cli.max_k)? {
                ApspOutcome::Solved(_) => writeln!(out, "{NC}").map_err(io_err),
                ApspOutcome::NotNearlyConservative(w) => write_witness(out, &w).map_err(io_err),
            }
        }
        Command::Apsp(input) => {
            let inst = read_input(&input.file)?;
            match solve_instance(&inst, cli.max_k)? {
                ApspOutcome::Solved(s) => {
                    writeln!(out, "{NC}").map_err(io_err)?;
                    write_distances(out, s.distances()).map_err(io_err)
                }
                ApspOutcome::NotNearlyConservative(w) => write_witness(out, &w).map_err(io_err),
            }
        }
        Command::Query { input, from, to } => {
            let inst = read_input(&input.file)?;
            for v in [from, to] {
                if v == 0 || v > inst.n {
                    return Err(Error::VertexOutOfRange { vertex: v, n: inst.n });
                }
            }
            match solve_instance(&inst, cli.max_k)? {
                ApspOutcome::Solved(s) => match s.distance(from - 1, to - 1) {
                    None => writeln!(out, "dist inf").map_err(io_err),
                    Some(d) => {
                        let path = s.path(from - 1, to - 1)?;
                        writeln!(out, "dist {d}\npath {}", ids(&path.vertices)).map_err(io_err)
                    }
                },
                ApspOutcome::NotNearlyConservative(w) => write_witness(out, &w).map_err(io_err),
            }
        }
        Command::Oracle(input) => {
            let inst = read_input(&input.file)?;
            let verdict = if inst.is_mixed() {
                let m = inst.to_mixed();
                let mut v = oracle::mixed_cycles_verdict(&m)?;
                if v.nearly_conservative && m.n <= oracle::MAX_DISTANCE_N {
                    v.distances = Some(oracle::mixed_paths_distances(&m)?);
                }
                v
            } else {
                oracle::oracle(&inst.digraph()?)?
            };
            let status = if verdict.nearly_conservative { NC } else { NNC };
            writeln!(out, "{status}").map_err(io_err)?;
            if let Some((cycle, len)) = &verdict.worst_cycle {
                writeln!(out, "cycle {len} {}", ids(cycle)).map_err(io_err)?;
            }
            if let Some(d) = &verdict.distances {
                write_distances(out, d).map_err(io_err)?;
            }
            Ok(())
        }
        Command::Gen(a) => {
            let cfg = GeneratorConfig {
                n: a.n,
                arcs: a.arcs,
                trees: a.trees,
                tree_size: a.tree_size,
                weight: a.weight,
                seed: a.seed,
                sccs: a.sccs,
                blocks: a.blocks,
                mixed: a.mixed,
                safe: !a.unsafe_weights,
                reject_attempts: a.reject,
            };
            let text = emit(&generate(&cfg)?);
            match a.output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))),
                None => out.write_all(text.as_bytes()).map_err(io_err),
            }
        }
        Command::Bench { n, ks, seed, reps } => {
            let rows = run_bench(n, &ks, seed, reps)?;
            writeln!(out, "k n seconds").map_err(io_err)?;
            for r in &rows {
                writeln!(out, "{} {} {:.6}", r.k, r.n, r.seconds).map_err(io_err)?;
            }
            if let Some(ratio) = growth_per_two_trees(&rows, 6) {
                writeln!(out, "growth per +2 trees (k >= 6): {ratio:.2}").map_err(io_err)?;
            }
            Ok(())
        }
    }
}

/// Runs one command and returns the process exit code. Panics inside the
/// solver are reported as internal errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(cli, out)));
    match result {
        Ok(Ok(())) => EXIT_OK,
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal invariant violated");
            EXIT_INTERNAL
        }
    }
}
