//! The `maxexp` command line: `gen`, `solve`, `verify` and `bench`.
//!
//! Exit codes: 0 success, 1 invalid input or failed verification, 2 the
//! requested exact method is infeasible for this input (subset or grid cap).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::generate::{
    gen_checkerboard, gen_convex_from_hypergraph, gen_random, random_bipartite, random_hypergraph,
    RandomConfig, Shape,
};
use crate::geometry::{Coord, Instance, Solution};
use crate::greedy::{greedy_bicriteria, greedy_squares};
use crate::grid::{dp_approx, ptas_budget_with_cap, ptas_points_with_cap, DEFAULT_H_CAP};
use crate::io::{format_coord, parse_coord, InstanceFile, Metadata, ResultRecord};
use crate::oracle::{brute_force_opt_with_limit, DEFAULT_SUBSET_LIMIT};

#[derive(Parser, Debug)]
#[command(
    name = "maxexp",
    version,
    about = "Solve and benchmark geometric max-exposure instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Solve an instance and write a result record.
    Solve(SolveArgs),
    /// Check a result record against its instance.
    Verify { instance: PathBuf, record: PathBuf },
    /// Run every algorithm over a directory of instances.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Output file; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ShapeArg {
    UnitSquares,
    Squares,
    Rects,
    Disks,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Seeded random instance.
    Random {
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, default_value_t = 6)]
        ranges: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ShapeArg::UnitSquares)]
        shape: ShapeArg,
        /// Aspect-ratio bound for `rects`.
        #[arg(long, default_value_t = 2)]
        max_aspect: u32,
        /// Depth bound for `disks`.
        #[arg(long, default_value_t = 2)]
        max_ply: usize,
        #[arg(long, default_value_t = 3)]
        span: u32,
        #[arg(long, default_value_t = 8)]
        resolution: u32,
        #[arg(long, default_value_t = 2)]
        max_side: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Thin-rectangle instance from a random bipartite graph.
    Checkerboard {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value = "1/2")]
        eps: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Convex-polygon instance from a random hypergraph.
    Convex {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 3)]
        max_edge_size: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

/// Algorithms selectable with `--algo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Oracle,
    Greedy,
    GreedySquares,
    DpApprox,
    PtasBudget,
    PtasPoints,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::Greedy => "greedy",
            Algorithm::GreedySquares => "greedy-squares",
            Algorithm::DpApprox => "dp-approx",
            Algorithm::PtasBudget => "ptas-budget",
            Algorithm::PtasPoints => "ptas-points",
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    algo: Algorithm,
    #[command(flatten)]
    opts: SolveFlags,
    /// Leave the wall-clock field out so records are byte-reproducible.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug, Clone)]
struct SolveFlags {
    /// Number of groups or squares taken by the greedy algorithms; default k.
    #[arg(long)]
    alpha: Option<usize>,
    /// Accuracy parameter of the grid schemes, e.g. `8/3`.
    #[arg(long)]
    eps: Option<String>,
    /// Deletion budget for dp-approx: an integer or a multiple of k such as `4k`.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SUBSET_LIMIT)]
    subset_limit: u128,
    #[arg(long, default_value_t = DEFAULT_H_CAP)]
    h_cap: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    dir: PathBuf,
    /// Comma-separated algorithms to compare against the oracle.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [
        Algorithm::Greedy, Algorithm::GreedySquares, Algorithm::DpApprox,
        Algorithm::PtasBudget, Algorithm::PtasPoints,
    ])]
    algos: Vec<Algorithm>,
    /// Write `instance,k,algorithm,value,oracle,ratio` rows here.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SUBSET_LIMIT)]
    subset_limit: u128,
}

/// Solver parameters shared by `solve` and `bench`.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub alpha: Option<usize>,
    pub eps: Option<Coord>,
    pub budget: Option<usize>,
    pub subset_limit: u128,
    pub h_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            alpha: None,
            eps: None,
            budget: None,
            subset_limit: DEFAULT_SUBSET_LIMIT,
            h_cap: DEFAULT_H_CAP,
        }
    }
}

/// `"4k"` is four times `k`, `"k"` is `k`, otherwise a plain integer.
pub fn parse_budget(s: &str, k: usize) -> Result<usize> {
    let t = s.trim();
    let bad = || {
        Error::Parse(format!(
            "budget must be an integer or a multiple of k, got {s:?}"
        ))
    };
    match t.strip_suffix('k') {
        Some("") => Ok(k),
        Some(m) => Ok(m.parse::<usize>().map_err(|_| bad())? * k),
        None => t.parse().map_err(|_| bad()),
    }
}

/// Runs one algorithm with defaults filled in; returns the solution and the
/// parameters actually used.
pub fn run_algorithm(
    inst: &Instance,
    algo: Algorithm,
    opts: &SolveOptions,
) -> Result<(Solution, BTreeMap<String, String>)> {
    let mut params = BTreeMap::new();
    params.insert("k".to_string(), inst.k.to_string());
    let alpha = opts.alpha.unwrap_or(inst.k.max(1));
    let sol = match algo {
        Algorithm::Oracle => brute_force_opt_with_limit(inst, opts.subset_limit)?,
        Algorithm::Greedy => {
            params.insert("alpha".into(), alpha.to_string());
            greedy_bicriteria(inst, alpha)?.solution()
        }
        Algorithm::GreedySquares => {
            params.insert("alpha".into(), alpha.to_string());
            greedy_squares(inst, alpha)?.solution()
        }
        Algorithm::DpApprox => {
            let budget = opts.budget.unwrap_or(4 * inst.k);
            params.insert("budget".into(), budget.to_string());
            dp_approx(inst, budget)?
        }
        Algorithm::PtasBudget | Algorithm::PtasPoints => {
            let budget_mode = algo == Algorithm::PtasBudget;
            let eps = opts.eps.clone().unwrap_or_else(|| {
                if budget_mode {
                    Coord::new(8.into(), 3.into())
                } else {
                    Coord::new(4.into(), 3.into())
                }
            });
            let s = if budget_mode {
                ptas_budget_with_cap(inst, inst.k, &eps, opts.h_cap)?
            } else {
                ptas_points_with_cap(inst, inst.k, &eps, opts.h_cap)?
            };
            params.insert("eps".into(), format_coord(&eps));
            params.insert("h".into(), s.h.to_string());
            params.insert("shift".into(), format!("{},{}", s.shift.0, s.shift.1));
            params.insert("budget".into(), s.budget.to_string());
            s.solution
        }
    };
    sol.validate(inst)?;
    Ok((sol, params))
}

fn exit_code(e: &Error) -> i32 {
    if e.is_infeasible() {
        2
    } else {
        1
    }
}

fn emit(out: &mut dyn Write, target: &Option<PathBuf>, text: &str) -> Result<()> {
    match target {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn gen(kind: GenKind, out: &mut dyn Write) -> Result<()> {
    let (inst, meta, target) = match kind {
        GenKind::Random {
            points,
            ranges,
            k,
            shape,
            max_aspect,
            max_ply,
            span,
            resolution,
            max_side,
            seed,
            out,
        } => {
            let shape = match shape {
                ShapeArg::UnitSquares => Shape::UnitSquares,
                ShapeArg::Squares => Shape::Squares,
                ShapeArg::Rects => Shape::Rects { max_aspect },
                ShapeArg::Disks => Shape::Disks { max_ply },
            };
            let cfg = RandomConfig {
                n_ranges: ranges,
                n_points: points,
                k,
                shape,
                span,
                resolution,
                max_side,
                seed,
                ..RandomConfig::default()
            };
            (gen_random(&cfg)?, ("random", seed), out.output)
        }
        GenKind::Checkerboard {
            a,
            b,
            density,
            eps,
            k,
            seed,
            out,
        } => {
            let g = random_bipartite(a, b, density, seed)?;
            (
                gen_checkerboard(&g, &parse_coord(&eps)?, k)?,
                ("checkerboard", seed),
                out.output,
            )
        }
        GenKind::Convex {
            vertices,
            edges,
            max_edge_size,
            k,
            seed,
            out,
        } => {
            let h = random_hypergraph(vertices, edges, max_edge_size, seed)?;
            (
                gen_convex_from_hypergraph(&h, k)?,
                ("convex", seed),
                out.output,
            )
        }
    };
    let file = InstanceFile {
        instance: inst,
        metadata: Some(Metadata {
            generator: Some(meta.0.to_string()),
            seed: Some(meta.1),
        }),
    };
    emit(out, &target, &file.to_json()?)
}

fn solve_options(flags: &SolveFlags, k: usize) -> Result<SolveOptions> {
    Ok(SolveOptions {
        alpha: flags.alpha,
        eps: flags.eps.as_deref().map(parse_coord).transpose()?,
        budget: flags
            .budget
            .as_deref()
            .map(|b| parse_budget(b, k))
            .transpose()?,
        subset_limit: flags.subset_limit,
        h_cap: flags.h_cap,
    })
}

fn solve(args: SolveArgs, out: &mut dyn Write) -> Result<()> {
    let inst = InstanceFile::load(&args.instance)?.instance;
    let opts = solve_options(&args.opts, inst.k)?;
    let start = Instant::now();
    let (sol, params) = run_algorithm(&inst, args.algo, &opts)?;
    let ms = (!args.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    let rec = ResultRecord::new(args.algo.name(), params, &sol, ms);
    emit(out, &args.out.output, &rec.to_json()?)
}

fn verify(instance: &Path, record: &Path, out: &mut dyn Write) -> Result<()> {
    let inst = InstanceFile::load(instance)?.instance;
    let rec = ResultRecord::from_json(&fs::read_to_string(record)?)?;
    rec.verify(&inst)?;
    writeln!(
        out,
        "ok: {} exposes {} points with {} deletions",
        rec.algorithm, rec.value, rec.deleted_count
    )?;
    Ok(())
}

fn bench(args: BenchArgs, out: &mut dyn Write) -> Result<()> {
    let mut files: Vec<PathBuf> = fs::read_dir(&args.dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let opts = SolveOptions {
        subset_limit: args.subset_limit,
        ..SolveOptions::default()
    };
    let mut table = String::new();
    let mut plot = String::from("instance,k,algorithm,value,oracle,ratio\n");
    table.push_str(&format!(
        "{:<24} {:>4} {:>4} {:>3} {:>7}",
        "instance", "m", "n", "k", "oracle"
    ));
    for a in &args.algos {
        table.push_str(&format!(" {:>20}", a.name()));
    }
    table.push('\n');
    for path in files {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let inst = match InstanceFile::load(&path) {
            Ok(f) => f.instance,
            Err(e) => {
                table.push_str(&format!("{name:<24} unreadable: {e}\n"));
                continue;
            }
        };
        let oracle = run_algorithm(&inst, Algorithm::Oracle, &opts)
            .ok()
            .map(|(s, _)| s.value);
        let oracle_cell = oracle.map_or("-".to_string(), |v| v.to_string());
        table.push_str(&format!(
            "{name:<24} {:>4} {:>4} {:>3} {oracle_cell:>7}",
            inst.m(),
            inst.n(),
            inst.k
        ));
        for &a in &args.algos {
            let cell = match run_algorithm(&inst, a, &opts) {
                Ok((s, _)) => {
                    let ratio = oracle.map(|o| {
                        if o == 0 {
                            1.0
                        } else {
                            s.value as f64 / o as f64
                        }
                    });
                    let ratio_txt = ratio.map_or("-".to_string(), |r| format!("{r:.3}"));
                    plot.push_str(&format!(
                        "{name},{},{},{},{oracle_cell},{ratio_txt}\n",
                        inst.k,
                        a.name(),
                        s.value
                    ));
                    format!("{} ({ratio_txt})", s.value)
                }
                Err(_) => "n/a".to_string(),
            };
            table.push_str(&format!(" {cell:>20}"));
        }
        table.push('\n');
    }
    out.write_all(table.as_bytes())?;
    if let Some(p) = &args.plot {
        fs::write(p, plot)?;
    }
    Ok(())
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Gen { kind } => gen(kind, out),
        Command::Solve(args) => solve(args, out),
        Command::Verify { instance, record } => verify(&instance, &record, out),
        Command::Bench(args) => bench(args, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs the CLI on the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_forms() {
        assert_eq!(parse_budget("4k", 3).unwrap(), 12);
        assert_eq!(parse_budget("k", 3).unwrap(), 3);
        assert_eq!(parse_budget("7", 3).unwrap(), 7);
        assert!(parse_budget("x", 3).is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run_with(["maxexp", "solve"], &mut o, &mut e), 1);
        assert_eq!(run_with(["maxexp", "--help"], &mut o, &mut e), 0);
    }
}
