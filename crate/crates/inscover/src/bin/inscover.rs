//! Command-line surface: solve, verify, construct, bounds, diagnose.
//!
//! Exit codes: 0 success/verified, 1 verification failed (witness printed),
//! 2 usage error, 3 budget exhausted (best-known printed).

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use inscover::bounds::{bounds_table, parse_decimal_rational, round_down_1e7, Rounding};
use inscover::construct::{
    code_to_turan, half_cube_code, mantel_system, mod_lift, random_lift, turan43_system,
    turan_to_code,
};
use inscover::cover::{verify_cover, verify_turan, CoverMode, CoverSolution, Coverage};
use inscover::diagnostics::{
    atom_profile, check_pairwise_intersections, check_residue_bound, fuzz,
};
use inscover::fileio::{read_code, read_system, write_code, write_system};
use inscover::solve::{
    enumerate_optimal, greedy_solve, max_packing, min_cover, min_turan, packing_conflict,
    SolveOptions, SolveResult,
};
use inscover::words::CanonicalGroup;
use inscover::{Code, Error, TuranSystem};

const EXIT_OK: i32 = 0;
const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "inscover",
    about = "Covering insertion codes and Turán systems: solve, verify, construct, bound, diagnose"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact or greedy minimization / maximization with certificates
    Solve {
        #[command(subcommand)]
        what: SolveCmd,
    },
    /// Check a code or system file against its covering (or packing) claim
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Generate the named constructions and conversions
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Certified density bounds per r
    Bounds(BoundsArgs),
    /// Exact rational diagnostics
    Diagnose {
        #[command(subcommand)]
        what: DiagnoseCmd,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    /// Symbol renamings only
    #[default]
    Symbols,
    /// Symbol renamings plus coordinate reversal
    SymbolsReversal,
}

impl From<GroupArg> for CanonicalGroup {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Symbols => CanonicalGroup::SymbolPermutations,
            GroupArg::SymbolsReversal => CanonicalGroup::SymbolPermutationsAndReversal,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    r: u32,
    /// Prove the exact optimum (default)
    #[arg(long)]
    exact: bool,
    /// Greedy baseline only
    #[arg(long, conflicts_with = "exact")]
    greedy: bool,
    /// Also enumerate all optimal codes up to equivalence (cover only)
    #[arg(long)]
    all_optimal: bool,
    /// Equivalence group for --all-optimal
    #[arg(long, value_enum, default_value_t)]
    group: GroupArg,
    /// Wall-clock budget in seconds
    #[arg(long, default_value_t = 300.0)]
    time_limit: f64,
    /// Worker count (falls back to INSCOVER_THREADS, then 1)
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PackingArgs {
    #[arg(long)]
    n: u32,
    /// Packing subsequence length; words have length r+1
    #[arg(long)]
    r: u32,
    /// Optional, must equal r+1 when given
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 300.0)]
    time_limit: f64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum SolveCmd {
    Cover(SolveArgs),
    Turan(SolveArgs),
    Packing(PackingArgs),
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Overrides the k recorded in the file header
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    Cover(VerifyArgs),
    Turan(VerifyArgs),
    /// Pairwise-disjoint deletion balls; the subsequence length is header k − 1
    Packing { file: PathBuf },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Lift a code over [n] to [m] through y ↦ y mod n
    Lift {
        #[arg(long, name = "in")]
        input: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Preimage under a seeded uniformly random alphabet map
    RandomLift {
        #[arg(long, name = "in")]
        input: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All orderings of each member plus the non-injective words
    TuranToCode {
        #[arg(long, name = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Supports of the injective words of a symmetric covering code
    CodeToTuran {
        #[arg(long, name = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Close a code under coordinate permutations
    Symmetrize {
        #[arg(long, name = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-part (n,3,2)-system
    Mantel {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three-part (n,4,3)-system of density tending to 4/9
    Turan43 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-block single-insertion code over [n], r = 2
    HalfCube {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    r: u32,
    /// Adds the volume bound at this alphabet size
    #[arg(long)]
    n: Option<u32>,
    /// Known lower bound on the limiting symmetric density, as a decimal
    #[arg(long)]
    t_lower: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum DiagnoseCmd {
    /// Kernel/petal/residue decomposition of a covering code file (k = r+1)
    Atoms { file: PathBuf },
    /// Seeded fuzz of the tree (and star) union inequalities
    Bonferroni {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Run the star-strengthened form instead of random trees
        #[arg(long)]
        star: bool,
    },
    /// Pairwise deletion-set intersections versus the squared density
    Intersections { file: PathBuf },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout with status 0 via this path
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Solve { what } => run_solve(what),
        Command::Verify { what } => run_verify(what),
        Command::Construct { what } => run_construct(what),
        Command::Bounds(args) => run_bounds(args),
        Command::Diagnose { what } => run_diagnose(what),
    }
}

fn thread_count(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("INSCOVER_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(1)
    .max(1)
}

fn solve_options(time_limit: f64, threads: Option<usize>) -> SolveOptions {
    SolveOptions {
        time_budget: Duration::from_secs_f64(time_limit.max(0.0)),
        threads: thread_count(threads),
        ..SolveOptions::default()
    }
}

fn solution_json(solution: &CoverSolution, k: u32) -> serde_json::Value {
    match solution {
        CoverSolution::Code(code) => code_json(code, k),
        CoverSolution::System(system) => system_json(system, k),
    }
}

fn code_json(code: &Code, k: u32) -> serde_json::Value {
    json!({
        "n": code.alphabet_size(),
        "k": k,
        "r": code.word_length(),
        "words": code.words().map(|w| w.symbols().to_vec()).collect::<Vec<_>>(),
    })
}

fn system_json(system: &TuranSystem, k: u32) -> serde_json::Value {
    json!({
        "n": system.ground_size(),
        "k": k,
        "r": system.member_size(),
        "sets": system.sets().cloned().collect::<Vec<_>>(),
    })
}

fn print_solution_body(solution: &CoverSolution) {
    match solution {
        CoverSolution::Code(code) => {
            for w in code.words() {
                println!("{w}");
            }
        }
        CoverSolution::System(system) => {
            for s in system.sets() {
                let line: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                println!("{}", line.join(" "));
            }
        }
    }
}

fn write_solution(solution: &CoverSolution, k: u32, out: &Option<PathBuf>) -> Result<(), Error> {
    if let Some(path) = out {
        match solution {
            CoverSolution::Code(code) => write_code(path, code, k)?,
            CoverSolution::System(system) => write_system(path, system, k)?,
        }
    }
    Ok(())
}

struct SolveReport<'a> {
    label: String,
    mode: &'a str,
    n: u32,
    k: u32,
    r: u32,
    method: &'a str,
    opts: SolveOptions,
}

fn emit_solve(
    report: &SolveReport<'_>,
    result: &SolveResult,
    extra: Option<serde_json::Value>,
    as_json: bool,
) {
    let status = if result.certificate.proved_optimal {
        "proved_optimal"
    } else {
        "best_known"
    };
    if as_json {
        let mut solution = solution_json(&result.solution, report.k);
        if let Some(extra) = extra {
            solution["classes"] = extra;
        }
        let value = json!({
            "params": {
                "mode": report.mode,
                "n": report.n,
                "k": report.k,
                "r": report.r,
                "method": report.method,
                "time_limit": report.opts.time_budget.as_secs_f64(),
                "threads": report.opts.threads,
            },
            "optimum": result.optimum,
            "status": status,
            "solution": solution,
            "certificate": {
                "proved_optimal": result.certificate.proved_optimal,
                "bound": result.certificate.bound,
            },
            "stats": {
                "nodes": result.stats.nodes,
                "elapsed_secs": result.stats.elapsed.as_secs_f64(),
            },
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
    } else {
        println!("{} = {} ({})", report.label, result.optimum, status);
        println!(
            "bound: {}, nodes: {}, elapsed: {:.3}s",
            result.certificate.bound,
            result.stats.nodes,
            result.stats.elapsed.as_secs_f64()
        );
        println!("solution ({} members):", result.solution.len());
        print_solution_body(&result.solution);
        if let Some(extra) = extra {
            println!("optimal classes: {extra}");
        }
    }
}

fn run_solve(cmd: SolveCmd) -> Result<i32, Error> {
    match cmd {
        SolveCmd::Cover(args) | SolveCmd::Turan(args) if args.greedy && args.all_optimal => {
            Err(Error::InvalidParameter(
                "--all-optimal requires an exact solve".into(),
            ))
        }
        SolveCmd::Cover(args) => {
            let opts = solve_options(args.time_limit, args.threads);
            let result = if args.greedy {
                greedy_solve(args.n, args.k, args.r, CoverMode::Sequence)?
            } else {
                min_cover(args.n, args.k, args.r, &opts)?
            };
            let classes = if args.all_optimal {
                let reps = enumerate_optimal(args.n, args.k, args.r, args.group.into(), &opts)?;
                Some(json!(reps
                    .iter()
                    .map(|c| c.words().map(|w| w.symbols().to_vec()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()))
            } else {
                None
            };
            let report = SolveReport {
                label: format!("S({}, {}, {})", args.n, args.k, args.r),
                mode: "cover",
                n: args.n,
                k: args.k,
                r: args.r,
                method: if args.greedy { "greedy" } else { "exact" },
                opts,
            };
            emit_solve(&report, &result, classes, args.json);
            write_solution(&result.solution, args.k, &args.out)?;
            Ok(budget_exit(&result, args.greedy))
        }
        SolveCmd::Turan(args) => {
            if args.all_optimal {
                return Err(Error::InvalidParameter(
                    "--all-optimal is supported for cover solves only".into(),
                ));
            }
            let opts = solve_options(args.time_limit, args.threads);
            let result = if args.greedy {
                greedy_solve(args.n, args.k, args.r, CoverMode::Turan)?
            } else {
                min_turan(args.n, args.k, args.r, &opts)?
            };
            let report = SolveReport {
                label: format!("T({}, {}, {})", args.n, args.k, args.r),
                mode: "turan",
                n: args.n,
                k: args.k,
                r: args.r,
                method: if args.greedy { "greedy" } else { "exact" },
                opts,
            };
            emit_solve(&report, &result, None, args.json);
            write_solution(&result.solution, args.k, &args.out)?;
            Ok(budget_exit(&result, args.greedy))
        }
        SolveCmd::Packing(args) => {
            if let Some(k) = args.k {
                if k != args.r + 1 {
                    return Err(Error::InvalidParameter(format!(
                        "packing is defined for k = r+1; got k={k}, r={}",
                        args.r
                    )));
                }
            }
            let opts = solve_options(args.time_limit, args.threads);
            let result = max_packing(args.n, args.r, &opts)?;
            let report = SolveReport {
                label: format!("P({}, {}, {})", args.n, args.r + 1, args.r),
                mode: "packing",
                n: args.n,
                k: args.r + 1,
                r: args.r,
                method: "exact",
                opts,
            };
            emit_solve(&report, &result, None, args.json);
            if let Some(path) = &args.out {
                if let CoverSolution::Code(code) = &result.solution {
                    // header k = word length; the packing parameter is k − 1
                    write_code(path, code, code.word_length())?;
                }
            }
            Ok(budget_exit(&result, false))
        }
    }
}

fn budget_exit(result: &SolveResult, greedy: bool) -> i32 {
    if greedy || result.certificate.proved_optimal {
        EXIT_OK
    } else {
        EXIT_BUDGET
    }
}

fn run_verify(cmd: VerifyCmd) -> Result<i32, Error> {
    match cmd {
        VerifyCmd::Cover(args) => {
            let (code, header) = read_code(&args.file)?;
            let k = args.k.unwrap_or(header.k);
            match verify_cover(&code, k)? {
                Coverage::Covered => {
                    println!("covered: every word of [{}]^{k} contains a codeword", header.n);
                    Ok(EXIT_OK)
                }
                Coverage::Uncovered { witness } => {
                    println!("uncovered witness: {witness}");
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        }
        VerifyCmd::Turan(args) => {
            let (system, header) = read_system(&args.file)?;
            let k = args.k.unwrap_or(header.k);
            match verify_turan(&system, k)? {
                Coverage::Covered => {
                    println!(
                        "covered: every {k}-subset of [{}] contains a member",
                        header.n
                    );
                    Ok(EXIT_OK)
                }
                Coverage::Uncovered { witness } => {
                    let line: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                    println!("uncovered witness: {}", line.join(" "));
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        }
        VerifyCmd::Packing { file } => {
            let (code, header) = read_code(&file)?;
            if header.k < 2 || header.k != header.r {
                return Err(Error::InvalidParameter(format!(
                    "packing files carry k = r = word length; got k={} r={}",
                    header.k, header.r
                )));
            }
            let sub = header.k - 1;
            match packing_conflict(&code, sub)? {
                None => {
                    println!("packing: deletion balls at length {sub} are pairwise disjoint");
                    Ok(EXIT_OK)
                }
                Some((a, b)) => {
                    println!("conflict: {a} and {b} share a length-{sub} subsequence");
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        }
    }
}

fn emit_code(code: &Code, k: u32, out: &Option<PathBuf>) -> Result<i32, Error> {
    match out {
        Some(path) => write_code(path, code, k)?,
        None => {
            println!("n={} k={} r={}", code.alphabet_size(), k, code.word_length());
            for w in code.words() {
                println!("{w}");
            }
        }
    }
    Ok(EXIT_OK)
}

fn emit_system(system: &TuranSystem, k: u32, out: &Option<PathBuf>) -> Result<i32, Error> {
    match out {
        Some(path) => write_system(path, system, k)?,
        None => {
            println!(
                "n={} k={} r={}",
                system.ground_size(),
                k,
                system.member_size()
            );
            for s in system.sets() {
                let line: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                println!("{}", line.join(" "));
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_construct(cmd: ConstructCmd) -> Result<i32, Error> {
    match cmd {
        ConstructCmd::Lift { input, m, out } => {
            let (code, header) = read_code(&input)?;
            let lifted = mod_lift(&code, m)?;
            emit_code(&lifted, header.k, &out)
        }
        ConstructCmd::RandomLift { input, n, seed, out } => {
            let (code, header) = read_code(&input)?;
            let lift = random_lift(&code, n, seed)?;
            let table: Vec<String> = lift.map.table().iter().map(|v| v.to_string()).collect();
            eprintln!("sampled map [{}] -> [{}]: {}", n, header.n, table.join(" "));
            emit_code(&lift.code, header.k, &out)
        }
        ConstructCmd::TuranToCode { input, out } => {
            let (system, header) = read_system(&input)?;
            let code = turan_to_code(&system, header.k)?;
            emit_code(&code, header.k, &out)
        }
        ConstructCmd::CodeToTuran { input, out } => {
            let (code, header) = read_code(&input)?;
            let system = code_to_turan(&code, header.k)?;
            emit_system(&system, header.k, &out)
        }
        ConstructCmd::Symmetrize { input, out } => {
            let (code, header) = read_code(&input)?;
            emit_code(&symmetrize_cli(&code), header.k, &out)
        }
        ConstructCmd::Mantel { n, out } => emit_system(&mantel_system(n)?, 3, &out),
        ConstructCmd::Turan43 { n, out } => emit_system(&turan43_system(n)?, 4, &out),
        ConstructCmd::HalfCube { n, out } => emit_code(&half_cube_code(n)?, 3, &out),
    }
}

fn run_bounds(args: BoundsArgs) -> Result<i32, Error> {
    let mut known = std::collections::BTreeMap::new();
    if let Some(text) = &args.t_lower {
        known.insert(args.r, parse_decimal_rational(text)?);
    }
    let reports = bounds_table(&[args.r], &known, args.n)?;
    let report = &reports[0];
    if args.json {
        let entry_json = |e: &inscover::bounds::BoundEntry| {
            json!({
                "name": e.name,
                "value": e.display,
                "exact": e.value.to_string(),
                "rounding": match e.rounding { Rounding::Down => "down", Rounding::Up => "up" },
                "asymptotic": e.asymptotic,
                "note": e.note,
            })
        };
        let value = json!({
            "r": report.r,
            "n": report.n,
            "lower": report.lower_bounds.iter().map(entry_json).collect::<Vec<_>>(),
            "upper": report.upper_bounds.iter().map(entry_json).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
    } else {
        println!("density bounds for single-insertion covers, r = {}", report.r);
        println!("lower bounds (rounded down):");
        for e in &report.lower_bounds {
            let tag = if e.asymptotic { " [asymptotic]" } else { "" };
            let note = e.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default();
            println!("  {:<24} {:.7}{}{}", e.name, e.display, tag, note);
        }
        println!("upper bounds (rounded up):");
        for e in &report.upper_bounds {
            let tag = if e.asymptotic { " [asymptotic]" } else { "" };
            let note = e.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default();
            println!("  {:<24} {:.7}{}{}", e.name, e.display, tag, note);
        }
    }
    Ok(EXIT_OK)
}

fn run_diagnose(cmd: DiagnoseCmd) -> Result<i32, Error> {
    match cmd {
        DiagnoseCmd::Atoms { file } => {
            let (code, header) = read_code(&file)?;
            if header.k != header.r + 1 {
                return Err(Error::InvalidParameter(format!(
                    "atom decomposition needs k = r+1, header has k={} r={}",
                    header.k, header.r
                )));
            }
            let profile = match atom_profile(&code) {
                Ok(p) => p,
                Err(Error::NotCovering { witness }) => {
                    println!("not a covering code; uncovered witness: {witness}");
                    return Ok(EXIT_VERIFY_FAILED);
                }
                Err(e) => return Err(e),
            };
            println!(
                "density lambda(C) = {} ({:.7})",
                profile.code_density,
                round_down_1e7(&profile.code_density)
            );
            println!("kernel  lambda(K) = {}", profile.kernel);
            for (i, p) in profile.petals.iter().enumerate() {
                println!("petal   lambda(P_{}) = {}", i + 1, p);
            }
            println!("residue lambda(R) = {}", profile.residue);
            for (j, rj) in profile.residue_complements.iter().enumerate() {
                println!("        lambda(R_{}) = {}", j + 1, rj);
            }
            println!("multiplicity histogram: {:?}", profile.histogram);
            let residue = check_residue_bound(&profile);
            println!(
                "residue bound lambda(R) <= r(r+1)(1-l)(l-1/r): {} <= {} -> {}",
                residue.lhs,
                residue.rhs,
                if residue.holds { "holds" } else { "VIOLATED" }
            );
            Ok(if residue.holds { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        DiagnoseCmd::Bonferroni { trials, seed, star } => {
            let summary = if star {
                fuzz::run_star_trials(trials, seed)
            } else {
                fuzz::run_bonferroni_trials(trials, seed)
            };
            if summary.all_hold() {
                println!(
                    "{} trials, inequality holds in every trial (seed {seed})",
                    summary.trials
                );
                Ok(EXIT_OK)
            } else {
                println!(
                    "VIOLATION in {} of {} trials:",
                    summary.violations.len(),
                    summary.trials
                );
                for v in &summary.violations {
                    println!("{v}");
                }
                Ok(EXIT_VERIFY_FAILED)
            }
        }
        DiagnoseCmd::Intersections { file } => {
            let (code, _) = read_code(&file)?;
            let report = check_pairwise_intersections(&code)?;
            println!("lambda(C)^2 = {}", report.lambda_squared);
            for p in &report.pairs {
                let status = if p.measure >= report.lambda_squared {
                    "ok"
                } else {
                    "BELOW"
                };
                let kind = if p.adjacent { "adjacent" } else { "non-adjacent" };
                println!(
                    "lambda(C_{} ∩ C_{}) = {} [{kind}] {status}",
                    p.i + 1,
                    p.j + 1,
                    p.measure
                );
            }
            match &report.min_ratio {
                Some(ratio) => println!("min ratio to lambda^2: {ratio}"),
                None => println!("empty code: all intersections trivially hold"),
            }
            Ok(if report.holds { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}
