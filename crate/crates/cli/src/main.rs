use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cubictsp::bench::{named_graph, parse_manifest, run_bench, BenchOptions, Source, NAMED};
use cubictsp::io::{parse_graph, to_dot, write_text};
use cubictsp::oracle::{min_eulerian_multigraph, tsp_bruteforce, verify_walk, visit_eulerian, OracleError};
use cubictsp::reduction::{classify_graph, reduce_to_terminal, ReductionError, ReductionTrace};
use cubictsp::walk::{approximate_cubic_tsp, solve_subcubic, subcubic_bound, TspWalk, WalkError};
use cubictsp::Graph;
use num::{BigInt, BigRational, ToPrimitive};

#[derive(Parser)]
#[command(name = "cubictsp", version, about = "TSP walks in subcubic and cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a TSP walk and check it against the length bound
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Also print the reduction trace as JSON
        #[arg(long)]
        trace: bool,
        /// Check that the walk is closed and visits every vertex
        #[arg(long)]
        verify: bool,
        /// Compare with the exact optimum (small graphs only)
        #[arg(long)]
        oracle: bool,
        /// Largest n handed to the exact optimum
        #[arg(long, default_value_t = 14)]
        limit: usize,
    },
    /// Exact values by exhaustive search
    Oracle {
        #[arg(value_enum)]
        quantity: Quantity,
        input: PathBuf,
        /// Largest n accepted
        #[arg(long, default_value_t = 14)]
        limit: usize,
    },
    /// Write a generated graph in the text format
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// t for drepl/qrepl, n for subcubic/cubic, comma-separated block
        /// sizes for bridged, a name for named
        param: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree-two vertices for subcubic
        #[arg(long, default_value_t = 0)]
        n2: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce to a basic or clean graph, writing one file set per step
    Reduce {
        input: PathBuf,
        #[arg(long, default_value = "steps")]
        out: PathBuf,
    },
    /// Solve every instance of a manifest; one JSON object per line
    Bench {
        manifest: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Add wall-clock timings (makes reports differ between runs)
        #[arg(long)]
        timings: bool,
        /// Largest n also solved exactly
        #[arg(long, default_value_t = 12)]
        oracle_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Subcubic,
    Cubic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Tsp,
    Minexc,
    /// Both exact routes, which must agree
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Drepl,
    Qrepl,
    Subcubic,
    Cubic,
    Bridged,
    Named,
}

/// Exit status classes.
enum Failure {
    Invalid(String),
    Precondition(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Precondition(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<WalkError> for Failure {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::NotConnected
            | WalkError::NotTwoConnected
            | WalkError::NotCubic
            | WalkError::Reduction(ReductionError::NotTwoConnected) => Failure::Precondition(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } | OracleError::NotConnected => Failure::Precondition(e.to_string()),
            OracleError::OracleMismatch { .. } => Failure::Internal(e.to_string()),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        WalkError::from(e).into()
    }
}

fn internal(e: impl Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn fraction(r: &BigRational) -> String {
    format!("{} ({:.6})", r, r.to_f64().unwrap_or(f64::NAN))
}

fn walk_line(w: &TspWalk) -> String {
    w.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn solve(input: &Path, mode: Mode, trace: bool, verify: bool, oracle: bool, limit: usize) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let cubic = match mode {
        Mode::Subcubic => false,
        Mode::Cubic => true,
        Mode::Auto => g.is_cubic(),
    };
    let (walk, bound, traces): (TspWalk, BigRational, Vec<ReductionTrace>) = if cubic {
        let s = approximate_cubic_tsp(&g)?;
        println!("mode cubic");
        println!("n {}", g.n());
        println!("n2 {}", s.n2);
        println!("bridges {}", s.bridges);
        println!("lower_bound {}", s.lower_bound(g.n()));
        (s.walk.clone(), s.bound(g.n()), s.traces)
    } else {
        let s = solve_subcubic(&g)?;
        println!("mode subcubic");
        println!("n {}", g.n());
        println!("n2 {}", g.n2());
        println!("steps {}", s.trace.steps.len());
        (s.walk, subcubic_bound(&g), vec![s.trace])
    };
    println!("length {}", walk.length());
    println!("bound {}", fraction(&bound));
    println!("walk {}", walk_line(&walk));
    if verify {
        verify_walk(&g, &walk).map_err(internal)?;
        println!("verify ok");
    }
    if oracle {
        if g.n() > limit {
            return Err(Failure::Precondition(format!(
                "n = {} exceeds the oracle limit {limit}",
                g.n()
            )));
        }
        let opt = tsp_bruteforce(&g)?;
        println!("oracle_tsp {opt}");
        println!(
            "ratio {}",
            fraction(&BigRational::new(BigInt::from(walk.length()), BigInt::from(opt)))
        );
    }
    if trace {
        let json: Vec<_> = traces.iter().map(|t| t.to_json()).collect();
        let value = if cubic {
            serde_json::Value::Array(json)
        } else {
            json.into_iter().next().unwrap_or_default()
        };
        println!("trace {}", serde_json::to_string_pretty(&value).map_err(internal)?);
    }
    Ok(())
}

fn oracle(quantity: Quantity, input: &Path, limit: usize) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let minexc = || -> Result<usize, OracleError> {
        let mut best = usize::MAX;
        visit_eulerian(&g, limit, |f| best = best.min(f.excess()))?;
        Ok(best)
    };
    if g.n() > limit {
        return Err(OracleError::TooLarge { n: g.n(), limit }.into());
    }
    match quantity {
        Quantity::Tsp => println!("{}", tsp_bruteforce(&g)?),
        Quantity::Minexc => println!("{}", minexc()?),
        Quantity::Check => {
            let excess_route = g.n() - 2 + minexc()?;
            let multigraph_route = min_eulerian_multigraph(&g)?;
            println!("excess_route {excess_route}");
            println!("multigraph_route {multigraph_route}");
            if excess_route != multigraph_route {
                return Err(OracleError::OracleMismatch {
                    excess_route,
                    multigraph_route,
                }
                .into());
            }
        }
    }
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| internal(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(family: Family, param: &str, seed: u64, n2: usize, out: Option<&Path>) -> Result<(), Failure> {
    let int = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Failure::Invalid(format!("`{s}` is not a non-negative integer")))
    };
    let source = match family {
        Family::Drepl => Source::Drepl(int(param)?),
        Family::Qrepl => Source::Qrepl(int(param)?),
        Family::Subcubic => Source::Subcubic {
            n: int(param)?,
            n2,
            seed,
        },
        Family::Cubic => Source::Cubic { n: int(param)?, seed },
        Family::Bridged => Source::Bridged {
            blocks: param.split(',').map(int).collect::<Result<_, _>>()?,
            seed,
        },
        Family::Named => {
            if named_graph(param).is_none() {
                return Err(Failure::Invalid(format!(
                    "unknown graph `{param}`; known: {}, cycle-<n>",
                    NAMED.join(", ")
                )));
            }
            Source::Named(param.to_string())
        }
    };
    let g = source.build().map_err(Failure::Precondition)?;
    emit(out, &format!("# {}\n{}", source.label(), write_text(&g)))
}

fn reduce(input: &Path, out: &Path) -> Result<(), Failure> {
    let g = read_graph(input)?;
    let trace = reduce_to_terminal(&g)?;
    std::fs::create_dir_all(out).map_err(|e| internal(format!("{}: {e}", out.display())))?;
    let write = |name: String, text: String| {
        let path = out.join(name);
        std::fs::write(&path, text).map_err(|e| internal(format!("{}: {e}", path.display())))
    };
    for (i, step) in trace.steps.iter().enumerate() {
        let mut marked = step.witness.cycle.clone();
        marked.extend(step.witness.second.iter().flatten());
        write(
            format!("step-{i:03}-before.dot"),
            to_dot(&step.before, &format!("step {i} before"), &marked),
        )?;
        write(
            format!("step-{i:03}-after.dot"),
            to_dot(&step.after, &format!("step {i} after"), &[]),
        )?;
        write(format!("step-{i:03}-after.txt"), write_text(&step.after))?;
        println!(
            "step {i} {} delta {} n {} -> {} ({})",
            step.rule,
            step.delta,
            step.before.n(),
            step.after.n(),
            step.case_tag
        );
    }
    write("terminal.txt".into(), write_text(&trace.terminal))?;
    write("terminal.dot".into(), to_dot(&trace.terminal, "terminal", &[]))?;
    write(
        "trace.json".into(),
        serde_json::to_string_pretty(&trace.to_json()).map_err(internal)?,
    )?;
    let class = classify_graph(&trace.terminal)?;
    println!(
        "terminal {} n {} n2 {}",
        serde_json::to_value(class).map_err(internal)?.as_str().unwrap_or("?"),
        trace.terminal.n(),
        trace.terminal.n2()
    );
    Ok(())
}

fn bench(manifest: &Path, opts: BenchOptions, out: Option<&Path>) -> Result<(), Failure> {
    let text =
        std::fs::read_to_string(manifest).map_err(|e| Failure::Invalid(format!("{}: {e}", manifest.display())))?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let sources = parse_manifest(&text, base).map_err(|e| Failure::Invalid(e.to_string()))?;
    let records = run_bench(&sources, &opts);
    let report: String = records.iter().map(|r| r.to_json_line() + "\n").collect();
    emit(out, &report)?;
    let bad = records
        .iter()
        .filter(|r| r.error.is_some() || r.within_bound == Some(false))
        .count();
    if bad > 0 {
        return Err(Failure::Internal(format!(
            "{bad} of {} instances failed",
            records.len()
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            input,
            mode,
            trace,
            verify,
            oracle: with_oracle,
            limit,
        } => solve(&input, mode, trace, verify, with_oracle, limit),
        Command::Oracle { quantity, input, limit } => oracle(quantity, &input, limit),
        Command::Gen {
            family,
            param,
            seed,
            n2,
            out,
        } => gen(family, &param, seed, n2, out.as_deref()),
        Command::Reduce { input, out } => reduce(&input, &out),
        Command::Bench {
            manifest,
            jobs,
            timings,
            oracle_limit,
            out,
        } => bench(
            &manifest,
            BenchOptions {
                oracle_limit,
                timings,
                jobs,
            },
            out.as_deref(),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
