//! Benchmark manifests and their JSON-lines reports.
//!
//! A manifest lists one instance per line; `#` starts a comment.
//!
//! ```text
//! drepl 3
//! qrepl 1
//! named petersen
//! subcubic 40 n2=10 seed=3
//! cubic 20 seed=1
//! bridged 8,10,6 seed=2
//! file graphs/example.txt
//! ```

use std::path::{Path, PathBuf};
use std::time::Instant;

use num::{BigInt, BigRational, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::connectivity::is_two_connected;
use crate::generators::{self, named};
use crate::graph::Graph;
use crate::io::parse_graph;
use crate::oracle::{tsp_bruteforce, verify_walk, DEFAULT_MULTIGRAPH_LIMIT};
use crate::walk::{approximate_cubic_tsp, solve_subcubic, subcubic_bound, TspWalk};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("manifest line {line}: {message}")]
pub struct ManifestError {
    pub line: usize,
    pub message: String,
}

/// Where an instance comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Drepl(usize),
    Qrepl(usize),
    Named(String),
    Subcubic { n: usize, n2: usize, seed: u64 },
    Cubic { n: usize, seed: u64 },
    Bridged { blocks: Vec<usize>, seed: u64 },
    File(PathBuf),
}

pub const NAMED: [&str; 8] = [
    "k4",
    "k23",
    "k33",
    "prism",
    "cube",
    "petersen",
    "theta-example",
    "two-diamonds",
];

/// Builds a named graph; `cycle-<n>` gives the cycle on `n` vertices.
pub fn named_graph(name: &str) -> Option<Graph> {
    Some(match name {
        "k4" => named::k4(),
        "k23" => named::k23(),
        "k33" => named::k33(),
        "prism" => named::prism(),
        "cube" => named::cube(),
        "petersen" => named::petersen(),
        "theta-example" => named::theta_cycle_example(),
        "two-diamonds" => named::two_diamonds(),
        _ => {
            let n: usize = name.strip_prefix("cycle-")?.parse().ok()?;
            if n < 3 {
                return None;
            }
            named::cycle(n)
        }
    })
}

impl Source {
    pub fn build(&self) -> Result<Graph, String> {
        match self {
            Source::Drepl(t) => Ok(generators::family_drepl(*t)),
            Source::Qrepl(t) => Ok(generators::family_qrepl(*t)),
            Source::Named(name) => named_graph(name).ok_or_else(|| format!("unknown graph `{name}`")),
            Source::Subcubic { n, n2, seed } => generators::random_subcubic(*n, *n2, *seed).map_err(|e| e.to_string()),
            Source::Cubic { n, seed } => {
                generators::random_cubic(*n, &mut ChaCha8Rng::seed_from_u64(*seed)).map_err(|e| e.to_string())
            }
            Source::Bridged { blocks, seed } => {
                generators::random_bridged_cubic(blocks, *seed).map_err(|e| e.to_string())
            }
            Source::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Source::Drepl(t) => format!("drepl {t}"),
            Source::Qrepl(t) => format!("qrepl {t}"),
            Source::Named(name) => format!("named {name}"),
            Source::Subcubic { n, n2, seed } => format!("subcubic {n} n2={n2} seed={seed}"),
            Source::Cubic { n, seed } => format!("cubic {n} seed={seed}"),
            Source::Bridged { blocks, seed } => {
                let b: Vec<String> = blocks.iter().map(|s| s.to_string()).collect();
                format!("bridged {} seed={seed}", b.join(","))
            }
            Source::File(path) => format!("file {}", path.display()),
        }
    }
}

/// Parses a manifest; relative file paths are resolved against `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<Source>, ManifestError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| ManifestError { line, message };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let (kind, arg) = match tokens.as_slice() {
            [kind, arg, ..] => (*kind, *arg),
            _ => return Err(err(format!("expected `<family> <argument>`, found `{body}`"))),
        };
        let mut seed = 0u64;
        let mut n2 = 0usize;
        for opt in &tokens[2..] {
            let (key, value) = opt
                .split_once('=')
                .ok_or_else(|| err(format!("option `{opt}` is not key=value")))?;
            let bad = || err(format!("bad value for `{key}`: `{value}`"));
            match key {
                "seed" => seed = value.parse().map_err(|_| bad())?,
                "n2" => n2 = value.parse().map_err(|_| bad())?,
                _ => return Err(err(format!("unknown option `{key}`"))),
            }
        }
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("`{s}` is not a non-negative integer")))
        };
        out.push(match kind {
            "drepl" => Source::Drepl(int(arg)?),
            "qrepl" => Source::Qrepl(int(arg)?),
            "named" => Source::Named(arg.to_string()),
            "subcubic" => Source::Subcubic { n: int(arg)?, n2, seed },
            "cubic" => Source::Cubic { n: int(arg)?, seed },
            "bridged" => Source::Bridged {
                blocks: arg.split(',').map(int).collect::<Result<_, _>>()?,
                seed,
            },
            "file" => Source::File(base.join(arg)),
            _ => return Err(err(format!("unknown family `{kind}`"))),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    /// Instances with at most this many vertices are also solved exactly.
    pub oracle_limit: usize,
    pub timings: bool,
    pub jobs: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            oracle_limit: 12,
            timings: false,
            jobs: 1,
        }
    }
}

/// One line of a bench report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_bound: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_tsp: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_decimal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solve_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_ms: Option<f64>,
}

impl BenchRecord {
    fn failed(instance: String, error: String) -> Self {
        BenchRecord {
            instance,
            n: None,
            n2: None,
            mode: None,
            length: None,
            bound: None,
            within_bound: None,
            steps: None,
            oracle_tsp: None,
            ratio: None,
            ratio_decimal: None,
            error: Some(error),
            solve_ms: None,
            oracle_ms: None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Outcome of solving one graph in the mode its shape calls for.
#[derive(Debug, Clone)]
pub struct Solved {
    pub mode: &'static str,
    pub walk: TspWalk,
    pub bound: BigRational,
    pub steps: usize,
}

/// 2-connected graphs go through the subcubic solver, other connected cubic
/// graphs through the cubic one.
pub fn solve_any(g: &Graph) -> Result<Solved, String> {
    if g.n() >= 3 && is_two_connected(g) {
        let s = solve_subcubic(g).map_err(|e| e.to_string())?;
        Ok(Solved {
            mode: "subcubic",
            walk: s.walk,
            bound: subcubic_bound(g),
            steps: s.trace.steps.len(),
        })
    } else {
        let s = approximate_cubic_tsp(g).map_err(|e| e.to_string())?;
        Ok(Solved {
            mode: "cubic",
            bound: s.bound(g.n()),
            walk: s.walk,
            steps: 0,
        })
    }
}

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

pub fn run_instance(source: &Source, opts: &BenchOptions) -> BenchRecord {
    let label = source.label();
    let g = match source.build() {
        Ok(g) => g,
        Err(e) => return BenchRecord::failed(label, e),
    };
    let start = Instant::now();
    let solved = solve_any(&g).and_then(|s| verify_walk(&g, &s.walk).map(|_| s).map_err(|f| f.to_string()));
    let solve_ms = millis(start);
    let mut record = BenchRecord::failed(label, String::new());
    record.n = Some(g.n());
    record.n2 = Some(g.n2());
    record.error = None;
    match solved {
        Ok(s) => {
            let len = s.walk.length();
            record.mode = Some(s.mode);
            record.length = Some(len);
            record.within_bound = Some(BigRational::from_integer(BigInt::from(len)) <= s.bound);
            record.bound = Some(s.bound.to_string());
            record.steps = Some(s.steps);
            if g.n() <= opts.oracle_limit.min(DEFAULT_MULTIGRAPH_LIMIT) {
                let start = Instant::now();
                match tsp_bruteforce(&g) {
                    Ok(opt) => {
                        let ratio = BigRational::new(BigInt::from(len), BigInt::from(opt));
                        record.oracle_tsp = Some(opt);
                        record.ratio_decimal = ratio.to_f64().map(|r| (r * 1e6).round() / 1e6);
                        record.ratio = Some(ratio.to_string());
                    }
                    Err(e) => record.error = Some(e.to_string()),
                }
                if opts.timings {
                    record.oracle_ms = Some(millis(start));
                }
            }
        }
        Err(e) => record.error = Some(e),
    }
    if opts.timings {
        record.solve_ms = Some(solve_ms);
    }
    record
}

/// Runs every instance, `opts.jobs` at a time; records come back in manifest
/// order.
pub fn run_bench(sources: &[Source], opts: &BenchOptions) -> Vec<BenchRecord> {
    let jobs = opts.jobs.max(1);
    let mut out: Vec<Option<BenchRecord>> = vec![None; sources.len()];
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots = std::sync::Mutex::new(&mut out);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let Some(source) = sources.get(i) else { break };
                let record = run_instance(source, opts);
                slots.lock().expect("no worker panicked")[i] = Some(record);
            });
        }
    });
    out.into_iter().map(|r| r.expect("every instance ran")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines() {
        let text = "# corpus\ndrepl 2\nsubcubic 20 n2=4 seed=7 # random\nbridged 8,6 seed=1\nnamed k4\nfile g.txt\n";
        let got = parse_manifest(text, Path::new("dir")).unwrap();
        assert_eq!(
            got,
            vec![
                Source::Drepl(2),
                Source::Subcubic { n: 20, n2: 4, seed: 7 },
                Source::Bridged {
                    blocks: vec![8, 6],
                    seed: 1
                },
                Source::Named("k4".into()),
                Source::File(PathBuf::from("dir/g.txt")),
            ]
        );
        assert_eq!(parse_manifest("cubic x\n", Path::new(".")).unwrap_err().line, 1);
        assert_eq!(parse_manifest("\n\nfoo 1\n", Path::new(".")).unwrap_err().line, 3);
        assert!(parse_manifest("cubic 10 speed=3\n", Path::new(".")).is_err());
    }

    #[test]
    fn records_follow_manifest_order_with_several_jobs() {
        let sources = vec![
            Source::Named("petersen".into()),
            Source::Drepl(1),
            Source::Named("nope".into()),
            Source::Subcubic { n: 30, n2: 6, seed: 2 },
        ];
        let one = run_bench(&sources, &BenchOptions::default());
        let four = run_bench(
            &sources,
            &BenchOptions {
                jobs: 4,
                ..BenchOptions::default()
            },
        );
        assert_eq!(one, four);
        assert_eq!(one[0].oracle_tsp, Some(11));
        assert_eq!(one[1].n, Some(8));
        assert!(one[2].error.as_deref().unwrap().contains("unknown graph"));
        assert_eq!(one[3].within_bound, Some(true));
        assert!(one[3].oracle_tsp.is_none());
    }
}
