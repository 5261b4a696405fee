mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::load_fixtures;
use cubictsp::bench::{run_bench, BenchOptions, Source};
use cubictsp::connectivity::is_two_connected;
use cubictsp::generators::{family_drepl, family_qrepl, named, random_bridged_cubic, random_cubic, random_subcubic};
use cubictsp::graph::suppress_degree_two;
use cubictsp::matching::{decompose_uniform, eulerian_family};
use cubictsp::oracle::{
    min_eulerian_multigraph, minexc_bruteforce, tsp_bruteforce, verify_decomposition, verify_step, verify_walk,
};
use cubictsp::reduction::{reduce_to_terminal, RuleId};
use cubictsp::walk::{approximate_cubic_tsp, solve_subcubic, subcubic_bound};
use cubictsp::Graph;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    ensure(start.elapsed() <= budget, || {
        format!("took {:.1?}, budget {budget:?}", start.elapsed())
    })
}

/// Random 2-connected subcubic instance with `n <= 60` and `n2 <= 20`.
fn random_instance(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n2 = rng.gen_range(0..=20);
    let cubic = 2 * rng.gen_range(2..=(60 - n2) / 2);
    random_subcubic(cubic + n2, n2, seed).expect("feasible sizes")
}

fn walk_within_bound(label: &str, g: &Graph) -> Result<(), String> {
    let s = solve_subcubic(g).map_err(|e| format!("{label}: {e}"))?;
    verify_walk(g, &s.walk).map_err(|e| format!("{label}: {e}"))?;
    let length = BigRational::from_integer(BigInt::from(s.walk.length()));
    ensure(length <= subcubic_bound(g), || {
        format!("{label}: length {} above {}", s.walk.length(), subcubic_bound(g))
    })
}

fn bound_on_corpus() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for t in 0..=5 {
        walk_within_bound(&format!("drepl {t}"), &family_drepl(t))?;
        count += 1;
    }
    for t in 0..=3 {
        walk_within_bound(&format!("qrepl {t}"), &family_qrepl(t))?;
        count += 1;
    }
    for seed in 0..200 {
        let g = random_instance(seed);
        ensure(g.n() <= 60 && g.n2() <= 20 && is_two_connected(&g), || {
            format!("seed {seed}: bad instance")
        })?;
        walk_within_bound(&format!("random seed {seed}"), &g)?;
        count += 1;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "{count} instances within 9n/7 + 2n2/7 - 1 in {:.1?}",
        start.elapsed()
    ))
}

fn small_corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("k4".into(), named::k4()),
        ("k23".into(), named::k23()),
        ("k33".into(), named::k33()),
        ("prism".into(), named::prism()),
        ("cube".into(), named::cube()),
        ("petersen".into(), named::petersen()),
        ("two-diamonds".into(), named::two_diamonds()),
    ];
    for n in 3..=12 {
        out.push((format!("cycle {n}"), named::cycle(n)));
    }
    for t in 0..=2 {
        out.push((format!("drepl {t}"), family_drepl(t)));
    }
    out.push(("qrepl 0".into(), family_qrepl(0)));
    for seed in 0..40 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let n2 = rng.gen_range(0..=4);
        let cubic = 2 * rng.gen_range(2..=(12 - n2) / 2);
        let g = random_subcubic(cubic + n2, n2, 1000 + seed).expect("feasible sizes");
        out.push((format!("subcubic seed {}", 1000 + seed), g));
    }
    out.push((
        "bridged 4,4".into(),
        random_bridged_cubic(&[4, 4], 7).expect("feasible"),
    ));
    out
}

fn oracle_routes_agree() -> Outcome {
    let corpus = small_corpus();
    for (label, g) in &corpus {
        let excess_route = g.n() - 2 + minexc_bruteforce(g).map_err(|e| format!("{label}: {e}"))?;
        let multigraph_route = min_eulerian_multigraph(g).map_err(|e| format!("{label}: {e}"))?;
        ensure(excess_route == multigraph_route, || {
            format!("{label}: excess route {excess_route}, multigraph route {multigraph_route}")
        })?;
    }
    Ok(format!("{} graphs with n <= 12, both routes equal", corpus.len()))
}

fn fixture_catalog() -> Outcome {
    let fixtures = load_fixtures();
    let covered: BTreeSet<RuleId> = fixtures.iter().map(|f| f.rule).collect();
    ensure(covered.len() == RuleId::ALL.len(), || {
        let missing: Vec<&str> = RuleId::ALL
            .iter()
            .filter(|r| !covered.contains(r))
            .map(|r| r.name())
            .collect();
        format!("no fixture for {missing:?}")
    })?;
    let mut lifts = 0;
    for f in &fixtures {
        let step =
            cubictsp::reduction::apply_rule(&f.graph, f.rule, &f.witness).map_err(|e| format!("{}: {e}", f.file))?;
        ensure(step.rule == f.rule && step.case_tag == f.case, || {
            format!("{}: applied as {} `{}`", f.file, step.rule, step.case_tag)
        })?;
        lifts += verify_step(&step, 10_000).map_err(|e| format!("{}: {e}", f.file))?;
    }
    Ok(format!(
        "{} fixtures over {} rules, {lifts} reduced subgraphs lifted",
        fixtures.len(),
        covered.len()
    ))
}

fn decomposition_on(label: &str, g: &Graph) -> Result<usize, String> {
    let fail = |e: &dyn std::fmt::Display| format!("{label}: {e}");
    let mg = suppress_degree_two(g).map_err(|e| fail(&e))?;
    let d = decompose_uniform(&mg).map_err(|e| fail(&e))?;
    verify_decomposition(&mg, &d).map_err(|e| fail(&e))?;
    let mut chi = vec![BigRational::zero(); mg.m()];
    for (m, a) in d.matchings.iter().zip(&d.coefficients) {
        for &e in &m.edges {
            chi[e] += a;
        }
    }
    ensure(chi.iter().all(|x| *x == ratio(1, 3)), || {
        format!("{label}: combination is not 1/3 everywhere")
    })?;
    let total: BigRational = d.coefficients.iter().sum();
    ensure(total.is_one(), || format!("{label}: coefficients sum to {total}"))?;
    ensure(d.matchings.len() <= g.n() / 2 + 2, || {
        format!("{label}: {} matchings", d.matchings.len())
    })?;
    let family = eulerian_family(g, &mg, &d).map_err(|e| fail(&e))?;
    for e in 0..g.m() {
        let p: BigRational = family
            .members
            .iter()
            .zip(&family.probabilities)
            .filter(|(f, _)| f.contains(e))
            .map(|(_, a)| a.clone())
            .sum();
        ensure(p == ratio(2, 3), || {
            format!("{label}: edge {e} used with probability {p}")
        })?;
    }
    Ok(d.matchings.len())
}

fn decompositions() -> Outcome {
    let mut graphs = vec![
        ("k4".to_string(), named::k4()),
        ("k33".into(), named::k33()),
        ("petersen".into(), named::petersen()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..20 {
        let n = 4 + 2 * (i % 11);
        graphs.push((
            format!("random cubic {i} (n={n})"),
            random_cubic(n, &mut rng).map_err(|e| e.to_string())?,
        ));
    }
    let mut largest = 0;
    for (label, g) in &graphs {
        largest = largest.max(decomposition_on(label, g)?);
    }
    Ok(format!("{} graphs exact, at most {largest} matchings", graphs.len()))
}

fn lower_bound_families() -> Outcome {
    let start = Instant::now();
    let mut previous = None;
    for t in 0..=2 {
        let g = family_drepl(t);
        let minexc = minexc_bruteforce(&g).map_err(|e| e.to_string())?;
        let expected = ratio(g.n() + g.n2(), 4) + BigRational::one();
        ensure(BigRational::from_integer(BigInt::from(minexc)) == expected, || {
            format!("drepl {t}: minexc {minexc}, expected {expected}")
        })?;
        if let Some(p) = previous {
            ensure(minexc == p + 1, || {
                format!("drepl {t}: increment {}", minexc as i64 - p as i64)
            })?;
        }
        previous = Some(minexc);
    }
    previous = None;
    for t in 0..=1 {
        let g = family_qrepl(t);
        let minexc = minexc_bruteforce(&g).map_err(|e| e.to_string())?;
        ensure(4 * minexc == g.n(), || {
            format!("qrepl {t}: minexc {minexc} for n = {}", g.n())
        })?;
        if let Some(p) = previous {
            ensure(minexc == p + 2, || {
                format!("qrepl {t}: increment {}", minexc as i64 - p as i64)
            })?;
        }
        previous = Some(minexc);
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "drepl t=0..2 and qrepl t=0..1 tight in {:.1?}",
        start.elapsed()
    ))
}

fn cubic_ratio() -> Outcome {
    let mut corpus = vec![
        ("k4".to_string(), named::k4()),
        ("k33".into(), named::k33()),
        ("prism".into(), named::prism()),
        ("cube".into(), named::cube()),
        ("petersen".into(), named::petersen()),
    ];
    for n in (8..=14).step_by(2) {
        for seed in 0..6 {
            let g = random_cubic(n, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(|e| e.to_string())?;
            corpus.push((format!("cubic {n} seed={seed}"), g));
        }
    }
    for (blocks, seed) in [
        (vec![4, 4], 1),
        (vec![4, 4], 2),
        (vec![4, 6], 3),
        (vec![6, 4], 4),
        (vec![6, 6], 5),
        (vec![4, 8], 6),
    ] {
        let g = random_bridged_cubic(&blocks, seed).map_err(|e| e.to_string())?;
        corpus.push((format!("bridged {blocks:?} seed={seed}"), g));
    }
    let mut worst = (ratio(0, 1), String::new());
    let mut bridged = 0;
    for (label, g) in &corpus {
        ensure(g.n() <= 14 && g.is_cubic(), || {
            format!("{label}: not a cubic graph with n <= 14")
        })?;
        let s = approximate_cubic_tsp(g).map_err(|e| format!("{label}: {e}"))?;
        verify_walk(g, &s.walk).map_err(|e| format!("{label}: {e}"))?;
        let opt = tsp_bruteforce(g).map_err(|e| format!("{label}: {e}"))?;
        let r = ratio(s.walk.length(), opt);
        ensure(r <= ratio(9, 7), || format!("{label}: ratio {r}"))?;
        bridged += usize::from(s.bridges > 0);
        if r > worst.0 {
            worst = (r, label.clone());
        }
    }
    ensure(bridged > 0, || "no bridged instance".into())?;
    Ok(format!(
        "{} graphs ({bridged} bridged), max ratio {} on {}",
        corpus.len(),
        worst.0,
        worst.1
    ))
}

fn named_values() -> Outcome {
    let petersen = named::petersen();
    let values = [
        ("tsp(petersen)", tsp_bruteforce(&petersen), 11),
        ("minexc(petersen)", minexc_bruteforce(&petersen), 3),
        ("tsp(k4)", tsp_bruteforce(&named::k4()), 4),
        ("tsp(k23)", tsp_bruteforce(&named::k23()), 6),
    ];
    for (name, got, expected) in values {
        let got = got.map_err(|e| format!("{name}: {e}"))?;
        ensure(got == expected, || format!("{name} = {got}, expected {expected}"))?;
    }
    Ok("tsp(petersen)=11, minexc(petersen)=3, tsp(k4)=4, tsp(k23)=6".into())
}

fn invariants() -> Outcome {
    let mut steps = 0;
    for seed in 0..60 {
        let g = random_instance(10_000 + seed);
        let label = format!("seed {}", 10_000 + seed);
        let trace = reduce_to_terminal(&g).map_err(|e| format!("{label}: {e}"))?;
        let mut n = g.n();
        for step in &trace.steps {
            let h = &step.after;
            ensure(h.n() < n, || {
                format!("{label}: {} does not shrink the graph", step.rule)
            })?;
            ensure((0..h.n()).all(|v| h.degree(v) <= 3) && is_two_connected(h), || {
                format!(
                    "{label}: {} leaves a graph that is not subcubic and 2-connected",
                    step.rule
                )
            })?;
            n = h.n();
        }
        steps += trace.steps.len();
        let s = solve_subcubic(&g).map_err(|e| format!("{label}: {e}"))?;
        s.subgraph.validate(&g).map_err(|e| format!("{label}: {e}"))?;
        let degrees = s.subgraph.degrees(&g);
        ensure(
            degrees.len() == g.n() && degrees.iter().all(|&d| d == 0 || d == 2),
            || format!("{label}: bad degrees"),
        )?;
        verify_walk(&g, &s.walk).map_err(|e| format!("{label}: {e}"))?;
    }
    let sources: Vec<Source> = vec![
        Source::Drepl(2),
        Source::Qrepl(1),
        Source::Named("petersen".into()),
        Source::Subcubic { n: 40, n2: 8, seed: 3 },
        Source::Cubic { n: 12, seed: 9 },
        Source::Bridged {
            blocks: vec![4, 6],
            seed: 2,
        },
    ];
    let report = |jobs| {
        let opts = BenchOptions {
            jobs,
            ..BenchOptions::default()
        };
        run_bench(&sources, &opts)
            .iter()
            .map(|r| r.to_json_line())
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = report(1);
    ensure(first == report(1) && first == report(3), || {
        "bench reports differ between runs".into()
    })?;
    Ok(format!(
        "60 random instances, {steps} reduction steps, bench reports identical"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("walk length bound on the corpus", bound_on_corpus),
        ("exact oracle routes agree", oracle_routes_agree),
        ("reduction fixtures lift", fixture_catalog),
        ("matching decompositions", decompositions),
        ("lower-bound families", lower_bound_families),
        ("cubic approximation ratio", cubic_ratio),
        ("named values", named_values),
        ("invariants and determinism", invariants),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {}: pass {name}: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {reason} [{:.1?}]", i + 1, start.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
