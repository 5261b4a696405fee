use proptest::prelude::*;

use cubictsp::connectivity::is_two_connected;
use cubictsp::generators::random_subcubic;
use cubictsp::oracle::{enumerate_eulerian, verify_step, verify_walk};
use cubictsp::reduction::reduce_to_terminal;
use cubictsp::walk::{assemble_walk, solve_subcubic};
use cubictsp::Graph;

/// 2-connected subcubic graphs with `cubic` degree-three vertices before
/// subdividing `n2` edges.
fn subcubic(max_cubic: usize, max_n2: usize) -> impl Strategy<Value = Graph> {
    (2..=max_cubic / 2, 0..=max_n2, any::<u64>())
        .prop_map(|(half, n2, seed)| random_subcubic(2 * half + n2, n2, seed).expect("feasible sizes"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lifted_subgraph_is_spanning_with_even_degrees(g in subcubic(40, 12)) {
        let s = solve_subcubic(&g).unwrap();
        let degrees = s.subgraph.degrees(&g);
        prop_assert_eq!(degrees.len(), g.n());
        prop_assert!(degrees.iter().all(|&d| d == 0 || d == 2));
        prop_assert!(verify_walk(&g, &s.walk).is_ok());
        prop_assert!(7 * s.walk.length() + 7 <= 9 * g.n() + 2 * g.n2());
    }

    #[test]
    fn reductions_shrink_and_keep_the_class(g in subcubic(40, 12)) {
        let trace = reduce_to_terminal(&g).unwrap();
        let mut before = g.clone();
        for step in &trace.steps {
            let h = &step.after;
            prop_assert_eq!(step.before.edges(), before.edges());
            prop_assert!(h.n() < before.n());
            prop_assert!((0..h.n()).all(|v| h.degree(v) <= 3));
            prop_assert!(is_two_connected(h));
            prop_assert!(Graph::new(h.n(), h.edges()).is_ok());
            prop_assert_eq!(before.weight() - h.weight(), step.delta);
            before = h.clone();
        }
        prop_assert_eq!(trace.terminal.edges(), before.edges());
    }

    #[test]
    fn every_small_step_lifts(g in subcubic(14, 6)) {
        for step in &reduce_to_terminal(&g).unwrap().steps {
            prop_assert!(verify_step(step, 64).is_ok(), "{} {}", step.rule, step.case_tag);
        }
    }

    #[test]
    fn walk_length_is_n_minus_two_plus_excess(g in subcubic(10, 4), pick in any::<prop::sample::Index>()) {
        let all = enumerate_eulerian(&g, 16).unwrap();
        let f = &all[pick.index(all.len())];
        let w = assemble_walk(&g, f).unwrap();
        prop_assert!(verify_walk(&g, &w).is_ok());
        prop_assert_eq!(w.length(), g.n() - 2 + f.excess());
    }

    #[test]
    fn generators_are_deterministic(half in 2usize..20, n2 in 0usize..10, seed in any::<u64>()) {
        let a = random_subcubic(2 * half + n2, n2, seed).unwrap();
        let b = random_subcubic(2 * half + n2, n2, seed).unwrap();
        prop_assert_eq!(a.edges(), b.edges());
    }
}
