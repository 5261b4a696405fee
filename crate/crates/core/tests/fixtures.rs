mod common;

use std::collections::BTreeSet;

use common::load_fixtures;
use cubictsp::connectivity::is_two_connected;
use cubictsp::reduction::{apply_rule, find_reduction, RuleId};

#[test]
fn every_rule_has_a_fixture() {
    let covered: BTreeSet<RuleId> = load_fixtures().iter().map(|f| f.rule).collect();
    let missing: Vec<&str> = RuleId::ALL
        .iter()
        .filter(|r| !covered.contains(r))
        .map(|r| r.name())
        .collect();
    assert!(missing.is_empty(), "rules without fixture: {missing:?}");
}

#[test]
fn fixtures_apply_with_the_recorded_case() {
    for f in load_fixtures() {
        assert!(is_two_connected(&f.graph), "{}", f.file);
        assert!(f.graph.n2() < f.graph.n(), "{}", f.file);
        let step = apply_rule(&f.graph, f.rule, &f.witness).unwrap_or_else(|e| panic!("{}: {e}", f.file));
        assert_eq!(step.rule, f.rule, "{}", f.file);
        assert_eq!(step.case_tag, f.case, "{}", f.file);
        assert!(step.after.n() < step.before.n(), "{}", f.file);
        assert!(is_two_connected(&step.after), "{}", f.file);
        assert!((0..step.after.n()).all(|v| step.after.degree(v) <= 3), "{}", f.file);
    }
}

#[test]
fn scan_finds_the_fixture_rule() {
    for f in load_fixtures().into_iter().filter(|f| detectable(f.rule)) {
        let step = find_reduction(&f.graph)
            .unwrap_or_else(|e| panic!("{}: {e}", f.file))
            .unwrap_or_else(|| panic!("{}: no reduction found", f.file));
        assert_eq!(step.rule, f.rule, "{}", f.file);
    }
}

/// Rules whose hypothesis is also found by the priority scan; the others
/// only arise inside the case analysis of another rule.
fn detectable(rule: RuleId) -> bool {
    !matches!(
        rule,
        RuleId::R6Opp3 | RuleId::R6Ob1 | RuleId::R6Ob0 | RuleId::R6OppA | RuleId::R6NoCut
    )
}
