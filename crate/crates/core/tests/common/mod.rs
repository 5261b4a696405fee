use std::path::{Path, PathBuf};

use cubictsp::io::parse_text;
use cubictsp::reduction::{RuleId, Witness};
use cubictsp::Graph;

/// A graph on which one rule fires at a recorded witness.
pub struct Fixture {
    pub file: String,
    pub rule: RuleId,
    pub witness: Witness,
    pub case: String,
    pub graph: Graph,
}

fn vertices(text: &str) -> Vec<usize> {
    text.split_whitespace().map(|t| t.parse().expect("vertex id")).collect()
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn load_fixtures() -> Vec<Fixture> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .expect("fixture directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).expect("fixture readable");
            let (mut rule, mut cycle, mut second, mut case) = (None, None, None, String::new());
            for line in text.lines().filter_map(|l| l.strip_prefix("# ")) {
                if let Some(r) = line.strip_prefix("rule ") {
                    rule = RuleId::from_name(r);
                } else if let Some(w) = line.strip_prefix("witness ") {
                    cycle = Some(vertices(w));
                } else if let Some(w) = line.strip_prefix("second ") {
                    second = Some(vertices(w));
                } else if let Some(c) = line.strip_prefix("case ") {
                    case = c.to_string();
                }
            }
            let file = path.file_name().unwrap().to_string_lossy().into_owned();
            Fixture {
                rule: rule.unwrap_or_else(|| panic!("{file}: missing rule")),
                witness: Witness {
                    cycle: cycle.unwrap_or_else(|| panic!("{file}: missing witness")),
                    second,
                },
                case,
                graph: parse_text(&text).unwrap_or_else(|e| panic!("{file}: {e}")),
                file,
            }
        })
        .collect()
}
