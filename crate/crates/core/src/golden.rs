//! Golden case files: expected query results and tree renderings.
//!
//! The format is line-oriented; `#` starts a comment and blank lines are
//! ignored. Matching against the expected text is bit-exact.
//!
//! ```text
//! Q <node> <path> => <atoms>
//! T <entry> [rule=<r>] [set <path>=<atom>]* => <bracketed>
//! ```

use thiserror::Error;

use crate::ast::{format_atom_seq, Atom, AtomPath, NodeName};
use crate::engine::{self, EngineConfig};
use crate::parser::parse_atom_path;
use crate::tree::{self, LexicalRule};
use crate::Theory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("golden file line {line}: {message}")]
pub struct GoldenParseError {
    pub line: usize,
    pub message: String,
}

/// One golden case: a query with its expected atom sequence, or a tree
/// derivation with its expected bracketed rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldenCase {
    Query {
        node: NodeName,
        path: AtomPath,
        expected: String,
    },
    Tree {
        entry: NodeName,
        rule: Option<LexicalRule>,
        sets: Vec<(AtomPath, Vec<Atom>)>,
        expected: String,
    },
}

impl GoldenCase {
    /// Short identifying label, used in pass/fail reporting.
    pub fn label(&self) -> String {
        match self {
            GoldenCase::Query { node, path, .. } => format!("Q {node} {path}"),
            GoldenCase::Tree {
                entry, rule, sets, ..
            } => {
                let mut label = format!("T {entry}");
                if let Some(rule) = rule {
                    label.push_str(&format!(" rule={rule}"));
                }
                for (path, atoms) in sets {
                    label.push_str(&format!(" set {path}={}", format_atom_seq(atoms)));
                }
                label
            }
        }
    }

    /// Evaluate the case against `theory`. `Ok` on a match; `Err` carries
    /// the actual output or the error that occurred.
    pub fn run(&self, theory: &Theory, cfg: &EngineConfig) -> Result<(), String> {
        let actual = match self {
            GoldenCase::Query { node, path, .. } => engine::query(theory, node, path, cfg)
                .map(|atoms| format_atom_seq(&atoms))
                .map_err(|e| e.to_string())?,
            GoldenCase::Tree {
                entry, rule, sets, ..
            } => tree::derive_tree(theory, entry, *rule, None, sets, cfg)
                .map(|t| tree::render_bracketed(&t))
                .map_err(|e| e.to_string())?,
        };
        let expected = self.expected();
        if actual == expected {
            Ok(())
        } else {
            Err(format!("got `{actual}`"))
        }
    }

    pub fn expected(&self) -> &str {
        match self {
            GoldenCase::Query { expected, .. } => expected,
            GoldenCase::Tree { expected, .. } => expected,
        }
    }
}

/// Parse a golden case file.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenCase>, GoldenParseError> {
    let mut cases = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        cases.push(parse_case(trimmed, lineno)?);
    }
    Ok(cases)
}

fn err(line: usize, message: impl Into<String>) -> GoldenParseError {
    GoldenParseError {
        line,
        message: message.into(),
    }
}

fn parse_case(line: &str, lineno: usize) -> Result<GoldenCase, GoldenParseError> {
    let (head, expected) = line
        .split_once(" => ")
        .ok_or_else(|| err(lineno, "missing ` => ` separator"))?;
    let expected = expected.to_string();
    if expected.is_empty() {
        return Err(err(lineno, "empty expected text"));
    }

    if let Some(rest) = head.strip_prefix("Q ") {
        let rest = rest.trim();
        let split = rest
            .find(char::is_whitespace)
            .ok_or_else(|| err(lineno, "expected `Q <node> <path>`"))?;
        let node = NodeName::new(&rest[..split]).map_err(|e| err(lineno, e.to_string()))?;
        let path = parse_atom_path(rest[split..].trim()).map_err(|e| err(lineno, e.to_string()))?;
        Ok(GoldenCase::Query {
            node,
            path,
            expected,
        })
    } else if let Some(rest) = head.strip_prefix("T ") {
        let mut rest = rest.trim();
        let split = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let entry = NodeName::new(&rest[..split]).map_err(|e| err(lineno, e.to_string()))?;
        rest = rest[split..].trim_start();

        let mut rule = None;
        let mut sets = Vec::new();
        while !rest.is_empty() {
            if let Some(after) = rest.strip_prefix("rule=") {
                let end = after.find(char::is_whitespace).unwrap_or(after.len());
                rule = Some(
                    after[..end]
                        .parse::<LexicalRule>()
                        .map_err(|_| err(lineno, format!("unknown rule `{}`", &after[..end])))?,
                );
                rest = after[end..].trim_start();
            } else if let Some(after) = rest.strip_prefix("set ") {
                let after = after.trim_start();
                let close = after
                    .find('>')
                    .ok_or_else(|| err(lineno, "unterminated path in `set`"))?;
                let path =
                    parse_atom_path(&after[..=close]).map_err(|e| err(lineno, e.to_string()))?;
                let after = after[close + 1..]
                    .strip_prefix('=')
                    .ok_or_else(|| err(lineno, "expected `=` after `set` path"))?;
                let end = after.find(char::is_whitespace).unwrap_or(after.len());
                let atom = Atom::new(&after[..end]).map_err(|e| err(lineno, e.to_string()))?;
                sets.push((path, vec![atom]));
                rest = after[end..].trim_start();
            } else {
                return Err(err(lineno, format!("unexpected `{rest}`")));
            }
        }
        Ok(GoldenCase::Tree {
            entry,
            rule,
            sets,
            expected,
        })
    } else {
        Err(err(lineno, "expected a `Q` or `T` case"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_query_and_tree_cases() {
        let cases = parse_golden(
            "# comment\n\
             Q Give <parent cat> => vp\n\
             \n\
             T Eat rule=whq set <right form>=null => (s np!)\n",
        )
        .unwrap();
        assert_eq!(cases.len(), 2);
        assert_eq!(cases[0].label(), "Q Give <parent cat>");
        assert_eq!(cases[1].label(), "T Eat rule=whq set <right form>=null");
        assert_eq!(cases[1].expected(), "(s np!)");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_golden("Q Give <cat>").is_err());
        assert!(parse_golden("X Give <cat> => v").is_err());
        assert!(parse_golden("T Eat rule=karate => x").is_err());
        assert!(parse_golden("Q Give <cat> => ").is_err());
    }

    #[test]
    fn runs_a_query_case() {
        let theory = crate::parser::parse_theory("N: <a> == x y.").unwrap();
        let cases = parse_golden("Q N <a> => x y\nQ N <a> => x\n").unwrap();
        let cfg = EngineConfig::default();
        assert!(cases[0].run(&theory, &cfg).is_ok());
        let msg = cases[1].run(&theory, &cfg).unwrap_err();
        assert!(msg.contains("x y"), "{msg}");
    }
}
