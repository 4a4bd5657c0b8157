//! Command-line surface.
//!
//! Exit codes: 0 success; 1 evaluation error or rule not applicable;
//! 2 syntax or validation error (including unreadable files and malformed
//! arguments); 3 golden mismatch.

use std::fs;
use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::ast::{format_atom_seq, Atom, AtomPath, NodeName};
use crate::engine::{self, EngineConfig};
use crate::fragment::{self, Fragment};
use crate::golden::parse_golden;
use crate::parser::{parse_atom_path, parse_theory};
use crate::tree::{self, LexicalRule};
use crate::Theory;

pub const EXIT_OK: u8 = 0;
pub const EXIT_EVAL: u8 = 1;
pub const EXIT_SYNTAX: u8 = 2;
pub const EXIT_GOLDEN: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "treelex",
    version,
    about = "Default-inheritance lexicon toolkit: query theories, reconstruct elementary trees, apply lexical rules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a theory, printing node and sentence counts.
    Check {
        /// Theory file, or a built-in fragment name (figure1, extended).
        file: String,
    },
    /// Evaluate a path query and print the resulting atoms.
    Query {
        /// Theory file, or a built-in fragment name (figure1, extended).
        file: String,
        /// Node to query, e.g. Give.
        node: String,
        /// Query path in angle-bracket syntax, e.g. '<parent cat>'.
        path: String,
        /// Inheritance depth limit.
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Reconstruct an entry's elementary tree and print it in bracketed form.
    Tree {
        /// Theory file, or a built-in fragment name (figure1, extended).
        file: String,
        /// Lexical entry, e.g. Give.
        entry: String,
        /// Lexical rule to apply: dative, passive, sai or whq.
        #[arg(long)]
        rule: Option<String>,
        /// Reconstruct the alternation under `<alt NAME>`.
        #[arg(long, conflicts_with = "rule", value_name = "NAME")]
        alt: Option<String>,
        /// Feature assignment applied before reconstruction; repeatable.
        #[arg(long = "set", value_name = "<PATH>=ATOM")]
        set: Vec<String>,
        /// Inheritance depth limit.
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// List the lexical entries (nodes defining a <root> sentence).
    Entries {
        /// Theory file, or a built-in fragment name (figure1, extended).
        file: String,
    },
    /// Run a golden case file against a theory and report per-case results.
    Test {
        /// Theory file, or a built-in fragment name (figure1, extended).
        file: String,
        /// Golden case file, or a built-in name (figure1, extended).
        golden: String,
        /// Inheritance depth limit.
        #[arg(long)]
        max_depth: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

/// Execute a parsed invocation, writing to the given streams, and return
/// the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, Failure> {
    match command {
        Command::Check { file } => {
            let theory = load_theory(&file)?;
            let _ = writeln!(
                out,
                "{}: {} nodes, {} sentences",
                file,
                theory.node_count(),
                theory.sentence_count()
            );
            Ok(EXIT_OK)
        }
        Command::Query {
            file,
            node,
            path,
            max_depth,
        } => {
            let theory = load_theory(&file)?;
            let node = parse_node_name(&node)?;
            let path = parse_cli_path(&path)?;
            let cfg = config(max_depth);
            let atoms = engine::query(&theory, &node, &path, &cfg)
                .map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
            let _ = writeln!(out, "{}", format_atom_seq(&atoms));
            Ok(EXIT_OK)
        }
        Command::Tree {
            file,
            entry,
            rule,
            alt,
            set,
            max_depth,
        } => {
            let theory = load_theory(&file)?;
            let entry = parse_node_name(&entry)?;
            let rule = rule.as_deref().map(parse_rule).transpose()?;
            let alt = alt
                .map(|name| Atom::new(name).map_err(|e| fail(EXIT_SYNTAX, e.to_string())))
                .transpose()?;
            let sets = parse_assignments(&set)?;
            let cfg = config(max_depth);
            let tree = tree::derive_tree(&theory, &entry, rule, alt.as_ref(), &sets, &cfg)
                .map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
            let _ = writeln!(out, "{}", tree::render_bracketed(&tree));
            Ok(EXIT_OK)
        }
        Command::Entries { file } => {
            let theory = load_theory(&file)?;
            let root = AtomPath::parse_atoms(&["root"]).unwrap();
            for (name, def) in theory.iter() {
                if def.sentences().iter().any(|s| s.lhs == root) {
                    let _ = writeln!(out, "{name}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Test {
            file,
            golden,
            max_depth,
        } => {
            let theory = load_theory(&file)?;
            let cases = load_golden(&golden)?;
            let cfg = config(max_depth);
            let mut failed = 0usize;
            for case in &cases {
                match case.run(&theory, &cfg) {
                    Ok(()) => {
                        let _ = writeln!(out, "PASS {}", case.label());
                    }
                    Err(actual) => {
                        failed += 1;
                        let _ = writeln!(
                            out,
                            "FAIL {}: expected `{}`, {}",
                            case.label(),
                            case.expected(),
                            actual
                        );
                    }
                }
            }
            let _ = writeln!(out, "{} passed, {} failed", cases.len() - failed, failed);
            Ok(if failed == 0 { EXIT_OK } else { EXIT_GOLDEN })
        }
    }
}

fn config(max_depth: Option<usize>) -> EngineConfig {
    match max_depth {
        Some(depth) => EngineConfig::with_max_depth(depth.max(1)),
        None => EngineConfig::default(),
    }
}

/// Built-in fragment names take precedence over files of the same name.
fn load_theory(file: &str) -> Result<Theory, Failure> {
    if let Ok(fragment) = Fragment::from_str(file) {
        return Ok(fragment::load_fragment(fragment));
    }
    let text = fs::read_to_string(file)
        .map_err(|e| fail(EXIT_SYNTAX, format!("cannot read `{file}`: {e}")))?;
    parse_theory(&text).map_err(|e| fail(EXIT_SYNTAX, format!("{file}:{e}")))
}

fn load_golden(file: &str) -> Result<Vec<crate::golden::GoldenCase>, Failure> {
    let text = if let Ok(fragment) = Fragment::from_str(file) {
        fragment::golden_source(fragment).to_string()
    } else {
        fs::read_to_string(file)
            .map_err(|e| fail(EXIT_SYNTAX, format!("cannot read `{file}`: {e}")))?
    };
    parse_golden(&text).map_err(|e| fail(EXIT_SYNTAX, e.to_string()))
}

fn parse_node_name(text: &str) -> Result<NodeName, Failure> {
    NodeName::new(text).map_err(|e| fail(EXIT_SYNTAX, e.to_string()))
}

fn parse_cli_path(text: &str) -> Result<AtomPath, Failure> {
    parse_atom_path(text).map_err(|e| fail(EXIT_SYNTAX, format!("in path argument: {e}")))
}

fn parse_rule(text: &str) -> Result<LexicalRule, Failure> {
    text.parse().map_err(|_| {
        fail(
            EXIT_SYNTAX,
            format!("unknown rule `{text}`; rules are dative, passive, sai, whq"),
        )
    })
}

/// `--set` arguments read `<path>=atom`, e.g. `--set '<right form>=null'`.
fn parse_assignments(sets: &[String]) -> Result<Vec<(AtomPath, Vec<Atom>)>, Failure> {
    sets.iter()
        .map(|raw| {
            let (path, value) = raw
                .split_once('=')
                .ok_or_else(|| fail(EXIT_SYNTAX, format!("`--set {raw}` is missing `=`")))?;
            let path = parse_atom_path(path.trim())
                .map_err(|e| fail(EXIT_SYNTAX, format!("in `--set {raw}`: {e}")))?;
            let atom = Atom::new(value.trim())
                .map_err(|e| fail(EXIT_SYNTAX, format!("in `--set {raw}`: {e}")))?;
            Ok((path, vec![atom]))
        })
        .collect()
}
