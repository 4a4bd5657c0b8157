//! A lexicon toolkit built on a default-inheritance lexical knowledge
//! representation language (a DATR subset).
//!
//! Theories are ordered sets of node definitions made of path equations.
//! Queries are answered by longest-prefix default matching with local and
//! global inheritance contexts, so specific feature specifications override
//! inherited ones. On top of the evaluator, the toolkit reconstructs
//! lexicalized elementary trees from a bottom-up `parent`/`left`/`right`
//! encoding and applies four lexical rules: dative, passive,
//! subject-auxiliary inversion and wh-question formation.
//!
//! ```
//! use treelex::{engine, fragment, tree};
//!
//! let theory = fragment::load_fragment(fragment::Fragment::Extended);
//! let cfg = engine::EngineConfig::default();
//!
//! let give = "Give".parse().unwrap();
//! let path = treelex::parse_atom_path("<parent cat>").unwrap();
//! let atoms = engine::query(&theory, &give, &path, &cfg).unwrap();
//! assert_eq!(treelex::format_atom_seq(&atoms), "vp");
//!
//! let parsed = tree::reconstruct_tree(&theory, &give, &[], &cfg).unwrap();
//! assert_eq!(
//!     tree::render_bracketed(&parsed),
//!     "(s np! (vp v@=give np! (pp p@=to np!)))"
//! );
//! ```

pub mod ast;
pub mod cli;
pub mod engine;
pub mod fragment;
pub mod golden;
mod lexer;
pub mod parser;
pub mod render;
pub mod tree;

pub use ast::{
    format_atom_seq, Atom, AtomPath, Descriptor, GlobalRef, NodeDef, NodeName, Path, PathComponent,
    Sentence, Theory,
};
pub use engine::{
    evaluate_descriptor, evaluate_query, extend_descriptor, make_overlay, match_longest_prefix,
    EngineConfig, EngineError, QueryContext,
};
pub use parser::{parse_atom_path, parse_theory, ParseError};
pub use render::render_theory;
pub use tree::{
    apply_lexical_rule, detect_whq_trigger, query_node_features, reconstruct_tree,
    render_bracketed, render_subtree, ElementaryTree, EncodingAddress, LexicalRule, NodeFeatures,
    NodeType, RuleRequest, Step, TreeError, TreeNode,
};
