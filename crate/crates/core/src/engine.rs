//! Query evaluation over theories.
//!
//! Inheritance is default: a query is answered by the sentence whose
//! left-hand side is the *longest* defined prefix of the query path, so a
//! locally defined specification always beats an inherited one. The
//! unmatched remainder of the query (the suffix) extends every descriptor
//! on the right-hand side before it is evaluated, which is how the rest of
//! the query is carried into an inherited definition.
//!
//! Evaluation tracks two contexts. The *local* context is the node and path
//! currently being evaluated; unquoted descriptors are resolved against it.
//! The *global* context is the node and path the query was originally
//! addressed to; quoted descriptors (`"<form>"`, `"Node:<path>"`) are
//! resolved against it and reset it. Embedded quoted references inside a
//! path are evaluated left to right at the global context and their values
//! spliced into the path before the path is matched.
//!
//! Evaluation is pure: theories are never mutated, and concurrent queries
//! against a shared theory are safe.

use thiserror::Error;

use crate::ast::{
    Atom, AtomPath, Descriptor, GlobalRef, NodeDef, NodeName, Path, PathComponent, Sentence, Theory,
};

/// Evaluation limits.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Maximum inheritance depth before a query is abandoned as cyclic.
    pub max_depth: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_depth: 500 }
    }
}

impl EngineConfig {
    pub fn with_max_depth(max_depth: usize) -> Self {
        EngineConfig { max_depth }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown node `{0}`")]
    UnknownNode(NodeName),
    #[error("node `{node}` defines no prefix of `{path}`")]
    NoMatchingSentence { node: NodeName, path: AtomPath },
    #[error("inheritance depth limit {limit} exceeded; the theory is probably cyclic")]
    DepthExceeded { limit: usize },
    #[error("duplicate overlay path `{path}`")]
    DuplicateOverlayPath { path: AtomPath },
    #[error("overlay assignment for `{path}` has an empty value")]
    EmptyAssignment { path: AtomPath },
}

/// The full evaluation state of a query: local and global node/path plus
/// the current inheritance depth. At the start of a query the local and
/// global contexts coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryContext {
    pub local_node: NodeName,
    pub local_path: AtomPath,
    pub global_node: NodeName,
    pub global_path: AtomPath,
    pub depth: usize,
}

impl QueryContext {
    pub fn initial(node: NodeName, path: AtomPath) -> Self {
        QueryContext {
            local_node: node.clone(),
            local_path: path.clone(),
            global_node: node,
            global_path: path,
            depth: 0,
        }
    }
}

#[derive(Debug, Clone)]
struct GlobalCtx {
    node: NodeName,
    path: AtomPath,
}

/// Find the sentence whose left-hand side is the longest prefix of `query`,
/// together with the unmatched suffix. `None` when no left-hand side is a
/// prefix. Left-hand sides are unique within a definition, so the longest
/// match is unique.
pub fn match_longest_prefix<'a>(
    def: &'a NodeDef,
    query: &'a [Atom],
) -> Option<(&'a Sentence, &'a [Atom])> {
    def.sentences()
        .iter()
        .filter(|s| query.starts_with(&s.lhs))
        .max_by_key(|s| s.lhs.len())
        .map(|s| (s, &query[s.lhs.len()..]))
}

/// Carry the unmatched query suffix into a descriptor: paths get the suffix
/// appended, bare node references become node-and-path references whose
/// path is the suffix, and atoms are unaffected.
pub fn extend_descriptor(desc: &Descriptor, suffix: &[Atom]) -> Descriptor {
    match desc {
        Descriptor::Atom(a) => Descriptor::Atom(a.clone()),
        Descriptor::Path(p) => Descriptor::Path(p.extended(suffix)),
        Descriptor::Node(n) => Descriptor::NodePath(n.clone(), Path::from_atoms(suffix.to_vec())),
        Descriptor::NodePath(n, p) => Descriptor::NodePath(n.clone(), p.extended(suffix)),
        Descriptor::Global(g) => Descriptor::Global(match g {
            GlobalRef::Path(p) => GlobalRef::Path(p.extended(suffix)),
            GlobalRef::Node(n) => GlobalRef::NodePath(n.clone(), AtomPath(suffix.to_vec())),
            GlobalRef::NodePath(n, p) => GlobalRef::NodePath(n.clone(), p.extended(suffix)),
        }),
    }
}

/// Evaluate a query in an explicit context. Deterministic; errors rather
/// than diverging on cyclic theories.
pub fn evaluate_query(
    theory: &Theory,
    ctx: &QueryContext,
    cfg: &EngineConfig,
) -> Result<Vec<Atom>, EngineError> {
    let global = GlobalCtx {
        node: ctx.global_node.clone(),
        path: ctx.global_path.clone(),
    };
    eval_at(
        theory,
        &ctx.local_node,
        &ctx.local_path,
        &global,
        ctx.depth,
        cfg,
    )
}

/// Evaluate `node:path` with the global context equal to the query itself.
pub fn query(
    theory: &Theory,
    node: &NodeName,
    path: &[Atom],
    cfg: &EngineConfig,
) -> Result<Vec<Atom>, EngineError> {
    let ctx = QueryContext::initial(node.clone(), AtomPath(path.to_vec()));
    evaluate_query(theory, &ctx, cfg)
}

/// Evaluate a single descriptor in a context. `ctx.local_node` is the node
/// the descriptor belongs to; `ctx.local_path` is ignored. In a full query
/// evaluation every descriptor is extended first, which replaces bare node
/// references; evaluated directly, a bare `Node` reference uses the empty
/// path and a bare quoted `"Node"` reference uses the global path.
pub fn evaluate_descriptor(
    theory: &Theory,
    desc: &Descriptor,
    ctx: &QueryContext,
    cfg: &EngineConfig,
) -> Result<Vec<Atom>, EngineError> {
    let global = GlobalCtx {
        node: ctx.global_node.clone(),
        path: ctx.global_path.clone(),
    };
    eval_descriptor(theory, desc, &ctx.local_node, &global, ctx.depth, cfg)
}

fn eval_at(
    theory: &Theory,
    node: &NodeName,
    path: &[Atom],
    global: &GlobalCtx,
    depth: usize,
    cfg: &EngineConfig,
) -> Result<Vec<Atom>, EngineError> {
    if depth >= cfg.max_depth {
        return Err(EngineError::DepthExceeded {
            limit: cfg.max_depth,
        });
    }
    let def = theory
        .get_node(node)
        .ok_or_else(|| EngineError::UnknownNode(node.clone()))?;
    let (sentence, suffix) =
        match_longest_prefix(def, path).ok_or_else(|| EngineError::NoMatchingSentence {
            node: node.clone(),
            path: AtomPath(path.to_vec()),
        })?;

    let mut out = Vec::new();
    for desc in &sentence.rhs {
        let extended = extend_descriptor(desc, suffix);
        out.extend(eval_descriptor(
            theory, &extended, node, global, depth, cfg,
        )?);
    }
    Ok(out)
}

fn eval_descriptor(
    theory: &Theory,
    desc: &Descriptor,
    local_node: &NodeName,
    global: &GlobalCtx,
    depth: usize,
    cfg: &EngineConfig,
) -> Result<Vec<Atom>, EngineError> {
    match desc {
        Descriptor::Atom(a) => Ok(vec![a.clone()]),
        Descriptor::Path(p) => {
            let spliced = splice(theory, p, global, depth, cfg)?;
            eval_at(theory, local_node, &spliced, global, depth + 1, cfg)
        }
        Descriptor::Node(n) => eval_at(theory, n, &[], global, depth + 1, cfg),
        Descriptor::NodePath(n, p) => {
            let spliced = splice(theory, p, global, depth, cfg)?;
            eval_at(theory, n, &spliced, global, depth + 1, cfg)
        }
        Descriptor::Global(g) => eval_global_ref(theory, g, global, depth, cfg),
    }
}

/// Evaluate a quoted reference: the new local *and* global context are both
/// set to the referenced node/path pair, with the current global context
/// supplying whichever half the reference leaves open.
fn eval_global_ref(
    theory: &Theory,
    gref: &GlobalRef,
    global: &GlobalCtx,
    depth: usize,
    cfg: &EngineConfig,
) -> Result<Vec<Atom>, EngineError> {
    let (node, path) = match gref {
        GlobalRef::Path(p) => (global.node.clone(), p.clone()),
        GlobalRef::Node(n) => (n.clone(), global.path.clone()),
        GlobalRef::NodePath(n, p) => (n.clone(), p.clone()),
    };
    let new_global = GlobalCtx {
        node: node.clone(),
        path: path.clone(),
    };
    eval_at(theory, &node, &path, &new_global, depth + 1, cfg)
}

/// Replace every embedded quoted reference in `path` by its value, left to
/// right, producing the atoms-only path that is actually matched.
fn splice(
    theory: &Theory,
    path: &Path,
    global: &GlobalCtx,
    depth: usize,
    cfg: &EngineConfig,
) -> Result<Vec<Atom>, EngineError> {
    let mut atoms = Vec::with_capacity(path.len());
    for comp in path.components() {
        match comp {
            PathComponent::Atom(a) => atoms.push(a.clone()),
            PathComponent::Embedded(gref) => {
                atoms.extend(eval_global_ref(theory, gref, global, depth, cfg)?);
            }
        }
    }
    Ok(atoms)
}

/// Extend `theory` with a fresh node that inherits everything from `base`
/// except the given path assignments. Returns the new theory and the fresh
/// node's name; the input theory is untouched.
///
/// The overlay node reads `<> == base` followed by one `path == atoms`
/// sentence per assignment, so queries at it behave exactly like `base`
/// except on the assigned paths and their extensions.
pub fn make_overlay(
    theory: &Theory,
    base: &NodeName,
    assignments: &[(AtomPath, Vec<Atom>)],
) -> Result<(Theory, NodeName), EngineError> {
    if !theory.contains_node(base) {
        return Err(EngineError::UnknownNode(base.clone()));
    }

    let name = fresh_name(theory, base);
    let mut def = NodeDef::new();
    def.push(
        &name,
        Sentence::new(AtomPath::empty(), vec![Descriptor::Node(base.clone())]),
    )
    .expect("first sentence cannot collide");

    for (path, atoms) in assignments {
        if atoms.is_empty() {
            return Err(EngineError::EmptyAssignment { path: path.clone() });
        }
        let rhs = atoms.iter().cloned().map(Descriptor::Atom).collect();
        def.push(&name, Sentence::new(path.clone(), rhs))
            .map_err(|e| EngineError::DuplicateOverlayPath { path: e.path })?;
    }

    let mut extended = theory.clone();
    extended
        .add_node(name.clone(), def)
        .expect("fresh name cannot collide");
    Ok((extended, name))
}

fn fresh_name(theory: &Theory, base: &NodeName) -> NodeName {
    (1..)
        .map(|i| NodeName::new(format!("{base}_{i}")).expect("derived name is valid"))
        .find(|name| !theory.contains_node(name))
        .expect("some numbered name is free")
}
