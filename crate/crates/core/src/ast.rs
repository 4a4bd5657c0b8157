//! Syntax tree for theory files: atoms, node names, paths, descriptors,
//! sentences and theories.
//!
//! A theory is an ordered collection of named node definitions; each node
//! definition is an ordered collection of path-equation sentences
//! `<lhs> == descriptor...`. Left-hand sides and quoted paths contain atoms
//! only, which the types below enforce structurally ([`AtomPath`]); paths on
//! the right-hand side of an equation may additionally embed quoted
//! references ([`Path`]).

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use indexmap::IndexMap;
use thiserror::Error;

/// Error raised when constructing an identifier from invalid text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentError {
    #[error("empty identifier")]
    Empty,
    #[error("atom must start with a lowercase letter or digit: `{0}`")]
    BadAtomStart(String),
    #[error("node name must start with an uppercase letter: `{0}`")]
    BadNodeStart(String),
    #[error("invalid character `{ch}` in identifier `{text}`")]
    BadChar { text: String, ch: char },
}

fn check_ident_chars(text: &str) -> Result<(), IdentError> {
    match text
        .chars()
        .find(|&ch| !(ch.is_ascii_alphanumeric() || ch == '_' || ch == '-'))
    {
        Some(ch) => Err(IdentError::BadChar {
            text: text.to_string(),
            ch,
        }),
        None => Ok(()),
    }
}

/// A lowercase- or digit-initial identifier: feature names and values such
/// as `cat`, `np`, `undef`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(String);

impl Atom {
    pub fn new(text: impl Into<String>) -> Result<Self, IdentError> {
        let text = text.into();
        let first = text.chars().next().ok_or(IdentError::Empty)?;
        if !(first.is_ascii_lowercase() || first.is_ascii_digit()) {
            return Err(IdentError::BadAtomStart(text));
        }
        check_ident_chars(&text)?;
        Ok(Atom(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Atom {
    type Err = IdentError;
    fn from_str(s: &str) -> Result<Self, IdentError> {
        Atom::new(s)
    }
}

impl PartialEq<str> for Atom {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for Atom {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

/// An uppercase-initial identifier naming a node definition, such as
/// `TREE_NODE` or `Give`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeName(String);

impl NodeName {
    pub fn new(text: impl Into<String>) -> Result<Self, IdentError> {
        let text = text.into();
        let first = text.chars().next().ok_or(IdentError::Empty)?;
        if !first.is_ascii_uppercase() {
            return Err(IdentError::BadNodeStart(text));
        }
        check_ident_chars(&text)?;
        Ok(NodeName(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for NodeName {
    type Err = IdentError;
    fn from_str(s: &str) -> Result<Self, IdentError> {
        NodeName::new(s)
    }
}

impl PartialEq<str> for NodeName {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

/// A path made of atoms only. Used for sentence left-hand sides, query
/// paths, and the paths inside quoted references (quoting does not nest).
///
/// Displays in concrete syntax: `<a b c>`, or `<>` when empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomPath(pub Vec<Atom>);

impl AtomPath {
    pub fn empty() -> Self {
        AtomPath(Vec::new())
    }

    /// Build from identifier texts; handy in tests and for fixed paths.
    pub fn parse_atoms<S: AsRef<str>>(parts: &[S]) -> Result<Self, IdentError> {
        parts
            .iter()
            .map(|p| Atom::new(p.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(AtomPath)
    }

    pub fn extended(&self, suffix: &[Atom]) -> AtomPath {
        let mut atoms = self.0.clone();
        atoms.extend_from_slice(suffix);
        AtomPath(atoms)
    }
}

impl Deref for AtomPath {
    type Target = [Atom];
    fn deref(&self) -> &[Atom] {
        &self.0
    }
}

impl From<Vec<Atom>> for AtomPath {
    fn from(atoms: Vec<Atom>) -> Self {
        AtomPath(atoms)
    }
}

impl FromIterator<Atom> for AtomPath {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        AtomPath(iter.into_iter().collect())
    }
}

impl fmt::Display for AtomPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, atom) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{atom}")?;
        }
        f.write_str(">")
    }
}

/// Space-separated rendering of an atom sequence (query results, CLI output).
pub fn format_atom_seq(atoms: &[Atom]) -> String {
    atoms.iter().map(Atom::as_str).collect::<Vec<_>>().join(" ")
}

/// A quoted reference, written `"<path>"`, `"Node"` or `"Node:<path>"`.
/// Quoted references are evaluated at the global context (the node the
/// query was originally addressed to) rather than at the defining node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GlobalRef {
    Path(AtomPath),
    Node(NodeName),
    NodePath(NodeName, AtomPath),
}

impl fmt::Display for GlobalRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalRef::Path(p) => write!(f, "\"{p}\""),
            GlobalRef::Node(n) => write!(f, "\"{n}\""),
            GlobalRef::NodePath(n, p) => write!(f, "\"{n}:{p}\""),
        }
    }
}

/// One component of a right-hand-side path: a plain atom, or an embedded
/// quoted reference whose value is spliced into the path during evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathComponent {
    Atom(Atom),
    Embedded(GlobalRef),
}

/// A right-hand-side path: atoms possibly interleaved with embedded quoted
/// references, e.g. `<aux_cat "<form>">`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Path {
    components: Vec<PathComponent>,
}

impl Path {
    pub fn empty() -> Self {
        Path {
            components: Vec::new(),
        }
    }

    pub fn new(components: Vec<PathComponent>) -> Self {
        Path { components }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Self {
        Path {
            components: atoms.into_iter().map(PathComponent::Atom).collect(),
        }
    }

    pub fn components(&self) -> &[PathComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// True when every component is a plain atom.
    pub fn is_atoms_only(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, PathComponent::Atom(_)))
    }

    /// The atoms of an atoms-only path; `None` if any component is embedded.
    pub fn as_atom_path(&self) -> Option<AtomPath> {
        self.components
            .iter()
            .map(|c| match c {
                PathComponent::Atom(a) => Some(a.clone()),
                PathComponent::Embedded(_) => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(AtomPath)
    }

    /// A copy of this path with `suffix` appended as plain atoms.
    pub fn extended(&self, suffix: &[Atom]) -> Path {
        let mut components = self.components.clone();
        components.extend(suffix.iter().cloned().map(PathComponent::Atom));
        Path { components }
    }
}

impl From<AtomPath> for Path {
    fn from(p: AtomPath) -> Self {
        Path::from_atoms(p.0)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match comp {
                PathComponent::Atom(a) => write!(f, "{a}")?,
                PathComponent::Embedded(g) => write!(f, "{g}")?,
            }
        }
        f.write_str(">")
    }
}

/// The right-hand-side value language of a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Descriptor {
    /// A literal atom: `v`.
    Atom(Atom),
    /// A path evaluated at the defining node: `<cat>`.
    Path(Path),
    /// A bare node reference: `TREE_NODE`.
    Node(NodeName),
    /// A node-and-path reference: `VP_TREE:<>`.
    NodePath(NodeName, Path),
    /// A quoted reference, evaluated at the global context: `"<form>"`.
    Global(GlobalRef),
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Atom(a) => write!(f, "{a}"),
            Descriptor::Path(p) => write!(f, "{p}"),
            Descriptor::Node(n) => write!(f, "{n}"),
            Descriptor::NodePath(n, p) => write!(f, "{n}:{p}"),
            Descriptor::Global(g) => write!(f, "{g}"),
        }
    }
}

/// A path equation `lhs == rhs`, the unit of a node definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    /// Atoms-only left-hand side; unique within its node definition.
    pub lhs: AtomPath,
    /// Non-empty descriptor sequence.
    pub rhs: Vec<Descriptor>,
}

impl Sentence {
    pub fn new(lhs: AtomPath, rhs: Vec<Descriptor>) -> Self {
        Sentence { lhs, rhs }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ==", self.lhs)?;
        for d in &self.rhs {
            write!(f, " {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("duplicate path `{path}` in node `{node}`")]
pub struct DuplicatePathError {
    pub node: NodeName,
    pub path: AtomPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("duplicate node definition `{0}`")]
pub struct DuplicateNodeError(pub NodeName);

/// An ordered collection of sentences with unique left-hand sides.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeDef {
    sentences: Vec<Sentence>,
}

impl NodeDef {
    pub fn new() -> Self {
        NodeDef::default()
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    /// Append a sentence, rejecting a repeated left-hand side.
    pub fn push(&mut self, owner: &NodeName, sentence: Sentence) -> Result<(), DuplicatePathError> {
        if self.sentences.iter().any(|s| s.lhs == sentence.lhs) {
            return Err(DuplicatePathError {
                node: owner.clone(),
                path: sentence.lhs,
            });
        }
        self.sentences.push(sentence);
        Ok(())
    }

    pub fn from_sentences(
        owner: &NodeName,
        sentences: Vec<Sentence>,
    ) -> Result<Self, DuplicatePathError> {
        let mut def = NodeDef::new();
        for s in sentences {
            def.push(owner, s)?;
        }
        Ok(def)
    }
}

/// An ordered set of named node definitions. Immutable in use: evaluation
/// never mutates a theory, and overlays copy it.
#[derive(Debug, Clone, Default, Eq)]
pub struct Theory {
    nodes: IndexMap<NodeName, NodeDef>,
}

impl Theory {
    pub fn new() -> Self {
        Theory::default()
    }

    pub fn add_node(&mut self, name: NodeName, def: NodeDef) -> Result<(), DuplicateNodeError> {
        if self.nodes.contains_key(&name) {
            return Err(DuplicateNodeError(name));
        }
        self.nodes.insert(name, def);
        Ok(())
    }

    pub fn get_node(&self, name: &NodeName) -> Option<&NodeDef> {
        self.nodes.get(name)
    }

    pub fn contains_node(&self, name: &NodeName) -> bool {
        self.nodes.contains_key(name)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn sentence_count(&self) -> usize {
        self.nodes.values().map(|d| d.sentences().len()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeName, &NodeDef)> {
        self.nodes.iter()
    }
}

// Definition order is significant, so equality is order-sensitive (IndexMap's
// own PartialEq ignores order).
impl PartialEq for Theory {
    fn eq(&self, other: &Self) -> bool {
        self.nodes.len() == other.nodes.len() && self.nodes.iter().eq(other.nodes.iter())
    }
}
