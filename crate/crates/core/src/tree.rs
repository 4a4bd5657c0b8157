//! Elementary trees reconstructed from the bottom-up node encoding, plus
//! the four lexical rules.
//!
//! A tree is encoded relative to a distinguished leaf (the principal
//! anchor) through the features `parent`, `left` and `right`: the value of
//! `parent` is the subtree above, described from the parent node itself;
//! `left`/`right` are the sibling subtrees, each described from its own
//! lexical leaf. All other features describe the node at the current
//! position. A position exists when its `cat` query yields something other
//! than `undef`.
//!
//! Reconstruction inverts the encoding: starting from the anchor it climbs
//! `parent` links while they exist, and at every climb collects the sibling
//! chains. The first right sibling of a position `a` sits at `a right`;
//! once a sibling has been expanded to its subtree root at address `r`, the
//! next sibling sits at `r right` (and symmetrically leftward).
//!
//! Node types the lexicon leaves unspecified are resolved by position after
//! reconstruction: leaves become substitution sites, internal nodes become
//! normal. The bundled entries specify every type; the rule overlays (wh
//! extension in particular) rely on the convention.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ast::{Atom, AtomPath, NodeName};
use crate::engine::{self, EngineConfig, EngineError};
use crate::Theory;

/// Hard cap on encoding addresses during reconstruction; every bundled tree
/// needs at most 5 steps. The engine's `max_depth` also bounds addresses,
/// so the effective limit is the smaller of the two.
pub const MAX_ADDRESS_STEPS: usize = 32;

const UNDEF: &str = "undef";
const FORM_ACTIVE: &str = "active";

/// One step of an encoding address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Parent,
    Left,
    Right,
}

impl Step {
    pub fn as_str(&self) -> &'static str {
        match self {
            Step::Parent => "parent",
            Step::Left => "left",
            Step::Right => "right",
        }
    }

    pub fn atom(&self) -> Atom {
        Atom::new(self.as_str()).expect("step name is a valid atom")
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A tree position relative to the principal anchor: a sequence of
/// `parent`/`left`/`right` steps. The empty address is the anchor itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EncodingAddress(pub Vec<Step>);

impl EncodingAddress {
    pub fn empty() -> Self {
        EncodingAddress(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, step: Step) -> EncodingAddress {
        let mut steps = self.0.clone();
        steps.push(step);
        EncodingAddress(steps)
    }

    pub fn atoms(&self) -> Vec<Atom> {
        self.0.iter().map(Step::atom).collect()
    }
}

impl fmt::Display for EncodingAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(anchor)");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

/// Node classification, significant to consumers of the trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeType {
    Normal,
    Anchor,
    Substitution,
    Foot,
}

impl NodeType {
    pub fn as_str(&self) -> &'static str {
        match self {
            NodeType::Normal => "normal",
            NodeType::Anchor => "anchor",
            NodeType::Substitution => "substitution",
            NodeType::Foot => "foot",
        }
    }

    /// Rendering marker: `@` anchor, `!` substitution, `*` foot.
    fn marker(&self) -> &'static str {
        match self {
            NodeType::Normal => "",
            NodeType::Anchor => "@",
            NodeType::Substitution => "!",
            NodeType::Foot => "*",
        }
    }
}

impl FromStr for NodeType {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "normal" => Ok(NodeType::Normal),
            "anchor" => Ok(NodeType::Anchor),
            "substitution" => Ok(NodeType::Substitution),
            "foot" => Ok(NodeType::Foot),
            _ => Err(()),
        }
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The conventional features of one tree position. `node_type` is `None`
/// when the lexicon leaves the type unspecified; reconstruction resolves it
/// by position. `form` is omitted when it evaluates to `undef` or to the
/// default `active`, and on anchors, where the entry-level form is the rule
/// trigger rather than a node property. `root` is the morphological tag and
/// belongs to anchors only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeFeatures {
    pub cat: Atom,
    pub node_type: Option<NodeType>,
    pub form: Option<Atom>,
    pub root: Option<Atom>,
}

/// A reconstructed phrase-structure node. `address` is the encoding
/// position the node's features were read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub features: NodeFeatures,
    pub children: Vec<TreeNode>,
    pub address: EncodingAddress,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Pre-order walk over this node and everything below it.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a TreeNode)) {
        visit(self);
        for child in &self.children {
            child.walk(visit);
        }
    }
}

/// A complete elementary tree for one lexical entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryTree {
    pub root: TreeNode,
    pub principal_anchor: EncodingAddress,
    pub entry: NodeName,
}

/// The four lexical rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexicalRule {
    Dative,
    Passive,
    Sai,
    Whq,
}

impl LexicalRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            LexicalRule::Dative => "dative",
            LexicalRule::Passive => "passive",
            LexicalRule::Sai => "sai",
            LexicalRule::Whq => "whq",
        }
    }
}

impl FromStr for LexicalRule {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "dative" => Ok(LexicalRule::Dative),
            "passive" => Ok(LexicalRule::Passive),
            "sai" => Ok(LexicalRule::Sai),
            "whq" => Ok(LexicalRule::Whq),
            _ => Err(()),
        }
    }
}

impl fmt::Display for LexicalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A rule application: which rule, plus any extra feature assignments
/// (the wh rule needs at least a `form = null` marking on some NP).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleRequest {
    pub rule: LexicalRule,
    pub extra_assignments: Vec<(AtomPath, Vec<Atom>)>,
}

impl RuleRequest {
    pub fn new(rule: LexicalRule) -> Self {
        RuleRequest {
            rule,
            extra_assignments: Vec::new(),
        }
    }

    pub fn with_assignments(rule: LexicalRule, extra: Vec<(AtomPath, Vec<Atom>)>) -> Self {
        RuleRequest {
            rule,
            extra_assignments: extra,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("entry `{entry}` describes no tree under `{prefix}`: its `cat` is undefined")]
    AnchorUndefined { entry: NodeName, prefix: AtomPath },
    #[error("encoding address exceeded {limit} steps while reconstructing `{entry}`")]
    AddressTooLong { entry: NodeName, limit: usize },
    #[error("rule {rule} not applicable: {reason}")]
    RuleNotApplicable { rule: LexicalRule, reason: String },
    #[error("feature `{path}` of `{entry}` evaluated to `{value}`, expected a single atom")]
    InvalidFeature {
        entry: NodeName,
        path: AtomPath,
        value: String,
    },
}

/// Read the conventional features at one encoding position of `entry`,
/// querying `base_prefix · addr · cat/type/form/root`. `None` when the
/// position does not exist (its `cat` is `undef`).
pub fn query_node_features(
    theory: &Theory,
    entry: &NodeName,
    addr: &EncodingAddress,
    base_prefix: &[Atom],
    cfg: &EngineConfig,
) -> Result<Option<NodeFeatures>, TreeError> {
    let reader = FeatureReader {
        theory,
        entry,
        base_prefix,
        cfg,
    };
    reader.features(addr)
}

struct FeatureReader<'a> {
    theory: &'a Theory,
    entry: &'a NodeName,
    base_prefix: &'a [Atom],
    cfg: &'a EngineConfig,
}

impl<'a> FeatureReader<'a> {
    fn feature(&self, addr: &EncodingAddress, feature: &str) -> Result<Vec<Atom>, TreeError> {
        let mut path = self.base_prefix.to_vec();
        path.extend(addr.atoms());
        path.push(Atom::new(feature).expect("feature name is a valid atom"));
        Ok(engine::query(self.theory, self.entry, &path, self.cfg)?)
    }

    fn single(
        &self,
        addr: &EncodingAddress,
        feature: &str,
        atoms: Vec<Atom>,
    ) -> Result<Atom, TreeError> {
        if atoms.len() == 1 {
            Ok(atoms.into_iter().next().unwrap())
        } else {
            let mut path = self.base_prefix.to_vec();
            path.extend(addr.atoms());
            path.push(Atom::new(feature).unwrap());
            Err(TreeError::InvalidFeature {
                entry: self.entry.clone(),
                path: AtomPath(path),
                value: crate::ast::format_atom_seq(&atoms),
            })
        }
    }

    fn features(&self, addr: &EncodingAddress) -> Result<Option<NodeFeatures>, TreeError> {
        let cat = self.single(addr, "cat", self.feature(addr, "cat")?)?;
        if cat == UNDEF {
            return Ok(None);
        }

        let type_atom = self.single(addr, "type", self.feature(addr, "type")?)?;
        let node_type = if type_atom == UNDEF {
            None
        } else {
            Some(
                type_atom
                    .as_str()
                    .parse()
                    .map_err(|_| TreeError::InvalidFeature {
                        entry: self.entry.clone(),
                        path: AtomPath({
                            let mut p = self.base_prefix.to_vec();
                            p.extend(addr.atoms());
                            p.push(Atom::new("type").unwrap());
                            p
                        }),
                        value: type_atom.to_string(),
                    })?,
            )
        };

        let is_anchor = node_type == Some(NodeType::Anchor);

        let form_atom = self.single(addr, "form", self.feature(addr, "form")?)?;
        let form = if form_atom == UNDEF || form_atom == FORM_ACTIVE || is_anchor {
            None
        } else {
            Some(form_atom)
        };

        let root_atom = self.single(addr, "root", self.feature(addr, "root")?)?;
        let root = if root_atom == UNDEF || !is_anchor {
            None
        } else {
            Some(root_atom)
        };

        Ok(Some(NodeFeatures {
            cat,
            node_type,
            form,
            root,
        }))
    }
}

/// Invert the bottom-up encoding of `entry` (under `base_prefix`) into an
/// explicit elementary tree. The principal anchor is the empty address.
pub fn reconstruct_tree(
    theory: &Theory,
    entry: &NodeName,
    base_prefix: &[Atom],
    cfg: &EngineConfig,
) -> Result<ElementaryTree, TreeError> {
    let reader = FeatureReader {
        theory,
        entry,
        base_prefix,
        cfg,
    };
    let anchor_addr = EncodingAddress::empty();
    let anchor = reader
        .features(&anchor_addr)?
        .ok_or_else(|| TreeError::AnchorUndefined {
            entry: entry.clone(),
            prefix: AtomPath(base_prefix.to_vec()),
        })?;

    let builder = Builder {
        reader,
        limit: MAX_ADDRESS_STEPS.min(cfg.max_depth),
    };
    let leaf = TreeNode {
        features: anchor,
        children: Vec::new(),
        address: anchor_addr.clone(),
    };
    let (mut root, _) = builder.expand(leaf)?;
    resolve_types(&mut root);

    Ok(ElementaryTree {
        root,
        principal_anchor: anchor_addr,
        entry: entry.clone(),
    })
}

struct Builder<'a> {
    reader: FeatureReader<'a>,
    limit: usize,
}

impl<'a> Builder<'a> {
    fn extend_addr(
        &self,
        addr: &EncodingAddress,
        step: Step,
    ) -> Result<EncodingAddress, TreeError> {
        if addr.len() >= self.limit {
            return Err(TreeError::AddressTooLong {
                entry: self.reader.entry.clone(),
                limit: self.limit,
            });
        }
        Ok(addr.child(step))
    }

    /// Climb `parent` links from a leaf while they exist, gathering the
    /// sibling chains at every level. Returns the subtree together with
    /// the address its root was read from.
    fn expand(&self, leaf: TreeNode) -> Result<(TreeNode, EncodingAddress), TreeError> {
        let mut tree = leaf;
        let mut addr = tree.address.clone();
        loop {
            let parent_addr = self.extend_addr(&addr, Step::Parent)?;
            let Some(parent_features) = self.reader.features(&parent_addr)? else {
                break;
            };
            let mut children = self.chain(&addr, Step::Left)?;
            children.reverse();
            children.push(tree);
            children.extend(self.chain(&addr, Step::Right)?);
            tree = TreeNode {
                features: parent_features,
                children,
                address: parent_addr.clone(),
            };
            addr = parent_addr;
        }
        Ok((tree, addr))
    }

    /// The sibling chain of `from` in direction `dir`, nearest sibling
    /// first. Each sibling is expanded from its own distinguished leaf;
    /// the following sibling is addressed from the expanded subtree's root.
    fn chain(&self, from: &EncodingAddress, dir: Step) -> Result<Vec<TreeNode>, TreeError> {
        let mut out = Vec::new();
        let mut next = self.extend_addr(from, dir)?;
        while let Some(features) = self.reader.features(&next)? {
            let leaf = TreeNode {
                features,
                children: Vec::new(),
                address: next.clone(),
            };
            let (subtree, root_addr) = self.expand(leaf)?;
            out.push(subtree);
            next = self.extend_addr(&root_addr, dir)?;
        }
        Ok(out)
    }
}

/// Fill in unspecified node types: leaves are substitution sites, internal
/// nodes are normal.
fn resolve_types(node: &mut TreeNode) {
    if node.features.node_type.is_none() {
        node.features.node_type = Some(if node.children.is_empty() {
            NodeType::Substitution
        } else {
            NodeType::Normal
        });
    }
    for child in &mut node.children {
        resolve_types(child);
    }
}

/// Single-line bracketed form. Internal nodes read `(cat children...)`;
/// leaves read `cat{form=X}M=root` where the form annotation appears only
/// for non-default forms, `M` is the node-type marker and `=root` appears
/// only on anchors with a defined root.
pub fn render_bracketed(tree: &ElementaryTree) -> String {
    render_subtree(&tree.root)
}

/// Bracketed form of a single subtree.
pub fn render_subtree(node: &TreeNode) -> String {
    let mut out = String::new();
    render_node(node, &mut out);
    out
}

fn render_node(node: &TreeNode, out: &mut String) {
    if node.is_leaf() {
        out.push_str(node.features.cat.as_str());
        if let Some(form) = &node.features.form {
            out.push_str("{form=");
            out.push_str(form.as_str());
            out.push('}');
        }
        if let Some(t) = node.features.node_type {
            out.push_str(t.marker());
        }
        if let Some(root) = &node.features.root {
            out.push('=');
            out.push_str(root.as_str());
        }
    } else {
        out.push('(');
        out.push_str(node.features.cat.as_str());
        for child in &node.children {
            out.push(' ');
            render_node(child, out);
        }
        out.push(')');
    }
}

/// Addresses of every NP in the tree whose form is `null` — the wh-question
/// trigger. Pre-order; empty when the rule does not apply.
pub fn detect_whq_trigger(tree: &ElementaryTree) -> Vec<EncodingAddress> {
    let mut found = Vec::new();
    tree.root.walk(&mut |node| {
        if node.features.cat == "np" && node.features.form.as_ref().is_some_and(|f| *f == "null") {
            found.push(node.address.clone());
        }
    });
    found
}

fn alt_prefix(name: &Atom) -> Vec<Atom> {
    vec![Atom::new("alt").unwrap(), name.clone()]
}

/// One-stop tree derivation, as driven by the command line and the golden
/// runner: optional feature assignments, then either a lexical rule, an
/// `<alt name>` alternation, or the entry's plain tree.
pub fn derive_tree(
    theory: &Theory,
    entry: &NodeName,
    rule: Option<LexicalRule>,
    alt: Option<&Atom>,
    sets: &[(AtomPath, Vec<Atom>)],
    cfg: &EngineConfig,
) -> Result<ElementaryTree, TreeError> {
    if let Some(rule) = rule {
        let req = RuleRequest::with_assignments(rule, sets.to_vec());
        return apply_lexical_rule(theory, entry, &req, cfg);
    }
    let (theory, node) = overlay_if_needed(theory, entry, sets)?;
    let prefix = match alt {
        Some(name) => alt_prefix(name),
        None => Vec::new(),
    };
    let mut tree = reconstruct_tree(&theory, &node, &prefix, cfg)?;
    tree.entry = entry.clone();
    Ok(tree)
}

/// Apply one of the four lexical rules to `entry` and return the resulting
/// tree. Dative reconstructs the `<alt dative>` alternation; passive and
/// subject-auxiliary inversion reconstruct under a `form` trigger overlay;
/// the wh rule first requires a `form = null` NP somewhere in the tree and
/// then extends the top of the tree with the wh sentences.
pub fn apply_lexical_rule(
    theory: &Theory,
    entry: &NodeName,
    req: &RuleRequest,
    cfg: &EngineConfig,
) -> Result<ElementaryTree, TreeError> {
    let mut tree = match req.rule {
        LexicalRule::Dative => {
            let (theory, node) = overlay_if_needed(theory, entry, &req.extra_assignments)?;
            let prefix = alt_prefix(&Atom::new("dative").unwrap());
            let exists =
                query_node_features(&theory, &node, &EncodingAddress::empty(), &prefix, cfg)?;
            if exists.is_none() {
                return Err(TreeError::RuleNotApplicable {
                    rule: LexicalRule::Dative,
                    reason: format!("`{entry}` defines no `<alt dative>` alternation"),
                });
            }
            reconstruct_tree(&theory, &node, &prefix, cfg)?
        }
        LexicalRule::Passive => form_trigger_tree(theory, entry, "passive", req, cfg)?,
        LexicalRule::Sai => form_trigger_tree(theory, entry, "inv", req, cfg)?,
        LexicalRule::Whq => {
            let (marked, node) = overlay_always(theory, entry, &req.extra_assignments)?;
            let plain = reconstruct_tree(&marked, &node, &[], cfg)?;
            if detect_whq_trigger(&plain).is_empty() {
                return Err(TreeError::RuleNotApplicable {
                    rule: LexicalRule::Whq,
                    reason: format!("no NP with form `null` in the tree of `{entry}`"),
                });
            }
            let mut assignments = req.extra_assignments.clone();
            assignments.extend(whq_sentences());
            let (extended, node) = engine::make_overlay(theory, entry, &assignments)?;
            reconstruct_tree(&extended, &node, &[], cfg)?
        }
    };
    tree.entry = entry.clone();
    Ok(tree)
}

/// The wh extension: an S on top whose left daughter is a wh NP.
fn whq_sentences() -> Vec<(AtomPath, Vec<Atom>)> {
    let p = |parts: &[&str]| AtomPath::parse_atoms(parts).unwrap();
    let a = |s: &str| vec![Atom::new(s).unwrap()];
    vec![
        (p(&["parent", "parent", "parent", "cat"]), a("s")),
        (p(&["parent", "parent", "left", "cat"]), a("np")),
        (p(&["parent", "parent", "left", "form"]), a("wh")),
    ]
}

fn form_trigger_tree(
    theory: &Theory,
    entry: &NodeName,
    form: &str,
    req: &RuleRequest,
    cfg: &EngineConfig,
) -> Result<ElementaryTree, TreeError> {
    let mut assignments = vec![(
        AtomPath::parse_atoms(&["form"]).unwrap(),
        vec![Atom::new(form).unwrap()],
    )];
    assignments.extend(req.extra_assignments.iter().cloned());
    let (extended, node) = engine::make_overlay(theory, entry, &assignments)?;
    reconstruct_tree(&extended, &node, &[], cfg)
}

fn overlay_always(
    theory: &Theory,
    entry: &NodeName,
    assignments: &[(AtomPath, Vec<Atom>)],
) -> Result<(Theory, NodeName), TreeError> {
    Ok(engine::make_overlay(theory, entry, assignments)?)
}

fn overlay_if_needed(
    theory: &Theory,
    entry: &NodeName,
    assignments: &[(AtomPath, Vec<Atom>)],
) -> Result<(Theory, NodeName), TreeError> {
    if assignments.is_empty() {
        Ok((theory.clone(), entry.clone()))
    } else {
        overlay_always(theory, entry, assignments)
    }
}
