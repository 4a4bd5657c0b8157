//! Shared test support: an independently written reference evaluator and
//! generators for random theories.
//!
//! The reference evaluator works on its own plain-string mirror of a
//! theory, finds matches by scanning prefix lengths downward with exact
//! lookup, and threads the global context as explicit arguments. It shares
//! no code with the engine it checks.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::Union;

use treelex::{
    Atom, AtomPath, Descriptor, GlobalRef, NodeDef, NodeName, Path, PathComponent, Sentence, Theory,
};

// --------------------------------------------------------------------------
// Reference evaluator
// --------------------------------------------------------------------------

pub struct RefTheory {
    nodes: Vec<(String, Vec<RefSentence>)>,
}

pub struct RefSentence {
    lhs: Vec<String>,
    rhs: Vec<RefDesc>,
}

pub enum RefGlobal {
    Path(Vec<String>),
    Node(String),
    NodePath(String, Vec<String>),
}

pub enum RefComp {
    Atom(String),
    Embedded(RefGlobal),
}

pub enum RefDesc {
    Atom(String),
    Path(Vec<RefComp>),
    Node(String),
    NodePath(String, Vec<RefComp>),
    Global(RefGlobal),
}

fn mirror_global(g: &GlobalRef) -> RefGlobal {
    match g {
        GlobalRef::Path(p) => RefGlobal::Path(p.iter().map(|a| a.as_str().to_string()).collect()),
        GlobalRef::Node(n) => RefGlobal::Node(n.as_str().to_string()),
        GlobalRef::NodePath(n, p) => RefGlobal::NodePath(
            n.as_str().to_string(),
            p.iter().map(|a| a.as_str().to_string()).collect(),
        ),
    }
}

fn mirror_path(p: &Path) -> Vec<RefComp> {
    p.components()
        .iter()
        .map(|c| match c {
            PathComponent::Atom(a) => RefComp::Atom(a.as_str().to_string()),
            PathComponent::Embedded(g) => RefComp::Embedded(mirror_global(g)),
        })
        .collect()
}

/// Convert a theory into the reference evaluator's own representation.
pub fn mirror_theory(theory: &Theory) -> RefTheory {
    let nodes = theory
        .iter()
        .map(|(name, def)| {
            let sentences = def
                .sentences()
                .iter()
                .map(|s| RefSentence {
                    lhs: s.lhs.iter().map(|a| a.as_str().to_string()).collect(),
                    rhs: s
                        .rhs
                        .iter()
                        .map(|d| match d {
                            Descriptor::Atom(a) => RefDesc::Atom(a.as_str().to_string()),
                            Descriptor::Path(p) => RefDesc::Path(mirror_path(p)),
                            Descriptor::Node(n) => RefDesc::Node(n.as_str().to_string()),
                            Descriptor::NodePath(n, p) => {
                                RefDesc::NodePath(n.as_str().to_string(), mirror_path(p))
                            }
                            Descriptor::Global(g) => RefDesc::Global(mirror_global(g)),
                        })
                        .collect(),
                })
                .collect();
            (name.as_str().to_string(), sentences)
        })
        .collect();
    RefTheory { nodes }
}

const REF_FUEL: usize = 200;

/// Evaluate `node:path`; `Err(())` for any failure (no match, unknown node,
/// out of fuel).
pub fn ref_query(theory: &RefTheory, node: &str, path: &[String]) -> Result<Vec<String>, ()> {
    ref_eval(theory, node, path, node, path, REF_FUEL)
}

fn ref_eval(
    t: &RefTheory,
    node: &str,
    path: &[String],
    gnode: &str,
    gpath: &[String],
    fuel: usize,
) -> Result<Vec<String>, ()> {
    if fuel == 0 {
        return Err(());
    }
    let sentences = t
        .nodes
        .iter()
        .find(|(name, _)| name == node)
        .map(|(_, s)| s)
        .ok_or(())?;

    let mut matched = None;
    for len in (0..=path.len()).rev() {
        if let Some(s) = sentences.iter().find(|s| s.lhs[..] == path[..len]) {
            matched = Some((s, &path[len..]));
            break;
        }
    }
    let (sentence, suffix) = matched.ok_or(())?;

    let mut out = Vec::new();
    for desc in &sentence.rhs {
        out.extend(ref_eval_desc(
            t,
            desc,
            suffix,
            node,
            gnode,
            gpath,
            fuel - 1,
        )?);
    }
    Ok(out)
}

fn ref_splice(
    t: &RefTheory,
    comps: &[RefComp],
    suffix: &[String],
    gnode: &str,
    gpath: &[String],
    fuel: usize,
) -> Result<Vec<String>, ()> {
    let mut path = Vec::new();
    for comp in comps {
        match comp {
            RefComp::Atom(a) => path.push(a.clone()),
            RefComp::Embedded(g) => path.extend(ref_eval_embedded(t, g, gnode, gpath, fuel)?),
        }
    }
    path.extend(suffix.iter().cloned());
    Ok(path)
}

fn ref_eval_embedded(
    t: &RefTheory,
    g: &RefGlobal,
    gnode: &str,
    gpath: &[String],
    fuel: usize,
) -> Result<Vec<String>, ()> {
    match g {
        RefGlobal::Path(q) => ref_eval(t, gnode, q, gnode, q, fuel),
        RefGlobal::Node(n) => ref_eval(t, n, gpath, n, gpath, fuel),
        RefGlobal::NodePath(n, q) => ref_eval(t, n, q, n, q, fuel),
    }
}

fn ref_eval_desc(
    t: &RefTheory,
    desc: &RefDesc,
    suffix: &[String],
    node: &str,
    gnode: &str,
    gpath: &[String],
    fuel: usize,
) -> Result<Vec<String>, ()> {
    match desc {
        RefDesc::Atom(a) => Ok(vec![a.clone()]),
        RefDesc::Path(comps) => {
            let p = ref_splice(t, comps, suffix, gnode, gpath, fuel)?;
            ref_eval(t, node, &p, gnode, gpath, fuel)
        }
        RefDesc::Node(n) => ref_eval(t, n, suffix, gnode, gpath, fuel),
        RefDesc::NodePath(n, comps) => {
            let p = ref_splice(t, comps, suffix, gnode, gpath, fuel)?;
            ref_eval(t, n, &p, gnode, gpath, fuel)
        }
        RefDesc::Global(g) => match g {
            RefGlobal::Path(q) => {
                let mut p = q.clone();
                p.extend(suffix.iter().cloned());
                ref_eval(t, gnode, &p, gnode, &p, fuel)
            }
            RefGlobal::Node(n) => ref_eval(t, n, suffix, n, suffix, fuel),
            RefGlobal::NodePath(n, q) => {
                let mut p = q.clone();
                p.extend(suffix.iter().cloned());
                ref_eval(t, n, &p, n, &p, fuel)
            }
        },
    }
}

// --------------------------------------------------------------------------
// Generators
// --------------------------------------------------------------------------

/// The query alphabet for generated evaluable theories.
pub const ALPHABET: [&str; 5] = ["a", "b", "c", "d", "e"];

pub fn atom(text: &str) -> Atom {
    Atom::new(text).unwrap()
}

pub fn node_name(text: &str) -> NodeName {
    NodeName::new(text).unwrap()
}

fn gen_node_name(index: usize) -> NodeName {
    node_name(&format!("N{}", index + 1))
}

fn arb_alpha_atom() -> impl Strategy<Value = Atom> {
    prop::sample::select(&ALPHABET[..]).prop_map(atom)
}

fn arb_alpha_path(
    len: impl Into<proptest::collection::SizeRange>,
) -> impl Strategy<Value = Vec<Atom>> {
    proptest::collection::vec(arb_alpha_atom(), len)
}

/// A right-hand-side path of at most `max_comps` components; when
/// `embed_max` is set, components may also be embedded `"<...>"` references
/// of at most that many atoms.
fn arb_rhs_path(max_comps: usize, embed_max: Option<usize>) -> BoxedStrategy<Path> {
    let comp: BoxedStrategy<PathComponent> = match embed_max {
        None => arb_alpha_atom().prop_map(PathComponent::Atom).boxed(),
        Some(m) => prop_oneof![
            4 => arb_alpha_atom().prop_map(PathComponent::Atom),
            1 => arb_alpha_path(0..=m).prop_map(|q| {
                PathComponent::Embedded(GlobalRef::Path(AtomPath(q)))
            }),
        ]
        .boxed(),
    };
    proptest::collection::vec(comp, 0..=max_comps)
        .prop_map(Path::new)
        .boxed()
}

/// A descriptor for a sentence of node `i` (of `k`) whose left-hand side
/// has `lhs_len` atoms. The construction makes every generated theory
/// terminating: path references are strictly shorter than the left-hand
/// side they extend, and node references only point at later nodes.
fn arb_descriptor(i: usize, k: usize, lhs_len: usize, quotes: bool) -> BoxedStrategy<Descriptor> {
    let mut options: Vec<(u32, BoxedStrategy<Descriptor>)> =
        vec![(4, arb_alpha_atom().prop_map(Descriptor::Atom).boxed())];

    let forward = i + 1 < k;
    let embed_max = if quotes && lhs_len >= 1 {
        Some(lhs_len - 1)
    } else {
        None
    };

    if forward {
        options.push((
            1,
            (i + 1..k)
                .prop_map(|j| Descriptor::Node(gen_node_name(j)))
                .boxed(),
        ));
        options.push((
            2,
            (i + 1..k, arb_rhs_path(lhs_len, embed_max))
                .prop_map(|(j, p)| Descriptor::NodePath(gen_node_name(j), p))
                .boxed(),
        ));
    }
    if lhs_len >= 1 {
        options.push((
            2,
            arb_rhs_path(lhs_len - 1, embed_max)
                .prop_map(Descriptor::Path)
                .boxed(),
        ));
    }
    if quotes && lhs_len >= 1 {
        options.push((
            1,
            arb_alpha_path(0..=lhs_len - 1)
                .prop_map(|q| Descriptor::Global(GlobalRef::Path(AtomPath(q))))
                .boxed(),
        ));
    }
    if quotes && forward {
        options.push((
            1,
            (i + 1..k)
                .prop_map(|j| Descriptor::Global(GlobalRef::Node(gen_node_name(j))))
                .boxed(),
        ));
        options.push((
            1,
            (i + 1..k, arb_alpha_path(0..=lhs_len))
                .prop_map(|(j, q)| {
                    Descriptor::Global(GlobalRef::NodePath(gen_node_name(j), AtomPath(q)))
                })
                .boxed(),
        ));
    }

    Union::new_weighted(options).boxed()
}

fn arb_eval_node(i: usize, k: usize, quotes: bool) -> BoxedStrategy<NodeDef> {
    proptest::collection::btree_set(arb_alpha_path(0..=3usize), 1..=4usize)
        .prop_flat_map(move |lhs_set| {
            let lhs_list: Vec<Vec<Atom>> = lhs_set.into_iter().collect();
            let descs: Vec<BoxedStrategy<Descriptor>> = lhs_list
                .iter()
                .map(|lhs| arb_descriptor(i, k, lhs.len(), quotes))
                .collect();
            (Just(lhs_list), descs)
        })
        .prop_map(move |(lhs_list, descs)| {
            let name = gen_node_name(i);
            let mut def = NodeDef::new();
            for (lhs, desc) in lhs_list.into_iter().zip(descs) {
                def.push(&name, Sentence::new(AtomPath(lhs), vec![desc]))
                    .expect("left-hand sides are unique by construction");
            }
            def
        })
        .boxed()
}

/// A random terminating (acyclic) theory of up to 6 nodes over a 5-atom
/// alphabet; roughly two in five carry quoted descriptors.
pub fn arb_eval_theory() -> impl Strategy<Value = Theory> {
    (1usize..=6, prop_oneof![3 => Just(false), 2 => Just(true)]).prop_flat_map(|(k, quotes)| {
        let nodes: Vec<BoxedStrategy<NodeDef>> =
            (0..k).map(|i| arb_eval_node(i, k, quotes)).collect();
        nodes.prop_map(move |defs| {
            let mut theory = Theory::new();
            for (i, def) in defs.into_iter().enumerate() {
                theory
                    .add_node(gen_node_name(i), def)
                    .expect("generated node names are distinct");
            }
            theory
        })
    })
}

/// Every query path of length at most `max_len` over the test alphabet.
pub fn all_query_paths(max_len: usize) -> Vec<Vec<Atom>> {
    let mut paths: Vec<Vec<Atom>> = vec![Vec::new()];
    let mut layer: Vec<Vec<Atom>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for path in &layer {
            for a in ALPHABET {
                let mut extended = path.clone();
                extended.push(atom(a));
                next.push(extended);
            }
        }
        paths.extend(next.iter().cloned());
        layer = next;
    }
    paths
}

// --------------------------------------------------------------------------
// Syntax-only generator (round-trip testing; never evaluated)
// --------------------------------------------------------------------------

fn arb_ident_atom() -> BoxedStrategy<Atom> {
    prop_oneof![
        3 => prop::sample::select(&ALPHABET[..]).prop_map(atom),
        1 => "[a-z][a-z0-9_-]{0,5}".prop_map(|s| Atom::new(s).unwrap()),
        1 => "[0-9][a-z0-9_-]{0,3}".prop_map(|s| Atom::new(s).unwrap()),
    ]
    .boxed()
}

fn arb_ident_node() -> BoxedStrategy<NodeName> {
    "[A-Z][A-Za-z0-9_-]{0,6}"
        .prop_map(|s| NodeName::new(s).unwrap())
        .boxed()
}

fn arb_syntax_global() -> BoxedStrategy<GlobalRef> {
    prop_oneof![
        2 => proptest::collection::vec(arb_ident_atom(), 0..=2)
            .prop_map(|q| GlobalRef::Path(AtomPath(q))),
        1 => arb_ident_node().prop_map(GlobalRef::Node),
        1 => (arb_ident_node(), proptest::collection::vec(arb_ident_atom(), 0..=2))
            .prop_map(|(n, q)| GlobalRef::NodePath(n, AtomPath(q))),
    ]
    .boxed()
}

fn arb_syntax_path() -> BoxedStrategy<Path> {
    let comp = prop_oneof![
        3 => arb_ident_atom().prop_map(PathComponent::Atom),
        1 => arb_syntax_global().prop_map(PathComponent::Embedded),
    ];
    proptest::collection::vec(comp, 0..=3)
        .prop_map(Path::new)
        .boxed()
}

fn arb_syntax_descriptor() -> BoxedStrategy<Descriptor> {
    prop_oneof![
        3 => arb_ident_atom().prop_map(Descriptor::Atom),
        2 => arb_syntax_path().prop_map(Descriptor::Path),
        1 => arb_ident_node().prop_map(Descriptor::Node),
        2 => (arb_ident_node(), arb_syntax_path())
            .prop_map(|(n, p)| Descriptor::NodePath(n, p)),
        1 => arb_syntax_global().prop_map(Descriptor::Global),
    ]
    .boxed()
}

/// A random syntactically valid theory exercising the whole descriptor
/// language; node references need not resolve.
pub fn arb_syntax_theory() -> impl Strategy<Value = Theory> {
    let sentences = proptest::collection::btree_map(
        proptest::collection::vec(arb_ident_atom(), 0..=3),
        proptest::collection::vec(arb_syntax_descriptor(), 1..=3),
        1..=4,
    );
    proptest::collection::btree_map(arb_ident_node(), sentences, 0..=5).prop_map(|nodes| {
        let mut theory = Theory::new();
        for (name, sentence_map) in nodes {
            let mut def = NodeDef::new();
            for (lhs, rhs) in sentence_map {
                def.push(&name, Sentence::new(AtomPath(lhs), rhs))
                    .expect("left-hand sides are unique by construction");
            }
            theory
                .add_node(name, def)
                .expect("node names are unique by construction");
        }
        theory
    })
}

/// A set of distinct left-hand sides plus a query extending one of them.
pub fn arb_lhs_set_and_query() -> impl Strategy<Value = (Vec<Vec<Atom>>, Vec<Atom>)> {
    proptest::collection::btree_set(arb_alpha_path(0..=3usize), 1..=8usize).prop_flat_map(|set| {
        let list: Vec<Vec<Atom>> = set.into_iter().collect();
        let pick = prop::sample::select(list.clone());
        (Just(list), pick, arb_alpha_path(0..=3usize)).prop_map(|(list, base, suffix)| {
            let mut query = base;
            query.extend(suffix);
            (list, query)
        })
    })
}

// --------------------------------------------------------------------------
// Binary driver
// --------------------------------------------------------------------------

/// Run the installed binary and capture (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_treelex"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("binary exits normally"),
        String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        String::from_utf8(output.stderr).expect("stderr is UTF-8"),
    )
}

/// Proptest config for integration tests: explicit case count, no
/// regression-file persistence (there is no lib.rs next to these tests).
pub fn proptest_cases(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
