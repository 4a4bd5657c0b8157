//! The bundled grammar fragments and their golden cases, embedded at build
//! time and also installed as plain files under `data/`.

use std::str::FromStr;

use thiserror::Error;

use crate::golden::{parse_golden, GoldenCase};
use crate::parser::parse_theory;
use crate::Theory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown fragment `{0}`; built-in fragments are `figure1` and `extended`")]
pub struct UnknownFragmentError(pub String);

/// The two bundled fragments. `Figure1` is the core fragment: tree
/// templates, the verb-class hierarchy and the entries Die, Eat and Give.
/// `Extended` adds the machinery for the four lexical rules plus the
/// entries Will and Sleep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fragment {
    Figure1,
    Extended,
}

impl Fragment {
    pub fn name(&self) -> &'static str {
        match self {
            Fragment::Figure1 => "figure1",
            Fragment::Extended => "extended",
        }
    }
}

impl FromStr for Fragment {
    type Err = UnknownFragmentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "figure1" => Ok(Fragment::Figure1),
            "extended" => Ok(Fragment::Extended),
            other => Err(UnknownFragmentError(other.to_string())),
        }
    }
}

/// Source text of a bundled fragment.
pub fn fragment_source(fragment: Fragment) -> &'static str {
    match fragment {
        Fragment::Figure1 => include_str!("../data/figure1.dtr"),
        Fragment::Extended => include_str!("../data/extended.dtr"),
    }
}

/// Source text of a bundled golden case file.
pub fn golden_source(fragment: Fragment) -> &'static str {
    match fragment {
        Fragment::Figure1 => include_str!("../data/figure1.golden"),
        Fragment::Extended => include_str!("../data/extended.golden"),
    }
}

/// Parse and return a bundled fragment.
pub fn load_fragment(fragment: Fragment) -> Theory {
    parse_theory(fragment_source(fragment)).expect("bundled fragment parses")
}

/// The golden cases shipped for a fragment.
pub fn golden_cases(fragment: Fragment) -> Vec<GoldenCase> {
    parse_golden(golden_source(fragment)).expect("bundled golden file parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::NodeName;
    use crate::render::render_theory;

    #[test]
    fn figure1_has_the_thirteen_nodes() {
        let theory = load_fragment(Fragment::Figure1);
        assert_eq!(theory.node_count(), 13);
        for name in [
            "TREE_NODE",
            "S_TREE",
            "VP_TREE",
            "PP_TREE",
            "P_TREE",
            "NP_TREE",
            "INTRANS_VERB",
            "TRANS_VERB",
            "DITRANS_VERB",
            "DOUBLEOBJ_VERB",
            "Die",
            "Eat",
            "Give",
        ] {
            assert!(
                theory.contains_node(&NodeName::new(name).unwrap()),
                "missing {name}"
            );
        }
        let give = theory.get_node(&NodeName::new("Give").unwrap()).unwrap();
        assert_eq!(give.sentences().len(), 2);
    }

    #[test]
    fn get_node_returns_absent_for_unknown_names() {
        let theory = load_fragment(Fragment::Figure1);
        assert!(theory.get_node(&NodeName::new("Walk").unwrap()).is_none());
        assert!(Theory::new()
            .get_node(&NodeName::new("Give").unwrap())
            .is_none());
    }

    #[test]
    fn extended_has_the_auxiliary_block() {
        let theory = load_fragment(Fragment::Extended);
        let aux_tree = theory
            .get_node(&NodeName::new("AUX_TREE").unwrap())
            .unwrap();
        let lhs = crate::ast::AtomPath::parse_atoms(&["aux_cat", "inv"]).unwrap();
        let sentence = aux_tree
            .sentences()
            .iter()
            .find(|s| s.lhs == lhs)
            .expect("AUX_TREE defines <aux_cat inv>");
        assert_eq!(sentence.to_string(), "<aux_cat inv> == s");
        assert!(theory.contains_node(&NodeName::new("Will").unwrap()));
        assert!(theory.contains_node(&NodeName::new("Sleep").unwrap()));
    }

    #[test]
    fn fragments_round_trip_through_render() {
        for fragment in [Fragment::Figure1, Fragment::Extended] {
            let theory = load_fragment(fragment);
            let reparsed = parse_theory(&render_theory(&theory)).unwrap();
            assert_eq!(theory, reparsed, "{} changed", fragment.name());
        }
    }

    #[test]
    fn golden_files_parse_and_cover_both_kinds() {
        for fragment in [Fragment::Figure1, Fragment::Extended] {
            let cases = golden_cases(fragment);
            assert!(cases.iter().any(|c| matches!(c, GoldenCase::Query { .. })));
            assert!(cases.iter().any(|c| matches!(c, GoldenCase::Tree { .. })));
        }
    }

    #[test]
    fn fragment_names_resolve() {
        assert_eq!("figure1".parse::<Fragment>().unwrap(), Fragment::Figure1);
        assert_eq!("extended".parse::<Fragment>().unwrap(), Fragment::Extended);
        assert!("figure2".parse::<Fragment>().is_err());
    }
}
