//! Canonical text form for theories. Output re-parses to an equal theory:
//! one block per node, sentences indented, the final sentence ending in `.`.

use std::fmt::Write;

use crate::ast::Theory;

pub fn render_theory(theory: &Theory) -> String {
    let mut out = String::new();
    for (i, (name, def)) in theory.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{name}:");
        let last = def.sentences().len().saturating_sub(1);
        for (j, sentence) in def.sentences().iter().enumerate() {
            let _ = write!(out, "    {sentence}");
            if j == last {
                out.push('.');
            }
            out.push('\n');
        }
    }
    out
}
