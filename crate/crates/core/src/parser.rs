//! Recursive-descent parser for theory files.
//!
//! Grammar:
//!
//! ```text
//! theory     := nodedef*
//! nodedef    := NodeName ':' sentence+ '.'
//! sentence   := lhsPath '==' descriptor+
//! lhsPath    := '<' atom* '>'
//! descriptor := atom | rhsPath | NodeName | NodeName ':' rhsPath
//!             | '"' quotedRef '"'
//! quotedRef  := atomPath | NodeName | NodeName ':' atomPath
//! rhsPath    := '<' (atom | '"' quotedRef '"')* '>'
//! atomPath   := '<' atom* '>'
//! ```
//!
//! A descriptor sequence ends at `.` or where the tokens ahead read as the
//! start of the next sentence (`<` atoms `>` `==`); the lookahead is what
//! disambiguates an `rhsPath` descriptor from the next left-hand side.
//! Quoting does not nest, so paths inside quotes contain atoms only.

use thiserror::Error;

use crate::ast::{
    Atom, AtomPath, Descriptor, GlobalRef, NodeDef, NodeName, Path, PathComponent, Sentence, Theory,
};
use crate::lexer::{lex, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: duplicate node definition `{name}`")]
    DuplicateNode {
        name: NodeName,
        line: usize,
        column: usize,
    },
    #[error("{line}:{column}: duplicate path `{path}` in node `{node}`")]
    DuplicatePath {
        node: NodeName,
        path: AtomPath,
        line: usize,
        column: usize,
    },
}

/// Parse a complete theory file. Node and sentence order is preserved.
pub fn parse_theory(src: &str) -> Result<Theory, ParseError> {
    let tokens = lex(src)?;
    let mut parser = Parser { tokens, pos: 0 };
    parser.theory()
}

/// Parse a standalone atoms-only path such as `<parent left cat>`.
/// Used for command-line arguments and golden files.
pub fn parse_atom_path(src: &str) -> Result<AtomPath, ParseError> {
    let tokens = lex(src)?;
    let mut parser = Parser { tokens, pos: 0 };
    let path = parser.atom_path()?;
    parser.expect(&TokenKind::Eof)?;
    Ok(path)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_kind(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn error_at(&self, tok: &Token, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: tok.line,
            column: tok.column,
            message: message.into(),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let tok = self.peek().clone();
        self.error_at(&tok, message)
    }

    fn expect(&mut self, kind: &TokenKind) -> Result<Token, ParseError> {
        if self.peek_kind() == kind {
            Ok(self.advance())
        } else {
            Err(self.error_here(format!(
                "expected {}, found {}",
                kind.describe(),
                self.peek_kind().describe()
            )))
        }
    }

    fn theory(&mut self) -> Result<Theory, ParseError> {
        let mut theory = Theory::new();
        while *self.peek_kind() != TokenKind::Eof {
            let (name, def, pos) = self.node_def()?;
            theory
                .add_node(name, def)
                .map_err(|e| ParseError::DuplicateNode {
                    name: e.0,
                    line: pos.0,
                    column: pos.1,
                })?;
        }
        Ok(theory)
    }

    fn node_def(&mut self) -> Result<(NodeName, NodeDef, (usize, usize)), ParseError> {
        let tok = self.peek().clone();
        let name = match &tok.kind {
            TokenKind::Ident(text) => {
                NodeName::new(text.clone()).map_err(|e| self.error_at(&tok, e.to_string()))?
            }
            other => {
                return Err(self.error_at(
                    &tok,
                    format!("expected a node name, found {}", other.describe()),
                ))
            }
        };
        self.advance();
        self.expect(&TokenKind::Colon)?;

        let mut def = NodeDef::new();
        loop {
            let start = self.peek().clone();
            let sentence = self.sentence()?;
            def.push(&name, sentence)
                .map_err(|e| ParseError::DuplicatePath {
                    node: e.node,
                    path: e.path,
                    line: start.line,
                    column: start.column,
                })?;
            match self.peek_kind() {
                TokenKind::Dot => {
                    self.advance();
                    break;
                }
                TokenKind::Lt => continue,
                other => {
                    let msg = format!("expected `<`, `.`, found {}", other.describe());
                    return Err(self.error_here(msg));
                }
            }
        }
        Ok((name, def, (tok.line, tok.column)))
    }

    fn sentence(&mut self) -> Result<Sentence, ParseError> {
        let lhs = self.atom_path()?;
        self.expect(&TokenKind::EqEq)?;
        let mut rhs = vec![self.descriptor()?];
        while *self.peek_kind() != TokenKind::Dot && !self.at_sentence_start() {
            rhs.push(self.descriptor()?);
        }
        Ok(Sentence::new(lhs, rhs))
    }

    /// True when the tokens ahead read `<` atom* `>` `==`, i.e. the next
    /// sentence's left-hand side rather than a path descriptor.
    fn at_sentence_start(&self) -> bool {
        if self.tokens[self.pos].kind != TokenKind::Lt {
            return false;
        }
        let mut i = self.pos + 1;
        while matches!(self.tokens[i].kind, TokenKind::Ident(_)) {
            i += 1;
        }
        self.tokens[i].kind == TokenKind::Gt && self.tokens[i + 1].kind == TokenKind::EqEq
    }

    fn descriptor(&mut self) -> Result<Descriptor, ParseError> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Ident(text) => {
                self.advance();
                if text.starts_with(|c: char| c.is_ascii_uppercase()) {
                    let name = NodeName::new(text.clone())
                        .map_err(|e| self.error_at(&tok, e.to_string()))?;
                    if *self.peek_kind() == TokenKind::Colon {
                        self.advance();
                        let path = self.rhs_path()?;
                        Ok(Descriptor::NodePath(name, path))
                    } else {
                        Ok(Descriptor::Node(name))
                    }
                } else {
                    let atom =
                        Atom::new(text.clone()).map_err(|e| self.error_at(&tok, e.to_string()))?;
                    Ok(Descriptor::Atom(atom))
                }
            }
            TokenKind::Lt => Ok(Descriptor::Path(self.rhs_path()?)),
            TokenKind::Quote => Ok(Descriptor::Global(self.quoted_ref()?)),
            other => Err(self.error_at(
                &tok,
                format!("expected a value descriptor, found {}", other.describe()),
            )),
        }
    }

    fn quoted_ref(&mut self) -> Result<GlobalRef, ParseError> {
        self.expect(&TokenKind::Quote)?;
        let tok = self.peek().clone();
        let gref = match &tok.kind {
            TokenKind::Lt => GlobalRef::Path(self.atom_path()?),
            TokenKind::Ident(text) => {
                let name =
                    NodeName::new(text.clone()).map_err(|e| self.error_at(&tok, e.to_string()))?;
                self.advance();
                if *self.peek_kind() == TokenKind::Colon {
                    self.advance();
                    GlobalRef::NodePath(name, self.atom_path()?)
                } else {
                    GlobalRef::Node(name)
                }
            }
            other => {
                return Err(self.error_at(
                    &tok,
                    format!(
                        "expected a node name or path inside quotes, found {}",
                        other.describe()
                    ),
                ))
            }
        };
        self.expect(&TokenKind::Quote)?;
        Ok(gref)
    }

    fn rhs_path(&mut self) -> Result<Path, ParseError> {
        self.expect(&TokenKind::Lt)?;
        let mut components = Vec::new();
        loop {
            let tok = self.peek().clone();
            match &tok.kind {
                TokenKind::Gt => {
                    self.advance();
                    return Ok(Path::new(components));
                }
                TokenKind::Ident(text) => {
                    let atom =
                        Atom::new(text.clone()).map_err(|e| self.error_at(&tok, e.to_string()))?;
                    self.advance();
                    components.push(PathComponent::Atom(atom));
                }
                TokenKind::Quote => {
                    components.push(PathComponent::Embedded(self.quoted_ref()?));
                }
                other => {
                    return Err(self.error_at(
                        &tok,
                        format!(
                            "expected an atom, a quoted reference or `>`, found {}",
                            other.describe()
                        ),
                    ))
                }
            }
        }
    }

    fn atom_path(&mut self) -> Result<AtomPath, ParseError> {
        self.expect(&TokenKind::Lt)?;
        let mut atoms = Vec::new();
        loop {
            let tok = self.peek().clone();
            match &tok.kind {
                TokenKind::Gt => {
                    self.advance();
                    return Ok(AtomPath(atoms));
                }
                TokenKind::Ident(text) => {
                    let atom =
                        Atom::new(text.clone()).map_err(|e| self.error_at(&tok, e.to_string()))?;
                    self.advance();
                    atoms.push(atom);
                }
                other => {
                    return Err(self.error_at(
                        &tok,
                        format!("expected an atom or `>`, found {}", other.describe()),
                    ))
                }
            }
        }
    }
}
