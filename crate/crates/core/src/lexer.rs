//! Tokenizer for theory files. `%` starts a comment running to end of line;
//! the language is otherwise whitespace-insensitive.

use crate::parser::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Lt,
    Gt,
    EqEq,
    Colon,
    Dot,
    Quote,
    Ident(String),
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Lt => "`<`".to_string(),
            TokenKind::Gt => "`>`".to_string(),
            TokenKind::EqEq => "`==`".to_string(),
            TokenKind::Colon => "`:`".to_string(),
            TokenKind::Dot => "`.`".to_string(),
            TokenKind::Quote => "`\"`".to_string(),
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

fn is_ident_char(ch: char) -> bool {
    ch.is_ascii_alphanumeric() || ch == '_' || ch == '-'
}

/// Tokenize `src`, always ending with an `Eof` token carrying the final
/// position so the parser can report errors at end of input.
pub(crate) fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    let mut line = 1usize;
    let mut column = 1usize;

    macro_rules! bump {
        () => {{
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                column = 1;
            } else if ch.is_some() {
                column += 1;
            }
            ch
        }};
    }

    while let Some(&ch) = chars.peek() {
        let (tok_line, tok_column) = (line, column);
        match ch {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '<' => {
                bump!();
                tokens.push(Token {
                    kind: TokenKind::Lt,
                    line: tok_line,
                    column: tok_column,
                });
            }
            '>' => {
                bump!();
                tokens.push(Token {
                    kind: TokenKind::Gt,
                    line: tok_line,
                    column: tok_column,
                });
            }
            ':' => {
                bump!();
                tokens.push(Token {
                    kind: TokenKind::Colon,
                    line: tok_line,
                    column: tok_column,
                });
            }
            '.' => {
                bump!();
                tokens.push(Token {
                    kind: TokenKind::Dot,
                    line: tok_line,
                    column: tok_column,
                });
            }
            '"' => {
                bump!();
                tokens.push(Token {
                    kind: TokenKind::Quote,
                    line: tok_line,
                    column: tok_column,
                });
            }
            '=' => {
                bump!();
                match chars.peek() {
                    Some('=') => {
                        bump!();
                        tokens.push(Token {
                            kind: TokenKind::EqEq,
                            line: tok_line,
                            column: tok_column,
                        });
                    }
                    _ => {
                        return Err(ParseError::Syntax {
                            line: tok_line,
                            column: tok_column,
                            message: "expected `==`".to_string(),
                        })
                    }
                }
            }
            c if is_ident_char(c) => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    text.push(c);
                    bump!();
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text),
                    line: tok_line,
                    column: tok_column,
                });
            }
            other => {
                return Err(ParseError::Syntax {
                    line: tok_line,
                    column: tok_column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        column,
    });
    Ok(tokens)
}
