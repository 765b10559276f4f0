use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Directive(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    ColonDash,
    Arrow,
    Backslash,
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `text` into tokens. `%` starts a comment running to the end of the line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let bump = |i: &mut usize, col: &mut usize, k: usize| {
            *i += k;
            *col += k;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => bump(&mut i, &mut col, 1),
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' | ')' | '[' | ']' | ',' | '.' | '\\' => {
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    _ => Tok::Backslash,
                };
                out.push(Token {
                    tok,
                    line: tl,
                    column: tc,
                });
                bump(&mut i, &mut col, 1);
            }
            ':' => {
                let tok = if chars.get(i + 1) == Some(&'-') {
                    bump(&mut i, &mut col, 2);
                    Tok::ColonDash
                } else {
                    bump(&mut i, &mut col, 1);
                    Tok::Colon
                };
                out.push(Token {
                    tok,
                    line: tl,
                    column: tc,
                });
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Token {
                    tok: Tok::Arrow,
                    line: tl,
                    column: tc,
                });
                bump(&mut i, &mut col, 2);
            }
            '#' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                if j == start {
                    return Err(syntax(tl, tc, "expected directive name after `#`"));
                }
                let name: String = chars[start..j].iter().collect();
                out.push(Token {
                    tok: Tok::Directive(name),
                    line: tl,
                    column: tc,
                });
                let k = j - i;
                bump(&mut i, &mut col, k);
            }
            c if is_ident_char(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(name),
                    line: tl,
                    column: tc,
                });
                let k = j - i;
                bump(&mut i, &mut col, k);
            }
            other => {
                return Err(syntax(
                    tl,
                    tc,
                    &alloc::format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

pub(crate) fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

/// Cursor over a token vector shared by the program, formula and term parsers.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self> {
        Ok(Cursor {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].tok
    }

    pub fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    pub fn error(&self, message: &str) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    pub fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected {what}")))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.error(&alloc::format!("expected {what}"))),
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }
}
