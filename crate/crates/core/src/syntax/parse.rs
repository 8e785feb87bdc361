//! Recursive-descent parser for the formula grammar:
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?
//! or      := and ("|" and)*
//! and     := until ("&" until)*
//! until   := unary (("U" | "R") until)?
//! unary   := ("!" | "X" | "F" | "G") unary | atom
//! atom    := "true" | "false" | IDENT | "(" formula ")"
//! ```
//!
//! Identifiers are maximal runs of `[A-Za-z0-9_]` starting with a letter, so
//! `GFa` is a single proposition; write `G F a` for the nested operators.

use super::{Flavor, Formula, Property, Proposition};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

const KEYWORDS: [&str; 7] = ["G", "F", "X", "U", "R", "true", "false"];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    Next,
    Eventually,
    Always,
    Until,
    Release,
    And,
    Or,
    Implies,
    LParen,
    RParen,
}

fn describe(tok: Option<&Token>) -> String {
    match tok {
        None => "end of input".to_string(),
        Some(Token::Ident(s)) => format!("`{s}`"),
        Some(t) => format!(
            "`{}`",
            match t {
                Token::True => "true",
                Token::False => "false",
                Token::Not => "!",
                Token::Next => "X",
                Token::Eventually => "F",
                Token::Always => "G",
                Token::Until => "U",
                Token::Release => "R",
                Token::And => "&",
                Token::Or => "|",
                Token::Implies => "->",
                Token::LParen => "(",
                Token::RParen => ")",
                Token::Ident(_) => unreachable!(),
            }
        ),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "G" => Token::Always,
                    "F" => Token::Eventually,
                    "X" => Token::Next,
                    "U" => Token::Until,
                    "R" => Token::Release,
                    "true" => Token::True,
                    "false" => Token::False,
                    ident => Token::Ident(ident.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    alphabet: Option<&'a Alphabet>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: String) -> Error {
        Error::Syntax {
            position: self.offset(),
            message,
        }
    }

    fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Implies) {
            Ok(lhs.implies(self.implication()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Token::Or) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.binary_temporal()?;
        while self.eat(&Token::And) {
            lhs = lhs.and(self.binary_temporal()?);
        }
        Ok(lhs)
    }

    fn binary_temporal(&mut self) -> Result<Formula> {
        let lhs = self.unary()?;
        if self.eat(&Token::Until) {
            Ok(lhs.until(self.binary_temporal()?))
        } else if self.eat(&Token::Release) {
            Ok(lhs.release(self.binary_temporal()?))
        } else {
            Ok(lhs)
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Token::Not) {
            Ok(self.unary()?.not())
        } else if self.eat(&Token::Next) {
            Ok(self.unary()?.next())
        } else if self.eat(&Token::Eventually) {
            Ok(self.unary()?.eventually())
        } else if self.eat(&Token::Always) {
            Ok(self.unary()?.always())
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Token::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let prop = Proposition::new(name.clone()).map_err(|_| Error::Syntax {
                    position: at,
                    message: format!("invalid proposition `{name}`"),
                })?;
                if let Some(alphabet) = self.alphabet {
                    if alphabet.index_of(&prop).is_none() {
                        return Err(Error::UnknownProposition(name));
                    }
                }
                Ok(Formula::Atom(prop))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.implication()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error(format!("expected `)`, found {}", describe(self.peek()))));
                }
                Ok(inner)
            }
            other => Err(self.error(format!("expected a formula, found {}", describe(other.as_ref())))),
        }
    }
}

/// Parses `text` in the given flavor. When `alphabet` is given, every atom
/// must belong to it. Error positions are byte offsets into `text`.
pub fn parse(text: &str, alphabet: Option<&Alphabet>, flavor: Flavor) -> Result<Property> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        end: text.len(),
        alphabet,
    };
    let formula = parser.implication()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error(format!("unexpected {}", describe(parser.peek()))));
    }
    Ok(Property { formula, flavor })
}
