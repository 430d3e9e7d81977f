//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! imp   ::= or ("->" imp)?
//! or    ::= and ("|" and)*
//! and   ::= unary ("&" unary)*
//! unary ::= "!" unary | box | atom
//! box   ::= "[" ("A"|"B") "]" ( "(" imp ("," imp)* ";" imp ")" | "(" ";" imp ")" | unary )
//! atom  ::= IDENT | "true" | "false" | "(" imp ")"
//! ```

use std::collections::BTreeSet;
use std::fmt;

use super::Formula;
use crate::game::Player;

/// A syntax error: byte offset, what was expected there and what was found.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: expected {}, found {}",
            self.position,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Arrow,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b'!' => Some(Tok::Not),
            b'&' => Some(Tok::And),
            b'|' => Some(Tok::Or),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(t) = single {
            out.push((i, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'-' && bytes.get(i + 1) == Some(&b'>') {
            out.push((i, Tok::Arrow));
            i += 2;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            out.push((
                start,
                match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
                },
            ));
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(ParseError {
                position: i,
                expected: vec!["a formula token".into()],
                found: format!("`{ch}`"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.toks[self.at].0,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&tok.describe()]))
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::negate(self.unary()?))
            }
            Tok::LBracket => self.modal(),
            _ => self.atom(),
        }
    }

    fn modal(&mut self) -> Result<Formula, ParseError> {
        self.expect(Tok::LBracket)?;
        let player = match self.peek() {
            Tok::Ident(s) if s == "A" => Player::A,
            Tok::Ident(s) if s == "B" => Player::B,
            _ => return Err(self.error(&["`A`", "`B`"])),
        };
        self.bump();
        self.expect(Tok::RBracket)?;
        if *self.peek() != Tok::LParen {
            return Ok(Formula::boxed(player, self.unary()?));
        }
        self.bump();
        let mut instances = BTreeSet::new();
        if *self.peek() == Tok::Semi {
            self.bump();
        } else {
            let first = self.implication()?;
            match self.peek() {
                Tok::RParen => {
                    // a parenthesized scope such as `[A](p & q)`
                    self.bump();
                    return Ok(Formula::boxed(player, first));
                }
                Tok::Comma | Tok::Semi => {
                    instances.insert(first);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        instances.insert(self.implication()?);
                    }
                    self.expect(Tok::Semi)?;
                }
                _ => return Err(self.error(&["`,`", "`;`", "`)`"])),
            }
        }
        let scope = self.implication()?;
        self.expect(Tok::RParen)?;
        Ok(Formula::instantial(player, instances, scope))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Formula::Atom(s))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.bump();
                let f = self.implication()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => Err(self.error(&["an atom", "`true`", "`false`", "`!`", "`[`", "`(`"])),
        }
    }
}

/// Parses one formula; the whole input must be consumed.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.implication()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["`&`", "`|`", "`->`", "end of input"]));
    }
    Ok(f)
}
