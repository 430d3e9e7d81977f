use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::dynamic::{seq_compose, DynamicGame};
use super::ops::{op_dual, op_plus, op_times};
use crate::error::{Error, Result};
use crate::game::ExtensiveGame;

/// A game term over variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GameTerm {
    Var(String),
    Plus(Box<GameTerm>, Box<GameTerm>),
    Times(Box<GameTerm>, Box<GameTerm>),
    Dual(Box<GameTerm>),
    Compose(Box<GameTerm>, Box<GameTerm>),
}

impl GameTerm {
    pub fn var(name: &str) -> Self {
        GameTerm::Var(name.to_string())
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<String>) {
        match self {
            GameTerm::Var(v) => {
                out.insert(v.clone());
            }
            GameTerm::Dual(t) => t.collect(out),
            GameTerm::Plus(a, b) | GameTerm::Times(a, b) | GameTerm::Compose(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// Whether sequential composition occurs.
    pub fn is_dynamic(&self) -> bool {
        match self {
            GameTerm::Var(_) => false,
            GameTerm::Dual(t) => t.is_dynamic(),
            GameTerm::Compose(..) => true,
            GameTerm::Plus(a, b) | GameTerm::Times(a, b) => a.is_dynamic() || b.is_dynamic(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            GameTerm::Plus(..) => 1,
            GameTerm::Times(..) => 2,
            GameTerm::Compose(..) => 3,
            GameTerm::Dual(_) | GameTerm::Var(_) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        if self.precedence() < level {
            write!(f, "({self})")
        } else {
            match self {
                GameTerm::Var(v) => f.write_str(v),
                GameTerm::Dual(t) => {
                    f.write_str("-")?;
                    t.write_at(f, 4)
                }
                GameTerm::Plus(a, b) => {
                    a.write_at(f, 1)?;
                    f.write_str(" + ")?;
                    b.write_at(f, 2)
                }
                GameTerm::Times(a, b) => {
                    a.write_at(f, 2)?;
                    f.write_str(" * ")?;
                    b.write_at(f, 3)
                }
                GameTerm::Compose(a, b) => {
                    a.write_at(f, 3)?;
                    f.write_str(" o ")?;
                    b.write_at(f, 4)
                }
            }
        }
    }
}

impl fmt::Display for GameTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: GameTerm,
    pub rhs: GameTerm,
}

impl Equation {
    pub fn variables(&self) -> BTreeSet<String> {
        let mut v = self.lhs.variables();
        v.extend(self.rhs.variables());
        v
    }

    pub fn is_dynamic(&self) -> bool {
        self.lhs.is_dynamic() || self.rhs.is_dynamic()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Plus,
    Times,
    Minus,
    Compose,
    LParen,
    RParen,
    Eq,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '+' => Tok::Plus,
            '*' | '×' => Tok::Times,
            '-' | '−' => Tok::Minus,
            '∘' => Tok::Compose,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            c if c.is_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' || d == '\'' {
                        word.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((i, if word == "o" { Tok::Compose } else { Tok::Ident(word) }));
                continue;
            }
            other => return Err(Error::Term(format!("unexpected `{other}` at position {i}"))),
        };
        chars.next();
        out.push((i, tok));
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

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Term(format!(
            "expected {expected} at position {}, found {:?}",
            self.toks[self.at].0,
            self.peek()
        )))
    }

    fn sum(&mut self) -> Result<GameTerm> {
        let mut acc = self.product()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = GameTerm::Plus(Box::new(acc), Box::new(self.product()?));
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<GameTerm> {
        let mut acc = self.composition()?;
        while *self.peek() == Tok::Times {
            self.bump();
            acc = GameTerm::Times(Box::new(acc), Box::new(self.composition()?));
        }
        Ok(acc)
    }

    fn composition(&mut self) -> Result<GameTerm> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Compose {
            self.bump();
            acc = GameTerm::Compose(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GameTerm> {
        match self.bump() {
            Tok::Minus => Ok(GameTerm::Dual(Box::new(self.unary()?))),
            Tok::Ident(v) => Ok(GameTerm::Var(v)),
            Tok::LParen => {
                let t = self.sum()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("`)`");
                }
                self.bump();
                Ok(t)
            }
            _ => {
                self.at = self.at.saturating_sub(1);
                self.fail("a variable, `-` or `(`")
            }
        }
    }
}

/// Parses a term over `+`, `*` (or `×`), `o` (or `∘`) and prefix `-`,
/// binding loosest to tightest in that order. Operators are
/// left-associative.
pub fn parse_term(text: &str) -> Result<GameTerm> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let t = p.sum()?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(t)
}

/// Parses `LHS = RHS`.
pub fn parse_equation(text: &str) -> Result<Equation> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let lhs = p.sum()?;
    if *p.peek() != Tok::Eq {
        return p.fail("`=`");
    }
    p.bump();
    let rhs = p.sum()?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(Equation { lhs, rhs })
}

fn unbound(v: &str) -> Error {
    Error::Term(format!("unbound variable `{v}`"))
}

/// Evaluates a term without `∘` over ordinary games.
pub fn eval_static(t: &GameTerm, env: &BTreeMap<String, ExtensiveGame>) -> Result<ExtensiveGame> {
    match t {
        GameTerm::Var(v) => env.get(v).cloned().ok_or_else(|| unbound(v)),
        GameTerm::Plus(a, b) => op_plus(&eval_static(a, env)?, &eval_static(b, env)?),
        GameTerm::Times(a, b) => op_times(&eval_static(a, env)?, &eval_static(b, env)?),
        GameTerm::Dual(a) => Ok(op_dual(&eval_static(a, env)?)),
        GameTerm::Compose(..) => Err(Error::Term(
            "sequential composition needs dynamic games".into(),
        )),
    }
}

/// Evaluates a term over dynamic games.
pub fn eval_dynamic(t: &GameTerm, env: &BTreeMap<String, DynamicGame>) -> Result<DynamicGame> {
    match t {
        GameTerm::Var(v) => env.get(v).cloned().ok_or_else(|| unbound(v)),
        GameTerm::Plus(a, b) => eval_dynamic(a, env)?.plus(&eval_dynamic(b, env)?),
        GameTerm::Times(a, b) => eval_dynamic(a, env)?.times(&eval_dynamic(b, env)?),
        GameTerm::Dual(a) => Ok(eval_dynamic(a, env)?.dual()),
        GameTerm::Compose(a, b) => seq_compose(&eval_dynamic(a, env)?, &eval_dynamic(b, env)?),
    }
}
