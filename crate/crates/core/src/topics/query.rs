//! Boolean keyword queries for multi-label topic assignment.
//!
//! Grammar (operators are uppercase, juxtaposition means `AND`):
//!
//! ```text
//! expr := and ("OR" and)*
//! and  := not (["AND"] not)*
//! not  := "NOT" not | atom
//! atom := "(" expr ")" | "quoted phrase" | word
//! ```
//!
//! Terms are tokenized like document text and match when their tokens occur
//! contiguously in the lowercased title+abstract token sequence.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::text::{contains_phrase, tokens};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Term(Vec<String>),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn matches<S: AsRef<str>>(&self, doc: &[S]) -> bool {
        match self {
            Expr::Term(phrase) => contains_phrase(doc, phrase),
            Expr::Not(e) => !e.matches(doc),
            Expr::And(a, b) => a.matches(doc) && b.matches(doc),
            Expr::Or(a, b) => a.matches(doc) || b.matches(doc),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub name: String,
    pub expr: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lexeme {
    Open,
    Close,
    And,
    Or,
    Not,
    Term(String),
}

fn lex(input: &str) -> core::result::Result<Vec<Lexeme>, String> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Lexeme::Open);
            }
            ')' => {
                chars.next();
                out.push(Lexeme::Close);
            }
            '"' => {
                chars.next();
                let mut phrase = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some(c) => phrase.push(c),
                        None => return Err("unterminated quote".to_string()),
                    }
                }
                out.push(Lexeme::Term(phrase));
            }
            _ => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                out.push(match word.as_str() {
                    "AND" => Lexeme::And,
                    "OR" => Lexeme::Or,
                    "NOT" => Lexeme::Not,
                    _ => Lexeme::Term(word),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    lexemes: Vec<Lexeme>,
    pos: usize,
}

type ParseResult = core::result::Result<Expr, String>;

impl Parser {
    fn peek(&self) -> Option<&Lexeme> {
        self.lexemes.get(self.pos)
    }

    fn or(&mut self) -> ParseResult {
        let mut left = self.and()?;
        while self.peek() == Some(&Lexeme::Or) {
            self.pos += 1;
            left = Expr::Or(Box::new(left), Box::new(self.and()?));
        }
        Ok(left)
    }

    fn and(&mut self) -> ParseResult {
        let mut left = self.not()?;
        loop {
            match self.peek() {
                Some(Lexeme::And) => self.pos += 1,
                Some(Lexeme::Not | Lexeme::Open | Lexeme::Term(_)) => {}
                _ => break,
            }
            left = Expr::And(Box::new(left), Box::new(self.not()?));
        }
        Ok(left)
    }

    fn not(&mut self) -> ParseResult {
        if self.peek() == Some(&Lexeme::Not) {
            self.pos += 1;
            return Ok(Expr::Not(Box::new(self.not()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> ParseResult {
        let lexeme = self.peek().cloned();
        self.pos += 1;
        match lexeme {
            Some(Lexeme::Open) => {
                let e = self.or()?;
                if self.peek() != Some(&Lexeme::Close) {
                    return Err("missing `)`".to_string());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Lexeme::Term(t)) => {
                let toks = tokens(&t);
                if toks.is_empty() {
                    return Err(alloc::format!("term `{t}` has no searchable tokens"));
                }
                Ok(Expr::Term(toks))
            }
            Some(other) => Err(alloc::format!("unexpected {other:?}")),
            None => Err("unexpected end of expression".to_string()),
        }
    }
}

impl Query {
    pub fn parse(name: &str, expression: &str) -> Result<Query> {
        let err = |message: String| Error::Query { name: name.to_string(), message };
        let lexemes = lex(expression).map_err(err)?;
        let mut parser = Parser { lexemes, pos: 0 };
        let expr = parser.or().map_err(err)?;
        if parser.pos < parser.lexemes.len() {
            return Err(err(alloc::format!("unexpected {:?}", parser.lexemes[parser.pos])));
        }
        Ok(Query { name: name.to_string(), expr })
    }

    pub fn matches<S: AsRef<str>>(&self, doc: &[S]) -> bool {
        self.expr.matches(doc)
    }
}

/// Parses `topic_name: expression` lines. Blank lines and lines starting
/// with `#` are skipped.
pub fn parse_query_file(text: &str) -> Result<Vec<Query>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((name, expr)) = line.split_once(':') else {
            return Err(Error::Query {
                name: alloc::format!("line {}", lineno + 1),
                message: "expected `topic_name: expression`".to_string(),
            });
        };
        out.push(Query::parse(name.trim(), expr)?);
    }
    Ok(out)
}

/// Multi-label assignment: every document id maps to the (possibly empty)
/// set of query names whose expression matches its text.
pub fn assign_by_query<'a>(
    queries: &[Query],
    docs: impl IntoIterator<Item = (&'a str, &'a str)>,
) -> BTreeMap<String, BTreeSet<String>> {
    docs.into_iter()
        .map(|(id, text)| {
            let toks = tokens(text);
            let hits = queries.iter().filter(|q| q.matches(&toks)).map(|q| q.name.clone()).collect();
            (id.to_string(), hits)
        })
        .collect()
}
