//! Recursive-descent parser for equations.
//!
//! ```text
//! equation := term "=" term
//! term     := prod { "+" prod }
//! prod     := comp { "." comp }
//! comp     := unary { ";" unary }
//! unary    := "-" unary | primary [ "^" ]
//! primary  := "(" term ")" | "0" | "1" | "1'" | "0'" | variable
//! variable := letter { letter | digit }
//! ```
//!
//! `0'` is sugar for `-1'`.

use thiserror::Error;

use super::ast::{Equation, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unknown token `{0}`")]
    UnknownToken(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Plus,
    Dot,
    Semi,
    Minus,
    Caret,
    Eq,
    Zero,
    One,
    Identity,
    Diversity,
    Var(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Identity => "`1'`".into(),
            Tok::Diversity => "`0'`".into(),
            Tok::Var(v) => format!("variable `{v}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
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
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'+' => Tok::Plus,
            b'.' => Tok::Dot,
            b';' => Tok::Semi,
            b'-' => Tok::Minus,
            b'^' => Tok::Caret,
            b'=' => Tok::Eq,
            b'0' | b'1' => {
                let primed = bytes.get(i + 1) == Some(&b'\'');
                if primed {
                    i += 1;
                }
                match (c, primed) {
                    (b'0', false) => Tok::Zero,
                    (b'0', true) => Tok::Diversity,
                    (_, false) => Tok::One,
                    (_, true) => Tok::Identity,
                }
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Var(text[start..=i].to_owned())
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::UnknownToken(ch),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let (position, tok) = &self.toks[self.pos];
        ParseError {
            position: *position,
            kind: ParseErrorKind::Unexpected {
                expected,
                found: tok.describe(),
            },
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn equation(&mut self) -> Result<Equation, ParseError> {
        let lhs = self.term()?;
        self.expect(Tok::Eq, "`=`")?;
        let rhs = self.term()?;
        self.expect(Tok::End, "end of input")?;
        Ok(Equation { lhs, rhs })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.prod()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = t.join(self.prod()?);
        }
        Ok(t)
    }

    fn prod(&mut self) -> Result<Term, ParseError> {
        let mut t = self.comp()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            t = t.meet(self.comp()?);
        }
        Ok(t)
    }

    fn comp(&mut self) -> Result<Term, ParseError> {
        let mut t = self.unary()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            t = t.compose(self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.complement());
        }
        let t = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            return Ok(t.converse());
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::Identity => {
                self.bump();
                Ok(Term::Identity)
            }
            Tok::Diversity => {
                self.bump();
                Ok(Term::Identity.complement())
            }
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            _ => Err(self.error("a term")),
        }
    }
}

pub fn parse_equation(text: &str) -> Result<Equation, ParseError> {
    Parser {
        toks: lex(text)?,
        pos: 0,
    }
    .equation()
}

/// Parses a single term (no `=`).
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let t = p.term()?;
    p.expect(Tok::End, "end of input")?;
    Ok(t)
}
