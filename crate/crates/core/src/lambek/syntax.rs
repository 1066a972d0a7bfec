//! Formulas and sequents.
//!
//! Atoms are `[a-z][a-z0-9]*`. `*` is the product and left-associates;
//! `\` and `/` bind loosest and do not chain, so `p\q/r` must be
//! parenthesized. Antecedent formulas are separated by commas, and `|-`
//! separates the antecedent from the succedent.

use std::fmt;

use crate::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    /// `a * b`.
    Prod(Box<Formula>, Box<Formula>),
    /// `a \ b`: what yields `b` when preceded by `a`.
    Under(Box<Formula>, Box<Formula>),
    /// `b / a`: what yields `b` when followed by `a`. Fields are `(b, a)`.
    Over(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    pub fn prod(a: Formula, b: Formula) -> Self {
        Formula::Prod(Box::new(a), Box::new(b))
    }

    pub fn under(a: Formula, b: Formula) -> Self {
        Formula::Under(Box::new(a), Box::new(b))
    }

    pub fn over(b: Formula, a: Formula) -> Self {
        Formula::Over(Box::new(b), Box::new(a))
    }

    /// Number of connectives.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Prod(a, b) | Formula::Under(a, b) | Formula::Over(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }

    pub fn atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(p) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            Formula::Prod(a, b) | Formula::Under(a, b) | Formula::Over(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }

    fn is_residual(&self) -> bool {
        matches!(self, Formula::Under(..) | Formula::Over(..))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn factor(x: &Formula, f: &mut fmt::Formatter<'_>, wrap_prod: bool) -> fmt::Result {
            if x.is_residual() || (wrap_prod && matches!(x, Formula::Prod(..))) {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        }
        fn operand(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if x.is_residual() {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        }
        match self {
            Formula::Atom(p) => f.write_str(p),
            Formula::Prod(a, b) => {
                factor(a, f, false)?;
                f.write_str("*")?;
                factor(b, f, true)
            }
            Formula::Under(a, b) => {
                operand(a, f)?;
                f.write_str("\\")?;
                operand(b, f)
            }
            Formula::Over(b, a) => {
                operand(b, f)?;
                f.write_str("/")?;
                operand(a, f)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    /// Panics on an empty antecedent.
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Self {
        assert!(!antecedent.is_empty(), "sequents need a nonempty antecedent");
        Sequent { antecedent, succedent }
    }

    pub fn connectives(&self) -> usize {
        self.antecedent.iter().map(Formula::connectives).sum::<usize>() + self.succedent.connectives()
    }

    /// Atoms in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in &self.antecedent {
            f.atoms(&mut out);
        }
        self.succedent.atoms(&mut out);
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " |- {}", self.succedent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Star,
    Back,
    Slash,
    Open,
    Close,
}

fn err(column: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(1, column, ParseErrorKind::Syntax(msg.into()))
}

fn lex(text: &str, offset: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i + 1;
        match c {
            ' ' | '\t' => {}
            '*' => out.push((Tok::Star, col)),
            '\\' => out.push((Tok::Back, col)),
            '/' => out.push((Tok::Slash, col)),
            '(' => out.push((Tok::Open, col)),
            ')' => out.push((Tok::Close, col)),
            'a'..='z' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_lowercase() || chars[i + 1].is_ascii_digit()) {
                    i += 1;
                }
                out.push((Tok::Atom(chars[start..=i].iter().collect()), col));
            }
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.product()?;
        let make: fn(Formula, Formula) -> Formula = match self.peek() {
            Some(Tok::Back) => Formula::under,
            Some(Tok::Slash) => Formula::over,
            _ => return Ok(left),
        };
        self.pos += 1;
        let right = self.product()?;
        if matches!(self.peek(), Some(Tok::Back | Tok::Slash)) {
            return Err(err(self.col(), "residuals do not chain; add parentheses"));
        }
        Ok(make(left, right))
    }

    fn product(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.primary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = Formula::prod(acc, self.primary()?);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let col = self.col();
        match self.toks.get(self.pos).map(|(t, _)| t.clone()) {
            Some(Tok::Atom(p)) => {
                self.pos += 1;
                Ok(Formula::Atom(p))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let f = self.formula()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(err(self.col(), "expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(_) => Err(err(col, "expected an atom or `(`")),
            None => Err(err(col, "unexpected end of formula")),
        }
    }
}

fn parse_at(text: &str, offset: usize) -> Result<Formula, ParseError> {
    let toks = lex(text, offset)?;
    let mut p = Parser { toks, pos: 0, end_col: offset + text.chars().count() + 1 };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(f)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_at(text, 0)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let Some(turnstile) = text.find("|-") else {
        return Err(err(text.chars().count() + 1, "expected `|-`"));
    };
    if text[turnstile + 2..].contains("|-") {
        return Err(err(turnstile + 1, "more than one `|-`"));
    }
    let (lhs, rhs) = (&text[..turnstile], &text[turnstile + 2..]);
    if lhs.trim().is_empty() {
        return Err(err(1, "empty antecedent"));
    }
    let mut antecedent = Vec::new();
    let mut offset = 0;
    for part in lhs.split(',') {
        if part.trim().is_empty() {
            return Err(err(offset + 1, "empty formula in antecedent"));
        }
        antecedent.push(parse_at(part, offset)?);
        offset += part.chars().count() + 1;
    }
    let succedent = parse_at(rhs, lhs.chars().count() + 2)?;
    Ok(Sequent { antecedent, succedent })
}
