//! Line-oriented text format for finite algebras.
//!
//! ```text
//! # comments run to end of line
//! elements: x y z
//! leq: x<=y y<=z x<=z
//! comp: x;x=x x;y=y ...
//! lres: x\y=z ...        (optional)
//! rres: x/y=z ...        (optional)
//! ```
//!
//! A block runs from its header to the next header, so long tables may wrap
//! over several lines. Reflexive order pairs are implicit; nothing else is.

use std::collections::HashMap;

use crate::algebra::{infer_residuals, FiniteResiduatedSemigroup};
use crate::error::{ParseError, ParseErrorKind};

const RESERVED: &[char] = &['<', '=', ';', '\\', '/', '#', ':', ','];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Block {
    Elements,
    Leq,
    Comp,
    Lres,
    Rres,
}

impl Block {
    fn from_header(word: &str) -> Option<Block> {
        Some(match word {
            "elements" => Block::Elements,
            "leq" => Block::Leq,
            "comp" => Block::Comp,
            "lres" => Block::Lres,
            "rres" => Block::Rres,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    line: usize,
    column: usize,
}

#[derive(Default)]
struct Blocks {
    found: HashMap<Block, (usize, Vec<Token>)>,
    last_line: usize,
}

fn split_blocks(text: &str) -> Result<Blocks, ParseError> {
    let mut blocks = Blocks::default();
    let mut current: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        blocks.last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        let mut body = line;
        let mut body_offset = 0;
        if let Some(colon) = line.find(':') {
            let head = line[..colon].trim();
            if let Some(block) = Block::from_header(head) {
                if blocks.found.contains_key(&block) {
                    let column = line.find(head).unwrap_or(0) + 1;
                    return Err(ParseError::new(
                        line_no,
                        column,
                        ParseErrorKind::Syntax(format!("block `{head}` appears twice")),
                    ));
                }
                blocks.found.insert(block, (line_no, Vec::new()));
                current = Some(block);
                body = &line[colon + 1..];
                body_offset = colon + 1;
            } else {
                let column = line.find(head).unwrap_or(0) + 1;
                return Err(ParseError::new(
                    line_no,
                    column,
                    ParseErrorKind::Syntax(format!("unknown block `{head}`")),
                ));
            }
        }
        let mut offset = 0;
        for word in body.split_whitespace() {
            let start = body[offset..].find(word).map(|p| p + offset).unwrap_or(offset);
            offset = start + word.len();
            let Some(block) = current else {
                return Err(ParseError::new(
                    line_no,
                    body_offset + start + 1,
                    ParseErrorKind::Syntax("entry outside of any block".into()),
                ));
            };
            let column = line[..body_offset + start].chars().count() + 1;
            blocks
                .found
                .get_mut(&block)
                .expect("current block registered")
                .1
                .push(Token { text: word.to_string(), line: line_no, column });
        }
    }
    Ok(blocks)
}

struct Names {
    index: HashMap<String, usize>,
}

impl Names {
    fn lookup(&self, name: &str, tok: &Token) -> Result<usize, ParseError> {
        if name.is_empty() || name.contains(RESERVED) {
            return Err(syntax(tok, format!("malformed entry `{}`", tok.text)));
        }
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::new(tok.line, tok.column, ParseErrorKind::UnknownElement(name.to_string())))
    }
}

fn syntax(tok: &Token, msg: String) -> ParseError {
    ParseError::new(tok.line, tok.column, ParseErrorKind::Syntax(msg))
}

/// Splits `x<op>y=z` into its three names.
fn split_entry(tok: &Token, op: char) -> Result<(&str, &str, &str), ParseError> {
    let malformed = || syntax(tok, format!("expected `x{op}y=z`, found `{}`", tok.text));
    let (lhs, result) = tok.text.rsplit_once('=').ok_or_else(malformed)?;
    let (x, y) = lhs.split_once(op).ok_or_else(malformed)?;
    Ok((x, y, result))
}

/// Fills an `n * n` table from `x<op>y=z` tokens, requiring every cell.
fn read_table(
    tokens: &[Token],
    header_line: usize,
    op: char,
    names: &Names,
    display: &[String],
) -> Result<Vec<usize>, ParseError> {
    let n = display.len();
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for tok in tokens {
        let (x, y, z) = split_entry(tok, op)?;
        let (x, y, z) = (names.lookup(x, tok)?, names.lookup(y, tok)?, names.lookup(z, tok)?);
        let cell = &mut table[x * n + y];
        if cell.is_some() {
            return Err(ParseError::new(
                tok.line,
                tok.column,
                ParseErrorKind::DuplicateEntry(format!("{}{op}{}", display[x], display[y])),
            ));
        }
        *cell = Some(z);
    }
    table
        .iter()
        .enumerate()
        .map(|(k, v)| {
            v.ok_or_else(|| {
                ParseError::new(
                    header_line,
                    1,
                    ParseErrorKind::MissingEntry(format!("{}{op}{}", display[k / n], display[k % n])),
                )
            })
        })
        .collect()
}

/// Parses the algebra text format. Missing residual blocks are inferred from
/// the order and composition; blocks that are present are taken as written
/// so that [`crate::algebra::validate`] can report any inconsistency.
pub fn parse_algebra(text: &str) -> Result<FiniteResiduatedSemigroup, ParseError> {
    let blocks = split_blocks(text)?;
    let Some((el_line, el_tokens)) = blocks.found.get(&Block::Elements) else {
        return Err(ParseError::new(blocks.last_line.max(1), 1, ParseErrorKind::NoElements));
    };
    let mut display: Vec<String> = Vec::new();
    for tok in el_tokens {
        if tok.text.contains(RESERVED) {
            return Err(syntax(tok, format!("reserved character in element name `{}`", tok.text)));
        }
        if !display.contains(&tok.text) {
            display.push(tok.text.clone());
        }
    }
    if display.is_empty() {
        return Err(ParseError::new(*el_line, 1, ParseErrorKind::NoElements));
    }
    let n = display.len();
    let names = Names { index: display.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect() };

    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    if let Some((_, tokens)) = blocks.found.get(&Block::Leq) {
        for tok in tokens {
            let (x, y) = tok
                .text
                .split_once("<=")
                .ok_or_else(|| syntax(tok, format!("expected `x<=y`, found `{}`", tok.text)))?;
            let (x, y) = (names.lookup(x, tok)?, names.lookup(y, tok)?);
            leq[x * n + y] = true;
        }
    }

    let comp = match blocks.found.get(&Block::Comp) {
        Some((line, tokens)) => read_table(tokens, *line, ';', &names, &display)?,
        None => {
            return Err(ParseError::new(
                blocks.last_line,
                1,
                ParseErrorKind::MissingEntry(format!("{0};{0}", display[0])),
            ))
        }
    };

    let explicit = |block: Block, op: char| -> Result<Option<Vec<usize>>, ParseError> {
        blocks
            .found
            .get(&block)
            .map(|(line, tokens)| read_table(tokens, *line, op, &names, &display))
            .transpose()
    };
    let lres = explicit(Block::Lres, '\\')?;
    let rres = explicit(Block::Rres, '/')?;

    let (lres, rres) = match (lres, rres) {
        (Some(l), Some(r)) => (l, r),
        (l, r) => {
            let (il, ir) = infer_residuals(n, &leq, &comp).map_err(|e| {
                let line = blocks.found.get(&Block::Comp).map_or(1, |(l, _)| *l);
                ParseError::new(line, 1, ParseErrorKind::Residual(e))
            })?;
            (l.unwrap_or(il), r.unwrap_or(ir))
        }
    };
    Ok(FiniteResiduatedSemigroup::from_tables(display, leq, comp, lres, rres)
        .expect("tables were shaped by the parser"))
}

/// Canonical text: blocks in fixed order, entries sorted by element name.
pub fn serialize_algebra(alg: &FiniteResiduatedSemigroup) -> String {
    let n = alg.len();
    let mut by_name: Vec<usize> = (0..n).collect();
    by_name.sort_by(|&a, &b| alg.name(a).cmp(alg.name(b)));
    let pairs: Vec<(usize, usize)> =
        by_name.iter().flat_map(|&a| by_name.iter().map(move |&b| (a, b))).collect();

    let mut out = String::new();
    out.push_str("elements:");
    for name in alg.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push_str("\nleq:");
    for &(a, b) in &pairs {
        if a != b && alg.leq(a, b) {
            out.push_str(&format!(" {}<={}", alg.name(a), alg.name(b)));
        }
    }
    let mut table = |label: &str, op: char, f: &dyn Fn(usize, usize) -> usize| {
        out.push('\n');
        out.push_str(label);
        out.push(':');
        for &(a, b) in &pairs {
            out.push_str(&format!(" {}{op}{}={}", alg.name(a), alg.name(b), alg.name(f(a, b))));
        }
    };
    table("comp", ';', &|a, b| alg.comp(a, b));
    table("lres", '\\', &|a, b| alg.lres(a, b));
    table("rres", '/', &|a, b| alg.rres(a, b));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;

    #[test]
    fn one_element() {
        let a = parse_algebra("elements: x\nleq: x<=x\ncomp: x;x=x").unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!((a.comp(0, 0), a.lres(0, 0), a.rres(0, 0)), (0, 0, 0));
    }

    #[test]
    fn c2_from_text() {
        let a = parse_algebra(
            "# two-element chain\nelements: a b\nleq: a<=b\ncomp: a;a=a a;b=a\n  b;a=a b;b=a\n",
        )
        .unwrap();
        assert_eq!(a, FiniteResiduatedSemigroup::c2());
    }

    #[test]
    fn unknown_element() {
        let err = parse_algebra("elements: x y\ncomp: x;y=z").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownElement("z".into()));
        assert_eq!((err.line, err.column), (2, 7));
    }

    #[test]
    fn missing_entry() {
        let err = parse_algebra("elements: x y\ncomp: x;x=x x;y=x y;x=x").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingEntry("y;y".into()));
    }

    #[test]
    fn duplicate_entry_and_syntax() {
        let err = parse_algebra("elements: x\ncomp: x;x=x x;x=x").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::DuplicateEntry(_)));
        let err = parse_algebra("elements: x\ncomp: x;x").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        let err = parse_algebra("elements: x\nfoo: 1").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn empty_carrier_rejected() {
        assert_eq!(parse_algebra("elements:\n").unwrap_err().kind, ParseErrorKind::NoElements);
        assert_eq!(parse_algebra("# nothing").unwrap_err().kind, ParseErrorKind::NoElements);
    }

    #[test]
    fn duplicate_names_collapse() {
        let a = parse_algebra("elements: x x\ncomp: x;x=x").unwrap();
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn residual_inference_failure_propagates() {
        let err = parse_algebra("elements: p q\ncomp: p;p=p p;q=p q;p=p q;q=q").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Residual(_)));
    }

    #[test]
    fn explicit_residuals_kept_for_validation() {
        let a = parse_algebra(
            "elements: a b\nleq: a<=b\ncomp: a;a=a a;b=a b;a=a b;b=a\n\
             lres: a\\a=a a\\b=b b\\a=b b\\b=b\nrres: a/a=b a/b=b b/a=b b/b=b",
        )
        .unwrap();
        assert_eq!(a.lres(0, 0), 0);
        assert!(!validate(&a).valid);
    }

    #[test]
    fn serialization_is_canonical() {
        let text = serialize_algebra(&FiniteResiduatedSemigroup::c2());
        assert_eq!(
            text,
            "elements: a b\nleq: a<=b\ncomp: a;a=a a;b=a b;a=a b;b=a\n\
             lres: a\\a=b a\\b=b b\\a=b b\\b=b\nrres: a/a=b a/b=b b/a=b b/b=b\n"
        );
    }
}
