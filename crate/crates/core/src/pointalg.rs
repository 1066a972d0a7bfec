//! The point algebra: the eight unions of `<`, `=`, `>` over a dense
//! unbounded linear order, and its `{+, ;}`-reducts.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::search::{search_sp_representation, SearchOptions, SearchOutcome, SearchStats};

pub const LT: u8 = 0b001;
pub const EQ: u8 = 0b010;
pub const GT: u8 = 0b100;
pub const FULL: u8 = 0b111;

const NAMES: [&str; 8] = ["empty", "<", "=", "<=", ">", "neq", ">=", "full"];

/// Display name of an atom set.
pub fn element_name(x: u8) -> &'static str {
    NAMES[x as usize & 7]
}

/// Parses one element: `full`, `neq`, `empty`, or a string over `<`, `=`, `>`.
pub fn parse_element(token: &str) -> Result<u8> {
    let token = token.trim();
    match token {
        "full" => return Ok(FULL),
        "neq" => return Ok(LT | GT),
        "empty" => return Ok(0),
        "" => return Err(Error::Invalid("empty point-algebra element".into())),
        _ => {}
    }
    token.chars().try_fold(0u8, |acc, c| match c {
        '<' => Ok(acc | LT),
        '=' => Ok(acc | EQ),
        '>' => Ok(acc | GT),
        _ => Err(Error::Invalid(format!("`{token}` is not a set of atoms over <, =, >"))),
    })
}

/// Comma-separated list of elements, e.g. `<,>` or `<,=`.
pub fn parse_generators(text: &str) -> Result<Vec<u8>> {
    text.split(',').map(parse_element).collect()
}

fn atom_compose(r: u8, s: u8) -> u8 {
    match (r, s) {
        (EQ, x) | (x, EQ) => x,
        (LT, LT) => LT,
        (GT, GT) => GT,
        _ => FULL,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointAlgebra {
    comp: [[u8; 8]; 8],
}

impl PointAlgebra {
    pub fn comp(&self, r: u8, s: u8) -> u8 {
        self.comp[r as usize][s as usize]
    }

    pub fn join(&self, r: u8, s: u8) -> u8 {
        r | s
    }

    pub fn table(&self) -> &[[u8; 8]; 8] {
        &self.comp
    }
}

/// Composition computed atom by atom: `r;s` is the union of the compositions
/// of the atoms in `r` and `s`.
pub fn build_point_algebra() -> PointAlgebra {
    let mut comp = [[0u8; 8]; 8];
    for r in 0..8u8 {
        for s in 0..8u8 {
            let mut out = 0;
            for a in [LT, EQ, GT] {
                for b in [LT, EQ, GT] {
                    if r & a != 0 && s & b != 0 {
                        out |= atom_compose(a, b);
                    }
                }
            }
            comp[r as usize][s as usize] = out;
        }
    }
    PointAlgebra { comp }
}

/// Points of `[0, 1]` after `depth` rounds of midpoint insertion, as
/// numerators over `2^depth`.
pub fn dense_chain(depth: u32) -> Vec<u64> {
    let mut points = vec![0u64, 1 << depth];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(points.len() * 2);
        for w in points.windows(2) {
            next.push(w[0]);
            next.push((w[0] + w[1]) / 2);
        }
        next.push(*points.last().expect("nonempty"));
        points = next;
    }
    points
}

/// Composition read off concrete relations on a finite chain: the atoms
/// realized by pairs `(x, z)` with some `y` linking them.
pub fn dense_chain_table(depth: u32) -> [[u8; 8]; 8] {
    let chain = dense_chain(depth);
    let atom = |x: u64, y: u64| match x.cmp(&y) {
        std::cmp::Ordering::Less => LT,
        std::cmp::Ordering::Equal => EQ,
        std::cmp::Ordering::Greater => GT,
    };
    let mut table = [[0u8; 8]; 8];
    for r in 0..8u8 {
        for s in 0..8u8 {
            let mut out = 0;
            for &x in &chain {
                for &z in &chain {
                    let t = atom(x, z);
                    if out & t == 0 && chain.iter().any(|&y| r & atom(x, y) != 0 && s & atom(y, z) != 0) {
                        out |= t;
                    }
                }
            }
            table[r as usize][s as usize] = out;
        }
    }
    table
}

/// A finite join-semilattice-ordered semigroup. The order is derived:
/// `a <= b` iff `a + b = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPStructure {
    names: Vec<String>,
    join: Vec<usize>,
    comp: Vec<usize>,
}

impl SPStructure {
    /// Builds the structure and checks that join is a semilattice and that
    /// composition is associative and distributes over join on both sides.
    pub fn new(names: Vec<String>, join: Vec<usize>, comp: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if n == 0 || join.len() != n * n || comp.len() != n * n || join.iter().chain(&comp).any(|&v| v >= n) {
            return Err(Error::Invalid("structure tables have the wrong shape".into()));
        }
        let s = SPStructure { names, join, comp };
        let bad = |law: &str, w: [usize; 3]| Err(Error::Invalid(format!("{law} fails at {w:?}")));
        for a in 0..n {
            if s.join(a, a) != a {
                return bad("join idempotence", [a, a, a]);
            }
            for b in 0..n {
                if s.join(a, b) != s.join(b, a) {
                    return bad("join commutativity", [a, b, b]);
                }
                for c in 0..n {
                    if s.join(a, s.join(b, c)) != s.join(s.join(a, b), c) {
                        return bad("join associativity", [a, b, c]);
                    }
                    if s.comp(a, s.comp(b, c)) != s.comp(s.comp(a, b), c) {
                        return bad("associativity", [a, b, c]);
                    }
                    if s.comp(a, s.join(b, c)) != s.join(s.comp(a, b), s.comp(a, c)) {
                        return bad("left distributivity", [a, b, c]);
                    }
                    if s.comp(s.join(b, c), a) != s.join(s.comp(b, a), s.comp(c, a)) {
                        return bad("right distributivity", [a, b, c]);
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn comp(&self, a: usize, b: usize) -> usize {
        self.comp[a * self.len() + b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }
}

/// A reduct together with the point-algebra element behind each index.
#[derive(Debug, Clone)]
pub struct Reduct {
    pub structure: SPStructure,
    pub elements: Vec<u8>,
}

/// The smallest subset containing `generators` closed under `+` and `;`,
/// listed in increasing atom-mask order.
pub fn reduct(p: &PointAlgebra, generators: &[u8]) -> Result<Reduct> {
    if generators.is_empty() {
        return Err(Error::Invalid("a reduct needs at least one generator".into()));
    }
    let mut present = [false; 8];
    for &g in generators {
        present[(g & 7) as usize] = true;
    }
    loop {
        let current: Vec<u8> = (0..8u8).filter(|&x| present[x as usize]).collect();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                for v in [p.join(a, b), p.comp(a, b)] {
                    if !present[v as usize] {
                        present[v as usize] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let elements: Vec<u8> = (0..8u8).filter(|&x| present[x as usize]).collect();
    let pos = |x: u8| elements.iter().position(|&e| e == x).expect("closed");
    let n = elements.len();
    let mut join = vec![0; n * n];
    let mut comp = vec![0; n * n];
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate() {
            join[i * n + j] = pos(p.join(a, b));
            comp[i * n + j] = pos(p.comp(a, b));
        }
    }
    let names = elements.iter().map(|&e| element_name(e).to_string()).collect();
    Ok(Reduct { structure: SPStructure::new(names, join, comp)?, elements })
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
    pub elapsed: Duration,
}

/// Bounded search for a `(;, +)` representation of `s` over bases of size
/// at most `opts.max_base`.
pub fn frp_probe(s: &SPStructure, opts: SearchOptions) -> Result<ProbeReport> {
    let start = Instant::now();
    let (outcome, stats) = search_sp_representation(s, opts)?;
    Ok(ProbeReport { outcome, stats, elapsed: start.elapsed() })
}
