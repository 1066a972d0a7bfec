//! Finite residuated semigroups: tables, validation, residual inference and
//! exhaustive enumeration of small carriers.
//!
//! Elements are dense indices `0..n`; names only matter for parsing and
//! printing. Tables are stored row-major: `comp[a * n + b]` is `a;b`,
//! `lres[a * n + c]` is `a\c` and `rres[c * n + b]` is `c/b`.

use std::fmt;

use crate::error::{Error, NoResidual, Result, Side};

/// Default largest carrier accepted by [`enumerate_algebras`].
pub const DEFAULT_ENUMERATION_CAP: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteResiduatedSemigroup {
    names: Vec<String>,
    leq: Vec<bool>,
    comp: Vec<usize>,
    lres: Vec<usize>,
    rres: Vec<usize>,
}

impl FiniteResiduatedSemigroup {
    /// Builds an algebra from an order and a composition table, inferring both
    /// residuals.
    pub fn new(names: Vec<String>, leq: Vec<bool>, comp: Vec<usize>) -> Result<Self> {
        let n = names.len();
        check_shape(n, &leq, &comp)?;
        let (lres, rres) = infer_residuals(n, &leq, &comp)?;
        Ok(FiniteResiduatedSemigroup { names, leq, comp, lres, rres })
    }

    /// Builds an algebra from complete tables without checking any axiom.
    pub fn from_tables(
        names: Vec<String>,
        leq: Vec<bool>,
        comp: Vec<usize>,
        lres: Vec<usize>,
        rres: Vec<usize>,
    ) -> Result<Self> {
        let n = names.len();
        check_shape(n, &leq, &comp)?;
        for t in [&lres, &rres] {
            if t.len() != n * n || t.iter().any(|&v| v >= n) {
                return Err(Error::Invalid(format!("residual table must have {} entries below {n}", n * n)));
            }
        }
        Ok(FiniteResiduatedSemigroup { names, leq, comp, lres, rres })
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

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn comp(&self, a: usize, b: usize) -> usize {
        self.comp[a * self.len() + b]
    }

    /// `a\c`.
    pub fn lres(&self, a: usize, c: usize) -> usize {
        self.lres[a * self.len() + c]
    }

    /// `c/b`.
    pub fn rres(&self, c: usize, b: usize) -> usize {
        self.rres[c * self.len() + b]
    }

    pub fn leq_table(&self) -> &[bool] {
        &self.leq
    }

    pub fn comp_table(&self) -> &[usize] {
        &self.comp
    }

    pub fn set_leq(&mut self, a: usize, b: usize, value: bool) {
        let n = self.len();
        self.leq[a * n + b] = value;
    }

    pub fn set_comp(&mut self, a: usize, b: usize, value: usize) {
        let n = self.len();
        self.comp[a * n + b] = value;
    }

    pub fn set_lres(&mut self, a: usize, c: usize, value: usize) {
        let n = self.len();
        self.lres[a * n + c] = value;
    }

    pub fn set_rres(&mut self, c: usize, b: usize, value: usize) {
        let n = self.len();
        self.rres[c * n + b] = value;
    }

    /// The one-element algebra on `name`.
    pub fn trivial(name: &str) -> Self {
        Self::new(vec![name.to_string()], vec![true], vec![0]).expect("one-element algebra")
    }

    /// The two-element chain `a < b` with every product equal to `a`.
    pub fn c2() -> Self {
        Self::new(
            vec!["a".into(), "b".into()],
            vec![true, true, false, true],
            vec![0; 4],
        )
        .expect("C2 is residuated")
    }

    /// Relabels the carrier: element `i` becomes `perm[i]`. Names move with
    /// their elements.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.len();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let remap = |table: &[usize]| -> Vec<usize> {
            (0..n * n).map(|k| perm[table[inv[k / n] * n + inv[k % n]]]).collect()
        };
        FiniteResiduatedSemigroup {
            names: (0..n).map(|i| self.names[inv[i]].clone()).collect(),
            leq: (0..n * n).map(|k| self.leq[inv[k / n] * n + inv[k % n]]).collect(),
            comp: remap(&self.comp),
            lres: remap(&self.lres),
            rres: remap(&self.rres),
        }
    }

    /// Isomorphism-invariant key over the order and composition tables:
    /// the lexicographically least encoding over all relabelings. Intended
    /// for small carriers (it tries all `n!` permutations).
    pub fn canonical_key(&self) -> Vec<usize> {
        let n = self.len();
        let mut best: Option<Vec<usize>> = None;
        for perm in permutations(n) {
            let p = self.permute(&perm);
            let mut key: Vec<usize> = p.leq.iter().map(|&b| b as usize).collect();
            key.extend_from_slice(&p.comp);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical_key() == other.canonical_key()
    }

    /// Direct product; element `(i, j)` has index `i * other.len() + j` and
    /// name `left.right`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.len(), other.len());
        let size = n * m;
        let split = |k: usize| (k / m, k % m);
        let names = (0..size)
            .map(|k| {
                let (i, j) = split(k);
                format!("{}.{}", self.names[i], other.names[j])
            })
            .collect();
        let mut leq = vec![false; size * size];
        let mut comp = vec![0; size * size];
        let mut lres = vec![0; size * size];
        let mut rres = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                let ((a, b), (c, d)) = (split(x), split(y));
                let k = x * size + y;
                leq[k] = self.leq(a, c) && other.leq(b, d);
                comp[k] = self.comp(a, c) * m + other.comp(b, d);
                lres[k] = self.lres(a, c) * m + other.lres(b, d);
                rres[k] = self.rres(a, c) * m + other.rres(b, d);
            }
        }
        FiniteResiduatedSemigroup { names, leq, comp, lres, rres }
    }
}

impl fmt::Debug for FiniteResiduatedSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::serialize_algebra(self))
    }
}

fn check_shape(n: usize, leq: &[bool], comp: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("the carrier must be nonempty".into()));
    }
    if leq.len() != n * n || comp.len() != n * n || comp.iter().any(|&v| v >= n) {
        return Err(Error::Invalid(format!("order and composition tables must have {} entries below {n}", n * n)));
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Axiom groups checked by [`validate`].
///
/// Witness conventions (`[x, y, z]` element indices):
/// reflexivity `[a, a, a]`; antisymmetry `[a, b, a]` with `a <= b <= a`;
/// transitivity `[a, b, c]` with `a <= b <= c`; associativity `[a, b, c]`;
/// monotonicity-first `[a, b, c]` with `a <= b` but `a;c` not below `b;c`;
/// monotonicity-second likewise for `c;a` and `c;b`;
/// residuation-left `[a, b, c]` where `b <= a\c` and `a;b <= c` disagree;
/// residuation-right `[a, b, c]` where `a;b <= c` and `a <= c/b` disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
    Associativity,
    MonotonicityFirst,
    MonotonicitySecond,
    ResiduationLeft,
    ResiduationRight,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Reflexivity,
        Axiom::Antisymmetry,
        Axiom::Transitivity,
        Axiom::Associativity,
        Axiom::MonotonicityFirst,
        Axiom::MonotonicitySecond,
        Axiom::ResiduationLeft,
        Axiom::ResiduationRight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::Associativity => "associativity",
            Axiom::MonotonicityFirst => "monotonicity-first",
            Axiom::MonotonicitySecond => "monotonicity-second",
            Axiom::ResiduationLeft => "residuation-left",
            Axiom::ResiduationRight => "residuation-right",
        }
    }

    /// Re-evaluates the axiom on one witness.
    pub fn violated_by(self, alg: &FiniteResiduatedSemigroup, [a, b, c]: [usize; 3]) -> bool {
        let le = |x, y| alg.leq(x, y);
        match self {
            Axiom::Reflexivity => !le(a, a),
            Axiom::Antisymmetry => a != b && le(a, b) && le(b, a),
            Axiom::Transitivity => le(a, b) && le(b, c) && !le(a, c),
            Axiom::Associativity => alg.comp(a, alg.comp(b, c)) != alg.comp(alg.comp(a, b), c),
            Axiom::MonotonicityFirst => le(a, b) && !le(alg.comp(a, c), alg.comp(b, c)),
            Axiom::MonotonicitySecond => le(a, b) && !le(alg.comp(c, a), alg.comp(c, b)),
            Axiom::ResiduationLeft => le(b, alg.lres(a, c)) != le(alg.comp(a, b), c),
            Axiom::ResiduationRight => le(alg.comp(a, b), c) != le(a, alg.rres(c, b)),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationFailure {
    pub axiom: Axiom,
    pub witness: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    /// Lexicographically first witness for each failed axiom, in axiom order.
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn failure(&self, axiom: Axiom) -> Option<&ValidationFailure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }
}

/// Checks every axiom group on every triple and reports the first witness of
/// each failure. A structure passing this is a residuated semigroup, and hence
/// representable by binary relations over a finite base.
pub fn validate(alg: &FiniteResiduatedSemigroup) -> ValidationReport {
    let n = alg.len();
    let failures: Vec<ValidationFailure> = Axiom::ALL
        .iter()
        .filter_map(|&axiom| {
            triples(n)
                .find(|&w| axiom.violated_by(alg, w))
                .map(|witness| ValidationFailure { axiom, witness })
        })
        .collect();
    ValidationReport { valid: failures.is_empty(), failures }
}

fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
}

/// Computes `a\c = max{b : a;b <= c}` and `c/b = max{a : a;b <= c}`.
///
/// Returns the left table indexed `[a * n + c]` and the right table indexed
/// `[c * n + b]`.
pub fn infer_residuals(
    n: usize,
    leq: &[bool],
    comp: &[usize],
) -> Result<(Vec<usize>, Vec<usize>), NoResidual> {
    let le = |x: usize, y: usize| leq[x * n + y];
    let maximum = |candidates: &[usize]| {
        candidates
            .iter()
            .copied()
            .find(|&m| candidates.iter().all(|&x| le(x, m)))
    };
    let mut lres = vec![0; n * n];
    let mut rres = vec![0; n * n];
    for operand in 0..n {
        for bound in 0..n {
            let left: Vec<usize> = (0..n).filter(|&b| le(comp[operand * n + b], bound)).collect();
            lres[operand * n + bound] = maximum(&left).ok_or_else(|| NoResidual {
                operand,
                bound,
                side: Side::Left,
                candidates: left.clone(),
            })?;
            let right: Vec<usize> = (0..n).filter(|&a| le(comp[a * n + operand], bound)).collect();
            rres[bound * n + operand] = maximum(&right).ok_or_else(|| NoResidual {
                operand,
                bound,
                side: Side::Right,
                candidates: right.clone(),
            })?;
        }
    }
    Ok((lres, rres))
}

/// All partial orders on `n` labeled points, as row-major matrices.
pub fn partial_orders(n: usize) -> Vec<Vec<bool>> {
    let off: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << off.len() {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (bit, &(a, b)) in off.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[a * n + b] = true;
            }
        }
        let le = |x: usize, y: usize| leq[x * n + y];
        let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))));
        let trans = triples(n).all(|[a, b, c]| !(le(a, b) && le(b, c)) || le(a, c));
        if antisym && trans {
            out.push(leq);
        }
    }
    out
}

fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

/// Every residuated semigroup on `n` labeled elements, each exactly once, for
/// `n` up to [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_algebras(n: usize) -> Result<impl Iterator<Item = FiniteResiduatedSemigroup>> {
    enumerate_algebras_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_algebras_capped(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = FiniteResiduatedSemigroup>> {
    if n == 0 {
        return Err(Error::Invalid("the carrier must be nonempty".into()));
    }
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    let cells = n * n;
    let tables = (n as u64).pow(cells as u32);
    let names = default_names(n);
    Ok(partial_orders(n).into_iter().flat_map(move |leq| {
        let names = names.clone();
        (0..tables).filter_map(move |code| {
            let mut comp = vec![0; cells];
            let mut rest = code;
            for cell in comp.iter_mut() {
                *cell = (rest % n as u64) as usize;
                rest /= n as u64;
            }
            let le = |x: usize, y: usize| leq[x * n + y];
            let assoc = triples(n).all(|[a, b, c]| comp[a * n + comp[b * n + c]] == comp[comp[a * n + b] * n + c]);
            let monotone = triples(n).all(|[a, b, c]| {
                !le(a, b) || (le(comp[a * n + c], comp[b * n + c]) && le(comp[c * n + a], comp[c * n + b]))
            });
            if !(assoc && monotone) {
                return None;
            }
            let alg = FiniteResiduatedSemigroup::new(names.clone(), leq.clone(), comp).ok()?;
            validate(&alg).valid.then_some(alg)
        })
    }))
}

/// Keeps the first algebra of each isomorphism class.
pub fn up_to_isomorphism<I>(algebras: I) -> Vec<FiniteResiduatedSemigroup>
where
    I: IntoIterator<Item = FiniteResiduatedSemigroup>,
{
    let mut seen = std::collections::HashSet::new();
    algebras
        .into_iter()
        .filter(|a| seen.insert((a.len(), a.canonical_key())))
        .collect()
}
