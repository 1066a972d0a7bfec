//! Bounded brute-force search for representations over small bases.
//!
//! Relations are row-major bit masks (`base * base <= 64`). The search
//! assigns one element at a time, forces the values of products, residuals
//! and joins of assigned elements, and prunes by the order condition. The
//! first decision is restricted to masks that are least in their orbit under
//! relabeling of base points, which every condition is invariant under.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::algebra::{permutations, FiniteResiduatedSemigroup};
use crate::bits::Relation;
use crate::error::{Error, Result};
use crate::pointalg::SPStructure;
use crate::relrep::Interpretation;
use crate::verifier::{check_representation, check_sp_representation};

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;
/// Largest base the mask encoding supports.
pub const MAX_SEARCH_BASE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_base: usize,
    pub node_budget: u64,
    pub symmetry_breaking: bool,
    /// Split the first decision across threads. The verdict is unchanged and
    /// the earliest branch in search order wins.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_base: 3, node_budget: DEFAULT_NODE_BUDGET, symmetry_breaking: true, parallel: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Interpretation),
    /// No base of size at most `max_base` admits a representation.
    Exhausted { max_base: usize },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Nodes (candidate values tried) per base size, starting at size 1.
    pub nodes_per_base: Vec<u64>,
}

impl SearchStats {
    pub fn total_nodes(&self) -> u64 {
        self.nodes_per_base.iter().sum()
    }
}

#[derive(Debug, Clone, Copy)]
enum RelOp {
    Compose,
    LeftResidual,
    RightResidual,
    Union,
}

struct Problem<'a> {
    n: usize,
    leq: Vec<bool>,
    ops: Vec<(RelOp, Vec<usize>)>,
    names: &'a [String],
}

struct Masks {
    k: usize,
    row: u64,
}

impl Masks {
    fn new(k: usize) -> Self {
        Masks { k, row: if k == 0 { 0 } else { (1u64 << k) - 1 } }
    }

    fn full(&self) -> u64 {
        let bits = self.k * self.k;
        if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 }
    }

    fn get_row(&self, r: u64, x: usize) -> u64 {
        r >> (x * self.k) & self.row
    }

    fn apply(&self, op: RelOp, r: u64, s: u64) -> u64 {
        let k = self.k;
        let mut out = 0u64;
        match op {
            RelOp::Union => return r | s,
            RelOp::Compose => {
                for x in 0..k {
                    let rx = self.get_row(r, x);
                    let mut acc = 0;
                    for y in 0..k {
                        if rx >> y & 1 == 1 {
                            acc |= self.get_row(s, y);
                        }
                    }
                    out |= acc << (x * k);
                }
            }
            RelOp::LeftResidual => {
                for x in 0..k {
                    let mut acc = self.row;
                    for z in 0..k {
                        if r >> (z * k + x) & 1 == 1 {
                            acc &= self.get_row(s, z);
                        }
                    }
                    out |= acc << (x * k);
                }
            }
            RelOp::RightResidual => {
                for x in 0..k {
                    let rx = self.get_row(r, x);
                    for y in 0..k {
                        if self.get_row(s, y) & !rx == 0 {
                            out |= 1 << (x * k + y);
                        }
                    }
                }
            }
        }
        out
    }

    fn permute(&self, r: u64, perm: &[usize]) -> u64 {
        let k = self.k;
        let mut out = 0;
        for x in 0..k {
            for y in 0..k {
                if r >> (x * k + y) & 1 == 1 {
                    out |= 1 << (perm[x] * k + perm[y]);
                }
            }
        }
        out
    }
}

struct Run<'p> {
    problem: &'p Problem<'p>,
    masks: Masks,
    perms: Vec<Vec<usize>>,
    symmetry: bool,
    nodes: AtomicU64,
    budget: u64,
    spent_before: u64,
}

impl Run<'_> {
    fn le(&self, a: usize, b: usize) -> bool {
        self.problem.leq[a * self.problem.n + b]
    }

    fn tick(&self) -> Result<()> {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.spent_before + used > self.budget {
            return Err(Error::ResourceLimit { budget: self.budget });
        }
        Ok(())
    }

    /// Forces consequences of `start`'s new value; false on a conflict.
    fn propagate(&self, assign: &mut [Option<u64>], start: usize) -> bool {
        let n = self.problem.n;
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            let mu = assign[u].expect("queued elements are assigned");
            for (w, mw) in assign.iter().enumerate().take(n) {
                let Some(mw) = *mw else { continue };
                if self.le(u, w) != (mu & !mw == 0) || self.le(w, u) != (mw & !mu == 0) {
                    return false;
                }
            }
            for w in 0..n {
                let Some(mw) = assign[w] else { continue };
                for (x, y, mx, my) in [(u, w, mu, mw), (w, u, mw, mu)] {
                    for (op, table) in &self.problem.ops {
                        let t = table[x * n + y];
                        let v = self.masks.apply(*op, mx, my);
                        match assign[t] {
                            Some(m) if m != v => return false,
                            Some(_) => {}
                            None => {
                                assign[t] = Some(v);
                                queue.push(t);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn candidates(&self, assign: &[Option<u64>], e: usize) -> Vec<u64> {
        let n = self.problem.n;
        let mut lo = 0;
        let mut hi = self.masks.full();
        for (x, m) in assign.iter().enumerate().take(n) {
            if let Some(m) = m {
                if self.le(x, e) {
                    lo |= m;
                }
                if self.le(e, x) {
                    hi &= m;
                }
            }
        }
        if lo & !hi != 0 {
            return Vec::new();
        }
        let root = assign.iter().all(Option::is_none);
        let free = hi & !lo;
        let mut out = Vec::new();
        let mut sub = 0u64;
        loop {
            let v = lo | sub;
            if !(root && self.symmetry) || self.is_orbit_minimum(v) {
                out.push(v);
            }
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
        out
    }

    fn is_orbit_minimum(&self, v: u64) -> bool {
        self.perms.iter().all(|p| self.masks.permute(v, p) >= v)
    }

    fn try_value(&self, assign: &[Option<u64>], e: usize, v: u64) -> Result<Option<Vec<u64>>> {
        self.tick()?;
        let mut next = assign.to_vec();
        next[e] = Some(v);
        if !self.propagate(&mut next, e) {
            return Ok(None);
        }
        self.solve(next)
    }

    fn solve(&self, assign: Vec<Option<u64>>) -> Result<Option<Vec<u64>>> {
        let Some(e) = assign.iter().position(Option::is_none) else {
            return Ok(Some(assign.into_iter().map(|m| m.expect("complete")).collect()));
        };
        for v in self.candidates(&assign, e) {
            if let Some(found) = self.try_value(&assign, e, v)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn solve_parallel(&self) -> Result<Option<Vec<u64>>> {
        let n = self.problem.n;
        let root = vec![None; n];
        let first = self.candidates(&root, 0);
        first
            .par_iter()
            .map(|&v| self.try_value(&root, 0, v))
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            })
            .unwrap_or(Ok(None))
    }
}

/// Base size and one relation per element.
type Assignment = (usize, Vec<Relation>);

fn run_search(problem: &Problem, opts: SearchOptions) -> Result<(Option<Assignment>, SearchStats)> {
    if opts.max_base > MAX_SEARCH_BASE {
        return Err(Error::Invalid(format!("search base is limited to {MAX_SEARCH_BASE} points")));
    }
    let mut stats = SearchStats::default();
    for k in 1..=opts.max_base {
        let run = Run {
            problem,
            masks: Masks::new(k),
            perms: if opts.symmetry_breaking { permutations(k) } else { Vec::new() },
            symmetry: opts.symmetry_breaking,
            nodes: AtomicU64::new(0),
            budget: opts.node_budget,
            spent_before: stats.total_nodes(),
        };
        let result = if opts.parallel { run.solve_parallel() } else { run.solve(vec![None; problem.n]) };
        stats.nodes_per_base.push(run.nodes.load(Ordering::Relaxed));
        if let Some(masks) = result? {
            let rels = masks.into_iter().map(|m| Relation::from_mask(k, m)).collect();
            return Ok((Some((k, rels)), stats));
        }
    }
    Ok((None, stats))
}

fn interpretation(names: &[String], k: usize, relations: Vec<Relation>) -> Interpretation {
    Interpretation {
        elements: names.to_vec(),
        base: (0..k).map(|i| i.to_string()).collect(),
        relations,
    }
}

/// Searches every base of size `1..=max_base` for a representation of a
/// residuated semigroup. A returned interpretation has passed
/// [`check_representation`].
pub fn search_representation(
    alg: &FiniteResiduatedSemigroup,
    opts: SearchOptions,
) -> Result<(SearchOutcome, SearchStats)> {
    let n = alg.len();
    let table = |f: &dyn Fn(usize, usize) -> usize| (0..n * n).map(|k| f(k / n, k % n)).collect::<Vec<_>>();
    let problem = Problem {
        n,
        leq: alg.leq_table().to_vec(),
        ops: vec![
            (RelOp::Compose, table(&|a, b| alg.comp(a, b))),
            (RelOp::LeftResidual, table(&|a, b| alg.lres(a, b))),
            (RelOp::RightResidual, table(&|a, b| alg.rres(a, b))),
        ],
        names: alg.names(),
    };
    let (found, stats) = run_search(&problem, opts)?;
    let outcome = match found {
        Some((k, rels)) => {
            let interp = interpretation(problem.names, k, rels);
            if !check_representation(alg, &interp)?.all_pass() {
                return Err(Error::Invalid("search produced an interpretation that fails verification".into()));
            }
            SearchOutcome::Found(interp)
        }
        None => SearchOutcome::Exhausted { max_base: opts.max_base },
    };
    Ok((outcome, stats))
}

/// As [`search_representation`] for the `(;, +)` signature.
pub fn search_sp_representation(s: &SPStructure, opts: SearchOptions) -> Result<(SearchOutcome, SearchStats)> {
    let n = s.len();
    let table = |f: &dyn Fn(usize, usize) -> usize| (0..n * n).map(|k| f(k / n, k % n)).collect::<Vec<_>>();
    let problem = Problem {
        n,
        leq: (0..n * n).map(|k| s.leq(k / n, k % n)).collect(),
        ops: vec![(RelOp::Compose, table(&|a, b| s.comp(a, b))), (RelOp::Union, table(&|a, b| s.join(a, b)))],
        names: s.names(),
    };
    let (found, stats) = run_search(&problem, opts)?;
    let outcome = match found {
        Some((k, rels)) => {
            let interp = interpretation(problem.names, k, rels);
            if !check_sp_representation(s, &interp)?.all_pass() {
                return Err(Error::Invalid("search produced an interpretation that fails verification".into()));
            }
            SearchOutcome::Found(interp)
        }
        None => SearchOutcome::Exhausted { max_base: opts.max_base },
    };
    Ok((outcome, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_ops_agree_with_relations() {
        let k = 3;
        let m = Masks::new(k);
        for (r, s) in [(0b000_010_001u64, 0b100_100_011u64), (0b111_000_101, 0b010_110_000)] {
            let (rr, ss) = (Relation::from_mask(k, r), Relation::from_mask(k, s));
            assert_eq!(m.apply(RelOp::Compose, r, s), rr.compose(&ss).to_mask());
            assert_eq!(m.apply(RelOp::LeftResidual, r, s), rr.left_residual(&ss).to_mask());
            assert_eq!(m.apply(RelOp::RightResidual, r, s), rr.right_residual(&ss).to_mask());
        }
    }

    #[test]
    fn trivial_found_at_base_one() {
        let t = FiniteResiduatedSemigroup::trivial("x");
        let (outcome, _) = search_representation(&t, SearchOptions::default()).unwrap();
        match outcome {
            SearchOutcome::Found(i) => assert_eq!(i.base_size(), 1),
            other => panic!("expected a representation, got {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let c2 = FiniteResiduatedSemigroup::c2();
        let opts = SearchOptions { max_base: 3, node_budget: 3, ..Default::default() };
        assert_eq!(search_representation(&c2, opts).unwrap_err(), Error::ResourceLimit { budget: 3 });
    }
}
