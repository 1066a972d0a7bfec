//! Shared corpus and independent reference implementations.
//!
//! The oracles here work on plain vectors and quantifier-by-quantifier
//! loops. None of them calls into the library code they are compared with.

#![allow(dead_code)]

use std::collections::BTreeSet;

use resq_core::algebra::enumerate_algebras;
use resq_core::bits::Relation;
use resq_core::concrete::{generate_concrete, random_generators};
use resq_core::lambek::{Formula, Sequent};
use resq_core::FiniteResiduatedSemigroup;

/// All labeled algebras with at most three elements, C2, and at least twenty
/// four-element algebras (products of two-element algebras and four-element
/// closures of random relations).
pub fn corpus() -> Vec<(String, FiniteResiduatedSemigroup)> {
    let mut out = vec![("c2".to_string(), FiniteResiduatedSemigroup::c2())];
    let mut small: Vec<Vec<FiniteResiduatedSemigroup>> = Vec::new();
    for n in 1..=3 {
        let algs: Vec<_> = enumerate_algebras(n).unwrap().collect();
        for (i, a) in algs.iter().enumerate() {
            out.push((format!("n{n}-{i}"), a.clone()));
        }
        small.push(algs);
    }
    for (i, a) in small[1].iter().enumerate() {
        for (j, b) in small[1].iter().enumerate() {
            out.push((format!("prod-{i}-{j}"), a.product(b)));
        }
    }
    out.extend(concrete_of_size(4).into_iter().map(|(name, alg, _)| (name, alg)));
    out
}

/// Distinct `generate_concrete` outputs with exactly `size` elements.
pub fn concrete_of_size(size: usize) -> Vec<(String, FiniteResiduatedSemigroup, resq_core::relrep::Interpretation)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for seed in 0..400u64 {
        for base in 2..=3 {
            let gens = random_generators(base, seed, 1 + (seed % 2) as usize, 0.4);
            let Ok((alg, interp)) = generate_concrete(base, &gens, 64) else { continue };
            if alg.len() == size && seen.insert(interp.relations.iter().map(Relation::to_mask).collect::<Vec<_>>()) {
                out.push((format!("concrete-{base}-{seed}"), alg, interp));
            }
        }
    }
    out
}

/// A structure given by raw tables, with no guarantee of any law.
#[derive(Clone, Debug)]
pub struct RawTables {
    pub n: usize,
    pub leq: Vec<bool>,
    pub comp: Vec<usize>,
    pub lres: Vec<usize>,
    pub rres: Vec<usize>,
}

impl RawTables {
    pub fn of(a: &FiniteResiduatedSemigroup) -> Self {
        let n = a.len();
        let cell = |f: &dyn Fn(usize, usize) -> usize| (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| f(x, y)).collect();
        RawTables {
            n,
            leq: (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| a.leq(x, y)).collect(),
            comp: cell(&|x, y| a.comp(x, y)),
            lres: cell(&|x, y| a.lres(x, y)),
            rres: cell(&|x, y| a.rres(x, y)),
        }
    }

    pub fn to_algebra(&self) -> FiniteResiduatedSemigroup {
        let names = (0..self.n).map(|i| format!("e{i}")).collect();
        FiniteResiduatedSemigroup::from_tables(names, self.leq.clone(), self.comp.clone(), self.lres.clone(), self.rres.clone())
            .unwrap()
    }
}

/// Which of the eight axiom groups fail, in the library's axiom order.
pub fn naive_failures(t: &RawTables) -> Vec<bool> {
    let n = t.n;
    let le = |a: usize, b: usize| t.leq[a * n + b];
    let c = |a: usize, b: usize| t.comp[a * n + b];
    let mut fail = vec![false; 8];
    for a in 0..n {
        if !le(a, a) {
            fail[0] = true;
        }
        for b in 0..n {
            if a != b && le(a, b) && le(b, a) {
                fail[1] = true;
            }
            for z in 0..n {
                if le(a, b) && le(b, z) && !le(a, z) {
                    fail[2] = true;
                }
                if c(a, c(b, z)) != c(c(a, b), z) {
                    fail[3] = true;
                }
                if le(a, b) && !le(c(a, z), c(b, z)) {
                    fail[4] = true;
                }
                if le(a, b) && !le(c(z, a), c(z, b)) {
                    fail[5] = true;
                }
                // b <= a\z  iff  a;b <= z  iff  a <= z/b
                let mid = le(c(a, b), z);
                if le(b, t.lres[a * n + z]) != mid {
                    fail[6] = true;
                }
                if le(a, t.rres[z * n + b]) != mid {
                    fail[7] = true;
                }
            }
        }
    }
    fail
}

/// Counts residuated semigroups on `n` labeled points by brute force over
/// all boolean matrices and composition tables.
pub fn naive_count(n: usize) -> usize {
    let cells = n * n;
    let mut count = 0;
    for order in 0u32..1 << cells {
        let leq: Vec<bool> = (0..cells).map(|k| order >> k & 1 == 1).collect();
        let le = |a: usize, b: usize| leq[a * n + b];
        let po = (0..n).all(|a| le(a, a))
            && (0..n).all(|a| (0..n).all(|b| a == b || !(le(a, b) && le(b, a))))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|z| !(le(a, b) && le(b, z)) || le(a, z))));
        if !po {
            continue;
        }
        for code in 0..(n as u64).pow(cells as u32) {
            let comp: Vec<usize> = (0..cells).map(|k| (code / (n as u64).pow(k as u32) % n as u64) as usize).collect();
            // Residuals exist iff each {b : a;b <= z} and {a : a;b <= z}
            // has a greatest element; then the law holds by construction, but
            // we re-check it through naive_failures anyway.
            let greatest = |set: Vec<usize>| set.iter().copied().find(|&m| set.iter().all(|&x| le(x, m)));
            let mut lres = vec![0; cells];
            let mut rres = vec![0; cells];
            let mut ok = true;
            'outer: for a in 0..n {
                for z in 0..n {
                    match greatest((0..n).filter(|&b| le(comp[a * n + b], z)).collect()) {
                        Some(m) => lres[a * n + z] = m,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                    match greatest((0..n).filter(|&x| le(comp[x * n + a], z)).collect()) {
                        Some(m) => rres[z * n + a] = m,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok && naive_failures(&RawTables { n, leq: leq.clone(), comp, lres, rres }).iter().all(|f| !f) {
                count += 1;
            }
        }
    }
    count
}

/// m-closed subsets by definition over all 2^n subsets, as sorted index lists.
pub fn naive_closed_sets(a: &FiniteResiduatedSemigroup) -> BTreeSet<Vec<usize>> {
    let n = a.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let x: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if naive_m(a, &x) == x {
            out.insert(x);
        }
    }
    out
}

pub fn naive_upper(a: &FiniteResiduatedSemigroup, x: &[usize]) -> Vec<usize> {
    (0..a.len()).filter(|&y| x.iter().all(|&v| a.leq(v, y))).collect()
}

pub fn naive_lower(a: &FiniteResiduatedSemigroup, x: &[usize]) -> Vec<usize> {
    (0..a.len()).filter(|&y| x.iter().all(|&v| a.leq(y, v))).collect()
}

pub fn naive_m(a: &FiniteResiduatedSemigroup, x: &[usize]) -> Vec<usize> {
    naive_lower(a, &naive_upper(a, x))
}

/// `r;s`, `r\s` and `r/s` straight from their quantified definitions.
pub fn naive_compose(r: &Relation, s: &Relation) -> Relation {
    let n = r.base_size();
    let mut out = Relation::empty(n);
    for x in 0..n {
        for z in 0..n {
            if (0..n).any(|y| r.contains(x, y) && s.contains(y, z)) {
                out.insert(x, z);
            }
        }
    }
    out
}

pub fn naive_lres(r: &Relation, s: &Relation) -> Relation {
    let n = r.base_size();
    let mut out = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if (0..n).all(|z| !r.contains(z, x) || s.contains(z, y)) {
                out.insert(x, y);
            }
        }
    }
    out
}

pub fn naive_rres(r: &Relation, s: &Relation) -> Relation {
    let n = r.base_size();
    let mut out = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if (0..n).all(|z| !s.contains(y, z) || r.contains(x, z)) {
                out.insert(x, y);
            }
        }
    }
    out
}

/// Unmemoized cut-free search, written from the rules directly.
pub fn naive_derivable(ant: &[Formula], goal: &Formula) -> bool {
    if ant.len() == 1 && ant[0] == *goal {
        return true;
    }
    match goal {
        Formula::Under(a, b) => {
            let mut g = vec![(**a).clone()];
            g.extend_from_slice(ant);
            if naive_derivable(&g, b) {
                return true;
            }
        }
        Formula::Over(b, a) => {
            let mut g = ant.to_vec();
            g.push((**a).clone());
            if naive_derivable(&g, b) {
                return true;
            }
        }
        Formula::Prod(a, b) => {
            if (1..ant.len()).any(|i| naive_derivable(&ant[..i], a) && naive_derivable(&ant[i..], b)) {
                return true;
            }
        }
        Formula::Atom(_) => {}
    }
    for k in 0..ant.len() {
        let (left, right) = (&ant[..k], &ant[k + 1..]);
        let rebuilt = |pre: &[Formula], mid: Formula, post: &[Formula]| {
            let mut v = pre.to_vec();
            v.push(mid);
            v.extend_from_slice(post);
            v
        };
        match &ant[k] {
            Formula::Prod(a, b) => {
                let mut v = left.to_vec();
                v.push((**a).clone());
                v.push((**b).clone());
                v.extend_from_slice(right);
                if naive_derivable(&v, goal) {
                    return true;
                }
            }
            Formula::Under(a, b) => {
                for j in 0..k {
                    if naive_derivable(&ant[j..k], a) && naive_derivable(&rebuilt(&ant[..j], (**b).clone(), right), goal) {
                        return true;
                    }
                }
            }
            Formula::Over(b, a) => {
                for j in k + 2..=ant.len() {
                    if naive_derivable(&ant[k + 1..j], a) && naive_derivable(&rebuilt(left, (**b).clone(), &ant[j..]), goal) {
                        return true;
                    }
                }
            }
            Formula::Atom(_) => {}
        }
    }
    false
}

/// Every formula over `atoms` with exactly `k` connectives.
pub fn formulas(atoms: &[&str], k: usize) -> Vec<Formula> {
    if k == 0 {
        return atoms.iter().map(|a| Formula::atom(a)).collect();
    }
    let mut out = Vec::new();
    for left in 0..k {
        let right = k - 1 - left;
        for x in formulas(atoms, left) {
            for y in formulas(atoms, right) {
                out.push(Formula::prod(x.clone(), y.clone()));
                out.push(Formula::under(x.clone(), y.clone()));
                out.push(Formula::over(x.clone(), y.clone()));
            }
        }
    }
    out
}

/// The hand-derived Lambek fixture: `(derivable, sequent)` pairs.
pub fn lambek_fixture() -> Vec<(bool, Sequent)> {
    include_str!("../fixtures/lambek_suite.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (verdict, seq) = l.split_once(' ').unwrap();
            let derivable = match verdict {
                "yes" => true,
                "no" => false,
                other => panic!("bad verdict {other}"),
            };
            (derivable, resq_core::lambek::parse_sequent(seq.trim()).unwrap())
        })
        .collect()
}
