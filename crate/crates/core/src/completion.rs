//! Dedekind-MacNeille completion of a finite residuated semigroup.
//!
//! The closed sets of `m = l∘u` form a finite quantale under
//! `X ;m Y = m(X·Y)` and `X ∨ Y = m(X ∪ Y)`, and `a ↦ ↓a` embeds the algebra
//! into it, preserving products and both residuals.

use std::collections::HashMap;

use crate::algebra::FiniteResiduatedSemigroup;
use crate::bits::BitSet;
use crate::error::{Error, Result};

/// A subset of an algebra's carrier.
pub type SubsetOfA = BitSet;

/// Principal lower and upper cones, cached per algebra.
struct Cones {
    down: Vec<BitSet>,
    up: Vec<BitSet>,
}

impl Cones {
    fn new(alg: &FiniteResiduatedSemigroup) -> Self {
        let n = alg.len();
        Cones {
            down: (0..n).map(|a| BitSet::from_indices(n, (0..n).filter(|&y| alg.leq(y, a)))).collect(),
            up: (0..n).map(|a| BitSet::from_indices(n, (0..n).filter(|&y| alg.leq(a, y)))).collect(),
        }
    }

    fn lower(&self, x: &BitSet) -> BitSet {
        let mut out = BitSet::full(x.len());
        for i in x.iter() {
            out.intersect_with(&self.down[i]);
        }
        out
    }

    fn upper(&self, x: &BitSet) -> BitSet {
        let mut out = BitSet::full(x.len());
        for i in x.iter() {
            out.intersect_with(&self.up[i]);
        }
        out
    }

    fn closure(&self, x: &BitSet) -> BitSet {
        self.lower(&self.upper(x))
    }
}

/// `l(X) = {y : y <= x for all x in X}`.
pub fn lower_bounds(alg: &FiniteResiduatedSemigroup, x: &SubsetOfA) -> SubsetOfA {
    Cones::new(alg).lower(x)
}

/// `u(X) = {y : x <= y for all x in X}`.
pub fn upper_bounds(alg: &FiniteResiduatedSemigroup, x: &SubsetOfA) -> SubsetOfA {
    Cones::new(alg).upper(x)
}

/// `m(X) = l(u(X))`.
pub fn m_closure(alg: &FiniteResiduatedSemigroup, x: &SubsetOfA) -> SubsetOfA {
    Cones::new(alg).closure(x)
}

pub fn principal_cone(alg: &FiniteResiduatedSemigroup, a: usize) -> SubsetOfA {
    let n = alg.len();
    BitSet::from_indices(n, (0..n).filter(|&y| alg.leq(y, a)))
}

/// Pairwise products `{x;y : x in X, y in Y}`.
pub fn set_product(alg: &FiniteResiduatedSemigroup, x: &SubsetOfA, y: &SubsetOfA) -> SubsetOfA {
    let mut out = BitSet::empty(alg.len());
    for a in x.iter() {
        for b in y.iter() {
            out.insert(alg.comp(a, b));
        }
    }
    out
}

/// The m-closed subsets, in canonical order (cardinality, then members).
///
/// Closed sets are exactly the images of `l`, i.e. intersections of principal
/// lower cones (the empty intersection being the whole carrier), so the family
/// is computed as an intersection closure.
pub fn closed_sets(alg: &FiniteResiduatedSemigroup) -> Vec<SubsetOfA> {
    let n = alg.len();
    let cones = Cones::new(alg);
    let mut family: Vec<BitSet> = vec![BitSet::full(n)];
    let mut seen: std::collections::HashSet<BitSet> = family.iter().cloned().collect();
    for cone in &cones.down {
        if seen.insert(cone.clone()) {
            family.push(cone.clone());
        }
    }
    let mut i = 0;
    while i < family.len() {
        for j in 0..i {
            let meet = family[i].intersection(&family[j]);
            if seen.insert(meet.clone()) {
                family.push(meet);
            }
        }
        i += 1;
    }
    debug_assert!(family.iter().all(|x| cones.closure(x) == *x));
    family.sort_by(|a, b| a.cmp_canonical(b));
    family
}

/// Exhaustive scan of all `2^n` subsets for fixpoints of `m`.
pub fn closed_sets_by_scan(alg: &FiniteResiduatedSemigroup) -> Vec<SubsetOfA> {
    let n = alg.len();
    assert!(n <= 24, "subset scan is limited to small carriers");
    let cones = Cones::new(alg);
    let mut family: Vec<BitSet> = (0u64..1 << n)
        .map(|mask| BitSet::from_mask(n, mask))
        .filter(|x| cones.closure(x) == *x)
        .collect();
    family.sort_by(|a, b| a.cmp_canonical(b));
    family
}

/// A finite quantale given by tables over element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantale {
    labels: Vec<String>,
    leq: Vec<bool>,
    comp: Vec<usize>,
    sup: Vec<usize>,
    bottom: usize,
    top: usize,
    unit: Option<usize>,
}

impl Quantale {
    /// Assembles a quantale from tables and checks every law.
    pub fn from_tables(
        labels: Vec<String>,
        leq: Vec<bool>,
        comp: Vec<usize>,
        sup: Vec<usize>,
        bottom: usize,
        top: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || leq.len() != n * n || comp.len() != n * n || sup.len() != n * n {
            return Err(Error::Invalid("quantale tables have the wrong shape".into()));
        }
        let mut q = Quantale { labels, leq, comp, sup, bottom, top, unit: None };
        q.unit = (0..n).find(|&e| (0..n).all(|x| q.comp(e, x) == x && q.comp(x, e) == x));
        q.check_laws()?;
        Ok(q)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn comp(&self, a: usize, b: usize) -> usize {
        self.comp[a * self.len() + b]
    }

    pub fn sup(&self, a: usize, b: usize) -> usize {
        self.sup[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    /// Join of any family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.sup(acc, x))
    }

    /// Checks the lattice laws, associativity, binary and nullary
    /// distributivity on both sides, and the unit laws when a unit exists.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.len();
        let fail = |law: &'static str, witness: Vec<usize>| Err(Error::QuantaleLaw { law, witness });
        for a in 0..n {
            if !self.leq(a, a) {
                return fail("reflexivity", vec![a]);
            }
            if !self.leq(self.bottom, a) {
                return fail("bottom", vec![a]);
            }
            if !self.leq(a, self.top) {
                return fail("top", vec![a]);
            }
            if self.comp(a, self.bottom) != self.bottom || self.comp(self.bottom, a) != self.bottom {
                return fail("nullary distributivity", vec![a]);
            }
            if let Some(e) = self.unit {
                if self.comp(e, a) != a || self.comp(a, e) != a {
                    return fail("unit", vec![a]);
                }
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return fail("antisymmetry", vec![a, b]);
                }
                let s = self.sup(a, b);
                if !self.leq(a, s) || !self.leq(b, s) || (0..n).any(|u| self.leq(a, u) && self.leq(b, u) && !self.leq(s, u)) {
                    return fail("least upper bound", vec![a, b]);
                }
                for c in 0..n {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return fail("transitivity", vec![a, b, c]);
                    }
                    if self.comp(a, self.comp(b, c)) != self.comp(self.comp(a, b), c) {
                        return fail("associativity", vec![a, b, c]);
                    }
                    if self.comp(a, self.sup(b, c)) != self.sup(self.comp(a, b), self.comp(a, c)) {
                        return fail("left distributivity", vec![a, b, c]);
                    }
                    if self.comp(self.sup(b, c), a) != self.sup(self.comp(b, a), self.comp(c, a)) {
                        return fail("right distributivity", vec![a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }
}

/// The completion quantale together with the closed subsets it is built on.
#[derive(Debug, Clone)]
pub struct Completion {
    /// Closed subsets; quantale element `i` is `subsets[i]`.
    pub subsets: Vec<SubsetOfA>,
    pub quantale: Quantale,
}

impl Completion {
    pub fn index_of(&self, x: &SubsetOfA) -> Option<usize> {
        self.subsets.iter().position(|s| s == x)
    }
}

pub(crate) fn subset_label(alg: &FiniteResiduatedSemigroup, x: &SubsetOfA) -> String {
    let names: Vec<&str> = x.iter().map(|i| alg.name(i)).collect();
    format!("{{{}}}", names.join(","))
}

/// The quantale of m-closed subsets with `X ;m Y = m(X·Y)` and
/// `X ∨ Y = m(X ∪ Y)`; bottom is `m(∅)`, top the whole carrier.
pub fn build_quantale(alg: &FiniteResiduatedSemigroup) -> Result<Completion> {
    let n = alg.len();
    let cones = Cones::new(alg);
    let subsets = closed_sets(alg);
    let size = subsets.len();
    let index: HashMap<&BitSet, usize> = subsets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let find = |x: &BitSet| -> Result<usize> {
        index.get(x).copied().ok_or_else(|| Error::QuantaleLaw { law: "closure", witness: x.iter().collect() })
    };
    let mut leq = vec![false; size * size];
    let mut comp = vec![0; size * size];
    let mut sup = vec![0; size * size];
    for i in 0..size {
        for j in 0..size {
            let k = i * size + j;
            leq[k] = subsets[i].is_subset(&subsets[j]);
            comp[k] = find(&cones.closure(&set_product(alg, &subsets[i], &subsets[j])))?;
            sup[k] = find(&cones.closure(&subsets[i].union(&subsets[j])))?;
        }
    }
    let bottom = find(&cones.closure(&BitSet::empty(n)))?;
    let top = find(&BitSet::full(n))?;
    let labels = subsets.iter().map(|s| subset_label(alg, s)).collect();
    let quantale = Quantale::from_tables(labels, leq, comp, sup, bottom, top)?;
    Ok(Completion { subsets, quantale })
}

/// Residual tables of a finite quantale, both indexed `[a * n + b]`:
/// `a\b = ∨{c : a;c <= b}` and `a/b = ∨{c : c;b <= a}`.
pub fn quantale_residuals(q: &Quantale) -> (Vec<usize>, Vec<usize>) {
    let n = q.len();
    let mut lres = vec![0; n * n];
    let mut rres = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            lres[a * n + b] = q.join_all((0..n).filter(|&c| q.leq(q.comp(a, c), b)));
            rres[a * n + b] = q.join_all((0..n).filter(|&c| q.leq(q.comp(c, b), a)));
        }
    }
    (lres, rres)
}

/// Maps each element `a` to the index of `↓a` and checks that the map is an
/// order embedding preserving `;`, `\` and `/`.
pub fn embed(alg: &FiniteResiduatedSemigroup, completion: &Completion) -> Result<Vec<usize>> {
    let n = alg.len();
    let q = &completion.quantale;
    let qn = q.len();
    let f: Vec<usize> = (0..n)
        .map(|a| {
            completion
                .index_of(&principal_cone(alg, a))
                .ok_or(Error::Embedding { clause: "closedness of lower cones", a, b: a })
        })
        .collect::<Result<_>>()?;
    let (lres, rres) = quantale_residuals(q);
    for a in 0..n {
        for b in 0..n {
            let violation = |clause| Err(Error::Embedding { clause, a, b });
            if a != b && f[a] == f[b] {
                return violation("injectivity");
            }
            if alg.leq(a, b) != q.leq(f[a], f[b]) {
                return violation("order");
            }
            if f[alg.comp(a, b)] != q.comp(f[a], f[b]) {
                return violation("composition");
            }
            if f[alg.lres(a, b)] != lres[f[a] * qn + f[b]] {
                return violation("left residual");
            }
            if f[alg.rres(a, b)] != rres[f[a] * qn + f[b]] {
                return violation("right residual");
            }
        }
    }
    Ok(f)
}
