//! Exhaustive checking of relational representations.

use std::fmt;

use serde::Serialize;

use crate::algebra::FiniteResiduatedSemigroup;
use crate::bits::Relation;
use crate::error::{Error, Result};
use crate::pointalg::SPStructure;
use crate::relrep::Interpretation;

fn same_base(r: &Relation, s: &Relation) -> Result<()> {
    if r.base_size() != s.base_size() {
        return Err(Error::DimensionMismatch { left: r.base_size(), right: s.base_size() });
    }
    Ok(())
}

/// `r;s = {(x, z) : ∃y (x, y) ∈ r ∧ (y, z) ∈ s}`.
pub fn rel_compose(r: &Relation, s: &Relation) -> Result<Relation> {
    same_base(r, s)?;
    Ok(r.compose(s))
}

/// `r\s = {(x, y) : ∀z (z, x) ∈ r ⇒ (z, y) ∈ s}` over the full square.
pub fn rel_lres(r: &Relation, s: &Relation) -> Result<Relation> {
    same_base(r, s)?;
    Ok(r.left_residual(s))
}

/// `r/s = {(x, y) : ∀z (y, z) ∈ s ⇒ (x, z) ∈ r}` over the full square.
pub fn rel_rres(r: &Relation, s: &Relation) -> Result<Relation> {
    same_base(r, s)?;
    Ok(r.right_residual(s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `a <= b` iff `a^R ⊆ b^R`.
    OrderIff,
    /// `(a;b)^R = a^R ; b^R`.
    Composition,
    /// `(a\b)^R = a^R \ b^R`.
    LeftResidual,
    /// `(a/b)^R = a^R / b^R`.
    RightResidual,
}

impl Condition {
    pub const ALL: [Condition; 4] =
        [Condition::OrderIff, Condition::Composition, Condition::LeftResidual, Condition::RightResidual];

    pub fn name(self) -> &'static str {
        match self {
            Condition::OrderIff => "order-iff",
            Condition::Composition => "composition",
            Condition::LeftResidual => "left-residual",
            Condition::RightResidual => "right-residual",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A violated instance: elements `a`, `b` and, where the two sides differ
/// on a concrete pair of base points, the first such pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: usize,
    pub b: usize,
    pub point: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    results: Vec<(Condition, Option<Witness>)>,
}

impl VerificationReport {
    pub fn witness(&self, c: Condition) -> Option<&Witness> {
        self.results.iter().find(|(k, _)| *k == c).and_then(|(_, w)| w.as_ref())
    }

    pub fn passes(&self, c: Condition) -> bool {
        self.witness(c).is_none()
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, w)| w.is_none())
    }

    pub fn failed(&self) -> Vec<Condition> {
        self.results.iter().filter(|(_, w)| w.is_some()).map(|(c, _)| *c).collect()
    }

    pub fn results(&self) -> &[(Condition, Option<Witness>)] {
        &self.results
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn check_total(alg: &FiniteResiduatedSemigroup, interp: &Interpretation) -> Result<()> {
    if interp.relations.len() != alg.len() {
        return Err(Error::Invalid(format!(
            "interpretation covers {} of {} elements",
            interp.relations.len(),
            alg.len()
        )));
    }
    let n = interp.base_size();
    if let Some(r) = interp.relations.iter().find(|r| r.base_size() != n) {
        return Err(Error::DimensionMismatch { left: n, right: r.base_size() });
    }
    Ok(())
}

/// First pair violating `order(a, b) ⟺ rel(a) ⊆ rel(b)`.
pub(crate) fn order_witness(
    n: usize,
    order: impl Fn(usize, usize) -> bool,
    rel: impl Fn(usize) -> Relation,
) -> Option<Witness> {
    pairs(n).find_map(|(a, b)| {
        let (ra, rb) = (rel(a), rel(b));
        let sub = ra.is_subset(&rb);
        (order(a, b) != sub).then(|| Witness { a, b, point: ra.pairs().find(|&(x, y)| !rb.contains(x, y)) })
    })
}

/// First pair where `rel(table(a, b))` differs from `op(rel(a), rel(b))`.
pub(crate) fn operation_witness(
    n: usize,
    table: impl Fn(usize, usize) -> usize,
    rel: impl Fn(usize) -> Relation,
    op: impl Fn(&Relation, &Relation) -> Relation,
) -> Option<Witness> {
    pairs(n).find_map(|(a, b)| {
        let expected = rel(table(a, b));
        let actual = op(&rel(a), &rel(b));
        expected.first_difference(&actual).map(|point| Witness { a, b, point: Some(point) })
    })
}

/// Evaluates all four representation conditions, recording the
/// lexicographically first witness of each failure.
pub fn check_representation(alg: &FiniteResiduatedSemigroup, interp: &Interpretation) -> Result<VerificationReport> {
    check_total(alg, interp)?;
    let n = alg.len();
    let rel = |a: usize| interp.relations[a].clone();
    let results = vec![
        (Condition::OrderIff, order_witness(n, |a, b| alg.leq(a, b), rel)),
        (Condition::Composition, operation_witness(n, |a, b| alg.comp(a, b), rel, Relation::compose)),
        (Condition::LeftResidual, operation_witness(n, |a, b| alg.lres(a, b), rel, Relation::left_residual)),
        (Condition::RightResidual, operation_witness(n, |a, b| alg.rres(a, b), rel, Relation::right_residual)),
    ];
    Ok(VerificationReport { results })
}

/// Whether the union of all interpreted relations is transitive.
pub fn check_union_transitive(interp: &Interpretation) -> bool {
    let n = interp.base_size();
    interp
        .relations
        .iter()
        .fold(Relation::empty(n), |acc, r| acc.union(r))
        .is_transitive()
}

/// Conditions for the `(;, +)` signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpCondition {
    /// `a <= b` (that is, `a + b = b`) iff `a^R ⊆ b^R`.
    OrderIff,
    /// `(a + b)^R = a^R ∪ b^R`.
    Join,
    /// `(a;b)^R = a^R ; b^R`.
    Composition,
}

impl SpCondition {
    pub fn name(self) -> &'static str {
        match self {
            SpCondition::OrderIff => "order-iff",
            SpCondition::Join => "join",
            SpCondition::Composition => "composition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpVerificationReport {
    results: Vec<(SpCondition, Option<Witness>)>,
}

impl SpVerificationReport {
    pub fn witness(&self, c: SpCondition) -> Option<&Witness> {
        self.results.iter().find(|(k, _)| *k == c).and_then(|(_, w)| w.as_ref())
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|(_, w)| w.is_none())
    }

    pub fn results(&self) -> &[(SpCondition, Option<Witness>)] {
        &self.results
    }
}

pub fn check_sp_representation(s: &SPStructure, interp: &Interpretation) -> Result<SpVerificationReport> {
    if interp.relations.len() != s.len() {
        return Err(Error::Invalid(format!("interpretation covers {} of {} elements", interp.relations.len(), s.len())));
    }
    let n = interp.base_size();
    if let Some(r) = interp.relations.iter().find(|r| r.base_size() != n) {
        return Err(Error::DimensionMismatch { left: n, right: r.base_size() });
    }
    let rel = |a: usize| interp.relations[a].clone();
    let results = vec![
        (SpCondition::OrderIff, order_witness(s.len(), |a, b| s.leq(a, b), rel)),
        (SpCondition::Join, operation_witness(s.len(), |a, b| s.join(a, b), rel, Relation::union)),
        (SpCondition::Composition, operation_witness(s.len(), |a, b| s.comp(a, b), rel, Relation::compose)),
    ];
    Ok(SpVerificationReport { results })
}
