//! Finite relational models: atoms denote binary relations, `*` is
//! composition and the slashes are the relational residuals.

use std::collections::BTreeMap;
use std::fmt;

use super::syntax::{Formula, Sequent};
use crate::algebra::permutations;
use crate::bits::Relation;
use crate::error::{Error, Result};

pub const DEFAULT_COUNTER_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalModel {
    pub base: usize,
    pub valuation: BTreeMap<String, Relation>,
    /// When set, every value is taken inside this relation (which should be
    /// transitive) instead of the full square.
    pub universe: Option<Relation>,
}

impl RelationalModel {
    pub fn new(base: usize) -> Self {
        RelationalModel { base, valuation: BTreeMap::new(), universe: None }
    }

    pub fn with(mut self, atom: &str, r: Relation) -> Self {
        self.valuation.insert(atom.to_string(), r);
        self
    }

    fn clip(&self, r: Relation) -> Relation {
        match &self.universe {
            Some(w) => r.intersection(w),
            None => r,
        }
    }

    pub fn value(&self, f: &Formula) -> Result<Relation> {
        Ok(match f {
            Formula::Atom(p) => {
                let r = self.valuation.get(p).ok_or_else(|| Error::Invalid(format!("atom `{p}` has no value")))?;
                if r.base_size() != self.base {
                    return Err(Error::DimensionMismatch { left: self.base, right: r.base_size() });
                }
                self.clip(r.clone())
            }
            Formula::Prod(a, b) => self.clip(self.value(a)?.compose(&self.value(b)?)),
            Formula::Under(a, b) => self.clip(self.value(a)?.left_residual(&self.value(b)?)),
            Formula::Over(b, a) => self.clip(self.value(b)?.right_residual(&self.value(a)?)),
        })
    }

    /// Adds `extra` isolated points (no pairs) to the base.
    pub fn extend_isolated(&self, extra: usize) -> RelationalModel {
        let n = self.base + extra;
        let lift = |r: &Relation| Relation::from_pairs(n, r.pairs());
        RelationalModel {
            base: n,
            valuation: self.valuation.iter().map(|(k, r)| (k.clone(), lift(r))).collect(),
            universe: self.universe.as_ref().map(lift),
        }
    }
}

impl fmt::Display for RelationalModel {
    /// `base: k`, then one `atom: x,y ...` line per atom in name order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base: {}", self.base)?;
        let line = |f: &mut fmt::Formatter<'_>, name: &str, r: &Relation| {
            write!(f, "{name}:")?;
            for (x, y) in r.pairs() {
                write!(f, " {x},{y}")?;
            }
            writeln!(f)
        };
        for (name, r) in &self.valuation {
            line(f, name, r)?;
        }
        if let Some(w) = &self.universe {
            line(f, "@universe", w)?;
        }
        Ok(())
    }
}

/// Reads the format written by `Display`. A `@universe` line relativizes
/// the model.
pub fn parse_model(text: &str) -> Result<RelationalModel> {
    let bad = |line: usize, msg: String| Error::Invalid(format!("model line {line}: {msg}"));
    let mut model: Option<RelationalModel> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(':').ok_or_else(|| bad(line_no, "expected `name: pairs`".into()))?;
        let head = head.trim();
        if head == "base" {
            if model.is_some() {
                return Err(bad(line_no, "base given twice".into()));
            }
            let k: usize = rest.trim().parse().map_err(|_| bad(line_no, "expected a base size".into()))?;
            model = Some(RelationalModel::new(k));
            continue;
        }
        let m = model.as_mut().ok_or_else(|| bad(line_no, "relation before `base:`".into()))?;
        let mut r = Relation::empty(m.base);
        for pair in rest.split_whitespace() {
            let parsed = pair.split_once(',').and_then(|(x, y)| Some((x.parse::<usize>().ok()?, y.parse::<usize>().ok()?)));
            match parsed {
                Some((x, y)) if x < m.base && y < m.base => r.insert(x, y),
                _ => return Err(bad(line_no, format!("bad pair `{pair}`"))),
            }
        }
        if head == "@universe" {
            m.universe = Some(r);
        } else if m.valuation.insert(head.to_string(), r).is_some() {
            return Err(bad(line_no, format!("atom `{head}` given twice")));
        }
    }
    model.ok_or_else(|| Error::Invalid("model has no `base:` line".into()))
}

/// Two points with `p = {(0,1)}` and `q = {(1,0)}`: `p*q` is `{(0,0)}`
/// and `q*p` is `{(1,1)}`, so `p*q |- q*p` fails.
pub fn commutation_countermodel() -> RelationalModel {
    RelationalModel::new(2)
        .with("p", Relation::from_pairs(2, [(0, 1)]))
        .with("q", Relation::from_pairs(2, [(1, 0)]))
}

/// Whether the composite of the antecedent is included in the succedent.
pub fn evaluate(s: &Sequent, m: &RelationalModel) -> Result<bool> {
    let mut acc = m.value(&s.antecedent[0])?;
    for f in &s.antecedent[1..] {
        acc = m.clip(acc.compose(&m.value(f)?));
    }
    Ok(acc.is_subset(&m.value(&s.succedent)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterOptions {
    pub max_base: usize,
    /// Only the first this-many relations (ordered by size, then bit pattern)
    /// are tried for each atom.
    pub max_atom_relations: Option<usize>,
    pub symmetry_breaking: bool,
    pub budget: u64,
}

impl Default for CounterOptions {
    fn default() -> Self {
        CounterOptions { max_base: 3, max_atom_relations: None, symmetry_breaking: true, budget: DEFAULT_COUNTER_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterOutcome {
    Found(RelationalModel),
    Exhausted { max_base: usize },
}

/// Enumerates valuations over bases `1..=max_base` until one falsifies `s`.
///
/// Atoms are taken in sorted order with the first varying slowest. With
/// symmetry breaking the first atom only takes relations that are least in
/// their orbit under relabeling of points.
pub fn countermodel_search(s: &Sequent, opts: CounterOptions) -> Result<CounterOutcome> {
    if opts.max_base * opts.max_base > 64 {
        return Err(Error::Invalid("countermodel bases are limited to 8 points".into()));
    }
    let mut atoms = s.atoms();
    atoms.sort();
    let mut spent = 0u64;
    for k in 1..=opts.max_base {
        let bits = k * k;
        let mut all: Vec<u64> = (0..1u64 << bits).collect();
        all.sort_by_key(|m| (m.count_ones(), *m));
        if let Some(limit) = opts.max_atom_relations {
            all.truncate(limit);
        }
        let perms = permutations(k);
        let canonical: Vec<u64> = if opts.symmetry_breaking {
            all.iter()
                .copied()
                .filter(|&m| {
                    let r = Relation::from_mask(k, m);
                    perms.iter().all(|p| r.permute(p).to_mask() >= m)
                })
                .collect()
        } else {
            all.clone()
        };
        let choices: Vec<&[u64]> =
            (0..atoms.len()).map(|i| if i == 0 { canonical.as_slice() } else { all.as_slice() }).collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut odometer = vec![0usize; atoms.len()];
        loop {
            spent += 1;
            if spent > opts.budget {
                return Err(Error::ResourceLimit { budget: opts.budget });
            }
            let mut model = RelationalModel::new(k);
            for (i, atom) in atoms.iter().enumerate() {
                model.valuation.insert(atom.clone(), Relation::from_mask(k, choices[i][odometer[i]]));
            }
            if !evaluate(s, &model)? {
                return Ok(CounterOutcome::Found(model));
            }
            let mut pos = atoms.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                odometer[pos] += 1;
                if odometer[pos] < choices[pos].len() {
                    break;
                }
                odometer[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX || atoms.is_empty() {
                break;
            }
        }
    }
    Ok(CounterOutcome::Exhausted { max_base: opts.max_base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambek::syntax::parse_sequent;

    #[test]
    fn commutation_is_refuted() {
        let s = parse_sequent("p*q |- q*p").unwrap();
        let m = commutation_countermodel();
        assert!(!evaluate(&s, &m).unwrap());
        assert_eq!(m.value(&s.antecedent[0]).unwrap(), Relation::from_pairs(2, [(0, 0)]));
        assert_eq!(m.value(&s.succedent).unwrap(), Relation::from_pairs(2, [(1, 1)]));
    }

    #[test]
    fn distinct_atoms_refuted_at_base_one() {
        let s = parse_sequent("p |- q").unwrap();
        match countermodel_search(&s, CounterOptions::default()).unwrap() {
            CounterOutcome::Found(m) => {
                assert_eq!(m.base, 1);
                assert_eq!(m.valuation["p"], Relation::full(1));
                assert!(m.valuation["q"].is_empty());
            }
            other => panic!("expected a countermodel, got {other:?}"),
        }
    }

    #[test]
    fn axiom_has_no_countermodel() {
        let s = parse_sequent("p |- p").unwrap();
        assert_eq!(countermodel_search(&s, CounterOptions::default()).unwrap(), CounterOutcome::Exhausted { max_base: 3 });
    }

    #[test]
    fn text_format_round_trips() {
        let mut m = RelationalModel::new(2)
            .with("p", Relation::from_pairs(2, [(0, 1)]))
            .with("q", Relation::empty(2));
        assert_eq!(m.to_string(), "base: 2\np: 0,1\nq:\n");
        assert_eq!(parse_model(&m.to_string()).unwrap(), m);
        m.universe = Some(Relation::full(2));
        assert_eq!(parse_model(&m.to_string()).unwrap(), m);
        assert!(parse_model("base: 1\np: 0,1").is_err());
        assert!(parse_model("p: 0,0").is_err());
    }

    #[test]
    fn missing_atom_is_an_error() {
        let s = parse_sequent("p |- q").unwrap();
        let m = RelationalModel::new(1).with("p", Relation::full(1));
        assert!(evaluate(&s, &m).is_err());
    }

    #[test]
    fn relativized_universe_clips_values() {
        let s = parse_sequent("p |- p\\p").unwrap();
        let mut m = RelationalModel::new(2).with("p", Relation::from_pairs(2, [(0, 1)]));
        m.universe = Some(Relation::from_pairs(2, [(0, 1), (0, 0), (1, 1)]));
        let v = m.value(&s.succedent).unwrap();
        assert!(v.is_subset(m.universe.as_ref().unwrap()));
    }
}
