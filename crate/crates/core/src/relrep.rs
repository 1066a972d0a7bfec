//! Relational representation of finite quantales and of residuated
//! semigroups through their completion.
//!
//! An element `a` of a quantale `Q` becomes the relation
//! `â = {(g, q) : g a generator, g <= a;q}` over the carrier of `Q`. With all
//! of `Q` as generators the map turns products into relational composition;
//! it reflects the order once `Q` has a unit, which [`unitalize`] supplies.

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteResiduatedSemigroup;
use crate::bits::{BitSet, Relation};
use crate::completion::{build_quantale, embed, Quantale};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorMode {
    #[default]
    All,
    JoinIrreducible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub mode: GeneratorMode,
    pub members: BitSet,
}

impl GeneratorSet {
    pub fn contains(&self, q: usize) -> bool {
        self.members.contains(q)
    }
}

/// Picks generators and checks that every element is the join of the
/// generators below it.
pub fn generators(q: &Quantale, mode: GeneratorMode) -> Result<GeneratorSet> {
    let n = q.len();
    let members = match mode {
        GeneratorMode::All => BitSet::full(n),
        GeneratorMode::JoinIrreducible => BitSet::from_indices(
            n,
            (0..n).filter(|&x| q.join_all((0..n).filter(|&p| p != x && q.leq(p, x))) != x),
        ),
    };
    for x in 0..n {
        if q.join_all(members.iter().filter(|&g| q.leq(g, x))) != x {
            return Err(Error::Invalid(format!("generators do not join to {}", q.label(x))));
        }
    }
    Ok(GeneratorSet { mode, members })
}

/// `â` as a relation over the carrier of `q`; rows outside the generators are
/// empty.
pub fn hat(q: &Quantale, gens: &GeneratorSet, a: usize) -> Relation {
    let n = q.len();
    let mut r = Relation::empty(n);
    for g in gens.members.iter() {
        for x in 0..n {
            if q.leq(g, q.comp(a, x)) {
                r.insert(g, x);
            }
        }
    }
    r
}

/// Freely adjoins a two-sided unit.
///
/// Element `p` of the result is `(p, 0)` and element `n + p` is `(p, 1)`,
/// read as `p ∨ e`; so `q ↦ (q, 0)` keeps indices. A quantale that already
/// has a unit is returned unchanged.
pub fn unitalize(q: &Quantale) -> Result<Quantale> {
    if q.is_unital() {
        return Ok(q.clone());
    }
    let n = q.len();
    let size = 2 * n;
    let split = |k: usize| (k % n, k / n);
    let join = |(p, i): (usize, usize), (r, j): (usize, usize)| (q.sup(p, r), i | j);
    let index = |(p, i): (usize, usize)| i * n + p;
    let labels = (0..size)
        .map(|k| {
            let (p, i) = split(k);
            format!("({},{i})", q.label(p))
        })
        .collect();
    let mut leq = vec![false; size * size];
    let mut comp = vec![0; size * size];
    let mut sup = vec![0; size * size];
    for x in 0..size {
        for y in 0..size {
            let ((p, i), (r, j)) = (split(x), split(y));
            let k = x * size + y;
            leq[k] = q.leq(p, r) && i <= j;
            sup[k] = index(join((p, i), (r, j)));
            let mut prod = q.comp(p, r);
            if j == 1 {
                prod = q.sup(prod, p);
            }
            if i == 1 {
                prod = q.sup(prod, r);
            }
            comp[k] = index((prod, i & j));
        }
    }
    let unitalized = Quantale::from_tables(labels, leq, comp, sup, q.bottom(), q.top() + n)?;
    debug_assert_eq!(unitalized.unit(), Some(q.bottom() + n));
    Ok(unitalized)
}

/// Outcome of one clause: the first violating pair, with a distinguishing
/// point pair of the base where one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HatWitness {
    pub a: usize,
    pub b: usize,
    pub point: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HatReport {
    /// `a <= b` implies `â ⊆ b̂`.
    pub monotone: Option<HatWitness>,
    /// `â ⊆ b̂` implies `a <= b`.
    pub order_reflection: Option<HatWitness>,
    /// `â ; b̂ = (a;b)^`.
    pub composition: Option<HatWitness>,
    /// `(a ∨ b)^ = â ∪ b̂`; informational, the set union need not be a hat.
    pub join_as_union: Option<HatWitness>,
}

impl HatReport {
    pub fn is_isomorphism(&self) -> bool {
        self.monotone.is_none() && self.order_reflection.is_none() && self.composition.is_none()
    }
}

pub fn hat_isomorphism_check(q: &Quantale, gens: &GeneratorSet) -> HatReport {
    let n = q.len();
    let hats: Vec<Relation> = (0..n).map(|a| hat(q, gens, a)).collect();
    let first = |pred: &dyn Fn(usize, usize) -> Option<Option<(usize, usize)>>| {
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find_map(|(a, b)| pred(a, b).map(|point| HatWitness { a, b, point }))
    };
    let monotone = first(&|a, b| {
        (q.leq(a, b) && !hats[a].is_subset(&hats[b]))
            .then(|| hats[a].pairs().find(|&(x, y)| !hats[b].contains(x, y)))
    });
    let order_reflection = first(&|a, b| (!q.leq(a, b) && hats[a].is_subset(&hats[b])).then_some(None));
    let composition = first(&|a, b| {
        let lhs = hats[a].compose(&hats[b]);
        let rhs = &hats[q.comp(a, b)];
        lhs.first_difference(rhs).map(Some)
    });
    let join_as_union = first(&|a, b| {
        let lhs = hats[a].union(&hats[b]);
        lhs.first_difference(&hats[q.sup(a, b)]).map(Some)
    });
    HatReport { monotone, order_reflection, composition, join_as_union }
}

/// A finite base with a family of named relations over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalStructure {
    base: Vec<String>,
    relations: Vec<(String, Relation)>,
}

impl RelationalStructure {
    pub fn new(base: Vec<String>, relations: Vec<(String, Relation)>) -> Result<Self> {
        for (i, (name, r)) in relations.iter().enumerate() {
            if r.base_size() != base.len() {
                return Err(Error::DimensionMismatch { left: base.len(), right: r.base_size() });
            }
            if relations[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::Invalid(format!("relation `{name}` named twice")));
            }
        }
        Ok(RelationalStructure { base, relations })
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn relations(&self) -> &[(String, Relation)] {
        &self.relations
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

/// A map from the elements of an algebra to relations over a finite base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    /// Element names of the source algebra, in index order.
    pub elements: Vec<String>,
    /// Labels of the base points.
    pub base: Vec<String>,
    /// `relations[a]` interprets element `a`.
    pub relations: Vec<Relation>,
}

impl Interpretation {
    pub fn base_size(&self) -> usize {
        self.base.len()
    }

    pub fn get(&self, a: usize) -> &Relation {
        &self.relations[a]
    }

    pub fn to_structure(&self) -> RelationalStructure {
        RelationalStructure {
            base: self.base.clone(),
            relations: self.elements.iter().cloned().zip(self.relations.iter().cloned()).collect(),
        }
    }

    /// Binds a parsed structure to an algebra by element name.
    pub fn from_structure(alg: &FiniteResiduatedSemigroup, s: &RelationalStructure) -> Result<Self> {
        let relations = alg
            .names()
            .iter()
            .map(|name| {
                s.get(name)
                    .cloned()
                    .ok_or_else(|| Error::Invalid(format!("no relation given for element `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some((extra, _)) = s.relations.iter().find(|(n, _)| alg.index_of(n).is_none()) {
            return Err(Error::Invalid(format!("relation `{extra}` names no element")));
        }
        Ok(Interpretation { elements: alg.names().to_vec(), base: s.base.clone(), relations })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitalizeMode {
    On,
    Off,
    /// Adjoin a unit exactly when the hat map fails to reflect the order
    /// without one.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RepresentOptions {
    pub generators: GeneratorMode,
    pub unitalize: UnitalizeMode,
}

#[derive(Debug, Clone)]
pub struct Representation {
    pub interpretation: Interpretation,
    /// The quantale whose carrier is the base (unitalized when `unitalized`).
    pub quantale: Quantale,
    pub generators: GeneratorSet,
    pub unitalized: bool,
    /// Element `a` of the algebra sits at quantale index `embedding[a]`.
    pub embedding: Vec<usize>,
    pub hat_report: HatReport,
}

/// Completion, optional unitalization, then `a ↦ (↓a)^`. The base is the
/// carrier of the (possibly unitalized) completion, so it is finite.
pub fn represent(alg: &FiniteResiduatedSemigroup, opts: RepresentOptions) -> Result<Representation> {
    let completion = build_quantale(alg)?;
    let embedding = embed(alg, &completion)?;
    let plain = completion.quantale;
    let (quantale, unitalized) = match opts.unitalize {
        UnitalizeMode::Off => (plain, false),
        UnitalizeMode::On => (unitalize(&plain)?, !plain.is_unital()),
        UnitalizeMode::Auto => {
            let gens = generators(&plain, opts.generators)?;
            if hat_isomorphism_check(&plain, &gens).order_reflection.is_some() {
                (unitalize(&plain)?, !plain.is_unital())
            } else {
                (plain, false)
            }
        }
    };
    let gens = generators(&quantale, opts.generators)?;
    let hat_report = hat_isomorphism_check(&quantale, &gens);
    let relations = embedding.iter().map(|&x| hat(&quantale, &gens, x)).collect();
    let interpretation = Interpretation {
        elements: alg.names().to_vec(),
        base: quantale.labels().to_vec(),
        relations,
    };
    Ok(Representation { interpretation, quantale, generators: gens, unitalized, embedding, hat_report })
}

#[derive(Debug, Serialize, Deserialize)]
struct DumpJson {
    base: Vec<String>,
    relations: Vec<DumpRelation>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DumpRelation {
    element: String,
    pairs: Vec<(usize, usize)>,
}

/// Text dump: base size, one labeled line per point, then one line per
/// relation listing its pairs in row-major order.
pub fn dump_text(s: &RelationalStructure) -> String {
    let mut out = format!("base: {}\n", s.base.len());
    for (i, label) in s.base.iter().enumerate() {
        out.push_str(&format!("point {i} {label}\n"));
    }
    for (name, r) in &s.relations {
        out.push_str(&format!("rel {name}:"));
        for (x, y) in r.pairs() {
            out.push_str(&format!(" {x},{y}"));
        }
        out.push('\n');
    }
    out
}

pub fn dump_json(s: &RelationalStructure) -> serde_json::Value {
    serde_json::to_value(DumpJson {
        base: s.base.clone(),
        relations: s
            .relations
            .iter()
            .map(|(name, r)| DumpRelation { element: name.clone(), pairs: r.pairs().collect() })
            .collect(),
    })
    .expect("dump is serializable")
}

/// Reads either dump format (JSON when the first non-blank character is `{`).
pub fn parse_dump(text: &str) -> Result<RelationalStructure> {
    if text.trim_start().starts_with('{') {
        let dump: DumpJson = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("bad JSON dump: {e}")))?;
        let n = dump.base.len();
        let relations = dump
            .relations
            .into_iter()
            .map(|d| {
                if let Some(&(x, y)) = d.pairs.iter().find(|&&(x, y)| x >= n || y >= n) {
                    return Err(Error::Invalid(format!("pair ({x},{y}) outside a base of size {n}")));
                }
                Ok((d.element, Relation::from_pairs(n, d.pairs)))
            })
            .collect::<Result<_>>()?;
        return RelationalStructure::new(dump.base, relations);
    }
    let bad = |line: usize, msg: &str| Error::Invalid(format!("dump line {line}: {msg}"));
    let mut size: Option<usize> = None;
    let mut base: Vec<String> = Vec::new();
    let mut relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("base:") {
            let n: usize = rest.trim().parse().map_err(|_| bad(line_no, "expected base size"))?;
            size = Some(n);
            base = (0..n).map(|i| i.to_string()).collect();
        } else if let Some(rest) = line.strip_prefix("point ") {
            let n = size.ok_or_else(|| bad(line_no, "point before base"))?;
            let (idx, label) = rest.trim().split_once(' ').unwrap_or((rest.trim(), ""));
            let i: usize = idx.parse().map_err(|_| bad(line_no, "expected point index"))?;
            if i >= n {
                return Err(bad(line_no, "point index outside base"));
            }
            base[i] = label.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("rel ") {
            let n = size.ok_or_else(|| bad(line_no, "relation before base"))?;
            let (name, pairs) = rest.split_once(':').ok_or_else(|| bad(line_no, "expected `rel name: pairs`"))?;
            let mut r = Relation::empty(n);
            for tok in pairs.split_whitespace() {
                let (x, y) = tok.split_once(',').ok_or_else(|| bad(line_no, "expected `x,y`"))?;
                let (x, y): (usize, usize) = (
                    x.parse().map_err(|_| bad(line_no, "bad point"))?,
                    y.parse().map_err(|_| bad(line_no, "bad point"))?,
                );
                if x >= n || y >= n {
                    return Err(bad(line_no, "pair outside base"));
                }
                r.insert(x, y);
            }
            relations.push((name.trim().to_string(), r));
        } else {
            return Err(bad(line_no, "unrecognized line"));
        }
    }
    if size.is_none() {
        return Err(Error::Invalid("dump has no base line".into()));
    }
    RelationalStructure::new(base, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::build_quantale;

    fn c2_quantale() -> Quantale {
        build_quantale(&FiniteResiduatedSemigroup::c2()).unwrap().quantale
    }

    #[test]
    fn generator_modes_on_c2() {
        let q = c2_quantale();
        let all = generators(&q, GeneratorMode::All).unwrap();
        assert_eq!(all.members.iter().collect::<Vec<_>>(), vec![0, 1]);
        let ji = generators(&q, GeneratorMode::JoinIrreducible).unwrap();
        assert_eq!(ji.members.iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn c2_hats_coincide() {
        let q = c2_quantale();
        let g = generators(&q, GeneratorMode::All).unwrap();
        let expected = Relation::from_pairs(2, [(0, 0), (0, 1)]);
        assert_eq!(hat(&q, &g, 0), expected);
        assert_eq!(hat(&q, &g, 1), expected);
        let report = hat_isomorphism_check(&q, &g);
        assert_eq!(report.order_reflection, Some(HatWitness { a: 1, b: 0, point: None }));
        assert!(report.monotone.is_none() && report.composition.is_none());
    }

    #[test]
    fn unitalized_c2() {
        let q = unitalize(&c2_quantale()).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.unit(), Some(2));
        // (α,0)·(α,1) = (α,0)
        assert_eq!(q.comp(0, 2), 0);
        assert_eq!(unitalize(&q).unwrap(), q);
    }

    #[test]
    fn trivial_representation() {
        let t = FiniteResiduatedSemigroup::trivial("x");
        let rep = represent(&t, RepresentOptions::default()).unwrap();
        assert_eq!(rep.interpretation.base_size(), 1);
        assert_eq!(rep.interpretation.get(0), &Relation::from_pairs(1, [(0, 0)]));
    }

    #[test]
    fn c2_representation_modes() {
        let c2 = FiniteResiduatedSemigroup::c2();
        let off = represent(&c2, RepresentOptions { unitalize: UnitalizeMode::Off, ..Default::default() }).unwrap();
        assert_eq!(off.interpretation.get(0), off.interpretation.get(1));

        let auto = represent(&c2, RepresentOptions::default()).unwrap();
        assert!(auto.unitalized);
        let (a, b) = (auto.interpretation.get(0), auto.interpretation.get(1));
        assert!(a.is_subset(b) && a != b);
        // ((↓b, 0), e) with e = (⊥, 1) at index 2.
        assert!(b.contains(1, 2) && !a.contains(1, 2));
    }

    #[test]
    fn dump_parses_back() {
        let rep = represent(&FiniteResiduatedSemigroup::c2(), RepresentOptions::default()).unwrap();
        let s = rep.interpretation.to_structure();
        assert_eq!(parse_dump(&dump_text(&s)).unwrap(), s);
        assert_eq!(parse_dump(&dump_json(&s).to_string()).unwrap(), s);
    }

    #[test]
    fn structure_rejects_duplicate_names_and_bad_dimensions() {
        let r = Relation::empty(2);
        assert!(RelationalStructure::new(vec!["0".into(), "1".into()], vec![("a".into(), r.clone()), ("a".into(), r)]).is_err());
        assert!(RelationalStructure::new(vec!["0".into()], vec![("a".into(), Relation::empty(2))]).is_err());
    }
}
