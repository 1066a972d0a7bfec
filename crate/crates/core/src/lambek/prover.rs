//! Cut-free backward proof search with memoization on sequents.
//!
//! Every premise of every rule has fewer connectives than its conclusion, so
//! the search terminates. Antecedents stay nonempty throughout.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use super::syntax::{Formula, Sequent};
use crate::error::{Error, Result};

pub const DEFAULT_PROOF_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Axiom,
    UnderLeft,
    UnderRight,
    OverLeft,
    OverRight,
    ProdLeft,
    ProdRight,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Axiom => "ax",
            Rule::UnderLeft => "\\L",
            Rule::UnderRight => "\\R",
            Rule::OverLeft => "/L",
            Rule::OverRight => "/R",
            Rule::ProdLeft => "*L",
            Rule::ProdRight => "*R",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Rc<Proof>>,
}

impl Proof {
    /// Checks that each step is a correct rule instance.
    pub fn check(&self) -> bool {
        let prem: Vec<&Sequent> = self.premises.iter().map(|p| &p.conclusion).collect();
        instances(&self.conclusion).iter().any(|(rule, ps)| *rule == self.rule && ps.iter().collect::<Vec<_>>() == prem)
            && self.premises.iter().all(|p| p.check())
    }

    /// Indented derivation, conclusion first.
    pub fn render(&self) -> String {
        fn go(p: &Proof, depth: usize, out: &mut String) {
            out.push_str(&format!("{}{}  [{}]\n", "  ".repeat(depth), p.conclusion, p.rule));
            for q in &p.premises {
                go(q, depth + 1, out);
            }
        }
        let mut out = String::new();
        go(self, 0, &mut out);
        out
    }
}

/// Every rule instance whose conclusion is `s`, with its premises.
pub fn instances(s: &Sequent) -> Vec<(Rule, Vec<Sequent>)> {
    let ant = &s.antecedent;
    let goal = &s.succedent;
    let mut out = Vec::new();
    if ant.len() == 1 && ant[0] == *goal {
        out.push((Rule::Axiom, vec![]));
    }
    match goal {
        Formula::Under(a, b) => {
            let mut prem = vec![(**a).clone()];
            prem.extend(ant.iter().cloned());
            out.push((Rule::UnderRight, vec![Sequent::new(prem, (**b).clone())]));
        }
        Formula::Over(b, a) => {
            let mut prem = ant.clone();
            prem.push((**a).clone());
            out.push((Rule::OverRight, vec![Sequent::new(prem, (**b).clone())]));
        }
        Formula::Prod(a, b) => {
            for i in 1..ant.len() {
                out.push((
                    Rule::ProdRight,
                    vec![Sequent::new(ant[..i].to_vec(), (**a).clone()), Sequent::new(ant[i..].to_vec(), (**b).clone())],
                ));
            }
        }
        Formula::Atom(_) => {}
    }
    for (k, f) in ant.iter().enumerate() {
        match f {
            Formula::Prod(a, b) => {
                let mut prem = ant[..k].to_vec();
                prem.push((**a).clone());
                prem.push((**b).clone());
                prem.extend_from_slice(&ant[k + 1..]);
                out.push((Rule::ProdLeft, vec![Sequent::new(prem, goal.clone())]));
            }
            Formula::Under(a, b) => {
                // Δ, Γ, a\b, Θ with Γ = ant[j..k] nonempty.
                for j in 0..k {
                    let gamma = Sequent::new(ant[j..k].to_vec(), (**a).clone());
                    let mut rest = ant[..j].to_vec();
                    rest.push((**b).clone());
                    rest.extend_from_slice(&ant[k + 1..]);
                    out.push((Rule::UnderLeft, vec![gamma, Sequent::new(rest, goal.clone())]));
                }
            }
            Formula::Over(b, a) => {
                // Δ, b/a, Γ, Θ with Γ = ant[k+1..j] nonempty.
                for j in k + 2..=ant.len() {
                    let gamma = Sequent::new(ant[k + 1..j].to_vec(), (**a).clone());
                    let mut rest = ant[..k].to_vec();
                    rest.push((**b).clone());
                    rest.extend_from_slice(&ant[j..]);
                    out.push((Rule::OverLeft, vec![gamma, Sequent::new(rest, goal.clone())]));
                }
            }
            Formula::Atom(_) => {}
        }
    }
    out
}

/// Memoizing prover. One instance may decide many sequents and shares its
/// table between them.
pub struct Prover {
    memo: HashMap<Sequent, Option<Rc<Proof>>>,
    budget: u64,
    visited: u64,
}

impl Default for Prover {
    fn default() -> Self {
        Prover::new(DEFAULT_PROOF_BUDGET)
    }
}

impl Prover {
    pub fn new(budget: u64) -> Self {
        Prover { memo: HashMap::new(), budget, visited: 0 }
    }

    /// Distinct sequents examined so far.
    pub fn visited(&self) -> u64 {
        self.visited
    }

    pub fn prove(&mut self, s: &Sequent) -> Result<Option<Rc<Proof>>> {
        if let Some(known) = self.memo.get(s) {
            return Ok(known.clone());
        }
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::ResourceLimit { budget: self.budget });
        }
        let mut found = None;
        'rules: for (rule, premises) in instances(s) {
            let mut proofs = Vec::with_capacity(premises.len());
            for p in &premises {
                match self.prove(p)? {
                    Some(proof) => proofs.push(proof),
                    None => continue 'rules,
                }
            }
            found = Some(Rc::new(Proof { rule, conclusion: s.clone(), premises: proofs }));
            break;
        }
        self.memo.insert(s.clone(), found.clone());
        Ok(found)
    }
}

pub fn derivable(s: &Sequent) -> Result<bool> {
    Ok(Prover::default().prove(s)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambek::syntax::parse_sequent;

    fn proves(text: &str) -> bool {
        derivable(&parse_sequent(text).unwrap()).unwrap()
    }

    #[test]
    fn basic_cases() {
        assert!(proves("p |- p"));
        assert!(proves("p |- (p*q)/q"));
        assert!(!proves("p*q |- q*p"));
        assert!(proves("p, p\\q |- q"));
        assert!(!proves("p |- q"));
    }

    #[test]
    fn proofs_check() {
        let s = parse_sequent("p |- (p*q)/q").unwrap();
        let proof = Prover::default().prove(&s).unwrap().unwrap();
        assert!(proof.check());
        assert_eq!(proof.rule, Rule::OverRight);
        assert!(proof.render().starts_with("p |- p*q/q  [/R]"));
    }

    #[test]
    fn budget_is_enforced() {
        let s = parse_sequent("a*b*c*d |- d*c*b*a").unwrap();
        assert!(matches!(Prover::new(2).prove(&s), Err(Error::ResourceLimit { budget: 2 })));
    }
}
