//! The Lambek calculus without the empty antecedent: a cut-free prover and
//! finite relational countermodels.

pub mod model;
pub mod prover;
pub mod syntax;

pub use model::{commutation_countermodel, countermodel_search, evaluate, parse_model, CounterOptions, CounterOutcome, RelationalModel};
pub use prover::{derivable, Proof, Prover, Rule};
pub use syntax::{parse_formula, parse_sequent, Formula, Sequent};
