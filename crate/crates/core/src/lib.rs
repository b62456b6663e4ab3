//! Computational λ-calculus with return and application only: terms,
//! rewriting under weak, surface and full contexts, strategies, the
//! translations to λ_ml*, λ⋆ and call-by-value, and a bounded lab that
//! checks rewriting properties over enumerated term universes.

pub mod ars;
pub mod enumerate;
pub mod lab;
pub mod measure;
pub mod par;
pub mod rewrite;
pub mod strategy;
pub mod syntax;
pub mod term;
pub mod translate;

pub use rewrite::{ClosureClass, PathToken, RedexOccurrence, Rule, RuleSet, Trace};
pub use syntax::{parse_com, print_com, ParseError};
pub use term::{Com, Val, Var};
