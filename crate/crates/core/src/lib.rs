//! A workbench for quantified modal logic over finite Kripke models and its
//! arithmetical interpretations.
//!
//! The crate covers modal and arithmetic syntax with Gödel numbering, Kripke
//! model checking, propositional tautological consequence, a decision procedure
//! for the theory of `(ℕ, 0, s)`, compilation of syntactic identity into that
//! theory, the activation and readiness decisions of a staged provability
//! construction, arithmetic interpretations of modal formulas, and a
//! deterministic simulator of the staged construction.

pub mod activation;
pub mod embedding;
pub mod error;
pub mod exec;
pub mod formulas;
pub mod generate;
pub mod identity;
pub mod kripke;
pub mod proptaut;
pub mod solovaysim;
pub mod successor;

pub use error::Error;
pub use exec::Exec;
