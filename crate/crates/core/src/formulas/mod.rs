//! Syntax for the modal and arithmetic languages.

mod analysis;
mod arith;
mod godel;
mod lexer;
mod modal;
mod parse;
mod print;
mod subst;

pub use analysis::prop_atomic_subformulas;
pub use arith::{ArithFormula, ArithTerm};
pub use godel::{
    code_at_most, decode_formula, decode_term, encode_formula, encode_term, formulas_up_to,
    godel_decode, godel_encode, pair, unpair, GodelCode,
};
pub use modal::{ModalArg, ModalFormula};
pub use parse::{
    is_atom_name, is_predicate_name, is_variable_name, parse_arith, parse_arith_with, parse_modal,
    parse_modal_with, parse_term, MAX_NUMERAL,
};
pub use subst::{
    fresh_name, rename_free_vars, rename_term, substitute_numerals, substitute_numerals_term,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("syntax error at column {}: {msg}", pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("arity mismatch for `{name}` at column {}: expected {expected}, found {found}", pos + 1)]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
        pos: usize,
    },
    #[error("unknown atom `@{name}` at column {}", pos + 1)]
    UnknownAtom { name: String, pos: usize },
    #[error("{0} is not the code of a formula")]
    NotAFormula(String),
}
