//! Crate-wide error type.

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Formula(#[from] crate::formulas::FormulaError),
    #[error(transparent)]
    Kripke(#[from] crate::kripke::KripkeError),
    #[error(transparent)]
    Taut(#[from] crate::proptaut::TautError),
    #[error(transparent)]
    Successor(#[from] crate::successor::SuccessorError),
    #[error(transparent)]
    Identity(#[from] crate::identity::IdentityError),
    #[error(transparent)]
    Embedding(#[from] crate::embedding::EmbeddingError),
    #[error(transparent)]
    Activation(#[from] crate::activation::ActivationError),
    #[error(transparent)]
    Simulation(#[from] crate::solovaysim::SimError),
}
