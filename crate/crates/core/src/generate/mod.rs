//! Seeded random instances for property tests, acceptance runs and benches.
//!
//! Every generator takes a [`ChaCha8Rng`], so a seed fixes the whole instance.

mod arith;
mod modal;
mod stages;

pub use arith::{propositional_case, random_arith_formula, random_successor_sentence, random_term, ArithShape};
pub use modal::{random_model, random_modal, FrameKind, ModalShape, ModelShape};
pub use stages::{
    activation_case, consistent_oracle, distribution_scenario, ActivationCase, DistributionScenario,
    OracleCase,
};

pub use rand_chacha::ChaCha8Rng;

use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
