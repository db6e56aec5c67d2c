//! Deciding when `h` may leave 0 ("`j` is activated at `l`") and when `g` may
//! output a formula after the switch ("`ξ` is ready at `u`").
//!
//! Activation has an unbounded search over number tuples. [`decide_activated`]
//! removes it: the tautological-consequence condition depends on the tuples
//! only through which atoms become syntactically identical, so it reduces to a
//! disjunction over good partitions of the atom set, each realized by a
//! successor-theory sentence. [`brute_force_activated`] searches tuples up to a
//! bound directly and serves as the cross-check.

mod brute;
mod decide;
mod guard;
mod partition;
mod ready;
mod stage;

pub use brute::{brute_force_activated, claim_holds, BruteWitness};
pub use decide::{decide_activated, decide_activated_with, ActivationWitness};
pub use guard::{guard_formula, match_guard, GuardedPair};
pub use partition::{enumerate_partitions, is_good, Partition, PARTITION_CAP};
pub use ready::{decide_ready, ReadinessEngine};
pub use stage::{Pool, TheoryStage};

use std::collections::BTreeSet;

use crate::embedding::{ThetaFamily, DEFAULT_LAMBDA};
use crate::kripke::{KripkeModel, WorldId};
use crate::proptaut::TautError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActivationError {
    #[error("stage {found} supplied where stage {expected} is required")]
    StageMismatch { expected: i64, found: u64 },
    #[error("more than {limit} candidate partitions; refusing to truncate")]
    EnumerationCap { limit: usize },
    #[error(transparent)]
    Taut(#[from] TautError),
    #[error("world {0} is not in the frame")]
    UnknownWorld(WorldId),
    #[error("partition does not range over the atoms of the premises and goal")]
    PartitionMismatch,
    #[error("variable `{0}` uses a reserved name")]
    Reserved(String),
    #[error("stage {later} does not contain every formula of stage {earlier}")]
    NotCumulative { earlier: u64, later: u64 },
}

/// Frame data the activation conditions refer to: worlds, relation, `D = {0..d}`
/// and the name of the `λ` atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivationContext {
    pub worlds: BTreeSet<WorldId>,
    pub relation: BTreeSet<(WorldId, WorldId)>,
    pub theta: ThetaFamily,
    pub lambda: String,
}

impl ActivationContext {
    pub fn new<W, R>(worlds: W, relation: R, d: u64, lambda: &str) -> Self
    where
        W: IntoIterator<Item = WorldId>,
        R: IntoIterator<Item = (WorldId, WorldId)>,
    {
        ActivationContext {
            worlds: worlds.into_iter().collect(),
            relation: relation.into_iter().collect(),
            theta: ThetaFamily::new(d),
            lambda: lambda.to_string(),
        }
    }

    /// Uses the model's frame and `d` = its largest domain element.
    pub fn from_model(m: &KripkeModel) -> Self {
        Self::new(
            m.worlds().iter().copied(),
            m.relation().iter().copied(),
            m.max_element(),
            DEFAULT_LAMBDA,
        )
    }

    pub fn d(&self) -> u64 {
        self.theta.d
    }

    pub fn successors(&self, i: WorldId) -> Vec<WorldId> {
        self.relation
            .iter()
            .filter(|(a, _)| *a == i)
            .map(|(_, b)| *b)
            .collect()
    }

    fn check_world(&self, j: WorldId) -> Result<(), ActivationError> {
        if self.worlds.contains(&j) {
            Ok(())
        } else {
            Err(ActivationError::UnknownWorld(j))
        }
    }
}
