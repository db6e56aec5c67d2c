//! Deterministic simulation of the staged functions `h` and `g`.
//!
//! `h` starts at 0 and jumps once to the least activated world; until then `g`
//! outputs the formulas each stage newly proves (Procedure 1), afterwards it
//! outputs `ξ_u` whenever `ξ_u` is ready at `u` (Procedure 2). The `λ(j̄)`
//! atoms inside stage formulas are uninterpreted: they are matched
//! syntactically by the activation and readiness decisions, and the trace
//! keeps its own record of which values `h` took.

mod json;
mod oracle;
mod trace;
mod xi;

pub use json::{scenario_from_json_str, trace_to_json, Scenario};
pub use oracle::TheoryOracle;
pub use trace::{Trace, TraceReport, Transition};
pub use xi::XiEnumeration;

use std::collections::HashMap;

use crate::activation::{
    decide_activated, ActivationContext, ActivationError, ReadinessEngine, TheoryStage,
};
use crate::formulas::FormulaError;
use crate::kripke::WorldId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Activation(#[from] ActivationError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("stage {later} does not contain every formula of stage {earlier}")]
    NotCumulative { earlier: u64, later: u64 },
    #[error("stage {0} is listed twice")]
    DuplicateStage(u64),
    #[error("horizon must be at least 1")]
    EmptyHorizon,
    #[error("malformed scenario: {0}")]
    Json(String),
}

/// Which procedure defines `g` at the current clock.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Procedure {
    One,
    /// `h(l) = 0` and `h(l + 1) = i`.
    Two {
        l: u64,
        i: WorldId,
    },
}

/// The simulator's state before computing `h(clock + 1)` and `g(clock)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimState {
    pub clock: u64,
    pub h: WorldId,
    pub procedure: Procedure,
}

impl SimState {
    pub fn initial() -> Self {
        SimState {
            clock: 0,
            h: 0,
            procedure: Procedure::One,
        }
    }
}

pub struct Simulator<'a> {
    ctx: &'a ActivationContext,
    oracle: &'a TheoryOracle,
    xi: &'a XiEnumeration,
    activation_cache: HashMap<(Option<usize>, bool), WorldId>,
    engine: Option<ReadinessEngine>,
}

impl<'a> Simulator<'a> {
    pub fn new(
        ctx: &'a ActivationContext,
        oracle: &'a TheoryOracle,
        xi: &'a XiEnumeration,
    ) -> Self {
        Simulator {
            ctx,
            oracle,
            xi,
            activation_cache: HashMap::new(),
            engine: None,
        }
    }

    /// The least world activated at `l`, or 0. Decisions are shared between
    /// stages with the same content.
    fn least_activated(&mut self, l: u64) -> Result<WorldId, SimError> {
        let key = self.oracle.content_key(l);
        if let Some(&w) = self.activation_cache.get(&key) {
            return Ok(w);
        }
        let stage = self.oracle.stage(l)?;
        let mut found = 0;
        for &j in self.ctx.worlds.iter().filter(|&&j| j != 0) {
            if decide_activated(self.ctx, &stage, l, j)? {
                found = j;
                break;
            }
        }
        self.activation_cache.insert(key, found);
        Ok(found)
    }

    fn previous_stage(&self, l: u64) -> Result<TheoryStage, SimError> {
        if l == 0 {
            Ok(TheoryStage::empty(0))
        } else {
            self.oracle.stage(l - 1)
        }
    }

    /// Computes `h(clock + 1)` and `g(clock)` and advances the clock.
    pub fn step(
        &mut self,
        state: SimState,
    ) -> Result<
        (
            SimState,
            Vec<crate::formulas::ArithFormula>,
            Option<Transition>,
        ),
        SimError,
    > {
        let l = state.clock;
        let mut procedure = state.procedure;
        let mut transition = None;
        let next_h = if state.h != 0 {
            state.h
        } else {
            self.least_activated(l)?
        };
        if procedure == Procedure::One && next_h != 0 {
            procedure = Procedure::Two { l, i: next_h };
            transition = Some(Transition { l, i: next_h });
        }
        let out = match procedure {
            Procedure::One => self.oracle.newly_proved(l),
            Procedure::Two { l: l0, i } => {
                if self.engine.is_none() {
                    let prev = self.previous_stage(l0)?;
                    self.engine = Some(ReadinessEngine::new(self.ctx, prev, l0, i)?);
                }
                let eng = self.engine.as_mut().expect("engine");
                let u = l - l0;
                let xi = self.xi.xi(u);
                if eng.ready(&xi, u)? {
                    vec![xi]
                } else {
                    Vec::new()
                }
            }
        };
        Ok((
            SimState {
                clock: l + 1,
                h: next_h,
                procedure,
            },
            out,
            transition,
        ))
    }

    /// Runs `horizon` steps from the initial state.
    pub fn run(&mut self, horizon: u64) -> Result<Trace, SimError> {
        if horizon == 0 {
            return Err(SimError::EmptyHorizon);
        }
        let mut state = SimState::initial();
        let mut h = vec![0];
        let mut g = Vec::new();
        let mut transition = None;
        while state.clock < horizon {
            let (next, out, tr) = self.step(state)?;
            h.push(next.h);
            g.push(out);
            transition = transition.or(tr);
            state = next;
        }
        let vacuous = match transition {
            Some(Transition { i, .. }) => self.ctx.successors(i).is_empty(),
            None => false,
        };
        Ok(Trace {
            horizon,
            h,
            g,
            transition,
            vacuous_readiness: vacuous,
        })
    }
}

/// Runs a simulation of `horizon` steps.
pub fn run(
    ctx: &ActivationContext,
    oracle: &TheoryOracle,
    xi: &XiEnumeration,
    horizon: u64,
) -> Result<Trace, SimError> {
    Simulator::new(ctx, oracle, xi).run(horizon)
}

#[cfg(test)]
mod tests;
