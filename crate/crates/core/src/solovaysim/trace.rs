use std::collections::HashSet;

use super::{TheoryOracle, XiEnumeration};
use crate::formulas::ArithFormula;
use crate::kripke::WorldId;

/// `h(l) = 0` and `h(l + 1) = i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transition {
    pub l: u64,
    pub i: WorldId,
}

/// Values of `h` on `0..=horizon` and outputs of `g` on `0..horizon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub horizon: u64,
    pub h: Vec<WorldId>,
    pub g: Vec<Vec<ArithFormula>>,
    pub transition: Option<Transition>,
    /// The switch went to a world without successors, where readiness holds
    /// for every pool formula.
    pub vacuous_readiness: bool,
}

/// Trace-level checks; each field is true when the property holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceReport {
    pub starts_at_zero: bool,
    pub single_jump: bool,
    pub constant_after_jump: bool,
    pub one_nonzero_value: bool,
    /// Without a jump, `g` outputs exactly the newly proved formulas.
    pub procedure_one_faithful: bool,
    /// Number of `(α₀ → α₁, α₀)` output pairs whose conclusion was due within
    /// the horizon, and how many of those did not output `α₁`.
    pub d2_checked: usize,
    pub d2_failures: usize,
}

impl TraceReport {
    pub fn ok(&self) -> bool {
        self.starts_at_zero
            && self.single_jump
            && self.constant_after_jump
            && self.one_nonzero_value
            && self.procedure_one_faithful
            && self.d2_failures == 0
    }
}

impl Trace {
    /// `λ(i)`: `h` takes the value `i` somewhere on the trace.
    pub fn lambda(&self, i: WorldId) -> bool {
        self.h.contains(&i)
    }

    /// `Pr_g(φ)` within the horizon.
    pub fn outputs(&self, f: &ArithFormula) -> bool {
        self.g.iter().any(|out| out.contains(f))
    }

    pub fn output_set(&self) -> HashSet<&ArithFormula> {
        self.g.iter().flatten().collect()
    }

    /// Outputs of Procedure 2 as `(u, ξ_u)`.
    pub fn procedure_two_outputs(&self) -> Vec<(u64, &ArithFormula)> {
        let Some(t) = self.transition else {
            return Vec::new();
        };
        self.g
            .iter()
            .enumerate()
            .skip(t.l as usize)
            .flat_map(|(idx, out)| out.iter().map(move |f| (idx as u64 - t.l, f)))
            .collect()
    }

    /// The transition happened after stage `n`, or not at all.
    pub fn jump_after(&self, n: u64) -> bool {
        self.transition.is_none_or(|t| t.l > n)
    }

    pub fn check(&self, oracle: &TheoryOracle, xi: &XiEnumeration) -> TraceReport {
        let jumps: Vec<usize> = (0..self.h.len().saturating_sub(1))
            .filter(|&l| self.h[l] == 0 && self.h[l + 1] != 0)
            .collect();
        let constant_after_jump = jumps.first().is_none_or(|&l| {
            let v = self.h[l + 1];
            self.h[l + 1..].iter().all(|&x| x == v)
        });
        let nonzero: HashSet<WorldId> = self.h.iter().copied().filter(|&x| x != 0).collect();
        let faithful = self.transition.is_some()
            || (0..self.horizon).all(|l| self.g[l as usize] == oracle.newly_proved(l));
        let (d2_checked, d2_failures) = self.check_d2(xi);
        TraceReport {
            starts_at_zero: self.h.first() == Some(&0),
            single_jump: jumps.len() <= 1,
            constant_after_jump,
            one_nonzero_value: nonzero.len() <= 1,
            procedure_one_faithful: faithful,
            d2_checked,
            d2_failures,
        }
    }

    fn check_d2(&self, xi: &XiEnumeration) -> (usize, usize) {
        let Some(t) = self.transition else {
            return (0, 0);
        };
        let outs = self.procedure_two_outputs();
        let (mut checked, mut failed) = (0, 0);
        for (u0, imp) in &outs {
            let ArithFormula::Imp(a0, a1) = imp else {
                continue;
            };
            for (u1, f) in &outs {
                if *f != &**a0 {
                    continue;
                }
                let from = (*u0).max(*u1);
                let budget = self.horizon.saturating_sub(t.l);
                let Some(u) = xi.next_occurrence(a1, from, budget) else {
                    continue;
                };
                if t.l + u >= self.horizon {
                    continue;
                }
                checked += 1;
                if !self.g[(t.l + u) as usize].contains(a1) {
                    failed += 1;
                }
            }
        }
        (checked, failed)
    }
}
