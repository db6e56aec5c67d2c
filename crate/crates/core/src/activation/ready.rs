use std::collections::BTreeMap;

use super::partition::tc;
use super::{
    guard_formula, match_guard, ActivationContext, ActivationError, GuardedPair, TheoryStage,
};
use crate::formulas::{substitute_numerals, ArithFormula};
use crate::kripke::WorldId;

/// Readiness checks for one switch `(l, i)` against the fixed stage `l − 1`.
///
/// Every admissible pair is used with every admissible tuple at once: adding
/// premises never breaks tautological consequence, so this maximal premise set
/// decides the existential exactly and makes readiness monotone in `u`.
#[derive(Clone, Debug)]
pub struct ReadinessEngine {
    ctx: ActivationContext,
    stage: TheoryStage,
    pairs: Vec<GuardedPair>,
    vacuous: bool,
    cached: Option<(u64, Vec<ArithFormula>)>,
}

fn expected_stage(stage: &TheoryStage, l: u64) -> Result<(), ActivationError> {
    let ok = if l == 0 {
        stage.proved().is_empty()
    } else {
        stage.index == l - 1
    };
    if ok {
        Ok(())
    } else {
        Err(ActivationError::StageMismatch {
            expected: l as i64 - 1,
            found: stage.index,
        })
    }
}

impl ReadinessEngine {
    pub fn new(
        ctx: &ActivationContext,
        stage: TheoryStage,
        l: u64,
        i: WorldId,
    ) -> Result<Self, ActivationError> {
        expected_stage(&stage, l)?;
        ctx.check_world(i)?;
        let succ = ctx.successors(i);
        let pairs = match succ.split_first() {
            None => Vec::new(),
            Some((first, rest)) => {
                let mut out: Vec<GuardedPair> = Vec::new();
                for f in stage.proved() {
                    let Some((j, pair)) = match_guard(f, &ctx.lambda, &ctx.theta) else {
                        continue;
                    };
                    if j != u64::from(*first) || !stage.in_pool(&pair.body) || out.contains(&pair) {
                        continue;
                    }
                    let everywhere = rest.iter().all(|&j| {
                        stage.contains(&guard_formula(u64::from(j), &pair, &ctx.lambda, &ctx.theta))
                    });
                    if everywhere {
                        out.push(pair);
                    }
                }
                out
            }
        };
        Ok(ReadinessEngine {
            ctx: ctx.clone(),
            stage,
            pairs,
            vacuous: succ.is_empty(),
            cached: None,
        })
    }

    /// True when `i` has no successors, so the membership condition holds for
    /// every pool formula.
    pub fn is_vacuous(&self) -> bool {
        self.vacuous
    }

    pub fn pairs(&self) -> &[GuardedPair] {
        &self.pairs
    }

    fn instances(&self, u: u64) -> Vec<ArithFormula> {
        let mut out = Vec::new();
        if self.vacuous {
            // Any subset of the free variables may be the tuple, and every
            // number satisfies some θ_k.
            for f in self.stage.pool_formulas() {
                let fv = f.free_vars();
                for mask in 0u64..(1u64 << fv.len().min(16)) {
                    let vars: Vec<&String> = fv
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, x)| x)
                        .collect();
                    for_each_tuple(vars.len(), &|_| (0..=u).collect(), &mut |vals| {
                        let sigma: BTreeMap<String, u64> = vars
                            .iter()
                            .map(|x| (*x).clone())
                            .zip(vals.iter().copied())
                            .collect();
                        out.push(substitute_numerals(&f, &sigma));
                    });
                }
            }
        } else {
            let theta = self.ctx.theta;
            for p in &self.pairs {
                let allowed = |pos: usize| -> Vec<u64> {
                    (0..=u).filter(|&n| theta.holds(p.ks[pos], n)).collect()
                };
                for_each_tuple(p.vars.len(), &allowed, &mut |vals| {
                    let sigma: BTreeMap<String, u64> =
                        p.vars.iter().cloned().zip(vals.iter().copied()).collect();
                    out.push(substitute_numerals(&p.body, &sigma));
                });
            }
        }
        out
    }

    /// Whether `xi` is ready at `u`.
    pub fn ready(&mut self, xi: &ArithFormula, u: u64) -> Result<bool, ActivationError> {
        if self.stage.contains(xi) {
            return Ok(true);
        }
        if self.cached.as_ref().map(|(cu, _)| *cu) != Some(u) {
            let mut premises = self.stage.proved().to_vec();
            premises.extend(self.instances(u));
            self.cached = Some((u, premises));
        }
        let premises = &self.cached.as_ref().expect("filled").1;
        Ok(tc(premises, xi)?)
    }
}

fn for_each_tuple(len: usize, allowed: &dyn Fn(usize) -> Vec<u64>, out: &mut dyn FnMut(&[u64])) {
    let ranges: Vec<Vec<u64>> = (0..len).map(allowed).collect();
    if ranges.iter().any(|r| r.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; len];
    let mut vals: Vec<u64> = ranges.iter().map(|r| r[0]).collect();
    loop {
        out(&vals);
        let mut pos = 0;
        while pos < len {
            idx[pos] += 1;
            if idx[pos] < ranges[pos].len() {
                vals[pos] = ranges[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            vals[pos] = ranges[pos][0];
            pos += 1;
        }
        if pos == len {
            return;
        }
    }
}

/// Whether `xi` is ready at `u` after `h` switched to `i` at `l`; `stage` must
/// be stage `l − 1`.
pub fn decide_ready(
    ctx: &ActivationContext,
    stage: &TheoryStage,
    l: u64,
    i: WorldId,
    xi: &ArithFormula,
    u: u64,
) -> Result<bool, ActivationError> {
    ReadinessEngine::new(ctx, stage.clone(), l, i)?.ready(xi, u)
}
