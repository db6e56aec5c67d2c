use std::collections::HashSet;

use super::SimError;
use crate::activation::{Pool, TheoryStage};
use crate::formulas::ArithFormula;

/// Supplies the stages `P_{T,l}` of a theory: a list of listed stages, each in
/// force until the next, and an optional set of formulas injected from some
/// stage on.
#[derive(Clone, Debug, Default)]
pub struct TheoryOracle {
    listed: Vec<(u64, Vec<ArithFormula>)>,
    pool: Option<HashSet<ArithFormula>>,
    injection: Option<(u64, Vec<ArithFormula>)>,
}

impl TheoryOracle {
    /// Stages must have increasing indices and be cumulative.
    pub fn new(mut listed: Vec<(u64, Vec<ArithFormula>)>) -> Result<Self, SimError> {
        listed.sort_by_key(|(i, _)| *i);
        for w in listed.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.0 == b.0 {
                return Err(SimError::DuplicateStage(a.0));
            }
            let later: HashSet<&ArithFormula> = b.1.iter().collect();
            if !a.1.iter().all(|f| later.contains(f)) {
                return Err(SimError::NotCumulative {
                    earlier: a.0,
                    later: b.0,
                });
            }
        }
        Ok(TheoryOracle {
            listed,
            pool: None,
            injection: None,
        })
    }

    /// Adds `formulas` to every stage from `at` on.
    pub fn with_injection(mut self, at: u64, formulas: Vec<ArithFormula>) -> Self {
        self.injection = Some((at, formulas));
        self
    }

    /// Uses an explicit pool for every stage instead of the subformula closure
    /// of the stage itself. Proved formulas outside it are dropped.
    pub fn with_pool(mut self, pool: HashSet<ArithFormula>) -> Self {
        let mut closed = HashSet::new();
        for f in &pool {
            closed.extend(f.subformulas().into_iter().cloned());
        }
        self.pool = Some(closed);
        self
    }

    pub fn injection(&self) -> Option<(u64, &[ArithFormula])> {
        self.injection.as_ref().map(|(c, fs)| (*c, fs.as_slice()))
    }

    /// Every stage index at which the stage content can change.
    pub fn breakpoints(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.listed.iter().map(|(i, _)| *i).collect();
        v.extend(self.injection.as_ref().map(|(c, _)| *c));
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Identifies the content of stage `l`: stages with the same key are equal
    /// up to their index.
    pub fn content_key(&self, l: u64) -> (Option<usize>, bool) {
        let listed = self.listed.iter().rposition(|(i, _)| *i <= l);
        let injected = self.injection.as_ref().is_some_and(|(c, _)| *c <= l);
        (listed, injected)
    }

    pub fn proved_at(&self, l: u64) -> Vec<ArithFormula> {
        let (listed, injected) = self.content_key(l);
        let mut out: Vec<ArithFormula> =
            listed.map(|k| self.listed[k].1.clone()).unwrap_or_default();
        if injected {
            let (_, fs) = self.injection.as_ref().expect("injection");
            for f in fs {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        }
        if let Some(pool) = &self.pool {
            out.retain(|f| pool.contains(f));
        }
        out
    }

    pub fn stage(&self, l: u64) -> Result<TheoryStage, SimError> {
        let proved = self.proved_at(l);
        Ok(match &self.pool {
            None => TheoryStage::new(l, proved)?,
            Some(p) => TheoryStage::with_pool(l, proved, Pool::Explicit(p.clone()))?,
        })
    }

    /// Formulas in stage `l` that were not in stage `l − 1`.
    pub fn newly_proved(&self, l: u64) -> Vec<ArithFormula> {
        let now = self.proved_at(l);
        if l == 0 {
            return now;
        }
        let before: HashSet<ArithFormula> = self.proved_at(l - 1).into_iter().collect();
        now.into_iter().filter(|f| !before.contains(f)).collect()
    }
}
