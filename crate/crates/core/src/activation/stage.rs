use std::collections::HashSet;

use num_bigint::BigUint;

use super::ActivationError;
use crate::formulas::{code_at_most, formulas_up_to, ArithFormula};

/// The finite formula universe `F_l` a stage draws its candidates from.
#[derive(Clone, Debug)]
pub enum Pool {
    /// Formulas with Gödel code at most the stage index.
    Godel,
    /// An explicit set, closed under subformulas.
    Explicit(HashSet<ArithFormula>),
}

/// A finite approximation of the theorems proved by stage `index`.
#[derive(Clone, Debug)]
pub struct TheoryStage {
    pub index: u64,
    proved: Vec<ArithFormula>,
    proved_set: HashSet<ArithFormula>,
    pool: Pool,
    clipped: usize,
}

fn add_closure(f: &ArithFormula, set: &mut HashSet<ArithFormula>) {
    for g in f.subformulas() {
        set.insert(g.clone());
    }
}

fn check_names(f: &ArithFormula) -> Result<(), ActivationError> {
    match f.all_vars().into_iter().find(|x| x.starts_with('_')) {
        Some(x) => Err(ActivationError::Reserved(x)),
        None => Ok(()),
    }
}

impl TheoryStage {
    /// A stage whose pool is the subformula closure of `proved`.
    pub fn new<I>(index: u64, proved: I) -> Result<Self, ActivationError>
    where
        I: IntoIterator<Item = ArithFormula>,
    {
        let proved: Vec<ArithFormula> = proved.into_iter().collect();
        let mut pool = HashSet::new();
        for f in &proved {
            add_closure(f, &mut pool);
        }
        Self::with_pool(index, proved, Pool::Explicit(pool))
    }

    /// A stage with an explicit pool, which is closed under subformulas here.
    /// Proved formulas outside the pool are dropped and counted.
    pub fn with_pool<I>(index: u64, proved: I, pool: Pool) -> Result<Self, ActivationError>
    where
        I: IntoIterator<Item = ArithFormula>,
    {
        let pool = match pool {
            Pool::Explicit(set) => {
                let mut closed = HashSet::new();
                for f in &set {
                    check_names(f)?;
                    add_closure(f, &mut closed);
                }
                Pool::Explicit(closed)
            }
            Pool::Godel => Pool::Godel,
        };
        let mut stage = TheoryStage {
            index,
            proved: Vec::new(),
            proved_set: HashSet::new(),
            pool,
            clipped: 0,
        };
        for f in proved {
            check_names(&f)?;
            if !stage.in_pool(&f) {
                stage.clipped += 1;
            } else if stage.proved_set.insert(f.clone()) {
                stage.proved.push(f);
            }
        }
        Ok(stage)
    }

    pub fn empty(index: u64) -> Self {
        TheoryStage {
            index,
            proved: Vec::new(),
            proved_set: HashSet::new(),
            pool: Pool::Explicit(HashSet::new()),
            clipped: 0,
        }
    }

    pub fn proved(&self) -> &[ArithFormula] {
        &self.proved
    }

    pub fn contains(&self, f: &ArithFormula) -> bool {
        self.proved_set.contains(f)
    }

    pub fn in_pool(&self, f: &ArithFormula) -> bool {
        match &self.pool {
            Pool::Godel => code_at_most(f, &BigUint::from(self.index)),
            Pool::Explicit(set) => set.contains(f),
        }
    }

    pub fn pool(&self) -> &Pool {
        &self.pool
    }

    /// Every formula of the pool, in a deterministic order.
    pub fn pool_formulas(&self) -> Vec<ArithFormula> {
        match &self.pool {
            Pool::Godel => formulas_up_to(self.index),
            Pool::Explicit(set) => {
                let mut v: Vec<ArithFormula> = set.iter().cloned().collect();
                v.sort();
                v
            }
        }
    }

    /// Number of proved formulas dropped for lying outside the pool.
    pub fn clipped(&self) -> usize {
        self.clipped
    }

    /// Largest successor height occurring in the pool (or in `proved` for a
    /// Gödel pool).
    pub fn max_numeral(&self) -> u64 {
        let it: Box<dyn Iterator<Item = &ArithFormula>> = match &self.pool {
            Pool::Godel => Box::new(self.proved.iter()),
            Pool::Explicit(set) => Box::new(set.iter()),
        };
        it.map(|f| f.max_succ_height()).max().unwrap_or(0)
    }

    /// Formulas of `self` that are not in `earlier`.
    pub fn newly_proved(&self, earlier: Option<&TheoryStage>) -> Vec<ArithFormula> {
        self.proved
            .iter()
            .filter(|f| earlier.is_none_or(|e| !e.contains(f)))
            .cloned()
            .collect()
    }

    /// Errors unless `self` contains everything `earlier` proved.
    pub fn check_extends(&self, earlier: &TheoryStage) -> Result<(), ActivationError> {
        if earlier.proved.iter().all(|f| self.contains(f)) {
            Ok(())
        } else {
            Err(ActivationError::NotCumulative {
                earlier: earlier.index,
                later: self.index,
            })
        }
    }
}
