use std::collections::BTreeMap;

use super::{KripkeError, KripkeModel};
use crate::exec::Exec;
use crate::formulas::{ModalArg, ModalFormula};

/// `w ⊩ A` for a formula whose free variables are all bound by `env`.
fn eval(m: &KripkeModel, w: u32, f: &ModalFormula, env: &mut Vec<(String, u64)>) -> bool {
    match f {
        ModalFormula::Top => true,
        ModalFormula::Bot => false,
        ModalFormula::Pred(p, args) => {
            let vals: Vec<u64> = args
                .iter()
                .map(|a| match a {
                    ModalArg::Const(c) => *c,
                    ModalArg::Var(x) => {
                        env.iter()
                            .rev()
                            .find(|(y, _)| y == x)
                            .expect("closed formula")
                            .1
                    }
                })
                .collect();
            m.holds(w, p, &vals)
        }
        ModalFormula::Neg(a) => !eval(m, w, a, env),
        ModalFormula::And(a, b) => eval(m, w, a, env) && eval(m, w, b, env),
        ModalFormula::Or(a, b) => eval(m, w, a, env) || eval(m, w, b, env),
        ModalFormula::Imp(a, b) => !eval(m, w, a, env) || eval(m, w, b, env),
        ModalFormula::Nec(a) => {
            let succ: Vec<u32> = m.successors(w).collect();
            succ.into_iter().all(|v| eval(m, v, a, env))
        }
        ModalFormula::Forall(x, body) | ModalFormula::Exists(x, body) => {
            let universal = matches!(f, ModalFormula::Forall(..));
            let dom: Vec<u64> = m.domain(w).expect("world").iter().copied().collect();
            for c in dom {
                env.push((x.clone(), c));
                let r = eval(m, w, body, env);
                env.pop();
                if r != universal {
                    return !universal;
                }
            }
            universal
        }
    }
}

/// Decides `w ⊩_M A`. `A` must be closed with parameters drawn from `D_w`.
pub fn forces(m: &KripkeModel, w: u32, a: &ModalFormula) -> Result<bool, KripkeError> {
    let dom = m.domain(w).ok_or(KripkeError::UnknownWorld(w))?;
    if let Some(x) = a.free_vars().into_iter().next() {
        return Err(KripkeError::FreeVariable(x));
    }
    let mut bad = None;
    a.visit(&mut |g| {
        if let ModalFormula::Pred(_, args) = g {
            for arg in args {
                if let ModalArg::Const(c) = arg {
                    if !dom.contains(c) && bad.is_none() {
                        bad = Some(*c);
                    }
                }
            }
        }
    });
    if let Some(value) = bad {
        return Err(KripkeError::ParamOutsideDomain { world: w, value });
    }
    Ok(eval(m, w, a, &mut Vec::new()))
}

/// Decides `w ⊩ A[σ]` for an open formula by instantiating its free variables.
pub fn forces_with(
    m: &KripkeModel,
    w: u32,
    a: &ModalFormula,
    sigma: &BTreeMap<String, u64>,
) -> Result<bool, KripkeError> {
    forces(m, w, &a.instantiate(sigma))
}

/// True iff every world forces every instance of `a` with parameters from its domain.
pub fn valid_in_model(m: &KripkeModel, a: &ModalFormula, exec: Exec) -> Result<bool, KripkeError> {
    let free = a.free_vars();
    let worlds: Vec<u32> = m.worlds().iter().copied().collect();
    let results = exec.map(&worlds, |&w| -> Result<bool, KripkeError> {
        let dom: Vec<u64> = m.domain(w).expect("world").iter().copied().collect();
        let mut idx = vec![0usize; free.len()];
        loop {
            let sigma: BTreeMap<String, u64> = free
                .iter()
                .zip(&idx)
                .map(|(x, &i)| (x.clone(), dom[i]))
                .collect();
            if !forces_with(m, w, a, &sigma)? {
                return Ok(false);
            }
            // Odometer over parameter tuples.
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(true);
                }
                idx[k] += 1;
                if idx[k] < dom.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    });
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}
