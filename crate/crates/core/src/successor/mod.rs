//! The first-order theory of `(ℕ, 0, s)`: quantifier elimination, a decision
//! procedure for sentences, and a bounded evaluator used as a cross-check.

mod qe;

use std::collections::BTreeMap;
use std::fmt;

use crate::exec::Exec;
use crate::formulas::{ArithFormula, ArithTerm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuccessorError {
    #[error("`{0}` is outside the language {{0, s, =}}")]
    NotSuccessor(String),
    #[error("free variable `{0}` in a sentence")]
    FreeVariable(String),
}

/// An arithmetic formula using only `0`, `s`, `=`, connectives and quantifiers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuccessorFormula(ArithFormula);

impl SuccessorFormula {
    pub fn new(f: ArithFormula) -> Result<Self, SuccessorError> {
        check(&f)?;
        Ok(SuccessorFormula(f))
    }

    pub fn formula(&self) -> &ArithFormula {
        &self.0
    }

    pub fn into_inner(self) -> ArithFormula {
        self.0
    }
}

impl fmt::Display for SuccessorFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_term(t: &ArithTerm) -> Result<(), SuccessorError> {
    match t.split_succ().1 {
        ArithTerm::Zero | ArithTerm::Var(_) => Ok(()),
        other => Err(SuccessorError::NotSuccessor(other.to_string())),
    }
}

fn check(f: &ArithFormula) -> Result<(), SuccessorError> {
    match f {
        ArithFormula::Top | ArithFormula::Bot => Ok(()),
        ArithFormula::Eq(a, b) => {
            check_term(a)?;
            check_term(b)
        }
        ArithFormula::Lt(..) | ArithFormula::Atom(..) => {
            Err(SuccessorError::NotSuccessor(f.to_string()))
        }
        ArithFormula::Neg(a) | ArithFormula::Forall(_, a) | ArithFormula::Exists(_, a) => check(a),
        ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
            check(a)?;
            check(b)
        }
    }
}

/// A quantifier-free equivalent, kept in internal form for fast evaluation.
#[derive(Clone, Debug)]
pub struct Eliminated(qe::Qf);

impl Eliminated {
    /// Truth under an assignment covering the free variables; `None` otherwise.
    pub fn eval(&self, env: &BTreeMap<String, u64>) -> Option<bool> {
        qe::eval(&self.0, env)
    }

    pub fn to_formula(&self) -> SuccessorFormula {
        SuccessorFormula(qe::to_formula(&self.0))
    }

    /// `Some(b)` when the result no longer depends on any variable.
    pub fn as_constant(&self) -> Option<bool> {
        match self.0 {
            qe::Qf::True => Some(true),
            qe::Qf::False => Some(false),
            _ => None,
        }
    }
}

pub fn eliminate(f: &SuccessorFormula) -> Eliminated {
    Eliminated(qe::eliminate(&f.0))
}

/// A quantifier-free formula equivalent to `f` over `ℕ` under every assignment.
pub fn eliminate_quantifiers(f: &SuccessorFormula) -> SuccessorFormula {
    eliminate(f).to_formula()
}

/// Truth of a sentence in `(ℕ, 0, s)`.
pub fn decide_successor(s: &SuccessorFormula) -> Result<bool, SuccessorError> {
    if let Some(x) = s.0.free_vars().into_iter().next() {
        return Err(SuccessorError::FreeVariable(x));
    }
    Ok(qe::eval(&qe::eliminate(&s.0), &BTreeMap::new()).expect("closed"))
}

/// Validates and decides an arithmetic sentence.
pub fn decide_formula(f: &ArithFormula) -> Result<bool, SuccessorError> {
    decide_successor(&SuccessorFormula::new(f.clone())?)
}

/// Decides many sentences, possibly in parallel.
pub fn decide_all(sentences: &[SuccessorFormula], exec: Exec) -> Vec<Result<bool, SuccessorError>> {
    exec.map(sentences, decide_successor)
}

/// Window size for [`bounded_eval`] that makes it exact: with `c` the largest
/// successor height (at least 1) and `q` the quantifier rank, `c·2^(q−1) + 1`.
///
/// Eliminating one quantifier at most doubles offsets, so after fixing the
/// values already chosen, the quantifier-free form of a body of rank `k` only
/// distinguishes values within `c·2^k` of an assigned value or of zero. A
/// witness beyond that can be moved to just past the window.
pub fn bound(s: &SuccessorFormula) -> u64 {
    let c = s.0.max_succ_height().max(1);
    let q = s.0.quantifier_rank().max(1) as u32;
    c.saturating_mul(1u64 << (q - 1).min(62)).saturating_add(1)
}

/// Evaluates a sentence with each quantifier ranging over `{0, …, m + b}`,
/// where `m` is the largest value assigned so far (0 at the top).
pub fn bounded_eval(s: &SuccessorFormula, b: u64) -> bool {
    bounded_eval_env(s, &BTreeMap::new(), b).expect("sentence")
}

/// Bounded evaluation of an open formula under an assignment; `None` if a free
/// variable is unassigned.
pub fn bounded_eval_env(f: &SuccessorFormula, env: &BTreeMap<String, u64>, b: u64) -> Option<bool> {
    let mut stack: Vec<(String, u64)> = env.iter().map(|(k, v)| (k.clone(), *v)).collect();
    if f.0.free_vars().iter().any(|x| !env.contains_key(x)) {
        return None;
    }
    let m = env.values().copied().max().unwrap_or(0);
    Some(beval(&f.0, &mut stack, m, b))
}

fn term_value(t: &ArithTerm, env: &[(String, u64)]) -> u64 {
    let (r, base) = t.split_succ();
    match base {
        ArithTerm::Zero => r,
        ArithTerm::Var(x) => env.iter().rev().find(|(y, _)| y == x).expect("assigned").1 + r,
        _ => unreachable!("successor language"),
    }
}

fn beval(f: &ArithFormula, env: &mut Vec<(String, u64)>, m: u64, b: u64) -> bool {
    match f {
        ArithFormula::Top => true,
        ArithFormula::Bot => false,
        ArithFormula::Eq(x, y) => term_value(x, env) == term_value(y, env),
        ArithFormula::Neg(a) => !beval(a, env, m, b),
        ArithFormula::And(x, y) => beval(x, env, m, b) && beval(y, env, m, b),
        ArithFormula::Or(x, y) => beval(x, env, m, b) || beval(y, env, m, b),
        ArithFormula::Imp(x, y) => !beval(x, env, m, b) || beval(y, env, m, b),
        ArithFormula::Forall(x, body) | ArithFormula::Exists(x, body) => {
            let universal = matches!(f, ArithFormula::Forall(..));
            for v in 0..=m + b {
                env.push((x.clone(), v));
                let r = beval(body, env, m.max(v), b);
                env.pop();
                if r != universal {
                    return !universal;
                }
            }
            universal
        }
        _ => unreachable!("successor language"),
    }
}

/// `∃w (x = s^(d+1)(w))`: the successor-language form of `x > d`.
pub fn greater_than(x: &ArithTerm, d: u64, fresh: &str) -> ArithFormula {
    ArithFormula::exists(
        fresh,
        ArithFormula::Eq(x.clone(), ArithTerm::succ_n(ArithTerm::var(fresh), d + 1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse_arith;

    fn sf(s: &str) -> SuccessorFormula {
        SuccessorFormula::new(parse_arith(s).unwrap()).unwrap()
    }

    #[test]
    fn qe_examples() {
        let q = eliminate_quantifiers(&sf("ex x s(x) = s(s(0))"));
        assert_eq!(q.formula(), &ArithFormula::Top);
        let q = eliminate_quantifiers(&sf("all x x = 0"));
        assert_eq!(q.formula(), &ArithFormula::Bot);
        let g = SuccessorFormula::new(greater_than(&ArithTerm::var("x"), 2, "w")).unwrap();
        let q = eliminate(&g);
        assert!(q.to_formula().formula().quantifier_rank() == 0);
        for x in 0..=10u64 {
            let env = BTreeMap::from([("x".to_string(), x)]);
            assert_eq!(q.eval(&env), Some(x >= 3), "x = {x}");
        }
    }

    #[test]
    fn decide_examples() {
        assert!(decide_successor(&sf("0 = 0")).unwrap());
        assert!(!decide_successor(&sf("ex x s(x) = 0")).unwrap());
        assert!(decide_successor(&sf("all x ex y y = s(x)")).unwrap());
        assert!(decide_successor(&sf("all x (x = 0 | ex y x = s(y))")).unwrap());
        assert!(!decide_successor(&sf("ex x all y (~y = s(x) & ~x = 0)")).unwrap());
        assert!(decide_successor(&sf("ex x (~x = 0 & ~x = 1 & ~x = 2)")).unwrap());
        assert_eq!(
            decide_successor(&sf("x = 0")),
            Err(SuccessorError::FreeVariable("x".into()))
        );
    }

    #[test]
    fn language_is_checked() {
        for s in ["0 < 1", "x + 0 = x", "@P(0)", "x * x = 0"] {
            assert!(
                SuccessorFormula::new(parse_arith(s).unwrap()).is_err(),
                "{s}"
            );
        }
    }

    #[test]
    fn bounded_examples() {
        assert!(bounded_eval(&sf("all x ex y y = s(x)"), 5));
        let far = sf("ex x x = s(s(s(s(s(s(s(0)))))))");
        assert!(!bounded_eval(&far, 3));
        assert!(decide_successor(&far).unwrap());
        assert!(bounded_eval(&far, bound(&far)));
    }

    #[test]
    fn nested_offsets_need_the_doubling_bound() {
        // The witness for x must be far from both 0 and y's candidates.
        let s = sf("ex x (~x = 0 & ~x = 1 & ~x = 2 & all y (~x = s(s(s(y))) | y = 0))");
        assert_eq!(bounded_eval(&s, bound(&s)), decide_successor(&s).unwrap());
    }
}
