use rand::seq::SliceRandom;
use rand::Rng;

use super::ChaCha8Rng;
use crate::formulas::{ArithFormula, ArithTerm};

/// Knobs for random arithmetic terms and formulas.
#[derive(Clone, Debug)]
pub struct ArithShape {
    pub vars: Vec<String>,
    pub depth: usize,
    pub max_succ: u64,
    /// Allow `+` and `·`.
    pub operations: bool,
    /// Allow quotation terms.
    pub quotes: bool,
    /// Allow `<` and opaque atoms.
    pub relations: bool,
    pub quantifiers: bool,
}

impl Default for ArithShape {
    fn default() -> Self {
        ArithShape {
            vars: vec!["u".into(), "w".into(), "v".into()],
            depth: 3,
            max_succ: 2,
            operations: true,
            quotes: true,
            relations: true,
            quantifiers: true,
        }
    }
}

pub fn random_term(rng: &mut ChaCha8Rng, shape: &ArithShape, depth: usize) -> ArithTerm {
    let leaf = |rng: &mut ChaCha8Rng| {
        if shape.vars.is_empty() || rng.gen_bool(0.3) {
            ArithTerm::Zero
        } else {
            ArithTerm::var(shape.vars.choose(rng).expect("vars"))
        }
    };
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    match rng.gen_range(0..6) {
        0 | 1 => ArithTerm::succ(random_term(rng, shape, depth - 1)),
        2 if shape.operations => ArithTerm::add(
            random_term(rng, shape, depth - 1),
            random_term(rng, shape, depth - 1),
        ),
        3 if shape.operations => ArithTerm::mul(
            random_term(rng, shape, depth - 1),
            random_term(rng, shape, depth - 1),
        ),
        4 if shape.quotes => {
            let inner = ArithShape {
                quotes: false,
                quantifiers: false,
                ..shape.clone()
            };
            let body = random_arith_formula(rng, &inner, depth - 1);
            let dotted: Vec<String> = body
                .free_vars()
                .into_iter()
                .filter(|_| rng.gen_bool(0.7))
                .collect();
            ArithTerm::quote(body, dotted)
        }
        _ => ArithTerm::succ_n(leaf(rng), rng.gen_range(0..=shape.max_succ)),
    }
}

/// A formula of connective depth at most `depth` over `shape.vars`.
pub fn random_arith_formula(rng: &mut ChaCha8Rng, shape: &ArithShape, depth: usize) -> ArithFormula {
    let td = 2usize;
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..5) {
            0 if shape.relations => {
                ArithFormula::Lt(random_term(rng, shape, td), random_term(rng, shape, td))
            }
            1 if shape.relations => {
                let n = rng.gen_range(0..=2);
                ArithFormula::atom(
                    ["A", "P", "R"][n],
                    (0..n).map(|_| random_term(rng, shape, td)).collect(),
                )
            }
            4 => {
                if rng.gen_bool(0.5) {
                    ArithFormula::Top
                } else {
                    ArithFormula::Bot
                }
            }
            _ => ArithFormula::Eq(random_term(rng, shape, td), random_term(rng, shape, td)),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_arith_formula(rng, shape, depth - 1);
    match rng.gen_range(0..6) {
        0 => ArithFormula::neg(sub(rng)),
        1 => ArithFormula::and(sub(rng), sub(rng)),
        2 => ArithFormula::or(sub(rng), sub(rng)),
        3 => ArithFormula::imp(sub(rng), sub(rng)),
        _ if shape.quantifiers => {
            let x = ["x", "y"].choose(rng).expect("names").to_string();
            let mut inner = shape.clone();
            if !inner.vars.contains(&x) {
                inner.vars.push(x.clone());
            }
            let body = random_arith_formula(rng, &inner, depth - 1);
            if rng.gen_bool(0.5) {
                ArithFormula::forall(&x, body)
            } else {
                ArithFormula::exists(&x, body)
            }
        }
        _ => ArithFormula::neg(sub(rng)),
    }
}

fn succ_sentence(rng: &mut ChaCha8Rng, size: usize, rank: usize, scope: &mut Vec<String>, max_succ: u64) -> ArithFormula {
    if size == 0 || (rank == 0 && rng.gen_bool(0.3)) || rng.gen_bool(0.15) {
        let side = |rng: &mut ChaCha8Rng, scope: &Vec<String>| {
            let base = if scope.is_empty() || rng.gen_bool(0.2) {
                ArithTerm::Zero
            } else {
                ArithTerm::var(scope.choose(rng).expect("scope"))
            };
            ArithTerm::succ_n(base, rng.gen_range(0..=max_succ))
        };
        return ArithFormula::Eq(side(rng, scope), side(rng, scope));
    }
    let c = rng.gen_range(0..6);
    match c {
        0 => ArithFormula::neg(succ_sentence(rng, size - 1, rank, scope, max_succ)),
        1..=3 => {
            let l = rng.gen_range(0..size);
            let a = succ_sentence(rng, l, rank, scope, max_succ);
            let b = succ_sentence(rng, size - 1 - l, rank, scope, max_succ);
            match c {
                1 => ArithFormula::and(a, b),
                2 => ArithFormula::or(a, b),
                _ => ArithFormula::imp(a, b),
            }
        }
        _ if rank > 0 => {
            let x = format!("x{}", scope.len());
            scope.push(x.clone());
            let body = succ_sentence(rng, size - 1, rank - 1, scope, max_succ);
            scope.pop();
            if c == 4 {
                ArithFormula::exists(&x, body)
            } else {
                ArithFormula::forall(&x, body)
            }
        }
        _ => ArithFormula::neg(succ_sentence(rng, size - 1, rank, scope, max_succ)),
    }
}

/// A sentence of `{0, s, =}` with quantifier rank at most `rank`.
pub fn random_successor_sentence(rng: &mut ChaCha8Rng, rank: usize, size: usize, max_succ: u64) -> ArithFormula {
    succ_sentence(rng, size, rank, &mut Vec::new(), max_succ)
}

/// Premises and a goal over at most `atoms` distinct atoms `@A0 … @A{atoms−1}`.
pub fn propositional_case(rng: &mut ChaCha8Rng, atoms: usize, premises: usize, depth: usize) -> (Vec<ArithFormula>, ArithFormula) {
    fn gen(rng: &mut ChaCha8Rng, atoms: usize, depth: usize) -> ArithFormula {
        if depth == 0 || rng.gen_bool(0.3) {
            return ArithFormula::atom(&format!("A{}", rng.gen_range(0..atoms.max(1))), Vec::new());
        }
        match rng.gen_range(0..4) {
            0 => ArithFormula::neg(gen(rng, atoms, depth - 1)),
            1 => ArithFormula::and(gen(rng, atoms, depth - 1), gen(rng, atoms, depth - 1)),
            2 => ArithFormula::or(gen(rng, atoms, depth - 1), gen(rng, atoms, depth - 1)),
            _ => ArithFormula::imp(gen(rng, atoms, depth - 1), gen(rng, atoms, depth - 1)),
        }
    }
    let n = rng.gen_range(0..=premises);
    let ps = (0..n).map(|_| gen(rng, atoms, depth)).collect();
    (ps, gen(rng, atoms, depth))
}
