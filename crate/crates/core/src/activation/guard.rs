use crate::embedding::ThetaFamily;
use crate::formulas::{ArithFormula, ArithTerm};

/// A formula `ψ(x⃗)` together with the tuple `k⃗` it is guarded by.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GuardedPair {
    pub body: ArithFormula,
    pub vars: Vec<String>,
    pub ks: Vec<u64>,
}

fn lambda_world(f: &ArithFormula, lambda: &str) -> Option<u64> {
    match f {
        ArithFormula::Atom(name, args) if name == lambda && args.len() == 1 => args[0].as_numeral(),
        _ => None,
    }
}

/// Reads `∀x⃗ (λ(j̄) ∧ θ_{k0}(x0) ∧ … → ψ)` with the conjunction nested to the
/// left, returning `j` and the pair `(ψ(x⃗), k⃗)`. Bound-variable names and the
/// order of the conjuncts must match exactly.
pub fn match_guard(
    f: &ArithFormula,
    lambda: &str,
    theta: &ThetaFamily,
) -> Option<(u64, GuardedPair)> {
    let mut vars = Vec::new();
    let mut g = f;
    while let ArithFormula::Forall(x, body) = g {
        if vars.contains(x) {
            return None;
        }
        vars.push(x.clone());
        g = body;
    }
    let ArithFormula::Imp(ante, body) = g else {
        return None;
    };
    let mut thetas = Vec::new();
    let mut a: &ArithFormula = ante;
    let j = loop {
        if let Some(j) = lambda_world(a, lambda) {
            break j;
        }
        match a {
            ArithFormula::And(rest, th) => {
                thetas.push(&**th);
                a = rest;
            }
            _ => return None,
        }
    };
    thetas.reverse();
    if thetas.len() != vars.len() {
        return None;
    }
    let mut ks = Vec::with_capacity(vars.len());
    for (th, x) in thetas.iter().zip(&vars) {
        match theta.recognize(th) {
            Some((k, y)) if y == x => ks.push(k),
            _ => return None,
        }
    }
    Some((
        j,
        GuardedPair {
            body: (**body).clone(),
            vars,
            ks,
        },
    ))
}

/// `∀x⃗ (λ(j̄) ∧ ⋀ θ_{k_u}(x_u) → ψ)`, the inverse of [`match_guard`].
pub fn guard_formula(
    j: u64,
    pair: &GuardedPair,
    lambda: &str,
    theta: &ThetaFamily,
) -> ArithFormula {
    let mut parts = vec![ArithFormula::atom(lambda, vec![ArithTerm::numeral(j)])];
    parts.extend(
        pair.vars
            .iter()
            .zip(&pair.ks)
            .map(|(x, &k)| theta.theta_var(k, x)),
    );
    let mut f = ArithFormula::imp(ArithFormula::conj(parts), pair.body.clone());
    for x in pair.vars.iter().rev() {
        f = ArithFormula::forall(x, f);
    }
    f
}
