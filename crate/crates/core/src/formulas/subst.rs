use std::collections::{BTreeMap, BTreeSet};

use super::arith::{ArithFormula, ArithTerm};

/// Replaces free occurrences of each `x ∈ dom(σ)` by the numeral `σ(x)`.
/// Inside a quote, a dotted variable receives the numeral in the quoted body and
/// stops being dotted.
pub fn substitute_numerals(f: &ArithFormula, sigma: &BTreeMap<String, u64>) -> ArithFormula {
    if sigma.is_empty() {
        return f.clone();
    }
    subst_formula(f, sigma)
}

pub fn substitute_numerals_term(t: &ArithTerm, sigma: &BTreeMap<String, u64>) -> ArithTerm {
    match t {
        ArithTerm::Zero => ArithTerm::Zero,
        ArithTerm::Var(x) => match sigma.get(x) {
            Some(n) => ArithTerm::numeral(*n),
            None => t.clone(),
        },
        ArithTerm::Succ(a) => ArithTerm::succ(substitute_numerals_term(a, sigma)),
        ArithTerm::Add(a, b) => ArithTerm::add(
            substitute_numerals_term(a, sigma),
            substitute_numerals_term(b, sigma),
        ),
        ArithTerm::Mul(a, b) => ArithTerm::mul(
            substitute_numerals_term(a, sigma),
            substitute_numerals_term(b, sigma),
        ),
        ArithTerm::Quote(body, dotted) => {
            let inner: BTreeMap<String, u64> = dotted
                .iter()
                .filter_map(|x| sigma.get(x).map(|n| (x.clone(), *n)))
                .collect();
            if inner.is_empty() {
                return t.clone();
            }
            let rest = dotted
                .iter()
                .filter(|x| !inner.contains_key(*x))
                .cloned()
                .collect();
            ArithTerm::quote(subst_formula(body, &inner), rest)
        }
    }
}

fn subst_formula(f: &ArithFormula, sigma: &BTreeMap<String, u64>) -> ArithFormula {
    let t = |x: &ArithTerm| substitute_numerals_term(x, sigma);
    match f {
        ArithFormula::Top | ArithFormula::Bot => f.clone(),
        ArithFormula::Eq(a, b) => ArithFormula::Eq(t(a), t(b)),
        ArithFormula::Lt(a, b) => ArithFormula::Lt(t(a), t(b)),
        ArithFormula::Atom(n, args) => ArithFormula::Atom(n.clone(), args.iter().map(t).collect()),
        ArithFormula::Neg(a) => ArithFormula::neg(subst_formula(a, sigma)),
        ArithFormula::And(a, b) => {
            ArithFormula::and(subst_formula(a, sigma), subst_formula(b, sigma))
        }
        ArithFormula::Or(a, b) => {
            ArithFormula::or(subst_formula(a, sigma), subst_formula(b, sigma))
        }
        ArithFormula::Imp(a, b) => {
            ArithFormula::imp(subst_formula(a, sigma), subst_formula(b, sigma))
        }
        ArithFormula::Forall(x, body) | ArithFormula::Exists(x, body) => {
            let inner = if sigma.contains_key(x) {
                let mut s = sigma.clone();
                s.remove(x);
                if s.is_empty() {
                    (**body).clone()
                } else {
                    subst_formula(body, &s)
                }
            } else {
                subst_formula(body, sigma)
            };
            rebuild_quantifier(f, x, inner)
        }
    }
}

fn rebuild_quantifier(shape: &ArithFormula, x: &str, body: ArithFormula) -> ArithFormula {
    match shape {
        ArithFormula::Forall(..) => ArithFormula::forall(x, body),
        _ => ArithFormula::exists(x, body),
    }
}

/// A name based on `base` not in `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    let mut i = 0usize;
    loop {
        let cand = format!("{base}{i}");
        if !taken.contains(&cand) {
            return cand;
        }
        i += 1;
    }
}

/// Renames free variables, renaming binders where they would capture a target name.
pub fn rename_free_vars(f: &ArithFormula, map: &BTreeMap<String, String>) -> ArithFormula {
    if map.is_empty() {
        return f.clone();
    }
    let mut taken = f.all_vars();
    taken.extend(map.values().cloned());
    rename_formula(f, map, &mut taken)
}

pub fn rename_term(t: &ArithTerm, map: &BTreeMap<String, String>) -> ArithTerm {
    let mut taken: BTreeSet<String> = map.values().cloned().collect();
    collect_term_vars(t, &mut taken);
    rename_t(t, map, &mut taken)
}

fn collect_term_vars(t: &ArithTerm, out: &mut BTreeSet<String>) {
    match t {
        ArithTerm::Zero => {}
        ArithTerm::Var(x) => {
            out.insert(x.clone());
        }
        ArithTerm::Succ(a) => collect_term_vars(a, out),
        ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => {
            collect_term_vars(a, out);
            collect_term_vars(b, out);
        }
        ArithTerm::Quote(body, dotted) => {
            out.extend(body.all_vars());
            out.extend(dotted.iter().cloned());
        }
    }
}

fn rename_t(
    t: &ArithTerm,
    map: &BTreeMap<String, String>,
    taken: &mut BTreeSet<String>,
) -> ArithTerm {
    match t {
        ArithTerm::Zero => ArithTerm::Zero,
        ArithTerm::Var(x) => match map.get(x) {
            Some(y) => ArithTerm::Var(y.clone()),
            None => t.clone(),
        },
        ArithTerm::Succ(a) => ArithTerm::succ(rename_t(a, map, taken)),
        ArithTerm::Add(a, b) => ArithTerm::add(rename_t(a, map, taken), rename_t(b, map, taken)),
        ArithTerm::Mul(a, b) => ArithTerm::mul(rename_t(a, map, taken), rename_t(b, map, taken)),
        ArithTerm::Quote(body, dotted) => {
            let inner: BTreeMap<String, String> = dotted
                .iter()
                .filter_map(|x| map.get(x).map(|y| (x.clone(), y.clone())))
                .collect();
            if inner.is_empty() {
                return t.clone();
            }
            let new_dotted = dotted
                .iter()
                .map(|x| inner.get(x).cloned().unwrap_or_else(|| x.clone()))
                .collect();
            ArithTerm::quote(rename_formula(body, &inner, taken), new_dotted)
        }
    }
}

fn rename_formula(
    f: &ArithFormula,
    map: &BTreeMap<String, String>,
    taken: &mut BTreeSet<String>,
) -> ArithFormula {
    match f {
        ArithFormula::Top | ArithFormula::Bot => f.clone(),
        ArithFormula::Eq(a, b) => {
            ArithFormula::Eq(rename_t(a, map, taken), rename_t(b, map, taken))
        }
        ArithFormula::Lt(a, b) => {
            ArithFormula::Lt(rename_t(a, map, taken), rename_t(b, map, taken))
        }
        ArithFormula::Atom(n, args) => ArithFormula::Atom(
            n.clone(),
            args.iter().map(|a| rename_t(a, map, taken)).collect(),
        ),
        ArithFormula::Neg(a) => ArithFormula::neg(rename_formula(a, map, taken)),
        ArithFormula::And(a, b) => {
            ArithFormula::and(rename_formula(a, map, taken), rename_formula(b, map, taken))
        }
        ArithFormula::Or(a, b) => {
            ArithFormula::or(rename_formula(a, map, taken), rename_formula(b, map, taken))
        }
        ArithFormula::Imp(a, b) => {
            ArithFormula::imp(rename_formula(a, map, taken), rename_formula(b, map, taken))
        }
        ArithFormula::Forall(x, body) | ArithFormula::Exists(x, body) => {
            let mut inner = map.clone();
            inner.remove(x);
            let free = body.free_var_set();
            inner.retain(|k, _| free.contains(k));
            if inner.is_empty() {
                return f.clone();
            }
            if inner.values().any(|y| y == x) {
                let z = fresh_name(x, taken);
                taken.insert(z.clone());
                inner.insert(x.clone(), z.clone());
                rebuild_quantifier(f, &z, rename_formula(body, &inner, taken))
            } else {
                rebuild_quantifier(f, x, rename_formula(body, &inner, taken))
            }
        }
    }
}
