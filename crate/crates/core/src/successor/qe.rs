//! Quantifier elimination for `(ℕ, 0, s)`.
//!
//! Quantifier-free material is kept as literals over linear successor terms
//! `x + k`: equations between two such terms, and lower bounds `x ≥ c`.
//! An existential is removed from each disjunct of a disjunctive normal form:
//! a defining equation is solved and substituted, otherwise an upper bound
//! `x < U` turns into a finite case split, otherwise the remaining literals
//! (disequations and lower bounds) are satisfiable by a large enough `x`.

use std::collections::BTreeMap;

use crate::formulas::{ArithFormula, ArithTerm};

/// `var + off`, or the constant `off` when `var` is `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Lin {
    pub var: Option<String>,
    pub off: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Lit {
    /// Normalized: at least one side carries a variable, and for two variables
    /// the left name is smaller and one offset is zero.
    Eq(Lin, Lin),
    /// `x ≥ c` with `c ≥ 1`.
    Ge(String, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Qf {
    True,
    False,
    Lit(Lit),
    Not(Box<Qf>),
    And(Vec<Qf>),
    Or(Vec<Qf>),
}

impl Lin {
    fn konst(c: u64) -> Self {
        Lin { var: None, off: c }
    }
}

pub(crate) fn mk_eq(a: Lin, b: Lin) -> Qf {
    match (&a.var, &b.var) {
        (None, None) => bool_qf(a.off == b.off),
        (Some(_), None) => solve_const(a, b.off),
        (None, Some(_)) => solve_const(b, a.off),
        (Some(x), Some(y)) if x == y => bool_qf(a.off == b.off),
        (Some(x), Some(y)) => {
            let m = a.off.min(b.off);
            let (a, b) = (
                Lin {
                    var: a.var.clone(),
                    off: a.off - m,
                },
                Lin {
                    var: b.var.clone(),
                    off: b.off - m,
                },
            );
            if x < y {
                Qf::Lit(Lit::Eq(a, b))
            } else {
                Qf::Lit(Lit::Eq(b, a))
            }
        }
    }
}

/// `x + a = c`.
fn solve_const(a: Lin, c: u64) -> Qf {
    if c >= a.off {
        Qf::Lit(Lit::Eq(Lin { var: a.var, off: 0 }, Lin::konst(c - a.off)))
    } else {
        Qf::False
    }
}

/// `t ≥ c`.
pub(crate) fn mk_ge(t: Lin, c: u64) -> Qf {
    match t.var {
        None => bool_qf(t.off >= c),
        Some(x) => {
            if c <= t.off {
                Qf::True
            } else {
                Qf::Lit(Lit::Ge(x, c - t.off))
            }
        }
    }
}

fn bool_qf(b: bool) -> Qf {
    if b {
        Qf::True
    } else {
        Qf::False
    }
}

pub(crate) fn not(q: Qf) -> Qf {
    match q {
        Qf::True => Qf::False,
        Qf::False => Qf::True,
        Qf::Not(inner) => *inner,
        other => Qf::Not(Box::new(other)),
    }
}

pub(crate) fn and(items: Vec<Qf>) -> Qf {
    let mut out = Vec::new();
    for q in items {
        match q {
            Qf::True => {}
            Qf::False => return Qf::False,
            Qf::And(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    dedup(&mut out);
    match out.len() {
        0 => Qf::True,
        1 => out.pop().expect("one"),
        _ => Qf::And(out),
    }
}

pub(crate) fn or(items: Vec<Qf>) -> Qf {
    let mut out = Vec::new();
    for q in items {
        match q {
            Qf::False => {}
            Qf::True => return Qf::True,
            Qf::Or(inner) => out.extend(inner),
            other => out.push(other),
        }
    }
    dedup(&mut out);
    match out.len() {
        0 => Qf::False,
        1 => out.pop().expect("one"),
        _ => Qf::Or(out),
    }
}

fn dedup(v: &mut Vec<Qf>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|q| seen.insert(q.clone()));
}

fn lin_of(t: &ArithTerm) -> Lin {
    let (r, base) = t.split_succ();
    match base {
        ArithTerm::Zero => Lin::konst(r),
        ArithTerm::Var(x) => Lin {
            var: Some(x.clone()),
            off: r,
        },
        _ => unreachable!("checked successor language"),
    }
}

/// Quantifier-free equivalent of a successor-language formula.
pub(crate) fn eliminate(f: &ArithFormula) -> Qf {
    match f {
        ArithFormula::Top => Qf::True,
        ArithFormula::Bot => Qf::False,
        ArithFormula::Eq(a, b) => mk_eq(lin_of(a), lin_of(b)),
        ArithFormula::Neg(a) => not(eliminate(a)),
        ArithFormula::And(a, b) => and(vec![eliminate(a), eliminate(b)]),
        ArithFormula::Or(a, b) => or(vec![eliminate(a), eliminate(b)]),
        ArithFormula::Imp(a, b) => or(vec![not(eliminate(a)), eliminate(b)]),
        ArithFormula::Exists(x, body) => exists(x, eliminate(body)),
        ArithFormula::Forall(x, body) => not(exists(x, not(eliminate(body)))),
        _ => unreachable!("checked successor language"),
    }
}

type Conj = Vec<(Lit, bool)>;

/// Disjunctive normal form; contradictory disjuncts are dropped.
fn dnf(q: &Qf, positive: bool) -> Vec<Conj> {
    match (q, positive) {
        (Qf::True, true) | (Qf::False, false) => vec![Vec::new()],
        (Qf::True, false) | (Qf::False, true) => Vec::new(),
        (Qf::Lit(l), p) => vec![vec![(l.clone(), p)]],
        (Qf::Not(inner), p) => dnf(inner, !p),
        (Qf::And(items), true) | (Qf::Or(items), false) => {
            let mut acc: Vec<Conj> = vec![Vec::new()];
            for item in items {
                let part = dnf(item, positive);
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for b in &part {
                        let mut c = a.clone();
                        let mut ok = true;
                        for lit in b {
                            if c.iter().any(|(l, p)| l == &lit.0 && *p != lit.1) {
                                ok = false;
                                break;
                            }
                            if !c.contains(lit) {
                                c.push(lit.clone());
                            }
                        }
                        if ok {
                            next.push(c);
                        }
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        (Qf::Or(items), true) | (Qf::And(items), false) => {
            items.iter().flat_map(|i| dnf(i, positive)).collect()
        }
    }
}

fn mentions(l: &Lit, x: &str) -> bool {
    match l {
        Lit::Eq(a, b) => a.var.as_deref() == Some(x) || b.var.as_deref() == Some(x),
        Lit::Ge(y, _) => y == x,
    }
}

fn polarity(q: Qf, positive: bool) -> Qf {
    if positive {
        q
    } else {
        not(q)
    }
}

/// Rewrites a literal under `x + a = t`, by adding `a` to both sides.
fn subst_solved(l: &Lit, x: &str, t: &Lin, a: u64) -> Qf {
    match l {
        Lit::Eq(p, q) => {
            let (xs, other) = if p.var.as_deref() == Some(x) {
                (p, q)
            } else {
                (q, p)
            };
            mk_eq(
                Lin {
                    var: t.var.clone(),
                    off: t.off + xs.off,
                },
                Lin {
                    var: other.var.clone(),
                    off: other.off + a,
                },
            )
        }
        Lit::Ge(_, c) => mk_ge(t.clone(), c + a),
    }
}

/// Rewrites a literal under `x = v`.
fn subst_value(l: &Lit, x: &str, v: u64) -> Qf {
    let fix = |p: &Lin| {
        if p.var.as_deref() == Some(x) {
            Lin::konst(p.off + v)
        } else {
            p.clone()
        }
    };
    match l {
        Lit::Eq(p, q) => mk_eq(fix(p), fix(q)),
        Lit::Ge(_, c) => bool_qf(v >= *c),
    }
}

fn exists(x: &str, body: Qf) -> Qf {
    let parts = dnf(&body, true);
    or(parts.into_iter().map(|c| exists_conj(x, c)).collect())
}

fn exists_conj(x: &str, conj: Conj) -> Qf {
    let (with_x, rest): (Conj, Conj) = conj.into_iter().partition(|(l, _)| mentions(l, x));
    let rest_qf: Vec<Qf> = rest
        .into_iter()
        .map(|(l, p)| polarity(Qf::Lit(l), p))
        .collect();
    if with_x.is_empty() {
        return and(rest_qf);
    }
    let defining = with_x
        .iter()
        .position(|(l, p)| *p && matches!(l, Lit::Eq(..)));
    if let Some(i) = defining {
        let (Lit::Eq(p, q), _) = &with_x[i] else {
            unreachable!()
        };
        let (xs, t) = if p.var.as_deref() == Some(x) {
            (p, q)
        } else {
            (q, p)
        };
        let a = xs.off;
        let mut parts = rest_qf;
        parts.push(mk_ge(t.clone(), a));
        for (j, (l, pos)) in with_x.iter().enumerate() {
            if j != i {
                parts.push(polarity(subst_solved(l, x, t, a), *pos));
            }
        }
        return and(parts);
    }
    let upper = with_x
        .iter()
        .filter_map(|(l, p)| match (l, p) {
            (Lit::Ge(_, c), false) => Some(*c),
            _ => None,
        })
        .min();
    match upper {
        Some(u) => {
            let cases = (0..u)
                .map(|v| {
                    and(with_x
                        .iter()
                        .map(|(l, p)| polarity(subst_value(l, x, v), *p))
                        .collect())
                })
                .collect();
            let mut parts = rest_qf;
            parts.push(or(cases));
            and(parts)
        }
        // Only disequations and lower bounds: a large x satisfies them all.
        None => and(rest_qf),
    }
}

fn lookup(env: &BTreeMap<String, u64>, l: &Lin) -> Option<u64> {
    match &l.var {
        None => Some(l.off),
        Some(x) => env.get(x).map(|v| v + l.off),
    }
}

/// Evaluates under an assignment; `None` if a variable is unassigned.
pub(crate) fn eval(q: &Qf, env: &BTreeMap<String, u64>) -> Option<bool> {
    Some(match q {
        Qf::True => true,
        Qf::False => false,
        Qf::Lit(Lit::Eq(a, b)) => lookup(env, a)? == lookup(env, b)?,
        Qf::Lit(Lit::Ge(x, c)) => *env.get(x)? >= *c,
        Qf::Not(a) => !eval(a, env)?,
        Qf::And(items) => {
            let mut r = true;
            for i in items {
                r &= eval(i, env)?;
            }
            r
        }
        Qf::Or(items) => {
            let mut r = false;
            for i in items {
                r |= eval(i, env)?;
            }
            r
        }
    })
}

fn term_of(l: &Lin) -> ArithTerm {
    match &l.var {
        None => ArithTerm::numeral(l.off),
        Some(x) => ArithTerm::succ_n(ArithTerm::Var(x.clone()), l.off),
    }
}

/// Renders in the successor language; `x ≥ c` becomes `¬x = 0 ∧ … ∧ ¬x = c−1`.
pub(crate) fn to_formula(q: &Qf) -> ArithFormula {
    match q {
        Qf::True => ArithFormula::Top,
        Qf::False => ArithFormula::Bot,
        Qf::Lit(Lit::Eq(a, b)) => ArithFormula::Eq(term_of(a), term_of(b)),
        Qf::Lit(Lit::Ge(x, c)) => ArithFormula::conj((0..*c).map(|v| {
            ArithFormula::neg(ArithFormula::Eq(ArithTerm::var(x), ArithTerm::numeral(v)))
        })),
        Qf::Not(a) => ArithFormula::neg(to_formula(a)),
        Qf::And(items) => ArithFormula::conj(items.iter().map(to_formula)),
        Qf::Or(items) => ArithFormula::disj(items.iter().map(to_formula)),
    }
}
