//! Syntactic identity of numeral instances, expressed in the successor language.
//!
//! Given `t0(u⃗, v⃗)` and `t1(w⃗, v⃗)`, [`term_identity_formula`] builds a
//! `{0, s, =}` formula `φ(u⃗, w⃗)` that is true at `(a⃗, b⃗)` exactly when
//! `t0(ā⃗, v⃗)` and `t1(b̄⃗, v⃗)` are the same term. [`formula_identity_formula`]
//! does the same for formulas.

use std::collections::{BTreeMap, BTreeSet};

use crate::formulas::{rename_free_vars, ArithFormula, ArithTerm};
use crate::successor::SuccessorFormula;

/// Prefixes reserved for variables introduced by the construction.
pub const RESERVED_PREFIXES: [&str; 2] = ["_e", "_q"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("variable `{0}` occurs in more than one list of the profile")]
    Overlap(String),
    #[error("free variable `{0}` is not covered by the profile")]
    Uncovered(String),
    #[error("variable name `{0}` is reserved")]
    Reserved(String),
}

/// Which variables get numerals on the left (`u`), on the right (`w`), and which
/// stay as they are on both sides (`shared`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubstitutionProfile {
    pub u_vars: Vec<String>,
    pub w_vars: Vec<String>,
    pub shared: Vec<String>,
}

impl SubstitutionProfile {
    pub fn new(
        u_vars: Vec<String>,
        w_vars: Vec<String>,
        shared: Vec<String>,
    ) -> Result<Self, IdentityError> {
        let mut seen = BTreeSet::new();
        for x in u_vars.iter().chain(&w_vars).chain(&shared) {
            if is_reserved(x) {
                return Err(IdentityError::Reserved(x.clone()));
            }
            if !seen.insert(x.clone()) {
                return Err(IdentityError::Overlap(x.clone()));
            }
        }
        Ok(SubstitutionProfile {
            u_vars,
            w_vars,
            shared,
        })
    }

    fn sets(&self) -> Scope {
        Scope {
            u: self.u_vars.iter().cloned().collect(),
            w: self.w_vars.iter().cloned().collect(),
        }
    }
}

fn is_reserved(x: &str) -> bool {
    RESERVED_PREFIXES.iter().any(|p| x.starts_with(p))
}

/// The variables currently substituted on each side. Anything else is shared.
#[derive(Clone)]
struct Scope {
    u: BTreeSet<String>,
    w: BTreeSet<String>,
}

impl Scope {
    fn bind(&self, y: &str) -> Scope {
        let mut s = self.clone();
        s.u.remove(y);
        s.w.remove(y);
        s
    }
}

struct Builder {
    next: usize,
}

impl Builder {
    fn fresh(&mut self, prefix: &str) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next - 1)
    }

    fn term(&mut self, t0: &ArithTerm, t1: &ArithTerm, sc: &Scope) -> ArithFormula {
        use ArithTerm::*;
        let w_var = |t: &ArithTerm| match t {
            Var(w) if sc.w.contains(w) => Some(w.clone()),
            _ => None,
        };
        match t0 {
            Zero => match t1 {
                Zero => ArithFormula::Top,
                _ => match w_var(t1) {
                    Some(w) => ArithFormula::Eq(ArithTerm::var(&w), Zero),
                    None => ArithFormula::Bot,
                },
            },
            Var(u) if sc.u.contains(u) => match t1.split_succ() {
                (r, Zero) => ArithFormula::Eq(t0.clone(), ArithTerm::numeral(r)),
                (r, base) => match w_var(base) {
                    Some(w) => {
                        ArithFormula::Eq(t0.clone(), ArithTerm::succ_n(ArithTerm::var(&w), r))
                    }
                    None => ArithFormula::Bot,
                },
            },
            Var(v) => match t1 {
                Var(v1) if v1 == v && !sc.w.contains(v1) => ArithFormula::Top,
                _ => ArithFormula::Bot,
            },
            Add(a0, b0) => match t1 {
                Add(a1, b1) => ArithFormula::and(self.term(a0, a1, sc), self.term(b0, b1, sc)),
                _ => ArithFormula::Bot,
            },
            Mul(a0, b0) => match t1 {
                Mul(a1, b1) => ArithFormula::and(self.term(a0, a1, sc), self.term(b0, b1, sc)),
                _ => ArithFormula::Bot,
            },
            Succ(inner) => match t1 {
                Succ(inner1) => self.term(inner, inner1, sc),
                _ => match w_var(t1) {
                    Some(w) => {
                        // s(t0') ≡ b̄ iff b = s(c) and t0' ≡ c̄.
                        let body = self.term(inner, t1, sc);
                        let x = self.fresh("_e");
                        let body =
                            rename_free_vars(&body, &BTreeMap::from([(w.clone(), x.clone())]));
                        ArithFormula::exists(
                            &x,
                            ArithFormula::and(
                                body,
                                ArithFormula::Eq(
                                    ArithTerm::var(&w),
                                    ArithTerm::succ(ArithTerm::var(&x)),
                                ),
                            ),
                        )
                    }
                    None => ArithFormula::Bot,
                },
            },
            Quote(body0, dotted0) => match t1 {
                Quote(body1, dotted1) => self.quote(body0, dotted0, body1, dotted1, sc),
                _ => ArithFormula::Bot,
            },
        }
    }

    /// Two quotes agree iff their bodies agree after substituting the dotted
    /// variables and the remaining dotted lists coincide.
    fn quote(
        &mut self,
        body0: &ArithFormula,
        dotted0: &[String],
        body1: &ArithFormula,
        dotted1: &[String],
        sc: &Scope,
    ) -> ArithFormula {
        let rest0: Vec<&String> = dotted0.iter().filter(|x| !sc.u.contains(*x)).collect();
        let rest1: Vec<&String> = dotted1.iter().filter(|x| !sc.w.contains(*x)).collect();
        if rest0 != rest1 {
            return ArithFormula::Bot;
        }
        // Inside the body only the dotted variables receive numerals; rename
        // them apart so undotted occurrences of the same names stay shared.
        let mut to_q0 = BTreeMap::new();
        let mut to_q1 = BTreeMap::new();
        let mut back = BTreeMap::new();
        for x in dotted0.iter().filter(|x| sc.u.contains(*x)) {
            let q = self.fresh("_q");
            to_q0.insert(x.clone(), q.clone());
            back.insert(q, x.clone());
        }
        for x in dotted1.iter().filter(|x| sc.w.contains(*x)) {
            let q = self.fresh("_q");
            to_q1.insert(x.clone(), q.clone());
            back.insert(q, x.clone());
        }
        let inner = Scope {
            u: to_q0.values().cloned().collect(),
            w: to_q1.values().cloned().collect(),
        };
        let b0 = rename_free_vars(body0, &to_q0);
        let b1 = rename_free_vars(body1, &to_q1);
        let psi = self.formula(&b0, &b1, &inner);
        rename_free_vars(&psi, &back)
    }

    fn formula(&mut self, a: &ArithFormula, b: &ArithFormula, sc: &Scope) -> ArithFormula {
        use ArithFormula::*;
        match (a, b) {
            (Top, Top) | (Bot, Bot) => Top,
            (Eq(t0, t1), Eq(s0, s1)) | (Lt(t0, t1), Lt(s0, s1)) => {
                ArithFormula::and(self.term(t0, s0, sc), self.term(t1, s1, sc))
            }
            (Atom(p, ts), Atom(q, ss)) if p == q && ts.len() == ss.len() => {
                let parts: Vec<ArithFormula> = ts
                    .iter()
                    .zip(ss)
                    .map(|(t, s)| self.term(t, s, sc))
                    .collect();
                ArithFormula::conj(parts)
            }
            (Neg(x), Neg(y)) => self.formula(x, y, sc),
            (And(x0, x1), And(y0, y1)) | (Or(x0, x1), Or(y0, y1)) | (Imp(x0, x1), Imp(y0, y1)) => {
                ArithFormula::and(self.formula(x0, y0, sc), self.formula(x1, y1, sc))
            }
            (Forall(x, bx), Forall(y, by)) | (Exists(x, bx), Exists(y, by)) if x == y => {
                self.formula(bx, by, &sc.bind(x))
            }
            _ => Bot,
        }
    }
}

fn check_covered<'a, I>(
    vars: I,
    side: &[String],
    shared: &[String],
    reserved_ok: bool,
) -> Result<(), IdentityError>
where
    I: IntoIterator<Item = &'a String>,
{
    for x in vars {
        if !reserved_ok && is_reserved(x) {
            return Err(IdentityError::Reserved(x.clone()));
        }
        if !side.contains(x) && !shared.contains(x) {
            return Err(IdentityError::Uncovered(x.clone()));
        }
    }
    Ok(())
}

fn reserved_anywhere(f: &ArithFormula) -> Option<String> {
    f.all_vars().into_iter().find(|x| is_reserved(x))
}

/// `φ_{t0,t1,v⃗}`: true at `(a⃗, b⃗)` iff `t0(ā⃗, v⃗) ≡ t1(b̄⃗, v⃗)`.
pub fn term_identity_formula(
    t0: &ArithTerm,
    t1: &ArithTerm,
    prof: &SubstitutionProfile,
) -> Result<SuccessorFormula, IdentityError> {
    check_covered(&t0.free_vars(), &prof.u_vars, &prof.shared, false)?;
    check_covered(&t1.free_vars(), &prof.w_vars, &prof.shared, false)?;
    for t in [t0, t1] {
        let probe = ArithFormula::Eq(t.clone(), ArithTerm::Zero);
        if let Some(x) = reserved_anywhere(&probe) {
            return Err(IdentityError::Reserved(x));
        }
    }
    let f = Builder { next: 0 }.term(t0, t1, &prof.sets());
    Ok(SuccessorFormula::new(f).expect("construction stays in {0, s, =}"))
}

/// `ψ_{α,β,v⃗}`: true at `(a⃗, b⃗)` iff `α(ā⃗, v⃗) ≡ β(b̄⃗, v⃗)`.
pub fn formula_identity_formula(
    alpha: &ArithFormula,
    beta: &ArithFormula,
    prof: &SubstitutionProfile,
) -> Result<SuccessorFormula, IdentityError> {
    check_covered(&alpha.free_vars(), &prof.u_vars, &prof.shared, false)?;
    check_covered(&beta.free_vars(), &prof.w_vars, &prof.shared, false)?;
    for f in [alpha, beta] {
        if let Some(x) = reserved_anywhere(f) {
            return Err(IdentityError::Reserved(x));
        }
    }
    let f = Builder { next: 0 }.formula(alpha, beta, &prof.sets());
    Ok(SuccessorFormula::new(f).expect("construction stays in {0, s, =}"))
}

/// Removes `⊤`/`⊥` subformulas and quantifiers over unused variables. The
/// result is equivalent over `ℕ` and has no more free variables.
pub fn simplify(f: &ArithFormula) -> ArithFormula {
    use ArithFormula::*;
    match f {
        Top | Bot | Lt(..) | Atom(..) => f.clone(),
        Eq(a, b) => {
            if a == b {
                return Top;
            }
            match (a.split_succ(), b.split_succ()) {
                ((r, ArithTerm::Zero), (q, ArithTerm::Zero)) if r != q => Bot,
                ((r, ArithTerm::Zero), (q, ArithTerm::Var(_)))
                | ((q, ArithTerm::Var(_)), (r, ArithTerm::Zero))
                    if q > r =>
                {
                    Bot
                }
                ((r, x), (q, y)) if x == y && r != q => Bot,
                _ => f.clone(),
            }
        }
        Neg(a) => match simplify(a) {
            Top => Bot,
            Bot => Top,
            s => ArithFormula::neg(s),
        },
        And(a, b) => match (simplify(a), simplify(b)) {
            (Bot, _) | (_, Bot) => Bot,
            (Top, s) | (s, Top) => s,
            (x, y) => ArithFormula::and(x, y),
        },
        Or(a, b) => match (simplify(a), simplify(b)) {
            (Top, _) | (_, Top) => Top,
            (Bot, s) | (s, Bot) => s,
            (x, y) => ArithFormula::or(x, y),
        },
        Imp(a, b) => match (simplify(a), simplify(b)) {
            (Bot, _) | (_, Top) => Top,
            (Top, s) => s,
            (s, Bot) => ArithFormula::neg(s),
            (x, y) => ArithFormula::imp(x, y),
        },
        Forall(x, body) | Exists(x, body) => {
            let s = simplify(body);
            if !s.free_var_set().contains(x) {
                return s;
            }
            match f {
                Forall(..) => ArithFormula::forall(x, s),
                _ => ArithFormula::exists(x, s),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_arith, parse_term, substitute_numerals, substitute_numerals_term};
    use crate::successor::decide_successor;

    fn prof(u: &[&str], w: &[&str], v: &[&str]) -> SubstitutionProfile {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect();
        SubstitutionProfile::new(s(u), s(w), s(v)).unwrap()
    }

    fn holds(f: &SuccessorFormula, env: &[(&str, u64)]) -> bool {
        let sigma: BTreeMap<String, u64> = env.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let inst = SuccessorFormula::new(substitute_numerals(f.formula(), &sigma)).unwrap();
        decide_successor(&inst).unwrap()
    }

    #[test]
    fn variable_against_shifted_variable() {
        let f = term_identity_formula(
            &parse_term("u").unwrap(),
            &parse_term("s(s(w))").unwrap(),
            &prof(&["u"], &["w"], &[]),
        )
        .unwrap();
        assert_eq!(f.to_string(), "u = s(s(w))");
    }

    #[test]
    fn zero_against_shared_is_false() {
        let f = term_identity_formula(
            &ArithTerm::Zero,
            &parse_term("v").unwrap(),
            &prof(&[], &[], &["v"]),
        )
        .unwrap();
        assert_eq!(f.formula(), &ArithFormula::Bot);
    }

    #[test]
    fn successor_against_variable() {
        let t0 = parse_term("s(u)").unwrap();
        let t1 = parse_term("w").unwrap();
        let f = term_identity_formula(&t0, &t1, &prof(&["u"], &["w"], &[])).unwrap();
        assert!(matches!(f.formula(), ArithFormula::Exists(..)));
        assert!(holds(&f, &[("u", 3), ("w", 4)]));
        assert!(!holds(&f, &[("u", 3), ("w", 3)]));
        let i0 = substitute_numerals_term(&t0, &BTreeMap::from([("u".to_string(), 3)]));
        let i1 = substitute_numerals_term(&t1, &BTreeMap::from([("w".to_string(), 4)]));
        assert_eq!(i0, i1);
    }

    #[test]
    fn formula_examples() {
        let p = prof(&["u"], &["w"], &[]);
        let f = formula_identity_formula(
            &parse_arith("u = 0").unwrap(),
            &parse_arith("w < 0").unwrap(),
            &p,
        )
        .unwrap();
        assert_eq!(f.formula(), &ArithFormula::Bot);
        let f = formula_identity_formula(
            &parse_arith("0 = 0").unwrap(),
            &parse_arith("0 = 0").unwrap(),
            &p,
        )
        .unwrap();
        assert!(decide_successor(&f).unwrap());
        let f = formula_identity_formula(
            &parse_arith("ex y u = y").unwrap(),
            &parse_arith("ex y w = y").unwrap(),
            &p,
        )
        .unwrap();
        assert!(holds(&f, &[("u", 5), ("w", 5)]));
        assert!(!holds(&f, &[("u", 5), ("w", 6)]));
    }

    #[test]
    fn bound_variable_shadows_profile() {
        let p = prof(&["y"], &["w"], &[]);
        let f = formula_identity_formula(
            &parse_arith("ex y y = 0").unwrap(),
            &parse_arith("ex y y = 0").unwrap(),
            &p,
        )
        .unwrap();
        assert!(holds(&f, &[("y", 3), ("w", 1)]));
    }

    #[test]
    fn quotes_compare_after_substitution() {
        let p = prof(&["u"], &["w"], &[]);
        let a = parse_arith("@Pr(#(u = 0; u))").unwrap();
        let b = parse_arith("@Pr(#(w = 0; w))").unwrap();
        let f = formula_identity_formula(&a, &b, &p).unwrap();
        assert!(holds(&f, &[("u", 2), ("w", 2)]));
        assert!(!holds(&f, &[("u", 2), ("w", 1)]));
        // An undotted occurrence is not substituted.
        let c = parse_arith("@Pr(#(u = 0))").unwrap();
        let f = formula_identity_formula(&c, &b, &prof(&["u"], &["w"], &[])).unwrap();
        assert!(!holds(&f, &[("u", 0), ("w", 0)]));
    }

    #[test]
    fn profile_errors() {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert!(matches!(
            SubstitutionProfile::new(s(&["x"]), s(&["x"]), vec![]),
            Err(IdentityError::Overlap(_))
        ));
        let p = prof(&["u"], &["w"], &[]);
        assert!(matches!(
            term_identity_formula(&parse_term("z").unwrap(), &ArithTerm::Zero, &p),
            Err(IdentityError::Uncovered(_))
        ));
    }

    #[test]
    fn simplify_keeps_meaning() {
        let f = parse_arith("(0 = 0 & ~(s(0) = 0)) -> ex x x = s(0)").unwrap();
        assert_eq!(simplify(&f), parse_arith("ex x x = s(0)").unwrap());
    }
}
