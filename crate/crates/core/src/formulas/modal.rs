use std::collections::BTreeMap;

use super::arith::push_unique;

/// Argument of a modal predicate: a variable or a domain constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalArg {
    Var(String),
    Const(u64),
}

/// Quantified modal formulas. `Nec` is the box; diamond is sugar for `¬□¬`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalFormula {
    Top,
    Bot,
    Pred(String, Vec<ModalArg>),
    Neg(Box<ModalFormula>),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Imp(Box<ModalFormula>, Box<ModalFormula>),
    Forall(String, Box<ModalFormula>),
    Exists(String, Box<ModalFormula>),
    Nec(Box<ModalFormula>),
}

impl ModalArg {
    pub fn var(x: &str) -> Self {
        ModalArg::Var(x.to_string())
    }
}

impl ModalFormula {
    pub fn pred(name: &str, args: Vec<ModalArg>) -> Self {
        ModalFormula::Pred(name.to_string(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: ModalFormula) -> Self {
        ModalFormula::Neg(Box::new(a))
    }

    pub fn and(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, body: ModalFormula) -> Self {
        ModalFormula::Forall(x.to_string(), Box::new(body))
    }

    pub fn exists(x: &str, body: ModalFormula) -> Self {
        ModalFormula::Exists(x.to_string(), Box::new(body))
    }

    pub fn nec(a: ModalFormula) -> Self {
        ModalFormula::Nec(Box::new(a))
    }

    pub fn dia(a: ModalFormula) -> Self {
        Self::neg(Self::nec(Self::neg(a)))
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            ModalFormula::Top | ModalFormula::Bot => {}
            ModalFormula::Pred(_, args) => {
                for a in args {
                    if let ModalArg::Var(x) = a {
                        if !bound.contains(x) {
                            push_unique(out, x);
                        }
                    }
                }
            }
            ModalFormula::Neg(a) | ModalFormula::Nec(a) => a.collect_free(bound, out),
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) | ModalFormula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            ModalFormula::Forall(x, body) | ModalFormula::Exists(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Predicate names with their arities, in name order.
    pub fn signature(&self) -> BTreeMap<String, usize> {
        let mut sig = BTreeMap::new();
        self.visit(&mut |f| {
            if let ModalFormula::Pred(name, args) = f {
                sig.entry(name.clone()).or_insert(args.len());
            }
        });
        sig
    }

    /// Largest domain constant mentioned, if any.
    pub fn max_const(&self) -> Option<u64> {
        let mut m = None;
        self.visit(&mut |f| {
            if let ModalFormula::Pred(_, args) = f {
                for a in args {
                    if let ModalArg::Const(c) = a {
                        m = Some(m.map_or(*c, |v: u64| v.max(*c)));
                    }
                }
            }
        });
        m
    }

    /// Preorder traversal.
    pub fn visit<F: FnMut(&ModalFormula)>(&self, f: &mut F) {
        f(self);
        match self {
            ModalFormula::Neg(a)
            | ModalFormula::Nec(a)
            | ModalFormula::Forall(_, a)
            | ModalFormula::Exists(_, a) => a.visit(f),
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) | ModalFormula::Imp(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            ModalFormula::Nec(a) => 1 + a.modal_depth(),
            ModalFormula::Neg(a) | ModalFormula::Forall(_, a) | ModalFormula::Exists(_, a) => {
                a.modal_depth()
            }
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) | ModalFormula::Imp(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            _ => 0,
        }
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            ModalFormula::Forall(_, a) | ModalFormula::Exists(_, a) => 1 + a.quantifier_depth(),
            ModalFormula::Neg(a) | ModalFormula::Nec(a) => a.quantifier_depth(),
            ModalFormula::And(a, b) | ModalFormula::Or(a, b) | ModalFormula::Imp(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            _ => 0,
        }
    }

    /// Replaces free occurrences of variables by constants.
    pub fn instantiate(&self, sigma: &BTreeMap<String, u64>) -> ModalFormula {
        match self {
            ModalFormula::Top | ModalFormula::Bot => self.clone(),
            ModalFormula::Pred(p, args) => ModalFormula::Pred(
                p.clone(),
                args.iter()
                    .map(|a| match a {
                        ModalArg::Var(x) => match sigma.get(x) {
                            Some(c) => ModalArg::Const(*c),
                            None => a.clone(),
                        },
                        ModalArg::Const(_) => a.clone(),
                    })
                    .collect(),
            ),
            ModalFormula::Neg(a) => Self::neg(a.instantiate(sigma)),
            ModalFormula::Nec(a) => Self::nec(a.instantiate(sigma)),
            ModalFormula::And(a, b) => Self::and(a.instantiate(sigma), b.instantiate(sigma)),
            ModalFormula::Or(a, b) => Self::or(a.instantiate(sigma), b.instantiate(sigma)),
            ModalFormula::Imp(a, b) => Self::imp(a.instantiate(sigma), b.instantiate(sigma)),
            ModalFormula::Forall(x, body) | ModalFormula::Exists(x, body) => {
                let inner = if sigma.contains_key(x) {
                    let mut s = sigma.clone();
                    s.remove(x);
                    body.instantiate(&s)
                } else {
                    body.instantiate(sigma)
                };
                match self {
                    ModalFormula::Forall(..) => Self::forall(x, inner),
                    _ => Self::exists(x, inner),
                }
            }
        }
    }
}
