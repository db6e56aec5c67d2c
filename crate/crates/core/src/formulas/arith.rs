use std::collections::BTreeSet;

/// Terms over `{0, s, +, ×}` plus quoted formulas.
///
/// Numerals are plain `Succ` chains over `Zero`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithTerm {
    Zero,
    Var(String),
    Succ(Box<ArithTerm>),
    Add(Box<ArithTerm>, Box<ArithTerm>),
    Mul(Box<ArithTerm>, Box<ArithTerm>),
    /// The code of a formula with some of its free variables dotted: `#(body; x, y)`.
    /// When numerals are substituted for a dotted variable, the numeral goes
    /// inside the body and the variable leaves the dotted list.
    Quote(Box<ArithFormula>, Vec<String>),
}

/// First-order arithmetic formulas with opaque named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithFormula {
    Top,
    Bot,
    Eq(ArithTerm, ArithTerm),
    Lt(ArithTerm, ArithTerm),
    /// Uninterpreted predicate such as `@Lam(1)` or `@Pr(#(0 = 1))`.
    Atom(String, Vec<ArithTerm>),
    Neg(Box<ArithFormula>),
    And(Box<ArithFormula>, Box<ArithFormula>),
    Or(Box<ArithFormula>, Box<ArithFormula>),
    Imp(Box<ArithFormula>, Box<ArithFormula>),
    Forall(String, Box<ArithFormula>),
    Exists(String, Box<ArithFormula>),
}

impl ArithTerm {
    pub fn var(name: &str) -> Self {
        ArithTerm::Var(name.to_string())
    }

    pub fn succ(t: ArithTerm) -> Self {
        ArithTerm::Succ(Box::new(t))
    }

    pub fn add(a: ArithTerm, b: ArithTerm) -> Self {
        ArithTerm::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ArithTerm, b: ArithTerm) -> Self {
        ArithTerm::Mul(Box::new(a), Box::new(b))
    }

    pub fn quote(body: ArithFormula, dotted: Vec<String>) -> Self {
        ArithTerm::Quote(Box::new(body), dotted)
    }

    /// The numeral for `n`: `n` successors over zero.
    pub fn numeral(n: u64) -> Self {
        Self::succ_n(ArithTerm::Zero, n)
    }

    /// `s^n(t)`.
    pub fn succ_n(mut t: ArithTerm, n: u64) -> Self {
        for _ in 0..n {
            t = ArithTerm::Succ(Box::new(t));
        }
        t
    }

    /// Strips leading successors: `s^r(t)` gives `(r, t)` with `t` not a `Succ`.
    pub fn split_succ(&self) -> (u64, &ArithTerm) {
        let mut t = self;
        let mut r = 0;
        while let ArithTerm::Succ(inner) = t {
            r += 1;
            t = inner;
        }
        (r, t)
    }

    pub fn as_numeral(&self) -> Option<u64> {
        match self.split_succ() {
            (r, ArithTerm::Zero) => Some(r),
            _ => None,
        }
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut out);
        out
    }

    pub(crate) fn collect_free(&self, out: &mut Vec<String>) {
        match self {
            ArithTerm::Zero => {}
            ArithTerm::Var(x) => push_unique(out, x),
            ArithTerm::Succ(t) => t.collect_free(out),
            ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            ArithTerm::Quote(_, dotted) => {
                for x in dotted {
                    push_unique(out, x);
                }
            }
        }
    }

    /// Number of constructor layers; a variable or zero has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            ArithTerm::Zero | ArithTerm::Var(_) => 0,
            ArithTerm::Succ(t) => 1 + t.depth(),
            ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => 1 + a.depth().max(b.depth()),
            ArithTerm::Quote(f, _) => 1 + f.depth(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }
}

pub(crate) fn push_unique(out: &mut Vec<String>, x: &str) {
    if !out.iter().any(|y| y == x) {
        out.push(x.to_string());
    }
}

impl ArithFormula {
    pub fn eq(a: ArithTerm, b: ArithTerm) -> Self {
        ArithFormula::Eq(a, b)
    }

    pub fn lt(a: ArithTerm, b: ArithTerm) -> Self {
        ArithFormula::Lt(a, b)
    }

    pub fn atom(name: &str, args: Vec<ArithTerm>) -> Self {
        ArithFormula::Atom(name.to_string(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: ArithFormula) -> Self {
        ArithFormula::Neg(Box::new(a))
    }

    pub fn and(a: ArithFormula, b: ArithFormula) -> Self {
        ArithFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ArithFormula, b: ArithFormula) -> Self {
        ArithFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: ArithFormula, b: ArithFormula) -> Self {
        ArithFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, body: ArithFormula) -> Self {
        ArithFormula::Forall(x.to_string(), Box::new(body))
    }

    pub fn exists(x: &str, body: ArithFormula) -> Self {
        ArithFormula::Exists(x.to_string(), Box::new(body))
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conj<I: IntoIterator<Item = ArithFormula>>(items: I) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => ArithFormula::Top,
            Some(first) => it.fold(first, ArithFormula::and),
        }
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disj<I: IntoIterator<Item = ArithFormula>>(items: I) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => ArithFormula::Bot,
            Some(first) => it.fold(first, ArithFormula::or),
        }
    }

    /// Atoms and quantified formulas are opaque to propositional analysis.
    pub fn is_prop_atomic(&self) -> bool {
        matches!(
            self,
            ArithFormula::Top
                | ArithFormula::Bot
                | ArithFormula::Eq(..)
                | ArithFormula::Lt(..)
                | ArithFormula::Atom(..)
                | ArithFormula::Forall(..)
                | ArithFormula::Exists(..)
        )
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    pub fn free_var_set(&self) -> BTreeSet<String> {
        self.free_vars().into_iter().collect()
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let term = |t: &ArithTerm, bound: &Vec<String>, out: &mut Vec<String>| {
            let mut vs = Vec::new();
            t.collect_free(&mut vs);
            for v in vs {
                if !bound.contains(&v) {
                    push_unique(out, &v);
                }
            }
        };
        match self {
            ArithFormula::Top | ArithFormula::Bot => {}
            ArithFormula::Eq(a, b) | ArithFormula::Lt(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            ArithFormula::Atom(_, args) => {
                for a in args {
                    term(a, bound, out);
                }
            }
            ArithFormula::Neg(a) => a.collect_free(bound, out),
            ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            ArithFormula::Forall(x, body) | ArithFormula::Exists(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free, including quote bodies.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut out);
        out
    }

    fn visit_vars(&self, out: &mut BTreeSet<String>) {
        fn term(t: &ArithTerm, out: &mut BTreeSet<String>) {
            match t {
                ArithTerm::Zero => {}
                ArithTerm::Var(x) => {
                    out.insert(x.clone());
                }
                ArithTerm::Succ(a) => term(a, out),
                ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => {
                    term(a, out);
                    term(b, out);
                }
                ArithTerm::Quote(f, dotted) => {
                    f.visit_vars(out);
                    out.extend(dotted.iter().cloned());
                }
            }
        }
        match self {
            ArithFormula::Top | ArithFormula::Bot => {}
            ArithFormula::Eq(a, b) | ArithFormula::Lt(a, b) => {
                term(a, out);
                term(b, out);
            }
            ArithFormula::Atom(_, args) => args.iter().for_each(|a| term(a, out)),
            ArithFormula::Neg(a) => a.visit_vars(out),
            ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
                a.visit_vars(out);
                b.visit_vars(out);
            }
            ArithFormula::Forall(x, body) | ArithFormula::Exists(x, body) => {
                out.insert(x.clone());
                body.visit_vars(out);
            }
        }
    }

    /// Maximum nesting of quantifiers.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            ArithFormula::Neg(a) => a.quantifier_rank(),
            ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            ArithFormula::Forall(_, body) | ArithFormula::Exists(_, body) => {
                1 + body.quantifier_rank()
            }
            _ => 0,
        }
    }

    /// Connective/quantifier nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            ArithFormula::Neg(a) => 1 + a.depth(),
            ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
            ArithFormula::Forall(_, body) | ArithFormula::Exists(_, body) => 1 + body.depth(),
            _ => 0,
        }
    }

    /// Largest successor-chain height over all terms, counting `s^r(x)` as `r`.
    pub fn max_succ_height(&self) -> u64 {
        fn term(t: &ArithTerm) -> u64 {
            match t {
                ArithTerm::Zero | ArithTerm::Var(_) => 0,
                ArithTerm::Succ(_) => {
                    let (r, base) = t.split_succ();
                    r.max(term(base))
                }
                ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => term(a).max(term(b)),
                ArithTerm::Quote(f, _) => f.max_succ_height(),
            }
        }
        match self {
            ArithFormula::Top | ArithFormula::Bot => 0,
            ArithFormula::Eq(a, b) | ArithFormula::Lt(a, b) => term(a).max(term(b)),
            ArithFormula::Atom(_, args) => args.iter().map(term).max().unwrap_or(0),
            ArithFormula::Neg(a) => a.max_succ_height(),
            ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
                a.max_succ_height().max(b.max_succ_height())
            }
            ArithFormula::Forall(_, body) | ArithFormula::Exists(_, body) => body.max_succ_height(),
        }
    }

    /// All subformulas, the formula itself included, preorder. Quote bodies are not entered.
    pub fn subformulas(&self) -> Vec<&ArithFormula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            match f {
                ArithFormula::Neg(a) | ArithFormula::Forall(_, a) | ArithFormula::Exists(_, a) => {
                    stack.push(a)
                }
                ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                _ => {}
            }
        }
        out
    }
}
