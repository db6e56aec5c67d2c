//! Propositional translation of arithmetic formulas and tautological consequence.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::exec::Exec;
use crate::formulas::{godel_encode, ArithFormula, GodelCode};

mod sat;

/// Largest number of distinct variables a single truth-table check accepts.
pub const MAX_VARIABLES: usize = 24;

/// Propositional formulas over an arbitrary variable type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PropFormula<V> {
    Var(V),
    Top,
    Bot,
    Neg(Box<PropFormula<V>>),
    And(Box<PropFormula<V>>, Box<PropFormula<V>>),
    Or(Box<PropFormula<V>>, Box<PropFormula<V>>),
    Imp(Box<PropFormula<V>>, Box<PropFormula<V>>),
}

/// Variable key of a propositionally atomic formula: its Gödel code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomKey(pub GodelCode);

impl fmt::Display for AtomKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TautError {
    #[error("{count} propositional variables exceed the limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },
}

impl<V> PropFormula<V> {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Self) -> Self {
        PropFormula::Neg(Box::new(a))
    }

    pub fn and(a: Self, b: Self) -> Self {
        PropFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        PropFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Self, b: Self) -> Self {
        PropFormula::Imp(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction, `⊤` when empty.
    pub fn conj<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let mut it = items.into_iter();
        match it.next() {
            None => PropFormula::Top,
            Some(first) => it.fold(first, Self::and),
        }
    }

    /// Truth value under an assignment.
    pub fn eval<F: Fn(&V) -> bool>(&self, val: &F) -> bool {
        match self {
            PropFormula::Var(v) => val(v),
            PropFormula::Top => true,
            PropFormula::Bot => false,
            PropFormula::Neg(a) => !a.eval(val),
            PropFormula::And(a, b) => a.eval(val) && b.eval(val),
            PropFormula::Or(a, b) => a.eval(val) || b.eval(val),
            PropFormula::Imp(a, b) => !a.eval(val) || b.eval(val),
        }
    }

    /// Distinct variables in first-occurrence order.
    pub fn vars(&self) -> Vec<&V>
    where
        V: PartialEq,
    {
        let mut out: Vec<&V> = Vec::new();
        self.visit_vars(&mut |v| {
            if !out.contains(&v) {
                out.push(v);
            }
        });
        out
    }

    fn visit_vars<'a, F: FnMut(&'a V)>(&'a self, f: &mut F) {
        match self {
            PropFormula::Var(v) => f(v),
            PropFormula::Top | PropFormula::Bot => {}
            PropFormula::Neg(a) => a.visit_vars(f),
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
        }
    }

    /// Replaces each variable by `g(v)`.
    pub fn map_vars<W, G: Fn(&V) -> W + Copy>(&self, g: G) -> PropFormula<W> {
        match self {
            PropFormula::Var(v) => PropFormula::Var(g(v)),
            PropFormula::Top => PropFormula::Top,
            PropFormula::Bot => PropFormula::Bot,
            PropFormula::Neg(a) => PropFormula::neg(a.map_vars(g)),
            PropFormula::And(a, b) => PropFormula::and(a.map_vars(g), b.map_vars(g)),
            PropFormula::Or(a, b) => PropFormula::or(a.map_vars(g), b.map_vars(g)),
            PropFormula::Imp(a, b) => PropFormula::imp(a.map_vars(g), b.map_vars(g)),
        }
    }
}

impl<V: fmt::Display> fmt::Display for PropFormula<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Var(v) => write!(f, "{v}"),
            PropFormula::Top => f.write_str("T"),
            PropFormula::Bot => f.write_str("F"),
            PropFormula::Neg(a) => write!(f, "~{a}"),
            PropFormula::And(a, b) => write!(f, "({a} & {b})"),
            PropFormula::Or(a, b) => write!(f, "({a} | {b})"),
            PropFormula::Imp(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

/// `I(φ)`: homomorphic on connectives, each propositionally atomic formula
/// becomes the variable keyed by its Gödel code.
#[allow(non_snake_case)]
pub fn translate_I(f: &ArithFormula) -> PropFormula<AtomKey> {
    translate_with(f, &|a| AtomKey(godel_encode(a)))
}

/// The translation with a caller-chosen key for atoms.
pub fn translate_with<V, K: Fn(&ArithFormula) -> V>(f: &ArithFormula, key: &K) -> PropFormula<V> {
    match f {
        ArithFormula::Neg(a) => PropFormula::neg(translate_with(a, key)),
        ArithFormula::And(a, b) => PropFormula::and(translate_with(a, key), translate_with(b, key)),
        ArithFormula::Or(a, b) => PropFormula::or(translate_with(a, key), translate_with(b, key)),
        ArithFormula::Imp(a, b) => PropFormula::imp(translate_with(a, key), translate_with(b, key)),
        _ => PropFormula::Var(key(f)),
    }
}

#[derive(Clone, Copy)]
enum Op {
    Var(usize),
    Top,
    Bot,
    Neg,
    And,
    Or,
    Imp,
}

fn compile<V: Hash + Eq>(p: &PropFormula<V>, index: &HashMap<&V, usize>, out: &mut Vec<Op>) {
    match p {
        PropFormula::Var(v) => out.push(Op::Var(index[v])),
        PropFormula::Top => out.push(Op::Top),
        PropFormula::Bot => out.push(Op::Bot),
        PropFormula::Neg(a) => {
            compile(a, index, out);
            out.push(Op::Neg);
        }
        PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
            compile(a, index, out);
            compile(b, index, out);
            out.push(match p {
                PropFormula::And(..) => Op::And,
                PropFormula::Or(..) => Op::Or,
                _ => Op::Imp,
            });
        }
    }
}

const LANES: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Evaluates the program on 64 assignments at once: lanes encode the low six
/// variables, `chunk` supplies the rest.
fn run(prog: &[Op], chunk: u64, stack: &mut Vec<u64>) -> u64 {
    stack.clear();
    for op in prog {
        let v = match *op {
            Op::Var(i) if i < 6 => LANES[i],
            Op::Var(i) => {
                if (chunk >> (i - 6)) & 1 == 1 {
                    !0
                } else {
                    0
                }
            }
            Op::Top => !0,
            Op::Bot => 0,
            Op::Neg => {
                let a = stack.pop().expect("operand");
                !a
            }
            Op::And | Op::Or | Op::Imp => {
                let b = stack.pop().expect("operand");
                let a = stack.pop().expect("operand");
                match op {
                    Op::And => a & b,
                    Op::Or => a | b,
                    _ => !a | b,
                }
            }
        };
        stack.push(v);
    }
    stack.pop().expect("result")
}

/// True iff `p` holds under every assignment.
pub fn is_tautology<V: Hash + Eq>(p: &PropFormula<V>) -> Result<bool, TautError> {
    is_tautology_with(p, Exec::default())
}

pub fn is_tautology_with<V: Hash + Eq>(p: &PropFormula<V>, exec: Exec) -> Result<bool, TautError> {
    let mut index: HashMap<&V, usize> = HashMap::new();
    p.visit_vars(&mut |v| {
        let n = index.len();
        index.entry(v).or_insert(n);
    });
    let n = index.len();
    if n > MAX_VARIABLES {
        return Err(TautError::TooManyVariables {
            count: n,
            limit: MAX_VARIABLES,
        });
    }
    let mut prog = Vec::new();
    compile(p, &index, &mut prog);
    if n <= 6 {
        let mask = if n == 6 {
            !0
        } else {
            (1u64 << (1u32 << n)) - 1
        };
        let r = run(&prog, 0, &mut Vec::new());
        return Ok(r & mask == mask);
    }
    let chunks = 1u64 << (n - 6);
    let exec = if chunks >= 64 { exec } else { Exec::Sequential };
    Ok(exec.all_range(chunks, |c| run(&prog, c, &mut Vec::with_capacity(16)) == !0))
}

/// `premises ⊨ goal`, decided per component of the shared-variable graph so
/// that unrelated premises do not enlarge the truth table.
pub fn entails<V: Hash + Eq + Clone>(
    premises: &[PropFormula<V>],
    goal: &PropFormula<V>,
) -> Result<bool, TautError> {
    let mut index: HashMap<&V, usize> = HashMap::new();
    let mut parent: Vec<usize> = Vec::new();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let all: Vec<&PropFormula<V>> = premises.iter().chain(std::iter::once(goal)).collect();
    for f in &all {
        let mut prev: Option<usize> = None;
        f.visit_vars(&mut |v| {
            let id = match index.get(v) {
                Some(&i) => i,
                None => {
                    let i = parent.len();
                    parent.push(i);
                    index.insert(v, i);
                    i
                }
            };
            if let Some(p) = prev {
                let (a, b) = (find(&mut parent, p), find(&mut parent, id));
                if a != b {
                    parent[a] = b;
                }
            }
            prev = Some(id);
        });
    }
    let root_of = |f: &PropFormula<V>, parent: &mut Vec<usize>| -> Option<usize> {
        let mut r = None;
        f.visit_vars(&mut |v| {
            if r.is_none() {
                r = Some(index[v]);
            }
        });
        r.map(|i| find(parent, i))
    };
    let goal_root = root_of(goal, &mut parent);
    let mut groups: HashMap<Option<usize>, Vec<PropFormula<V>>> = HashMap::new();
    let mut with_goal: Vec<PropFormula<V>> = Vec::new();
    for p in premises {
        let r = root_of(p, &mut parent);
        match r {
            None => {
                if !p.eval(&|_| false) {
                    return Ok(true);
                }
            }
            Some(_) if r == goal_root => with_goal.push(p.clone()),
            Some(_) => groups.entry(r).or_default().push(p.clone()),
        }
    }
    let mut keys: Vec<Option<usize>> = groups.keys().copied().collect();
    keys.sort();
    for k in keys {
        let g = groups.remove(&k).expect("group");
        if component_entails(&g, &PropFormula::Bot)? {
            return Ok(true);
        }
    }
    component_entails(&with_goal, goal)
}

/// Truth table up to [`MAX_VARIABLES`], clause learning beyond.
fn component_entails<V: Hash + Eq + Clone>(
    premises: &[PropFormula<V>],
    goal: &PropFormula<V>,
) -> Result<bool, TautError> {
    let mut seen: std::collections::HashSet<&V> = std::collections::HashSet::new();
    for f in premises.iter().chain(std::iter::once(goal)) {
        f.visit_vars(&mut |v| {
            seen.insert(v);
        });
    }
    if seen.len() > MAX_VARIABLES {
        return Ok(sat::entails_sat(premises, goal));
    }
    is_tautology(&PropFormula::imp(
        PropFormula::conj(premises.iter().cloned()),
        goal.clone(),
    ))
}

/// `premises ⊨ goal` decided by a SAT solver on the Tseitin encoding, with no
/// size limit and no component split.
pub fn entails_by_sat<V: Hash + Eq>(premises: &[PropFormula<V>], goal: &PropFormula<V>) -> bool {
    sat::entails_sat(premises, goal)
}

/// `X ⊢tc φ`: the translated premises propositionally entail the translated goal.
pub fn tc_consequence<'a, I>(premises: I, goal: &ArithFormula) -> Result<bool, TautError>
where
    I: IntoIterator<Item = &'a ArithFormula>,
{
    let ps: Vec<PropFormula<AtomKey>> = premises.into_iter().map(translate_I).collect();
    entails(&ps, &translate_I(goal))
}

/// `X ⊢tc φ` decided as a single truth table over all atoms, without splitting.
pub fn tc_consequence_direct<'a, I>(premises: I, goal: &ArithFormula) -> Result<bool, TautError>
where
    I: IntoIterator<Item = &'a ArithFormula>,
{
    let ps = PropFormula::conj(premises.into_iter().map(translate_I));
    is_tautology(&PropFormula::imp(ps, translate_I(goal)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse_arith;

    fn var(s: &str) -> PropFormula<String> {
        PropFormula::Var(s.to_string())
    }

    #[test]
    fn basic_tautologies() {
        let p = var("p");
        assert!(is_tautology(&PropFormula::imp(p.clone(), p.clone())).unwrap());
        assert!(!is_tautology(&PropFormula::and(p.clone(), PropFormula::neg(p))).unwrap());
        assert!(is_tautology::<String>(&PropFormula::Top).unwrap());
        assert!(!is_tautology::<String>(&PropFormula::Bot).unwrap());
    }

    #[test]
    fn variable_limit() {
        let big = PropFormula::conj((0..25).map(|i| var(&format!("p{i}"))));
        assert_eq!(
            is_tautology(&big),
            Err(TautError::TooManyVariables {
                count: 25,
                limit: 24
            })
        );
    }

    #[test]
    fn wide_components_fall_back_to_clause_learning() {
        // p0, p0 → p1, …, p38 → p39 ⊨ p39: one component of 40 variables.
        let mut ps = vec![var("p0")];
        for i in 0..39 {
            ps.push(PropFormula::imp(var(&format!("p{i}")), var(&format!("p{}", i + 1))));
        }
        assert!(entails(&ps, &var("p39")).unwrap());
        assert!(!entails(&ps[1..], &var("p39")).unwrap());
        assert!(entails_by_sat(&ps, &var("p39")));
    }

    #[test]
    fn clause_learning_matches_truth_tables() {
        use rand::{Rng, SeedableRng};
        fn gen(rng: &mut rand_chacha::ChaCha8Rng, depth: usize) -> PropFormula<String> {
            if depth == 0 || rng.gen_bool(0.3) {
                return match rng.gen_range(0..8) {
                    0 => PropFormula::Top,
                    1 => PropFormula::Bot,
                    n => var(&format!("p{n}")),
                };
            }
            let a = gen(rng, depth - 1);
            match rng.gen_range(0..4) {
                0 => PropFormula::neg(a),
                1 => PropFormula::and(a, gen(rng, depth - 1)),
                2 => PropFormula::or(a, gen(rng, depth - 1)),
                _ => PropFormula::imp(a, gen(rng, depth - 1)),
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let ps: Vec<_> = (0..rng.gen_range(0..4)).map(|_| gen(&mut rng, 3)).collect();
            let g = gen(&mut rng, 3);
            let table = is_tautology(&PropFormula::imp(PropFormula::conj(ps.clone()), g.clone())).unwrap();
            assert_eq!(entails_by_sat(&ps, &g), table);
        }
    }

    #[test]
    fn wide_formula_uses_chunks() {
        // Excluded middle over the 20th variable, padded with 19 others.
        let mut f = PropFormula::or(var("q"), PropFormula::neg(var("q")));
        for i in 0..19 {
            f = PropFormula::or(f, PropFormula::and(var(&format!("p{i}")), PropFormula::Bot));
        }
        assert!(is_tautology_with(&f, Exec::Sequential).unwrap());
        assert!(is_tautology_with(&f, Exec::Parallel).unwrap());
        let g = PropFormula::or(f, var("z"));
        let h = PropFormula::and(g, var("p3"));
        assert!(!is_tautology(&h).unwrap());
    }

    #[test]
    fn translation_shares_atoms() {
        let a = parse_arith("all y y = 0").unwrap();
        let f = parse_arith("~(all y y = 0) & all y y = 0").unwrap();
        let t = translate_I(&f);
        let key = AtomKey(godel_encode(&a));
        assert_eq!(
            t,
            PropFormula::and(
                PropFormula::neg(PropFormula::Var(key.clone())),
                PropFormula::Var(key)
            )
        );
        let g = parse_arith("0 = 0 -> ex x x = 0").unwrap();
        assert!(matches!(translate_I(&g), PropFormula::Imp(..)));
    }

    #[test]
    fn tc_examples() {
        let phi = parse_arith("ex x x = 0").unwrap();
        assert!(tc_consequence([&phi], &phi).unwrap());
        assert!(!tc_consequence([], &phi).unwrap());
        let a = parse_arith("0 = 1").unwrap();
        let b = parse_arith("@P(2)").unwrap();
        let ab = ArithFormula::imp(a.clone(), b.clone());
        assert!(tc_consequence([&ab, &a], &b).unwrap());
        assert!(!tc_consequence([&ab], &b).unwrap());
    }

    #[test]
    fn inconsistent_component_entails_anything() {
        let a = parse_arith("@A").unwrap();
        let na = ArithFormula::neg(a.clone());
        let goal = parse_arith("@G").unwrap();
        assert!(tc_consequence([&a, &na], &goal).unwrap());
        // The constants are propositionally atomic, so they translate to plain variables.
        assert!(!tc_consequence([&ArithFormula::Bot], &goal).unwrap());
        assert!(!tc_consequence([&a], &ArithFormula::Top).unwrap());
        assert!(tc_consequence([&ArithFormula::Bot], &ArithFormula::Bot).unwrap());
    }
}
