use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use super::ChaCha8Rng;
use crate::formulas::{ModalArg, ModalFormula};
use crate::kripke::{reachable_from, KripkeModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameKind {
    /// Any relation, cycles and reflexive points included.
    Any,
    /// Edges only go from smaller to larger worlds.
    Acyclic,
}

#[derive(Clone, Debug)]
pub struct ModelShape {
    pub max_worlds: u32,
    /// Domains are subsets of `0..max_domain`.
    pub max_domain: u64,
    pub constant_domain: bool,
    pub frame: FrameKind,
    pub predicates: Vec<(String, usize)>,
    /// Probability that a given atomic fact holds.
    pub density: f64,
}

impl Default for ModelShape {
    fn default() -> Self {
        ModelShape {
            max_worlds: 4,
            max_domain: 3,
            constant_domain: false,
            frame: FrameKind::Any,
            predicates: vec![("P".into(), 1), ("Q".into(), 0), ("R".into(), 2)],
            density: 0.4,
        }
    }
}

fn tuples(arity: usize, dom: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                dom.iter().map(move |&c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// Worlds `1..=n`; every domain contains 0 and domains grow along the relation.
pub fn random_model(rng: &mut ChaCha8Rng, shape: &ModelShape) -> KripkeModel {
    let n = rng.gen_range(1..=shape.max_worlds.max(1));
    let worlds: Vec<u32> = (1..=n).collect();
    let mut relation = BTreeSet::new();
    for &a in &worlds {
        for &b in &worlds {
            let allowed = match shape.frame {
                FrameKind::Any => true,
                FrameKind::Acyclic => a < b,
            };
            if allowed && rng.gen_bool(0.4) {
                relation.insert((a, b));
            }
        }
    }
    let full: Vec<u64> = (0..shape.max_domain.max(1)).collect();
    let domains: BTreeMap<u32, BTreeSet<u64>> = if shape.constant_domain {
        let k = rng.gen_range(1..=full.len());
        let d: BTreeSet<u64> = full[..k].iter().copied().collect();
        worlds.iter().map(|&w| (w, d.clone())).collect()
    } else {
        let base: BTreeMap<u32, BTreeSet<u64>> = worlds
            .iter()
            .map(|&w| {
                let mut d: BTreeSet<u64> = full.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                d.insert(0);
                (w, d)
            })
            .collect();
        // Each world gets everything present anywhere below it.
        worlds
            .iter()
            .map(|&w| {
                let mut d = BTreeSet::new();
                for &v in &worlds {
                    if reachable_from(&relation, v).contains(&w) {
                        d.extend(base[&v].iter().copied());
                    }
                }
                (w, d)
            })
            .collect()
    };
    let mut facts = Vec::new();
    for &w in &worlds {
        let dom: Vec<u64> = domains[&w].iter().copied().collect();
        for (p, arity) in &shape.predicates {
            for t in tuples(*arity, &dom) {
                if rng.gen_bool(shape.density) {
                    facts.push((w, p.clone(), t));
                }
            }
        }
    }
    KripkeModel::new(worlds, relation, domains, facts).expect("generated model is valid")
}

#[derive(Clone, Debug)]
pub struct ModalShape {
    pub modal_depth: usize,
    pub quantifier_depth: usize,
    pub size: usize,
    pub predicates: Vec<(String, usize)>,
    /// Constants used as arguments (should lie in every domain).
    pub constants: Vec<u64>,
    /// Variables that may occur free.
    pub free: Vec<String>,
}

impl Default for ModalShape {
    fn default() -> Self {
        ModalShape {
            modal_depth: 3,
            quantifier_depth: 2,
            size: 6,
            predicates: vec![("P".into(), 1), ("Q".into(), 0), ("R".into(), 2)],
            constants: vec![0],
            free: Vec::new(),
        }
    }
}

const BOUND_NAMES: [&str; 3] = ["x", "y", "z"];

fn gen_modal(
    rng: &mut ChaCha8Rng,
    shape: &ModalShape,
    size: usize,
    md: usize,
    qd: usize,
    scope: &mut Vec<String>,
) -> ModalFormula {
    if size == 0 || rng.gen_bool(0.2) {
        let (p, arity) = shape.predicates.choose(rng).expect("predicates").clone();
        let args = (0..arity)
            .map(|_| {
                let use_var = !scope.is_empty() && (shape.constants.is_empty() || rng.gen_bool(0.7));
                if use_var {
                    ModalArg::Var(scope.choose(rng).expect("scope").clone())
                } else {
                    ModalArg::Const(*shape.constants.choose(rng).unwrap_or(&0))
                }
            })
            .collect();
        return ModalFormula::pred(&p, args);
    }
    let choice = rng.gen_range(0..7);
    match choice {
        0 => ModalFormula::neg(gen_modal(rng, shape, size - 1, md, qd, scope)),
        1..=3 => {
            let l = rng.gen_range(0..size);
            let a = gen_modal(rng, shape, l, md, qd, scope);
            let b = gen_modal(rng, shape, size - 1 - l, md, qd, scope);
            match choice {
                1 => ModalFormula::and(a, b),
                2 => ModalFormula::or(a, b),
                _ => ModalFormula::imp(a, b),
            }
        }
        4 | 5 if qd > 0 => {
            let x = BOUND_NAMES[(shape.quantifier_depth - qd) % BOUND_NAMES.len()].to_string();
            scope.push(x.clone());
            let body = gen_modal(rng, shape, size - 1, md, qd - 1, scope);
            scope.pop();
            if choice == 4 {
                ModalFormula::forall(&x, body)
            } else {
                ModalFormula::exists(&x, body)
            }
        }
        _ if md > 0 => ModalFormula::nec(gen_modal(rng, shape, size - 1, md - 1, qd, scope)),
        _ => ModalFormula::neg(gen_modal(rng, shape, size - 1, md, qd, scope)),
    }
}

/// A formula within the shape's depth bounds whose free variables are among
/// `shape.free`.
pub fn random_modal(rng: &mut ChaCha8Rng, shape: &ModalShape) -> ModalFormula {
    let mut scope = shape.free.clone();
    gen_modal(rng, shape, shape.size, shape.modal_depth, shape.quantifier_depth, &mut scope)
}
