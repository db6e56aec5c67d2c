use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::ChaCha8Rng;
use crate::activation::{guard_formula, ActivationContext, GuardedPair, TheoryStage};
use crate::embedding::DEFAULT_LAMBDA;
use crate::formulas::{ArithFormula, ArithTerm};
use crate::kripke::WorldId;
use crate::solovaysim::{TheoryOracle, XiEnumeration};

/// A frame, a stage and a world to test activation on.
#[derive(Clone, Debug)]
pub struct ActivationCase {
    pub ctx: ActivationContext,
    pub stage: TheoryStage,
    pub l: u64,
    pub j: WorldId,
    /// A witness pattern was planted (the case is not necessarily activated).
    pub planted: bool,
}

/// A simulation input with its expected switch, if any.
#[derive(Clone, Debug)]
pub struct OracleCase {
    pub ctx: ActivationContext,
    pub oracle: TheoryOracle,
    pub xi: XiEnumeration,
    pub horizon: u64,
    /// `(l, i)`: the stage at which the contradiction arrives and the world it names.
    pub expected: Option<(u64, WorldId)>,
}

/// A switch followed by guarded `α0` and `α0 → α1` at every successor.
#[derive(Clone, Debug)]
pub struct DistributionScenario {
    pub case: OracleCase,
    pub alpha0: ArithFormula,
    pub alpha1: ArithFormula,
    /// `ξ` entries that must never be output.
    pub distractors: Vec<ArithFormula>,
}

fn random_frame(rng: &mut ChaCha8Rng, max_worlds: u32) -> (Vec<WorldId>, BTreeSet<(WorldId, WorldId)>) {
    let n = rng.gen_range(1..=max_worlds.max(1));
    let worlds: Vec<WorldId> = (1..=n).collect();
    let mut rel = BTreeSet::new();
    for &a in &worlds {
        for &b in &worlds {
            if a < b && rng.gen_bool(0.5) {
                rel.insert((a, b));
            }
        }
    }
    (worlds, rel)
}

fn lam(j: WorldId) -> ArithFormula {
    ArithFormula::atom(DEFAULT_LAMBDA, vec![ArithTerm::numeral(u64::from(j))])
}

fn arg(rng: &mut ChaCha8Rng, vars: &[String]) -> ArithTerm {
    if !vars.is_empty() && rng.gen_bool(0.7) {
        let v = ArithTerm::var(vars.choose(rng).expect("vars"));
        if rng.gen_bool(0.2) {
            ArithTerm::succ(v)
        } else {
            v
        }
    } else {
        ArithTerm::numeral(rng.gen_range(0..=3))
    }
}

fn pred_atom(rng: &mut ChaCha8Rng, vars: &[String]) -> ArithFormula {
    match rng.gen_range(0..6) {
        0 => ArithFormula::atom("A", Vec::new()),
        1 => ArithFormula::atom("B", Vec::new()),
        2 | 3 => ArithFormula::atom("P", vec![arg(rng, vars)]),
        _ => ArithFormula::atom("Q", vec![arg(rng, vars)]),
    }
}

fn body(rng: &mut ChaCha8Rng, vars: &[String], depth: usize) -> ArithFormula {
    if depth == 0 || rng.gen_bool(0.35) {
        return pred_atom(rng, vars);
    }
    match rng.gen_range(0..4) {
        0 => ArithFormula::neg(body(rng, vars, depth - 1)),
        1 => ArithFormula::and(body(rng, vars, depth - 1), body(rng, vars, depth - 1)),
        2 => ArithFormula::or(body(rng, vars, depth - 1), body(rng, vars, depth - 1)),
        _ => ArithFormula::imp(body(rng, vars, depth - 1), body(rng, vars, depth - 1)),
    }
}

const GUARD_VARS: [&str; 3] = ["x", "y", "z"];

/// A random guarded pair with at most `open_budget` placeholders of index 0.
fn guarded_pair(rng: &mut ChaCha8Rng, d: u64, open_budget: &mut usize, depth: usize) -> GuardedPair {
    let n = rng.gen_range(0..=2usize);
    let vars: Vec<String> = GUARD_VARS[..n].iter().map(|s| s.to_string()).collect();
    let ks = (0..n)
        .map(|_| {
            if *open_budget > 0 && rng.gen_bool(0.6) {
                *open_budget -= 1;
                0
            } else {
                rng.gen_range(1..=d)
            }
        })
        .collect();
    GuardedPair {
        body: body(rng, &vars, depth),
        vars,
        ks,
    }
}

/// Small activation instances. Roughly a third get a planted witness pattern:
/// a proved formula together with a guarded refutation, or an open side pair
/// that a large enough number makes match a pinned goal.
pub fn activation_case(rng: &mut ChaCha8Rng) -> ActivationCase {
    let (worlds, rel) = random_frame(rng, 3);
    let d = rng.gen_range(1..=2);
    let ctx = ActivationContext::new(worlds.iter().copied(), rel, d, DEFAULT_LAMBDA);
    let j = *worlds.choose(rng).expect("worlds");
    let theta = ctx.theta;
    let mut open = 3usize;
    let mut proved: Vec<ArithFormula> = Vec::new();
    let planted = rng.gen_bool(0.35);
    if planted {
        if rng.gen_bool(0.5) {
            let phi = body(rng, &[], 2);
            proved.push(phi.clone());
            proved.push(ArithFormula::imp(lam(j), ArithFormula::neg(phi)));
        } else {
            open -= 1;
            let n = d + rng.gen_range(1..=3);
            let side = GuardedPair {
                body: ArithFormula::atom("P", vec![ArithTerm::var("x")]),
                vars: vec!["x".into()],
                ks: vec![0],
            };
            proved.push(guard_formula(u64::from(j), &side, DEFAULT_LAMBDA, &theta));
            let goal = ArithFormula::neg(ArithFormula::atom("P", vec![ArithTerm::numeral(n)]));
            proved.push(ArithFormula::imp(lam(j), goal));
        }
    }
    let extra = rng.gen_range(0..=(6 - proved.len()).min(4));
    for _ in 0..extra {
        let target = if rng.gen_bool(0.7) {
            j
        } else {
            *worlds.choose(rng).expect("worlds")
        };
        let f = match rng.gen_range(0..4) {
            0 => body(rng, &[], 2),
            1 => ArithFormula::imp(lam(target), ArithFormula::neg(body(rng, &[], 2))),
            _ => {
                let p = guarded_pair(rng, d, &mut open, 2);
                guard_formula(u64::from(target), &p, DEFAULT_LAMBDA, &theta)
            }
        };
        if !proved.contains(&f) {
            proved.push(f);
        }
    }
    proved.shuffle(rng);
    let l = rng.gen_range(0..8);
    let stage = TheoryStage::new(l, proved).expect("generated stage is valid");
    ActivationCase {
        ctx,
        stage,
        l,
        j,
        planted,
    }
}

/// Truth in the fixed valuation used for consistent oracles: `A` and `P` hold
/// everywhere, `B` and `Q` nowhere.
fn true_in_model(f: &ArithFormula) -> bool {
    match f {
        ArithFormula::Atom(name, _) => name == "A" || name == "P" || name == DEFAULT_LAMBDA,
        ArithFormula::Neg(a) => !true_in_model(a),
        ArithFormula::And(a, b) => true_in_model(a) && true_in_model(b),
        ArithFormula::Or(a, b) => true_in_model(a) || true_in_model(b),
        ArithFormula::Imp(a, b) => !true_in_model(a) || true_in_model(b),
        ArithFormula::Top => true,
        _ => false,
    }
}

fn true_body(rng: &mut ChaCha8Rng, vars: &[String]) -> ArithFormula {
    let b = body(rng, vars, 2);
    if true_in_model(&b) {
        b
    } else {
        ArithFormula::neg(b)
    }
}

/// Builds cumulative stages from formulas introduced at increasing indices.
fn cumulative(intro: Vec<(u64, ArithFormula)>) -> Vec<(u64, Vec<ArithFormula>)> {
    let mut intro = intro;
    intro.sort_by_key(|(l, _)| *l);
    let mut out: Vec<(u64, Vec<ArithFormula>)> = Vec::new();
    let mut acc: Vec<ArithFormula> = Vec::new();
    for (l, f) in intro {
        if !acc.contains(&f) {
            acc.push(f);
        }
        match out.last_mut() {
            Some((last, fs)) if *last == l => *fs = acc.clone(),
            _ => out.push((l, acc.clone())),
        }
    }
    out
}

/// Stages all true in one fixed valuation, so no world is ever activated. With
/// `inject`, the contradiction `0 = 1` and its guarded refutation for a world
/// with successors arrive at a random stage.
pub fn consistent_oracle(rng: &mut ChaCha8Rng, horizon: u64, inject: bool) -> OracleCase {
    let (mut worlds, mut rel) = random_frame(rng, 3);
    if inject && rel.is_empty() {
        worlds = vec![1, 2];
        rel = [(1, 2)].into_iter().collect();
    }
    let d = rng.gen_range(1..=2);
    let ctx = ActivationContext::new(worlds.iter().copied(), rel, d, DEFAULT_LAMBDA);
    let theta = ctx.theta;
    let count = rng.gen_range(0..=8);
    let mut intro = Vec::new();
    for _ in 0..count {
        let at = rng.gen_range(0..horizon.max(1));
        let f = if rng.gen_bool(0.6) {
            let mut open = 1usize;
            let mut p = guarded_pair(rng, d, &mut open, 0);
            p.body = true_body(rng, &p.vars);
            let j = *worlds.choose(rng).expect("worlds");
            guard_formula(u64::from(j), &p, DEFAULT_LAMBDA, &theta)
        } else {
            true_body(rng, &[])
        };
        intro.push((at, f));
    }
    let listed = cumulative(intro);
    let mut oracle = TheoryOracle::new(listed).expect("cumulative by construction");
    let mut expected = None;
    if inject {
        let senders: Vec<WorldId> = worlds
            .iter()
            .copied()
            .filter(|&w| !ctx.successors(w).is_empty())
            .collect();
        let i = *senders.choose(rng).expect("a world with successors");
        let c = rng.gen_range(0..horizon.max(1));
        let bot = ArithFormula::eq(ArithTerm::Zero, ArithTerm::numeral(1));
        oracle = oracle.with_injection(c, vec![bot.clone(), ArithFormula::imp(lam(i), ArithFormula::neg(bot))]);
        expected = Some((c, i));
    }
    let xi = if rng.gen_bool(0.5) {
        XiEnumeration::Godel
    } else {
        let mut list: Vec<ArithFormula> = (0..4).map(|_| body(rng, &[], 1)).collect();
        list.push(ArithFormula::Top);
        XiEnumeration::Cycle(list)
    };
    OracleCase {
        ctx,
        oracle,
        xi,
        horizon,
        expected,
    }
}

/// World 1 sees 2 (and possibly 3); every successor has guarded `α0` and
/// `α0 → α1` from stage 0, and world 1 is activated at a later stage. After the
/// switch `α1` must become ready and be output.
pub fn distribution_scenario(rng: &mut ChaCha8Rng, horizon: u64) -> DistributionScenario {
    let three = rng.gen_bool(0.5);
    let worlds: Vec<WorldId> = if three { vec![1, 2, 3] } else { vec![1, 2] };
    let mut rel = vec![(1, 2)];
    if three {
        rel.push((1, 3));
    }
    let d = rng.gen_range(1..=2);
    let ctx = ActivationContext::new(worlds, rel.clone(), d, DEFAULT_LAMBDA);
    let theta = ctx.theta;
    let truths = [
        ArithFormula::atom("A", Vec::new()),
        ArithFormula::atom("P", vec![ArithTerm::numeral(rng.gen_range(0..=3))]),
        ArithFormula::neg(ArithFormula::atom("B", Vec::new())),
    ];
    let pick: Vec<&ArithFormula> = truths.choose_multiple(rng, 2).collect();
    let (alpha0, alpha1) = (pick[0].clone(), pick[1].clone());
    let imp = ArithFormula::imp(alpha0.clone(), alpha1.clone());
    let open = rng.gen_bool(0.5);
    let mut base = Vec::new();
    for &(_, j) in &rel {
        for b in [&alpha0, &imp] {
            base.push(ArithFormula::imp(lam(j), b.clone()));
        }
        if open {
            let p = GuardedPair {
                body: ArithFormula::atom("P", vec![ArithTerm::var("x")]),
                vars: vec!["x".into()],
                ks: vec![0],
            };
            base.push(guard_formula(u64::from(j), &p, DEFAULT_LAMBDA, &theta));
        }
    }
    let mut distractors = vec![
        ArithFormula::atom("B", Vec::new()),
        ArithFormula::atom("Q", vec![ArithTerm::Zero]),
    ];
    if !open {
        distractors.push(ArithFormula::atom("P", vec![ArithTerm::numeral(d + 4)]));
    }
    let mut list = vec![imp, alpha0.clone(), alpha1.clone()];
    list.extend(distractors.iter().cloned());
    if open {
        list.push(ArithFormula::atom("P", vec![ArithTerm::numeral(d + 2)]));
    }
    list.shuffle(rng);
    let c = rng.gen_range(1..=horizon.clamp(2, 20) - 1);
    let bot = ArithFormula::eq(ArithTerm::Zero, ArithTerm::numeral(1));
    let oracle = TheoryOracle::new(vec![(0, base)])
        .expect("single stage")
        .with_injection(c, vec![bot.clone(), ArithFormula::imp(lam(1), ArithFormula::neg(bot))]);
    DistributionScenario {
        case: OracleCase {
            ctx,
            oracle,
            xi: XiEnumeration::Cycle(list),
            horizon,
            expected: Some((c, 1)),
        },
        alpha0,
        alpha1,
        distractors,
    }
}
