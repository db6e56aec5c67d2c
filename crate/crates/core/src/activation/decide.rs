use std::collections::{BTreeMap, BTreeSet};

use super::partition::{enumerate_partitions, is_good, Partition, PARTITION_CAP};
use super::{match_guard, ActivationContext, ActivationError, GuardedPair, TheoryStage};
use crate::exec::Exec;
use crate::formulas::{
    prop_atomic_subformulas, rename_free_vars, substitute_numerals, ArithFormula, ArithTerm,
};
use crate::identity::{formula_identity_formula, simplify, SubstitutionProfile};
use crate::kripke::WorldId;
use crate::successor::{decide_successor, SuccessorFormula};

/// A decided activation: the goal pair, the family of side premises, the good
/// partition of the atom set, and the successor sentence that realized it.
#[derive(Clone, Debug)]
pub struct ActivationWitness {
    pub j: WorldId,
    pub phi: GuardedPair,
    pub family: Vec<GuardedPair>,
    pub atoms: Vec<ArithFormula>,
    pub partition: Partition,
    pub sentence: ArithFormula,
}

/// Name of the number placeholder for variable `u` of slot `t`.
pub(super) fn slot_var(t: usize, u: usize) -> String {
    format!("_b{t}_{u}")
}

/// Renames each slot's tuple variables to slot placeholders.
pub(super) fn rename_slot(t: usize, pair: &GuardedPair) -> ArithFormula {
    let map: BTreeMap<String, String> = pair
        .vars
        .iter()
        .enumerate()
        .map(|(u, x)| (x.clone(), slot_var(t, u)))
        .collect();
    rename_free_vars(&pair.body, &map)
}

/// The guarded formulas for world `j` in `stage`, split into side-premise pairs
/// (every match) and goal pairs (matches whose body is a negation, with the
/// negation removed). Only bodies in the pool are kept.
pub(super) fn candidates(
    ctx: &ActivationContext,
    stage: &TheoryStage,
    j: WorldId,
) -> (Vec<GuardedPair>, Vec<GuardedPair>) {
    let mut side = BTreeSet::new();
    let mut goals = Vec::new();
    for f in stage.proved() {
        let Some((jj, pair)) = match_guard(f, &ctx.lambda, &ctx.theta) else {
            continue;
        };
        if jj != u64::from(j) || !stage.in_pool(&pair.body) {
            continue;
        }
        if let ArithFormula::Neg(phi) = &pair.body {
            if stage.in_pool(phi) {
                let g = GuardedPair {
                    body: (**phi).clone(),
                    vars: pair.vars.clone(),
                    ks: pair.ks.clone(),
                };
                if !goals.contains(&g) {
                    goals.push(g);
                }
            }
        }
        side.insert(pair);
    }
    (side.into_iter().collect(), goals)
}

pub(super) fn check_stage(stage: &TheoryStage, l: u64) -> Result<(), ActivationError> {
    if stage.index != l {
        return Err(ActivationError::StageMismatch {
            expected: l as i64,
            found: stage.index,
        });
    }
    Ok(())
}

/// Whether `j` is activated at stage `l` (`stage` must be the stage `l` itself).
pub fn decide_activated(
    ctx: &ActivationContext,
    stage: &TheoryStage,
    l: u64,
    j: WorldId,
) -> Result<bool, ActivationError> {
    Ok(decide_activated_with(ctx, stage, l, j, Exec::default())?.is_some())
}

/// [`decide_activated`] returning the witness found.
pub fn decide_activated_with(
    ctx: &ActivationContext,
    stage: &TheoryStage,
    l: u64,
    j: WorldId,
    exec: Exec,
) -> Result<Option<ActivationWitness>, ActivationError> {
    check_stage(stage, l)?;
    ctx.check_world(j)?;
    let (side, goals) = candidates(ctx, stage, j);
    for phi in goals {
        // Distinct pairs only; every other side pair can be included because
        // extra premises never hurt tautological consequence.
        let family: Vec<GuardedPair> = side.iter().filter(|p| **p != phi).cloned().collect();
        if let Some(w) = check_family(ctx, stage, j, &phi, &family, exec)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

enum PairRelation {
    Together,
    Apart,
    Open(ArithFormula),
}

/// `ψ_{α,β}` over the open placeholders: true exactly when `α` and `β` become the
/// same formula under an assignment of numbers to placeholders.
fn relate(a: &ArithFormula, b: &ArithFormula, open: &BTreeSet<String>) -> PairRelation {
    let fa = a.free_var_set();
    let fb = b.free_var_set();
    let oa: Vec<&String> = fa.intersection(open).collect();
    let ob: Vec<&String> = fb.intersection(open).collect();
    if oa.is_empty() && ob.is_empty() {
        return PairRelation::Apart;
    }
    let side_map = |vs: &[&String], tag: &str| -> BTreeMap<String, String> {
        vs.iter()
            .map(|x| ((*x).clone(), format!("_{tag}{x}")))
            .collect()
    };
    let (ma, mb) = (side_map(&oa, "u"), side_map(&ob, "w"));
    let shared: Vec<String> = fa
        .union(&fb)
        .filter(|x| !open.contains(*x))
        .cloned()
        .collect();
    let prof = SubstitutionProfile::new(
        ma.values().cloned().collect(),
        mb.values().cloned().collect(),
        shared,
    )
    .expect("disjoint by construction");
    let psi = formula_identity_formula(&rename_free_vars(a, &ma), &rename_free_vars(b, &mb), &prof)
        .expect("profile covers every free variable");
    let back: BTreeMap<String, String> = ma
        .into_iter()
        .chain(mb)
        .map(|(orig, renamed)| (renamed, orig))
        .collect();
    match simplify(&rename_free_vars(psi.formula(), &back)) {
        ArithFormula::Top => PairRelation::Together,
        ArithFormula::Bot => PairRelation::Apart,
        f => PairRelation::Open(f),
    }
}

fn check_family(
    ctx: &ActivationContext,
    stage: &TheoryStage,
    j: WorldId,
    phi: &GuardedPair,
    family: &[GuardedPair],
    exec: Exec,
) -> Result<Option<ActivationWitness>, ActivationError> {
    // Placeholders guarded by θ_k with k ≠ 0 can only be k; fix them now.
    let mut pinned = BTreeMap::new();
    let mut open = BTreeSet::new();
    let slots: Vec<&GuardedPair> = std::iter::once(phi).chain(family).collect();
    for (t, pair) in slots.iter().enumerate() {
        for (u, &k) in pair.ks.iter().enumerate() {
            if k == 0 {
                open.insert(slot_var(t, u));
            } else {
                pinned.insert(slot_var(t, u), k);
            }
        }
    }
    let inst: Vec<ArithFormula> = slots
        .iter()
        .enumerate()
        .map(|(t, p)| substitute_numerals(&rename_slot(t, p), &pinned))
        .collect();
    let goal = inst[0].clone();
    let mut premises: Vec<ArithFormula> = stage.proved().to_vec();
    premises.extend(inst[1..].iter().cloned());
    let atoms = prop_atomic_subformulas(premises.iter().chain(std::iter::once(&goal)));

    let mut together = Vec::new();
    let mut apart = Vec::new();
    let mut open_pairs = Vec::new();
    for a in 0..atoms.len() {
        for b in a + 1..atoms.len() {
            match relate(&atoms[a], &atoms[b], &open) {
                PairRelation::Together => together.push((a, b)),
                PairRelation::Apart => apart.push((a, b)),
                PairRelation::Open(f) => open_pairs.push((a, b, f)),
            }
        }
    }
    let partitions = enumerate_partitions(atoms.len(), &together, &apart, PARTITION_CAP)?;

    let theta_part: Vec<ArithFormula> = open
        .iter()
        .enumerate()
        .map(|(i, b)| {
            ctx.theta
                .theta_successor(0, &ArithTerm::var(b), &format!("_g{i}"))
        })
        .collect();
    let found = exec.find_first(&partitions, |pi| {
        match is_good(&atoms, pi, &premises, &goal) {
            Err(e) => return Some(Err(e)),
            Ok(false) => return None,
            Ok(true) => {}
        }
        let mut parts = theta_part.clone();
        for (a, b, f) in &open_pairs {
            parts.push(if pi.same(*a, *b) {
                f.clone()
            } else {
                ArithFormula::neg(f.clone())
            });
        }
        let mut sentence = ArithFormula::conj(parts);
        for b in open.iter().rev() {
            sentence = ArithFormula::exists(b, sentence);
        }
        let sentence = simplify(&sentence);
        let sf = SuccessorFormula::new(sentence.clone()).expect("successor language");
        if decide_successor(&sf).expect("closed") {
            Some(Ok(ActivationWitness {
                j,
                phi: phi.clone(),
                family: family.to_vec(),
                atoms: atoms.clone(),
                partition: pi.clone(),
                sentence,
            }))
        } else {
            None
        }
    });
    found.transpose()
}
