use std::collections::BTreeMap;

use super::decide::{candidates, check_stage, rename_slot, slot_var};
use super::partition::{is_good, tc, Partition};
use super::{ActivationContext, ActivationError, GuardedPair, TheoryStage};
use crate::formulas::{prop_atomic_subformulas, substitute_numerals, ArithFormula};
use crate::kripke::WorldId;

/// A literal witness: goal pair, side pairs and the number tuples (slot 0 is
/// the goal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteWitness {
    pub j: WorldId,
    pub phi: GuardedPair,
    pub family: Vec<GuardedPair>,
    pub b: Vec<Vec<u64>>,
}

impl BruteWitness {
    fn slots(&self) -> impl Iterator<Item = &GuardedPair> {
        std::iter::once(&self.phi).chain(&self.family)
    }
}

fn instance(pair: &GuardedPair, b: &[u64]) -> ArithFormula {
    let sigma: BTreeMap<String, u64> = pair.vars.iter().cloned().zip(b.iter().copied()).collect();
    substitute_numerals(&pair.body, &sigma)
}

fn holds(
    stage: &TheoryStage,
    phi: &GuardedPair,
    family: &[&GuardedPair],
    b: &[Vec<u64>],
) -> Result<bool, ActivationError> {
    let mut premises = stage.proved().to_vec();
    premises.extend(family.iter().zip(&b[1..]).map(|(p, bt)| instance(p, bt)));
    Ok(tc(&premises, &instance(phi, &b[0]))?)
}

/// Searches number tuples with entries at most `bound` for a witness of
/// activation of `j` at `l`, checking the membership, `θ` and tautological
/// consequence conditions directly. The returned family is shrunk greedily.
pub fn brute_force_activated(
    ctx: &ActivationContext,
    stage: &TheoryStage,
    l: u64,
    j: WorldId,
    bound: u64,
) -> Result<Option<BruteWitness>, ActivationError> {
    check_stage(stage, l)?;
    ctx.check_world(j)?;
    let d = ctx.d();
    let choices = |k: u64| -> Vec<u64> {
        if k != 0 {
            vec![k]
        } else {
            std::iter::once(0).chain(d + 1..=bound.max(d)).collect()
        }
    };
    let (side, goals) = candidates(ctx, stage, j);
    for phi in goals {
        let family: Vec<&GuardedPair> = side.iter().filter(|p| **p != phi).collect();
        let slots: Vec<&GuardedPair> = std::iter::once(&phi)
            .chain(family.iter().copied())
            .collect();
        let ranges: Vec<Vec<Vec<u64>>> = slots
            .iter()
            .map(|p| p.ks.iter().map(|&k| choices(k)).collect())
            .collect();
        let flat: Vec<&Vec<u64>> = ranges.iter().flatten().collect();
        let mut odo = vec![0usize; flat.len()];
        loop {
            let mut it = odo.iter().zip(&flat).map(|(&i, r)| r[i]);
            let b: Vec<Vec<u64>> = slots
                .iter()
                .map(|p| (0..p.ks.len()).map(|_| it.next().expect("value")).collect())
                .collect();
            if holds(stage, &phi, &family, &b)? {
                return Ok(Some(shrink(stage, j, &phi, family, b)?));
            }
            let mut pos = 0;
            loop {
                if pos == odo.len() {
                    break;
                }
                odo[pos] += 1;
                if odo[pos] < flat[pos].len() {
                    break;
                }
                odo[pos] = 0;
                pos += 1;
            }
            if pos == odo.len() {
                break;
            }
        }
    }
    Ok(None)
}

fn shrink(
    stage: &TheoryStage,
    j: WorldId,
    phi: &GuardedPair,
    mut family: Vec<&GuardedPair>,
    mut b: Vec<Vec<u64>>,
) -> Result<BruteWitness, ActivationError> {
    let mut t = 0;
    while t < family.len() {
        let mut f2 = family.clone();
        f2.remove(t);
        let mut b2 = b.clone();
        b2.remove(t + 1);
        if holds(stage, phi, &f2, &b2)? {
            family = f2;
            b = b2;
        } else {
            t += 1;
        }
    }
    Ok(BruteWitness {
        j,
        phi: phi.clone(),
        family: family.into_iter().cloned().collect(),
        b,
    })
}

/// Rebuilds the atom set from the witness's family with placeholders for the
/// tuples, groups the atoms that the witness's numbers make identical, and
/// checks that this partition is good.
pub fn claim_holds(stage: &TheoryStage, w: &BruteWitness) -> Result<bool, ActivationError> {
    let renamed: Vec<ArithFormula> = w
        .slots()
        .enumerate()
        .map(|(t, p)| rename_slot(t, p))
        .collect();
    let mut sigma = BTreeMap::new();
    for (t, bt) in w.b.iter().enumerate() {
        for (u, &v) in bt.iter().enumerate() {
            sigma.insert(slot_var(t, u), v);
        }
    }
    let goal = renamed[0].clone();
    let mut premises = stage.proved().to_vec();
    premises.extend(renamed[1..].iter().cloned());
    let atoms = prop_atomic_subformulas(premises.iter().chain(std::iter::once(&goal)));
    let images: Vec<ArithFormula> = atoms
        .iter()
        .map(|a| substitute_numerals(a, &sigma))
        .collect();
    is_good(&atoms, &Partition::from_keys(&images), &premises, &goal)
}
