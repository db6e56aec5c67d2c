use std::collections::HashMap;

use super::ActivationError;
use crate::formulas::ArithFormula;
use crate::proptaut::{entails, translate_with, PropFormula, TautError};

/// Enumeration limit on partitions of the atom set: Bell(9).
pub const PARTITION_CAP: usize = 21147;

/// A partition of atom indices `0..n` into nonempty classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// `class_of[i]` is the class index of atom `i`; classes are numbered by
    /// first occurrence.
    pub class_of: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
        }
    }

    /// The partition whose classes are the equal values of `key`.
    pub fn from_keys<K: Eq + std::hash::Hash>(keys: &[K]) -> Self {
        let mut seen: HashMap<&K, usize> = HashMap::new();
        let class_of = keys
            .iter()
            .map(|k| {
                let next = seen.len();
                *seen.entry(k).or_insert(next)
            })
            .collect();
        Partition { class_of }
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().map(|c| c + 1).max().unwrap_or(0)
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// All partitions of `0..n` that put every `together` pair in one class and
/// every `apart` pair in different classes. Fails rather than truncating once
/// more than `cap` partitions have been produced.
pub fn enumerate_partitions(
    n: usize,
    together: &[(usize, usize)],
    apart: &[(usize, usize)],
    cap: usize,
) -> Result<Vec<Partition>, ActivationError> {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in together {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut group_of = vec![usize::MAX; n];
    let mut groups: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(r);
        }
        group_of[i] = group_of[r];
    }
    let g = groups.len();
    let mut conflict = vec![vec![false; g]; g];
    for &(a, b) in apart {
        let (ga, gb) = (group_of[a], group_of[b]);
        if ga == gb {
            return Ok(Vec::new());
        }
        conflict[ga][gb] = true;
        conflict[gb][ga] = true;
    }

    struct Search<'a> {
        conflict: &'a [Vec<bool>],
        block_of: Vec<usize>,
        blocks: usize,
        out: Vec<Vec<usize>>,
        cap: usize,
    }
    impl Search<'_> {
        fn go(&mut self, k: usize) -> Result<(), ActivationError> {
            if k == self.block_of.len() {
                if self.out.len() == self.cap {
                    return Err(ActivationError::EnumerationCap { limit: self.cap });
                }
                self.out.push(self.block_of.clone());
                return Ok(());
            }
            for b in 0..=self.blocks {
                let clash =
                    b < self.blocks && (0..k).any(|m| self.block_of[m] == b && self.conflict[k][m]);
                if clash {
                    continue;
                }
                self.block_of[k] = b;
                let opened = b == self.blocks;
                if opened {
                    self.blocks += 1;
                }
                self.go(k + 1)?;
                if opened {
                    self.blocks -= 1;
                }
            }
            Ok(())
        }
    }
    let mut s = Search {
        conflict: &conflict,
        block_of: vec![0; g],
        blocks: 0,
        out: Vec::new(),
        cap,
    };
    s.go(0)?;
    Ok(s.out
        .into_iter()
        .map(|blocks| {
            let keys: Vec<usize> = group_of.iter().map(|&gi| blocks[gi]).collect();
            Partition::from_keys(&keys)
        })
        .collect())
}

/// `premises ⊢tc goal` with atoms keyed by the formulas themselves.
pub(crate) fn tc(premises: &[ArithFormula], goal: &ArithFormula) -> Result<bool, TautError> {
    let key = |a: &ArithFormula| a.clone();
    let ps: Vec<PropFormula<ArithFormula>> =
        premises.iter().map(|p| translate_with(p, &key)).collect();
    entails(&ps, &translate_with(goal, &key))
}

/// Goodness of `pi` over the atom list `atoms`: the premises entail the goal
/// once every atom is replaced by the variable of its class.
pub fn is_good(
    atoms: &[ArithFormula],
    pi: &Partition,
    premises: &[ArithFormula],
    goal: &ArithFormula,
) -> Result<bool, ActivationError> {
    if pi.len() != atoms.len() {
        return Err(ActivationError::PartitionMismatch);
    }
    let index: HashMap<&ArithFormula, usize> =
        atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let missing = std::cell::Cell::new(false);
    let key = |a: &ArithFormula| match index.get(a) {
        Some(&i) => pi.class_of[i],
        None => {
            missing.set(true);
            usize::MAX
        }
    };
    let ps: Vec<PropFormula<usize>> = premises.iter().map(|p| translate_with(p, &key)).collect();
    let g = translate_with(goal, &key);
    if missing.get() {
        return Err(ActivationError::PartitionMismatch);
    }
    Ok(entails(&ps, &g)?)
}
