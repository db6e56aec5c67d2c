use std::collections::{BTreeMap, BTreeSet};

/// Worlds reachable from `w` in zero or more steps.
pub fn reachable_from(relation: &BTreeSet<(u32, u32)>, w: u32) -> BTreeSet<u32> {
    let mut seen = BTreeSet::from([w]);
    let mut stack = vec![w];
    while let Some(x) = stack.pop() {
        for &(_, y) in relation.range((x, 0)..=(x, u32::MAX)) {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// Least transitive relation containing `relation`.
pub fn transitive_closure(relation: &BTreeSet<(u32, u32)>) -> BTreeSet<(u32, u32)> {
    let nodes: BTreeSet<u32> = relation.iter().map(|p| p.0).collect();
    let mut out = BTreeSet::new();
    for &a in &nodes {
        // Worlds reachable from `a` in one or more steps.
        let mut seen = BTreeSet::new();
        let mut stack: Vec<u32> = relation
            .range((a, 0)..=(a, u32::MAX))
            .map(|p| p.1)
            .collect();
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                stack.extend(relation.range((x, 0)..=(x, u32::MAX)).map(|p| p.1));
            }
        }
        out.extend(seen.into_iter().map(|b| (a, b)));
    }
    out
}

/// Least reflexive (on `worlds`) and transitive relation containing `relation`.
pub fn reflexive_transitive_closure(
    worlds: &BTreeSet<u32>,
    relation: &BTreeSet<(u32, u32)>,
) -> BTreeSet<(u32, u32)> {
    let mut out = transitive_closure(relation);
    out.extend(worlds.iter().map(|&w| (w, w)));
    out
}

/// A finite frame is conversely well-founded iff no cycle (loops included) exists.
pub fn is_conversely_well_founded(worlds: &BTreeSet<u32>, relation: &BTreeSet<(u32, u32)>) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Open,
        Done,
    }
    let mut mark: BTreeMap<u32, Mark> = worlds.iter().map(|&w| (w, Mark::Fresh)).collect();
    for &(a, b) in relation {
        mark.entry(a).or_insert(Mark::Fresh);
        mark.entry(b).or_insert(Mark::Fresh);
    }
    let nodes: Vec<u32> = mark.keys().copied().collect();
    for start in nodes {
        if mark[&start] != Mark::Fresh {
            continue;
        }
        // Iterative DFS: stack of (node, successor list, next index).
        let succ = |x: u32| -> Vec<u32> {
            relation
                .range((x, 0)..=(x, u32::MAX))
                .map(|p| p.1)
                .collect()
        };
        let mut stack = vec![(start, succ(start), 0usize)];
        mark.insert(start, Mark::Open);
        while let Some(top) = stack.last_mut() {
            if top.2 < top.1.len() {
                let y = top.1[top.2];
                top.2 += 1;
                match mark[&y] {
                    Mark::Open => return false,
                    Mark::Fresh => {
                        mark.insert(y, Mark::Open);
                        stack.push((y, succ(y), 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark.insert(top.0, Mark::Done);
                stack.pop();
            }
        }
    }
    true
}
