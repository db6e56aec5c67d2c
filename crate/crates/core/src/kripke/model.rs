use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::frame::reachable_from;
use super::KripkeError;
use crate::formulas::is_predicate_name;

/// A finite Kripke model with monotone domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: BTreeSet<u32>,
    relation: BTreeSet<(u32, u32)>,
    domains: BTreeMap<u32, BTreeSet<u64>>,
    /// Predicate name to the set of `(world, arguments)` where it holds.
    valuation: BTreeMap<String, BTreeSet<(u32, Vec<u64>)>>,
}

impl KripkeModel {
    /// Builds and validates a model.
    pub fn new(
        worlds: impl IntoIterator<Item = u32>,
        relation: impl IntoIterator<Item = (u32, u32)>,
        domains: BTreeMap<u32, BTreeSet<u64>>,
        facts: impl IntoIterator<Item = (u32, String, Vec<u64>)>,
    ) -> Result<Self, KripkeError> {
        let worlds: BTreeSet<u32> = worlds.into_iter().collect();
        if worlds.is_empty() {
            return Err(KripkeError::NoWorlds);
        }
        let relation: BTreeSet<(u32, u32)> = relation.into_iter().collect();
        for &(a, b) in &relation {
            for w in [a, b] {
                if !worlds.contains(&w) {
                    return Err(KripkeError::UnknownWorld(w));
                }
            }
        }
        for w in domains.keys() {
            if !worlds.contains(w) {
                return Err(KripkeError::UnknownWorld(*w));
            }
        }
        for &w in &worlds {
            match domains.get(&w) {
                Some(d) if !d.is_empty() => {}
                _ => return Err(KripkeError::EmptyDomain(w)),
            }
        }
        for &(a, b) in &relation {
            if !domains[&a].is_subset(&domains[&b]) {
                return Err(KripkeError::NonMonotone { from: a, to: b });
            }
        }
        let mut valuation: BTreeMap<String, BTreeSet<(u32, Vec<u64>)>> = BTreeMap::new();
        let mut arity: BTreeMap<String, usize> = BTreeMap::new();
        for (w, pred, args) in facts {
            if !worlds.contains(&w) {
                return Err(KripkeError::UnknownWorld(w));
            }
            if !is_predicate_name(&pred) {
                return Err(KripkeError::BadPredicate(pred));
            }
            if *arity.entry(pred.clone()).or_insert(args.len()) != args.len() {
                return Err(KripkeError::ArityConflict(pred));
            }
            if let Some(&c) = args.iter().find(|c| !domains[&w].contains(c)) {
                return Err(KripkeError::ValuationOutsideDomain {
                    world: w,
                    pred,
                    value: c,
                });
            }
            valuation.entry(pred).or_default().insert((w, args));
        }
        Ok(KripkeModel {
            worlds,
            relation,
            domains,
            valuation,
        })
    }

    /// A model whose every world has the domain `{0, …, d}`.
    pub fn constant_domain(
        worlds: impl IntoIterator<Item = u32>,
        relation: impl IntoIterator<Item = (u32, u32)>,
        d: u64,
        facts: impl IntoIterator<Item = (u32, String, Vec<u64>)>,
    ) -> Result<Self, KripkeError> {
        let worlds: Vec<u32> = worlds.into_iter().collect();
        let dom: BTreeSet<u64> = (0..=d).collect();
        let domains = worlds.iter().map(|&w| (w, dom.clone())).collect();
        Self::new(worlds, relation, domains, facts)
    }

    pub fn worlds(&self) -> &BTreeSet<u32> {
        &self.worlds
    }

    pub fn relation(&self) -> &BTreeSet<(u32, u32)> {
        &self.relation
    }

    pub fn domains(&self) -> &BTreeMap<u32, BTreeSet<u64>> {
        &self.domains
    }

    pub fn domain(&self, w: u32) -> Option<&BTreeSet<u64>> {
        self.domains.get(&w)
    }

    /// All facts as `(world, predicate, arguments)`, sorted by predicate then world.
    pub fn facts(&self) -> Vec<(u32, String, Vec<u64>)> {
        self.valuation
            .iter()
            .flat_map(|(p, set)| set.iter().map(move |(w, a)| (*w, p.clone(), a.clone())))
            .collect()
    }

    pub fn holds(&self, w: u32, pred: &str, args: &[u64]) -> bool {
        self.valuation
            .get(pred)
            .is_some_and(|set| set.contains(&(w, args.to_vec())))
    }

    /// Predicates with their arities.
    pub fn predicates(&self) -> BTreeMap<String, usize> {
        self.valuation
            .iter()
            .filter_map(|(p, set)| set.iter().next().map(|(_, a)| (p.clone(), a.len())))
            .collect()
    }

    pub fn successors(&self, w: u32) -> impl Iterator<Item = u32> + '_ {
        self.relation.range((w, 0)..=(w, u32::MAX)).map(|&(_, b)| b)
    }

    pub fn related(&self, a: u32, b: u32) -> bool {
        self.relation.contains(&(a, b))
    }

    pub fn is_constant_domain(&self) -> bool {
        let mut it = self.domains.values();
        let first = it.next().expect("nonempty");
        it.all(|d| d == first)
    }

    /// The largest domain element anywhere.
    pub fn max_element(&self) -> u64 {
        self.domains
            .values()
            .filter_map(|d| d.iter().next_back().copied())
            .max()
            .unwrap_or(0)
    }

    /// The least world from which every world is reachable.
    pub fn root(&self) -> Option<u32> {
        self.worlds
            .iter()
            .copied()
            .find(|&w| reachable_from(&self.relation, w).len() == self.worlds.len())
    }

    pub fn is_rooted_at(&self, w: u32) -> bool {
        self.worlds.contains(&w) && reachable_from(&self.relation, w).len() == self.worlds.len()
    }

    /// Restriction to the worlds reachable from `w` (including `w`).
    pub fn generated_submodel(&self, w: u32) -> Result<KripkeModel, KripkeError> {
        if !self.worlds.contains(&w) {
            return Err(KripkeError::UnknownWorld(w));
        }
        let keep = reachable_from(&self.relation, w);
        Ok(self.restrict(&keep))
    }

    fn restrict(&self, keep: &BTreeSet<u32>) -> KripkeModel {
        KripkeModel {
            worlds: keep.clone(),
            relation: self
                .relation
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .copied()
                .collect(),
            domains: self
                .domains
                .iter()
                .filter(|(w, _)| keep.contains(w))
                .map(|(w, d)| (*w, d.clone()))
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(p, set)| {
                    (
                        p.clone(),
                        set.iter()
                            .filter(|(w, _)| keep.contains(w))
                            .cloned()
                            .collect(),
                    )
                })
                .filter(|(_, set): &(String, BTreeSet<_>)| !set.is_empty())
                .collect(),
        }
    }

    /// Renames worlds by an injective map defined on every world.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> KripkeModel {
        KripkeModel {
            worlds: self.worlds.iter().map(|w| map[w]).collect(),
            relation: self
                .relation
                .iter()
                .map(|(a, b)| (map[a], map[b]))
                .collect(),
            domains: self
                .domains
                .iter()
                .map(|(w, d)| (map[w], d.clone()))
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(p, set)| {
                    (
                        p.clone(),
                        set.iter().map(|(w, a)| (map[w], a.clone())).collect(),
                    )
                })
                .collect(),
        }
    }

    /// Renames domain elements by an injective map defined on every element.
    pub fn relabel_domain(&self, map: &BTreeMap<u64, u64>) -> KripkeModel {
        KripkeModel {
            worlds: self.worlds.clone(),
            relation: self.relation.clone(),
            domains: self
                .domains
                .iter()
                .map(|(w, d)| (*w, d.iter().map(|c| map[c]).collect()))
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(p, set)| {
                    (
                        p.clone(),
                        set.iter()
                            .map(|(w, a)| (*w, a.iter().map(|c| map[c]).collect()))
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    /// Generated submodel at `w` renumbered `1..=n` in breadth-first order from `w`.
    /// Returns the model and the map from old to new world names.
    pub fn normalize_at(&self, w: u32) -> Result<(KripkeModel, BTreeMap<u32, u32>), KripkeError> {
        let sub = self.generated_submodel(w)?;
        let mut map = BTreeMap::new();
        let mut queue = VecDeque::from([w]);
        map.insert(w, 1u32);
        while let Some(x) = queue.pop_front() {
            for y in sub.successors(x) {
                if !map.contains_key(&y) {
                    let next = map.len() as u32 + 1;
                    map.insert(y, next);
                    queue.push_back(y);
                }
            }
        }
        Ok((sub.relabel(&map), map))
    }

    /// Adds a world 0 seeing only 1, with world 1's domain and atomic facts.
    pub fn adjoin_root(&self) -> Result<KripkeModel, KripkeError> {
        if self.worlds.contains(&0) {
            return Err(KripkeError::ZeroPresent);
        }
        if !self.is_rooted_at(1) {
            return Err(KripkeError::NotRootedAt(1));
        }
        let mut m = self.clone();
        m.worlds.insert(0);
        m.relation.insert((0, 1));
        m.domains.insert(0, self.domains[&1].clone());
        for set in m.valuation.values_mut() {
            let copies: Vec<(u32, Vec<u64>)> = set
                .iter()
                .filter(|(w, _)| *w == 1)
                .map(|(_, a)| (0, a.clone()))
                .collect();
            set.extend(copies);
        }
        Ok(m)
    }
}
