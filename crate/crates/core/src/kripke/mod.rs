//! Finite Kripke models for quantified modal logic.

mod forcing;
mod frame;
mod json;
mod model;

pub use forcing::{forces, forces_with, valid_in_model};
pub use frame::{
    is_conversely_well_founded, reachable_from, reflexive_transitive_closure, transitive_closure,
};
pub use model::KripkeModel;

/// World names are natural numbers.
pub type WorldId = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KripkeError {
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("world {0} is not in the model")]
    UnknownWorld(u32),
    #[error("world {0} has an empty domain")]
    EmptyDomain(u32),
    #[error("domains are not monotone along {from} R {to}")]
    NonMonotone { from: u32, to: u32 },
    #[error("fact {pred} at world {world} uses {value}, which is outside that world's domain")]
    ValuationOutsideDomain {
        world: u32,
        pred: String,
        value: u64,
    },
    #[error("`{0}` is not a predicate name")]
    BadPredicate(String),
    #[error("predicate {0} is used with different arities")]
    ArityConflict(String),
    #[error("parameter {value} is outside the domain of world {world}")]
    ParamOutsideDomain { world: u32, value: u64 },
    #[error("free variable `{0}` in a formula that must be closed")]
    FreeVariable(String),
    #[error("the model is not rooted at world {0}")]
    NotRootedAt(u32),
    #[error("world 0 is already present")]
    ZeroPresent,
    #[error("model file: {0}")]
    Json(String),
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::formulas::parse_modal;

    fn two_worlds() -> KripkeModel {
        KripkeModel::constant_domain([1, 2], [(1, 2)], 0, [(2, "P".to_string(), vec![0])]).unwrap()
    }

    #[test]
    fn top_always_forced() {
        let m = two_worlds();
        assert!(forces(&m, 1, &parse_modal("T").unwrap()).unwrap());
        assert!(forces(&m, 2, &parse_modal("T").unwrap()).unwrap());
    }

    #[test]
    fn box_example() {
        let m = two_worlds();
        assert!(forces(&m, 1, &parse_modal("box P(0)").unwrap()).unwrap());
        assert!(!forces(&m, 1, &parse_modal("P(0)").unwrap()).unwrap());
    }

    #[test]
    fn forcing_errors() {
        let m = two_worlds();
        assert_eq!(
            forces(&m, 1, &parse_modal("P(x)").unwrap()),
            Err(KripkeError::FreeVariable("x".into()))
        );
        assert_eq!(
            forces(&m, 1, &parse_modal("P(3)").unwrap()),
            Err(KripkeError::ParamOutsideDomain { world: 1, value: 3 })
        );
    }

    #[test]
    fn model_invariants() {
        let mut doms = std::collections::BTreeMap::new();
        doms.insert(1, BTreeSet::from([0, 1]));
        doms.insert(2, BTreeSet::from([0]));
        assert_eq!(
            KripkeModel::new([1, 2], [(1, 2)], doms.clone(), []),
            Err(KripkeError::NonMonotone { from: 1, to: 2 })
        );
        assert!(KripkeModel::new([1, 2], [(2, 1)], doms.clone(), []).is_ok());
        assert!(matches!(
            KripkeModel::new([1, 2], [], doms.clone(), [(2, "P".into(), vec![1])]),
            Err(KripkeError::ValuationOutsideDomain { .. })
        ));
        doms.insert(2, BTreeSet::new());
        assert_eq!(
            KripkeModel::new([1, 2], [], doms, []),
            Err(KripkeError::EmptyDomain(2))
        );
    }

    #[test]
    fn generated_submodel_examples() {
        let m = KripkeModel::constant_domain([1, 2, 3], [(1, 2)], 0, []).unwrap();
        let sub = m.generated_submodel(1).unwrap();
        assert_eq!(sub.worlds(), &BTreeSet::from([1, 2]));
        let rooted = two_worlds();
        assert_eq!(rooted.generated_submodel(1).unwrap(), rooted);
    }

    #[test]
    fn adjoin_root_examples() {
        let m = KripkeModel::constant_domain([1], [], 2, [(1, "P".into(), vec![2])]).unwrap();
        let p = m.adjoin_root().unwrap();
        assert_eq!(p.worlds(), &BTreeSet::from([0, 1]));
        assert_eq!(p.relation(), &BTreeSet::from([(0, 1)]));
        assert!(p.holds(0, "P", &[2]) && p.holds(1, "P", &[2]));
        assert_eq!(p.adjoin_root(), Err(KripkeError::ZeroPresent));
        let unrooted = KripkeModel::constant_domain([1, 2], [], 0, []).unwrap();
        assert_eq!(unrooted.adjoin_root(), Err(KripkeError::NotRootedAt(1)));
    }

    #[test]
    fn closures() {
        let r = BTreeSet::from([(0, 1), (1, 2)]);
        assert!(transitive_closure(&r).contains(&(0, 2)));
        assert!(transitive_closure(&BTreeSet::new()).is_empty());
        let w = BTreeSet::from([1, 2]);
        assert_eq!(
            reflexive_transitive_closure(&w, &BTreeSet::new()),
            BTreeSet::from([(1, 1), (2, 2)])
        );
    }

    #[test]
    fn converse_well_foundedness() {
        let w = BTreeSet::from([1, 2, 3]);
        assert!(!is_conversely_well_founded(&w, &BTreeSet::from([(1, 1)])));
        assert!(is_conversely_well_founded(
            &w,
            &BTreeSet::from([(1, 2), (2, 3)])
        ));
        assert!(!is_conversely_well_founded(
            &w,
            &BTreeSet::from([(1, 2), (2, 3), (3, 1)])
        ));
    }

    #[test]
    fn normalize_renumbers_breadth_first() {
        let m =
            KripkeModel::constant_domain([5, 7, 9, 4], [(9, 7), (9, 5), (5, 4)], 0, []).unwrap();
        let (n, map) = m.normalize_at(9).unwrap();
        assert_eq!(map[&9], 1);
        assert_eq!(map[&5], 2);
        assert_eq!(map[&7], 3);
        assert_eq!(map[&4], 4);
        assert!(n.is_rooted_at(1));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"worlds":[1,2], "relation":[[1,2]], "domains":{"1":[0,1],"2":[0,1]}, "valuation":[{"world":2,"pred":"P","args":[0]}]}"#;
        let m = KripkeModel::from_json_str(text).unwrap();
        assert!(m.is_constant_domain());
        let again = KripkeModel::from_json_value(&m.to_json_value()).unwrap();
        assert_eq!(m, again);
        let short = r#"{"worlds":[1,2], "relation":[[1,2]], "domain":[0,1], "valuation":[{"world":2,"pred":"P","args":[0]}]}"#;
        assert_eq!(KripkeModel::from_json_str(short).unwrap(), m);
        assert!(KripkeModel::from_json_str(r#"{"worlds":[1]}"#).is_err());
    }
}
