use std::collections::BTreeMap;

use proptest::prelude::*;
use qml_core::activation::{
    brute_force_activated, claim_holds, decide_activated, decide_activated_with, ReadinessEngine,
    TheoryStage,
};
use qml_core::formulas::{
    godel_decode, godel_encode, parse_arith, parse_modal, substitute_numerals, substitute_numerals_term,
    ArithFormula, ArithTerm,
};
use qml_core::generate::{
    self, activation_case, propositional_case, random_arith_formula, random_model, random_modal,
    random_successor_sentence, random_term, ArithShape, ModalShape, ModelShape,
};
use qml_core::identity::{formula_identity_formula, term_identity_formula, SubstitutionProfile};
use qml_core::kripke::forces;
use qml_core::proptaut::{tc_consequence, tc_consequence_direct};
use qml_core::successor::{bound, bounded_eval, decide_successor, SuccessorFormula};
use qml_core::Exec;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn decided(f: &SuccessorFormula, env: &BTreeMap<String, u64>) -> bool {
    let closed = substitute_numerals(f.formula(), env);
    decide_successor(&SuccessorFormula::new(closed).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn activation_agrees_with_brute_force(seed in any::<u64>()) {
        let c = activation_case(&mut generate::rng(seed));
        let d = decide_activated(&c.ctx, &c.stage, c.l, c.j).unwrap();
        let b = brute_force_activated(&c.ctx, &c.stage, c.l, c.j, c.stage.max_numeral() + c.ctx.d() + 2).unwrap();
        prop_assert_eq!(d, b.is_some());
        if let Some(w) = b {
            prop_assert!(claim_holds(&c.stage, &w).unwrap());
        }
    }

    #[test]
    fn activation_is_monotone_in_the_stage(seed in any::<u64>(), more in any::<u64>()) {
        let c = activation_case(&mut generate::rng(seed));
        let extra = activation_case(&mut generate::rng(more));
        let mut proved = c.stage.proved().to_vec();
        proved.extend(extra.stage.proved().iter().cloned());
        let later = TheoryStage::new(c.l + 1, proved).unwrap();
        if decide_activated(&c.ctx, &c.stage, c.l, c.j).unwrap() {
            prop_assert!(decide_activated(&c.ctx, &later, c.l + 1, c.j).unwrap());
        }
    }

    #[test]
    fn sequential_and_parallel_activation_agree(seed in any::<u64>()) {
        let c = activation_case(&mut generate::rng(seed));
        let s = decide_activated_with(&c.ctx, &c.stage, c.l, c.j, Exec::Sequential).unwrap();
        let p = decide_activated_with(&c.ctx, &c.stage, c.l, c.j, Exec::Parallel).unwrap();
        prop_assert_eq!(s.is_some(), p.is_some());
    }

    #[test]
    fn readiness_is_monotone_in_u(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let c = activation_case(&mut rng);
        let Some(&i) = c.ctx.worlds.iter().next() else { return Ok(()) };
        let stage = TheoryStage::new(c.l, c.stage.proved().to_vec()).unwrap();
        let mut eng = ReadinessEngine::new(&c.ctx, stage, c.l + 1, i).unwrap();
        let pool: Vec<ArithFormula> = c.stage.pool_formulas().into_iter().filter(|f| f.is_sentence()).collect();
        for _ in 0..3 {
            let xi = if pool.is_empty() || rng.gen_bool(0.3) {
                ArithFormula::atom("P", vec![ArithTerm::numeral(rng.gen_range(0..6))])
            } else {
                pool[rng.gen_range(0..pool.len())].clone()
            };
            let mut was = false;
            for u in 0..8 {
                let now = eng.ready(&xi, u).unwrap();
                prop_assert!(!was || now, "{} ready at {} but not at {}", xi, u - 1, u);
                was = now;
            }
        }
    }

    #[test]
    fn successor_decision_matches_bounded_evaluation(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let rank = rng.gen_range(0..=3);
        let f = random_successor_sentence(&mut rng, rank, 12, 4);
        let s = SuccessorFormula::new(f).unwrap();
        prop_assert_eq!(decide_successor(&s).unwrap(), bounded_eval(&s, bound(&s)));
    }

    #[test]
    fn tautological_consequence_routes_agree(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let (ps, goal) = propositional_case(&mut rng, 12, 5, 3);
        let split = tc_consequence(&ps, &goal).unwrap();
        prop_assert_eq!(split, tc_consequence_direct(&ps, &goal).unwrap());
        let mut refl = ps.clone();
        refl.push(goal.clone());
        prop_assert!(tc_consequence(&refl, &goal).unwrap());
        if split {
            let (extra, _) = propositional_case(&mut rng, 12, 2, 2);
            refl.extend(extra);
            prop_assert!(tc_consequence(&refl, &goal).unwrap());
        }
    }

    #[test]
    fn generated_submodel_preserves_forcing(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let m = random_model(&mut rng, &ModelShape::default());
        let shape = ModalShape { modal_depth: 4, ..ModalShape::default() };
        let a = random_modal(&mut rng, &shape);
        for &w in m.worlds() {
            let sub = m.generated_submodel(w).unwrap();
            prop_assert_eq!(forces(&m, w, &a).unwrap(), forces(&sub, w, &a).unwrap());
        }
    }

    #[test]
    fn printing_and_coding_round_trip(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let f = random_arith_formula(&mut rng, &ArithShape::default(), 3);
        prop_assert_eq!(&parse_arith(&f.to_string()).unwrap(), &f);
        prop_assert_eq!(&godel_decode(&godel_encode(&f)).unwrap(), &f);
        let a = random_modal(&mut rng, &ModalShape::default());
        prop_assert_eq!(parse_modal(&a.to_string()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn term_identity_matches_syntax(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let left = ArithShape { vars: vec!["u".into(), "v".into()], ..ArithShape::default() };
        let right = ArithShape { vars: vec!["w".into(), "v".into()], ..ArithShape::default() };
        let t0 = random_term(&mut rng, &left, 2);
        let t1 = if rng.gen_bool(0.5) {
            qml_core::formulas::rename_term(&t0, &BTreeMap::from([("u".to_string(), "w".to_string())]))
        } else {
            random_term(&mut rng, &right, 2)
        };
        let has = |t: &ArithTerm, x: &str| t.free_vars().iter().any(|y| y == x);
        let uv: Vec<String> = if has(&t0, "u") { vec!["u".into()] } else { Vec::new() };
        let wv: Vec<String> = if has(&t1, "w") { vec!["w".into()] } else { Vec::new() };
        let prof = SubstitutionProfile::new(uv.clone(), wv.clone(), vec!["v".into()]).unwrap();
        let phi = term_identity_formula(&t0, &t1, &prof).unwrap();
        for a in 0..=5u64 {
            for b in 0..=5u64 {
                let sa: BTreeMap<String, u64> = uv.iter().map(|x| (x.clone(), a)).collect();
                let sb: BTreeMap<String, u64> = wv.iter().map(|x| (x.clone(), b)).collect();
                let same = substitute_numerals_term(&t0, &sa) == substitute_numerals_term(&t1, &sb);
                let mut env = sa.clone();
                env.extend(sb);
                prop_assert_eq!(same, decided(&phi, &env), "{} vs {} at {:?}", t0, t1, env);
            }
        }
    }

    #[test]
    fn formula_identity_matches_syntax(seed in any::<u64>()) {
        let mut rng = generate::rng(seed);
        let shape = ArithShape { vars: vec!["u".into(), "v".into()], ..ArithShape::default() };
        let alpha = random_arith_formula(&mut rng, &shape, 3);
        let beta = if rng.gen_bool(0.6) {
            qml_core::formulas::rename_free_vars(&alpha, &BTreeMap::from([("u".to_string(), "w".to_string())]))
        } else {
            let shape = ArithShape { vars: vec!["w".into(), "v".into()], ..ArithShape::default() };
            random_arith_formula(&mut rng, &shape, 3)
        };
        let has = |f: &ArithFormula, x: &str| f.free_vars().iter().any(|y| y == x);
        let uv: Vec<String> = if has(&alpha, "u") { vec!["u".into()] } else { Vec::new() };
        let wv: Vec<String> = if has(&beta, "w") { vec!["w".into()] } else { Vec::new() };
        let prof = SubstitutionProfile::new(uv.clone(), wv.clone(), vec!["v".into()]).unwrap();
        let psi = formula_identity_formula(&alpha, &beta, &prof).unwrap();
        for a in 0..=6u64 {
            for b in 0..=6u64 {
                let sa: BTreeMap<String, u64> = uv.iter().map(|x| (x.clone(), a)).collect();
                let sb: BTreeMap<String, u64> = wv.iter().map(|x| (x.clone(), b)).collect();
                let same = substitute_numerals(&alpha, &sa) == substitute_numerals(&beta, &sb);
                let mut env = sa.clone();
                env.extend(sb);
                prop_assert_eq!(same, decided(&psi, &env));
            }
        }
    }
}
