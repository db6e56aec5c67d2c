use super::*;
use crate::formulas::{formulas_up_to, parse_arith, ArithFormula};

fn p(s: &str) -> ArithFormula {
    parse_arith(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn ctx() -> ActivationContext {
    ActivationContext::new([1, 2], [(1, 2)], 1, "Lam")
}

#[test]
fn empty_oracle_keeps_everything_at_zero() {
    let oracle = TheoryOracle::new(Vec::new()).unwrap();
    let tr = run(&ctx(), &oracle, &XiEnumeration::Godel, 10).unwrap();
    assert!(tr.h.iter().all(|&x| x == 0));
    assert!(tr.g.iter().all(|o| o.is_empty()));
    assert!(tr.check(&oracle, &XiEnumeration::Godel).ok());
}

#[test]
fn consistent_oracle_outputs_its_theorems() {
    let oracle = TheoryOracle::new(vec![
        (0, vec![p("@A")]),
        (3, vec![p("@A"), p("@Lam(1) -> ~@B")]),
        (7, vec![p("@A"), p("@Lam(1) -> ~@B"), p("~@B")]),
    ])
    .unwrap();
    let tr = run(&ctx(), &oracle, &XiEnumeration::Godel, 12).unwrap();
    assert!(tr.transition.is_none());
    assert_eq!(tr.g[0], vec![p("@A")]);
    assert_eq!(tr.g[3], vec![p("@Lam(1) -> ~@B")]);
    assert_eq!(tr.g[7], vec![p("~@B")]);
    assert_eq!(tr.output_set().len(), 3);
    assert!(tr.check(&oracle, &XiEnumeration::Godel).ok());
}

#[test]
fn injected_contradiction_switches_h() {
    let oracle = TheoryOracle::new(vec![(0, vec![p("@A")])])
        .unwrap()
        .with_injection(5, vec![p("0 = 1"), p("@Lam(2) -> ~0 = 1")]);
    let tr = run(&ctx(), &oracle, &XiEnumeration::Godel, 20).unwrap();
    assert_eq!(tr.transition, Some(Transition { l: 5, i: 2 }));
    assert_eq!(tr.h[5], 0);
    assert!(tr.h[6..].iter().all(|&x| x == 2));
    assert!(tr.jump_after(4));
    assert!(!tr.lambda(1));
    assert!(tr.check(&oracle, &XiEnumeration::Godel).ok());
}

#[test]
fn distribution_scenario_outputs_the_conclusion() {
    let (a0, a1) = (p("@A"), p("@B"));
    let imp = ArithFormula::imp(a0.clone(), a1.clone());
    let oracle = TheoryOracle::new(vec![(
        0,
        vec![p("@Lam(2) -> @A"), p("@Lam(2) -> (@A -> @B)")],
    )])
    .unwrap()
    .with_injection(4, vec![p("0 = 1"), p("@Lam(1) -> ~0 = 1")]);
    let xi = XiEnumeration::Cycle(vec![imp.clone(), p("@C"), a0.clone(), a1.clone()]);
    let tr = run(&ctx(), &oracle, &xi, 30).unwrap();
    assert_eq!(tr.transition, Some(Transition { l: 4, i: 1 }));
    assert!(tr.outputs(&imp) && tr.outputs(&a0) && tr.outputs(&a1));
    assert!(!tr.outputs(&p("@C")));
    let rep = tr.check(&oracle, &xi);
    assert!(rep.d2_checked > 0);
    assert!(rep.ok(), "{rep:?}");
}

#[test]
fn xi_recurs() {
    let xi = XiEnumeration::Godel;
    let tops = (0..200).filter(|&u| xi.xi(u) == ArithFormula::Top).count();
    assert!(tops > 3);
    assert_eq!(xi.xi(1234), xi.xi(1234));
    for f in formulas_up_to(40).into_iter().take(5) {
        let first = xi.next_occurrence(&f, 0, 10_000).expect("occurs");
        assert!(xi.next_occurrence(&f, first + 1, 10_000).is_some(), "{f}");
    }
}

#[test]
fn oracle_rejects_non_cumulative_stages() {
    let err = TheoryOracle::new(vec![(0, vec![p("@A")]), (2, vec![p("@B")])]).unwrap_err();
    assert_eq!(
        err,
        SimError::NotCumulative {
            earlier: 0,
            later: 2
        }
    );
}

#[test]
fn scenario_json_round_trip() {
    let text = r#"{
        "frame": {"worlds": [1, 2], "relation": [[1, 2]], "d": 1},
        "stages": [{"index": 0, "proved": ["@Lam(2) -> @A"]}],
        "inject": {"stage": 2, "formulas": ["0 = 1", "@Lam(1) -> ~0 = 1"]},
        "xi": {"cycle": ["@A"]}
    }"#;
    let sc = scenario_from_json_str(text).unwrap();
    let tr = run(&sc.ctx, &sc.oracle, &sc.xi, 6).unwrap();
    let rep = tr.check(&sc.oracle, &sc.xi);
    let v = trace_to_json(&tr, &rep);
    assert_eq!(v["transition"]["i"], 1);
    assert_eq!(v["g"][3][0], "@A");
    assert!(scenario_from_json_str("{\"stages\": []}").is_err());
}
