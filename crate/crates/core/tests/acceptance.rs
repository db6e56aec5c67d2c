//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Every count below is exact (zero tolerated failures); runtimes are wall-clock
//! budgets measured around each criterion.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qml_core::activation::{brute_force_activated, claim_holds, decide_activated};
use qml_core::embedding::{
    build_embedding, is_homomorphic_image, preserves_free_vars, Mode, ThetaFamily, DEFAULT_LAMBDA,
};
use qml_core::formulas::{
    substitute_numerals, substitute_numerals_term, ArithFormula, ArithTerm, ModalFormula,
};
use qml_core::generate::{
    self, activation_case, consistent_oracle, distribution_scenario, propositional_case,
    random_arith_formula, random_model, random_modal, random_successor_sentence, ArithShape,
    FrameKind, ModalShape, ModelShape,
};
use qml_core::identity::{formula_identity_formula, term_identity_formula, SubstitutionProfile};
use qml_core::kripke::{forces, KripkeModel};
use qml_core::proptaut::{tc_consequence, tc_consequence_direct};
use qml_core::solovaysim::{run, Transition};
use qml_core::successor::{bound, bounded_eval, decide_successor, SuccessorFormula};
use rand::seq::SliceRandom;
use rand::Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(id: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = f();
    let took = t.elapsed();
    let in_time = budget.is_none_or(|b| took <= b);
    let ok = out.ok && in_time;
    let limit = budget.map(|b| format!(" (limit {} s)", b.as_secs())).unwrap_or_default();
    println!(
        "{} {id}. {name}: {}; {:.1} s{limit}",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64()
    );
    ok
}

fn kripke_suite() -> Outcome {
    let mut rng = generate::rng(1);
    let shape = ModalShape::default();
    let sentences: Vec<ModalFormula> = (0..50).map(|_| random_modal(&mut rng, &shape)).collect();
    let open_shape = ModalShape {
        free: vec!["x".into()],
        quantifier_depth: 1,
        ..shape.clone()
    };
    let open: Vec<ModalFormula> = (0..50).map(|_| random_modal(&mut rng, &open_shape)).collect();
    let (mut k_inst, mut barcan, mut gsl, mut fails) = (0u64, 0u64, 0u64, 0u64);
    let mut first_fail = String::new();
    let mut note = |what: &str, m: &KripkeModel, w: u32, a: &ModalFormula, fails: &mut u64| {
        *fails += 1;
        if first_fail.is_empty() {
            first_fail = format!("{what} at world {w} of {} for {a}", m.to_json_value());
        }
    };
    for n in 0..500 {
        let ms = ModelShape {
            constant_domain: n % 2 == 0,
            ..ModelShape::default()
        };
        let m = random_model(&mut rng, &ms);
        for &w in m.worlds() {
            let sub = m.generated_submodel(w).expect("world of the model");
            for i in 0..50 {
                let (a, b) = (&sentences[i], &sentences[(i + 7) % 50]);
                let (oa, ob) = (&open[i], &open[(i + 3) % 50]);
                let k = ModalFormula::imp(
                    ModalFormula::nec(ModalFormula::imp(a.clone(), b.clone())),
                    ModalFormula::imp(ModalFormula::nec(a.clone()), ModalFormula::nec(b.clone())),
                );
                let k_open = ModalFormula::forall(
                    "x",
                    ModalFormula::imp(
                        ModalFormula::nec(ModalFormula::imp(oa.clone(), ob.clone())),
                        ModalFormula::imp(ModalFormula::nec(oa.clone()), ModalFormula::nec(ob.clone())),
                    ),
                );
                let inst0 = oa.instantiate(&BTreeMap::from([("x".to_string(), 0)]));
                let ui = ModalFormula::imp(ModalFormula::forall("x", oa.clone()), inst0);
                let converse = ModalFormula::imp(
                    ModalFormula::nec(ModalFormula::forall("x", oa.clone())),
                    ModalFormula::forall("x", ModalFormula::nec(oa.clone())),
                );
                for (what, f) in [("K", &k), ("K closure", &k_open), ("instantiation", &ui), ("converse Barcan", &converse)] {
                    k_inst += 1;
                    if !forces(&m, w, f).expect("closed") {
                        note(what, &m, w, f, &mut fails);
                    }
                }
                if m.is_constant_domain() {
                    let bf = ModalFormula::imp(
                        ModalFormula::forall("x", ModalFormula::nec(oa.clone())),
                        ModalFormula::nec(ModalFormula::forall("x", oa.clone())),
                    );
                    barcan += 1;
                    if !forces(&m, w, &bf).expect("closed") {
                        note("Barcan", &m, w, &bf, &mut fails);
                    }
                }
                gsl += 1;
                if forces(&m, w, a).expect("closed") != forces(&sub, w, a).expect("closed") {
                    note("generated submodel", &m, w, a, &mut fails);
                }
            }
        }
    }
    Outcome {
        ok: fails == 0,
        detail: format!(
            "500 models x 50 sentences, {k_inst} QK instances, {barcan} Barcan instances, {gsl} submodel checks, {fails} failures{}",
            if first_fail.is_empty() { String::new() } else { format!(" (first: {first_fail})") }
        ),
    }
}

fn successor_suite() -> Outcome {
    let mut rng = generate::rng(2);
    let (mut agree, mut fails, mut true_count) = (0u64, 0u64, 0u64);
    let mut first = String::new();
    for _ in 0..10_000 {
        let rank = rng.gen_range(0..=3);
        let size = rng.gen_range(1..=10);
        let f = random_successor_sentence(&mut rng, rank, size, 3);
        let s = SuccessorFormula::new(f).expect("successor sentence");
        let decided = decide_successor(&s).expect("sentence");
        if decided == bounded_eval(&s, bound(&s)) {
            agree += 1;
            true_count += u64::from(decided);
        } else {
            fails += 1;
            if first.is_empty() {
                first = format!(" (first: {s})");
            }
        }
    }
    Outcome {
        ok: fails == 0,
        detail: format!("{agree}/10000 agree ({true_count} true), {fails} disagreements{first}"),
    }
}

fn terms_up_to_depth_two(leaves: &[ArithTerm]) -> Vec<ArithTerm> {
    let mut one: Vec<ArithTerm> = leaves.to_vec();
    for a in leaves {
        one.push(ArithTerm::succ(a.clone()));
        for b in leaves {
            one.push(ArithTerm::add(a.clone(), b.clone()));
            one.push(ArithTerm::mul(a.clone(), b.clone()));
        }
    }
    let mut two: Vec<ArithTerm> = one.clone();
    for a in &one {
        two.push(ArithTerm::succ(a.clone()));
        for b in &one {
            two.push(ArithTerm::add(a.clone(), b.clone()));
            two.push(ArithTerm::mul(a.clone(), b.clone()));
        }
    }
    let set: BTreeSet<ArithTerm> = two.into_iter().collect();
    set.into_iter().collect()
}

/// Variables in first-occurrence order must be `vars[0], vars[1], …`; this
/// skips pairs that differ only by renaming the substituted variables.
fn canonical(t: &ArithTerm, vars: &[&str]) -> bool {
    let fv = t.free_vars();
    let subst: Vec<&String> = fv.iter().filter(|x| vars.contains(&x.as_str())).collect();
    subst.iter().enumerate().all(|(i, x)| x.as_str() == vars[i])
}

fn tuples(n: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=max).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn decided_at(f: &SuccessorFormula, env: &BTreeMap<String, u64>) -> bool {
    let closed = substitute_numerals(f.formula(), env);
    decide_successor(&SuccessorFormula::new(closed).expect("successor language")).expect("closed")
}

fn used(vars: &[String], t_vars: &[String]) -> Vec<String> {
    vars.iter().filter(|x| t_vars.contains(x)).cloned().collect()
}

/// Left leaves, right leaves, left, right and shared variables.
type Sweep = (Vec<ArithTerm>, Vec<ArithTerm>, Vec<String>, Vec<String>, Vec<String>);

fn identity_suite() -> Outcome {
    let (mut pairs, mut checks, mut fails, mut identical) = (0u64, 0u64, 0u64, 0u64);
    let mut first = String::new();
    let u: Vec<String> = vec!["u1".into(), "u2".into()];
    let w: Vec<String> = vec!["w1".into(), "w2".into()];
    // Two sweeps: two substituted variables per side, and one substituted plus
    // one shared variable per side.
    let sweeps: Vec<Sweep> = vec![
        (
            vec![ArithTerm::Zero, ArithTerm::var("u1"), ArithTerm::var("u2")],
            vec![ArithTerm::Zero, ArithTerm::var("w1"), ArithTerm::var("w2")],
            u.clone(),
            w.clone(),
            Vec::new(),
        ),
        (
            vec![ArithTerm::Zero, ArithTerm::var("u1"), ArithTerm::var("v")],
            vec![ArithTerm::Zero, ArithTerm::var("w1"), ArithTerm::var("v")],
            vec!["u1".into()],
            vec!["w1".into()],
            vec!["v".into()],
        ),
    ];
    for (ll, rl, uv, wv, shared) in sweeps {
        let left: Vec<ArithTerm> = terms_up_to_depth_two(&ll)
            .into_iter()
            .filter(|t| canonical(t, &["u1", "u2"]))
            .collect();
        let right: Vec<ArithTerm> = terms_up_to_depth_two(&rl)
            .into_iter()
            .filter(|t| canonical(t, &["w1", "w2"]))
            .collect();
        for t0 in &left {
            let u_used = used(&uv, &t0.free_vars());
            let lt = tuples(u_used.len(), 4);
            for t1 in &right {
                let w_used = used(&wv, &t1.free_vars());
                let prof = SubstitutionProfile::new(u_used.clone(), w_used.clone(), shared.clone())
                    .expect("disjoint");
                let phi = term_identity_formula(t0, t1, &prof).expect("covered");
                pairs += 1;
                let rt = tuples(w_used.len(), 4);
                for a in &lt {
                    let sa: BTreeMap<String, u64> = u_used.iter().cloned().zip(a.iter().copied()).collect();
                    let i0 = substitute_numerals_term(t0, &sa);
                    for b in &rt {
                        let sb: BTreeMap<String, u64> = w_used.iter().cloned().zip(b.iter().copied()).collect();
                        let same = i0 == substitute_numerals_term(t1, &sb);
                        let mut env = sa.clone();
                        env.extend(sb);
                        checks += 1;
                        identical += u64::from(same);
                        if same != decided_at(&phi, &env) {
                            fails += 1;
                            if first.is_empty() {
                                first = format!(" (first: {t0} vs {t1} at {env:?})");
                            }
                        }
                    }
                }
            }
        }
    }
    let term_pairs = pairs;
    let mut rng = generate::rng(3);
    let mut formula_pairs = 0u64;
    for n in 0..1000 {
        let lshape = ArithShape {
            vars: vec!["u1".into(), "u2".into(), "v".into()],
            ..ArithShape::default()
        };
        let alpha = random_arith_formula(&mut rng, &lshape, 3);
        // Half the right-hand sides are renamed copies, so identities do occur.
        let beta = if n % 2 == 0 {
            let map: BTreeMap<String, String> = [("u1", "w1"), ("u2", "w2")]
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            let mut b = qml_core::formulas::rename_free_vars(&alpha, &map);
            if n % 4 == 0 {
                b = qml_core::formulas::rename_free_vars(&b, &BTreeMap::from([("w2".to_string(), "w1".to_string())]));
            }
            b
        } else {
            let rshape = ArithShape {
                vars: vec!["w1".into(), "w2".into(), "v".into()],
                ..ArithShape::default()
            };
            random_arith_formula(&mut rng, &rshape, 3)
        };
        let av = alpha.free_vars();
        let bv = beta.free_vars();
        let u_used = used(&u, &av);
        let w_used = used(&w, &bv);
        let shared: Vec<String> = if av.iter().chain(&bv).any(|x| x == "v") {
            vec!["v".into()]
        } else {
            Vec::new()
        };
        let prof = SubstitutionProfile::new(u_used.clone(), w_used.clone(), shared).expect("disjoint");
        let psi = formula_identity_formula(&alpha, &beta, &prof).expect("covered");
        formula_pairs += 1;
        for a in tuples(u_used.len(), 6) {
            let sa: BTreeMap<String, u64> = u_used.iter().cloned().zip(a).collect();
            let ia = substitute_numerals(&alpha, &sa);
            for b in tuples(w_used.len(), 6) {
                let sb: BTreeMap<String, u64> = w_used.iter().cloned().zip(b).collect();
                let same = ia == substitute_numerals(&beta, &sb);
                let mut env = sa.clone();
                env.extend(sb);
                checks += 1;
                identical += u64::from(same);
                if same != decided_at(&psi, &env) {
                    fails += 1;
                    if first.is_empty() {
                        first = format!(" (first: {alpha} vs {beta} at {env:?})");
                    }
                }
            }
        }
    }
    Outcome {
        ok: fails == 0,
        detail: format!(
            "{term_pairs} term pairs and {formula_pairs} formula pairs, {checks} instances ({identical} identical), {fails} mismatches{first}"
        ),
    }
}

fn eval_prop(f: &ArithFormula, val: &HashMap<&ArithFormula, bool>) -> bool {
    match f {
        ArithFormula::Neg(a) => !eval_prop(a, val),
        ArithFormula::And(a, b) => eval_prop(a, val) && eval_prop(b, val),
        ArithFormula::Or(a, b) => eval_prop(a, val) || eval_prop(b, val),
        ArithFormula::Imp(a, b) => !eval_prop(a, val) || eval_prop(b, val),
        atom => val[atom],
    }
}

fn atoms_of<'a>(f: &'a ArithFormula, out: &mut Vec<&'a ArithFormula>) {
    match f {
        ArithFormula::Neg(a) => atoms_of(a, out),
        ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
            atoms_of(a, out);
            atoms_of(b, out);
        }
        atom => {
            if !out.contains(&atom) {
                out.push(atom);
            }
        }
    }
}

fn truth_table_entails(premises: &[ArithFormula], goal: &ArithFormula) -> bool {
    let mut atoms = Vec::new();
    for f in premises.iter().chain(std::iter::once(goal)) {
        atoms_of(f, &mut atoms);
    }
    (0u32..1 << atoms.len()).all(|bits| {
        let val: HashMap<&ArithFormula, bool> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (*a, bits >> i & 1 == 1))
            .collect();
        !premises.iter().all(|p| eval_prop(p, &val)) || eval_prop(goal, &val)
    })
}

fn tc_suite() -> Outcome {
    let mut rng = generate::rng(4);
    let (mut cases, mut positive, mut fails) = (0u64, 0u64, 0u64);
    let mut first = String::new();
    for _ in 0..1000 {
        let atoms = rng.gen_range(1..=10);
        let (ps, goal) = propositional_case(&mut rng, atoms, 4, 3);
        cases += 1;
        let oracle = truth_table_entails(&ps, &goal);
        let split = tc_consequence(&ps, &goal).expect("small");
        let direct = tc_consequence_direct(&ps, &goal).expect("small");
        positive += u64::from(oracle);
        let mut extended = ps.clone();
        let (extra, _) = propositional_case(&mut rng, atoms, 1, 3);
        extended.extend(extra);
        let monotone = !split || tc_consequence(&extended, &goal).expect("small");
        let mut with_goal = ps.clone();
        with_goal.push(goal.clone());
        let reflexive = tc_consequence(&with_goal, &goal).expect("small");
        if split != oracle || direct != oracle || !monotone || !reflexive {
            fails += 1;
            if first.is_empty() {
                first = format!(" (first: goal {goal})");
            }
        }
    }
    Outcome {
        ok: fails == 0,
        detail: format!("{cases} cases ({positive} valid), split and direct routes vs truth table, reflexivity, monotonicity: {fails} failures{first}"),
    }
}

fn activation_suite() -> Outcome {
    let mut rng = generate::rng(5);
    let (mut pos, mut planted, mut fails, mut claims) = (0u64, 0u64, 0u64, 0u64);
    let mut first = String::new();
    for _ in 0..200 {
        let c = activation_case(&mut rng);
        planted += u64::from(c.planted);
        let decided = decide_activated(&c.ctx, &c.stage, c.l, c.j).expect("within caps");
        let b = c.stage.max_numeral() + c.ctx.d() + 2;
        let brute = brute_force_activated(&c.ctx, &c.stage, c.l, c.j, b).expect("valid case");
        pos += u64::from(decided);
        let claim = match &brute {
            Some(w) => {
                claims += 1;
                claim_holds(&c.stage, w).expect("valid witness")
            }
            None => true,
        };
        if decided != brute.is_some() || !claim {
            fails += 1;
            if first.is_empty() {
                first = format!(
                    " (first: world {} at stage {:?})",
                    c.j,
                    c.stage.proved().iter().map(|f| f.to_string()).collect::<Vec<_>>()
                );
            }
        }
    }
    Outcome {
        ok: fails == 0,
        detail: format!("200 contexts ({planted} planted, {pos} activated), {claims} witnesses checked for goodness, {fails} failures{first}"),
    }
}

fn theta_suite() -> Outcome {
    let bad: Vec<u64> = (0..=6).filter(|&d| !ThetaFamily::new(d).check().ok()).collect();
    Outcome {
        ok: bad.is_empty(),
        detail: format!("d = 0..=6, region check and decided statements agree; failing d: {bad:?}"),
    }
}

fn simulation_suite() -> Outcome {
    let mut rng = generate::rng(7);
    let (mut invariant_fail, mut faithful_fail, mut alpha_fail, mut floor_fail) = (0u64, 0u64, 0u64, 0u64);
    let (mut plain, mut injected, mut dist) = (0u64, 0u64, 0u64);
    for n in 0..100 {
        match n % 3 {
            0 | 1 => {
                let inject = n % 3 == 1;
                let horizon = rng.gen_range(10..=200);
                let c = consistent_oracle(&mut rng, horizon, inject);
                let tr = run(&c.ctx, &c.oracle, &c.xi, c.horizon).expect("valid oracle");
                let rep = tr.check(&c.oracle, &c.xi);
                if !(rep.starts_at_zero && rep.single_jump && rep.constant_after_jump && rep.one_nonzero_value) {
                    invariant_fail += 1;
                }
                match c.expected {
                    None => {
                        plain += 1;
                        let expect: BTreeSet<ArithFormula> =
                            (0..horizon).flat_map(|l| c.oracle.newly_proved(l)).collect();
                        let got: BTreeSet<ArithFormula> = tr.output_set().into_iter().cloned().collect();
                        if tr.transition.is_some() || got != expect || !rep.ok() {
                            faithful_fail += 1;
                        }
                    }
                    Some((at, i)) => {
                        injected += 1;
                        // Consistent through stage `at − 1`: no switch at or before it.
                        let floor = tr.transition.is_none_or(|t| t.l >= at);
                        let expected = if at < horizon {
                            tr.transition == Some(Transition { l: at, i })
                        } else {
                            tr.transition.is_none()
                        };
                        if !floor || !expected || !rep.ok() {
                            floor_fail += 1;
                        }
                    }
                }
            }
            _ => {
                dist += 1;
                let horizon = rng.gen_range(40..=200);
                let s = distribution_scenario(&mut rng, horizon);
                let c = &s.case;
                let tr = run(&c.ctx, &c.oracle, &c.xi, c.horizon).expect("valid oracle");
                let rep = tr.check(&c.oracle, &c.xi);
                let (at, i) = c.expected.expect("switch");
                let clean = s.distractors.iter().all(|f| !tr.outputs(f));
                if !tr.outputs(&s.alpha1) || !clean || tr.transition != Some(Transition { l: at, i }) || !rep.ok() {
                    alpha_fail += 1;
                }
            }
        }
    }
    let total = invariant_fail + faithful_fail + alpha_fail + floor_fail;
    Outcome {
        ok: total == 0,
        detail: format!(
            "100 traces ({plain} consistent, {injected} injected, {dist} distribution); failures: invariants {invariant_fail}, proof fidelity {faithful_fail}, conclusion output {alpha_fail}, stage floor {floor_fail}"
        ),
    }
}

fn embedding_suite() -> Outcome {
    let mut rng = generate::rng(8);
    let (mut built, mut fails, mut attempts) = (0u64, 0u64, 0u64);
    let mut first = String::new();
    let sshape = ModalShape::default();
    let open_shape = ModalShape {
        free: vec!["x".into(), "y".into()],
        ..ModalShape::default()
    };
    while built < 50 && attempts < 100_000 {
        attempts += 1;
        let mode = if built % 2 == 0 { Mode::ConstantDomain } else { Mode::WellFounded };
        let ms = ModelShape {
            constant_domain: mode == Mode::ConstantDomain,
            frame: if mode == Mode::WellFounded { FrameKind::Acyclic } else { FrameKind::Any },
            ..ModelShape::default()
        };
        let m = random_model(&mut rng, &ms);
        let a = random_modal(&mut rng, &sshape);
        let worlds: Vec<u32> = m.worlds().iter().copied().collect();
        let Some(&w) = worlds.choose(&mut rng) else { continue };
        if forces(&m, w, &a).expect("closed") {
            continue;
        }
        built += 1;
        let ok = match build_embedding(&m, &a, w, mode, DEFAULT_LAMBDA) {
            Err(e) => {
                if first.is_empty() {
                    first = format!(" (first: {e})");
                }
                false
            }
            Ok(b) => {
                let open = random_modal(&mut rng, &open_shape);
                let open_ok = match b.interpretation.interpret(&open) {
                    Ok(fo) => is_homomorphic_image(&b.interpretation, &open, &fo) && preserves_free_vars(&open, &fo),
                    Err(_) => true,
                };
                is_homomorphic_image(&b.interpretation, &b.sentence, &b.f_sentence)
                    && preserves_free_vars(&b.sentence, &b.f_sentence)
                    && open_ok
                    && b.root_sees_all()
                    && (mode == Mode::ConstantDomain || b.closure.is_some())
            }
        };
        if !ok {
            fails += 1;
        }
    }
    Outcome {
        ok: built == 50 && fails == 0,
        detail: format!("{built} refuted triples (alternating constant-domain and well-founded), {fails} failures{first}"),
    }
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        report(1, "Kripke semantics", secs(60), kripke_suite),
        report(2, "successor decision vs bounded evaluation", secs(120), successor_suite),
        report(3, "identity formulas", secs(300), identity_suite),
        report(4, "tautological consequence", None, tc_suite),
        report(5, "activation vs brute force", secs(600), activation_suite),
        report(6, "theta family", None, theta_suite),
        report(7, "simulation invariants", None, simulation_suite),
        report(8, "embedding structure", None, embedding_suite),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
