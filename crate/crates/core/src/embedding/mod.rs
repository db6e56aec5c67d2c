//! Arithmetical interpretations of Kripke models.
//!
//! Two constructions are supported. In [`Mode::ConstantDomain`] the model is
//! constant-domain with `D = {0, …, d}`, elements are named by [`ThetaFamily`]
//! and boxes go to `Pr_g`. In [`Mode::WellFounded`] the model must be conversely
//! well-founded; a root 0 is adjoined, elements are named by opaque atoms
//! `@Th{k}(x)` and boxes go to `Pr_tau`, with `τ(v) ≡ α(v) ∨ γ(v)`.
//!
//! The bundle records the provability facts the construction relies on as
//! [`Obligation`]s. They are statements about PA and are not checked here.

mod theta;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

pub use theta::{ThetaFamily, ThetaReport};

use crate::formulas::{
    rename_free_vars, substitute_numerals, ArithFormula, ArithTerm, ModalArg, ModalFormula,
};
use crate::kripke::{
    forces, is_conversely_well_founded, transitive_closure, KripkeError, KripkeModel,
};

pub const DEFAULT_LAMBDA: &str = "Lam";
pub const PR_G: &str = "Pr_g";
pub const PR_TAU: &str = "Pr_tau";
pub const DEFAULT_ALPHA: &str = "Alpha";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Kripke(#[from] KripkeError),
    #[error("predicate `{0}` has no interpretation")]
    Uncovered(String),
    #[error("predicate `{name}` is interpreted with {expected} arguments but used with {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("the sentence is forced at world {0}; nothing to embed")]
    ForcedAtWorld(u32),
    #[error("the constant-domain construction needs a constant-domain model")]
    NotConstantDomain,
    #[error("the well-founded construction needs a conversely well-founded frame")]
    NotConverselyWellFounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Constant domains, `θ_k` explicit, boxes read as `Pr_g`.
    ConstantDomain,
    /// Conversely well-founded frames, adjoined root, boxes read as `Pr_tau`.
    WellFounded,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::ConstantDomain => "s4",
            Mode::WellFounded => "s3",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        match s {
            "s4" => Some(Mode::ConstantDomain),
            "s3" => Some(Mode::WellFounded),
            _ => None,
        }
    }
}

/// `f(P(x0, …, x_{m-1}))` with its distinguished argument variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateInterp {
    pub params: Vec<String>,
    pub formula: ArithFormula,
}

/// An arithmetical interpretation: a predicate table plus the provability atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub pr_name: String,
    pub table: BTreeMap<String, PredicateInterp>,
}

pub fn param_names(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("x{i}")).collect()
}

/// The empty disjunction for `P(x⃗)`: `⊥` without arguments, otherwise
/// `⋀ ¬(x_u = x_u)`, which is refutable and keeps the free variables.
pub fn empty_extension(params: &[String]) -> ArithFormula {
    if params.is_empty() {
        return ArithFormula::Bot;
    }
    ArithFormula::conj(
        params
            .iter()
            .map(|x| ArithFormula::neg(ArithFormula::Eq(ArithTerm::var(x), ArithTerm::var(x)))),
    )
}

impl Interpretation {
    pub fn interpret(&self, a: &ModalFormula) -> Result<ArithFormula, EmbeddingError> {
        use ModalFormula::*;
        Ok(match a {
            Top => ArithFormula::Top,
            Bot => ArithFormula::Bot,
            Pred(p, args) => self.atom(p, args)?,
            Neg(x) => ArithFormula::neg(self.interpret(x)?),
            And(x, y) => ArithFormula::and(self.interpret(x)?, self.interpret(y)?),
            Or(x, y) => ArithFormula::or(self.interpret(x)?, self.interpret(y)?),
            Imp(x, y) => ArithFormula::imp(self.interpret(x)?, self.interpret(y)?),
            Forall(x, b) => ArithFormula::forall(x, self.interpret(b)?),
            Exists(x, b) => ArithFormula::exists(x, self.interpret(b)?),
            Nec(b) => ArithFormula::atom(
                &self.pr_name,
                vec![ArithTerm::quote(self.interpret(b)?, b.free_vars())],
            ),
        })
    }

    fn atom(&self, p: &str, args: &[ModalArg]) -> Result<ArithFormula, EmbeddingError> {
        let entry = self
            .table
            .get(p)
            .ok_or_else(|| EmbeddingError::Uncovered(p.to_string()))?;
        if entry.params.len() != args.len() {
            return Err(EmbeddingError::Arity {
                name: p.to_string(),
                expected: entry.params.len(),
                found: args.len(),
            });
        }
        let mut consts = BTreeMap::new();
        let mut renames = BTreeMap::new();
        for (x, arg) in entry.params.iter().zip(args) {
            match arg {
                ModalArg::Const(c) => {
                    consts.insert(x.clone(), *c);
                }
                ModalArg::Var(y) => {
                    renames.insert(x.clone(), y.clone());
                }
            }
        }
        let f = substitute_numerals(&entry.formula, &consts);
        Ok(rename_free_vars(&f, &renames))
    }
}

/// True iff `fa` is built from `a` by the homomorphism clauses, with atoms and
/// boxes matching what `interp` produces.
pub fn is_homomorphic_image(interp: &Interpretation, a: &ModalFormula, fa: &ArithFormula) -> bool {
    use ModalFormula as M;
    match (a, fa) {
        (M::Top, ArithFormula::Top) | (M::Bot, ArithFormula::Bot) => true,
        (M::Pred(p, args), _) => interp.atom(p, args).map(|g| &g == fa).unwrap_or(false),
        (M::Neg(x), ArithFormula::Neg(y)) => is_homomorphic_image(interp, x, y),
        (M::And(x0, x1), ArithFormula::And(y0, y1))
        | (M::Or(x0, x1), ArithFormula::Or(y0, y1))
        | (M::Imp(x0, x1), ArithFormula::Imp(y0, y1)) => {
            is_homomorphic_image(interp, x0, y0) && is_homomorphic_image(interp, x1, y1)
        }
        (M::Forall(x, b), ArithFormula::Forall(y, c))
        | (M::Exists(x, b), ArithFormula::Exists(y, c)) => {
            x == y && is_homomorphic_image(interp, b, c)
        }
        (M::Nec(b), ArithFormula::Atom(pr, args)) if *pr == interp.pr_name && args.len() == 1 => {
            match &args[0] {
                ArithTerm::Quote(body, dotted) => {
                    *dotted == b.free_vars() && is_homomorphic_image(interp, b, body)
                }
                _ => false,
            }
        }
        _ => false,
    }
}

/// `f(A)` and `A` have the same free variables.
pub fn preserves_free_vars(a: &ModalFormula, fa: &ArithFormula) -> bool {
    let x: BTreeSet<String> = a.free_vars().into_iter().collect();
    x == fa.free_var_set()
}

fn lam(name: &str, i: u64) -> ArithFormula {
    ArithFormula::atom(name, vec![ArithTerm::numeral(i)])
}

fn all_tuples(dom: &[u64], m: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                dom.iter().map(move |&k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}

/// Builds the table `f(P(x⃗)) = ⋁ (λ(ī) ∧ θ_{k0}(x0) ∧ …)` over the worlds in
/// `worlds` and the tuples from `dom_of(i)` with `i ⊩ P(k⃗)`.
fn build_table<D, T>(
    m: &KripkeModel,
    signature: &BTreeMap<String, usize>,
    worlds: &[u32],
    dom_of: D,
    theta: T,
    lambda: &str,
    pr_name: &str,
) -> Interpretation
where
    D: Fn(u32) -> Vec<u64>,
    T: Fn(u64, &str) -> ArithFormula,
{
    let mut table = BTreeMap::new();
    for (p, &arity) in signature {
        let params = param_names(arity);
        let mut disjuncts = Vec::new();
        for &i in worlds {
            for k in all_tuples(&dom_of(i), arity) {
                if m.holds(i, p, &k) {
                    let mut parts = vec![lam(lambda, i as u64)];
                    parts.extend(k.iter().zip(&params).map(|(&k, x)| theta(k, x)));
                    disjuncts.push(ArithFormula::conj(parts));
                }
            }
        }
        let formula = if disjuncts.is_empty() {
            empty_extension(&params)
        } else {
            ArithFormula::disj(disjuncts)
        };
        table.insert(p.clone(), PredicateInterp { params, formula });
    }
    Interpretation {
        pr_name: pr_name.to_string(),
        table,
    }
}

/// `Con^0 = (0 = 0)`, `Con^(n+1) = ¬Pr(⌜¬Con^n⌝)`.
pub fn con_sequence(n: usize, pr_name: &str) -> ArithFormula {
    let mut c = ArithFormula::Eq(ArithTerm::Zero, ArithTerm::Zero);
    for _ in 0..n {
        c = ArithFormula::neg(ArithFormula::atom(
            pr_name,
            vec![ArithTerm::quote(ArithFormula::neg(c), vec![])],
        ));
    }
    c
}

fn pair_disjunction(pairs: &BTreeSet<(u32, u32)>, y: &str, z: &str) -> ArithFormula {
    ArithFormula::disj(pairs.iter().map(|&(i, j)| {
        ArithFormula::and(
            ArithFormula::Eq(ArithTerm::var(y), ArithTerm::numeral(i as u64)),
            ArithFormula::Eq(ArithTerm::var(z), ArithTerm::numeral(j as u64)),
        )
    }))
}

/// `γ(v) ≡ ∃y∃z (λ(y) ∧ y ≠ 0 ∧ [y (R⁺)ᵗ z ∧ ¬ y R⁺ z] ∧ v = ⌜¬λ(ż)⌝)` and
/// `τ(v) ≡ α(v) ∨ γ(v)`. The bracketed relation is written out as a disjunction
/// over the pairs of `(R⁺)ᵗ` that are not in `R⁺`.
pub fn gamma_tau(plus: &KripkeModel, lambda: &str, alpha: &str) -> (ArithFormula, ArithFormula) {
    let closure = transitive_closure(plus.relation());
    let only_transitive: BTreeSet<(u32, u32)> =
        closure.difference(plus.relation()).copied().collect();
    let body = ArithFormula::conj([
        ArithFormula::atom(lambda, vec![ArithTerm::var("y")]),
        ArithFormula::neg(ArithFormula::Eq(ArithTerm::var("y"), ArithTerm::Zero)),
        pair_disjunction(&only_transitive, "y", "z"),
        ArithFormula::Eq(
            ArithTerm::var("v"),
            ArithTerm::quote(
                ArithFormula::neg(ArithFormula::atom(lambda, vec![ArithTerm::var("z")])),
                vec!["z".to_string()],
            ),
        ),
    ]);
    let gamma = ArithFormula::exists("y", ArithFormula::exists("z", body));
    let tau = ArithFormula::or(
        ArithFormula::atom(alpha, vec![ArithTerm::var("v")]),
        gamma.clone(),
    );
    (gamma, tau)
}

/// A provability fact the construction depends on, stated but not verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub id: String,
    pub statement: String,
}

fn ob(id: impl Into<String>, statement: impl Into<String>) -> Obligation {
    Obligation {
        id: id.into(),
        statement: statement.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaSpec {
    Explicit(ThetaFamily),
    /// `θ_k(x)` is the atom `@Th{k}(x)`.
    Opaque(Vec<u64>),
}

pub fn opaque_theta_name(k: u64) -> String {
    format!("Th{k}")
}

/// Everything produced for one `(model, sentence, world)`.
#[derive(Clone, Debug)]
pub struct EmbeddingBundle {
    pub mode: Mode,
    /// The normalized model: the generated submodel at the chosen world, with
    /// worlds `1..=n` and the chosen world as 1.
    pub model: KripkeModel,
    pub world_map: BTreeMap<u32, u32>,
    pub domain_map: BTreeMap<u64, u64>,
    /// The sentence with its constants renamed along `domain_map`.
    pub sentence: ModalFormula,
    pub lambda: String,
    pub theta: ThetaSpec,
    pub interpretation: Interpretation,
    pub f_sentence: ArithFormula,
    /// Well-founded mode only: the model with root 0 adjoined and `(R⁺)ᵗ`.
    pub plus_model: Option<KripkeModel>,
    pub closure: Option<BTreeSet<(u32, u32)>>,
    pub gamma: Option<ArithFormula>,
    pub tau: Option<ArithFormula>,
    pub obligations: Vec<Obligation>,
}

fn rename_constants(a: &ModalFormula, map: &BTreeMap<u64, u64>) -> ModalFormula {
    use ModalFormula::*;
    let r = |x: &ModalFormula| Box::new(rename_constants(x, map));
    match a {
        Top | Bot => a.clone(),
        Pred(p, args) => Pred(
            p.clone(),
            args.iter()
                .map(|x| match x {
                    ModalArg::Const(c) => ModalArg::Const(map.get(c).copied().unwrap_or(*c)),
                    v => v.clone(),
                })
                .collect(),
        ),
        Neg(x) => Neg(r(x)),
        And(x, y) => And(r(x), r(y)),
        Or(x, y) => Or(r(x), r(y)),
        Imp(x, y) => Imp(r(x), r(y)),
        Forall(x, b) => Forall(x.clone(), r(b)),
        Exists(x, b) => Exists(x.clone(), r(b)),
        Nec(b) => Nec(r(b)),
    }
}

/// Renames domain elements to `0, 1, …`, listing `first` before the rest.
fn domain_renaming(m: &KripkeModel, first: &BTreeSet<u64>) -> BTreeMap<u64, u64> {
    let all: BTreeSet<u64> = m.domains().values().flatten().copied().collect();
    first
        .iter()
        .chain(all.iter().filter(|x| !first.contains(x)))
        .enumerate()
        .map(|(i, &x)| (x, i as u64))
        .collect()
}

fn signature(m: &KripkeModel, a: &ModalFormula) -> Result<BTreeMap<String, usize>, EmbeddingError> {
    let mut sig = m.predicates();
    for (p, n) in a.signature() {
        match sig.get(&p) {
            Some(&k) if k != n => {
                return Err(EmbeddingError::Arity {
                    name: p,
                    expected: k,
                    found: n,
                })
            }
            _ => {
                sig.insert(p, n);
            }
        }
    }
    Ok(sig)
}

/// Builds the interpretation refuting `a` at world `w` of `m`.
pub fn build_embedding(
    m: &KripkeModel,
    a: &ModalFormula,
    w: u32,
    mode: Mode,
    lambda: &str,
) -> Result<EmbeddingBundle, EmbeddingError> {
    if forces(m, w, a)? {
        return Err(EmbeddingError::ForcedAtWorld(w));
    }
    let (norm, world_map) = m.normalize_at(w)?;
    match mode {
        Mode::ConstantDomain => {
            if !norm.is_constant_domain() {
                return Err(EmbeddingError::NotConstantDomain);
            }
            let domain_map = domain_renaming(&norm, &BTreeSet::new());
            let model = norm.relabel_domain(&domain_map);
            let sentence = rename_constants(a, &domain_map);
            debug_assert!(!forces(&model, 1, &sentence)?);
            let d = model.max_element();
            let theta = ThetaFamily::new(d);
            let worlds: Vec<u32> = model.worlds().iter().copied().collect();
            let dom: Vec<u64> = (0..=d).collect();
            let interpretation = build_table(
                &model,
                &signature(&model, &sentence)?,
                &worlds,
                |_| dom.clone(),
                |k, x| theta.theta_var(k, x),
                lambda,
                PR_G,
            );
            let f_sentence = interpretation.interpret(&sentence)?;
            let obligations = constant_domain_obligations(&model, &sentence, &f_sentence, lambda);
            Ok(EmbeddingBundle {
                mode,
                model,
                world_map,
                domain_map,
                sentence,
                lambda: lambda.to_string(),
                theta: ThetaSpec::Explicit(theta),
                interpretation,
                f_sentence,
                plus_model: None,
                closure: None,
                gamma: None,
                tau: None,
                obligations,
            })
        }
        Mode::WellFounded => {
            if !is_conversely_well_founded(norm.worlds(), norm.relation()) {
                return Err(EmbeddingError::NotConverselyWellFounded);
            }
            // 0 must belong to D_0 = D_1.
            let domain_map = domain_renaming(&norm, norm.domain(1).expect("root"));
            let model = norm.relabel_domain(&domain_map);
            let sentence = rename_constants(a, &domain_map);
            let plus = model.adjoin_root()?;
            let closure = transitive_closure(plus.relation());
            let worlds: Vec<u32> = model.worlds().iter().copied().collect();
            let interpretation = build_table(
                &plus,
                &signature(&model, &sentence)?,
                &worlds,
                |i| plus.domain(i).expect("world").iter().copied().collect(),
                |k, x| ArithFormula::atom(&opaque_theta_name(k), vec![ArithTerm::var(x)]),
                lambda,
                PR_TAU,
            );
            let f_sentence = interpretation.interpret(&sentence)?;
            let (gamma, tau) = gamma_tau(&plus, lambda, DEFAULT_ALPHA);
            let all_dom: Vec<u64> = plus
                .domains()
                .values()
                .flatten()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let obligations =
                well_founded_obligations(&plus, &closure, &f_sentence, lambda, &all_dom);
            Ok(EmbeddingBundle {
                mode,
                model,
                world_map,
                domain_map,
                sentence,
                lambda: lambda.to_string(),
                theta: ThetaSpec::Opaque(all_dom),
                interpretation,
                f_sentence,
                plus_model: Some(plus),
                closure: Some(closure),
                gamma: Some(gamma),
                tau: Some(tau),
                obligations,
            })
        }
    }
}

fn constant_domain_obligations(
    m: &KripkeModel,
    a: &ModalFormula,
    fa: &ArithFormula,
    lambda: &str,
) -> Vec<Obligation> {
    let mut out = vec![
        ob(
            "truth-lemma.forced",
            format!(
                "for every i ∈ W, k⃗ ∈ D and subformula B(x⃗) of {a}: if i ⊩ B(k⃗) then \
                 PA ⊢ @{lambda}(i) ∧ θ_k⃗(x⃗) → f(B(x⃗))"
            ),
        ),
        ob(
            "truth-lemma.refuted",
            format!(
                "for every i ∈ W, k⃗ ∈ D and subformula B(x⃗) of {a}: if i ⊮ B(k⃗) then \
                 PA ⊢ @{lambda}(i) ∧ θ_k⃗(x⃗) → ¬f(B(x⃗))"
            ),
        ),
        ob(
            "root-refutes-sentence",
            format!("PA ⊢ {} -> ~({fa})", lam(lambda, 1)),
        ),
    ];
    for &i in m.worlds() {
        out.push(ob(
            format!("lambda-unrefuted.{i}"),
            format!("T ⊬ {}", ArithFormula::neg(lam(lambda, i as u64))),
        ));
    }
    out.push(ob(
        "pr-g-equivalence",
        "PA + Con_T ⊢ Pr_g(x) ↔ Prov_T(x)".to_string(),
    ));
    out
}

fn well_founded_obligations(
    plus: &KripkeModel,
    closure: &BTreeSet<(u32, u32)>,
    fa: &ArithFormula,
    lambda: &str,
    dom: &[u64],
) -> Vec<Obligation> {
    let pr = |f: ArithFormula| ArithFormula::atom(PR_TAU, vec![ArithTerm::quote(f, vec![])]);
    let l = |i: u32| lam(lambda, i as u64);
    let mut out = Vec::new();
    for &(i, j) in closure {
        if i != 0 && !plus.related(i, j) {
            out.push(ob(
                format!("tau.strict-successor-refuted.{i}.{j}"),
                format!(
                    "PA ⊢ {}",
                    ArithFormula::imp(l(i), pr(ArithFormula::neg(l(j))))
                ),
            ));
        }
    }
    for &i in plus.worlds() {
        if i == 0 {
            continue;
        }
        let succ = ArithFormula::disj(plus.successors(i).map(l));
        out.push(ob(
            format!("tau.successors-provable.{i}"),
            format!("PA ⊢ {}", ArithFormula::imp(l(i), pr(succ))),
        ));
    }
    for &(i, j) in plus.relation() {
        out.push(ob(
            format!("tau.successor-consistent.{i}.{j}"),
            format!(
                "PA ⊢ {}",
                ArithFormula::imp(l(i), ArithFormula::neg(pr(ArithFormula::neg(l(j)))))
            ),
        ));
    }
    out.push(ob("tau.root-true", format!("ℕ ⊨ {}", l(0))));
    out.push(ob(
        "tau.weakly-represents",
        "for every sentence φ: φ ∈ T ⟺ ℕ ⊨ τ(⌜φ⌝) ⟺ PA ⊢ τ(⌜φ⌝)".to_string(),
    ));
    let th = |k: u64, x: &str| ArithFormula::atom(&opaque_theta_name(k), vec![ArithTerm::var(x)]);
    for &i in plus.worlds() {
        for &k in plus.domain(i).expect("world") {
            out.push(ob(
                format!("theta.exists.{i}.{k}"),
                format!(
                    "PA ⊢ {}",
                    ArithFormula::imp(l(i), ArithFormula::exists("x", th(k, "x")))
                ),
            ));
        }
        out.push(ob(
            format!("theta.covers.{i}"),
            format!(
                "PA ⊢ {}",
                ArithFormula::imp(
                    l(i),
                    ArithFormula::forall("x", ArithFormula::disj(dom.iter().map(|&k| th(k, "x"))))
                )
            ),
        ));
    }
    for &k in dom {
        for &m in dom {
            if k < m {
                out.push(ob(
                    format!("theta.disjoint.{k}.{m}"),
                    format!(
                        "PA ⊢ {}",
                        ArithFormula::forall(
                            "x",
                            ArithFormula::neg(ArithFormula::and(th(k, "x"), th(m, "x")))
                        )
                    ),
                ));
            }
        }
    }
    out.push(ob(
        "root-refutes-sentence",
        format!("PA ⊢ {} -> ~({fa})", l(1)),
    ));
    out
}

impl EmbeddingBundle {
    pub fn to_json(&self) -> Value {
        let table: serde_json::Map<String, Value> = self
            .interpretation
            .table
            .iter()
            .map(|(p, e)| {
                (
                    p.clone(),
                    json!({ "params": e.params, "formula": e.formula.to_string() }),
                )
            })
            .collect();
        let theta = match &self.theta {
            ThetaSpec::Explicit(t) => {
                let entries: serde_json::Map<String, Value> = t
                    .domain()
                    .map(|k| {
                        (
                            k.to_string(),
                            Value::String(t.theta_var(k, "x").to_string()),
                        )
                    })
                    .collect();
                json!({ "kind": "explicit", "d": t.d, "formulas": entries })
            }
            ThetaSpec::Opaque(dom) => {
                let entries: serde_json::Map<String, Value> = dom
                    .iter()
                    .map(|&k| {
                        (
                            k.to_string(),
                            Value::String(format!("@{}(x)", opaque_theta_name(k))),
                        )
                    })
                    .collect();
                json!({ "kind": "opaque", "formulas": entries })
            }
        };
        let map_u32: serde_json::Map<String, Value> = self
            .world_map
            .iter()
            .map(|(a, b)| (a.to_string(), json!(b)))
            .collect();
        let map_u64: serde_json::Map<String, Value> = self
            .domain_map
            .iter()
            .map(|(a, b)| (a.to_string(), json!(b)))
            .collect();
        let mut out = json!({
            "mode": self.mode.name(),
            "model": self.model.to_json_value(),
            "world_map": map_u32,
            "domain_map": map_u64,
            "sentence": self.sentence.to_string(),
            "lambda": self.lambda,
            "provability": self.interpretation.pr_name,
            "theta": theta,
            "interpretation": table,
            "f_sentence": self.f_sentence.to_string(),
            "obligations": self.obligations.iter().map(|o| json!({"id": o.id, "statement": o.statement})).collect::<Vec<_>>(),
        });
        if let (Some(plus), Some(closure), Some(g), Some(t)) =
            (&self.plus_model, &self.closure, &self.gamma, &self.tau)
        {
            out["plus_model"] = plus.to_json_value();
            out["closure"] = json!(closure.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>());
            out["gamma"] = json!(g.to_string());
            out["tau"] = json!(t.to_string());
        }
        out
    }

    /// Well-founded mode: `0 (R⁺)ᵗ i` for every original world `i`.
    pub fn root_sees_all(&self) -> bool {
        match &self.closure {
            Some(c) => self.model.worlds().iter().all(|&i| c.contains(&(0, i))),
            None => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::parse_modal;

    #[test]
    fn theta_shapes() {
        let t = ThetaFamily::new(2);
        assert_eq!(t.theta_var(1, "x").to_string(), "x = 1");
        assert_eq!(t.theta_var(0, "x").to_string(), "x = 0 | 2 < x");
        assert_eq!(
            ThetaFamily::new(0).theta_var(0, "x").to_string(),
            "x = 0 | 0 < x"
        );
        for k in 0..=2 {
            let f = t.theta_var(k, "y");
            assert_eq!(t.recognize(&f), Some((k, "y")));
        }
        assert_eq!(
            t.recognize(&ArithFormula::Eq(
                ArithTerm::var("y"),
                ArithTerm::numeral(3)
            )),
            None
        );
    }

    #[test]
    fn theta_lemma_small() {
        for d in 0..=6 {
            assert!(ThetaFamily::new(d).check().ok(), "d = {d}");
        }
    }

    #[test]
    fn con_sequence_unfolds() {
        assert_eq!(con_sequence(0, "Pr").to_string(), "0 = 0");
        assert_eq!(con_sequence(1, "Pr").to_string(), "~@Pr(#(~0 = 0))");
        let c2 = con_sequence(2, "Pr").to_string();
        assert_eq!(c2.matches("@Pr").count(), 2);
    }

    #[test]
    fn single_world_single_fact() {
        let m = KripkeModel::constant_domain([1], [], 0, [(1, "P".to_string(), vec![0])]).unwrap();
        let b = build_embedding(
            &m,
            &parse_modal("~P(0)").unwrap(),
            1,
            Mode::ConstantDomain,
            "Lam",
        )
        .unwrap();
        let fp = b
            .interpretation
            .interpret(&parse_modal("P(x)").unwrap())
            .unwrap();
        assert_eq!(fp.to_string(), "@Lam(1) & (x = 0 | 0 < x)");
    }

    #[test]
    fn empty_valuation_gives_refutable_atom() {
        let m = KripkeModel::constant_domain([1], [], 0, []).unwrap();
        let b = build_embedding(
            &m,
            &parse_modal("P(0)").unwrap(),
            1,
            Mode::ConstantDomain,
            "Lam",
        )
        .unwrap();
        assert_eq!(b.f_sentence.to_string(), "~0 = 0");
        assert!(!b.obligations.is_empty());
    }

    #[test]
    fn box_goes_to_pr_g() {
        let m = KripkeModel::constant_domain([1, 2], [(1, 2)], 0, []).unwrap();
        let b = build_embedding(
            &m,
            &parse_modal("box P(0)").unwrap(),
            1,
            Mode::ConstantDomain,
            "Lam",
        )
        .unwrap();
        assert_eq!(b.f_sentence.to_string(), "@Pr_g(#(~0 = 0))");
    }

    #[test]
    fn gamma_relation_pairs() {
        let two = KripkeModel::constant_domain([1], [], 0, [])
            .unwrap()
            .adjoin_root()
            .unwrap();
        let (g, tau) = gamma_tau(&two, "Lam", "Alpha");
        assert!(g.to_string().contains("F"), "{g}");
        assert!(matches!(tau, ArithFormula::Or(..)));
        let three = KripkeModel::constant_domain([1, 2], [(1, 2)], 0, [])
            .unwrap()
            .adjoin_root()
            .unwrap();
        let (g, _) = gamma_tau(&three, "Lam", "Alpha");
        let s = g.to_string();
        assert!(s.contains("y = 0 & z = 2"), "{s}");
        assert!(!s.contains("z = 1"), "{s}");
    }

    #[test]
    fn well_founded_mode_checks_frame() {
        let cyc = KripkeModel::constant_domain([1, 2], [(1, 2), (2, 1)], 0, []).unwrap();
        assert_eq!(
            build_embedding(
                &cyc,
                &parse_modal("P(0)").unwrap(),
                1,
                Mode::WellFounded,
                "Lam"
            )
            .unwrap_err(),
            EmbeddingError::NotConverselyWellFounded
        );
        let ok = KripkeModel::constant_domain([1, 2], [(1, 2)], 0, []).unwrap();
        let b = build_embedding(
            &ok,
            &parse_modal("box P(0)").unwrap(),
            1,
            Mode::WellFounded,
            "Lam",
        )
        .unwrap();
        assert!(b.root_sees_all());
        assert_eq!(b.f_sentence.to_string(), "@Pr_tau(#(~0 = 0))");
    }

    #[test]
    fn forced_sentence_is_rejected() {
        let m = KripkeModel::constant_domain([1], [], 0, [(1, "P".to_string(), vec![0])]).unwrap();
        assert_eq!(
            build_embedding(
                &m,
                &parse_modal("P(0)").unwrap(),
                1,
                Mode::ConstantDomain,
                "Lam"
            )
            .unwrap_err(),
            EmbeddingError::ForcedAtWorld(1)
        );
    }

    #[test]
    fn renaming_coherence() {
        let m =
            KripkeModel::constant_domain([1, 2], [(1, 2)], 1, [(2, "R".to_string(), vec![0, 1])])
                .unwrap();
        let b = build_embedding(
            &m,
            &parse_modal("R(0, 1)").unwrap(),
            1,
            Mode::ConstantDomain,
            "Lam",
        )
        .unwrap();
        let fx = b
            .interpretation
            .interpret(&parse_modal("R(x0, x1)").unwrap())
            .unwrap();
        let fy = b
            .interpretation
            .interpret(&parse_modal("R(a, b)").unwrap())
            .unwrap();
        let map = BTreeMap::from([
            ("x0".to_string(), "a".to_string()),
            ("x1".to_string(), "b".to_string()),
        ]);
        assert_eq!(rename_free_vars(&fx, &map), fy);
    }
}
