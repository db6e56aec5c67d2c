//! `qml`: command-line front end for the qml-core workbench.
//!
//! Exit status: 0 on success, 1 when a decision comes out negative (documented
//! per subcommand), 2 on bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qml_core::activation::{brute_force_activated, claim_holds, decide_activated_with};
use qml_core::embedding::{build_embedding, Mode, DEFAULT_LAMBDA};
use qml_core::formulas::{parse_arith, parse_modal_with, parse_term, ArithFormula};
use qml_core::identity::{formula_identity_formula, simplify, term_identity_formula, SubstitutionProfile};
use qml_core::kripke::{forces, KripkeModel};
use qml_core::proptaut::tc_consequence;
use qml_core::solovaysim::{run, scenario_from_json_str, trace_to_json};
use qml_core::successor::{decide_successor, eliminate_quantifiers, SuccessorFormula};
use qml_core::Exec;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "qml", version, about = "Quantified modal logic and arithmetic workbench")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// More detail in human output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    /// Run batch loops sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Model-check a closed modal formula at a world. Prints true/false; exit 0 either way.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: u32,
        #[arg(long)]
        formula: String,
    },
    /// Build the arithmetical interpretation refuting a sentence at a world.
    Embed {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        sentence: String,
        #[arg(long)]
        world: u32,
        /// `s4` (constant domains) or `s3` (conversely well-founded frames).
        #[arg(long, default_value = "s4")]
        mode: String,
        #[arg(long, default_value = DEFAULT_LAMBDA)]
        lambda: String,
        /// Write the bundle here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a sentence of (N, 0, s). Prints true/false; exit 1 when false.
    DecideSucc {
        sentence: String,
        /// Also print the quantifier-free equivalent.
        #[arg(long)]
        show_qe: bool,
    },
    /// Tautological consequence. Prints yes/no; exit 1 on no.
    Tc {
        /// One formula per line; blank lines and lines starting with `#` are skipped.
        #[arg(long)]
        premises: PathBuf,
        #[arg(long)]
        goal: String,
    },
    /// The successor formula expressing identity of numeral instances.
    IdentityFormula {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_delimiter = ',', default_value = "")]
        uvars: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        wvars: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "")]
        shared: Vec<String>,
        /// Print the simplified equivalent.
        #[arg(long)]
        simplify: bool,
    },
    /// Whether a world is activated at a stage. Prints true/false; exit 1 when false.
    Activated {
        /// Scenario JSON: frame or model, lambda, stages, optional pool and injection.
        #[arg(long)]
        context: PathBuf,
        #[arg(long)]
        world: u32,
        #[arg(long)]
        stage: u64,
        /// Also search tuples up to this bound and compare.
        #[arg(long)]
        brute: Option<u64>,
    },
    /// Run the staged simulator. Exit 1 when a trace check fails.
    Simulate {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long)]
        horizon: u64,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

/// An input problem, reported with exit status 2.
struct InputError(String);

macro_rules! input {
    ($($t:tt)*) => { InputError(format!($($t)*)) };
}

struct Done {
    human: String,
    json: Value,
    positive: bool,
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| input!("{}: {e}", path.display()))
}

fn load_model(path: &Path) -> Result<KripkeModel, InputError> {
    KripkeModel::from_json_str(&read(path)?).map_err(|e| input!("{}: {e}", path.display()))
}

fn arith(text: &str, what: &str) -> Result<ArithFormula, InputError> {
    parse_arith(text).map_err(|e| input!("{what}: {e}"))
}

fn truth(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn emit(format: Format, out: &Done) {
    match format {
        Format::Human => println!("{}", out.human),
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
    }
}

fn check(model: &Path, world: u32, formula: &str) -> Result<Done, InputError> {
    let m = load_model(model)?;
    let mut sig = m.predicates();
    let a = parse_modal_with(formula, &mut sig).map_err(|e| input!("--formula: {e}"))?;
    let v = forces(&m, world, &a).map_err(|e| input!("{e}"))?;
    Ok(Done {
        human: truth(v).into(),
        json: json!({"world": world, "formula": a.to_string(), "forced": v}),
        positive: true,
    })
}

fn embed(
    model: &Path,
    sentence: &str,
    world: u32,
    mode: &str,
    lambda: &str,
    out: Option<&Path>,
    verbose: u8,
) -> Result<Done, InputError> {
    let m = load_model(model)?;
    let mode = Mode::from_name(mode).ok_or_else(|| input!("--mode: expected s4 or s3, found `{mode}`"))?;
    let mut sig = m.predicates();
    let a = parse_modal_with(sentence, &mut sig).map_err(|e| input!("--sentence: {e}"))?;
    let b = build_embedding(&m, &a, world, mode, lambda).map_err(|e| input!("{e}"))?;
    let bundle = b.to_json();
    let mut human = format!("f(A) = {}\n{} obligations", b.f_sentence, b.obligations.len());
    if verbose > 0 {
        for o in &b.obligations {
            human.push_str(&format!("\n  {}: {}", o.id, o.statement));
        }
    }
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&bundle).expect("serializable") + "\n";
        fs::write(path, text).map_err(|e| input!("{}: {e}", path.display()))?;
        human.push_str(&format!("\nbundle written to {}", path.display()));
    }
    Ok(Done {
        human,
        json: bundle,
        positive: true,
    })
}

fn decide_succ(sentence: &str, show_qe: bool) -> Result<Done, InputError> {
    let f = arith(sentence, "sentence")?;
    let s = SuccessorFormula::new(f).map_err(|e| input!("sentence: {e}"))?;
    let v = decide_successor(&s).map_err(|e| input!("sentence: {e}"))?;
    let mut human = truth(v).to_string();
    let mut j = json!({"sentence": s.to_string(), "value": v});
    if show_qe {
        let qf = eliminate_quantifiers(&s);
        human.push_str(&format!("\n{qf}"));
        j["quantifier_free"] = json!(qf.to_string());
    }
    Ok(Done {
        human,
        json: j,
        positive: v,
    })
}

fn tc(premises: &Path, goal: &str) -> Result<Done, InputError> {
    let text = read(premises)?;
    let mut ps = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        ps.push(parse_arith(line).map_err(|e| input!("{}:{}: {e}", premises.display(), n + 1))?);
    }
    let g = arith(goal, "--goal")?;
    let v = tc_consequence(&ps, &g).map_err(|e| input!("{e}"))?;
    Ok(Done {
        human: if v { "yes" } else { "no" }.into(),
        json: json!({"premises": ps.len(), "goal": g.to_string(), "consequence": v}),
        positive: v,
    })
}

fn nonempty(v: &[String]) -> Vec<String> {
    v.iter().filter(|x| !x.is_empty()).cloned().collect()
}

fn identity(
    left: &str,
    right: &str,
    uvars: &[String],
    wvars: &[String],
    shared: &[String],
    simp: bool,
) -> Result<Done, InputError> {
    let prof = SubstitutionProfile::new(nonempty(uvars), nonempty(wvars), nonempty(shared))
        .map_err(|e| input!("{e}"))?;
    let (kind, f) = match (parse_term(left), parse_term(right)) {
        (Ok(t0), Ok(t1)) => ("term", term_identity_formula(&t0, &t1, &prof)),
        _ => {
            let a = arith(left, "--left")?;
            let b = arith(right, "--right")?;
            ("formula", formula_identity_formula(&a, &b, &prof))
        }
    };
    let f = f.map_err(|e| input!("{e}"))?.into_inner();
    let f = if simp { simplify(&f) } else { f };
    Ok(Done {
        human: f.to_string(),
        json: json!({"kind": kind, "formula": f.to_string()}),
        positive: true,
    })
}

fn activated(context: &Path, world: u32, l: u64, brute: Option<u64>, exec: Exec, verbose: u8) -> Result<Done, InputError> {
    let sc = scenario_from_json_str(&read(context)?).map_err(|e| input!("{}: {e}", context.display()))?;
    let stage = sc.oracle.stage(l).map_err(|e| input!("{e}"))?;
    let w = decide_activated_with(&sc.ctx, &stage, l, world, exec).map_err(|e| input!("{e}"))?;
    let v = w.is_some();
    let mut human = truth(v).to_string();
    let mut j = json!({"world": world, "stage": l, "activated": v});
    if let Some(w) = &w {
        j["witness"] = json!({
            "goal": w.phi.body.to_string(),
            "family": w.family.iter().map(|p| p.body.to_string()).collect::<Vec<_>>(),
            "sentence": w.sentence.to_string(),
        });
        if verbose > 0 {
            human.push_str(&format!("\ngoal: {}\nrealizing sentence: {}", w.phi.body, w.sentence));
        }
    }
    if let Some(bound) = brute {
        let b = brute_force_activated(&sc.ctx, &stage, l, world, bound).map_err(|e| input!("{e}"))?;
        let claim = match &b {
            Some(bw) => Some(claim_holds(&stage, bw).map_err(|e| input!("{e}"))?),
            None => None,
        };
        let agree = b.is_some() == v;
        human.push_str(&format!(
            "\nbrute force up to {bound}: {} ({})",
            truth(b.is_some()),
            if agree { "agrees" } else { "differs" }
        ));
        j["brute"] = json!({
            "bound": bound,
            "found": b.is_some(),
            "agrees": agree,
            "tuples": b.as_ref().map(|bw| bw.b.clone()),
            "claim": claim,
        });
    }
    Ok(Done {
        human,
        json: j,
        positive: v,
    })
}

fn simulate(oracle: &Path, horizon: u64, trace: Option<&Path>) -> Result<Done, InputError> {
    if horizon == 0 {
        return Err(input!("--horizon must be at least 1"));
    }
    let sc = scenario_from_json_str(&read(oracle)?).map_err(|e| input!("{}: {e}", oracle.display()))?;
    let tr = run(&sc.ctx, &sc.oracle, &sc.xi, horizon).map_err(|e| input!("{e}"))?;
    let rep = tr.check(&sc.oracle, &sc.xi);
    let j = trace_to_json(&tr, &rep);
    if let Some(path) = trace {
        let text = serde_json::to_string_pretty(&j).expect("serializable") + "\n";
        fs::write(path, text).map_err(|e| input!("{}: {e}", path.display()))?;
    }
    let switch = match tr.transition {
        Some(t) => format!("h switches to {} after stage {}", t.i, t.l),
        None => "h stays 0".to_string(),
    };
    let outputs = tr.g.iter().map(Vec::len).sum::<usize>();
    let human = format!(
        "{switch}; {outputs} outputs over {horizon} steps; checks {}",
        if rep.ok() { "pass" } else { "FAIL" }
    );
    Ok(Done {
        human,
        json: j,
        positive: rep.ok(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let v = cli.verbose;
    let result = match &cli.command {
        Command::Check { model, world, formula } => check(model, *world, formula),
        Command::Embed { model, sentence, world, mode, lambda, out } => {
            embed(model, sentence, *world, mode, lambda, out.as_deref(), v)
        }
        Command::DecideSucc { sentence, show_qe } => decide_succ(sentence, *show_qe),
        Command::Tc { premises, goal } => tc(premises, goal),
        Command::IdentityFormula { left, right, uvars, wvars, shared, simplify } => {
            identity(left, right, uvars, wvars, shared, *simplify)
        }
        Command::Activated { context, world, stage, brute } => activated(context, *world, *stage, *brute, exec, v),
        Command::Simulate { oracle, horizon, trace } => simulate(oracle, *horizon, trace.as_deref()),
    };
    match result {
        Ok(done) => {
            emit(cli.format, &done);
            if done.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
