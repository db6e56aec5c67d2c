use std::collections::HashSet;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{SimError, TheoryOracle, Trace, TraceReport, XiEnumeration};
use crate::activation::ActivationContext;
use crate::embedding::DEFAULT_LAMBDA;
use crate::formulas::{parse_arith, ArithFormula};
use crate::kripke::{KripkeModel, WorldId};

/// Everything a simulation run needs.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub ctx: ActivationContext,
    pub oracle: TheoryOracle,
    pub xi: XiEnumeration,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameFile {
    worlds: Vec<WorldId>,
    #[serde(default)]
    relation: Vec<[WorldId; 2]>,
    d: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StageFile {
    index: u64,
    proved: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InjectFile {
    stage: u64,
    formulas: Vec<String>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum XiFile {
    Godel,
    Cycle(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    frame: Option<FrameFile>,
    model: Option<Value>,
    lambda: Option<String>,
    stages: Vec<StageFile>,
    pool: Option<Vec<String>>,
    inject: Option<InjectFile>,
    xi: Option<XiFile>,
}

fn parse_all(items: &[String]) -> Result<Vec<ArithFormula>, SimError> {
    items
        .iter()
        .map(|s| parse_arith(s).map_err(|e| SimError::Json(format!("`{s}`: {e}"))))
        .collect()
}

/// Reads a scenario: a frame (or a model), the listed stages, an optional pool,
/// injection and `ξ` enumeration.
pub fn scenario_from_json_str(text: &str) -> Result<Scenario, SimError> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| SimError::Json(e.to_string()))?;
    let lambda = file.lambda.as_deref().unwrap_or(DEFAULT_LAMBDA);
    let mut ctx = match (file.frame, file.model) {
        (Some(f), None) => ActivationContext::new(
            f.worlds,
            f.relation.into_iter().map(|[a, b]| (a, b)),
            f.d,
            lambda,
        ),
        (None, Some(m)) => {
            let m = KripkeModel::from_json_value(&m).map_err(|e| SimError::Json(e.to_string()))?;
            ActivationContext::from_model(&m)
        }
        _ => {
            return Err(SimError::Json(
                "give exactly one of `frame` and `model`".into(),
            ))
        }
    };
    ctx.lambda = lambda.to_string();
    let stages = file
        .stages
        .iter()
        .map(|s| Ok((s.index, parse_all(&s.proved)?)))
        .collect::<Result<Vec<_>, SimError>>()?;
    let mut oracle = TheoryOracle::new(stages)?;
    if let Some(p) = file.pool {
        oracle = oracle.with_pool(parse_all(&p)?.into_iter().collect::<HashSet<_>>());
    }
    if let Some(inj) = file.inject {
        oracle = oracle.with_injection(inj.stage, parse_all(&inj.formulas)?);
    }
    let xi = match file.xi {
        None | Some(XiFile::Godel) => XiEnumeration::Godel,
        Some(XiFile::Cycle(list)) => XiEnumeration::Cycle(parse_all(&list)?),
    };
    Ok(Scenario { ctx, oracle, xi })
}

/// The trace and its checks as JSON.
pub fn trace_to_json(trace: &Trace, report: &TraceReport) -> Value {
    json!({
        "horizon": trace.horizon,
        "h": trace.h,
        "g": trace.g.iter().map(|out| out.iter().map(|f| f.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "transition": trace.transition.map(|t| json!({"l": t.l, "i": t.i})),
        "vacuous_readiness": trace.vacuous_readiness,
        "checks": {
            "starts_at_zero": report.starts_at_zero,
            "single_jump": report.single_jump,
            "constant_after_jump": report.constant_after_jump,
            "one_nonzero_value": report.one_nonzero_value,
            "procedure_one_faithful": report.procedure_one_faithful,
            "d2_checked": report.d2_checked,
            "d2_failures": report.d2_failures,
        },
    })
}
