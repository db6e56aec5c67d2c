use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{KripkeError, KripkeModel};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    worlds: Vec<u32>,
    #[serde(default)]
    relation: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domains: Option<BTreeMap<String, Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<Vec<u64>>,
    #[serde(default)]
    valuation: Vec<Fact>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Fact {
    world: u32,
    pred: String,
    #[serde(default)]
    args: Vec<u64>,
}

impl KripkeModel {
    /// Reads the JSON model format. Either `domains` (per world) or the
    /// constant-domain shorthand `domain` must be present.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self, KripkeError> {
        let file: ModelFile =
            serde_json::from_value(v.clone()).map_err(|e| KripkeError::Json(e.to_string()))?;
        let domains: BTreeMap<u32, BTreeSet<u64>> = match (file.domains, file.domain) {
            (Some(_), Some(_)) => {
                return Err(KripkeError::Json(
                    "give either `domains` or `domain`, not both".into(),
                ))
            }
            (None, None) => return Err(KripkeError::Json("missing `domains` or `domain`".into())),
            (None, Some(d)) => {
                let d: BTreeSet<u64> = d.into_iter().collect();
                file.worlds.iter().map(|&w| (w, d.clone())).collect()
            }
            (Some(ds), None) => {
                let mut out = BTreeMap::new();
                for (k, d) in ds {
                    let w: u32 = k
                        .parse()
                        .map_err(|_| KripkeError::Json(format!("bad world key `{k}`")))?;
                    out.insert(w, d.into_iter().collect());
                }
                out
            }
        };
        KripkeModel::new(
            file.worlds,
            file.relation.into_iter().map(|[a, b]| (a, b)),
            domains,
            file.valuation
                .into_iter()
                .map(|f| (f.world, f.pred, f.args)),
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self, KripkeError> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| KripkeError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }

    /// Writes the JSON model format, using `domain` when all domains agree.
    pub fn to_json_value(&self) -> serde_json::Value {
        let constant = self.is_constant_domain();
        let file = ModelFile {
            worlds: self.worlds().iter().copied().collect(),
            relation: self.relation().iter().map(|&(a, b)| [a, b]).collect(),
            domains: (!constant).then(|| {
                self.domains()
                    .iter()
                    .map(|(w, d)| (w.to_string(), d.iter().copied().collect()))
                    .collect()
            }),
            domain: constant.then(|| {
                self.domains()
                    .values()
                    .next()
                    .expect("nonempty")
                    .iter()
                    .copied()
                    .collect()
            }),
            valuation: self
                .facts()
                .into_iter()
                .map(|(world, pred, args)| Fact { world, pred, args })
                .collect(),
        };
        serde_json::to_value(file).expect("serializable")
    }
}
