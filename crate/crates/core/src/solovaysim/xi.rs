use num_bigint::BigUint;

use crate::formulas::{decode_formula, unpair, ArithFormula};

/// An enumeration `u ↦ ξ_u` in which every formula of its universe recurs
/// infinitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiEnumeration {
    /// `ξ_u` decodes the first component of `u` under the pairing function,
    /// falling back to `⊤` on non-codes. Each `n` is the first component of
    /// infinitely many `u`, so every formula recurs.
    Godel,
    /// Cycles through a fixed list.
    Cycle(Vec<ArithFormula>),
}

impl XiEnumeration {
    pub fn xi(&self, u: u64) -> ArithFormula {
        match self {
            XiEnumeration::Godel => {
                let (first, _) = unpair(&BigUint::from(u));
                decode_formula(&first).unwrap_or(ArithFormula::Top)
            }
            XiEnumeration::Cycle(list) if list.is_empty() => ArithFormula::Top,
            XiEnumeration::Cycle(list) => list[(u % list.len() as u64) as usize].clone(),
        }
    }

    /// The least `u ≥ from` with `ξ_u = f`, searching at most `limit` values.
    pub fn next_occurrence(&self, f: &ArithFormula, from: u64, limit: u64) -> Option<u64> {
        (from..from.saturating_add(limit)).find(|&u| &self.xi(u) == f)
    }
}
