use std::collections::HashSet;

use super::arith::ArithFormula;

/// Propositionally atomic subformulas reachable through connectives, deduplicated,
/// in order of first occurrence.
pub fn prop_atomic_subformulas<'a, I>(set: I) -> Vec<ArithFormula>
where
    I: IntoIterator<Item = &'a ArithFormula>,
{
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in set {
        collect(f, &mut seen, &mut out);
    }
    out
}

fn collect<'a>(
    f: &'a ArithFormula,
    seen: &mut HashSet<&'a ArithFormula>,
    out: &mut Vec<ArithFormula>,
) {
    match f {
        ArithFormula::Neg(a) => collect(a, seen, out),
        ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Imp(a, b) => {
            collect(a, seen, out);
            collect(b, seen, out);
        }
        _ => {
            if seen.insert(f) {
                out.push(f.clone());
            }
        }
    }
}
