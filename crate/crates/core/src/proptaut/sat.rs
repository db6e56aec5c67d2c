//! Clause-learning route for components too wide for a truth table.

use std::collections::HashMap;
use std::hash::Hash;

use varisat::{ExtendFormula, Lit, Solver};

use super::PropFormula;

struct Encoder<'a, V> {
    solver: Solver<'a>,
    vars: HashMap<&'a V, Lit>,
    truth: Option<Lit>,
}

impl<'a, V: Hash + Eq> Encoder<'a, V> {
    fn constant(&mut self) -> Lit {
        if let Some(t) = self.truth {
            return t;
        }
        let t = self.solver.new_lit();
        self.solver.add_clause(&[t]);
        self.truth = Some(t);
        t
    }

    /// Tseitin encoding: returns a literal equivalent to `p`.
    fn lit(&mut self, p: &'a PropFormula<V>) -> Lit {
        match p {
            PropFormula::Var(v) => {
                if let Some(&l) = self.vars.get(v) {
                    return l;
                }
                let l = self.solver.new_lit();
                self.vars.insert(v, l);
                l
            }
            PropFormula::Top => self.constant(),
            PropFormula::Bot => !self.constant(),
            PropFormula::Neg(a) => !self.lit(a),
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                let mut x = self.lit(a);
                let mut y = self.lit(b);
                let mut flip = false;
                match p {
                    PropFormula::And(..) => {}
                    // a ∨ b ≡ ¬(¬a ∧ ¬b), a → b ≡ ¬(a ∧ ¬b)
                    PropFormula::Or(..) => {
                        x = !x;
                        y = !y;
                        flip = true;
                    }
                    _ => {
                        y = !y;
                        flip = true;
                    }
                }
                let g = self.solver.new_lit();
                self.solver.add_clause(&[!g, x]);
                self.solver.add_clause(&[!g, y]);
                self.solver.add_clause(&[g, !x, !y]);
                if flip {
                    !g
                } else {
                    g
                }
            }
        }
    }
}

/// Whether `premises ∧ ¬goal` is unsatisfiable.
pub(super) fn entails_sat<V: Hash + Eq>(premises: &[PropFormula<V>], goal: &PropFormula<V>) -> bool {
    let mut enc = Encoder {
        solver: Solver::new(),
        vars: HashMap::new(),
        truth: None,
    };
    for p in premises {
        let l = enc.lit(p);
        enc.solver.add_clause(&[l]);
    }
    let g = enc.lit(goal);
    enc.solver.add_clause(&[!g]);
    !enc.solver.solve().expect("in-memory solving does not fail")
}
