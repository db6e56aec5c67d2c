use crate::formulas::{ArithFormula, ArithTerm};
use crate::successor::{decide_successor, greater_than, SuccessorFormula};

/// The formulas `θ_k(x)` naming the elements of `D = {0, …, d}`:
/// `θ_k(x) ≡ x = k̄` for `k ≠ 0` and `θ_0(x) ≡ x = 0 ∨ d̄ < x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaFamily {
    pub d: u64,
}

/// Outcome of checking existence, disjointness and covering for one `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    pub d: u64,
    pub existence: bool,
    pub disjoint: bool,
    pub covering: bool,
    /// The same three statements decided in the successor theory.
    pub decided_agree: bool,
}

impl ThetaReport {
    pub fn ok(&self) -> bool {
        self.existence && self.disjoint && self.covering && self.decided_agree
    }
}

impl ThetaFamily {
    pub fn new(d: u64) -> Self {
        ThetaFamily { d }
    }

    pub fn domain(&self) -> impl Iterator<Item = u64> {
        0..=self.d
    }

    pub fn theta(&self, k: u64, x: &ArithTerm) -> ArithFormula {
        assert!(k <= self.d, "θ_{k} outside D = {{0..{}}}", self.d);
        if k == 0 {
            ArithFormula::or(
                ArithFormula::Eq(x.clone(), ArithTerm::Zero),
                ArithFormula::Lt(ArithTerm::numeral(self.d), x.clone()),
            )
        } else {
            ArithFormula::Eq(x.clone(), ArithTerm::numeral(k))
        }
    }

    pub fn theta_var(&self, k: u64, x: &str) -> ArithFormula {
        self.theta(k, &ArithTerm::var(x))
    }

    /// `θ_k(x)` in `{0, s, =}`: `x > d̄` becomes `∃w (x = s^(d+1)(w))`.
    pub fn theta_successor(&self, k: u64, x: &ArithTerm, fresh: &str) -> ArithFormula {
        if k == 0 {
            ArithFormula::or(
                ArithFormula::Eq(x.clone(), ArithTerm::Zero),
                greater_than(x, self.d, fresh),
            )
        } else {
            ArithFormula::Eq(x.clone(), ArithTerm::numeral(k))
        }
    }

    /// Truth of `θ_k(n̄)`.
    pub fn holds(&self, k: u64, n: u64) -> bool {
        if k == 0 {
            n == 0 || n > self.d
        } else {
            n == k
        }
    }

    /// Reads `f` as `θ_k(x)` for some `k ∈ D`, returning `(k, x)`.
    pub fn recognize<'a>(&self, f: &'a ArithFormula) -> Option<(u64, &'a str)> {
        match f {
            ArithFormula::Eq(ArithTerm::Var(x), t) => match t.as_numeral() {
                Some(k) if k != 0 && k <= self.d => Some((k, x)),
                _ => None,
            },
            ArithFormula::Or(a, b) => match (&**a, &**b) {
                (
                    ArithFormula::Eq(ArithTerm::Var(x), ArithTerm::Zero),
                    ArithFormula::Lt(n, ArithTerm::Var(y)),
                ) if x == y && n.as_numeral() == Some(self.d) => Some((0, x)),
                _ => None,
            },
            _ => None,
        }
    }

    /// Checks the three properties semantically. Every atom is `x = c` with
    /// `c ≤ d` or `x > d`, so the points `0..=d+1` represent every region.
    pub fn check(&self) -> ThetaReport {
        let region: Vec<u64> = (0..=self.d + 1).collect();
        let dom: Vec<u64> = self.domain().collect();
        let existence = dom
            .iter()
            .all(|&k| region.iter().any(|&x| self.holds(k, x)));
        let disjoint = dom.iter().all(|&k| {
            dom.iter().filter(|&&l| l != k).all(|&l| {
                region
                    .iter()
                    .all(|&x| !(self.holds(k, x) && self.holds(l, x)))
            })
        });
        let covering = region
            .iter()
            .all(|&x| dom.iter().any(|&k| self.holds(k, x)));
        ThetaReport {
            d: self.d,
            existence,
            disjoint,
            covering,
            decided_agree: self.decide_statements() == (existence, disjoint, covering),
        }
    }

    /// The three properties as successor sentences, decided exactly.
    fn decide_statements(&self) -> (bool, bool, bool) {
        let x = ArithTerm::var("x");
        let th = |k: u64| self.theta_successor(k, &x, "w");
        let decide = |f: ArithFormula| {
            decide_successor(&SuccessorFormula::new(f).expect("successor language"))
                .expect("closed")
        };
        let dom: Vec<u64> = self.domain().collect();
        let existence = dom
            .iter()
            .all(|&k| decide(ArithFormula::exists("x", th(k))));
        let disjoint = dom.iter().all(|&k| {
            dom.iter().filter(|&&l| l != k).all(|&l| {
                decide(ArithFormula::forall(
                    "x",
                    ArithFormula::neg(ArithFormula::and(th(k), th(l))),
                ))
            })
        });
        let covering = decide(ArithFormula::forall(
            "x",
            ArithFormula::disj(dom.iter().map(|&k| th(k))),
        ));
        (existence, disjoint, covering)
    }
}
