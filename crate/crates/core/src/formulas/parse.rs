use std::collections::BTreeMap;

use super::arith::{ArithFormula, ArithTerm};
use super::lexer::{tokenize, Tok};
use super::modal::{ModalArg, ModalFormula};
use super::FormulaError;

/// Numerals above this are rejected: they would build very deep successor chains.
pub const MAX_NUMERAL: u64 = 4096;

const KEYWORDS: [&str; 5] = ["all", "ex", "box", "dia", "s"];

pub fn is_variable_name(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_lowercase() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&s)
}

pub fn is_predicate_name(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_uppercase() => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn is_atom_name(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    arities: BTreeMap<String, usize>,
    registry: Option<&'a BTreeMap<String, usize>>,
}

impl<'a> Parser<'a> {
    fn new(text: &str) -> Result<Self, FormulaError> {
        Ok(Parser {
            toks: tokenize(text)?,
            idx: 0,
            arities: BTreeMap::new(),
            registry: None,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.idx + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), FormulaError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                t.describe(),
                self.peek().describe()
            ))
        }
    }

    fn expect_end(&self) -> Result<(), FormulaError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.peek().describe()))
        }
    }

    fn variable(&mut self) -> Result<String, FormulaError> {
        match self.peek().clone() {
            Tok::Ident(s) if is_variable_name(&s) => {
                self.bump();
                Ok(s)
            }
            t => self.error(format!("expected a variable, found {}", t.describe())),
        }
    }

    fn numeral(&mut self, n: u64) -> Result<u64, FormulaError> {
        if n > MAX_NUMERAL {
            return self.error(format!("numeral {n} exceeds the limit {MAX_NUMERAL}"));
        }
        self.bump();
        Ok(n)
    }

    fn check_arity(&mut self, name: &str, found: usize, pos: usize) -> Result<(), FormulaError> {
        if let Some(reg) = self.registry {
            match reg.get(name) {
                None => {
                    return Err(FormulaError::UnknownAtom {
                        name: name.to_string(),
                        pos,
                    })
                }
                Some(&expected) if expected != found => {
                    return Err(FormulaError::ArityMismatch {
                        name: name.to_string(),
                        expected,
                        found,
                        pos,
                    })
                }
                _ => {}
            }
            return Ok(());
        }
        match self.arities.get(name) {
            Some(&expected) if expected != found => Err(FormulaError::ArityMismatch {
                name: name.to_string(),
                expected,
                found,
                pos,
            }),
            _ => {
                self.arities.insert(name.to_string(), found);
                Ok(())
            }
        }
    }

    // ---- binary structure shared by both languages ----

    fn binary<T>(
        &mut self,
        unary: &mut dyn FnMut(&mut Self) -> Result<T, FormulaError>,
        and: fn(T, T) -> T,
        or: fn(T, T) -> T,
        imp: fn(T, T) -> T,
    ) -> Result<T, FormulaError> {
        let mut ors = Vec::new();
        loop {
            let mut left = unary(self)?;
            while *self.peek() == Tok::Amp {
                self.bump();
                let right = unary(self)?;
                left = and(left, right);
            }
            ors.push(left);
            if *self.peek() == Tok::Bar {
                self.bump();
            } else {
                break;
            }
        }
        let mut it = ors.into_iter();
        let first = it.next().expect("at least one disjunct");
        let lhs = it.fold(first, or);
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.binary(unary, and, or, imp)?;
            Ok(imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    // ---- modal ----

    fn modal_formula(&mut self) -> Result<ModalFormula, FormulaError> {
        self.binary(
            &mut |p: &mut Self| p.modal_unary(),
            ModalFormula::and,
            ModalFormula::or,
            ModalFormula::imp,
        )
    }

    fn modal_unary(&mut self) -> Result<ModalFormula, FormulaError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(ModalFormula::neg(self.modal_unary()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.modal_formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) => match s.as_str() {
                "all" | "ex" => {
                    self.bump();
                    let x = self.variable()?;
                    let body = self.modal_unary()?;
                    Ok(if s == "all" {
                        ModalFormula::forall(&x, body)
                    } else {
                        ModalFormula::exists(&x, body)
                    })
                }
                "box" => {
                    self.bump();
                    Ok(ModalFormula::nec(self.modal_unary()?))
                }
                "dia" => {
                    self.bump();
                    Ok(ModalFormula::dia(self.modal_unary()?))
                }
                "T" if *self.peek_at(1) != Tok::LParen => {
                    self.bump();
                    Ok(ModalFormula::Top)
                }
                "F" if *self.peek_at(1) != Tok::LParen => {
                    self.bump();
                    Ok(ModalFormula::Bot)
                }
                _ if is_predicate_name(&s) => {
                    self.bump();
                    let mut args = Vec::new();
                    if *self.peek() == Tok::LParen {
                        self.bump();
                        if *self.peek() != Tok::RParen {
                            loop {
                                args.push(self.modal_arg()?);
                                if *self.peek() == Tok::Comma {
                                    self.bump();
                                } else {
                                    break;
                                }
                            }
                        }
                        self.expect(Tok::RParen)?;
                    }
                    self.check_arity(&s, args.len(), pos)?;
                    Ok(ModalFormula::Pred(s, args))
                }
                _ => self.error(format!("expected a formula, found identifier `{s}`")),
            },
            t => self.error(format!("expected a formula, found {}", t.describe())),
        }
    }

    fn modal_arg(&mut self) -> Result<ModalArg, FormulaError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(ModalArg::Const(n))
            }
            _ => Ok(ModalArg::Var(self.variable()?)),
        }
    }

    // ---- arithmetic ----

    fn arith_formula(&mut self) -> Result<ArithFormula, FormulaError> {
        self.binary(
            &mut |p: &mut Self| p.arith_unary(),
            ArithFormula::and,
            ArithFormula::or,
            ArithFormula::imp,
        )
    }

    fn arith_unary(&mut self) -> Result<ArithFormula, FormulaError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(ArithFormula::neg(self.arith_unary()?))
            }
            Tok::Ident(s) if s == "all" || s == "ex" => {
                self.bump();
                let x = self.variable()?;
                let body = self.arith_unary()?;
                Ok(if s == "all" {
                    ArithFormula::forall(&x, body)
                } else {
                    ArithFormula::exists(&x, body)
                })
            }
            Tok::Ident(s) if s == "T" => {
                self.bump();
                Ok(ArithFormula::Top)
            }
            Tok::Ident(s) if s == "F" => {
                self.bump();
                Ok(ArithFormula::Bot)
            }
            Tok::AtName(name) => {
                self.bump();
                let mut args = Vec::new();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    if *self.peek() != Tok::RParen {
                        loop {
                            args.push(self.term()?);
                            if *self.peek() == Tok::Comma {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                if self.registry.is_some() {
                    self.check_arity(&name, args.len(), pos)?;
                }
                Ok(ArithFormula::Atom(name, args))
            }
            Tok::LParen => {
                let save = self.idx;
                if let Ok(f) = self.comparison() {
                    return Ok(f);
                }
                self.idx = save;
                self.bump();
                let f = self.arith_formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> Result<ArithFormula, FormulaError> {
        let lhs = self.term()?;
        match self.peek() {
            Tok::Equals => {
                self.bump();
                Ok(ArithFormula::Eq(lhs, self.term()?))
            }
            Tok::Less => {
                self.bump();
                Ok(ArithFormula::Lt(lhs, self.term()?))
            }
            t => self.error(format!("expected `=` or `<`, found {}", t.describe())),
        }
    }

    fn term(&mut self) -> Result<ArithTerm, FormulaError> {
        let mut t = self.mul_term()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = ArithTerm::add(t, self.mul_term()?);
        }
        Ok(t)
    }

    fn mul_term(&mut self) -> Result<ArithTerm, FormulaError> {
        let mut t = self.primary_term()?;
        while *self.peek() == Tok::Star {
            self.bump();
            t = ArithTerm::mul(t, self.primary_term()?);
        }
        Ok(t)
    }

    fn primary_term(&mut self) -> Result<ArithTerm, FormulaError> {
        match self.peek().clone() {
            Tok::Num(n) => Ok(ArithTerm::numeral(self.numeral(n)?)),
            Tok::Ident(s) if s == "s" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(ArithTerm::succ(t))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Hash => {
                self.bump();
                self.expect(Tok::LParen)?;
                let body = self.arith_formula()?;
                let mut dotted = Vec::new();
                if *self.peek() == Tok::Semi {
                    self.bump();
                    loop {
                        dotted.push(self.variable()?);
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RParen)?;
                Ok(ArithTerm::quote(body, dotted))
            }
            _ => Ok(ArithTerm::Var(self.variable()?)),
        }
    }
}

/// Parses a quantified modal formula.
pub fn parse_modal(text: &str) -> Result<ModalFormula, FormulaError> {
    let mut p = Parser::new(text)?;
    let f = p.modal_formula()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses a modal formula, requiring predicate arities to agree with `sig`.
/// New predicates are added to `sig`.
pub fn parse_modal_with(
    text: &str,
    sig: &mut BTreeMap<String, usize>,
) -> Result<ModalFormula, FormulaError> {
    let mut p = Parser::new(text)?;
    p.arities = sig.clone();
    let f = p.modal_formula()?;
    p.expect_end()?;
    *sig = p.arities;
    Ok(f)
}

/// Parses an arithmetic formula.
pub fn parse_arith(text: &str) -> Result<ArithFormula, FormulaError> {
    let mut p = Parser::new(text)?;
    let f = p.arith_formula()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses an arithmetic formula whose opaque atoms must appear in `registry`
/// (name to arity).
pub fn parse_arith_with(
    text: &str,
    registry: &BTreeMap<String, usize>,
) -> Result<ArithFormula, FormulaError> {
    let mut p = Parser::new(text)?;
    p.registry = Some(registry);
    let f = p.arith_formula()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses a single arithmetic term.
pub fn parse_term(text: &str) -> Result<ArithTerm, FormulaError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}
