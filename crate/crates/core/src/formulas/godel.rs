//! Pairing-based Gödel numbering of arithmetic formulas.
//!
//! A term is coded as `1 + tag + 6·payload` and a formula as `1 + tag + 11·payload`,
//! with binary payloads combined by the Cantor pairing. Every code is at least 1
//! and every immediate subformula has a strictly smaller code.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::arith::{ArithFormula, ArithTerm};
use super::parse::{is_atom_name, is_variable_name, MAX_NUMERAL};
use super::FormulaError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GodelCode(pub BigUint);

impl fmt::Display for GodelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for GodelCode {
    fn from(n: u64) -> Self {
        GodelCode(BigUint::from(n))
    }
}

const TERM_TAGS: u32 = 6;
const FORMULA_TAGS: u32 = 11;

/// Cantor pairing `(x + y)(x + y + 1)/2 + y`.
pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

/// Inverse of [`pair`].
pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = w - &y;
    (x, y)
}

fn encode_str(s: &str) -> BigUint {
    let mut n = BigUint::zero();
    for b in s.bytes() {
        n = n * 256u32 + b;
    }
    n
}

fn decode_str(mut n: BigUint) -> Option<String> {
    let mut bytes = Vec::new();
    while !n.is_zero() {
        let d = (&n % 256u32).to_u8()?;
        if d == 0 {
            return None;
        }
        bytes.push(d);
        n = (n - d) / 256u32;
    }
    bytes.reverse();
    String::from_utf8(bytes).ok()
}

fn encode_list(items: &[BigUint]) -> BigUint {
    items
        .iter()
        .rev()
        .fold(BigUint::zero(), |tail, head| pair(head, &tail) + 1u32)
}

fn decode_list(mut n: BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    while !n.is_zero() {
        let (h, t) = unpair(&(n - 1u32));
        out.push(h);
        n = t;
    }
    out
}

fn tagged(tag: u32, tags: u32, payload: BigUint) -> BigUint {
    payload * tags + 1u32 + tag
}

fn untag(code: &BigUint, tags: u32) -> Option<(u32, BigUint)> {
    if code.is_zero() {
        return None;
    }
    let c = code - 1u32;
    let tag = (&c % tags).to_u32()?;
    Some((tag, c / tags))
}

pub fn encode_term(t: &ArithTerm) -> BigUint {
    match t {
        ArithTerm::Zero => tagged(0, TERM_TAGS, BigUint::zero()),
        ArithTerm::Var(x) => tagged(1, TERM_TAGS, encode_str(x)),
        ArithTerm::Succ(a) => tagged(2, TERM_TAGS, encode_term(a)),
        ArithTerm::Add(a, b) => tagged(3, TERM_TAGS, pair(&encode_term(a), &encode_term(b))),
        ArithTerm::Mul(a, b) => tagged(4, TERM_TAGS, pair(&encode_term(a), &encode_term(b))),
        ArithTerm::Quote(f, dotted) => {
            let ds: Vec<BigUint> = dotted.iter().map(|x| encode_str(x)).collect();
            tagged(5, TERM_TAGS, pair(&encode_formula(f), &encode_list(&ds)))
        }
    }
}

pub fn encode_formula(f: &ArithFormula) -> BigUint {
    let p = |a: &ArithFormula, b: &ArithFormula| pair(&encode_formula(a), &encode_formula(b));
    match f {
        ArithFormula::Top => tagged(0, FORMULA_TAGS, BigUint::zero()),
        ArithFormula::Bot => tagged(1, FORMULA_TAGS, BigUint::zero()),
        ArithFormula::Eq(a, b) => tagged(2, FORMULA_TAGS, pair(&encode_term(a), &encode_term(b))),
        ArithFormula::Lt(a, b) => tagged(3, FORMULA_TAGS, pair(&encode_term(a), &encode_term(b))),
        ArithFormula::Atom(name, args) => {
            let ts: Vec<BigUint> = args.iter().map(encode_term).collect();
            tagged(4, FORMULA_TAGS, pair(&encode_str(name), &encode_list(&ts)))
        }
        ArithFormula::Neg(a) => tagged(5, FORMULA_TAGS, encode_formula(a)),
        ArithFormula::And(a, b) => tagged(6, FORMULA_TAGS, p(a, b)),
        ArithFormula::Or(a, b) => tagged(7, FORMULA_TAGS, p(a, b)),
        ArithFormula::Imp(a, b) => tagged(8, FORMULA_TAGS, p(a, b)),
        ArithFormula::Forall(x, body) => {
            tagged(9, FORMULA_TAGS, pair(&encode_str(x), &encode_formula(body)))
        }
        ArithFormula::Exists(x, body) => tagged(
            10,
            FORMULA_TAGS,
            pair(&encode_str(x), &encode_formula(body)),
        ),
    }
}

/// Gödel code of a formula.
pub fn godel_encode(f: &ArithFormula) -> GodelCode {
    GodelCode(encode_formula(f))
}

fn bad(code: &BigUint) -> FormulaError {
    FormulaError::NotAFormula(code.to_string())
}

fn var_name(n: BigUint, code: &BigUint) -> Result<String, FormulaError> {
    decode_str(n)
        .filter(|s| is_variable_name(s))
        .ok_or_else(|| bad(code))
}

/// Decodes a term; `depth` counts successors to keep numerals within parser limits.
pub fn decode_term(code: &BigUint) -> Result<ArithTerm, FormulaError> {
    let (tag, payload) = untag(code, TERM_TAGS).ok_or_else(|| bad(code))?;
    Ok(match tag {
        0 if payload.is_zero() => ArithTerm::Zero,
        1 => ArithTerm::Var(var_name(payload, code)?),
        2 => {
            // Walk the successor chain iteratively.
            let mut r: u64 = 1;
            let mut inner = payload;
            loop {
                match untag(&inner, TERM_TAGS) {
                    Some((2, p)) => {
                        r += 1;
                        if r > MAX_NUMERAL {
                            return Err(bad(code));
                        }
                        inner = p;
                    }
                    _ => break,
                }
            }
            ArithTerm::succ_n(decode_term(&inner)?, r)
        }
        3 | 4 => {
            let (a, b) = unpair(&payload);
            let (a, b) = (decode_term(&a)?, decode_term(&b)?);
            if tag == 3 {
                ArithTerm::add(a, b)
            } else {
                ArithTerm::mul(a, b)
            }
        }
        5 => {
            let (f, ds) = unpair(&payload);
            let body = decode_formula(&f)?;
            let dotted = decode_list(ds)
                .into_iter()
                .map(|d| var_name(d, code))
                .collect::<Result<Vec<_>, _>>()?;
            ArithTerm::quote(body, dotted)
        }
        _ => return Err(bad(code)),
    })
}

pub fn decode_formula(code: &BigUint) -> Result<ArithFormula, FormulaError> {
    let (tag, payload) = untag(code, FORMULA_TAGS).ok_or_else(|| bad(code))?;
    let two = |p: &BigUint| -> Result<(ArithFormula, ArithFormula), FormulaError> {
        let (a, b) = unpair(p);
        Ok((decode_formula(&a)?, decode_formula(&b)?))
    };
    let terms = |p: &BigUint| -> Result<(ArithTerm, ArithTerm), FormulaError> {
        let (a, b) = unpair(p);
        Ok((decode_term(&a)?, decode_term(&b)?))
    };
    Ok(match tag {
        0 if payload.is_zero() => ArithFormula::Top,
        1 if payload.is_zero() => ArithFormula::Bot,
        2 => {
            let (a, b) = terms(&payload)?;
            ArithFormula::Eq(a, b)
        }
        3 => {
            let (a, b) = terms(&payload)?;
            ArithFormula::Lt(a, b)
        }
        4 => {
            let (n, ts) = unpair(&payload);
            let name = decode_str(n)
                .filter(|s| is_atom_name(s))
                .ok_or_else(|| bad(code))?;
            let args = decode_list(ts)
                .iter()
                .map(decode_term)
                .collect::<Result<Vec<_>, _>>()?;
            ArithFormula::Atom(name, args)
        }
        5 => ArithFormula::neg(decode_formula(&payload)?),
        6 => {
            let (a, b) = two(&payload)?;
            ArithFormula::and(a, b)
        }
        7 => {
            let (a, b) = two(&payload)?;
            ArithFormula::or(a, b)
        }
        8 => {
            let (a, b) = two(&payload)?;
            ArithFormula::imp(a, b)
        }
        9 | 10 => {
            let (x, body) = unpair(&payload);
            let x = var_name(x, code)?;
            let body = decode_formula(&body)?;
            if tag == 9 {
                ArithFormula::forall(&x, body)
            } else {
                ArithFormula::exists(&x, body)
            }
        }
        _ => return Err(bad(code)),
    })
}

/// Decodes a Gödel code, failing with `NotAFormula` on values outside the encoding's range.
pub fn godel_decode(code: &GodelCode) -> Result<ArithFormula, FormulaError> {
    decode_formula(&code.0)
}

/// `F_n`: every formula whose code is at most `n`, in code order.
pub fn formulas_up_to(n: u64) -> Vec<ArithFormula> {
    (1..=n)
        .filter_map(|c| decode_formula(&BigUint::from(c)).ok())
        .collect()
}

/// True iff `encode(f) ≤ bound`.
pub fn code_at_most(f: &ArithFormula, bound: &BigUint) -> bool {
    &encode_formula(f) <= bound
}
