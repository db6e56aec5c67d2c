use std::fmt::{self, Display, Write};

use super::arith::{ArithFormula, ArithTerm};
use super::modal::{ModalArg, ModalFormula};

// Binding strength: 1 `->`, 2 `|`, 3 `&`, 4 prefix operators and atoms.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn open(out: &mut dyn Write, wrap: bool) -> fmt::Result {
    if wrap {
        out.write_char('(')?;
    }
    Ok(())
}

fn close(out: &mut dyn Write, wrap: bool) -> fmt::Result {
    if wrap {
        out.write_char(')')?;
    }
    Ok(())
}

fn write_term(t: &ArithTerm, out: &mut dyn Write, min: u8) -> fmt::Result {
    if let Some(n) = t.as_numeral() {
        return write!(out, "{n}");
    }
    match t {
        ArithTerm::Zero => out.write_char('0'),
        ArithTerm::Var(x) => out.write_str(x),
        ArithTerm::Succ(a) => {
            out.write_str("s(")?;
            write_term(a, out, 0)?;
            out.write_char(')')
        }
        ArithTerm::Add(a, b) => {
            open(out, min > 1)?;
            write_term(a, out, 1)?;
            out.write_str(" + ")?;
            write_term(b, out, 2)?;
            close(out, min > 1)
        }
        ArithTerm::Mul(a, b) => {
            open(out, min > 2)?;
            write_term(a, out, 2)?;
            out.write_str(" * ")?;
            write_term(b, out, 3)?;
            close(out, min > 2)
        }
        ArithTerm::Quote(f, dotted) => {
            out.write_str("#(")?;
            write_arith(f, out, 0)?;
            if !dotted.is_empty() {
                out.write_str("; ")?;
                out.write_str(&dotted.join(", "))?;
            }
            out.write_char(')')
        }
    }
}

fn write_arith(f: &ArithFormula, out: &mut dyn Write, min: u8) -> fmt::Result {
    let binary = |out: &mut dyn Write,
                  a: &ArithFormula,
                  b: &ArithFormula,
                  op: &str,
                  prec: u8,
                  lmin: u8,
                  rmin: u8| {
        open(out, min > prec)?;
        write_arith(a, out, lmin)?;
        out.write_str(op)?;
        write_arith(b, out, rmin)?;
        close(out, min > prec)
    };
    match f {
        ArithFormula::Top => out.write_char('T'),
        ArithFormula::Bot => out.write_char('F'),
        ArithFormula::Eq(a, b) | ArithFormula::Lt(a, b) => {
            // A comparison is atomic, but its leading term could be read as a
            // parenthesised formula; terms print with their own grouping.
            write_term(a, out, 0)?;
            out.write_str(if matches!(f, ArithFormula::Eq(..)) {
                " = "
            } else {
                " < "
            })?;
            write_term(b, out, 0)
        }
        ArithFormula::Atom(name, args) => {
            write!(out, "@{name}")?;
            if !args.is_empty() {
                out.write_char('(')?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.write_str(", ")?;
                    }
                    write_term(a, out, 0)?;
                }
                out.write_char(')')?;
            }
            Ok(())
        }
        ArithFormula::Neg(a) => {
            out.write_char('~')?;
            write_arith(a, out, UNARY)
        }
        ArithFormula::And(a, b) => binary(out, a, b, " & ", AND, AND, UNARY),
        ArithFormula::Or(a, b) => binary(out, a, b, " | ", OR, OR, AND),
        ArithFormula::Imp(a, b) => binary(out, a, b, " -> ", IMP, OR, IMP),
        ArithFormula::Forall(x, body) => {
            write!(out, "all {x} ")?;
            write_arith(body, out, UNARY)
        }
        ArithFormula::Exists(x, body) => {
            write!(out, "ex {x} ")?;
            write_arith(body, out, UNARY)
        }
    }
}

fn write_modal(f: &ModalFormula, out: &mut dyn Write, min: u8) -> fmt::Result {
    let binary = |out: &mut dyn Write,
                  a: &ModalFormula,
                  b: &ModalFormula,
                  op: &str,
                  prec: u8,
                  lmin: u8,
                  rmin: u8| {
        open(out, min > prec)?;
        write_modal(a, out, lmin)?;
        out.write_str(op)?;
        write_modal(b, out, rmin)?;
        close(out, min > prec)
    };
    match f {
        ModalFormula::Top => out.write_char('T'),
        ModalFormula::Bot => out.write_char('F'),
        ModalFormula::Pred(name, args) => {
            out.write_str(name)?;
            if !args.is_empty() || name == "T" || name == "F" {
                out.write_char('(')?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.write_str(", ")?;
                    }
                    match a {
                        ModalArg::Var(x) => out.write_str(x)?,
                        ModalArg::Const(c) => write!(out, "{c}")?,
                    }
                }
                out.write_char(')')?;
            }
            Ok(())
        }
        ModalFormula::Neg(a) => {
            out.write_char('~')?;
            write_modal(a, out, UNARY)
        }
        ModalFormula::Nec(a) => {
            out.write_str("box ")?;
            write_modal(a, out, UNARY)
        }
        ModalFormula::And(a, b) => binary(out, a, b, " & ", AND, AND, UNARY),
        ModalFormula::Or(a, b) => binary(out, a, b, " | ", OR, OR, AND),
        ModalFormula::Imp(a, b) => binary(out, a, b, " -> ", IMP, OR, IMP),
        ModalFormula::Forall(x, body) => {
            write!(out, "all {x} ")?;
            write_modal(body, out, UNARY)
        }
        ModalFormula::Exists(x, body) => {
            write!(out, "ex {x} ")?;
            write_modal(body, out, UNARY)
        }
    }
}

impl Display for ArithTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, 0)
    }
}

impl Display for ArithFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_arith(self, f, 0)
    }
}

impl Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_modal(self, f, 0)
    }
}

impl Display for ModalArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalArg::Var(x) => f.write_str(x),
            ModalArg::Const(c) => write!(f, "{c}"),
        }
    }
}
